//! Syntax and checker for an axiomatic dependent type theory.
//!
//! The theory has identity types, Σ, Π with function extensionality, and
//! the types 0, 1, 2 and ℕ. Every computation rule is a propositional
//! axiom term; definitional equality is α-equality only.

pub mod check;
pub mod derived;
pub mod parse;
pub mod print;
pub mod redex;
pub mod rules;
pub mod subst;
pub mod syntax;

pub use check::{
    check_context, check_judgment, check_type, defeq, infer_term, replay, replay_checked,
    CheckError, Checked, Checker, Derivation, Reason,
};
pub use derived::{bench_family, derived_happly, derived_transport, transport_on_refl};
pub use parse::{parse_document, parse_judgment, parse_tm, parse_ty, ParseError};
pub use print::{print_document, print_judgment};
pub use rules::{defeq_tm, defeq_ty, happly, Rule};
pub use subst::{pair_subst, subst_tm, subst_ty, weaken_tm, weaken_ty, Subst};
pub use syntax::{Bind, Ctx, Document, Item, Judgment, Name, Signature, Span, Subject, Tm, Ty};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SourceError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Check(#[from] CheckError),
}

/// The outcome of checking one item of a document.
pub struct ItemReport {
    pub item: Item,
    pub result: Result<Checked, CheckError>,
}

/// Checks every judgment of a document.
pub fn check_document(doc: &Document) -> Vec<ItemReport> {
    let checker = Checker::new(&doc.signature);
    doc.items
        .iter()
        .map(|item| ItemReport {
            item: item.clone(),
            result: checker
                .check_judgment(&item.judgment)
                .map_err(|e| e.with_span(item.span)),
        })
        .collect()
}

/// Parses and checks a source text; fails on the first bad item.
pub fn check_source(src: &str) -> Result<Vec<Checked>, SourceError> {
    let doc = parse_document(src)?;
    let mut out = Vec::new();
    for r in check_document(&doc) {
        out.push(r.result?);
    }
    Ok(out)
}
