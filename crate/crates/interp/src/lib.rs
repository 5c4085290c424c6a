//! Interpretation of checked derivations of the `=`-fragment in a finite
//! groupoid model, and a harness checking that the interpretation is sound.

pub mod error;
pub mod interpret;
pub mod soundness;

pub use error::InterpError;
pub use interpret::{Interpretation, Interpreter, Meaning, SemCtx, SemTerm};
pub use soundness::{redex_witness, soundness, Finding, RedexWitness, SoundnessReport};
