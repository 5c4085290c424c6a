//! Lexer and recursive-descent parser for the surface syntax.
//!
//! A file is a sequence of items. `type A` declares a closed base type;
//! every other item is a judgment `x:A, y:B |- SUBJECT` where the subject
//! is one of `ctx`, `T type`, `t : T`, `T == U type` or `t == u : T`.
//! `--` starts a line comment.

use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{Bind, Ctx, Document, Item, Judgment, Name, Signature, Span, Subject, Tm, Ty};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Colon,
    Dot,
    Turnstile,
    EqEq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

/// Words that cannot be used as variable or base type names.
pub const KEYWORDS: &[&str] = &[
    "type", "ctx", "Id", "Sigma", "Pi", "Zero", "One", "Two", "Nat", "r", "J", "H", "pair",
    "split", "sigma", "lam", "ev", "beta", "funext", "betaPi", "etaPi", "star", "ind1", "beta1",
    "bot", "top", "ind2", "beta2bot", "beta2top", "zero", "succ", "indN", "betaN0", "betaNs",
    "ind0",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        let next = chars.get(i + 1).copied();
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && next == Some('-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (tok, width) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            ':' => (Tok::Colon, 1),
            '.' => (Tok::Dot, 1),
            '|' if next == Some('-') => (Tok::Turnstile, 2),
            '=' if next == Some('=') => (Tok::EqEq, 2),
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len()
                    && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                (Tok::Ident(word), j - start)
            }
            other => {
                return Err(ParseError {
                    span,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, span));
        i += width;
        col += width;
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

enum Expr {
    Ty(Ty),
    Tm(Tm),
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    sig: Signature,
    scope: Vec<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            span: self.span(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.err(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            ))
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn binder_name(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                self.bump();
                Ok(s)
            }
            other => self.err(format!("expected a variable name, found {}", other.describe())),
        }
    }

    fn document(&mut self) -> PResult<Document> {
        let mut doc = Document::default();
        while *self.peek() != Tok::Eof {
            if self.is_word("type") {
                self.bump();
                let span = self.span();
                let name = self.binder_name()?;
                if self.sig.has(&name) {
                    return Err(ParseError {
                        span,
                        message: format!("base type `{name}` declared twice"),
                    });
                }
                self.sig.base_types.push(Arc::from(name.as_str()));
                continue;
            }
            let span = self.span();
            let judgment = self.judgment()?;
            doc.items.push(Item { judgment, span });
        }
        doc.signature = self.sig.clone();
        Ok(doc)
    }

    fn judgment(&mut self) -> PResult<Judgment> {
        self.scope.clear();
        let mut ctx = Ctx::empty();
        if *self.peek() != Tok::Turnstile {
            loop {
                let name = self.binder_name()?;
                self.expect(Tok::Colon)?;
                let ty = self.ty()?;
                ctx = ctx.push(&name, ty);
                self.scope.push(name);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::Turnstile)?;
        let subject = if self.is_word("ctx") {
            self.bump();
            Subject::Ctx
        } else {
            let first_span = self.span();
            let e1 = self.expr()?;
            match self.peek().clone() {
                Tok::Colon => {
                    self.bump();
                    let t = self.as_tm(e1, first_span)?;
                    Subject::Term(t, self.ty()?)
                }
                Tok::Ident(w) if w == "type" => {
                    self.bump();
                    Subject::Type(self.as_ty(e1, first_span)?)
                }
                Tok::EqEq => {
                    self.bump();
                    let second_span = self.span();
                    let e2 = self.expr()?;
                    if *self.peek() == Tok::Colon {
                        self.bump();
                        let t = self.as_tm(e1, first_span)?;
                        let u = self.as_tm(e2, second_span)?;
                        Subject::TermEq(t, u, self.ty()?)
                    } else if self.is_word("type") {
                        self.bump();
                        let a = self.as_ty(e1, first_span)?;
                        let b = self.as_ty(e2, second_span)?;
                        Subject::TypeEq(a, b)
                    } else {
                        return self.err(format!(
                            "expected `:` or `type` after an equation, found {}",
                            self.peek().describe()
                        ));
                    }
                }
                other => {
                    return self.err(format!(
                        "expected `:`, `type` or `==`, found {}",
                        other.describe()
                    ))
                }
            }
        };
        Ok(Judgment { ctx, subject })
    }

    fn as_tm(&self, e: Expr, span: Span) -> PResult<Tm> {
        match e {
            Expr::Tm(t) => Ok(t),
            Expr::Ty(_) => Err(ParseError {
                span,
                message: "expected a term, found a type".into(),
            }),
        }
    }

    fn as_ty(&self, e: Expr, span: Span) -> PResult<Ty> {
        match e {
            Expr::Ty(t) => Ok(t),
            Expr::Tm(_) => Err(ParseError {
                span,
                message: "expected a type, found a term".into(),
            }),
        }
    }

    fn ty(&mut self) -> PResult<Ty> {
        let span = self.span();
        let e = self.expr()?;
        self.as_ty(e, span)
    }

    fn tm(&mut self) -> PResult<Tm> {
        let span = self.span();
        let e = self.expr()?;
        self.as_tm(e, span)
    }

    fn atm(&mut self) -> PResult<Arc<Tm>> {
        Ok(Arc::new(self.tm()?))
    }

    /// `x y z. BODY` with exactly `arity` names.
    fn binder<T>(
        &mut self,
        arity: usize,
        body: impl FnOnce(&mut Self) -> PResult<T>,
    ) -> PResult<Bind<T>> {
        let span = self.span();
        let mut names = Vec::new();
        while let Tok::Ident(_) = self.peek() {
            names.push(self.binder_name()?);
        }
        if names.len() != arity {
            return Err(ParseError {
                span,
                message: format!("expected {arity} bound name(s), found {}", names.len()),
            });
        }
        self.expect(Tok::Dot)?;
        let depth = self.scope.len();
        self.scope.extend(names.iter().cloned());
        let b = body(self);
        self.scope.truncate(depth);
        Ok(Bind {
            names: names.iter().map(|n| Name::new(n)).collect(),
            body: Arc::new(b?),
        })
    }

    fn ty_binder(&mut self, arity: usize) -> PResult<Bind<Ty>> {
        self.binder(arity, |p| p.ty())
    }

    fn tm_binder(&mut self, arity: usize) -> PResult<Bind<Tm>> {
        self.binder(arity, |p| p.tm())
    }

    fn comma(&mut self) -> PResult<()> {
        self.expect(Tok::Comma)
    }

    fn open(&mut self) -> PResult<()> {
        self.expect(Tok::LParen)
    }

    fn close(&mut self) -> PResult<()> {
        self.expect(Tok::RParen)
    }

    fn quantifier(&mut self) -> PResult<(Arc<Ty>, Bind<Ty>)> {
        let name = self.binder_name()?;
        self.expect(Tok::Colon)?;
        let dom = self.ty()?;
        self.expect(Tok::Dot)?;
        self.scope.push(name.clone());
        let body = self.ty();
        self.scope.pop();
        Ok((
            Arc::new(dom),
            Bind {
                names: vec![Name::new(&name)],
                body: Arc::new(body?),
            },
        ))
    }

    fn expr(&mut self) -> PResult<Expr> {
        let span = self.span();
        match self.bump() {
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() == Tok::Colon {
                    self.bump();
                    let t = self.as_tm(inner, span)?;
                    let ty = self.ty()?;
                    self.close()?;
                    Ok(Expr::Tm(Tm::Ann(Arc::new(t), Arc::new(ty))))
                } else {
                    self.close()?;
                    Ok(inner)
                }
            }
            Tok::Ident(word) => self.keyword_or_name(&word, span),
            other => Err(ParseError {
                span,
                message: format!("expected a type or term, found {}", other.describe()),
            }),
        }
    }

    fn keyword_or_name(&mut self, word: &str, span: Span) -> PResult<Expr> {
        use Expr::{Tm as E, Ty as T};
        let e = match word {
            "Id" => {
                self.open()?;
                let a = self.ty()?;
                self.comma()?;
                let t = self.tm()?;
                self.comma()?;
                let u = self.tm()?;
                self.close()?;
                T(Ty::id(a, t, u))
            }
            "Sigma" => {
                let (a, b) = self.quantifier()?;
                T(Ty::Sigma(a, b))
            }
            "Pi" => {
                let (a, b) = self.quantifier()?;
                T(Ty::Pi(a, b))
            }
            "Zero" => T(Ty::Zero),
            "One" => T(Ty::One),
            "Two" => T(Ty::Two),
            "Nat" => T(Ty::Nat),
            "lam" => {
                let mut names = Vec::new();
                while let Tok::Ident(_) = self.peek() {
                    names.push(self.binder_name()?);
                }
                if names.is_empty() {
                    return self.err("expected a bound name after `lam`");
                }
                self.expect(Tok::Dot)?;
                let depth = self.scope.len();
                self.scope.extend(names.iter().cloned());
                let body = self.tm();
                self.scope.truncate(depth);
                let mut t = body?;
                for n in names.iter().rev() {
                    t = Tm::lam(n, t);
                }
                E(t)
            }
            "r" => {
                self.open()?;
                let t = self.tm()?;
                self.close()?;
                E(Tm::refl(t))
            }
            "J" => {
                self.open()?;
                let motive = self.ty_binder(3)?;
                self.comma()?;
                let branch = self.tm_binder(1)?;
                self.comma()?;
                let left = self.atm()?;
                self.comma()?;
                let right = self.atm()?;
                self.comma()?;
                let path = self.atm()?;
                self.close()?;
                E(Tm::J {
                    motive,
                    branch,
                    left,
                    right,
                    path,
                })
            }
            "H" => {
                self.open()?;
                let motive = self.ty_binder(3)?;
                self.comma()?;
                let branch = self.tm_binder(1)?;
                self.comma()?;
                let point = self.atm()?;
                self.close()?;
                E(Tm::H {
                    motive,
                    branch,
                    point,
                })
            }
            "pair" => {
                self.open()?;
                let a = self.tm()?;
                self.comma()?;
                let b = self.tm()?;
                self.close()?;
                E(Tm::pair(a, b))
            }
            "split" => {
                self.open()?;
                let motive = self.ty_binder(1)?;
                self.comma()?;
                let branch = self.tm_binder(2)?;
                self.comma()?;
                let scrut = self.atm()?;
                self.close()?;
                E(Tm::Split {
                    motive,
                    branch,
                    scrut,
                })
            }
            "sigma" => {
                self.open()?;
                let sigma = Arc::new(self.ty()?);
                self.comma()?;
                let motive = self.ty_binder(1)?;
                self.comma()?;
                let branch = self.tm_binder(2)?;
                self.comma()?;
                let fst = self.atm()?;
                self.comma()?;
                let snd = self.atm()?;
                self.close()?;
                E(Tm::SigmaComp {
                    sigma,
                    motive,
                    branch,
                    fst,
                    snd,
                })
            }
            "ev" => {
                self.open()?;
                let z = self.tm()?;
                self.comma()?;
                let t = self.tm()?;
                self.close()?;
                E(Tm::ev(z, t))
            }
            "beta" => {
                self.open()?;
                let body = self.tm_binder(1)?;
                self.comma()?;
                let arg = self.atm()?;
                self.close()?;
                E(Tm::Beta { body, arg })
            }
            "funext" | "betaPi" | "etaPi" => {
                self.open()?;
                let left = self.atm()?;
                self.comma()?;
                let right = self.atm()?;
                self.comma()?;
                let third = self.atm()?;
                self.close()?;
                E(match word {
                    "funext" => Tm::Funext {
                        left,
                        right,
                        homotopy: third,
                    },
                    "betaPi" => Tm::BetaPi {
                        left,
                        right,
                        homotopy: third,
                    },
                    _ => Tm::EtaPi {
                        left,
                        right,
                        path: third,
                    },
                })
            }
            "star" => E(Tm::Star),
            "bot" => E(Tm::Bot),
            "top" => E(Tm::Top),
            "zero" => E(Tm::NatZero),
            "succ" => {
                self.open()?;
                let n = self.tm()?;
                self.close()?;
                E(Tm::succ(n))
            }
            "ind1" | "beta1" => {
                self.open()?;
                let motive = self.ty_binder(1)?;
                self.comma()?;
                let base = self.atm()?;
                if word == "ind1" {
                    self.comma()?;
                    let scrut = self.atm()?;
                    self.close()?;
                    E(Tm::Ind1 {
                        motive,
                        base,
                        scrut,
                    })
                } else {
                    self.close()?;
                    E(Tm::Beta1 { motive, base })
                }
            }
            "ind2" | "beta2bot" | "beta2top" => {
                self.open()?;
                let motive = self.ty_binder(1)?;
                self.comma()?;
                let on_bot = self.atm()?;
                self.comma()?;
                let on_top = self.atm()?;
                let t = match word {
                    "ind2" => {
                        self.comma()?;
                        let scrut = self.atm()?;
                        Tm::Ind2 {
                            motive,
                            on_bot,
                            on_top,
                            scrut,
                        }
                    }
                    "beta2bot" => Tm::Beta2Bot {
                        motive,
                        on_bot,
                        on_top,
                    },
                    _ => Tm::Beta2Top {
                        motive,
                        on_bot,
                        on_top,
                    },
                };
                self.close()?;
                E(t)
            }
            "indN" | "betaN0" | "betaNs" => {
                self.open()?;
                let motive = self.ty_binder(1)?;
                self.comma()?;
                let base = self.atm()?;
                self.comma()?;
                let step = self.tm_binder(2)?;
                let t = match word {
                    "betaN0" => Tm::BetaN0 { motive, base, step },
                    _ => {
                        self.comma()?;
                        let scrut = self.atm()?;
                        if word == "indN" {
                            Tm::IndN {
                                motive,
                                base,
                                step,
                                scrut,
                            }
                        } else {
                            Tm::BetaNs {
                                motive,
                                base,
                                step,
                                scrut,
                            }
                        }
                    }
                };
                self.close()?;
                E(t)
            }
            "ind0" => {
                self.open()?;
                let motive = self.ty_binder(1)?;
                self.comma()?;
                let scrut = self.atm()?;
                self.close()?;
                E(Tm::Ind0 { motive, scrut })
            }
            "type" | "ctx" => {
                return Err(ParseError {
                    span,
                    message: format!("`{word}` cannot start a type or term"),
                })
            }
            name => {
                if let Some(pos) = self.scope.iter().rposition(|n| n == name) {
                    E(Tm::Var(self.scope.len() - 1 - pos))
                } else if self.sig.has(name) {
                    T(Ty::base(name))
                } else {
                    return Err(ParseError {
                        span,
                        message: format!("unbound name `{name}`"),
                    });
                }
            }
        };
        Ok(e)
    }
}

/// Parses a whole file.
pub fn parse_document(src: &str) -> Result<Document, ParseError> {
    parse_document_with(src, &Signature::default())
}

/// Parses a file whose base types extend `sig`.
pub fn parse_document_with(src: &str, sig: &Signature) -> Result<Document, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        sig: sig.clone(),
        scope: Vec::new(),
    };
    p.document()
}

/// Parses exactly one judgment.
pub fn parse_judgment(src: &str, sig: &Signature) -> Result<Judgment, ParseError> {
    let doc = parse_document_with(src, sig)?;
    let mut items = doc.items.into_iter();
    match (items.next(), items.next()) {
        (Some(item), None) => Ok(item.judgment),
        (None, _) => Err(ParseError {
            span: Span { line: 1, col: 1 },
            message: "expected a judgment".into(),
        }),
        (Some(_), Some(second)) => Err(ParseError {
            span: second.span,
            message: "expected a single judgment".into(),
        }),
    }
}

/// Parses a type in the scope of `ctx`.
pub fn parse_ty(src: &str, sig: &Signature, ctx: &Ctx) -> Result<Ty, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        sig: sig.clone(),
        scope: ctx.names().iter().map(|n| n.as_str().to_string()).collect(),
    };
    let t = p.ty()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}

/// Parses a term in the scope of `ctx`.
pub fn parse_tm(src: &str, sig: &Signature, ctx: &Ctx) -> Result<Tm, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        sig: sig.clone(),
        scope: ctx.names().iter().map(|n| n.as_str().to_string()).collect(),
    };
    let t = p.tm()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}
