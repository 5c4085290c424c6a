use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub type MResult<T> = Result<T, ModelError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed model: {0}")]
    Malformed(String),
    #[error("{0}")]
    Law(Violation),
    #[error("groupoid `{name}` has {size} morphisms, above the limit of {limit}")]
    TooLarge {
        name: String,
        size: usize,
        limit: usize,
    },
    #[error("no solution for {0}")]
    NoSolution(String),
    #[error("{count} solutions for {what}, expected exactly one")]
    NotUnique { what: String, count: usize },
    #[error("search for {0} exceeded its limit")]
    SearchLimit(String),
}

impl ModelError {
    pub fn malformed(msg: impl Into<String>) -> Self {
        ModelError::Malformed(msg.into())
    }

    pub fn law(structure: &str, law: &str, witness: impl Into<String>) -> Self {
        ModelError::Law(Violation {
            structure: structure.to_string(),
            law: law.to_string(),
            witness: witness.into(),
        })
    }
}

/// One failed law instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub structure: String,
    pub law: String,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} violated at {}",
            self.structure, self.law, self.witness
        )
    }
}

const MAX_RECORDED: usize = 64;

/// The outcome of an exhaustive check: how many law instances were
/// examined and which of them failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub structure: String,
    pub instances: usize,
    pub failures: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(structure: impl Into<String>) -> Self {
        Report {
            structure: structure.into(),
            instances: 0,
            failures: 0,
            violations: Vec::new(),
        }
    }

    /// Records one law instance.
    pub fn check(&mut self, holds: bool, law: &str, witness: impl FnOnce() -> String) -> bool {
        self.instances += 1;
        if !holds {
            self.fail(law, witness());
        }
        holds
    }

    pub fn fail(&mut self, law: &str, witness: String) {
        self.failures += 1;
        if self.violations.len() < MAX_RECORDED {
            self.violations.push(Violation {
                structure: self.structure.clone(),
                law: law.to_string(),
                witness,
            });
        }
    }

    /// Folds another report into this one.
    pub fn absorb(&mut self, other: Report) {
        self.instances += other.instances;
        self.failures += other.failures;
        let room = MAX_RECORDED.saturating_sub(self.violations.len());
        self.violations.extend(other.violations.into_iter().take(room));
    }

    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    pub fn into_result(self) -> MResult<()> {
        match self.violations.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(ModelError::Law(v)),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "{}: {} instances, all hold", self.structure, self.instances)
        } else {
            writeln!(
                f,
                "{}: {} of {} instances fail",
                self.structure, self.failures, self.instances
            )?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}
