use thiserror::Error;

use crate::Element;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("presentation error: {0}")]
    Presentation(String),

    #[error("axiom violation: {law} fails at ({}, {}, {})", .witness[0], .witness[1], .witness[2])]
    AxiomViolation { law: &'static str, witness: [String; 3] },

    #[error("not cancellative: {x} + {y} = {x} + {z} but {y} != {z}")]
    NotCancellative { x: Element, y: Element, z: Element },

    #[error("relation is not transitive: {a} ~ {b} and {b} ~ {c} but {a} !~ {c}")]
    NotAnEquivalence { a: Element, b: Element, c: Element },

    #[error("search bound {bound} exhausted deciding {left} against {right}")]
    BoundExhausted { left: Element, right: Element, bound: usize },

    #[error("modulation undefined: {0}")]
    ModulationUndefined(String),

    #[error("{0} has no negation")]
    NotAGroup(String),

    #[error("{0} has no scalar action")]
    NotACone(String),

    #[error("{element} has no {n}-th part in {monoid}")]
    NoRoot { monoid: String, element: Element, n: u64 },

    #[error("path type error at step {step}: {message}")]
    PathType { step: usize, message: String },

    #[error("step {step}: {source}")]
    Step { step: usize, source: Box<Error> },

    #[error("hypothesis fails: {0}")]
    Inapplicable(String),
}

impl Error {
    /// Adds the index of the failing step to errors raised inside a path.
    pub fn at_step(self, step: usize) -> Error {
        match self {
            Error::PathType { .. } | Error::Step { .. } => self,
            other => Error::Step { step, source: Box::new(other) },
        }
    }

    /// The innermost error, with step wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Step { source, .. } => source.root(),
            other => other,
        }
    }

    pub fn is_bound_exhausted(&self) -> bool {
        matches!(self.root(), Error::BoundExhausted { .. })
    }
}
