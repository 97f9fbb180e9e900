//! Finite-dimensional algebras and superalgebras given by structure constants.

mod element;
mod spec;
mod word;

pub use element::{Element, ParityClass};
pub use spec::{AlgebraSpec, Product};
pub use word::{WordEnv, WordTree};

use crate::math::MathError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("{0}")]
    Math(#[from] MathError),
    #[error("index out of range in product ({i},{j}) -> {k}: dimension is {dim}")]
    IndexOutOfRange { i: usize, j: usize, k: usize, dim: usize },
    #[error("grading violated: e{i}*e{j} has a component on e{k}")]
    Grading { i: usize, j: usize, k: usize },
    #[error("parity entries must be 0 or 1, found {0}")]
    ParityValue(u8),
    #[error("expected {expected} {what}, found {found}")]
    Length {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("operands belong to different algebras (`{0}` and `{1}`)")]
    AlgebraMismatch(String, String),
    #[error("unbound name `{0}` in word")]
    UnboundLeaf(String),
    #[error("word parse error at byte {pos}: {msg}")]
    WordParse { pos: usize, msg: String },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("algebra `{0}` is not graded")]
    Ungraded(String),
}
