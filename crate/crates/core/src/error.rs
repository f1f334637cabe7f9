use thiserror::Error;

use crate::graded::Element;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("operands live in different algebra signatures")]
    SignatureMismatch,
    #[error("image of `{generator}` is not homogeneous")]
    InhomogeneousImage { generator: String },
    #[error("bidegree mismatch for `{generator}`: expected {expected}, found {found}")]
    BidegreeMismatch {
        generator: String,
        expected: String,
        found: String,
    },
    #[error("chain-map property fails on generator `{generator}`")]
    ChainMapViolation {
        generator: String,
        residual: Box<Element>,
    },
    #[error("element is not closed")]
    NotClosed { residual: Box<Element> },
    #[error("basis in degree {degree} has {estimate} monomials, above the cap of {cap}")]
    Capped {
        degree: u32,
        estimate: String,
        cap: usize,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("bad gamma indices {0:?}")]
    BadIndices(Vec<usize>),
    #[error("representation is for d={rep}, requested d={requested}")]
    RepMismatch { rep: usize, requested: usize },
    #[error("cocycle with p={0} vanishes identically (antisymmetric pairing)")]
    ZeroCocycle(usize),
    #[error("not proportional; residual has {terms} terms")]
    NotProportional { terms: usize, residual: Box<Element> },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
