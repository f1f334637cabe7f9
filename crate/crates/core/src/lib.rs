//! Exact verification engine for semifree differential (bi)graded commutative
//! algebras: Chevalley–Eilenberg algebras of super-Minkowski and super-Poincaré
//! spacetimes, their higher extensions, and the sphere models they map into.
//!
//! All arithmetic is over arbitrary-precision rationals. Every identity the
//! engine checks is decided exactly; failures carry the nonzero residual.

pub mod catalog;
pub mod clifford;
pub mod dgca;
pub mod error;
pub mod fierz;
pub mod graded;
pub mod linalg;
pub mod morphism;
pub mod rathtpy;
pub mod report;

pub use dgca::SemifreeDgca;
pub use error::{Error, Result};
pub use graded::{Bidegree, Element, GeneratorDecl, Monomial, Parity, Signature, Q};
pub use morphism::{ChainHomotopy, DgcaMorphism};
pub use report::{Report, Verdict};
