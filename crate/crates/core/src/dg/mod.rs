//! Free graded path algebras over a quiver-like vertex set, with
//! differentials, morphisms and twisted derivations, all over exact
//! coefficient fields.
//!
//! Grading is cohomological and the differential has degree +1, extended to
//! products by the Koszul rule
//! `d(x1...xk) = sum_i (-1)^(|x1|+...+|x(i-1)|) x1...d(xi)...xk`.

mod derivation;
mod element;
mod morphism;
mod presentation;
pub mod report;
mod scalar;

pub use derivation::TwistedDerivation;
pub use element::{Element, GenId, Word};
pub use morphism::{check_morphisms_equal, compose_morphisms, Morphism};
pub use presentation::{GeneratorInfo, Presentation, PresentationBuilder};
pub use report::{CheckReport, CheckStatus, Failure};
pub use scalar::{Field, Scalar};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("non-composable concatenation: left target {left_tgt:?} vs right source {right_src:?}")]
    NonComposable { left_tgt: String, right_src: String },
    #[error("endpoint mismatch: {left} vs {right}")]
    EndpointMismatch { left: String, right: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate generator id {0:?}")]
    DuplicateGenerator(String),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("scalar backend of a coefficient does not match the presentation field {0}")]
    FieldMismatch(String),
    #[error("element mixes degrees: expected {expected}, found word {word} of degree {found}")]
    DegreeNonUniform { expected: i64, found: i64, word: String },
    #[error("element endpoints {found} do not match required {expected}")]
    WrongEndpoints { expected: String, found: String },
    #[error("word {word} is not composable at position {position}")]
    BrokenWord { word: String, position: usize },
    #[error("differential of {generator} fails d^2 = 0 with residual {residual}")]
    DSquared { generator: String, residual: String },
    #[error("presentation mismatch: {0}")]
    PresentationMismatch(String),
    #[error("morphism field mismatch: source over {src_field}, target over {tgt_field}")]
    MorphismFieldMismatch { src_field: String, tgt_field: String },
    #[error("companion morphism of the twisted derivation does not match the supplied one")]
    CompanionMismatch,
}
