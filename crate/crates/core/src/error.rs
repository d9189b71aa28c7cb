//! Crate-wide error type. Structural failures (shape, field, malformed
//! input data) are errors; *mathematical* verdicts (a diagram failing to
//! commute, a check returning false) are ordinary return values, never
//! errors.

use crate::scalar::Field;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Two operands live over different ground fields.
    #[error("field mismatch: {0:?} vs {1:?}")]
    FieldMismatch(Field, Field),

    /// Dimension bookkeeping violated (wrong matrix shape, wrong
    /// coordinate-vector length, and so on).
    #[error("shape error: {0}")]
    Shape(String),

    /// A multiplication table fails the group axioms. The payload is a
    /// witness: either an associativity triple `(i, j, k)` or a
    /// description of the missing identity/inverse.
    #[error("not a group: {0}")]
    NotAGroup(String),

    /// Structure constants fail associativity or the unit law.
    #[error("not an associative unital algebra: {0}")]
    InvalidAlgebra(String),

    /// Operands belong to different algebras.
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    /// An element claimed idempotent has `e*e != e`.
    #[error("element is not idempotent")]
    NotIdempotent,

    /// `span{{ b_i e b_j }}` is a proper subspace, so the corner functor
    /// cannot be an equivalence. Reports the span dimension reached.
    #[error("idempotent is not full{}: span dimension {span_dim} of {dim}", stage.as_ref().map(|s| format!(" at stage {s}")).unwrap_or_default())]
    FullnessFailure {
        span_dim: usize,
        dim: usize,
        stage: Option<String>,
    },

    /// A comparison map required to be invertible is singular.
    #[error("degenerate equivalence: {0}")]
    DegenerateEquivalence(String),

    /// The two idempotents of a staged datum are not nested
    /// (`e1 e2 = e2 e1 = e2` fails) or a stage loses fullness.
    #[error("incompatible stage idempotents: {0}")]
    StageIncompatible(String),

    /// A coherence datum handed to a checker is structurally unusable
    /// (wrong endpoints, non-invertible constraint, missing component).
    #[error("malformed constraint: {0}")]
    MalformedConstraint(String),

    /// Functor data being composed do not share the middle category.
    #[error("composition mismatch: {0}")]
    CompositionMismatch(String),

    /// A fixture file failed to parse or referenced an unknown name.
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
