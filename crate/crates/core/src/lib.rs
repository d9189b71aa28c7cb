//! Exact computational engine for actions of monoidal categories on
//! module categories, specialized to finite-dimensional representation
//! theory over the rationals or a prime field.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`], [`mat`] — exact field arithmetic and dense linear algebra
//!   (echelon forms, kernels, solving, Kronecker products);
//! * [`algebra`], [`module`] — finite-dimensional associative algebras
//!   given by structure constants, their modules, morphism spaces,
//!   bimodules, balanced tensor products, and corner (idempotent
//!   truncation) constructions;
//! * [`monoidal`] — Hopf structure on group algebras, tensor products of
//!   modules with strict associativity, Kronecker-sum operators, and the
//!   nilpotent binomial expansion identity;
//! * [`modcat`] — coherence checkers for module-category structures:
//!   pentagon, bimodule compatibility, module-functor and
//!   bimodule-functor diagrams, naturality squares, composition;
//! * [`transport`] — transport of an action structure through an explicit
//!   equivalence datum;
//! * [`truncation`] — the corner equivalence `A-mod ≃ eAe-mod` for a full
//!   idempotent `e`, with induced translation functors;
//! * [`stages`] — reduction in two stages through nested idempotents and
//!   the comparison with direct one-step truncation;
//! * [`fixtures`] — concrete group algebras, irreducible representations,
//!   and idempotents used by tests, benchmarks, and the CLI;
//! * [`sampling`] — deterministic seeded sampling of scalars, objects,
//!   and morphisms.
//!
//! Everything is exact: no floating point, no tolerances. A diagram either
//! commutes entrywise or the checker reports the two offending composite
//! matrices.

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod mat;
pub mod modcat;
pub mod module;
pub mod monoidal;
pub mod sampling;
pub mod scalar;
pub mod stages;
pub mod transport;
pub mod truncation;

pub use algebra::{field_algebra, group_algebra, make_group_algebra, Algebra, AlgebraReport, GroupTable};
pub use error::{Error, Result};
pub use mat::{Echelon, Mat, RowSpace};
pub use modcat::{BimoduleAction, DiagramReport, LeftAction, ModuleFunctor, RightAction};
pub use module::{
    balanced_tensor, change_basis, corner_algebra, corner_module, direct_sum, hom_basis,
    is_full_idempotent, regular_bimodule, regular_module, BalancedTensor, Bimodule, CornerAlgebra,
    CornerModule, Idempotent, Module, ModuleMorphism,
};
pub use monoidal::{group_hopf, kronecker_sum, MonoidalContext};
pub use sampling::Sampler;
pub use scalar::{Field, Scalar};
pub use stages::{AlgebraIso, StagedTruncation};
pub use transport::{
    compose_equivalences, transported_bimodule_action, transported_left_action,
    transported_right_action, EquivalenceDatum,
};
pub use truncation::{CornerEquivalence, TruncationDatum};
