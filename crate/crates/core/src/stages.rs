//! Reduction in two stages through nested idempotents.
//!
//! Given idempotents `e2 <= e1` (meaning `e1 e2 = e2 e1 = e2`), one can
//! truncate `A` to `B1 = e1 A e1` first and then truncate `B1` by the
//! image `e2'` of `e2`, or truncate `A` by `e2` directly. The staged
//! corner `e2' B1 e2'` and the direct corner `e2 A e2` present the same
//! subalgebra of `A` in different coordinates; [`AlgebraIso`] is the
//! explicit multiplicative identification between the two presentations,
//! verified basis pair by basis pair.
//!
//! The content of "reduction by stages" is that nothing depends on the
//! route: the two-step compression `e2' . (e1 . M)` and the one-step
//! compression `e2 . M` are naturally isomorphic, and the comparison
//! extends to the transported tensor actions. The comparison maps are
//! concrete:
//!
//! * `theta_M : e2'(e1 M) -> e2 M` resolves the two bases of the same
//!   subspace `e2 M` of `M` against each other;
//! * `psi_N : G_s(N) -> G_d(N)` compares the two induction functors,
//!   assembled from `theta` and the unit/counit isomorphisms;
//! * `Theta_{X,N} : F_s(X (x) G_s(N)) -> F_d(X (x) G_d(N))` compares the
//!   two translated actions object by object.
//!
//! All three are checked to be invertible intertwiners by the tests, and
//! `Theta` satisfies the associativity-compatibility square relating the
//! two transported constraints.

use crate::algebra::{vec_basis, Algebra};
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::modcat::{Constraint1, LeftAction, MorF, ObjF};
use crate::module::{Idempotent, Module, ModuleMorphism};
use crate::monoidal::MonoidalContext;
use crate::scalar::Scalar;
use crate::transport::{compose_equivalences, transported_left_action, EquivalenceDatum};
use crate::truncation::CornerEquivalence;
use std::sync::Arc;

/// An isomorphism of structure-constant algebras given by the matrix of
/// target coordinates of the source basis images. Verified bijective,
/// unital, and multiplicative at construction.
#[derive(Clone)]
pub struct AlgebraIso {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub mat: Mat,
    inverse: Mat,
}

impl AlgebraIso {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, mat: Mat) -> Result<AlgebraIso> {
        if source.dim() != target.dim() || mat.rows() != target.dim() || mat.cols() != source.dim() {
            return Err(Error::Shape("algebra isomorphism must be a square matrix".into()));
        }
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field(), target.field()));
        }
        let inverse = mat
            .inverse()?
            .ok_or_else(|| Error::StageIncompatible("corner identification is singular".into()))?;
        let iso = AlgebraIso { source, target, mat, inverse };
        if iso.apply(iso.source.unit()) != iso.target.unit() {
            return Err(Error::StageIncompatible("corner identification does not preserve the unit".into()));
        }
        let dim = iso.source.dim();
        let field = iso.source.field();
        for i in 0..dim {
            for j in 0..dim {
                let lhs = iso.apply(iso.source.basis_product(i, j));
                let rhs = iso.target.multiply(
                    &iso.apply(&vec_basis(dim, i, field)),
                    &iso.apply(&vec_basis(dim, j, field)),
                );
                if lhs != rhs {
                    return Err(Error::StageIncompatible(format!(
                        "corner identification is not multiplicative at basis pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(iso)
    }

    pub fn apply(&self, coords: &[Scalar]) -> Vec<Scalar> {
        mat_vec(&self.mat, coords)
    }

    pub fn unapply(&self, coords: &[Scalar]) -> Vec<Scalar> {
        mat_vec(&self.inverse, coords)
    }

    /// Reinterpret a module over the source as a module over the target:
    /// the target basis acts through the inverse identification.
    pub fn push_module(&self, p: &Arc<Module>) -> Result<Arc<Module>> {
        if !p.algebra().same_as(&self.source) {
            return Err(Error::AlgebraMismatch("module is not over the isomorphism source".into()));
        }
        let dim = self.target.dim();
        let field = self.target.field();
        let action = (0..dim)
            .map(|i| p.action_of(&self.unapply(&vec_basis(dim, i, field))))
            .collect();
        Module::new(self.target.clone(), action)
    }

    /// Reinterpret a module over the target as a module over the source.
    pub fn pull_module(&self, q: &Arc<Module>) -> Result<Arc<Module>> {
        if !q.algebra().same_as(&self.target) {
            return Err(Error::AlgebraMismatch("module is not over the isomorphism target".into()));
        }
        let dim = self.source.dim();
        let field = self.source.field();
        let action = (0..dim)
            .map(|i| q.action_of(&self.apply(&vec_basis(dim, i, field))))
            .collect();
        Module::new(self.source.clone(), action)
    }

    /// The induced equivalence of module categories: both functors keep
    /// the underlying space and matrices, both round-trip isomorphisms
    /// are literal identities.
    pub fn equivalence(&self) -> Arc<EquivalenceDatum> {
        let fwd_obj: ObjF = {
            let iso = self.clone();
            Arc::new(move |p: &Arc<Module>| iso.push_module(p))
        };
        let fwd_mor: MorF = {
            let iso = self.clone();
            Arc::new(move |h: &ModuleMorphism| {
                ModuleMorphism::new(iso.push_module(&h.source)?, iso.push_module(&h.target)?, h.mat.clone())
            })
        };
        let bwd_obj: ObjF = {
            let iso = self.clone();
            Arc::new(move |q: &Arc<Module>| iso.pull_module(q))
        };
        let bwd_mor: MorF = {
            let iso = self.clone();
            Arc::new(move |h: &ModuleMorphism| {
                ModuleMorphism::new(iso.pull_module(&h.source)?, iso.pull_module(&h.target)?, h.mat.clone())
            })
        };
        let id_iso: Constraint1 = Arc::new(|m: &Arc<Module>| Ok(ModuleMorphism::identity(m)));
        EquivalenceDatum::new(fwd_obj, fwd_mor, bwd_obj, bwd_mor, id_iso.clone(), id_iso)
    }
}

fn mat_vec(m: &Mat, v: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(m.cols(), v.len());
    (0..m.rows())
        .map(|r| {
            let mut acc = m.field().zero();
            for (c, coeff) in v.iter().enumerate() {
                if !coeff.is_zero() {
                    acc = acc.add(&coeff.mul(m.at(r, c)));
                }
            }
            acc
        })
        .collect()
}

fn with_stage<T>(result: Result<T>, stage: &str) -> Result<T> {
    result.map_err(|e| match e {
        Error::FullnessFailure { span_dim, dim, stage: None } => {
            Error::FullnessFailure { span_dim, dim, stage: Some(stage.to_string()) }
        }
        other => other,
    })
}

/// Both truncation routes through a nested pair of idempotents, with the
/// identification of their corners and the comparison isomorphisms.
pub struct StagedTruncation {
    /// `A` truncated by `e1`.
    pub first: Arc<CornerEquivalence>,
    /// `B1` truncated by the image `e2'` of `e2`.
    pub second: Arc<CornerEquivalence>,
    /// `A` truncated by `e2` in one step.
    pub direct: Arc<CornerEquivalence>,
    /// Staged corner -> direct corner.
    pub iso: AlgebraIso,
    staged_datum: Arc<EquivalenceDatum>,
    direct_datum: Arc<EquivalenceDatum>,
}

impl StagedTruncation {
    pub fn new(e1: &Idempotent, e2: &Idempotent) -> Result<Arc<StagedTruncation>> {
        let a = e1.algebra().clone();
        if !a.same_as(e2.algebra()) {
            return Err(Error::AlgebraMismatch("nested idempotents over different algebras".into()));
        }
        if a.multiply(e1.coords(), e2.coords()) != e2.coords()
            || a.multiply(e2.coords(), e1.coords()) != e2.coords()
        {
            return Err(Error::StageIncompatible(
                "second idempotent does not factor through the first (e1 e2 = e2 e1 = e2 fails)".into(),
            ));
        }
        let first = with_stage(CornerEquivalence::new(e1), "first")?;
        let e2_in_corner = Idempotent::new(
            first.corner_algebra().clone(),
            first.corner().compress(e2.coords()),
        )?;
        let second = with_stage(CornerEquivalence::new(&e2_in_corner), "second")?;
        let direct = with_stage(CornerEquivalence::new(e2), "direct")?;

        // The staged corner basis, read back as ambient elements, must
        // land in e2 A e2, where the direct compression identifies it.
        let staged_b = second.corner_algebra().clone();
        let dim = staged_b.dim();
        if dim != direct.corner_algebra().dim() {
            return Err(Error::StageIncompatible(format!(
                "staged corner has dimension {dim}, direct corner {}",
                direct.corner_algebra().dim()
            )));
        }
        let field = staged_b.field();
        let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(dim);
        for r in 0..dim {
            let in_b1 = second.corner().include(&vec_basis(dim, r, field));
            let ambient = first.corner().include(&in_b1);
            columns.push(direct.corner().compress(&ambient));
        }
        let mat = Mat::from_fn(dim, dim, field, |i, j| columns[j][i].clone());
        let iso = AlgebraIso::new(staged_b, direct.corner_algebra().clone(), mat)?;

        let inner = compose_equivalences(&second.equivalence(), &first.equivalence());
        let staged_datum = compose_equivalences(&iso.equivalence(), &inner);
        let direct_datum = direct.equivalence();
        Ok(Arc::new(StagedTruncation { first, second, direct, iso, staged_datum, direct_datum }))
    }

    /// The composite equivalence `A-mod ~ B2-mod` through both stages
    /// (including the corner identification).
    pub fn staged_datum(&self) -> &Arc<EquivalenceDatum> {
        &self.staged_datum
    }

    /// The one-step equivalence `A-mod ~ B2-mod`.
    pub fn direct_datum(&self) -> &Arc<EquivalenceDatum> {
        &self.direct_datum
    }

    /// `theta_M : e2'(e1 M) -> e2 M`: both sides are bases of the same
    /// subspace of `M`; resolve one against the other.
    pub fn comparison(&self, m: &Arc<Module>) -> Result<ModuleMorphism> {
        let outer = self.first.corner_of(m)?;
        let f1m = self.first.forward(m)?;
        let inner = self.second.corner_of(&f1m)?;
        let one_step = self.direct.corner_of(m)?;
        let staged_basis = outer.inclusion.matmul(&inner.inclusion)?;
        let mat = one_step
            .inclusion
            .solve(&staged_basis)?
            .ok_or_else(|| Error::StageIncompatible("staged corner basis escapes e2 M".into()))?;
        ModuleMorphism::new(self.staged_datum.forward(m)?, self.direct_datum.forward(m)?, mat)
    }

    /// `psi_N : G_s(N) -> G_d(N)` comparing the two inductions:
    /// `G_d(eta_s) o G_d(theta^-1 at G_s N) o eps_d^-1 at G_s N`.
    pub fn backward_comparison(&self, n: &Arc<Module>) -> Result<ModuleMorphism> {
        let gs_n = self.staged_datum.backward(n)?;
        let step1 = self.direct_datum.eps_inv(&gs_n)?;
        let theta_inv = self
            .comparison(&gs_n)?
            .inverse()?
            .ok_or_else(|| Error::StageIncompatible("corner comparison is singular".into()))?;
        let step2 = self.direct_datum.backward_mor(&theta_inv)?;
        let step3 = self.direct_datum.backward_mor(&self.staged_datum.eta(n)?)?;
        step3.compose(&step2)?.compose(&step1)
    }

    /// `Theta_{X,N} : F_s(X (x) G_s(N)) -> F_d(X (x) G_d(N))` comparing
    /// the two translated actions.
    pub fn action_comparison(
        &self,
        ctx: &Arc<MonoidalContext>,
        x: &Arc<Module>,
        n: &Arc<Module>,
    ) -> Result<ModuleMorphism> {
        let gs_n = self.staged_datum.backward(n)?;
        let x_gs = ctx.tensor(x, &gs_n)?;
        let theta = self.comparison(&x_gs)?;
        let psi = self.backward_comparison(n)?;
        let id_psi = ctx.tensor_morphism(&ModuleMorphism::identity(x), &psi)?;
        self.direct_datum.forward_mor(&id_psi)?.compose(&theta)
    }

    /// Tensor action translated through both stages.
    pub fn staged_left_action(&self, ctx: &Arc<MonoidalContext>) -> Result<LeftAction> {
        if !ctx.algebra().same_as(self.first.ambient()) {
            return Err(Error::AlgebraMismatch("bialgebra structure over a different algebra".into()));
        }
        Ok(transported_left_action(&LeftAction::strict(ctx), &self.staged_datum))
    }

    /// Tensor action translated through the one-step truncation.
    pub fn direct_left_action(&self, ctx: &Arc<MonoidalContext>) -> Result<LeftAction> {
        if !ctx.algebra().same_as(self.first.ambient()) {
            return Err(Error::AlgebraMismatch("bialgebra structure over a different algebra".into()));
        }
        Ok(transported_left_action(&LeftAction::strict(ctx), &self.direct_datum))
    }
}
