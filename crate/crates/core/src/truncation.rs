//! Truncation by a full idempotent: the equivalence between modules over
//! an algebra `A` and modules over the corner `B = eAe`.
//!
//! For an idempotent `e` with `AeA = A`, the functor `F = e.(-)`
//! (compression to the `e`-image, a `B`-module) and the functor
//! `G = Ae (x)_B (-)` (balanced tensor with the `(A, B)`-bimodule `Ae`)
//! are mutually quasi-inverse. Both directions and both natural
//! isomorphisms are computed as explicit matrices:
//!
//! * `eps_M : Ae (x)_B eM -> M` evaluates `x e (x) w -> x e . w` on
//!   canonical representatives;
//! * `eta_N : e (Ae (x)_B N) -> N` pushes a representative into the
//!   corner with `e`, reads off its `B`-coordinates, and acts on the
//!   second slot.
//!
//! With these choices the two triangle identities `F(eps_M) =
//! eta_{F(M)}` and `G(eta_N) = eps_{G(N)}` hold entrywise — the pair is
//! an adjoint equivalence on the nose, so every structure transported
//! through it (see [`crate::transport`]) satisfies all coherence
//! diagrams including the unit ones.
//!
//! The monoidal payoff is [`TruncationDatum`]: given a bialgebra
//! structure on `A`, the tensor action of `A`-modules on themselves
//! translates to an action on `B`-modules, `X . N = e (X (x) (Ae (x)_B
//! N))`, with all constraints assembled by the generic transport.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::modcat::{BimoduleAction, Constraint1, LeftAction, ModuleFunctor, MorF, ObjF, RightAction};
use crate::module::{
    balanced_tensor, corner_algebra, corner_module, is_full_idempotent, BalancedTensor, Bimodule,
    CornerAlgebra, CornerModule, Idempotent, Module, ModuleMorphism,
};
use crate::monoidal::MonoidalContext;
use crate::scalar::Scalar;
use crate::transport::{
    forward_left_functor, transported_bimodule_action, transported_left_action,
    transported_right_action, EquivalenceDatum,
};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

#[derive(Default)]
struct TruncCaches {
    corners: HashMap<Arc<Module>, Arc<CornerModule>>,
    tensors: HashMap<Arc<Module>, Arc<BalancedTensor>>,
}

/// The two-functor package of a full-idempotent truncation.
pub struct CornerEquivalence {
    corner: CornerAlgebra,
    /// `Ae` as an `(A, B)`-bimodule in the canonical reduced basis of the
    /// subspace `Ae` of `A`.
    bimodule: Arc<Bimodule>,
    /// Ambient coordinates of the `Ae` basis, one column per basis vector.
    basis: Mat,
    caches: Mutex<TruncCaches>,
}

impl CornerEquivalence {
    /// Fails with a fullness witness when `span{ b_i e b_j }` is a proper
    /// subspace: then the truncation discards simple modules and no
    /// equivalence exists.
    pub fn new(e: &Idempotent) -> Result<Arc<CornerEquivalence>> {
        let ambient = e.algebra().clone();
        let dim = ambient.dim();
        let (full, span_dim) = is_full_idempotent(e);
        if !full {
            return Err(Error::FullnessFailure { span_dim, dim, stage: None });
        }
        let corner = corner_algebra(e)?;
        let field = ambient.field();

        let mut span = crate::mat::RowSpace::new(field, dim);
        for i in 0..dim {
            let v = ambient.multiply(&crate::algebra::vec_basis(dim, i, field), e.coords());
            span.insert(v);
        }
        let basis = span.basis_matrix().transpose();
        let p = basis.cols();
        let left = (0..dim)
            .map(|i| {
                let l = ambient.left_mult_mat(&crate::algebra::vec_basis(dim, i, field));
                let moved = l.matmul(&basis)?;
                basis
                    .solve(&moved)?
                    .ok_or_else(|| Error::Shape("left multiplication escapes Ae".into()))
            })
            .collect::<Result<Vec<Mat>>>()?;
        let right = (0..corner.algebra.dim())
            .map(|r| {
                let amb = corner.include(&crate::algebra::vec_basis(
                    corner.algebra.dim(),
                    r,
                    field,
                ));
                let m = ambient.right_mult_mat(&amb);
                let moved = m.matmul(&basis)?;
                basis
                    .solve(&moved)?
                    .ok_or_else(|| Error::Shape("right corner multiplication escapes Ae".into()))
            })
            .collect::<Result<Vec<Mat>>>()?;
        let bimodule = Bimodule::new(ambient, corner.algebra.clone(), left, right)?;
        debug_assert_eq!(bimodule.dim(), p);
        Ok(Arc::new(CornerEquivalence {
            corner,
            bimodule,
            basis,
            caches: Mutex::new(TruncCaches::default()),
        }))
    }

    pub fn ambient(&self) -> &Arc<crate::algebra::Algebra> {
        &self.corner.ambient
    }

    pub fn corner_algebra(&self) -> &Arc<crate::algebra::Algebra> {
        &self.corner.algebra
    }

    pub fn corner(&self) -> &CornerAlgebra {
        &self.corner
    }

    /// `Ae` with its left `A`- and right `B`-action.
    pub fn bimodule(&self) -> &Arc<Bimodule> {
        &self.bimodule
    }

    /// The compression data of `M`, cached by module content.
    pub fn corner_of(&self, m: &Arc<Module>) -> Result<Arc<CornerModule>> {
        if let Some(hit) = self.caches.lock().unwrap().corners.get(m) {
            return Ok(hit.clone());
        }
        let value = Arc::new(corner_module(&self.corner, m)?);
        let mut caches = self.caches.lock().unwrap();
        Ok(caches.corners.entry(m.clone()).or_insert(value).clone())
    }

    /// The balanced tensor data of `N`, cached by module content.
    pub fn tensor_of(&self, n: &Arc<Module>) -> Result<Arc<BalancedTensor>> {
        if let Some(hit) = self.caches.lock().unwrap().tensors.get(n) {
            return Ok(hit.clone());
        }
        let value = Arc::new(balanced_tensor(&self.bimodule, n)?);
        let mut caches = self.caches.lock().unwrap();
        Ok(caches.tensors.entry(n.clone()).or_insert(value).clone())
    }

    /// `F(M) = eM`.
    pub fn forward(&self, m: &Arc<Module>) -> Result<Arc<Module>> {
        Ok(self.corner_of(m)?.module.clone())
    }

    /// `G(N) = Ae (x)_B N`.
    pub fn backward(&self, n: &Arc<Module>) -> Result<Arc<Module>> {
        Ok(self.tensor_of(n)?.module.clone())
    }

    /// `F` on morphisms: restrict to the `e`-images and resolve against
    /// the target's corner basis.
    pub fn forward_matrix(&self, h: &ModuleMorphism) -> Result<Mat> {
        let src = self.corner_of(&h.source)?;
        let dst = self.corner_of(&h.target)?;
        let moved = h.mat.matmul(&src.inclusion)?;
        dst.inclusion
            .solve(&moved)?
            .ok_or_else(|| Error::Shape("morphism does not preserve the e-image subspace".into()))
    }

    /// `G` on morphisms: induced map on balanced tensors.
    pub fn backward_matrix(&self, g: &ModuleMorphism) -> Result<Mat> {
        let src = self.tensor_of(&g.source)?;
        let dst = self.tensor_of(&g.target)?;
        src.map_second(&dst, &g.mat)
    }

    /// `eps_M : G(F(M)) -> M`, `x e (x) w -> x e . w` on canonical
    /// representatives of the balanced tensor.
    pub fn counit_matrix(&self, m: &Arc<Module>) -> Result<Mat> {
        let cm = self.corner_of(m)?;
        let fm = &cm.module;
        let bt = self.tensor_of(fm)?;
        let field = m.algebra().field();
        let k = fm.dim();
        let p = self.bimodule.dim();
        // Per Ae-basis vector u_i: the map w -> u_i . w restricted to the
        // columns of eM.
        let acted: Vec<Mat> = (0..p)
            .map(|i| {
                let amb = self.basis.column(i);
                m.action_of(&amb).matmul(&cm.inclusion)
            })
            .collect::<Result<Vec<Mat>>>()?;
        let qdim = bt.module.dim();
        let mut out = Mat::zeros(m.dim(), qdim, field);
        for col in 0..qdim {
            let rep = bt.section.column(col);
            for (idx, c) in rep.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = (idx / k, idx % k);
                for r in 0..m.dim() {
                    let add = c.mul(acted[i].at(r, j));
                    if !add.is_zero() {
                        out.set(r, col, out.at(r, col).add(&add));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `eta_N : F(G(N)) -> N`: push a representative into the corner with
    /// `e` so every first-slot component lies in `eAe`, then let its
    /// corner coordinates act on the second slot.
    pub fn unit_matrix(&self, n: &Arc<Module>) -> Result<Mat> {
        let bt = self.tensor_of(n)?;
        let gn = &bt.module;
        let fgn = self.corner_of(gn)?;
        let field = n.algebra().field();
        let dn = n.dim();
        let p = self.bimodule.dim();
        let e_on_p = self.bimodule.left_action_of(self.corner.e.coords());
        let k2 = fgn.module.dim();
        let mut out = Mat::zeros(dn, k2, field);
        for col in 0..k2 {
            // Representative of the col-th basis vector of e G(N) inside
            // P (x) N, then multiplied by e on the first slot.
            let v = fgn.inclusion.column(col);
            let mut rep = vec![field.zero(); p * dn];
            for (q, c) in bt.section.matmul(&Mat::from_entries(v.len(), 1, field, v)?)?
                .column(0)
                .into_iter()
                .enumerate()
            {
                rep[q] = c;
            }
            let mut pushed = vec![field.zero(); p * dn];
            for i2 in 0..p {
                for i in 0..p {
                    let c = e_on_p.at(i2, i);
                    if c.is_zero() {
                        continue;
                    }
                    for j in 0..dn {
                        let add = c.mul(&rep[i * dn + j]);
                        if !add.is_zero() {
                            pushed[i2 * dn + j] = pushed[i2 * dn + j].add(&add);
                        }
                    }
                }
            }
            // Column j of the output accumulates (corner coords of the
            // first slot at j) acting on basis vector j of N.
            for j in 0..dn {
                let slot: Vec<Scalar> = (0..p).map(|i| pushed[i * dn + j].clone()).collect();
                let amb = self.basis.matmul(&Mat::from_entries(p, 1, field, slot)?)?;
                let coords = self.corner.compress(&amb.column(0));
                for (r, coeff) in coords.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let action_col = n.action(r).column(j);
                    for (row, a) in action_col.iter().enumerate() {
                        let add = coeff.mul(a);
                        if !add.is_zero() {
                            out.set(row, col, out.at(row, col).add(&add));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Package both functors and both isomorphisms as a transportable
    /// equivalence datum.
    pub fn equivalence(self: &Arc<CornerEquivalence>) -> Arc<EquivalenceDatum> {
        let fwd_obj: ObjF = {
            let t = self.clone();
            Arc::new(move |m: &Arc<Module>| t.forward(m))
        };
        let fwd_mor: MorF = {
            let t = self.clone();
            Arc::new(move |h: &ModuleMorphism| {
                let mat = t.forward_matrix(h)?;
                ModuleMorphism::new(t.forward(&h.source)?, t.forward(&h.target)?, mat)
            })
        };
        let bwd_obj: ObjF = {
            let t = self.clone();
            Arc::new(move |n: &Arc<Module>| t.backward(n))
        };
        let bwd_mor: MorF = {
            let t = self.clone();
            Arc::new(move |g: &ModuleMorphism| {
                let mat = t.backward_matrix(g)?;
                ModuleMorphism::new(t.backward(&g.source)?, t.backward(&g.target)?, mat)
            })
        };
        let source_iso: Constraint1 = {
            let t = self.clone();
            Arc::new(move |m: &Arc<Module>| {
                let mat = t.counit_matrix(m)?;
                ModuleMorphism::new(t.backward(&t.forward(m)?)?, m.clone(), mat)
            })
        };
        let target_iso: Constraint1 = {
            let t = self.clone();
            Arc::new(move |n: &Arc<Module>| {
                let mat = t.unit_matrix(n)?;
                ModuleMorphism::new(t.forward(&t.backward(n)?)?, n.clone(), mat)
            })
        };
        EquivalenceDatum::new(fwd_obj, fwd_mor, bwd_obj, bwd_mor, source_iso, target_iso)
    }
}

/// A truncation together with the bialgebra structure of the ambient
/// algebra: enough to translate the tensor action onto corner modules.
pub struct TruncationDatum {
    pub ctx: Arc<MonoidalContext>,
    pub corner: Arc<CornerEquivalence>,
    pub equivalence: Arc<EquivalenceDatum>,
}

impl TruncationDatum {
    pub fn new(ctx: &Arc<MonoidalContext>, e: &Idempotent) -> Result<TruncationDatum> {
        if !ctx.algebra().same_as(e.algebra()) {
            return Err(Error::AlgebraMismatch(
                "idempotent and bialgebra structure live over different algebras".into(),
            ));
        }
        let corner = CornerEquivalence::new(e)?;
        let equivalence = corner.equivalence();
        Ok(TruncationDatum { ctx: ctx.clone(), corner, equivalence })
    }

    /// `X . N = e (X (x) (Ae (x)_B N))` with all transported constraints.
    pub fn translated_left_action(&self) -> LeftAction {
        transported_left_action(&LeftAction::strict(&self.ctx), &self.equivalence)
    }

    pub fn translated_right_action(&self) -> RightAction {
        transported_right_action(&RightAction::strict(&self.ctx), &self.equivalence)
    }

    pub fn translated_bimodule_action(&self) -> BimoduleAction {
        transported_bimodule_action(&BimoduleAction::strict(&self.ctx), &self.equivalence)
    }

    /// `e.(-)` as a module functor from `A`-modules with the tensor
    /// action to corner modules with the translated action.
    pub fn compression_functor(&self) -> ModuleFunctor {
        forward_left_functor(&LeftAction::strict(&self.ctx), &self.equivalence)
    }
}
