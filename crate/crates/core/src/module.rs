//! Modules over a structure-constant algebra, their morphism spaces, and
//! the idempotent-corner toolkit: fullness testing, corner algebras
//! `eAe`, corner modules `eM`, bimodules, and balanced tensor products
//! `P (x)_B N`.
//!
//! A module is the tuple of action matrices of the algebra basis; the
//! representation axioms `rho(b_i) rho(b_j) = sum_k c_ijk rho(b_k)` and
//! `rho(1) = id` are what [`Module::validate`] checks. Construction always
//! enforces the (cheap) unit axiom; the full pairwise check is explicit
//! because intermediate functorial constructions would otherwise spend
//! cubic time re-proving what holds by construction. Tests validate every
//! construction on samples.
//!
//! Quotients are never represented by cosets: a quotient space is the
//! span complement of the canonical reduced basis of the killed subspace
//! (see [`RowSpace`]), so every quotient has one deterministic coordinate
//! system and morphisms between quotients are honest matrices.

use crate::algebra::{vec_basis, Algebra};
use crate::error::{Error, Result};
use crate::mat::{Mat, RowSpace};
use crate::scalar::Scalar;
use std::sync::Arc;

#[derive(PartialEq, Eq)]
pub struct Module {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Mat>,
    /// Content digest (see [`Algebra`]): lets functor caches key on
    /// modules without rehashing the action matrices on every lookup.
    fingerprint: u64,
}

impl std::hash::Hash for Module {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        state.write_u64(self.fingerprint);
    }
}

impl Module {
    /// Wrap action matrices. Checks shapes, fields, and the unit axiom;
    /// see the module docs for why the pairwise axiom is a separate call.
    pub fn new(algebra: Arc<Algebra>, action: Vec<Mat>) -> Result<Arc<Module>> {
        if action.len() != algebra.dim() {
            return Err(Error::Shape(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        let dim = action.first().map_or(0, Mat::rows);
        for m in &action {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape("action matrices must be square and equal-sized".into()));
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch(algebra.field(), m.field()));
            }
        }
        let fingerprint = crate::algebra::content_digest(&(&algebra, dim, &action));
        let module = Module { algebra, dim, action, fingerprint };
        if dim > 0 {
            let unit_action = module.action_of(module.algebra.unit());
            if !unit_action.is_identity() {
                return Err(Error::InvalidAlgebra("unit does not act as the identity".into()));
            }
        }
        Ok(Arc::new(module))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Mat {
        &self.action[i]
    }

    /// Action matrix of an arbitrary element given by coordinates.
    pub fn action_of(&self, coords: &[Scalar]) -> Mat {
        assert_eq!(coords.len(), self.algebra.dim());
        let mut out = Mat::zeros(self.dim, self.dim, self.algebra.field());
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.action[i].scale(c)).expect("uniform shape");
            }
        }
        out
    }

    /// Full representation-axiom check; returns the basis pairs `(i, j)`
    /// where `rho(b_i) rho(b_j)` disagrees with the structure constants.
    pub fn validate(&self) -> Vec<(usize, usize)> {
        let a = &self.algebra;
        let mut failures = Vec::new();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action[i].matmul(&self.action[j]).expect("uniform shape");
                let rhs = self.action_of(a.basis_product(i, j));
                if lhs != rhs {
                    failures.push((i, j));
                }
            }
        }
        failures
    }

    /// Structural identity: same algebra, same action matrices. Pointer
    /// equality short-circuits the common case of shared objects.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Module>) -> bool {
        Arc::ptr_eq(self, other)
            || (self.fingerprint == other.fingerprint
                && self.algebra.same_as(&other.algebra)
                && self.dim == other.dim
                && self.action == other.action)
    }
}

impl std::fmt::Debug for Module {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Module(dim {} over {:?})", self.dim, self.algebra)
    }
}

/// Left regular module: the algebra acting on itself by left
/// multiplication. Satisfies the axioms because the algebra is
/// associative (which was verified when the algebra was built).
pub fn regular_module(algebra: &Arc<Algebra>) -> Arc<Module> {
    let action = (0..algebra.dim())
        .map(|i| algebra.left_mult_mat(&vec_basis(algebra.dim(), i, algebra.field())))
        .collect();
    Module::new(algebra.clone(), action).expect("regular action is a representation")
}

/// Block-diagonal direct sum. All summands must live over the same
/// algebra.
pub fn direct_sum(summands: &[Arc<Module>]) -> Result<Arc<Module>> {
    let first = summands.first().ok_or_else(|| Error::Shape("empty direct sum".into()))?;
    let algebra = first.algebra().clone();
    for m in summands {
        if !m.algebra().same_as(&algebra) {
            return Err(Error::AlgebraMismatch("direct sum across different algebras".into()));
        }
    }
    let total: usize = summands.iter().map(|m| m.dim()).sum();
    let field = algebra.field();
    let action = (0..algebra.dim())
        .map(|i| {
            let mut block = Mat::zeros(total, total, field);
            let mut offset = 0;
            for m in summands {
                for r in 0..m.dim() {
                    for c in 0..m.dim() {
                        block.set(offset + r, offset + c, m.action(i).at(r, c).clone());
                    }
                }
                offset += m.dim();
            }
            block
        })
        .collect();
    Module::new(algebra, action)
}

/// Rewrite a module in a new basis: the columns of `basis` are the new
/// basis vectors in old coordinates, so the new action matrices are
/// `basis^-1 * rho * basis`. Used to confirm that every construction in
/// this crate is basis-independent.
pub fn change_basis(module: &Arc<Module>, basis: &Mat) -> Result<Arc<Module>> {
    let inv = basis
        .inverse()?
        .ok_or_else(|| Error::Shape("change of basis must be invertible".into()))?;
    let action = (0..module.algebra().dim())
        .map(|i| inv.matmul(module.action(i)).and_then(|m| m.matmul(basis)))
        .collect::<Result<Vec<_>>>()?;
    Module::new(module.algebra().clone(), action)
}

/// A linear map between modules over the same algebra, stored with its
/// endpoints. `mat` has shape `target.dim x source.dim`. Whether it
/// actually intertwines the actions is a query ([`is_intertwiner`]), not
/// a construction invariant: checkers build candidate composites first
/// and interrogate them afterwards.
///
/// [`is_intertwiner`]: ModuleMorphism::is_intertwiner
#[derive(Clone, PartialEq)]
pub struct ModuleMorphism {
    pub source: Arc<Module>,
    pub target: Arc<Module>,
    pub mat: Mat,
}

impl ModuleMorphism {
    pub fn new(source: Arc<Module>, target: Arc<Module>, mat: Mat) -> Result<ModuleMorphism> {
        if !source.algebra().same_as(target.algebra()) {
            return Err(Error::AlgebraMismatch("morphism endpoints over different algebras".into()));
        }
        if mat.rows() != target.dim() || mat.cols() != source.dim() {
            return Err(Error::Shape(format!(
                "morphism matrix {}x{} between modules of dimension {} -> {}",
                mat.rows(),
                mat.cols(),
                source.dim(),
                target.dim()
            )));
        }
        if mat.field() != source.algebra().field() {
            return Err(Error::FieldMismatch(source.algebra().field(), mat.field()));
        }
        Ok(ModuleMorphism { source, target, mat })
    }

    pub fn identity(m: &Arc<Module>) -> ModuleMorphism {
        ModuleMorphism {
            source: m.clone(),
            target: m.clone(),
            mat: Mat::identity(m.dim(), m.algebra().field()),
        }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ModuleMorphism) -> Result<ModuleMorphism> {
        if !first.target.same_as(&self.source) {
            return Err(Error::CompositionMismatch(format!(
                "composition endpoints disagree: middle modules of dimension {} and {} differ",
                first.target.dim(),
                self.source.dim()
            )));
        }
        Ok(ModuleMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            mat: self.mat.matmul(&first.mat)?,
        })
    }

    pub fn is_intertwiner(&self) -> bool {
        (0..self.source.algebra().dim()).all(|i| {
            let lhs = self.mat.matmul(self.source.action(i)).expect("shape");
            let rhs = self.target.action(i).matmul(&self.mat).expect("shape");
            lhs == rhs
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.mat.rows() == self.mat.cols() && self.mat.rank() == self.mat.rows()
    }

    pub fn inverse(&self) -> Result<Option<ModuleMorphism>> {
        if self.mat.rows() != self.mat.cols() {
            return Ok(None);
        }
        Ok(self.mat.inverse()?.map(|inv| ModuleMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            mat: inv,
        }))
    }

    pub fn add(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        if !self.source.same_as(&other.source) || !self.target.same_as(&other.target) {
            return Err(Error::Shape("adding morphisms with different endpoints".into()));
        }
        Ok(ModuleMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            mat: self.mat.add(&other.mat)?,
        })
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMorphism {
        ModuleMorphism { source: self.source.clone(), target: self.target.clone(), mat: self.mat.scale(s) }
    }
}

impl std::fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModuleMorphism({} -> {})", self.source.dim(), self.target.dim())
    }
}

/// Basis of the space of intertwiners `M -> N`, computed by intersecting
/// the kernels of the commutation constraints one algebra basis element
/// at a time (each step shrinks the candidate space, so the large
/// Kronecker systems are never materialized). The result is deterministic
/// and every returned morphism is re-checked against the definition.
pub fn hom_basis(m: &Arc<Module>, n: &Arc<Module>) -> Result<Vec<ModuleMorphism>> {
    if !m.algebra().same_as(n.algebra()) {
        return Err(Error::AlgebraMismatch("hom between modules over different algebras".into()));
    }
    let field = m.algebra().field();
    let (sd, td) = (m.dim(), n.dim());
    // Columns of `basis` are coordinate vectors of candidate matrices T
    // (row-major vec of target.dim x source.dim).
    let mut basis = Mat::identity(sd * td, field);
    for i in 0..m.algebra().dim() {
        if basis.cols() == 0 {
            break;
        }
        // Image of each candidate under T |-> T rho_M(b_i) - rho_N(b_i) T.
        let mut image = Mat::zeros(sd * td, basis.cols(), field);
        for c in 0..basis.cols() {
            let t = unvec(&basis.column(c), td, sd, field);
            let w = t
                .matmul(m.action(i))
                .expect("shape")
                .sub(&n.action(i).matmul(&t).expect("shape"))
                .expect("shape");
            for r in 0..td {
                for s in 0..sd {
                    image.set(r * sd + s, c, w.at(r, s).clone());
                }
            }
        }
        let kernel = image.kernel_basis();
        let mut next = Mat::zeros(sd * td, kernel.len(), field);
        for (j, k) in kernel.iter().enumerate() {
            let combo = basis.matmul(k).expect("shape");
            for r in 0..sd * td {
                next.set(r, j, combo.at(r, 0).clone());
            }
        }
        basis = next;
    }
    let mut out = Vec::new();
    for c in 0..basis.cols() {
        let t = unvec(&basis.column(c), td, sd, field);
        let f = ModuleMorphism::new(m.clone(), n.clone(), t)?;
        assert!(f.is_intertwiner(), "hom_basis produced a non-intertwiner");
        out.push(f);
    }
    Ok(out)
}

fn unvec(v: &[Scalar], rows: usize, cols: usize, field: crate::scalar::Field) -> Mat {
    Mat::from_fn(rows, cols, field, |i, j| v[i * cols + j].clone())
}

/// An element `e` with `e*e = e`, tied to its algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Idempotent {
    algebra: Arc<Algebra>,
    coords: Vec<Scalar>,
}

impl Idempotent {
    pub fn new(algebra: Arc<Algebra>, coords: Vec<Scalar>) -> Result<Idempotent> {
        if coords.len() != algebra.dim() {
            return Err(Error::Shape("idempotent coordinate length".into()));
        }
        for s in &coords {
            if s.field() != algebra.field() {
                return Err(Error::FieldMismatch(algebra.field(), s.field()));
            }
        }
        if algebra.multiply(&coords, &coords) != coords {
            return Err(Error::NotIdempotent);
        }
        Ok(Idempotent { algebra, coords })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }
}

/// Does `span{ b_i e b_j }` exhaust the algebra? Returns the verdict
/// together with the span dimension actually reached (the witness a
/// failure report needs).
pub fn is_full_idempotent(e: &Idempotent) -> (bool, usize) {
    let a = e.algebra();
    let dim = a.dim();
    let mut span = RowSpace::new(a.field(), dim);
    'outer: for i in 0..dim {
        let left = a.multiply(&vec_basis(dim, i, a.field()), e.coords());
        for j in 0..dim {
            let prod = a.multiply(&left, &vec_basis(dim, j, a.field()));
            span.insert(prod);
            if span.rank() == dim {
                break 'outer;
            }
        }
    }
    (span.rank() == dim, span.rank())
}

/// The corner algebra `B = eAe` in its canonical reduced basis, with the
/// inclusion and two-sided compression maps between coordinates.
pub struct CornerAlgebra {
    pub e: Idempotent,
    pub ambient: Arc<Algebra>,
    pub algebra: Arc<Algebra>,
    basis: RowSpace,
    pub inclusion: Mat,
    pub compression: Mat,
}

pub fn corner_algebra(e: &Idempotent) -> Result<CornerAlgebra> {
    let ambient = e.algebra().clone();
    let dim = ambient.dim();
    let field = ambient.field();
    let mut basis = RowSpace::new(field, dim);
    for i in 0..dim {
        let v = ambient.multiply(
            &ambient.multiply(e.coords(), &vec_basis(dim, i, field)),
            e.coords(),
        );
        basis.insert(v);
    }
    let k = basis.rank();
    let rows = basis.basis_matrix();
    let corner_basis: Vec<Vec<Scalar>> = (0..k).map(|r| rows.row(r).to_vec()).collect();
    let structure: Vec<Vec<Vec<Scalar>>> = corner_basis
        .iter()
        .map(|x| {
            corner_basis
                .iter()
                .map(|y| {
                    let prod = ambient.multiply(x, y);
                    basis
                        .coordinates(&prod)
                        .expect("corner is closed under multiplication")
                })
                .collect()
        })
        .collect();
    let unit = basis
        .coordinates(e.coords())
        .expect("e = e*1*e lies in its own corner");
    let algebra = Algebra::new(field, structure, unit)?;
    let inclusion = rows.transpose();
    let compression = Mat::from_fn(k, dim, field, |r, c| {
        let img = ambient.multiply(
            &ambient.multiply(e.coords(), &vec_basis(dim, c, field)),
            e.coords(),
        );
        basis.coordinates(&img).expect("compression lands in the corner")[r].clone()
    });
    let check = compression.matmul(&inclusion)?;
    assert!(check.is_identity(), "compression must retract the inclusion");
    Ok(CornerAlgebra { e: e.clone(), ambient, algebra, basis, inclusion, compression })
}

impl CornerAlgebra {
    /// Corner coordinates -> ambient coordinates.
    pub fn include(&self, b: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(b.len(), self.algebra.dim());
        let mut out = crate::algebra::vec_zero(self.ambient.dim(), self.ambient.field());
        for (r, coeff) in b.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for c in 0..self.ambient.dim() {
                out[c] = out[c].add(&coeff.mul(self.inclusion.at(c, r)));
            }
        }
        out
    }

    /// Ambient coordinates -> corner coordinates of `e x e`.
    pub fn compress(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.ambient.dim());
        (0..self.algebra.dim())
            .map(|r| {
                let mut acc = self.ambient.field().zero();
                for (c, coeff) in x.iter().enumerate() {
                    if !coeff.is_zero() {
                        acc = acc.add(&coeff.mul(self.compression.at(r, c)));
                    }
                }
                acc
            })
            .collect()
    }

    /// Canonical reduced basis of `eAe` inside the ambient algebra.
    pub fn basis_span(&self) -> &RowSpace {
        &self.basis
    }
}

/// The corner module `eM` over `eAe`: basis is the canonical column basis
/// of the image of `rho_M(e)`; the corner action is verified to preserve
/// that subspace when the restriction is computed.
pub struct CornerModule {
    pub module: Arc<Module>,
    /// `m.dim x k` matrix whose columns are the chosen basis of `eM`
    /// inside `M`.
    pub inclusion: Mat,
}

pub fn corner_module(corner: &CornerAlgebra, m: &Arc<Module>) -> Result<CornerModule> {
    if !m.algebra().same_as(&corner.ambient) {
        return Err(Error::AlgebraMismatch("corner of a module over the wrong algebra".into()));
    }
    let projector = m.action_of(corner.e.coords());
    let inclusion = projector.column_space_basis();
    let action = (0..corner.algebra.dim())
        .map(|i| {
            let amb = corner.include(&vec_basis(corner.algebra.dim(), i, corner.algebra.field()));
            let moved = m.action_of(&amb).matmul(&inclusion)?;
            inclusion
                .solve(&moved)?
                .ok_or_else(|| Error::Shape("corner action escapes the e-image subspace".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let module = Module::new(corner.algebra.clone(), action)?;
    Ok(CornerModule { module, inclusion })
}

impl CornerModule {
    /// Express a vector of the ambient module lying in `eM` in corner
    /// coordinates; `None` when it is outside the subspace.
    pub fn coords_of(&self, v: &Mat) -> Result<Option<Mat>> {
        self.inclusion.solve(v)
    }
}

/// A space with commuting left and right actions of two (possibly
/// different) algebras. The right action is stored covariantly in the
/// anti-homomorphism convention: `v * b = right_action[b] v`, so
/// `rho^r(b c) = rho^r(c) rho^r(b)`.
pub struct Bimodule {
    pub left_algebra: Arc<Algebra>,
    pub right_algebra: Arc<Algebra>,
    dim: usize,
    left_action: Vec<Mat>,
    right_action: Vec<Mat>,
}

impl Bimodule {
    /// Checks units on both sides and that the two actions commute; the
    /// full (anti-)homomorphism axioms live in [`Bimodule::validate`].
    pub fn new(
        left_algebra: Arc<Algebra>,
        right_algebra: Arc<Algebra>,
        left_action: Vec<Mat>,
        right_action: Vec<Mat>,
    ) -> Result<Arc<Bimodule>> {
        let left = Module::new(left_algebra.clone(), left_action)?;
        let dim = left.dim();
        if right_action.len() != right_algebra.dim() {
            return Err(Error::Shape("one right action matrix per right algebra basis element".into()));
        }
        for m in &right_action {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape("right action matrices must match the bimodule dimension".into()));
            }
            if m.field() != right_algebra.field() {
                return Err(Error::FieldMismatch(right_algebra.field(), m.field()));
            }
        }
        if left_algebra.field() != right_algebra.field() {
            return Err(Error::FieldMismatch(left_algebra.field(), right_algebra.field()));
        }
        let bm = Bimodule {
            left_algebra,
            right_algebra,
            dim,
            left_action: (0..left.algebra().dim()).map(|i| left.action(i).clone()).collect(),
            right_action,
        };
        let unit_right = bm.right_action_of(bm.right_algebra.unit());
        if dim > 0 && !unit_right.is_identity() {
            return Err(Error::InvalidAlgebra("right unit does not act as the identity".into()));
        }
        for l in &bm.left_action {
            for r in &bm.right_action {
                if l.matmul(r)? != r.matmul(l)? {
                    return Err(Error::InvalidAlgebra("left and right actions do not commute".into()));
                }
            }
        }
        Ok(Arc::new(bm))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_action(&self, i: usize) -> &Mat {
        &self.left_action[i]
    }

    pub fn right_action(&self, i: usize) -> &Mat {
        &self.right_action[i]
    }

    pub fn left_action_of(&self, coords: &[Scalar]) -> Mat {
        linear_combination(&self.left_action, coords, self.dim, self.left_algebra.field())
    }

    pub fn right_action_of(&self, coords: &[Scalar]) -> Mat {
        linear_combination(&self.right_action, coords, self.dim, self.right_algebra.field())
    }

    /// Forget the right action.
    pub fn left_module(&self) -> Arc<Module> {
        Module::new(self.left_algebra.clone(), self.left_action.clone())
            .expect("left half of a bimodule is a module")
    }

    /// Left homomorphism and right anti-homomorphism axioms, as failing
    /// pair descriptions.
    pub fn validate(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let left = self.left_module();
        for (i, j) in left.validate() {
            failures.push(format!("left action fails at pair ({i}, {j})"));
        }
        let ra = &self.right_algebra;
        for i in 0..ra.dim() {
            for j in 0..ra.dim() {
                let lhs = self.right_action_of(ra.basis_product(i, j));
                let rhs = self.right_action[j]
                    .matmul(&self.right_action[i])
                    .expect("uniform shape");
                if lhs != rhs {
                    failures.push(format!("right action fails at pair ({i}, {j})"));
                }
            }
        }
        failures
    }
}

fn linear_combination(mats: &[Mat], coords: &[Scalar], dim: usize, field: crate::scalar::Field) -> Mat {
    assert_eq!(mats.len(), coords.len());
    let mut out = Mat::zeros(dim, dim, field);
    for (m, c) in mats.iter().zip(coords) {
        if !c.is_zero() {
            out = out.add(&m.scale(c)).expect("uniform shape");
        }
    }
    out
}

/// The algebra as a bimodule over itself.
pub fn regular_bimodule(algebra: &Arc<Algebra>) -> Arc<Bimodule> {
    let dim = algebra.dim();
    let field = algebra.field();
    let left = (0..dim).map(|i| algebra.left_mult_mat(&vec_basis(dim, i, field))).collect();
    let right = (0..dim).map(|i| algebra.right_mult_mat(&vec_basis(dim, i, field))).collect();
    Bimodule::new(algebra.clone(), algebra.clone(), left, right)
        .expect("an algebra is a bimodule over itself")
}

/// Balanced tensor product `P (x)_B N` of a `(A, B)`-bimodule with a left
/// `B`-module, realized as the canonical complement of the balancing
/// relation span inside the plain tensor product. Flattening is row-major:
/// plain coordinate `(q, m)` sits at index `q * dim(N) + m`.
pub struct BalancedTensor {
    /// The quotient as a left module over the bimodule's left algebra.
    pub module: Arc<Module>,
    /// Quotient map, `quotient_dim x (dim P * dim N)`.
    pub projection: Mat,
    /// Canonical section of the projection (inclusion of the complement
    /// coordinates); `projection * section = id`.
    pub section: Mat,
    /// Canonical reduced basis of the balancing relation span.
    pub relations: RowSpace,
}

pub fn balanced_tensor(p: &Arc<Bimodule>, n: &Arc<Module>) -> Result<BalancedTensor> {
    if !n.algebra().same_as(&p.right_algebra) {
        return Err(Error::AlgebraMismatch(
            "balanced tensor requires the module to live over the bimodule's right algebra".into(),
        ));
    }
    let field = p.left_algebra.field();
    let (dp, dn) = (p.dim(), n.dim());
    let db = p.right_algebra.dim();
    let width = dp * dn;
    let mut relations = RowSpace::new(field, width);
    // Relation vectors (p_q * b_j) (x) n_m  -  p_q (x) (b_j * n_m).
    for b in 0..db {
        let moved_p = p.right_action(b);
        let moved_n = n.action(b);
        for q in 0..dp {
            for m in 0..dn {
                let mut row = vec![field.zero(); width];
                for q2 in 0..dp {
                    let c = moved_p.at(q2, q);
                    if !c.is_zero() {
                        row[q2 * dn + m] = row[q2 * dn + m].add(c);
                    }
                }
                for m2 in 0..dn {
                    let c = moved_n.at(m2, m);
                    if !c.is_zero() {
                        row[q * dn + m2] = row[q * dn + m2].sub(c);
                    }
                }
                relations.insert(row);
            }
        }
    }
    let free = relations.free_coordinates();
    let qdim = free.len();
    // projection(e_k) = canonical representative of e_k restricted to the
    // free coordinates; section includes the free coordinates back.
    let mut projection = Mat::zeros(qdim, width, field);
    for k in 0..width {
        let mut v = vec![field.zero(); width];
        v[k] = field.one();
        relations.reduce(&mut v);
        for (r, &f) in free.iter().enumerate() {
            projection.set(r, k, v[f].clone());
        }
    }
    let mut section = Mat::zeros(width, qdim, field);
    for (r, &f) in free.iter().enumerate() {
        section.set(f, r, field.one());
    }
    debug_assert!(projection.matmul(&section)?.is_identity());
    // Left action descends: column f of the quotient action is the class
    // of (rho_P(a) (x) id) applied to the representative e_f.
    let la = &p.left_algebra;
    let action = (0..la.dim())
        .map(|i| {
            let lp = p.left_action(i);
            let mut out = Mat::zeros(qdim, qdim, field);
            for (col, &f) in free.iter().enumerate() {
                let (q, m) = (f / dn, f % dn);
                let mut v = vec![field.zero(); width];
                for q2 in 0..dp {
                    let c = lp.at(q2, q);
                    if !c.is_zero() {
                        v[q2 * dn + m] = c.clone();
                    }
                }
                relations.reduce(&mut v);
                for (r, &fc) in free.iter().enumerate() {
                    out.set(r, col, v[fc].clone());
                }
            }
            out
        })
        .collect();
    let module = Module::new(la.clone(), action)?;
    Ok(BalancedTensor { module, projection, section, relations })
}

impl BalancedTensor {
    /// Functorial action on the second slot: the map
    /// `P (x)_B N -> P (x)_B N'` induced by `g: N -> N'`, where `self` is
    /// the tensor at `N` and `target` the tensor at `N'`. Computed on
    /// canonical representatives, then projected.
    pub fn map_second(&self, target: &BalancedTensor, g: &Mat) -> Result<Mat> {
        let dn = g.cols();
        let dn2 = g.rows();
        let dp = if dn == 0 { 0 } else { self.section.rows() / dn };
        if dn > 0 && self.section.rows() % dn != 0 {
            return Err(Error::Shape("tensor factor dimensions disagree".into()));
        }
        if dp * dn2 != target.section.rows() {
            return Err(Error::Shape("target tensor has unexpected total dimension".into()));
        }
        let field = g.field();
        let mut out = Mat::zeros(target.projection.rows(), self.projection.rows(), field);
        for col in 0..self.projection.rows() {
            // Representative of quotient basis vector `col` in P (x) N.
            let rep = self.section.column(col);
            let mut moved = vec![field.zero(); dp * dn2];
            for (idx, c) in rep.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (q, m) = (idx / dn, idx % dn);
                for m2 in 0..dn2 {
                    let gc = g.at(m2, m);
                    if !gc.is_zero() {
                        moved[q * dn2 + m2] = moved[q * dn2 + m2].add(&c.mul(gc));
                    }
                }
            }
            target.relations.reduce(&mut moved);
            for (r, &f) in target.relations.free_coordinates().iter().enumerate() {
                out.set(r, col, moved[f].clone());
            }
        }
        Ok(out)
    }
}
