//! Monoidal structure on the module category of a bialgebra, specialized
//! to the exactly-representable case: comultiplication, counit, and
//! antipode are given by finitely many structure coefficients and the
//! axioms are verified at construction.
//!
//! Tensor products of modules are realized on Kronecker products with
//! row-major flattening. Because iterated flattening is strictly
//! associative at the index level and the comultiplication is verified
//! coassociative, `(X (x) Y) (x) Z` and `X (x) (Y (x) Z)` have *equal*
//! action matrices — the monoidal category acts strictly, and every
//! associativity constraint in this crate is an identity matrix. The same
//! holds for the unit: tensoring with the one-dimensional counit module
//! changes nothing, entrywise.
//!
//! The file also houses the commuting-sum expansion used by the
//! filtration arguments: for any square `a`, `b` and scalar `c`,
//! `(a (+) b - c)^k = sum_j C(k, j) (a - c)^j (x) b^(k-j)` where `(+)` is
//! the Kronecker sum. The two summands of the Kronecker sum commute, so
//! the binomial theorem applies; when `a - c` and `b` are nilpotent of
//! orders `p` and `q`, the power vanishes from exponent `p + q - 1` on.

use crate::algebra::{vec_basis, vec_zero, Algebra};
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::module::{Module, ModuleMorphism};
use crate::scalar::Scalar;
use std::sync::Arc;

/// A bialgebra-with-antipode structure on an algebra, with the axioms
/// checked exactly at construction. Comultiplication is stored sparsely:
/// `comul[i]` lists `(j, k, c)` with `Delta(b_i) = sum c * b_j (x) b_k`.
pub struct MonoidalContext {
    algebra: Arc<Algebra>,
    comul: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vec<Scalar>,
    antipode: Vec<Vec<Scalar>>,
}

impl MonoidalContext {
    pub fn new(
        algebra: Arc<Algebra>,
        comul: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vec<Scalar>,
        antipode: Vec<Vec<Scalar>>,
    ) -> Result<Arc<MonoidalContext>> {
        let dim = algebra.dim();
        if comul.len() != dim || counit.len() != dim || antipode.len() != dim {
            return Err(Error::Shape("one comultiplication/counit/antipode entry per basis element".into()));
        }
        for terms in &comul {
            for (j, k, c) in terms {
                if *j >= dim || *k >= dim {
                    return Err(Error::Shape("comultiplication index out of range".into()));
                }
                if c.field() != algebra.field() {
                    return Err(Error::FieldMismatch(algebra.field(), c.field()));
                }
            }
        }
        for v in &antipode {
            if v.len() != dim {
                return Err(Error::Shape("antipode image has wrong length".into()));
            }
        }
        let ctx = MonoidalContext { algebra, comul, counit, antipode };
        ctx.check_axioms()?;
        Ok(Arc::new(ctx))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn comul(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.comul[i]
    }

    pub fn counit(&self, i: usize) -> &Scalar {
        &self.counit[i]
    }

    pub fn antipode(&self, i: usize) -> &[Scalar] {
        &self.antipode[i]
    }

    /// Comultiplication of an arbitrary element, dense in `A (x) A`
    /// coordinates (index `j * dim + k`).
    fn comul_of(&self, x: &[Scalar]) -> Vec<Scalar> {
        let dim = self.algebra.dim();
        let mut out = vec_zero(dim * dim, self.algebra.field());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, k, c) in &self.comul[i] {
                let idx = j * dim + k;
                out[idx] = out[idx].add(&xi.mul(c));
            }
        }
        out
    }

    /// Product in `A (x) A` of two sparse tensors.
    fn tensor_square_product(
        &self,
        a: &[(usize, usize, Scalar)],
        b: &[(usize, usize, Scalar)],
    ) -> Vec<Scalar> {
        let dim = self.algebra.dim();
        let mut out = vec_zero(dim * dim, self.algebra.field());
        for (j1, k1, c1) in a {
            for (j2, k2, c2) in b {
                let coeff = c1.mul(c2);
                if coeff.is_zero() {
                    continue;
                }
                let left = self.algebra.basis_product(*j1, *j2);
                let right = self.algebra.basis_product(*k1, *k2);
                for (s, ls) in left.iter().enumerate() {
                    if ls.is_zero() {
                        continue;
                    }
                    let cl = coeff.mul(ls);
                    for (t, rt) in right.iter().enumerate() {
                        if rt.is_zero() {
                            continue;
                        }
                        let idx = s * dim + t;
                        out[idx] = out[idx].add(&cl.mul(rt));
                    }
                }
            }
        }
        out
    }

    fn check_axioms(&self) -> Result<()> {
        let dim = self.algebra.dim();
        let field = self.algebra.field();
        // Counit and comultiplication are algebra maps.
        let unit = self.algebra.unit();
        let counit_of = |x: &[Scalar]| {
            let mut acc = field.zero();
            for (i, xi) in x.iter().enumerate() {
                acc = acc.add(&xi.mul(&self.counit[i]));
            }
            acc
        };
        if !counit_of(unit).is_one() {
            return Err(Error::InvalidAlgebra("counit of the unit is not 1".into()));
        }
        let mut unit_comul = vec_zero(dim * dim, field);
        let cu = self.comul_of(unit);
        for (i, ui) in unit.iter().enumerate() {
            for (j, uj) in unit.iter().enumerate() {
                if !ui.is_zero() && !uj.is_zero() {
                    unit_comul[i * dim + j] = unit_comul[i * dim + j].add(&ui.mul(uj));
                }
            }
        }
        if cu != unit_comul {
            return Err(Error::InvalidAlgebra("comultiplication of the unit is not 1 (x) 1".into()));
        }
        for i in 0..dim {
            for j in 0..dim {
                let prod = self.algebra.basis_product(i, j);
                if counit_of(prod) != self.counit[i].mul(&self.counit[j]) {
                    return Err(Error::InvalidAlgebra(format!(
                        "counit is not multiplicative at basis pair ({i}, {j})"
                    )));
                }
                let lhs = self.comul_of(prod);
                let rhs = self.tensor_square_product(&self.comul[i], &self.comul[j]);
                if lhs != rhs {
                    return Err(Error::InvalidAlgebra(format!(
                        "comultiplication is not multiplicative at basis pair ({i}, {j})"
                    )));
                }
            }
        }
        // Coassociativity, dense in A (x) A (x) A.
        for i in 0..dim {
            let mut lhs = vec_zero(dim * dim * dim, field);
            let mut rhs = vec_zero(dim * dim * dim, field);
            for (j, k, c) in &self.comul[i] {
                for (a, b, d) in &self.comul[*j] {
                    let idx = (a * dim + b) * dim + k;
                    lhs[idx] = lhs[idx].add(&c.mul(d));
                }
                for (a, b, d) in &self.comul[*k] {
                    let idx = (j * dim + a) * dim + b;
                    rhs[idx] = rhs[idx].add(&c.mul(d));
                }
            }
            if lhs != rhs {
                return Err(Error::InvalidAlgebra(format!(
                    "comultiplication is not coassociative at basis element {i}"
                )));
            }
        }
        // Counit laws: (eps (x) id) Delta = id = (id (x) eps) Delta.
        for i in 0..dim {
            let mut left = vec_zero(dim, field);
            let mut right = vec_zero(dim, field);
            for (j, k, c) in &self.comul[i] {
                left[*k] = left[*k].add(&c.mul(&self.counit[*j]));
                right[*j] = right[*j].add(&c.mul(&self.counit[*k]));
            }
            let expected = vec_basis(dim, i, field);
            if left != expected || right != expected {
                return Err(Error::InvalidAlgebra(format!(
                    "counit law fails at basis element {i}"
                )));
            }
        }
        // Antipode: m (S (x) id) Delta = eta eps = m (id (x) S) Delta.
        for i in 0..dim {
            let mut left = vec_zero(dim, field);
            let mut right = vec_zero(dim, field);
            for (j, k, c) in &self.comul[i] {
                let sl = self.algebra.multiply(&self.antipode[*j], &vec_basis(dim, *k, field));
                let sr = self.algebra.multiply(&vec_basis(dim, *j, field), &self.antipode[*k]);
                for t in 0..dim {
                    left[t] = left[t].add(&c.mul(&sl[t]));
                    right[t] = right[t].add(&c.mul(&sr[t]));
                }
            }
            let expected: Vec<Scalar> =
                unit.iter().map(|u| u.mul(&self.counit[i])).collect();
            if left != expected || right != expected {
                return Err(Error::InvalidAlgebra(format!(
                    "antipode law fails at basis element {i}"
                )));
            }
        }
        Ok(())
    }

    /// Tensor product of modules along the comultiplication, on the
    /// row-major Kronecker flattening. Iterating this in either order
    /// yields literally equal action matrices.
    pub fn tensor(&self, x: &Arc<Module>, y: &Arc<Module>) -> Result<Arc<Module>> {
        if !x.algebra().same_as(&self.algebra) || !y.algebra().same_as(&self.algebra) {
            return Err(Error::AlgebraMismatch("tensor factors over a different algebra".into()));
        }
        let field = self.algebra.field();
        let dim = x.dim() * y.dim();
        let action = (0..self.algebra.dim())
            .map(|i| {
                let mut m = Mat::zeros(dim, dim, field);
                for (j, k, c) in &self.comul[i] {
                    let term = x.action(*j).kronecker(y.action(*k))?.scale(c);
                    m = m.add(&term)?;
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Module::new(self.algebra.clone(), action)
    }

    /// The one-dimensional module on which the algebra acts through the
    /// counit; the strict unit for [`MonoidalContext::tensor`].
    pub fn unit_module(&self) -> Arc<Module> {
        let field = self.algebra.field();
        let action = (0..self.algebra.dim())
            .map(|i| Mat::from_fn(1, 1, field, |_, _| self.counit[i].clone()))
            .collect();
        Module::new(self.algebra.clone(), action).expect("counit is an algebra map")
    }

    /// Kronecker product of morphism matrices, with the tensor modules as
    /// endpoints.
    pub fn tensor_morphism(&self, f: &ModuleMorphism, g: &ModuleMorphism) -> Result<ModuleMorphism> {
        let source = self.tensor(&f.source, &g.source)?;
        let target = self.tensor(&f.target, &g.target)?;
        ModuleMorphism::new(source, target, f.mat.kronecker(&g.mat)?)
    }
}

impl std::fmt::Debug for MonoidalContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MonoidalContext(dim {})", self.algebra.dim())
    }
}

/// Hopf structure of a group algebra: group-like comultiplication
/// `g -> g (x) g`, counit `1`, antipode `g -> g^-1`.
pub fn group_hopf(algebra: &Arc<Algebra>, group: &crate::algebra::GroupTable) -> Result<Arc<MonoidalContext>> {
    if algebra.dim() != group.order {
        return Err(Error::Shape("group order must match the algebra dimension".into()));
    }
    let field = algebra.field();
    let comul = (0..group.order).map(|i| vec![(i, i, field.one())]).collect();
    let counit = vec![field.one(); group.order];
    let antipode = (0..group.order).map(|i| vec_basis(group.order, group.inverse[i], field)).collect();
    MonoidalContext::new(algebra.clone(), comul, counit, antipode)
}

/// Kronecker sum `a (x) id + id (x) b` of two square matrices.
pub fn kronecker_sum(a: &Mat, b: &Mat) -> Result<Mat> {
    if a.rows() != a.cols() || b.rows() != b.cols() {
        return Err(Error::Shape("kronecker sum needs square matrices".into()));
    }
    let left = a.kronecker(&Mat::identity(b.rows(), b.field()))?;
    let right = Mat::identity(a.rows(), a.field()).kronecker(b)?;
    left.add(&right)
}

fn binomial(k: u32, j: u32) -> i64 {
    let mut acc: i64 = 1;
    for t in 0..j {
        acc = acc * (k - t) as i64 / (t + 1) as i64;
    }
    acc
}

/// Right-hand side of the commuting-sum expansion:
/// `sum_j C(k, j) (a - c)^j (x) b^(k-j)`.
pub fn shifted_power_expansion(a: &Mat, b: &Mat, c: &Scalar, k: u32) -> Result<Mat> {
    if a.rows() != a.cols() || b.rows() != b.cols() {
        return Err(Error::Shape("expansion needs square matrices".into()));
    }
    if a.field() != b.field() || c.field() != a.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    let field = a.field();
    let shifted = a.sub(&Mat::identity(a.rows(), field).scale(c))?;
    let total = a.rows() * b.rows();
    let mut out = Mat::zeros(total, total, field);
    for j in 0..=k {
        let coeff = field.from_integer(binomial(k, j));
        let term = shifted.pow(j as usize)?.kronecker(&b.pow((k - j) as usize)?)?.scale(&coeff);
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Left-hand side computed directly: `(a (+) b - c)^k`.
pub fn shifted_power_direct(a: &Mat, b: &Mat, c: &Scalar, k: u32) -> Result<Mat> {
    let sum = kronecker_sum(a, b)?;
    let shifted = sum.sub(&Mat::identity(sum.rows(), sum.field()).scale(c))?;
    shifted.pow(k as usize)
}

/// Least `p` with `m^p = 0`, if any; `p <= dim` for a nilpotent matrix,
/// so the search caps there.
pub fn nilpotency_index(m: &Mat) -> Option<u32> {
    assert_eq!(m.rows(), m.cols());
    let mut power = Mat::identity(m.rows(), m.field());
    for p in 0..=m.rows() as u32 {
        if power.is_zero() {
            return Some(p);
        }
        power = power.matmul(m).expect("square");
    }
    // Cayley-Hamilton: a nilpotent matrix dies by its dimension.
    None
}

/// If `a - c` is nilpotent of order `p` and `b` of order `q`, the shifted
/// Kronecker sum dies at exponent `p + q - 1`. Returns that exponent
/// (`None` when a factor is not nilpotent); callers verify vanishing via
/// [`shifted_power_direct`].
pub fn joint_nilpotency_bound(a: &Mat, b: &Mat, c: &Scalar) -> Result<Option<u32>> {
    let field = a.field();
    let shifted = a.sub(&Mat::identity(a.rows(), field).scale(c))?;
    Ok(match (nilpotency_index(&shifted), nilpotency_index(b)) {
        (Some(p), Some(q)) => Some((p + q).saturating_sub(1)),
        _ => None,
    })
}
