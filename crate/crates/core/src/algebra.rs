//! Finite-dimensional associative unital algebras presented by structure
//! constants, and group algebras built from multiplication tables.
//!
//! An algebra is stored as the full cube `structure[i][j] = coordinates of
//! b_i * b_j` together with the coordinate vector of the unit. Validation
//! (associativity on every basis triple, two-sided unit law) runs before
//! an [`Algebra`] can exist, so invalid structure constants never
//! circulate; the raw checker [`validate_structure`] is public for callers
//! that want the failure report instead of an error.
//!
//! Elements are plain coordinate vectors `&[Scalar]` in the algebra basis;
//! the small helpers at the bottom keep that representation bearable.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::scalar::{Field, Scalar};
use std::sync::Arc;

#[derive(PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    structure: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    /// Content digest, fixed at construction so that hashing an algebra
    /// (or anything containing one) is O(1). Deterministic in the
    /// content, so equal algebras always collide.
    fingerprint: u64,
}

impl std::hash::Hash for Algebra {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        state.write_u64(self.fingerprint);
    }
}

pub(crate) fn content_digest<T: std::hash::Hash>(value: &T) -> u64 {
    use std::hash::Hasher;
    let mut h = std::collections::hash_map::DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// Outcome of checking raw structure constants. Empty lists mean the data
/// defines an associative unital algebra.
#[derive(Debug, Default, Clone)]
pub struct AlgebraReport {
    /// Basis triples `(i, j, k)` with `(b_i b_j) b_k != b_i (b_j b_k)`.
    pub associativity_failures: Vec<(usize, usize, usize)>,
    /// Basis indices `i` with `1 * b_i != b_i` or `b_i * 1 != b_i`.
    pub unit_failures: Vec<usize>,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.associativity_failures.is_empty() && self.unit_failures.is_empty()
    }
}

fn check_shapes(field: Field, structure: &[Vec<Vec<Scalar>>], unit: &[Scalar]) -> Result<usize> {
    let dim = structure.len();
    if unit.len() != dim {
        return Err(Error::Shape(format!("unit has length {}, dimension is {dim}", unit.len())));
    }
    for row in structure {
        if row.len() != dim {
            return Err(Error::Shape("structure cube is not dim x dim x dim".into()));
        }
        for prod in row {
            if prod.len() != dim {
                return Err(Error::Shape("structure cube is not dim x dim x dim".into()));
            }
            for s in prod {
                if s.field() != field {
                    return Err(Error::FieldMismatch(field, s.field()));
                }
            }
        }
    }
    for s in unit {
        if s.field() != field {
            return Err(Error::FieldMismatch(field, s.field()));
        }
    }
    Ok(dim)
}

fn raw_multiply(
    structure: &[Vec<Vec<Scalar>>],
    field: Field,
    x: &[Scalar],
    y: &[Scalar],
) -> Vec<Scalar> {
    let dim = structure.len();
    let mut out = vec![field.zero(); dim];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let c = xi.mul(yj);
            for (k, s) in structure[i][j].iter().enumerate() {
                if !s.is_zero() {
                    out[k] = out[k].add(&c.mul(s));
                }
            }
        }
    }
    out
}

/// Check raw structure constants against associativity and the unit law,
/// reporting every failing triple / basis index. Shape problems are hard
/// errors; algebra-law failures go into the report.
pub fn validate_structure(
    field: Field,
    structure: &[Vec<Vec<Scalar>>],
    unit: &[Scalar],
) -> Result<AlgebraReport> {
    let dim = check_shapes(field, structure, unit)?;
    let mut report = AlgebraReport::default();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let left = raw_multiply(structure, field, &structure[i][j], &vec_basis(dim, k, field));
                let right = raw_multiply(structure, field, &vec_basis(dim, i, field), &structure[j][k]);
                if left != right {
                    report.associativity_failures.push((i, j, k));
                }
            }
        }
    }
    for i in 0..dim {
        let e_i = vec_basis(dim, i, field);
        if raw_multiply(structure, field, unit, &e_i) != e_i
            || raw_multiply(structure, field, &e_i, unit) != e_i
        {
            report.unit_failures.push(i);
        }
    }
    Ok(report)
}

impl Algebra {
    /// Validates and wraps structure constants. The `Arc` is deliberate:
    /// modules, morphisms, and functor data all share their algebra.
    pub fn new(field: Field, structure: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Arc<Algebra>> {
        let report = validate_structure(field, &structure, &unit)?;
        if !report.is_valid() {
            let detail = match report.associativity_failures.first() {
                Some((i, j, k)) => format!(
                    "associativity fails at basis triple ({i}, {j}, {k}) plus {} more failure(s)",
                    report.associativity_failures.len() + report.unit_failures.len() - 1
                ),
                None => format!("unit law fails at basis index {}", report.unit_failures[0]),
            };
            return Err(Error::InvalidAlgebra(detail));
        }
        let dim = structure.len();
        let fingerprint = content_digest(&(&field, dim, &structure, &unit));
        Ok(Arc::new(Algebra { field, dim, structure, unit, fingerprint }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Coordinates of `b_i * b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.structure[i][j]
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        raw_multiply(&self.structure, self.field, x, y)
    }

    /// Matrix of left multiplication by `x` in the algebra basis
    /// (column `j` holds the coordinates of `x * b_j`).
    pub fn left_mult_mat(&self, x: &[Scalar]) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.multiply(x, &vec_basis(self.dim, j, self.field)))
            .collect();
        Mat::from_fn(self.dim, self.dim, self.field, |i, j| cols[j][i].clone())
    }

    /// Matrix of right multiplication by `x` (column `j` holds `b_j * x`).
    pub fn right_mult_mat(&self, x: &[Scalar]) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.multiply(&vec_basis(self.dim, j, self.field), x))
            .collect();
        Mat::from_fn(self.dim, self.dim, self.field, |i, j| cols[j][i].clone())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| {
            (i + 1..self.dim).all(|j| self.structure[i][j] == self.structure[j][i])
        })
    }

    /// Structural identity shared by every cross-algebra check: pointer
    /// equality first, then the O(1) digest, full content equality last.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Algebra>) -> bool {
        Arc::ptr_eq(self, other) || (self.fingerprint == other.fingerprint && **self == **other)
    }
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra(dim {}, {:?})", self.dim, self.field)
    }
}

/// A verified finite group: multiplication table plus the identity index
/// and inverse table recovered during validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
}

impl GroupTable {
    /// Validate closure, associativity, identity, and inverses. The error
    /// carries a concrete witness (the failing triple, or which axiom has
    /// no witness at all).
    pub fn new(table: Vec<Vec<usize>>) -> Result<GroupTable> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {i} has length {}, expected {n}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotAGroup(format!("entry ({i}, {j}) = {v} escapes the element set")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at triple ({i}, {j}, {k}): ({i}*{j})*{k} = {} but {i}*({j}*{k}) = {}",
                            table[table[i][j]][k], table[i][table[j][k]]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|i| table[e][i] == i && table[i][e] == i))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity element".into()))?;
        let mut inverse = vec![0; n];
        for i in 0..n {
            inverse[i] = (0..n)
                .find(|&j| table[i][j] == identity && table[j][i] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {i} has no two-sided inverse")))?;
        }
        Ok(GroupTable { order: n, table, identity, inverse })
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }
}

/// Group algebra of a verified group: basis indexed by group elements,
/// indicator structure constants.
pub fn group_algebra(field: Field, group: &GroupTable) -> Arc<Algebra> {
    let n = group.order;
    let structure: Vec<Vec<Vec<Scalar>>> = (0..n)
        .map(|i| (0..n).map(|j| vec_basis(n, group.mul(i, j), field)).collect())
        .collect();
    let unit = vec_basis(n, group.identity, field);
    Algebra::new(field, structure, unit).expect("a verified group table yields a valid algebra")
}

/// Validate a raw table and build its group algebra in one step.
pub fn make_group_algebra(field: Field, table: Vec<Vec<usize>>) -> Result<(GroupTable, Arc<Algebra>)> {
    let group = GroupTable::new(table)?;
    let algebra = group_algebra(field, &group);
    Ok((group, algebra))
}

/// The ground field viewed as a one-dimensional algebra; the degenerate
/// base case for balanced tensor products.
pub fn field_algebra(field: Field) -> Arc<Algebra> {
    Algebra::new(field, vec![vec![vec![field.one()]]], vec![field.one()])
        .expect("the ground field is an algebra")
}

// --- coordinate-vector helpers -------------------------------------------

pub fn vec_zero(dim: usize, field: Field) -> Vec<Scalar> {
    vec![field.zero(); dim]
}

pub fn vec_basis(dim: usize, i: usize, field: Field) -> Vec<Scalar> {
    let mut v = vec_zero(dim, field);
    v[i] = field.one();
    v
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vec_scale(s: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| s.mul(x)).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// Coordinate vector as a column matrix.
pub fn vec_col(field: Field, a: &[Scalar]) -> Mat {
    Mat::from_fn(a.len(), 1, field, |i, _| a[i].clone())
}

/// Column `j` of a matrix as a coordinate vector.
pub fn col_vec(m: &Mat, j: usize) -> Vec<Scalar> {
    m.column(j)
}
