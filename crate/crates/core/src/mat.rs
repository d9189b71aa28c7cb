//! Dense row-major matrices over an exact field, with the four workhorse
//! algorithms the rest of the crate is built on: reduced row echelon form,
//! kernel bases, exact linear solve, and the Kronecker product.
//!
//! Conventions, fixed once and used everywhere:
//! * storage is row-major; `entries[i * cols + j]` is row `i`, column `j`;
//! * echelon reduction picks the leftmost nonzero column and, within it,
//!   the topmost nonzero row — no other pivoting strategy exists in this
//!   crate, so every reduced object (kernel basis, quotient basis, corner
//!   basis) is deterministic;
//! * `kronecker` flattens pairs row-major:
//!   `(a ⊗ b)[(i*b.rows + k), (j*b.cols + l)] = a[i,j] * b[k,l]`.
//!   Iterated products therefore flatten `(X ⊗ Y) ⊗ Z` and `X ⊗ (Y ⊗ Z)`
//!   to the *same* coordinates, which is what makes the strict monoidal
//!   layer possible.

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

/// Result of row reduction: `transform * input = rref`, with `transform`
/// invertible (it is a product of elementary row operations).
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
    pub transform: Mat,
}

impl Mat {
    pub fn from_entries(rows: usize, cols: usize, field: Field, entries: Vec<Scalar>) -> Result<Mat> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if e.field() != field {
                return Err(Error::FieldMismatch(field, e.field()));
            }
        }
        Ok(Mat { rows, cols, field, entries })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Mat> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Mat::from_entries(nrows, ncols, field, rows.into_iter().flatten().collect())
    }

    /// Build from integer literals; test and fixture convenience.
    pub fn from_int_rows(field: Field, rows: &[&[i64]]) -> Mat {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&n| field.from_integer(n)).collect())
            .collect();
        Mat::from_rows(field, data).expect("literal matrix is well formed")
    }

    pub fn from_fn(rows: usize, cols: usize, field: Field, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                assert_eq!(v.field(), field, "from_fn produced a foreign scalar");
                entries.push(v);
            }
        }
        Mat { rows, cols, field, entries }
    }

    pub fn zeros(rows: usize, cols: usize, field: Field) -> Mat {
        Mat { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Mat {
        let mut m = Mat::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols);
        assert_eq!(v.field(), self.field);
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    fn check_same_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Mat { rows: self.rows, cols: self.cols, field: self.field, entries })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        let entries = self.entries.iter().map(|a| a.neg()).collect();
        Mat { rows: self.rows, cols: self.cols, field: self.field, entries }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        assert_eq!(s.field(), self.field);
        let entries = self.entries.iter().map(|a| a.mul(s)).collect();
        Mat { rows: self.rows, cols: self.cols, field: self.field, entries }
    }

    pub fn matmul(&self, other: &Mat) -> Result<Mat> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Mat::identity(self.rows, self.field);
        for _ in 0..k {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, self.field, |i, j| self.at(j, i).clone())
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        self.check_same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::Shape("hstack with different row counts".into()));
        }
        Ok(Mat::from_fn(self.rows, self.cols + other.cols, self.field, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.check_same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::Shape("vstack with different column counts".into()));
        }
        Ok(Mat::from_fn(self.rows + other.rows, self.cols, self.field, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.at(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    pub fn trace(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Shape("trace of a non-square matrix".into()));
        }
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t = t.add(self.at(i, i));
        }
        Ok(t)
    }

    /// Reduced row echelon form with the recorded (invertible) row
    /// transform. Pivot choice is deterministic: leftmost nonzero column,
    /// topmost nonzero row within it.
    pub fn echelonize(&self) -> Echelon {
        let mut r = self.clone();
        let mut t = Mat::identity(self.rows, self.field);
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            if next_row == self.rows {
                break;
            }
            let Some(pivot_row) = (next_row..self.rows).find(|&i| !r.at(i, col).is_zero()) else {
                continue;
            };
            r.swap_rows(next_row, pivot_row);
            t.swap_rows(next_row, pivot_row);
            let inv = r.at(next_row, col).inverse().expect("pivot is nonzero");
            r.scale_row(next_row, &inv);
            t.scale_row(next_row, &inv);
            for i in 0..self.rows {
                if i != next_row && !r.at(i, col).is_zero() {
                    let factor = r.at(i, col).clone();
                    r.sub_scaled_row(i, next_row, &factor);
                    t.sub_scaled_row(i, next_row, &factor);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        let rank = pivots.len();
        Echelon { rref: r, pivots, rank, transform: t }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, s: &Scalar) {
        for j in 0..self.cols {
            let v = self.at(i, j).mul(s);
            self.set(i, j, v);
        }
    }

    /// `row_i -= s * row_k`.
    fn sub_scaled_row(&mut self, i: usize, k: usize, s: &Scalar) {
        for j in 0..self.cols {
            let delta = self.at(k, j).mul(s);
            let v = self.at(i, j).sub(&delta);
            self.set(i, j, v);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelonize().rank
    }

    /// Basis of the right kernel, one column vector per free column of the
    /// reduced form, ordered by free-column index. Each basis vector is
    /// checked exactly against the original matrix before being returned.
    pub fn kernel_basis(&self) -> Vec<Mat> {
        let ech = self.echelonize();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in ech.pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = Mat::zeros(self.cols, 1, self.field);
            vec.set(free, 0, self.field.one());
            for (row, &col) in ech.pivots.iter().enumerate() {
                vec.set(col, 0, ech.rref.at(row, free).neg());
            }
            let check = self.matmul(&vec).expect("kernel shape");
            assert!(check.is_zero(), "kernel vector fails m*v = 0");
            basis.push(vec);
        }
        basis
    }

    /// Exact solution of `self * x = rhs` (multi-column right-hand side),
    /// free variables set to zero. `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &Mat) -> Result<Option<Mat>> {
        self.check_same_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::Shape(format!(
                "solve {}x{} against rhs with {} rows",
                self.rows, self.cols, rhs.rows
            )));
        }
        let aug = self.hstack(rhs)?;
        let ech = aug.echelonize();
        if ech.pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.cols, rhs.cols, self.field);
        for (row, &col) in ech.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(col, j, ech.rref.at(row, self.cols + j).clone());
            }
        }
        let check = self.matmul(&x)?;
        assert!(check == *rhs, "solve produced a non-solution");
        Ok(Some(x))
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Mat>> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let ech = self.echelonize();
        if ech.rank < self.rows {
            return Ok(None);
        }
        Ok(Some(ech.transform))
    }

    /// Row-major Kronecker product; see the module docs for the index law.
    pub fn kronecker(&self, other: &Mat) -> Result<Mat> {
        self.check_same_field(other)?;
        Ok(Mat::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            self.field,
            |i, j| {
                let (a_i, b_i) = (i / other.rows, i % other.rows);
                let (a_j, b_j) = (j / other.cols, j % other.cols);
                self.at(a_i, a_j).mul(other.at(b_i, b_j))
            },
        ))
    }

    /// Canonical basis of the row space: the nonzero rows of the reduced
    /// form. Two matrices span the same row space iff these are equal.
    pub fn row_space_basis(&self) -> Mat {
        let ech = self.echelonize();
        Mat::from_fn(ech.rank, self.cols, self.field, |i, j| ech.rref.at(i, j).clone())
    }

    /// Canonical basis of the column space, as columns, obtained by row
    /// reducing the transpose. Deterministic like everything else here.
    pub fn column_space_basis(&self) -> Mat {
        self.transpose().row_space_basis().transpose()
    }
}

/// Incrementally maintained reduced row echelon basis of a growing span.
/// Inserting vectors one at a time keeps memory proportional to the rank
/// rather than to the number of spanning vectors, which matters for
/// relation spans of tensor products. Because the fully reduced form of a
/// subspace is unique, the resulting basis is canonical: it depends only
/// on the span, not on insertion order.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Field,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: Field, width: usize) -> RowSpace {
        RowSpace { field, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminate all pivot coordinates of `v` in place. Afterwards `v` is
    /// the canonical representative of its class modulo the span: it is
    /// supported on non-pivot coordinates, and is zero iff the original
    /// vector lay in the span.
    pub fn reduce(&self, v: &mut [Scalar]) {
        assert_eq!(v.len(), self.width);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&factor.mul(r));
                }
            }
        }
    }

    /// Returns true when the vector enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inverse().expect("leading entry is nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        // Back-eliminate the new pivot from the existing rows so the basis
        // stays fully reduced.
        for row in self.rows.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let factor = row[pivot].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x = x.sub(&factor.mul(r));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }

    /// Is `v` inside the span?
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Coefficients expressing `v` in the canonical basis, or `None` when
    /// `v` is outside the span. Because the basis is fully reduced, the
    /// coefficient of basis row `r` is just `v[pivot_r]`.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The canonical basis as a matrix, one basis vector per row.
    pub fn basis_matrix(&self) -> Mat {
        Mat::from_fn(self.rows.len(), self.width, self.field, |i, j| self.rows[i][j].clone())
    }

    /// Coordinates not used as pivots, in increasing order: the canonical
    /// complement labels for quotient constructions.
    pub fn free_coordinates(&self) -> Vec<usize> {
        let pivot_set: std::collections::HashSet<usize> = self.pivots.iter().copied().collect();
        (0..self.width).filter(|c| !pivot_set.contains(c)).collect()
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{} over {:?}]", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
