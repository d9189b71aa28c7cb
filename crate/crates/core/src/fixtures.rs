//! Concrete finite groups, their rational irreducible representations,
//! and distinguished idempotents in their group algebras. Everything here
//! has integer structure, so the same data instantiates over the
//! rationals or over any prime field whose characteristic does not divide
//! the group order.
//!
//! Conventions: group elements of the symmetric group are the
//! permutations of `{0, .., n-1}` in lexicographic order, composition is
//! `(s . t)(x) = s(t(x))`, and a permutation matrix sends `e_j` to
//! `e_{s(j)}` so that indexing matches the multiplication table.

use crate::algebra::{vec_zero, Algebra, GroupTable};
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::module::{Idempotent, Module};
use crate::scalar::Scalar;
use itertools::Itertools;
use std::collections::HashMap;
use std::sync::Arc;

/// Multiplication table of `Z/n` with elements `0..n`.
pub fn cyclic_table(n: usize) -> GroupTable {
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    GroupTable::new(table).expect("cyclic table is a group")
}

/// Permutations of `{0, .., n-1}` in lexicographic order.
pub fn symmetric_elements(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// Multiplication table of the symmetric group on `n` letters, indexed by
/// [`symmetric_elements`].
pub fn symmetric_table(n: usize) -> GroupTable {
    let elements = symmetric_elements(n);
    let index: HashMap<&[usize], usize> =
        elements.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let composite: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                    index[composite.as_slice()]
                })
                .collect()
        })
        .collect();
    GroupTable::new(table).expect("symmetric table is a group")
}

/// Sign of a permutation by inversion count.
pub fn perm_sign(p: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A representation with integer matrices, one per group element in table
/// order.
#[derive(Clone)]
pub struct IntRep {
    pub dim: usize,
    pub mats: Vec<Vec<Vec<i64>>>,
}

/// The one-dimensional trivial representation of a group of the given
/// order.
pub fn trivial_rep(order: usize) -> IntRep {
    IntRep { dim: 1, mats: vec![vec![vec![1]]; order] }
}

/// The sign representation of the symmetric group on `n` letters.
pub fn sign_rep(n: usize) -> IntRep {
    let mats = symmetric_elements(n).iter().map(|p| vec![vec![perm_sign(p)]]).collect();
    IntRep { dim: 1, mats }
}

/// Matrix of a permutation of `{0, .., k-1}` on the standard (reflection)
/// basis `v_j = e_j - e_{k-1}`, `j < k-1`.
fn standard_matrix(p: &[usize]) -> Vec<Vec<i64>> {
    let k = p.len();
    let mut m = vec![vec![0i64; k - 1]; k - 1];
    let b = p[k - 1];
    for j in 0..k - 1 {
        let a = p[j];
        if b == k - 1 {
            m[a][j] += 1;
        } else {
            if a < k - 1 {
                m[a][j] += 1;
            }
            m[b][j] -= 1;
        }
    }
    m
}

/// The `(n-1)`-dimensional standard representation of the symmetric group
/// on `n` letters.
pub fn standard_rep(n: usize) -> IntRep {
    let mats = symmetric_elements(n).iter().map(|p| standard_matrix(p)).collect();
    IntRep { dim: n - 1, mats }
}

/// The two-dimensional irreducible of the symmetric group on four
/// letters: permute the three pairings of `{0,1,2,3}` into two pairs
/// (pairing `i` joins `0` with `i+1`), then apply the standard
/// representation of the image permutation.
pub fn pair_partition_rep() -> IntRep {
    let mats = symmetric_elements(4)
        .iter()
        .map(|s| {
            let induced: Vec<usize> = (0..3)
                .map(|i| {
                    let first = [s[0], s[i + 1]];
                    let rest: Vec<usize> = (1..4).filter(|&x| x != i + 1).collect();
                    let second = [s[rest[0]], s[rest[1]]];
                    let partner = if first[0] == 0 {
                        first[1]
                    } else if first[1] == 0 {
                        first[0]
                    } else if second[0] == 0 {
                        second[1]
                    } else {
                        second[0]
                    };
                    partner - 1
                })
                .collect();
            standard_matrix(&induced)
        })
        .collect();
    IntRep { dim: 2, mats }
}

/// Elementwise Kronecker product of two representations of the same
/// group.
pub fn tensor_int_reps(a: &IntRep, b: &IntRep) -> IntRep {
    assert_eq!(a.mats.len(), b.mats.len());
    let dim = a.dim * b.dim;
    let mats = a
        .mats
        .iter()
        .zip(&b.mats)
        .map(|(x, y)| {
            let mut m = vec![vec![0i64; dim]; dim];
            for i in 0..a.dim {
                for j in 0..a.dim {
                    for k in 0..b.dim {
                        for l in 0..b.dim {
                            m[i * b.dim + k][j * b.dim + l] = x[i][j] * y[k][l];
                        }
                    }
                }
            }
            m
        })
        .collect();
    IntRep { dim, mats }
}

/// Character of an integer representation, one value per group element.
pub fn rep_character(rep: &IntRep) -> Vec<i64> {
    rep.mats.iter().map(|m| (0..rep.dim).map(|i| m[i][i]).sum()).collect()
}

/// Instantiate an integer representation as a module over the group
/// algebra.
pub fn rep_module(algebra: &Arc<Algebra>, rep: &IntRep) -> Arc<Module> {
    assert_eq!(algebra.dim(), rep.mats.len(), "one matrix per group element");
    let field = algebra.field();
    let action = rep
        .mats
        .iter()
        .map(|rows| {
            Mat::from_fn(rep.dim, rep.dim, field, |i, j| field.from_integer(rows[i][j]))
        })
        .collect();
    Module::new(algebra.clone(), action).expect("group representation is a module")
}

/// The diagonal matrix-coefficient idempotent of an irreducible: the
/// group algebra element with coefficient `(dim/|G|) * [rep(g^-1)]_{kk}`
/// at `g`. For an irreducible representation these are primitive,
/// pairwise orthogonal for distinct `k`, and sum (over `k`) to the
/// central idempotent of the irreducible.
pub fn matrix_unit_idempotent(
    algebra: &Arc<Algebra>,
    group: &GroupTable,
    rep: &IntRep,
    k: usize,
) -> Result<Idempotent> {
    assert!(k < rep.dim);
    let field = algebra.field();
    let scale = field
        .from_fraction(rep.dim as i64, group.order as i64)
        .ok_or_else(|| Error::Fixture("group order not invertible in the field".into()))?;
    let coords = (0..group.order)
        .map(|g| scale.mul(&field.from_integer(rep.mats[group.inverse[g]][k][k])))
        .collect();
    Idempotent::new(algebra.clone(), coords)
}

/// Sum of diagonal matrix-coefficient idempotents: `ranks[r]` of them
/// from the `r`-th representation. Distinct irreducibles give orthogonal
/// summands, so the sum is again idempotent (which construction
/// verifies).
pub fn block_sum_idempotent(
    algebra: &Arc<Algebra>,
    group: &GroupTable,
    reps: &[(&IntRep, usize)],
) -> Result<Idempotent> {
    let field = algebra.field();
    let mut coords = vec_zero(algebra.dim(), field);
    for (rep, rank) in reps {
        assert!(*rank <= rep.dim, "rank bounded by the representation dimension");
        for k in 0..*rank {
            let u = matrix_unit_idempotent(algebra, group, rep, k)?;
            for (c, u_c) in coords.iter_mut().zip(u.coords()) {
                *c = c.add(u_c);
            }
        }
    }
    Idempotent::new(algebra.clone(), coords)
}

/// Central idempotent of an irreducible from its character:
/// `(chi(1)/|G|) * sum_g chi(g^-1) g`. Used as an independent cross-check
/// on the matrix-coefficient construction.
pub fn central_idempotent(
    algebra: &Arc<Algebra>,
    group: &GroupTable,
    character: &[i64],
) -> Result<Idempotent> {
    assert_eq!(character.len(), group.order);
    let field = algebra.field();
    let scale = field
        .from_fraction(character[group.identity], group.order as i64)
        .ok_or_else(|| Error::Fixture("group order not invertible in the field".into()))?;
    let coords = (0..group.order)
        .map(|g| scale.mul(&field.from_integer(character[group.inverse[g]])))
        .collect();
    Idempotent::new(algebra.clone(), coords)
}

/// Conjugacy classes as sorted element lists, ordered by smallest member.
pub fn conjugacy_classes(group: &GroupTable) -> Vec<Vec<usize>> {
    let mut seen = vec![false; group.order];
    let mut classes = Vec::new();
    for g in 0..group.order {
        if seen[g] {
            continue;
        }
        let mut class: Vec<usize> =
            (0..group.order).map(|t| group.mul(group.mul(group.inverse[t], g), t)).collect();
        class.sort_unstable();
        class.dedup();
        for &x in &class {
            seen[x] = true;
        }
        classes.push(class);
    }
    classes
}

/// Idempotent from explicit rational coordinates given as `(num, den)`
/// pairs in basis order; convenience for hand-written fixtures.
pub fn idempotent_from_fractions(
    algebra: &Arc<Algebra>,
    fractions: &[(i64, i64)],
) -> Result<Idempotent> {
    let field = algebra.field();
    let coords = fractions
        .iter()
        .map(|&(n, d)| {
            field
                .from_fraction(n, d)
                .ok_or_else(|| Error::Fixture("denominator vanishes in the field".into()))
        })
        .collect::<Result<Vec<Scalar>>>()?;
    Idempotent::new(algebra.clone(), coords)
}
