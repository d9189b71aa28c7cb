//! Oracle tests for algebras, modules, morphism spaces, idempotent
//! corners, and balanced tensor products. Expected values come from
//! classical representation theory of small symmetric groups (character
//! inner products, block dimensions) and from hand-checked matrix-algebra
//! examples; they are frozen here as literals.

use modact::algebra::{vec_basis, vec_zero};
use modact::fixtures::*;
use modact::module::{
    balanced_tensor, change_basis, corner_algebra, corner_module, direct_sum, hom_basis,
    is_full_idempotent, regular_bimodule, regular_module, Idempotent, Module, ModuleMorphism,
};
use modact::{group_algebra, Error, Field, Mat, Scalar};
use proptest::prelude::*;
use std::sync::Arc;

fn rational() -> Field {
    Field::Rational
}

/// sum_g a(g^-1) b(g); equals |G| * dim Hom for characters of semisimple
/// modules, which is the independent oracle for every hom dimension below.
fn chi_inner(group: &modact::GroupTable, a: &[i64], b: &[i64]) -> i64 {
    (0..group.order).map(|g| a[group.inverse[g]] * b[g]).sum()
}

fn module_character(m: &Arc<Module>) -> Vec<i64> {
    (0..m.algebra().dim())
        .map(|i| {
            let t = m.action(i).trace().unwrap();
            let r = t.as_rational().expect("character over the rationals");
            assert!(r.is_integer());
            i64::try_from(r.to_integer()).expect("small character value")
        })
        .collect()
}

/// 2x2 matrix units as a structure-constant algebra: basis E00, E01,
/// E10, E11 with E_ab E_cd = [b = c] E_ad.
fn m2_algebra(field: Field) -> Arc<modact::Algebra> {
    let idx = |r: usize, c: usize| 2 * r + c;
    let mut structure = vec![vec![vec![field.zero(); 4]; 4]; 4];
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    if b == c {
                        structure[idx(a, b)][idx(c, d)][idx(a, d)] = field.one();
                    }
                }
            }
        }
    }
    let mut unit = vec_zero(4, field);
    unit[idx(0, 0)] = field.one();
    unit[idx(1, 1)] = field.one();
    modact::Algebra::new(field, structure, unit).unwrap()
}

/// Columns of 2x2 matrices as the natural left module.
fn m2_column_module(a: &Arc<modact::Algebra>) -> Arc<Module> {
    let field = a.field();
    let action = (0..4)
        .map(|i| {
            let (r, c) = (i / 2, i % 2);
            Mat::from_fn(2, 2, field, |x, y| {
                if x == r && y == c {
                    field.one()
                } else {
                    field.zero()
                }
            })
        })
        .collect();
    Module::new(a.clone(), action).unwrap()
}

#[test]
fn group_table_rejects_non_associative_square() {
    let err = modact::GroupTable::new(vec![vec![1, 0], vec![0, 0]]).unwrap_err();
    match err {
        Error::NotAGroup(msg) => {
            assert!(msg.contains("(0, 0, 1)"), "expected the witness triple, got: {msg}");
        }
        other => panic!("expected NotAGroup, got {other:?}"),
    }
}

#[test]
fn small_group_tables_have_expected_shape() {
    let c4 = cyclic_table(4);
    assert_eq!(c4.order, 4);
    assert_eq!(c4.identity, 0);
    assert_eq!(c4.inverse, vec![0, 3, 2, 1]);

    let s3 = symmetric_table(3);
    assert_eq!(s3.order, 6);
    assert_eq!(s3.identity, 0);
    for g in 0..6 {
        assert_eq!(s3.inverse[s3.inverse[g]], g);
    }
    let s4 = symmetric_table(4);
    assert_eq!(s4.order, 24);
}

#[test]
fn group_algebra_commutativity_tracks_the_group() {
    let s3 = group_algebra(rational(), &symmetric_table(3));
    assert!(!s3.is_commutative());
    let c2 = group_algebra(rational(), &cyclic_table(2));
    assert!(c2.is_commutative());
}

#[test]
fn perturbed_structure_constants_are_reported() {
    // Any 2-dimensional unital algebra is associative, so perturb the
    // symmetric group on 3 letters instead: redirect the square of the
    // first transposition from the identity to a 3-cycle.
    let field = rational();
    let s3 = symmetric_table(3);
    let a = group_algebra(field, &s3);
    let mut structure: Vec<Vec<Vec<Scalar>>> = (0..6)
        .map(|i| (0..6).map(|j| a.basis_product(i, j).to_vec()).collect())
        .collect();
    structure[1][1] = vec_basis(6, 3, field);
    let report = modact::algebra::validate_structure(field, &structure, a.unit()).unwrap();
    assert!(!report.is_valid());
    assert!(report.associativity_failures.contains(&(1, 1, 1)));
    assert!(modact::Algebra::new(field, structure, a.unit().to_vec()).is_err());
}

#[test]
fn all_small_irreducibles_satisfy_the_module_axioms() {
    let s3 = symmetric_table(3);
    let a3 = group_algebra(rational(), &s3);
    for rep in [trivial_rep(6), sign_rep(3), standard_rep(3)] {
        assert!(rep_module(&a3, &rep).validate().is_empty());
    }
    let s4 = symmetric_table(4);
    let a4 = group_algebra(rational(), &s4);
    let std4 = standard_rep(4);
    let sgn4 = sign_rep(4);
    for rep in
        [trivial_rep(24), sgn4.clone(), pair_partition_rep(), std4.clone(), tensor_int_reps(&std4, &sgn4)]
    {
        assert!(rep_module(&a4, &rep).validate().is_empty());
    }
}

#[test]
fn s3_characters_match_the_classical_table() {
    // Elements in lexicographic order: id, (12), (01), (012), (021), (02).
    assert_eq!(rep_character(&trivial_rep(6)), vec![1, 1, 1, 1, 1, 1]);
    assert_eq!(rep_character(&sign_rep(3)), vec![1, -1, -1, 1, 1, -1]);
    assert_eq!(rep_character(&standard_rep(3)), vec![2, 0, 0, -1, -1, 0]);
}

#[test]
fn s4_irreducible_characters_are_orthonormal() {
    let s4 = symmetric_table(4);
    let std4 = standard_rep(4);
    let sgn4 = sign_rep(4);
    let reps =
        [trivial_rep(24), sgn4.clone(), pair_partition_rep(), std4.clone(), tensor_int_reps(&std4, &sgn4)];
    let chars: Vec<Vec<i64>> = reps.iter().map(rep_character).collect();
    for i in 0..5 {
        for j in 0..5 {
            let expected = if i == j { 24 } else { 0 };
            assert_eq!(chi_inner(&s4, &chars[i], &chars[j]), expected, "pair ({i}, {j})");
        }
    }
}

#[test]
fn conjugacy_classes_of_s3_are_frozen() {
    let s3 = symmetric_table(3);
    assert_eq!(conjugacy_classes(&s3), vec![vec![0], vec![1, 2, 5], vec![3, 4]]);
}

#[test]
fn hom_dimensions_match_character_inner_products() {
    let table = symmetric_table(3);
    let a = group_algebra(rational(), &table);
    let reg = regular_module(&a);
    let triv = rep_module(&a, &trivial_rep(6));
    let v = rep_module(&a, &standard_rep(3));

    let cases: [(&Arc<Module>, &Arc<Module>, usize); 4] =
        [(&reg, &triv, 1), (&v, &triv, 0), (&v, &v, 1), (&reg, &v, 2)];
    for (m, n, expected) in cases {
        let basis = hom_basis(m, n).unwrap();
        assert_eq!(basis.len(), expected);
        let inner = chi_inner(&table, &module_character(m), &module_character(n));
        assert_eq!(inner, 6 * expected as i64);
    }
}

#[test]
fn hom_dimensions_are_stable_mod_seven() {
    let table = symmetric_table(3);
    let a = group_algebra(Field::prime(7), &table);
    let v = rep_module(&a, &standard_rep(3));
    let triv = rep_module(&a, &trivial_rep(6));
    assert_eq!(hom_basis(&v, &v).unwrap().len(), 1);
    assert_eq!(hom_basis(&v, &triv).unwrap().len(), 0);
}

#[test]
fn matrix_unit_idempotents_are_orthogonal_and_sum_to_the_central_one() {
    let table = symmetric_table(3);
    let a = group_algebra(rational(), &table);
    let std3 = standard_rep(3);
    let u0 = matrix_unit_idempotent(&a, &table, &std3, 0).unwrap();
    let u1 = matrix_unit_idempotent(&a, &table, &std3, 1).unwrap();
    let zero = vec_zero(6, a.field());
    assert_eq!(a.multiply(u0.coords(), u1.coords()), zero);
    assert_eq!(a.multiply(u1.coords(), u0.coords()), zero);

    let central = central_idempotent(&a, &table, &rep_character(&std3)).unwrap();
    let sum: Vec<Scalar> =
        u0.coords().iter().zip(u1.coords()).map(|(x, y)| x.add(y)).collect();
    assert_eq!(sum, central.coords());
}

#[test]
fn central_idempotents_sum_to_the_unit() {
    let table = symmetric_table(3);
    let a = group_algebra(rational(), &table);
    let mut sum = vec_zero(6, a.field());
    for rep in [trivial_rep(6), sign_rep(3), standard_rep(3)] {
        let e = central_idempotent(&a, &table, &rep_character(&rep)).unwrap();
        sum = modact::algebra::vec_add(&sum, e.coords());
    }
    assert_eq!(sum, a.unit());
}

#[test]
fn idempotent_constructor_rejects_non_idempotents() {
    let a = group_algebra(rational(), &cyclic_table(2));
    // The group element g itself: g*g = 1 != g.
    let err = Idempotent::new(a.clone(), vec_basis(2, 1, a.field())).unwrap_err();
    assert!(matches!(err, Error::NotIdempotent));
}

#[test]
fn symmetrizer_of_c2_is_not_full() {
    let a = group_algebra(rational(), &cyclic_table(2));
    let e = idempotent_from_fractions(&a, &[(1, 2), (1, 2)]).unwrap();
    // b e b' is a multiple of e for every pair, so the span never leaves
    // the line through e.
    assert_eq!(is_full_idempotent(&e), (false, 1));
}

#[test]
fn block_sum_idempotent_of_s3_is_full() {
    let table = symmetric_table(3);
    let a = group_algebra(rational(), &table);
    let e = block_sum_idempotent(
        &a,
        &table,
        &[(&trivial_rep(6), 1), (&sign_rep(3), 1), (&standard_rep(3), 1)],
    )
    .unwrap();
    assert_eq!(is_full_idempotent(&e), (true, 6));

    let unit = Idempotent::new(a.clone(), a.unit().to_vec()).unwrap();
    assert_eq!(is_full_idempotent(&unit), (true, 6));
}

#[test]
fn unit_corner_recovers_the_whole_algebra() {
    let a = group_algebra(rational(), &symmetric_table(3));
    let unit = Idempotent::new(a.clone(), a.unit().to_vec()).unwrap();
    let corner = corner_algebra(&unit).unwrap();
    assert_eq!(corner.algebra.dim(), 6);
    assert!(corner.algebra.same_as(&a) || {
        // Same structure constants in the canonical basis even if the Arc
        // differs.
        (0..6).all(|i| (0..6).all(|j| corner.algebra.basis_product(i, j) == a.basis_product(i, j)))
    });
}

#[test]
fn matrix_algebra_corner_at_a_matrix_unit() {
    let a = m2_algebra(rational());
    let mut coords = vec_zero(4, a.field());
    coords[0] = a.field().one(); // E00
    let e = Idempotent::new(a.clone(), coords).unwrap();
    assert_eq!(is_full_idempotent(&e), (true, 4));
    let corner = corner_algebra(&e).unwrap();
    assert_eq!(corner.algebra.dim(), 1);
    let reg = regular_module(&a);
    let cm = corner_module(&corner, &reg).unwrap();
    // E00 * M2 has basis {E00, E01}.
    assert_eq!(cm.module.dim(), 2);
    assert!(cm.module.validate().is_empty());
}

#[test]
fn s3_basic_idempotent_corner_dimensions() {
    let table = symmetric_table(3);
    let a = group_algebra(rational(), &table);
    let e = block_sum_idempotent(
        &a,
        &table,
        &[(&trivial_rep(6), 1), (&sign_rep(3), 1), (&standard_rep(3), 1)],
    )
    .unwrap();
    let corner = corner_algebra(&e).unwrap();
    // One 1x1 block per irreducible: eAe = k x k x k.
    assert_eq!(corner.algebra.dim(), 3);
    assert!(corner.algebra.is_commutative());

    // e * (regular module): one column per block of ranks (1, 1, 2).
    let reg = regular_module(&a);
    let cm = corner_module(&corner, &reg).unwrap();
    assert_eq!(cm.module.dim(), 4);
    assert!(cm.module.validate().is_empty());

    // e * V for the two-dimensional simple: rank of rho_V(e) is 1.
    let v = rep_module(&a, &standard_rep(3));
    let cv = corner_module(&corner, &v).unwrap();
    assert_eq!(cv.module.dim(), 1);
}

#[test]
fn symmetrizer_kills_the_sign_module() {
    let table = cyclic_table(2);
    let a = group_algebra(rational(), &table);
    let e = idempotent_from_fractions(&a, &[(1, 2), (1, 2)]).unwrap();
    let corner = corner_algebra(&e).unwrap();
    assert_eq!(corner.algebra.dim(), 1);
    // Sign module of C2: the generator acts by -1.
    let sign = Module::new(
        a.clone(),
        vec![Mat::identity(1, a.field()), Mat::from_int_rows(a.field(), &[&[-1]])],
    )
    .unwrap();
    let cm = corner_module(&corner, &sign).unwrap();
    assert_eq!(cm.module.dim(), 0);
}

#[test]
fn regular_bimodule_satisfies_both_sided_axioms() {
    let a = group_algebra(rational(), &symmetric_table(3));
    let bm = regular_bimodule(&a);
    assert!(bm.validate().is_empty());
    assert_eq!(bm.dim(), 6);
}

#[test]
fn balanced_tensor_over_the_algebra_itself_recovers_the_module() {
    let table = symmetric_table(3);
    let a = group_algebra(rational(), &table);
    let bm = regular_bimodule(&a);
    let v = rep_module(&a, &standard_rep(3));
    let t = balanced_tensor(&bm, &v).unwrap();
    assert_eq!(t.module.dim(), 2);
    assert!(t.module.validate().is_empty());
    // A (x)_A V is not just 2-dimensional, it is V: a one-dimensional hom
    // space containing an invertible element.
    let homs = hom_basis(&t.module, &v).unwrap();
    assert_eq!(homs.len(), 1);
    assert!(homs[0].is_invertible());

    let m2 = m2_algebra(rational());
    let cols = m2_column_module(&m2);
    let t2 = balanced_tensor(&regular_bimodule(&m2), &cols).unwrap();
    assert_eq!(t2.module.dim(), 2);
    assert!(t2.module.validate().is_empty());
}

#[test]
fn balanced_tensor_functor_sends_identity_to_identity() {
    let a = group_algebra(rational(), &symmetric_table(3));
    let bm = regular_bimodule(&a);
    let v = rep_module(&a, &standard_rep(3));
    let t = balanced_tensor(&bm, &v).unwrap();
    let id = t.map_second(&t, &Mat::identity(2, a.field())).unwrap();
    assert!(id.is_identity());
}

#[test]
fn direct_sums_and_morphism_arithmetic_compose() {
    let a = group_algebra(rational(), &symmetric_table(3));
    let v = rep_module(&a, &standard_rep(3));
    let triv = rep_module(&a, &trivial_rep(6));
    let sum = direct_sum(&[v.clone(), triv.clone(), v.clone()]).unwrap();
    assert_eq!(sum.dim(), 5);
    assert!(sum.validate().is_empty());
    // Hom(V + 1 + V, V) has dimension 2, and every element intertwines.
    let homs = hom_basis(&sum, &v).unwrap();
    assert_eq!(homs.len(), 2);
    let combined = homs[0].add(&homs[1].scale(&a.field().from_integer(3))).unwrap();
    assert!(combined.is_intertwiner());
    let idv = ModuleMorphism::identity(&v);
    assert!(idv.compose(&homs[0]).unwrap().is_intertwiner());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Corner dimensions cannot depend on the basis in which a module is
    /// written: recompute after a unipotent change of basis.
    #[test]
    fn corner_module_dimension_is_basis_independent(
        strict_upper in proptest::collection::vec(-4i64..=4, 15),
    ) {
        let table = symmetric_table(3);
        let a = group_algebra(rational(), &table);
        let e = block_sum_idempotent(
            &a,
            &table,
            &[(&trivial_rep(6), 1), (&sign_rep(3), 1), (&standard_rep(3), 1)],
        ).unwrap();
        let corner = corner_algebra(&e).unwrap();
        let reg = regular_module(&a);

        // I + strictly-upper-triangular is always invertible.
        let field = a.field();
        let mut p = Mat::identity(6, field);
        let mut k = 0;
        for i in 0..6 {
            for j in (i + 1)..6 {
                p.set(i, j, field.from_integer(strict_upper[k]));
                k += 1;
            }
        }
        let conjugated = change_basis(&reg, &p).unwrap();
        prop_assert!(conjugated.validate().is_empty());
        let cm = corner_module(&corner, &conjugated).unwrap();
        prop_assert_eq!(cm.module.dim(), 4);
    }

    /// dim (A tensor_A N) = dim N for sums of simples with random
    /// multiplicities; exercises the relation-span machinery on varying
    /// shapes.
    #[test]
    fn balanced_tensor_over_self_preserves_dimension(
        mult in proptest::collection::vec(0usize..=2, 3),
    ) {
        prop_assume!(mult.iter().sum::<usize>() > 0);
        let table = symmetric_table(3);
        let a = group_algebra(rational(), &table);
        let mut parts = Vec::new();
        for _ in 0..mult[0] { parts.push(rep_module(&a, &trivial_rep(6))); }
        for _ in 0..mult[1] { parts.push(rep_module(&a, &sign_rep(3))); }
        for _ in 0..mult[2] { parts.push(rep_module(&a, &standard_rep(3))); }
        let n = direct_sum(&parts).unwrap();
        let t = balanced_tensor(&regular_bimodule(&a), &n).unwrap();
        prop_assert_eq!(t.module.dim(), n.dim());
        prop_assert!(t.module.validate().is_empty());
    }

    /// Fullness of an idempotent is invariant under conjugation by a
    /// group element: e and g e g^-1 generate the same two-sided span
    /// dimension.
    #[test]
    fn fullness_span_is_conjugation_invariant(g in 0usize..6) {
        let table = symmetric_table(3);
        let a = group_algebra(rational(), &table);
        let e = central_idempotent(&a, &table, &rep_character(&standard_rep(3))).unwrap();
        let field = a.field();
        let ge = a.multiply(&vec_basis(6, g, field), e.coords());
        let geg = a.multiply(&ge, &vec_basis(6, table.inverse[g], field));
        let conj = Idempotent::new(a.clone(), geg).unwrap();
        prop_assert_eq!(is_full_idempotent(&conj), is_full_idempotent(&e));
    }
}
