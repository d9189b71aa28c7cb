//! Reduction in two stages versus one-step truncation.
//!
//! The running example is the rational group algebra of the symmetric
//! group on four letters (dimension 24, five blocks of sizes 1, 1, 2, 3,
//! 3). `e1` keeps two matrix units in each three-dimensional block and
//! one everywhere else; `e2` keeps a single matrix unit per block. Then
//! `e2 <= e1`, the intermediate corner has dimension 11, and both the
//! staged corner and the direct corner have dimension 5.

use modact::fixtures::{
    block_sum_idempotent, pair_partition_rep, rep_module, sign_rep, standard_rep, symmetric_table,
    tensor_int_reps, trivial_rep, IntRep,
};
use modact::modcat::{check_left_pentagon, check_left_unit, check_left_unit_middle};
use modact::module::change_basis;
use modact::{
    direct_sum, group_algebra, group_hopf, regular_module, Algebra, Error, Field, GroupTable,
    Idempotent, Mat, ModuleMorphism, StagedTruncation,
};
use proptest::prelude::*;
use std::sync::Arc;

struct S4 {
    algebra: Arc<Algebra>,
    table: GroupTable,
    reps: Vec<IntRep>,
}

fn s4() -> S4 {
    let table = symmetric_table(4);
    let algebra = group_algebra(Field::Rational, &table);
    let reps = vec![
        trivial_rep(24),
        sign_rep(4),
        pair_partition_rep(),
        standard_rep(4),
        tensor_int_reps(&standard_rep(4), &sign_rep(4)),
    ];
    S4 { algebra, table, reps }
}

fn s4_nested(s: &S4) -> (Idempotent, Idempotent) {
    let with_ranks = |ranks: [usize; 5]| {
        let pairs: Vec<(&IntRep, usize)> =
            s.reps.iter().zip(ranks).map(|(r, k)| (r, k)).collect();
        block_sum_idempotent(&s.algebra, &s.table, &pairs).expect("orthogonal sum of matrix units")
    };
    (with_ranks([1, 1, 1, 2, 2]), with_ranks([1, 1, 1, 1, 1]))
}

fn s4_staged(s: &S4) -> Arc<StagedTruncation> {
    let (e1, e2) = s4_nested(s);
    StagedTruncation::new(&e1, &e2).expect("nested full idempotents")
}

fn invertible_intertwiner(h: &ModuleMorphism) -> bool {
    h.is_intertwiner() && h.is_invertible()
}

#[test]
fn nested_idempotents_build_both_routes_with_matching_corners() {
    let s = s4();
    let st = s4_staged(&s);

    assert_eq!(st.first.corner_algebra().dim(), 11);
    assert_eq!(st.second.corner_algebra().dim(), 5);
    assert_eq!(st.direct.corner_algebra().dim(), 5);
    assert_eq!(st.first.bimodule().dim(), 16);
    assert_eq!(st.direct.bimodule().dim(), 10);

    // One matrix unit per block on each side: both corners are split
    // commutative.
    assert!(st.second.corner_algebra().is_commutative());
    assert!(st.direct.corner_algebra().is_commutative());

    // The identification is multiplicative by construction; recompute one
    // instance from scratch as an independent check.
    let field = st.iso.source.field();
    for (i, j) in [(1usize, 3usize), (4, 4), (0, 2)] {
        let prod = st.iso.source.basis_product(i, j);
        let lhs = st.iso.apply(prod);
        let ei = modact::algebra::vec_basis(5, i, field);
        let ej = modact::algebra::vec_basis(5, j, field);
        let rhs = st.iso.target.multiply(&st.iso.apply(&ei), &st.iso.apply(&ej));
        assert_eq!(lhs, rhs);
    }
    // Unapply inverts apply on the whole basis.
    for r in 0..5 {
        let e = modact::algebra::vec_basis(5, r, field);
        assert_eq!(st.iso.unapply(&st.iso.apply(&e)), e);
    }
}

#[test]
fn factorization_and_fullness_failures_are_named_by_stage() {
    let table = symmetric_table(3);
    let a = group_algebra(Field::Rational, &table);
    let triv = trivial_rep(6);
    let sgn = sign_rep(3);
    let std = standard_rep(3);

    let full = block_sum_idempotent(&a, &table, &[(&triv, 1), (&sgn, 1), (&std, 1)]).unwrap();
    let symmetrizer = block_sum_idempotent(&a, &table, &[(&triv, 1)]).unwrap();

    // e2 sees only one of the three blocks of the intermediate corner.
    match StagedTruncation::new(&full, &symmetrizer) {
        Err(Error::FullnessFailure { span_dim, dim, stage }) => {
            assert_eq!((span_dim, dim), (1, 3));
            assert_eq!(stage.as_deref(), Some("second"));
        }
        Err(other) => panic!("expected a second-stage fullness failure, got {other:?}"),
        Ok(_) => panic!("expected a second-stage fullness failure, got a staged truncation"),
    }

    // e1 itself misses the two-dimensional block.
    let small = block_sum_idempotent(&a, &table, &[(&triv, 1), (&sgn, 1)]).unwrap();
    match StagedTruncation::new(&small, &symmetrizer) {
        Err(Error::FullnessFailure { span_dim, dim, stage }) => {
            assert_eq!((span_dim, dim), (2, 6));
            assert_eq!(stage.as_deref(), Some("first"));
        }
        Err(other) => panic!("expected a first-stage fullness failure, got {other:?}"),
        Ok(_) => panic!("expected a first-stage fullness failure, got a staged truncation"),
    }

    // The symmetrizer does not factor through a matrix unit of the
    // standard block.
    let off_block = block_sum_idempotent(&a, &table, &[(&std, 1)]).unwrap();
    match StagedTruncation::new(&off_block, &symmetrizer) {
        Err(Error::StageIncompatible(msg)) => assert!(msg.contains("factor")),
        Err(other) => panic!("expected a factorization failure, got {other:?}"),
        Ok(_) => panic!("expected a factorization failure, got a staged truncation"),
    }
}

#[test]
fn truncating_twice_by_the_same_idempotent_matches_one_step() {
    let table = symmetric_table(3);
    let a = group_algebra(Field::Rational, &table);
    let triv = trivial_rep(6);
    let sgn = sign_rep(3);
    let std = standard_rep(3);
    let e = block_sum_idempotent(&a, &table, &[(&triv, 1), (&sgn, 1), (&std, 1)]).unwrap();

    // Degenerate nesting e2 = e1: the second stage truncates by the unit
    // of the corner and the identification is a bijection of bases.
    let st = StagedTruncation::new(&e, &e).expect("an idempotent is nested in itself");
    assert_eq!(st.second.corner_algebra().dim(), 3);

    for m in [regular_module(&a), rep_module(&a, &std)] {
        let theta = st.comparison(&m).unwrap();
        assert!(invertible_intertwiner(&theta));
        assert_eq!(
            st.staged_datum().forward(&m).unwrap().dim(),
            st.direct_datum().forward(&m).unwrap().dim()
        );
    }
}

#[test]
fn both_routes_compress_to_the_same_subspace_of_the_regular_module() {
    let s = s4();
    let st = s4_staged(&s);
    let reg = regular_module(&s.algebra);

    let staged = st.staged_datum().forward(&reg).unwrap();
    let direct = st.direct_datum().forward(&reg).unwrap();
    assert_eq!(staged.dim(), 10);
    assert_eq!(direct.dim(), 10);
    assert!(staged.validate().is_empty());

    let theta = st.comparison(&reg).unwrap();
    assert!(invertible_intertwiner(&theta));

    // theta is exactly the change of basis between the two presentations
    // of e2 A inside A: direct-basis * theta = staged-basis.
    let u1 = &st.first.corner_of(&reg).unwrap().inclusion;
    let v = &st.second.corner_of(&st.first.forward(&reg).unwrap()).unwrap().inclusion;
    let u0 = &st.direct.corner_of(&reg).unwrap().inclusion;
    assert_eq!(u0.matmul(&theta.mat).unwrap(), u1.matmul(v).unwrap());

    // Simple modules compress to one dimension per block along both
    // routes.
    for rep in &s.reps {
        let m = rep_module(&s.algebra, rep);
        let theta = st.comparison(&m).unwrap();
        assert_eq!(theta.source.dim(), 1);
        assert!(invertible_intertwiner(&theta));
    }
}

#[test]
fn induction_comparison_is_a_natural_invertible_intertwiner() {
    let s = s4();
    let st = s4_staged(&s);

    let pair = rep_module(&s.algebra, &s.reps[2]);
    let std = rep_module(&s.algebra, &s.reps[3]);

    let n_pair = st.direct_datum().forward(&pair).unwrap();
    let psi = st.backward_comparison(&n_pair).unwrap();
    assert_eq!(psi.source.dim(), 2);
    assert_eq!(psi.target.dim(), 2);
    assert!(invertible_intertwiner(&psi));

    // Naturality against the projection of a direct sum onto a summand.
    let sum = direct_sum(&[std.clone(), pair.clone()]).unwrap();
    let field = s.algebra.field();
    let proj = ModuleMorphism::new(
        sum.clone(),
        std.clone(),
        Mat::from_fn(3, 5, field, |i, j| {
            if i == j { field.one() } else { field.zero() }
        }),
    )
    .unwrap();
    assert!(proj.is_intertwiner());

    let n_sum = st.direct_datum().forward(&sum).unwrap();
    let n_std = st.direct_datum().forward(&std).unwrap();
    let g = st.direct_datum().forward_mor(&proj).unwrap();
    assert_eq!((g.source.dim(), g.target.dim()), (n_sum.dim(), n_std.dim()));

    let psi_sum = st.backward_comparison(&n_sum).unwrap();
    let psi_std = st.backward_comparison(&n_std).unwrap();
    let lhs = psi_std.compose(&st.staged_datum().backward_mor(&g).unwrap()).unwrap();
    let rhs = st.direct_datum().backward_mor(&g).unwrap().compose(&psi_sum).unwrap();
    assert_eq!(lhs.mat, rhs.mat);
}

#[test]
fn translated_actions_along_the_two_routes_are_isomorphic() {
    let s = s4();
    let st = s4_staged(&s);
    let ctx = group_hopf(&s.algebra, &s.table).unwrap();

    let staged_act = st.staged_left_action(&ctx).unwrap();
    let direct_act = st.direct_left_action(&ctx).unwrap();

    let x = rep_module(&s.algebra, &s.reps[2]);
    let n = st.direct_datum().forward(&rep_module(&s.algebra, &s.reps[3])).unwrap();

    let s_obj = (staged_act.act)(&x, &n).unwrap();
    let d_obj = (direct_act.act)(&x, &n).unwrap();
    assert_eq!(s_obj.dim(), 2);
    assert_eq!(d_obj.dim(), 2);

    let theta = st.action_comparison(&ctx, &x, &n).unwrap();
    assert!(theta.source.same_as(&s_obj));
    assert!(theta.target.same_as(&d_obj));
    assert!(invertible_intertwiner(&theta));

    // Conjugate-pair relation tying the object comparison to the
    // induction comparison: G_d(theta_W) o psi at F_s(W) equals
    // eps_d^-1 o eps_s at W.
    let w = rep_module(&s.algebra, &s.reps[2]);
    let fs_w = st.staged_datum().forward(&w).unwrap();
    let lhs = st
        .direct_datum()
        .backward_mor(&st.comparison(&w).unwrap())
        .unwrap()
        .compose(&st.backward_comparison(&fs_w).unwrap())
        .unwrap();
    let rhs = st
        .direct_datum()
        .eps_inv(&w)
        .unwrap()
        .compose(&st.staged_datum().eps(&w).unwrap())
        .unwrap();
    assert_eq!(lhs.mat, rhs.mat);
}

#[test]
fn action_comparison_respects_both_transported_constraints() {
    let s = s4();
    let st = s4_staged(&s);
    let ctx = group_hopf(&s.algebra, &s.table).unwrap();
    let staged_act = st.staged_left_action(&ctx).unwrap();
    let direct_act = st.direct_left_action(&ctx).unwrap();

    let x = rep_module(&s.algebra, &s.reps[2]);
    let y = rep_module(&s.algebra, &s.reps[3]);
    let n = st.direct_datum().forward(&rep_module(&s.algebra, &s.reps[0])).unwrap();

    // (id_X .d Theta_{Y,N}) o Theta_{X, Y .s N} o n_s
    //   = n_d o Theta_{XY, N}.
    let n_s = (staged_act.constraint)(&x, &y, &n).unwrap();
    let y_n_staged = (staged_act.act)(&y, &n).unwrap();
    let step2 = st.action_comparison(&ctx, &x, &y_n_staged).unwrap();
    let theta_yn = st.action_comparison(&ctx, &y, &n).unwrap();
    let step3 = (direct_act.act_mor)(&ModuleMorphism::identity(&x), &theta_yn).unwrap();
    let lhs = step3.compose(&step2).unwrap().compose(&n_s).unwrap();

    let xy = ctx.tensor(&x, &y).unwrap();
    let theta_xy = st.action_comparison(&ctx, &xy, &n).unwrap();
    let n_d = (direct_act.constraint)(&x, &y, &n).unwrap();
    let rhs = n_d.compose(&theta_xy).unwrap();

    assert!(lhs.source.same_as(&rhs.source));
    assert!(lhs.target.same_as(&rhs.target));
    assert_eq!(lhs.mat, rhs.mat);
}

#[test]
fn the_staged_translation_satisfies_the_coherence_diagrams() {
    let s = s4();
    let st = s4_staged(&s);
    let ctx = group_hopf(&s.algebra, &s.table).unwrap();
    let staged_act = st.staged_left_action(&ctx).unwrap();
    let direct_act = st.direct_left_action(&ctx).unwrap();

    let x = rep_module(&s.algebra, &s.reps[1]);
    let y = rep_module(&s.algebra, &s.reps[2]);
    let z = rep_module(&s.algebra, &s.reps[3]);
    let n = st.direct_datum().forward(&rep_module(&s.algebra, &s.reps[0])).unwrap();

    let pentagon = check_left_pentagon(&staged_act, &x, &y, &z, &n).unwrap();
    assert!(pentagon.pass, "{}", pentagon.diagram);

    // Both stage counits satisfy the triangle identities, and composition
    // preserves them, so the composite transport also fixes the unit
    // diagrams.
    for act in [&staged_act, &direct_act] {
        let unit = check_left_unit(act, &y, &n).unwrap();
        assert!(unit.pass, "{}", unit.diagram);
        let unit_middle = check_left_unit_middle(act, &y, &n).unwrap();
        assert!(unit_middle.pass, "{}", unit_middle.diagram);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    /// The subspace comparison stays an invertible intertwiner under
    /// unipotent changes of basis of the ambient module.
    #[test]
    fn comparison_survives_basis_changes(shift in -3i64..=3) {
        let table = symmetric_table(3);
        let a = group_algebra(Field::Rational, &table);
        let triv = trivial_rep(6);
        let sgn = sign_rep(3);
        let std = standard_rep(3);
        let e1 = block_sum_idempotent(&a, &table, &[(&triv, 1), (&sgn, 1), (&std, 2)]).unwrap();
        let e2 = block_sum_idempotent(&a, &table, &[(&triv, 1), (&sgn, 1), (&std, 1)]).unwrap();
        let st = StagedTruncation::new(&e1, &e2).unwrap();
        prop_assert_eq!(st.first.corner_algebra().dim(), 6);
        prop_assert_eq!(st.direct.corner_algebra().dim(), 3);

        let field = a.field();
        let p = Mat::from_fn(6, 6, field, |i, j| {
            if i == j {
                field.one()
            } else if (i, j) == (0, 5) {
                field.from_integer(shift)
            } else {
                field.zero()
            }
        });
        let m = change_basis(&regular_module(&a), &p).unwrap();
        let theta = st.comparison(&m).unwrap();
        prop_assert!(theta.is_intertwiner());
        prop_assert!(theta.is_invertible());
    }
}
