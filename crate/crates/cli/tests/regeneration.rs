//! The bundled fixtures must resolve to exactly the objects the library
//! would build programmatically: same algebra, same module dimensions,
//! same idempotent coordinates. This pins the JSON schema's meaning.

use modact::fixtures::{
    block_sum_idempotent, pair_partition_rep, sign_rep, standard_rep, symmetric_table,
    tensor_int_reps, trivial_rep,
};
use modact::{group_algebra, Algebra, Field};
use modact_cli::fixture;
use std::path::Path;
use std::sync::Arc;

fn load(name: &str) -> fixture::Resolved {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    let text = std::fs::read_to_string(&path).expect("bundled fixture exists");
    let file = fixture::parse(&text).expect("bundled fixture parses");
    fixture::resolve(&file).expect("bundled fixture resolves")
}

fn s3_algebra() -> Arc<Algebra> {
    group_algebra(Field::Rational, &symmetric_table(3))
}

#[test]
fn the_s3_fixture_matches_the_programmatic_construction() {
    let r = load("s3.json");
    let algebra = s3_algebra();
    assert!(r.algebra.same_as(&algebra), "same group algebra");

    let dims: Vec<usize> = r.modules.iter().map(|(_, m)| m.dim()).collect();
    assert_eq!(dims, vec![1, 1, 2]);

    let table = symmetric_table(3);
    let reps = [trivial_rep(6), sign_rep(3), standard_rep(3)];
    let full = block_sum_idempotent(
        &algebra,
        &table,
        &[(&reps[0], 1), (&reps[1], 1), (&reps[2], 1)],
    )
    .expect("full block idempotent");
    let symmetrizer =
        block_sum_idempotent(&algebra, &table, &[(&reps[0], 1)]).expect("symmetrizer");

    let by_name: std::collections::BTreeMap<&str, &modact::Idempotent> =
        r.idempotents.iter().map(|(n, e)| (n.as_str(), e)).collect();
    assert_eq!(by_name["full_block"].coords(), full.coords());
    assert_eq!(by_name["symmetrizer"].coords(), symmetrizer.coords());

    let trunc = r.truncation.as_ref().expect("truncation section");
    assert_eq!(trunc.idempotent.coords(), full.coords());
    assert!(trunc.expect_full);
    assert_eq!(trunc.corner_dim, Some(3));
}

#[test]
fn the_s4_fixture_builds_the_nested_idempotent_pair() {
    let r = load("s4_stages.json");
    assert_eq!(r.algebra.dim(), 24);

    let dims: Vec<usize> = r.modules.iter().map(|(_, m)| m.dim()).collect();
    assert_eq!(dims, vec![1, 1, 2, 3, 3]);

    let table = symmetric_table(4);
    let reps = [
        trivial_rep(24),
        sign_rep(4),
        pair_partition_rep(),
        standard_rep(4),
        tensor_int_reps(&standard_rep(4), &sign_rep(4)),
    ];
    let outer = block_sum_idempotent(
        &r.algebra,
        &table,
        &[(&reps[0], 1), (&reps[1], 1), (&reps[2], 1), (&reps[3], 2), (&reps[4], 2)],
    )
    .expect("outer idempotent");
    let inner = block_sum_idempotent(
        &r.algebra,
        &table,
        &[(&reps[0], 1), (&reps[1], 1), (&reps[2], 1), (&reps[3], 1), (&reps[4], 1)],
    )
    .expect("inner idempotent");

    let stages = r.stages.as_ref().expect("stages section");
    assert_eq!(stages.outer.coords(), outer.coords());
    assert_eq!(stages.inner.coords(), inner.coords());
    assert_eq!(stages.intermediate_dim, Some(11));
    assert_eq!(stages.corner_dim, Some(5));

    // Nesting: outer absorbs inner on both sides.
    let a = &r.algebra;
    assert_eq!(a.multiply(stages.outer.coords(), stages.inner.coords()), stages.inner.coords());
    assert_eq!(a.multiply(stages.inner.coords(), stages.outer.coords()), stages.inner.coords());
}

#[test]
fn resolution_rejects_inconsistent_declarations() {
    let reject = |body: &str, fragment: &str| {
        let file = fixture::parse(body).expect("parses");
        let err = match fixture::resolve(&file) {
            Err(e) => e,
            Ok(_) => panic!("fixture should have been rejected ({fragment})"),
        };
        assert!(err.contains(fragment), "error {err:?} should mention {fragment:?}");
    };

    // The sign character needs a symmetric group.
    reject(
        r#"{
          "name": "x", "field": {"kind": "rational"}, "group": {"kind": "cyclic", "n": 3},
          "representations": [{"name": "s", "kind": "sign"}]
        }"#,
        "sign",
    );
    // The parity character needs even order.
    reject(
        r#"{
          "name": "x", "field": {"kind": "rational"}, "group": {"kind": "cyclic", "n": 3},
          "representations": [{"name": "p", "kind": "parity"}]
        }"#,
        "even",
    );
    // Tensor factors must be declared beforehand.
    reject(
        r#"{
          "name": "x", "field": {"kind": "rational"}, "group": {"kind": "symmetric", "n": 3},
          "representations": [{"name": "t", "kind": "tensor", "factors": ["a", "b"]}]
        }"#,
        "a",
    );
    // Group order must be invertible in the coefficient field.
    reject(
        r#"{
          "name": "x", "field": {"kind": "prime", "modulus": 3}, "group": {"kind": "symmetric", "n": 3}
        }"#,
        "divisible",
    );
    // Duplicate names are ambiguous.
    reject(
        r#"{
          "name": "x", "field": {"kind": "rational"}, "group": {"kind": "symmetric", "n": 3},
          "representations": [
            {"name": "t", "kind": "trivial"}, {"name": "t", "kind": "sign"}
          ]
        }"#,
        "duplicate",
    );
    // The modulus must be prime.
    reject(
        r#"{
          "name": "x", "field": {"kind": "prime", "modulus": 6}, "group": {"kind": "cyclic", "n": 5}
        }"#,
        "prime",
    );
}

#[test]
fn prime_field_fixtures_resolve_when_the_order_is_invertible() {
    let file = fixture::parse(
        r#"{
          "name": "c5-mod-7",
          "field": {"kind": "prime", "modulus": 7},
          "group": {"kind": "cyclic", "n": 5},
          "representations": [{"name": "t", "kind": "trivial"}]
        }"#,
    )
    .expect("parses");
    let r = fixture::resolve(&file).expect("resolves");
    assert_eq!(r.field, Field::Prime(7));
    assert_eq!(r.algebra.dim(), 5);
}
