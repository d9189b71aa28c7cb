//! JSON fixture schema and its resolution into live algebra objects.
//!
//! A fixture names a ground field, a group, a list of representations,
//! and a list of idempotents built as sums of diagonal matrix units of
//! those representations. Optional sections select the idempotents for
//! the truncation and staged-reduction suites, rescale the transport
//! equivalence, and declare diagram names that are expected to fail
//! (used to verify that a deliberate mutation is actually detected).

use modact::fixtures::{
    block_sum_idempotent, pair_partition_rep, rep_module, sign_rep, standard_rep, symmetric_table,
    tensor_int_reps, trivial_rep, IntRep,
};
use modact::{
    group_algebra, group_hopf, Algebra, Field, GroupTable, Idempotent, Module, MonoidalContext,
    Scalar,
};
use serde::Deserialize;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub name: String,
    pub field: FieldSpec,
    pub group: GroupSpec,
    #[serde(default)]
    pub representations: Vec<RepSpec>,
    #[serde(default)]
    pub idempotents: Vec<IdempotentSpec>,
    #[serde(default)]
    pub transport: Option<TransportSpec>,
    #[serde(default)]
    pub truncation: Option<TruncationSpec>,
    #[serde(default)]
    pub stages: Option<StagesSpec>,
    /// Diagram names expected to fail; such a failure counts as a pass
    /// of the expectation and an unexpected success as a failure.
    #[serde(default)]
    pub expected_failures: Vec<String>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSpec {
    Rational,
    Prime { modulus: u64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Symmetric { n: usize },
    Cyclic { n: usize },
}

// No `deny_unknown_fields` here: serde cannot combine it with `flatten`.
#[derive(Deserialize)]
pub struct RepSpec {
    pub name: String,
    #[serde(flatten)]
    pub kind: RepKind,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RepKind {
    /// One-dimensional, every element acts as 1.
    Trivial,
    /// Sign of a permutation (symmetric groups).
    Sign,
    /// Parity character of a cyclic group of even order.
    Parity,
    /// The (n-1)-dimensional reflection representation (symmetric groups).
    Standard,
    /// The two-dimensional irreducible of the symmetric group on four
    /// letters through its pair-partition quotient.
    PairPartition,
    /// Kronecker product of two previously declared representations.
    Tensor { factors: [String; 2] },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdempotentSpec {
    pub name: String,
    /// Representation name -> number of diagonal matrix units kept.
    pub ranks: BTreeMap<String, usize>,
}

fn unit_fraction() -> [i64; 2] {
    [1, 1]
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransportSpec {
    /// `eps = counit_scale * id` as a fraction `[num, den]`.
    #[serde(default = "unit_fraction")]
    pub counit_scale: [i64; 2],
    /// `eta = unit_scale * id`.
    #[serde(default = "unit_fraction")]
    pub unit_scale: [i64; 2],
}

fn default_true() -> bool {
    true
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationSpec {
    pub idempotent: String,
    #[serde(default = "default_true")]
    pub expect_full: bool,
    #[serde(default)]
    pub corner_dim: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StagesSpec {
    /// The larger idempotent, truncated by first.
    pub outer: String,
    /// The smaller idempotent, with `outer * inner = inner * outer = inner`.
    pub inner: String,
    #[serde(default)]
    pub intermediate_dim: Option<usize>,
    #[serde(default)]
    pub corner_dim: Option<usize>,
}

pub struct ResolvedTruncation {
    pub name: String,
    pub idempotent: Idempotent,
    pub expect_full: bool,
    pub corner_dim: Option<usize>,
}

pub struct ResolvedStages {
    pub outer_name: String,
    pub inner_name: String,
    pub outer: Idempotent,
    pub inner: Idempotent,
    pub intermediate_dim: Option<usize>,
    pub corner_dim: Option<usize>,
}

pub struct Resolved {
    pub name: String,
    pub field: Field,
    pub table: GroupTable,
    pub algebra: Arc<Algebra>,
    pub ctx: Arc<MonoidalContext>,
    /// Named modules in declaration order.
    pub modules: Vec<(String, Arc<Module>)>,
    pub idempotents: Vec<(String, Idempotent)>,
    /// Counit and unit scales for the transport suite.
    pub transport: Option<(Scalar, Scalar)>,
    pub truncation: Option<ResolvedTruncation>,
    pub stages: Option<ResolvedStages>,
    pub expected_failures: BTreeSet<String>,
}

pub fn parse(text: &str) -> Result<FixtureFile, String> {
    serde_json::from_str(text).map_err(|e| format!("invalid fixture JSON: {e}"))
}

pub fn resolve(file: &FixtureFile) -> Result<Resolved, String> {
    let field = match file.field {
        FieldSpec::Rational => Field::Rational,
        FieldSpec::Prime { modulus } => Field::Prime(modulus),
    };
    // Reject a bad modulus up front rather than panicking later.
    if let Field::Prime(p) = field {
        if p >= 1 << 32 {
            return Err(format!("modulus {p} exceeds the supported 32-bit range"));
        }
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(format!("modulus {p} is not prime"));
        }
    }

    let (table, order) = match file.group {
        GroupSpec::Symmetric { n } => {
            if !(1..=4).contains(&n) {
                return Err(format!(
                    "symmetric group on {n} letters is out of the supported range 1..=4"
                ));
            }
            let t = symmetric_table(n);
            let order = t.order;
            (t, order)
        }
        GroupSpec::Cyclic { n } => {
            if n == 0 || n > 64 {
                return Err(format!("cyclic group of order {n} is out of the supported range 1..=64"));
            }
            let t = modact::fixtures::cyclic_table(n);
            let order = t.order;
            (t, order)
        }
    };
    if let Field::Prime(p) = field {
        if order as u64 % p == 0 {
            return Err(format!(
                "group order {order} is divisible by the modulus {p}; matrix-unit idempotents need an invertible order"
            ));
        }
    }

    let algebra = group_algebra(field, &table);
    let ctx = group_hopf(&algebra, &table).map_err(|e| format!("bialgebra construction failed: {e}"))?;

    let mut int_reps: Vec<(String, IntRep)> = Vec::new();
    for spec in &file.representations {
        if int_reps.iter().any(|(n, _)| n == &spec.name) {
            return Err(format!("duplicate representation name {:?}", spec.name));
        }
        let rep = match &spec.kind {
            RepKind::Trivial => trivial_rep(order),
            RepKind::Sign => match file.group {
                GroupSpec::Symmetric { n } => sign_rep(n),
                GroupSpec::Cyclic { .. } => {
                    return Err("the sign representation needs a symmetric group; use kind \"parity\" for cyclic groups".into())
                }
            },
            RepKind::Parity => match file.group {
                GroupSpec::Cyclic { n } if n % 2 == 0 => IntRep {
                    dim: 1,
                    mats: (0..n).map(|k| vec![vec![if k % 2 == 0 { 1 } else { -1 }]]).collect(),
                },
                _ => return Err("the parity character needs a cyclic group of even order".into()),
            },
            RepKind::Standard => match file.group {
                GroupSpec::Symmetric { n } if n >= 2 => standard_rep(n),
                _ => return Err("the standard representation needs a symmetric group on at least two letters".into()),
            },
            RepKind::PairPartition => match file.group {
                GroupSpec::Symmetric { n } if n == 4 => pair_partition_rep(),
                _ => return Err("the pair-partition representation is specific to the symmetric group on four letters".into()),
            },
            RepKind::Tensor { factors } => {
                let mut resolved = Vec::new();
                for f in factors {
                    match int_reps.iter().find(|(n, _)| n == f) {
                        Some((_, r)) => resolved.push(r.clone()),
                        None => return Err(format!("tensor factor {f:?} is not a previously declared representation")),
                    }
                }
                tensor_int_reps(&resolved[0], &resolved[1])
            }
        };
        int_reps.push((spec.name.clone(), rep));
    }

    let modules: Vec<(String, Arc<Module>)> = int_reps
        .iter()
        .map(|(name, rep)| (name.clone(), rep_module(&algebra, rep)))
        .collect();

    let mut idempotents: Vec<(String, Idempotent)> = Vec::new();
    for spec in &file.idempotents {
        if idempotents.iter().any(|(n, _)| n == &spec.name) {
            return Err(format!("duplicate idempotent name {:?}", spec.name));
        }
        for key in spec.ranks.keys() {
            if !int_reps.iter().any(|(n, _)| n == key) {
                return Err(format!(
                    "idempotent {:?} refers to unknown representation {key:?}",
                    spec.name
                ));
            }
        }
        // Iterate representations in declaration order so the idempotent
        // is deterministic regardless of JSON key order.
        let pairs: Vec<(&IntRep, usize)> = int_reps
            .iter()
            .filter_map(|(name, rep)| spec.ranks.get(name).map(|rank| (rep, *rank)))
            .collect();
        let e = block_sum_idempotent(&algebra, &table, &pairs)
            .map_err(|e| format!("idempotent {:?} failed to build: {e}", spec.name))?;
        idempotents.push((spec.name.clone(), e));
    }

    let fraction = |pair: [i64; 2], what: &str| -> Result<Scalar, String> {
        field
            .from_fraction(pair[0], pair[1])
            .ok_or_else(|| format!("{what} {}/{} is not a valid scalar", pair[0], pair[1]))
    };
    let transport = match &file.transport {
        None => None,
        Some(t) => Some((
            fraction(t.counit_scale, "counit scale")?,
            fraction(t.unit_scale, "unit scale")?,
        )),
    };

    let find_idempotent = |name: &str| -> Result<Idempotent, String> {
        idempotents
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e.clone())
            .ok_or_else(|| format!("unknown idempotent {name:?}"))
    };
    let truncation = match &file.truncation {
        None => None,
        Some(t) => Some(ResolvedTruncation {
            name: t.idempotent.clone(),
            idempotent: find_idempotent(&t.idempotent)?,
            expect_full: t.expect_full,
            corner_dim: t.corner_dim,
        }),
    };
    let stages = match &file.stages {
        None => None,
        Some(s) => Some(ResolvedStages {
            outer_name: s.outer.clone(),
            inner_name: s.inner.clone(),
            outer: find_idempotent(&s.outer)?,
            inner: find_idempotent(&s.inner)?,
            intermediate_dim: s.intermediate_dim,
            corner_dim: s.corner_dim,
        }),
    };

    Ok(Resolved {
        name: file.name.clone(),
        field,
        table,
        algebra,
        ctx,
        modules,
        idempotents,
        transport,
        truncation,
        stages,
        expected_failures: file.expected_failures.iter().cloned().collect(),
    })
}
