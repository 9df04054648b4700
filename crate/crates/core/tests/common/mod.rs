#![allow(dead_code)]

use std::sync::Arc;

use incidence_core::algebra::{
    cyclic_group_algebra, matrix_bialgebra, quaternion_fixture, symmetric_group_s3, FiniteBialgebra,
};
use incidence_core::poset::{antichain_with_zero, boolean_lattice, chain, divisor_lattice, Poset};
use incidence_core::{
    build_interval_bialgebra, relation_from_key, IntervalBialgebra, IntervalRelation,
};

pub fn relation(p: Poset, key: &str) -> Arc<IntervalRelation> {
    Arc::new(relation_from_key(p, key).unwrap())
}

pub fn interval(p: Poset, key: &str) -> IntervalBialgebra {
    build_interval_bialgebra(relation(p, key)).unwrap()
}

/// Named bialgebra-like fixtures: group algebras, matrix and quaternion
/// structures, and a few interval bialgebras.
pub fn bialgebra_fixtures() -> Vec<(String, FiniteBialgebra)> {
    let mut out = vec![
        ("quaternion".to_string(), quaternion_fixture()),
        ("s3".to_string(), symmetric_group_s3()),
    ];
    for n in 1..=3 {
        out.push((format!("matrix{n}"), matrix_bialgebra(n).unwrap()));
    }
    for n in [2, 3, 4] {
        out.push((format!("cyclic{n}"), cyclic_group_algebra(n).unwrap()));
    }
    let intervals = [
        ("chain3/diff", interval(chain(3).unwrap(), "diff")),
        (
            "boolean2/setdiff",
            interval(boolean_lattice(2).unwrap(), "setdiff"),
        ),
        (
            "boolean2/cardinality",
            interval(boolean_lattice(2).unwrap(), "cardinality"),
        ),
        (
            "divisors12/ratio",
            interval(divisor_lattice(12).unwrap(), "ratio"),
        ),
        (
            "fan2/points",
            interval(antichain_with_zero(2).unwrap(), "points"),
        ),
    ];
    for (name, ib) in intervals {
        out.push((name.to_string(), ib.bialgebra().clone()));
    }
    out
}

/// Generator posets paired with the builtin relations they support, up to
/// the sizes used for compatibility claims.
pub fn generator_suite() -> Vec<(String, Poset, &'static str)> {
    let mut out = Vec::new();
    for n in 0..=4 {
        for key in ["setdiff", "cardinality", "points"] {
            out.push((format!("boolean:{n}"), boolean_lattice(n).unwrap(), key));
        }
    }
    for n in 0..=8 {
        for key in ["diff", "points"] {
            out.push((format!("chain:{n}"), chain(n).unwrap(), key));
        }
    }
    for n in [1, 6, 12, 30, 60, 360] {
        for key in ["ratio", "points"] {
            out.push((format!("divisors:{n}"), divisor_lattice(n).unwrap(), key));
        }
    }
    for n in 0..=6 {
        out.push((
            format!("fan:{n}"),
            antichain_with_zero(n).unwrap(),
            "points",
        ));
    }
    out
}
