mod common;

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use incidence_core::algebra::{
    check_algebra, check_coalgebra, check_mweak, check_strong, convolve_ops, solve_antipode,
    LinearOperator,
};
use incidence_core::incidence::{
    basis_function, embed_element, hat, star_on_interval, unit_function,
};
use incidence_core::interval_bialgebra::{
    check_interval_product_condition, hopf_square, interval_product_table,
};
use incidence_core::poset::{antichain_with_zero, boolean_lattice, chain, divisor_lattice};
use incidence_core::sampling::{random_incidence_function, random_poset, rng};
use incidence_core::scalars::int;
use incidence_core::{
    build_interval_bialgebra, mobius, star, zeta, IntervalBialgebra, Rational, SparseVector,
};

use common::{generator_suite, interval, relation};

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn suite() -> Vec<(String, IntervalBialgebra)> {
    generator_suite()
        .into_iter()
        .map(|(name, p, key)| {
            (
                format!("{name}/{key}"),
                build_interval_bialgebra(relation(p, key)).unwrap(),
            )
        })
        .collect()
}

#[test]
fn interval_bialgebras_are_mweak() {
    for (name, ib) in suite() {
        let b = ib.bialgebra();
        let mut report = check_algebra(&b.algebra);
        report.extend(check_coalgebra(&b.coalgebra));
        report.extend(check_mweak(b));
        assert!(report.all_ok(), "{name}: {report:?}");
    }
}

#[test]
fn hopf_square_counts_interval_elements_under_product_condition() {
    let mut with_condition = 0;
    for (name, ib) in suite() {
        if !check_interval_product_condition(&ib).ok {
            continue;
        }
        with_condition += 1;
        let r = ib.relation();
        for c in 0..ib.dim() {
            let (k, _) = hopf_square(&ib, c).unwrap();
            for m in &r.class(c).members {
                assert_eq!(k, int(r.poset().interval_size(*m) as i64), "{name}");
            }
        }
    }
    assert!(with_condition > 20);
}

#[test]
fn boolean_cardinality_hopf_square_is_central_binomial() {
    for n in 0..=4 {
        let ib = interval(boolean_lattice(n).unwrap(), "cardinality");
        assert_eq!(check_interval_product_condition(&ib).ok, n <= 1);
        for k in 0..=n as u64 {
            let c = ib.class_by_key(&k.to_string()).unwrap();
            let expected: u64 = (0..=k).map(|j| binomial(k, j).pow(2)).sum();
            assert_eq!(hopf_square(&ib, c).unwrap().0, int(expected as i64));
        }
    }
}

#[test]
fn trivial_relation_multiplies_like_matrix_units() {
    let mut rng = rng(8);
    let mut pairs = 0;
    while pairs < 100 {
        let n = rng.gen_range(1..=6);
        let p = random_poset(&mut rng, n, 0.5);
        let mut pos = vec![0; n];
        for (i, &x) in p.linear_extension().iter().enumerate() {
            pos[x] = i;
        }
        let r = relation(p, "trivial");
        let table = interval_product_table(&r).unwrap();
        let d = r.num_classes();
        for _ in 0..10 {
            let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
            let (a, b) = (r.class(i).representative, r.class(j).representative);
            // matrix units B_{pos a.lo, pos a.hi} and B_{pos b.lo, pos b.hi}
            let lhs = (pos[a.lo], pos[a.hi]);
            let rhs = (pos[b.lo], pos[b.hi]);
            let expected = (lhs.1 == rhs.0).then_some((lhs.0, rhs.1));
            let got = &table[i * d + j];
            match expected {
                None => assert!(got.is_zero()),
                Some(cell) => {
                    let k = r.class_of(a.lo, b.hi);
                    assert_eq!(*got, SparseVector::basis(k));
                    let iv = r.class(k).representative;
                    assert_eq!((pos[iv.lo], pos[iv.hi]), cell);
                }
            }
            pairs += 1;
        }
    }
}

#[test]
fn strong_axiom_status() {
    for n in 2..=6 {
        let ib = interval(chain(n).unwrap(), "diff");
        assert!(!check_strong(ib.bialgebra()).all_ok(), "chain({n})");
    }
    for n in 1..=4 {
        let ib = interval(boolean_lattice(n).unwrap(), "cardinality");
        let report = check_strong(ib.bialgebra());
        let w = report.get("bi1").unwrap().witness.as_ref().unwrap();
        assert_eq!(w.names, ["I_1", "I_1"], "boolean({n})");
    }
    assert!(
        check_strong(interval(boolean_lattice(0).unwrap(), "cardinality").bialgebra()).all_ok()
    );
}

#[test]
fn mobius_is_two_sided_inverse_of_zeta() {
    for (name, ib) in suite() {
        let r = ib.relation_arc();
        let (z, m, u) = (zeta(r), mobius(r), unit_function(r));
        assert_eq!(star(&z, &m).unwrap(), u, "{name}");
        assert_eq!(star(&m, &z).unwrap(), u, "{name}");
    }
}

#[test]
fn star_is_independent_of_representatives() {
    let mut rng = rng(9);
    let relations: Vec<_> = suite()
        .into_iter()
        .map(|(_, ib)| ib.relation_arc().clone())
        .collect();
    for i in 0..100 {
        let r = &relations[i % relations.len()];
        let (phi, psi) = (
            random_incidence_function(&mut rng, r),
            random_incidence_function(&mut rng, r),
        );
        let prod = star(&phi, &psi).unwrap();
        for (c, class) in r.classes().iter().enumerate() {
            for m in &class.members {
                assert_eq!(star_on_interval(&phi, &psi, m.lo, m.hi), *prod.value(c));
            }
        }
    }
}

#[test]
fn antipode_is_hat_mobius() {
    let mut cases: Vec<IntervalBialgebra> = (0..=8)
        .map(|n| interval(chain(n).unwrap(), "diff"))
        .collect();
    for n in [6, 12, 30, 60] {
        cases.push(interval(divisor_lattice(n).unwrap(), "ratio"));
    }
    for ib in cases {
        let s = solve_antipode(ib.bialgebra()).expect("antipode exists");
        assert_eq!(s, hat(&mobius(ib.relation_arc())));
    }
}

#[test]
fn basis_functions_multiply_like_intervals() {
    for (name, ib) in suite().into_iter().filter(|(_, ib)| ib.dim() <= 30) {
        let r = ib.relation_arc();
        let basis: Vec<_> = (0..ib.dim()).map(|c| basis_function(r, c)).collect();
        for i in 0..ib.dim() {
            for j in 0..ib.dim() {
                let product = ib.bialgebra().algebra.product(i, j);
                assert_eq!(
                    star(&basis[i], &basis[j]).unwrap(),
                    embed_element(r, product),
                    "{name}"
                );
            }
        }
    }
}

fn hopf_square_operator(ib: &IntervalBialgebra) -> LinearOperator {
    let b = ib.bialgebra();
    let images: Vec<_> = (0..ib.dim())
        .map(|c| b.algebra.multiply_tensor(b.coalgebra.coproduct(c)))
        .collect();
    LinearOperator::from_images(&images).unwrap()
}

#[test]
fn antipode_square_paths() {
    let strong_like = [
        interval(boolean_lattice(3).unwrap(), "setdiff"),
        interval(antichain_with_zero(4).unwrap(), "points"),
        interval(chain(1).unwrap(), "diff"),
        interval(divisor_lattice(30).unwrap(), "ratio"),
    ];
    let weak_only = [
        interval(chain(4).unwrap(), "diff"),
        interval(divisor_lattice(12).unwrap(), "ratio"),
    ];
    for (i, ib) in strong_like.iter().chain(&weak_only).enumerate() {
        let b = ib.bialgebra();
        let s = solve_antipode(b).unwrap();
        let nd = hopf_square_operator(ib);
        let s_star_s = convolve_ops(&b.coalgebra, &b.algebra, &s, &s).unwrap();
        assert_eq!(s.compose(&nd).unwrap(), nd.compose(&s).unwrap());
        let agrees = s.compose(&nd).unwrap() == s_star_s;
        assert_eq!(agrees, i < strong_like.len(), "case {i}");
    }
    // chain(2): (Μ⋆Μ)(I_2) = 1 while Μ(I_2)·|[0,2]| = 0
    let ib = interval(chain(2).unwrap(), "diff");
    let m = mobius(ib.relation_arc());
    assert_eq!(*star(&m, &m).unwrap().value(2), int(1));
    assert!(m.value(2).is_zero());
}

#[test]
fn hat_turns_pointwise_product_into_composition() {
    let mut rng = rng(10);
    for (_, ib) in suite().into_iter().step_by(3) {
        let r = ib.relation_arc();
        for _ in 0..5 {
            let (phi, psi) = (
                random_incidence_function(&mut rng, r),
                random_incidence_function(&mut rng, r),
            );
            let prod = phi.pointwise(&psi).unwrap();
            assert_eq!(hat(&prod), hat(&phi).compose(&hat(&psi)).unwrap());
        }
        assert_eq!(hat(&zeta(r)), LinearOperator::identity(ib.dim()));
    }
}

#[test]
fn chain_star_is_cauchy_product() {
    // Φ(I_n) = n on chain(4): (Φ⋆Φ)(I_4) = Σ k(4−k)
    let r: Arc<_> = relation(chain(4).unwrap(), "diff");
    let phi =
        incidence_core::IncidenceFunction::from_fn(&r, |c| int(r.key(c).parse::<i64>().unwrap()));
    let sq = star(&phi, &phi).unwrap();
    let expected: i64 = (0..=4).map(|k| k * (4 - k)).sum();
    assert_eq!(
        *sq.value_by_key("4").unwrap(),
        Rational::from_integer(expected.into())
    );
}
