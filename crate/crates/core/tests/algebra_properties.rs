mod common;

use incidence_core::algebra::{
    check_antimorphism, check_strong, convolution_unit, convolve_ops, cyclic_group_algebra,
    grouplike_elements, matrix_bialgebra, multiplication_is_algebra_morphism, quaternion_fixture,
    solve_antipode, vectors_independent, FiniteAlgebra, FiniteBialgebra, FiniteCoalgebra,
    LinearOperator,
};
use incidence_core::poset::{antichain_with_zero, chain};
use incidence_core::sampling::{random_operator, rng};
use incidence_core::SparseVector;

use common::{bialgebra_fixtures, interval};

/// Every (coalgebra, algebra) pair of equal dimension among the fixtures.
fn convolution_pairs() -> Vec<(String, FiniteCoalgebra, FiniteAlgebra)> {
    let fx = bialgebra_fixtures();
    let mut out = Vec::new();
    for (cn, cb) in &fx {
        for (an, ab) in &fx {
            if cb.dim() == ab.dim() {
                out.push((
                    format!("H({cn}, {an})"),
                    cb.coalgebra.clone(),
                    ab.algebra.clone(),
                ));
            }
        }
    }
    out
}

fn strong_with_antipode() -> Vec<(String, FiniteBialgebra, LinearOperator)> {
    bialgebra_fixtures()
        .into_iter()
        .filter(|(_, b)| check_strong(b).all_ok())
        .filter_map(|(n, b)| solve_antipode(&b).map(|s| (n, b, s)))
        .collect()
}

#[test]
fn convolution_is_associative_and_unital() {
    let mut rng = rng(1);
    for (name, c, a) in convolution_pairs() {
        let d = c.dim();
        let u = convolution_unit(&c, &a).unwrap();
        for _ in 0..50 {
            let (f, g, h) = (
                random_operator(&mut rng, d),
                random_operator(&mut rng, d),
                random_operator(&mut rng, d),
            );
            let fg_h = convolve_ops(&c, &a, &convolve_ops(&c, &a, &f, &g).unwrap(), &h).unwrap();
            let f_gh = convolve_ops(&c, &a, &f, &convolve_ops(&c, &a, &g, &h).unwrap()).unwrap();
            assert_eq!(fg_h, f_gh, "{name}");
            assert_eq!(convolve_ops(&c, &a, &u, &f).unwrap(), f, "{name}");
            assert_eq!(convolve_ops(&c, &a, &f, &u).unwrap(), f, "{name}");
        }
    }
}

#[test]
fn convolution_commutes_when_commutative_and_cocommutative() {
    let mut rng = rng(2);
    let mut tested = 0;
    for (name, c, a) in convolution_pairs() {
        if !(a.is_commutative() && c.is_cocommutative()) {
            continue;
        }
        tested += 1;
        for _ in 0..50 {
            let (f, g) = (
                random_operator(&mut rng, c.dim()),
                random_operator(&mut rng, c.dim()),
            );
            assert_eq!(
                convolve_ops(&c, &a, &f, &g).unwrap(),
                convolve_ops(&c, &a, &g, &f).unwrap(),
                "{name}"
            );
        }
    }
    assert!(tested >= 5);
}

#[test]
fn one_hypothesis_does_not_suffice() {
    // diagonal quaternion coalgebra is cocommutative, the algebra is not commutative
    let q = quaternion_fixture();
    assert!(q.coalgebra.is_cocommutative() && !q.algebra.is_commutative());
    let e = |k: usize, l: usize| {
        let mut images = vec![SparseVector::new(); 4];
        images[1] = SparseVector::basis(k);
        images[2] = SparseVector::basis(l);
        LinearOperator::from_images(&images).unwrap()
    };
    let (f, g) = (e(1, 2), e(2, 1));
    assert_ne!(
        convolve_ops(&q.coalgebra, &q.algebra, &f, &g).unwrap(),
        convolve_ops(&q.coalgebra, &q.algebra, &g, &f).unwrap()
    );
    // commutative algebra over the non-cocommutative matrix coalgebra
    let m = matrix_bialgebra(2).unwrap();
    let c4 = cyclic_group_algebra(4).unwrap();
    let mut rng = rng(20);
    let differs = (0..10).any(|_| {
        let (f, g) = (random_operator(&mut rng, 4), random_operator(&mut rng, 4));
        convolve_ops(&m.coalgebra, &c4.algebra, &f, &g).unwrap()
            != convolve_ops(&m.coalgebra, &c4.algebra, &g, &f).unwrap()
    });
    assert!(differs);
}

#[test]
fn opposite_convolution_reverses_order() {
    let mut rng = rng(3);
    for (name, c, a) in convolution_pairs() {
        let (cop, aop) = (c.opposite(), a.opposite());
        for _ in 0..50 {
            let (f, g) = (
                random_operator(&mut rng, c.dim()),
                random_operator(&mut rng, c.dim()),
            );
            assert_eq!(
                convolve_ops(&cop, &aop, &f, &g).unwrap(),
                convolve_ops(&c, &a, &g, &f).unwrap(),
                "{name}"
            );
        }
    }
}

#[test]
fn tensor_convolution_factors() {
    let fx = bialgebra_fixtures();
    let small: Vec<_> = fx.iter().filter(|(_, b)| b.dim() <= 4).collect();
    let mut rng = rng(4);
    let mut quadruples = 0;
    for (n1, b1) in &small {
        for (n2, b2) in &small {
            let c = b1.coalgebra.tensor(&b2.coalgebra);
            let a = b1.algebra.tensor(&b2.algebra);
            for _ in 0..2 {
                let (f, g) = (
                    random_operator(&mut rng, b1.dim()),
                    random_operator(&mut rng, b1.dim()),
                );
                let (f2, g2) = (
                    random_operator(&mut rng, b2.dim()),
                    random_operator(&mut rng, b2.dim()),
                );
                let lhs = convolve_ops(&c, &a, &f.tensor(&f2), &g.tensor(&g2)).unwrap();
                let rhs = convolve_ops(&b1.coalgebra, &b1.algebra, &f, &g)
                    .unwrap()
                    .tensor(&convolve_ops(&b2.coalgebra, &b2.algebra, &f2, &g2).unwrap());
                assert_eq!(lhs, rhs, "{n1} ⊗ {n2}");
                quadruples += 1;
            }
        }
    }
    assert!(quadruples >= 20);
}

#[test]
fn multiplication_is_morphism_iff_commutative() {
    for (name, b) in bialgebra_fixtures() {
        assert_eq!(
            multiplication_is_algebra_morphism(&b.algebra),
            b.algebra.is_commutative(),
            "{name}"
        );
    }
}

#[test]
fn antipode_is_involutive_in_commutative_cocommutative_case() {
    let mut tested = 0;
    for (name, b, s) in strong_with_antipode() {
        if b.algebra.is_commutative() && b.coalgebra.is_cocommutative() {
            assert_eq!(
                s.compose(&s).unwrap(),
                LinearOperator::identity(b.dim()),
                "{name}"
            );
            tested += 1;
        }
    }
    assert!(tested >= 3);
}

#[test]
fn chain_antipode_is_not_involutive() {
    for n in 2..=6 {
        let ib = interval(chain(n).unwrap(), "diff");
        let s = solve_antipode(ib.bialgebra()).unwrap();
        assert_ne!(
            s.compose(&s).unwrap(),
            LinearOperator::identity(ib.dim()),
            "chain({n})"
        );
    }
}

#[test]
fn strong_antipodes_are_antimorphisms() {
    let all = strong_with_antipode();
    assert!(all.iter().any(|(n, _, _)| n == "s3"));
    for (name, b, s) in all {
        let report = check_antimorphism(&b, &s);
        assert!(report.all_ok(), "{name}: {report:?}");
    }
}

#[test]
fn grouplike_elements_are_independent() {
    for (name, b) in bialgebra_fixtures() {
        let g = grouplike_elements(&b);
        assert!(vectors_independent(&g, b.dim()), "{name}");
    }
    let c4 = cyclic_group_algebra(4).unwrap();
    assert_eq!(grouplike_elements(&c4).len(), 4);
}

#[test]
fn opposite_has_same_antipode() {
    for (name, b) in bialgebra_fixtures() {
        if let Some(s) = solve_antipode(&b) {
            assert_eq!(solve_antipode(&b.opposite()), Some(s), "{name}");
        }
    }
}

#[test]
fn tensor_of_antipodes_is_antipode() {
    let cases = [
        (
            cyclic_group_algebra(2).unwrap(),
            cyclic_group_algebra(3).unwrap(),
        ),
        (
            interval(chain(2).unwrap(), "diff").bialgebra().clone(),
            interval(antichain_with_zero(2).unwrap(), "points")
                .bialgebra()
                .clone(),
        ),
        (
            cyclic_group_algebra(2).unwrap(),
            interval(chain(2).unwrap(), "diff").bialgebra().clone(),
        ),
    ];
    for (b1, b2) in cases {
        let (s1, s2) = (solve_antipode(&b1).unwrap(), solve_antipode(&b2).unwrap());
        assert_eq!(solve_antipode(&b1.tensor(&b2)), Some(s1.tensor(&s2)));
    }
}
