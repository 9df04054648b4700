//! Seeded random inputs for property checks.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::LinearOperator;
use crate::incidence::IncidenceFunction;
use crate::poset::Poset;
use crate::relation::IntervalRelation;
use crate::scalars::{ratio, DenseMatrix, Rational, SparseVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 4`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn random_nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn random_vector(rng: &mut impl Rng, dim: usize) -> SparseVector {
    SparseVector::from_dense(&(0..dim).map(|_| random_rational(rng)).collect::<Vec<_>>())
}

pub fn random_operator(rng: &mut impl Rng, dim: usize) -> LinearOperator {
    let cells = (0..dim * dim).map(|_| random_rational(rng)).collect();
    LinearOperator::from_matrix(DenseMatrix::from_cells(dim, dim, cells).expect("square"))
        .expect("square")
}

/// Random values on every class; point classes get nonzero values so the
/// result is invertible.
pub fn random_incidence_function(
    rng: &mut impl Rng,
    r: &Arc<IntervalRelation>,
) -> IncidenceFunction {
    IncidenceFunction::from_fn(r, |c| {
        if r.class(c).representative.is_point() {
            random_nonzero_rational(rng)
        } else {
            random_rational(rng)
        }
    })
}

/// As [`random_incidence_function`] but with value 1 on point classes.
pub fn random_unital_function(rng: &mut impl Rng, r: &Arc<IntervalRelation>) -> IncidenceFunction {
    IncidenceFunction::from_fn(r, |c| {
        if r.class(c).representative.is_point() {
            Rational::one()
        } else {
            random_rational(rng)
        }
    })
}

/// Transitive closure of a random DAG on `0..n` whose edges go upward in
/// index, then relabelled by a random permutation.
pub fn random_poset(rng: &mut impl Rng, n: usize, edge_probability: f64) -> Poset {
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
        for j in i + 1..n {
            if rng.gen_bool(edge_probability) {
                leq[i * n + j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), rng);
    let mut shuffled = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            shuffled[perm[i] * n + perm[j]] = leq[i * n + j];
        }
    }
    let labels = (0..n).map(|i| format!("x{i}")).collect();
    Poset::from_leq(labels, shuffled).expect("closure of a DAG is a partial order")
}
