//! Small hand-built bialgebras used as test beds.

use num_traits::{One, Zero};

use super::{FiniteAlgebra, FiniteBialgebra, FiniteCoalgebra};
use crate::error::{Error, Result};
use crate::scalars::{int, Rational, SparseTensor, SparseVector};

pub const MAX_MATRIX_ORDER: usize = 6;

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// `Δ(b) = b ⊗ b` and `ε(b) = 1` on every basis element.
pub fn diagonal_coalgebra(names: Vec<String>) -> FiniteCoalgebra {
    let d = names.len();
    let comult = (0..d)
        .map(|i| {
            let mut t = SparseTensor::new();
            t.add_term(i, i, Rational::one());
            t
        })
        .collect();
    FiniteCoalgebra::new(names, comult, vec![Rational::one(); d]).expect("well-formed")
}

/// Hamilton's quaternions over the basis `1, i, j, k` with the diagonal
/// coalgebra structure.
pub fn quaternion_fixture() -> FiniteBialgebra {
    // (basis product) as (sign, index) with 1=0, i=1, j=2, k=3
    const TABLE: [[(i64, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let mult = TABLE
        .iter()
        .flat_map(|row| row.iter().map(|&(s, k)| SparseVector::term(k, int(s))))
        .collect();
    let n = names(&["1", "i", "j", "k"]);
    let algebra = FiniteAlgebra::new(n.clone(), mult, SparseVector::basis(0)).expect("well-formed");
    FiniteBialgebra::new(algebra, diagonal_coalgebra(n)).expect("same dimension")
}

/// The `n × n` matrix bialgebra on the units `B_ij` (index `i * n + j`).
pub fn matrix_bialgebra(n: usize) -> Result<FiniteBialgebra> {
    if n == 0 || n > MAX_MATRIX_ORDER {
        return Err(Error::SizeBound {
            what: "matrix order",
            got: n as u64,
            limit: MAX_MATRIX_ORDER as u64,
        });
    }
    let d = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let basis_names: Vec<String> = (0..d)
        .map(|b| format!("B{}{}", b / n + 1, b % n + 1))
        .collect();
    let mut mult = vec![SparseVector::new(); d * d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                mult[idx(i, j) * d + idx(j, l)] = SparseVector::basis(idx(i, l));
            }
        }
    }
    let mut unit = SparseVector::new();
    for i in 0..n {
        unit.add_term(idx(i, i), Rational::one());
    }
    let mut comult = Vec::with_capacity(d);
    let mut counit = Vec::with_capacity(d);
    for i in 0..n {
        for j in 0..n {
            let mut t = SparseTensor::new();
            for k in 0..n {
                t.add_term(idx(i, k), idx(k, j), Rational::one());
            }
            comult.push(t);
            counit.push(if i == j {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
    }
    let algebra = FiniteAlgebra::new(basis_names.clone(), mult, unit)?;
    let coalgebra = FiniteCoalgebra::new(basis_names, comult, counit)?;
    FiniteBialgebra::new(algebra, coalgebra)
}

/// The coalgebra on `1, i` with `Δ(1) = 1⊗1 − i⊗i`, `Δ(i) = 1⊗i + i⊗1`.
pub fn complex_coalgebra_fixture() -> FiniteCoalgebra {
    let mut d1 = SparseTensor::new();
    d1.add_term(0, 0, int(1));
    d1.add_term(1, 1, int(-1));
    let mut di = SparseTensor::new();
    di.add_term(0, 1, int(1));
    di.add_term(1, 0, int(1));
    FiniteCoalgebra::new(names(&["1", "i"]), vec![d1, di], vec![int(1), int(0)])
        .expect("well-formed")
}

/// The group algebra of a finite group given by its Cayley table, with
/// every group element grouplike.
pub fn group_algebra(
    element_names: Vec<String>,
    table: &[Vec<usize>],
    identity: usize,
) -> Result<FiniteBialgebra> {
    let d = element_names.len();
    if table.len() != d || table.iter().any(|row| row.len() != d) {
        return Err(Error::DimensionMismatch(format!(
            "Cayley table for {d} elements"
        )));
    }
    let mult = table
        .iter()
        .flat_map(|row| row.iter().map(|&k| SparseVector::basis(k)))
        .collect();
    let algebra = FiniteAlgebra::new(element_names.clone(), mult, SparseVector::basis(identity))?;
    FiniteBialgebra::new(algebra, diagonal_coalgebra(element_names))
}

pub fn cyclic_group_algebra(n: usize) -> Result<FiniteBialgebra> {
    if n == 0 {
        return Err(Error::InvalidInput("cyclic group of order 0".into()));
    }
    let table: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    let element_names = (0..n).map(|i| format!("g{i}")).collect();
    group_algebra(element_names, &table, 0)
}

/// The group algebra of `S3`; non-commutative, so its antipode is a proper
/// anti-morphism.
pub fn symmetric_group_s3() -> FiniteBialgebra {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let position = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| position([a[b[0]], a[b[1]], a[b[2]]]))
                .collect()
        })
        .collect();
    let element_names = names(&["e", "(12)", "(23)", "(13)", "(123)", "(132)"]);
    group_algebra(element_names, &table, 0).expect("well-formed")
}
