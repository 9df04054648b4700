//! Finite-dimensional algebras, coalgebras and bialgebras given by structure
//! constants on a named basis.
//!
//! Tensor spaces `L ⊗ L'` are indexed row-major: the basis pair `(i, j)` has
//! index `i * dim(L') + j`.

mod checks;
mod convolution;
mod fixtures;

pub use checks::{
    check_algebra, check_antimorphism, check_coalgebra, check_mweak, check_strong,
    grouplike_elements, multiplication_is_algebra_morphism, vectors_independent, AxiomCheck,
    AxiomReport, Witness,
};
pub use convolution::{convolution_unit, convolve_ops, solve_antipode, LinearOperator};
pub use fixtures::{
    complex_coalgebra_fixture, cyclic_group_algebra, diagonal_coalgebra, group_algebra,
    matrix_bialgebra, quaternion_fixture, symmetric_group_s3, MAX_MATRIX_ORDER,
};

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalars::{Rational, SparseTensor, SparseVector};

/// An associative unital algebra `(A, ∇, η)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    names: Vec<String>,
    /// `mult[i * dim + j] = ∇(e_i ⊗ e_j)`
    mult: Vec<SparseVector>,
    unit: SparseVector,
}

impl FiniteAlgebra {
    pub fn new(names: Vec<String>, mult: Vec<SparseVector>, unit: SparseVector) -> Result<Self> {
        let d = names.len();
        if mult.len() != d * d {
            return Err(Error::DimensionMismatch(format!(
                "{} structure constants for dimension {d}",
                mult.len()
            )));
        }
        let out_of_range = |v: &SparseVector| v.max_index().is_some_and(|m| m >= d);
        if mult.iter().any(out_of_range) || out_of_range(&unit) {
            return Err(Error::DimensionMismatch("basis index out of range".into()));
        }
        Ok(FiniteAlgebra { names, mult, unit })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &SparseVector {
        &self.unit
    }

    /// `∇(e_i ⊗ e_j)`
    pub fn product(&self, i: usize, j: usize) -> &SparseVector {
        &self.mult[i * self.dim() + j]
    }

    pub fn multiply(&self, x: &SparseVector, y: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(self.product(i, j), &(a * b));
            }
        }
        out
    }

    /// `∇` applied to an element of `A ⊗ A`.
    pub fn multiply_tensor(&self, t: &SparseTensor) -> SparseVector {
        let mut out = SparseVector::new();
        for ((i, j), c) in t.iter() {
            out.add_scaled(self.product(i, j), c);
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (i + 1..d).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// `A^op` with `∇^op = ∇ ∘ t`.
    pub fn opposite(&self) -> FiniteAlgebra {
        let d = self.dim();
        let mult = (0..d * d)
            .map(|ij| self.product(ij % d, ij / d).clone())
            .collect();
        FiniteAlgebra {
            names: self.names.clone(),
            mult,
            unit: self.unit.clone(),
        }
    }

    /// `A ⊗ A'` with multiplication `(∇ ⊗ ∇') ∘ T` and unit `η ⊗ η'`.
    pub fn tensor(&self, other: &FiniteAlgebra) -> FiniteAlgebra {
        let (d1, d2) = (self.dim(), other.dim());
        let d = d1 * d2;
        let mut mult = vec![SparseVector::new(); d * d];
        for i in 0..d1 {
            for j in 0..d2 {
                for k in 0..d1 {
                    for l in 0..d2 {
                        let left = self.product(i, k);
                        let right = other.product(j, l);
                        mult[(i * d2 + j) * d + (k * d2 + l)] = flatten(&left.tensor(right), d2);
                    }
                }
            }
        }
        FiniteAlgebra {
            names: pair_names(&self.names, &other.names),
            mult,
            unit: flatten(&self.unit.tensor(&other.unit), d2),
        }
    }
}

/// A coassociative counital coalgebra `(C, Δ, ε)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCoalgebra {
    names: Vec<String>,
    comult: Vec<SparseTensor>,
    counit: Vec<Rational>,
}

impl FiniteCoalgebra {
    pub fn new(
        names: Vec<String>,
        comult: Vec<SparseTensor>,
        counit: Vec<Rational>,
    ) -> Result<Self> {
        let d = names.len();
        if comult.len() != d || counit.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "coalgebra of dimension {d} with {} coproducts and {} counit values",
                comult.len(),
                counit.len()
            )));
        }
        if comult
            .iter()
            .any(|t| t.iter().any(|((i, j), _)| i >= d || j >= d))
        {
            return Err(Error::DimensionMismatch("basis index out of range".into()));
        }
        Ok(FiniteCoalgebra {
            names,
            comult,
            counit,
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `Δ(e_i)`
    pub fn coproduct(&self, i: usize) -> &SparseTensor {
        &self.comult[i]
    }

    /// `ε(e_i)`
    pub fn counit(&self, i: usize) -> &Rational {
        &self.counit[i]
    }

    pub fn comultiply(&self, x: &SparseVector) -> SparseTensor {
        let mut out = SparseTensor::new();
        for (i, c) in x.iter() {
            out.add_scaled(self.coproduct(i), c);
        }
        out
    }

    pub fn apply_counit(&self, x: &SparseVector) -> Rational {
        x.iter()
            .map(|(i, c)| c * self.counit(i))
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn is_cocommutative(&self) -> bool {
        self.comult.iter().all(|t| t.twisted() == *t)
    }

    /// `C^op` with `Δ^op = t ∘ Δ`.
    pub fn opposite(&self) -> FiniteCoalgebra {
        FiniteCoalgebra {
            names: self.names.clone(),
            comult: self.comult.iter().map(SparseTensor::twisted).collect(),
            counit: self.counit.clone(),
        }
    }

    /// `C ⊗ C'` with comultiplication `T ∘ (Δ ⊗ Δ')` and counit `ε ⊗ ε'`.
    pub fn tensor(&self, other: &FiniteCoalgebra) -> FiniteCoalgebra {
        let (d1, d2) = (self.dim(), other.dim());
        let mut comult = Vec::with_capacity(d1 * d2);
        let mut counit = Vec::with_capacity(d1 * d2);
        for i in 0..d1 {
            for j in 0..d2 {
                let mut t = SparseTensor::new();
                for ((p, q), a) in self.coproduct(i).iter() {
                    for ((r, s), b) in other.coproduct(j).iter() {
                        t.add_term(p * d2 + r, q * d2 + s, a * b);
                    }
                }
                comult.push(t);
                counit.push(self.counit(i) * other.counit(j));
            }
        }
        FiniteCoalgebra {
            names: pair_names(&self.names, &other.names),
            comult,
            counit,
        }
    }
}

/// An algebra and a coalgebra on the same basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBialgebra {
    pub algebra: FiniteAlgebra,
    pub coalgebra: FiniteCoalgebra,
}

impl FiniteBialgebra {
    pub fn new(algebra: FiniteAlgebra, coalgebra: FiniteCoalgebra) -> Result<Self> {
        if algebra.dim() != coalgebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "algebra of dimension {} with coalgebra of dimension {}",
                algebra.dim(),
                coalgebra.dim()
            )));
        }
        Ok(FiniteBialgebra { algebra, coalgebra })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn names(&self) -> &[String] {
        self.algebra.names()
    }

    /// `(L, ∇^op, η; Δ^op, ε)`
    pub fn opposite(&self) -> FiniteBialgebra {
        FiniteBialgebra {
            algebra: self.algebra.opposite(),
            coalgebra: self.coalgebra.opposite(),
        }
    }

    pub fn tensor(&self, other: &FiniteBialgebra) -> FiniteBialgebra {
        tensor_bialgebra(self, other)
    }
}

pub fn opposite_algebra(a: &FiniteAlgebra) -> FiniteAlgebra {
    a.opposite()
}

pub fn opposite_coalgebra(c: &FiniteCoalgebra) -> FiniteCoalgebra {
    c.opposite()
}

/// Tensor product of bialgebras on the row-major product basis.
pub fn tensor_bialgebra(b1: &FiniteBialgebra, b2: &FiniteBialgebra) -> FiniteBialgebra {
    FiniteBialgebra {
        algebra: b1.algebra.tensor(&b2.algebra),
        coalgebra: b1.coalgebra.tensor(&b2.coalgebra),
    }
}

fn flatten(t: &SparseTensor, d2: usize) -> SparseVector {
    let mut v = SparseVector::new();
    for ((i, j), c) in t.iter() {
        v.add_term(i * d2 + j, c.clone());
    }
    v
}

fn pair_names(a: &[String], b: &[String]) -> Vec<String> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| format!("({x}|{y})")))
        .collect()
}

pub(crate) type Tensor3 = BTreeMap<(usize, usize, usize), Rational>;

pub(crate) fn add3(t: &mut Tensor3, key: (usize, usize, usize), c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = t.entry(key).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        t.remove(&key);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    #[test]
    fn quaternion_opposite_differs() {
        let q = quaternion_fixture().algebra;
        let op = q.opposite();
        assert_eq!(*q.product(1, 2), SparseVector::basis(3));
        assert_eq!(*op.product(1, 2), SparseVector::term(3, int(-1)));
        assert_eq!(op.opposite(), q);
        assert!(check_algebra(&op).all_ok());
    }

    #[test]
    fn tensor_unit_is_unit_tensor_unit() {
        let m = matrix_bialgebra(2).unwrap();
        let q = quaternion_fixture();
        let t = tensor_bialgebra(&m, &q);
        assert_eq!(t.dim(), 16);
        let expected = flatten(&m.algebra.unit().tensor(q.algebra.unit()), 4);
        assert_eq!(*t.algebra.unit(), expected);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = quaternion_fixture().algebra;
        let c = complex_coalgebra_fixture();
        assert!(FiniteBialgebra::new(a, c).is_err());
    }
}
