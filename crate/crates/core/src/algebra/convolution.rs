use num_traits::Zero;

use super::{FiniteAlgebra, FiniteBialgebra, FiniteCoalgebra};
use crate::error::{Error, Result};
use crate::scalars::{solve_linear, DenseMatrix, Rational, SparseTensor, SparseVector};

/// A linear endomorphism of a `dim`-dimensional space; column `j` holds the
/// image of basis element `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearOperator {
    matrix: DenseMatrix,
}

impl LinearOperator {
    pub fn from_matrix(matrix: DenseMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch(format!(
                "operator matrix is {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(LinearOperator { matrix })
    }

    pub fn from_images(images: &[SparseVector]) -> Result<Self> {
        let d = images.len();
        let mut m = DenseMatrix::zeros(d, d);
        for (j, v) in images.iter().enumerate() {
            if v.max_index().is_some_and(|i| i >= d) {
                return Err(Error::DimensionMismatch("image outside the space".into()));
            }
            m.set_column(j, v);
        }
        Ok(LinearOperator { matrix: m })
    }

    pub fn identity(dim: usize) -> Self {
        LinearOperator {
            matrix: DenseMatrix::identity(dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        LinearOperator {
            matrix: DenseMatrix::zeros(dim, dim),
        }
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = DenseMatrix::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        LinearOperator { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn image(&self, j: usize) -> SparseVector {
        self.matrix.column(j)
    }

    pub fn apply(&self, x: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (j, c) in x.iter() {
            out.add_scaled(&self.image(j), c);
        }
        out
    }

    /// `(self ⊗ other)(t)`
    pub fn apply_pair(&self, other: &LinearOperator, t: &SparseTensor) -> SparseTensor {
        let mut out = SparseTensor::new();
        for ((p, q), c) in t.iter() {
            out.add_scaled(&self.image(p).tensor(&other.image(q)), c);
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator> {
        Ok(LinearOperator {
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    /// `self ⊗ other` on the row-major product basis.
    pub fn tensor(&self, other: &LinearOperator) -> LinearOperator {
        LinearOperator {
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.dim();
        (0..d).all(|r| (0..d).all(|c| r == c || self.matrix.get(r, c).is_zero()))
    }

    pub fn diagonal_values(&self) -> Vec<Rational> {
        (0..self.dim())
            .map(|i| self.matrix.get(i, i).clone())
            .collect()
    }
}

fn ensure_dims(c: &FiniteCoalgebra, a: &FiniteAlgebra, ops: &[&LinearOperator]) -> Result<()> {
    let d = c.dim();
    if a.dim() != d || ops.iter().any(|f| f.dim() != d) {
        return Err(Error::DimensionMismatch(format!(
            "coalgebra {d}, algebra {}, operators {:?}",
            a.dim(),
            ops.iter().map(|f| f.dim()).collect::<Vec<_>>()
        )));
    }
    Ok(())
}

/// Convolution `f ⋆ g = ∇ ∘ (f ⊗ g) ∘ Δ`.
pub fn convolve_ops(
    c: &FiniteCoalgebra,
    a: &FiniteAlgebra,
    f: &LinearOperator,
    g: &LinearOperator,
) -> Result<LinearOperator> {
    ensure_dims(c, a, &[f, g])?;
    let d = c.dim();
    let f_cols: Vec<SparseVector> = (0..d).map(|j| f.image(j)).collect();
    let g_cols: Vec<SparseVector> = (0..d).map(|j| g.image(j)).collect();
    let mut images = Vec::with_capacity(d);
    for j in 0..d {
        let mut out = SparseVector::new();
        for ((p, q), coeff) in c.coproduct(j).iter() {
            out.add_scaled(&a.multiply(&f_cols[p], &g_cols[q]), coeff);
        }
        images.push(out);
    }
    LinearOperator::from_images(&images)
}

/// The convolution unit `u = η ∘ ε`.
pub fn convolution_unit(c: &FiniteCoalgebra, a: &FiniteAlgebra) -> Result<LinearOperator> {
    ensure_dims(c, a, &[])?;
    let images: Vec<SparseVector> = (0..c.dim()).map(|j| a.unit().scaled(c.counit(j))).collect();
    LinearOperator::from_images(&images)
}

/// Solves `id ⋆ S = u` as a linear system in the `d²` entries of `S`, then
/// verifies both `id ⋆ S = u` and `S ⋆ id = u` exactly. Returns `None` when
/// the system is inconsistent or the candidate fails verification.
pub fn solve_antipode(b: &FiniteBialgebra) -> Option<LinearOperator> {
    let (a, c) = (&b.algebra, &b.coalgebra);
    let d = b.dim();
    // unknown s[m][q] (coefficient of e_m in S(e_q)) at index q * d + m;
    // equation (j, k) at row j * d + k.
    let mut system = DenseMatrix::zeros(d * d, d * d);
    let mut rhs = SparseVector::new();
    for j in 0..d {
        for ((p, q), coeff) in c.coproduct(j).iter() {
            for m in 0..d {
                for (k, v) in a.product(p, m).iter() {
                    system.add_to(j * d + k, q * d + m, &(coeff * v));
                }
            }
        }
        for (k, v) in a.unit().iter() {
            rhs.add_term(j * d + k, v * c.counit(j));
        }
    }
    let x = solve_linear(&system, &rhs).ok()??;
    let mut m = DenseMatrix::zeros(d, d);
    for (idx, v) in x.iter() {
        m.set(idx % d, idx / d, v.clone());
    }
    let s = LinearOperator { matrix: m };
    let id = LinearOperator::identity(d);
    let u = convolution_unit(c, a).ok()?;
    let right = convolve_ops(c, a, &id, &s).ok()?;
    let left = convolve_ops(c, a, &s, &id).ok()?;
    (right == u && left == u).then_some(s)
}
