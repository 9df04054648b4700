//! Exact rational scalars, sparse vectors and tensors over an indexed basis,
//! and an exact Gaussian-elimination solver.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` in canonical form.
pub fn rational_normalize(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num.into(), den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `p/q`, or `p` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses the `p/q` / `p` form produced by [`format_rational`].
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("not a rational: `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            rational_normalize(p, q)
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub(crate) mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    #[allow(dead_code)]
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// A vector with finitely many nonzero coordinates. Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVector {
    entries: BTreeMap<usize, Rational>,
}

impl SparseVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, Rational::one())
    }

    pub fn term(i: usize, c: Rational) -> Self {
        let mut v = Self::new();
        v.add_term(i, c);
        v
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        let mut v = Self::new();
        for (i, c) in values.iter().enumerate() {
            v.add_term(i, c.clone());
        }
        v
    }

    pub fn get(&self, i: usize) -> Rational {
        self.entries.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, i: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(i).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&i);
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &SparseVector, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (&i, v) in &other.entries {
            self.add_term(i, v * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> SparseVector {
        let mut out = SparseVector::new();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        (0..dim).map(|i| self.get(i)).collect()
    }

    /// Outer product `self ⊗ other`.
    pub fn tensor(&self, other: &SparseVector) -> SparseTensor {
        let mut t = SparseTensor::new();
        for (i, a) in self.iter() {
            for (j, b) in other.iter() {
                t.add_term(i, j, a * b);
            }
        }
        t
    }

    /// Renders the vector with the given basis names, e.g. `2*i - k`.
    pub fn render(&self, names: &[String]) -> String {
        render_terms(self.iter().map(|(i, c)| (name_of(names, i), c)))
    }
}

/// An element of `L ⊗ L` with finitely many nonzero coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseTensor {
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseTensor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn add_scaled(&mut self, other: &SparseTensor, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (&(i, j), v) in &other.entries {
            self.add_term(i, j, v * c);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.entries.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Applies the twist `a ⊗ b ↦ b ⊗ a`.
    pub fn twisted(&self) -> SparseTensor {
        SparseTensor {
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        render_terms(
            self.iter()
                .map(|((i, j), c)| (format!("{}⊗{}", name_of(names, i), name_of(names, j)), c)),
        )
    }
}

fn name_of(names: &[String], i: usize) -> String {
    names.get(i).cloned().unwrap_or_else(|| format!("e{i}"))
}

pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (String, &'a Rational)>) -> String {
    let mut out = String::new();
    for (name, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(&name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Row-major dense matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<Rational>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            cells: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_cells(rows: usize, cols: usize, cells: Vec<Rational>) -> Result<Self> {
        if cells.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} cells for a {rows}x{cols} matrix",
                cells.len()
            )));
        }
        Ok(DenseMatrix { rows, cols, cells })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_cells(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.cells[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.cells[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        self.cells[r * self.cols + c] += v;
    }

    pub fn column(&self, c: usize) -> SparseVector {
        let mut v = SparseVector::new();
        for r in 0..self.rows {
            v.add_term(r, self.get(r, c).clone());
        }
        v
    }

    pub fn set_column(&mut self, c: usize, v: &SparseVector) {
        for r in 0..self.rows {
            self.set(r, c, v.get(r));
        }
    }

    pub fn mul_vec(&self, x: &SparseVector) -> Result<SparseVector> {
        if x.max_index().is_some_and(|m| m >= self.cols) {
            return Err(Error::DimensionMismatch(format!(
                "vector index beyond {} columns",
                self.cols
            )));
        }
        let mut out = SparseVector::new();
        for (c, xc) in x.iter() {
            for r in 0..self.rows {
                let a = self.get(r, c);
                if !a.is_zero() {
                    out.add_term(r, a * xc);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; row/column index `(i, j) ↦ i * other.dim + j`.
    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if !b.is_zero() {
                            out.set(r1 * other.rows + r2, c1 * other.cols + c2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce(None).len()
    }

    /// Reduces to reduced row echelon form in place, applying the same row
    /// operations to `rhs`. Pivots are the first nonzero entry found scanning
    /// columns left to right. Returns the pivot columns.
    fn row_reduce(&mut self, mut rhs: Option<&mut Vec<Rational>>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.cells.swap(p * self.cols + c, row * self.cols + c);
                }
                if let Some(b) = rhs.as_deref_mut() {
                    b.swap(p, row);
                }
            }
            let inv = self.get(row, col).recip();
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            if let Some(b) = rhs.as_deref_mut() {
                b[row] = &b[row] * &inv;
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let pv = self.get(row, c);
                    if !pv.is_zero() {
                        let v = self.get(r, c) - &factor * pv;
                        self.set(r, c, v);
                    }
                }
                if let Some(b) = rhs.as_deref_mut() {
                    let v = &b[r] - &factor * &b[row];
                    b[r] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Solves `a · x = b` exactly. Returns `None` when the system is
/// inconsistent; free variables of an underdetermined system are set to zero.
pub fn solve_linear(a: &DenseMatrix, b: &SparseVector) -> Result<Option<SparseVector>> {
    if b.max_index().is_some_and(|m| m >= a.rows) {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has index {} but matrix has {} rows",
            b.max_index().unwrap_or(0),
            a.rows
        )));
    }
    let mut m = a.clone();
    let mut rhs = b.to_dense(a.rows);
    let pivots = m.row_reduce(Some(&mut rhs));
    if rhs[pivots.len()..].iter().any(|v| !v.is_zero()) {
        return Ok(None);
    }
    let mut x = SparseVector::new();
    for (row, &col) in pivots.iter().enumerate() {
        x.add_term(col, rhs[row].clone());
    }
    Ok(Some(x))
}
