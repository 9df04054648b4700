//! Truncated power series and Dirichlet series, and the maps taking
//! incidence functions of the chain, boolean and divisor families to them.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::incidence::{star, star_inverse, IncidenceFunction, Outcome};
use crate::poset::boolean_lattice;
use crate::relation::{relation_from_key, IntervalRelation, RelationJson};
use crate::scalars::{format_rational, int, Rational};

pub const MAX_BERNOULLI: usize = 60;
pub const MAX_CLASSICAL_MOBIUS: usize = 1_000_000;
/// Rank of the boolean lattice used for the incidence-side Bernoulli numbers.
pub const BERNOULLI_LATTICE_RANK: usize = 10;

fn serialize_coeffs<S: Serializer>(
    coeffs: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(coeffs.len()))?;
    for c in coeffs {
        seq.serialize_element(&format_rational(c))?;
    }
    seq.end()
}

/// `c_0 + c_1 X + … + c_N X^N`, valid modulo `X^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPowerSeries {
    coeffs: Vec<Rational>,
}

impl Serialize for TruncatedPowerSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_coeffs(&self.coeffs, s)
    }
}

impl TruncatedPowerSeries {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "power series needs at least c_0".into(),
            ));
        }
        Ok(TruncatedPowerSeries { coeffs })
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        TruncatedPowerSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::from_fn(order, |n| {
            if n == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// `Σ X^n`
    pub fn geometric(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::one())
    }

    /// `Σ (±1)^n X^n / n!`
    pub fn exp(order: usize, negate: bool) -> Self {
        let mut c = Rational::one();
        Self::from_fn(order, |n| {
            if n > 0 {
                c /= int(n as i64);
            }
            if negate && n % 2 == 1 {
                -c.clone()
            } else {
                c.clone()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn to_csv(&self) -> String {
        coeff_csv(self.coeffs.iter().enumerate())
    }
}

fn coeff_csv<'a>(rows: impl Iterator<Item = (usize, &'a Rational)>) -> String {
    let mut out = String::from("n,coefficient\n");
    for (n, c) in rows {
        out.push_str(&format!("{n},{}\n", format_rational(c)));
    }
    out
}

/// Cauchy product modulo `X^{N+1}`.
pub fn ps_mul(f: &TruncatedPowerSeries, g: &TruncatedPowerSeries) -> Result<TruncatedPowerSeries> {
    if f.order() != g.order() {
        return Err(Error::DimensionMismatch(format!(
            "power series of orders {} and {}",
            f.order(),
            g.order()
        )));
    }
    Ok(TruncatedPowerSeries::from_fn(f.order(), |n| {
        (0..=n).fold(Rational::zero(), |acc, k| {
            acc + &f.coeffs[k] * &g.coeffs[n - k]
        })
    }))
}

pub fn ps_inverse(f: &TruncatedPowerSeries) -> Option<TruncatedPowerSeries> {
    let c0 = &f.coeffs[0];
    if c0.is_zero() {
        return None;
    }
    let mut inv: Vec<Rational> = Vec::with_capacity(f.coeffs.len());
    inv.push(c0.recip());
    for n in 1..f.coeffs.len() {
        let s = (1..=n).fold(Rational::zero(), |acc, k| acc + &f.coeffs[k] * &inv[n - k]);
        inv.push(-s / c0);
    }
    Some(TruncatedPowerSeries { coeffs: inv })
}

/// `Σ_{n=1}^{N} φ_n n^{-s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedDirichletSeries {
    /// `coeffs[n - 1] = φ_n`
    coeffs: Vec<Rational>,
}

impl Serialize for TruncatedDirichletSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_coeffs(&self.coeffs, s)
    }
}

impl TruncatedDirichletSeries {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "Dirichlet series needs at least φ_1".into(),
            ));
        }
        Ok(TruncatedDirichletSeries { coeffs })
    }

    pub fn from_fn(bound: usize, mut f: impl FnMut(usize) -> Rational) -> Self {
        TruncatedDirichletSeries {
            coeffs: (1..=bound).map(&mut f).collect(),
        }
    }

    pub fn unit(bound: usize) -> Self {
        Self::from_fn(bound, |n| {
            if n == 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// The truncated Riemann zeta function `Σ n^{-s}`.
    pub fn zeta(bound: usize) -> Self {
        Self::from_fn(bound, |_| Rational::one())
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len()
    }

    /// `φ_n` for `1 ≤ n ≤ N`.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n - 1]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn to_csv(&self) -> String {
        coeff_csv(self.coeffs.iter().enumerate().map(|(i, c)| (i + 1, c)))
    }
}

/// `(f·g)_n = Σ_{d|n} f_d g_{n/d}`.
pub fn dirichlet_mul(
    f: &TruncatedDirichletSeries,
    g: &TruncatedDirichletSeries,
) -> Result<TruncatedDirichletSeries> {
    let n = f.bound();
    if g.bound() != n {
        return Err(Error::DimensionMismatch(format!(
            "Dirichlet series with bounds {n} and {}",
            g.bound()
        )));
    }
    let mut out = vec![Rational::zero(); n];
    for d in 1..=n {
        let fd = f.coeff(d);
        if fd.is_zero() {
            continue;
        }
        for k in 1..=n / d {
            let gk = g.coeff(k);
            if !gk.is_zero() {
                out[d * k - 1] += fd * gk;
            }
        }
    }
    Ok(TruncatedDirichletSeries { coeffs: out })
}

pub fn dirichlet_inverse(f: &TruncatedDirichletSeries) -> Option<TruncatedDirichletSeries> {
    let f1 = f.coeff(1);
    if f1.is_zero() {
        return None;
    }
    let n = f.bound();
    // acc[m - 1] = Σ_{d|m, d>1} f_d g_{m/d}, filled as each g_k becomes known
    let mut acc = vec![Rational::zero(); n];
    let mut g = Vec::with_capacity(n);
    for k in 1..=n {
        let target = if k == 1 {
            Rational::one()
        } else {
            Rational::zero()
        };
        let gk = (target - &acc[k - 1]) / f1;
        if !gk.is_zero() {
            for d in 2..=n / k {
                let fd = f.coeff(d);
                if !fd.is_zero() {
                    acc[d * k - 1] += fd * &gk;
                }
            }
        }
        g.push(gk);
    }
    Some(TruncatedDirichletSeries { coeffs: g })
}

/// `μ(n)` for `n ≤ N` from the smallest-prime-factor sieve.
fn mobius_by_factorization(n: usize) -> Vec<i8> {
    let mut spf = vec![0usize; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            for j in (i..=n).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i;
                }
            }
        }
    }
    let mut mu = vec![0i8; n + 1];
    if n >= 1 {
        mu[1] = 1;
    }
    for i in 2..=n {
        let p = spf[i];
        let rest = i / p;
        mu[i] = if rest.is_multiple_of(p) { 0 } else { -mu[rest] };
    }
    mu
}

/// `μ_1..μ_N` by Dirichlet inversion of `ζ`, cross-checked against the
/// factorization formula.
pub fn classical_mobius(n: usize) -> Result<Vec<Rational>> {
    if n > MAX_CLASSICAL_MOBIUS {
        return Err(Error::SizeBound {
            what: "classical Möbius bound",
            got: n as u64,
            limit: MAX_CLASSICAL_MOBIUS as u64,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mu = dirichlet_inverse(&TruncatedDirichletSeries::zeta(n)).expect("ζ_1 = 1");
    let formula = mobius_by_factorization(n);
    for (k, &f) in formula.iter().enumerate().skip(1) {
        if *mu.coeff(k) != int(f as i64) {
            return Err(Error::Internal(format!(
                "Möbius value at {k} disagrees with factorization"
            )));
        }
    }
    Ok(mu.coeffs)
}

fn bernoulli_bound(n: usize) -> Result<()> {
    if n > MAX_BERNOULLI {
        return Err(Error::SizeBound {
            what: "Bernoulli index",
            got: n as u64,
            limit: MAX_BERNOULLI as u64,
        });
    }
    Ok(())
}

/// `β_0..β_N` by inverting `(e^X − 1)/X = Σ X^n/(n+1)!` and scaling by `n!`.
pub fn bernoulli_series(n: usize) -> Result<Vec<Rational>> {
    bernoulli_bound(n)?;
    let mut fact = Rational::one();
    let f = TruncatedPowerSeries::from_fn(n, |k| {
        fact /= int(k as i64 + 1);
        fact.clone()
    });
    let inv = ps_inverse(&f).expect("constant term 1");
    let mut fact = Rational::one();
    Ok((0..=n)
        .map(|k| {
            if k > 0 {
                fact *= int(k as i64);
            }
            inv.coeff(k) * &fact
        })
        .collect())
}

/// `β_0..β_N` as the convolution inverse of `Φ(I_n) = 1/(n+1)` on the
/// boolean lattice with the cardinality relation; indices beyond the
/// lattice rank continue by `Ψ(I_n) = −Σ_{k<n} C(n,k) Ψ(I_k) Φ(I_{n−k})`.
pub fn bernoulli_incidence(n: usize) -> Result<Vec<Rational>> {
    bernoulli_bound(n)?;
    let rank = n.min(BERNOULLI_LATTICE_RANK);
    let r = Arc::new(relation_from_key(boolean_lattice(rank)?, "cardinality")?);
    let phi = IncidenceFunction::from_fn(&r, |c| {
        let k: i64 = r.key(c).parse().expect("cardinality keys are counts");
        Rational::new(1.into(), (k + 1).into())
    });
    let psi = star_inverse(&phi).expect("Φ(I_0) = 1");
    let mut beta: Vec<Rational> = (0..=rank)
        .map(|k| {
            psi.value_by_key(&k.to_string())
                .expect("class present")
                .clone()
        })
        .collect();
    for m in rank + 1..=n {
        let mut binom = Rational::one();
        let mut s = Rational::zero();
        for (k, b) in beta.iter().enumerate() {
            s += &binom * b / int((m - k + 1) as i64);
            binom = binom * int((m - k) as i64) / int(k as i64 + 1);
        }
        beta.push(-s);
    }
    Ok(beta)
}

/// `β_0..β_N`, computed both ways and required to agree.
pub fn bernoulli(n: usize) -> Result<Vec<Rational>> {
    let a = bernoulli_series(n)?;
    let b = bernoulli_incidence(n)?;
    if a != b {
        let k = a.iter().zip(&b).position(|(x, y)| x != y).unwrap_or(0);
        return Err(Error::Internal(format!(
            "Bernoulli paths disagree at index {k}"
        )));
    }
    Ok(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesFamily {
    /// chain with the difference relation, `Σ Φ(I_n) X^n`
    Chain,
    /// boolean lattice with the cardinality relation, `Σ Φ(I_n)/n! X^n`
    BooleanCardinality,
    /// divisor lattice with the ratio relation, `Σ Φ(I_n) n^{-s}`
    DivisorRatio,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Series {
    Power(TruncatedPowerSeries),
    Dirichlet(TruncatedDirichletSeries),
}

fn expect_builtin(r: &IntervalRelation, name: &str) -> Result<()> {
    match r.spec() {
        RelationJson::Builtin(b) if b == name => Ok(()),
        _ => Err(Error::Precondition(format!(
            "series family needs the {name} relation, got {}",
            r.name()
        ))),
    }
}

fn count_keys(r: &IntervalRelation) -> Result<Vec<usize>> {
    r.keys()
        .iter()
        .map(|k| {
            k.parse()
                .map_err(|_| Error::Precondition(format!("class key `{k}` is not a count")))
        })
        .collect()
}

/// The generating series of `phi` in the given family.
pub fn incidence_to_series(phi: &IncidenceFunction, family: SeriesFamily) -> Result<Series> {
    let r = phi.relation();
    match family {
        SeriesFamily::Chain | SeriesFamily::BooleanCardinality => {
            let is_chain = family == SeriesFamily::Chain;
            expect_builtin(r, if is_chain { "diff" } else { "cardinality" })?;
            let keys = count_keys(r)?;
            let order = keys.iter().copied().max().unwrap_or(0);
            if keys.len() != order + 1 {
                return Err(Error::Precondition("classes are not I_0..I_N".into()));
            }
            let mut coeffs = vec![Rational::zero(); order + 1];
            let mut fact = vec![Rational::one(); order + 1];
            for k in 1..=order {
                fact[k] = &fact[k - 1] * int(k as i64);
            }
            for (c, &k) in keys.iter().enumerate() {
                coeffs[k] = if is_chain {
                    phi.value(c).clone()
                } else {
                    phi.value(c) / &fact[k]
                };
            }
            Ok(Series::Power(TruncatedPowerSeries::new(coeffs)?))
        }
        SeriesFamily::DivisorRatio => {
            expect_builtin(r, "ratio")?;
            let keys = count_keys(r)?;
            let bound = keys.iter().copied().max().unwrap_or(1);
            let mut coeffs = vec![Rational::zero(); bound];
            for (c, &k) in keys.iter().enumerate() {
                coeffs[k - 1] = phi.value(c).clone();
            }
            Ok(Series::Dirichlet(TruncatedDirichletSeries::new(coeffs)?))
        }
    }
}

/// Checks that the series of `Φ ⋆ Ψ` is the product of the series. For the
/// divisor family the comparison runs over the indices that carry a class;
/// products of two classes may land outside the truncated lattice.
pub fn check_series_morphism(
    phi: &IncidenceFunction,
    psi: &IncidenceFunction,
    family: SeriesFamily,
) -> Result<Outcome> {
    let product = star(phi, psi)?;
    let (sp, sf, sg) = (
        incidence_to_series(&product, family)?,
        incidence_to_series(phi, family)?,
        incidence_to_series(psi, family)?,
    );
    let mismatch = match (sp, sf, sg) {
        (Series::Power(p), Series::Power(f), Series::Power(g)) => {
            let fg = ps_mul(&f, &g)?;
            (0..=p.order()).find(|&n| p.coeff(n) != fg.coeff(n))
        }
        (Series::Dirichlet(p), Series::Dirichlet(f), Series::Dirichlet(g)) => {
            let fg = dirichlet_mul(&f, &g)?;
            count_keys(phi.relation())?
                .into_iter()
                .find(|&n| p.coeff(n) != fg.coeff(n))
        }
        _ => unreachable!("one family yields one kind of series"),
    };
    Ok(match mismatch {
        None => Outcome {
            ok: true,
            witness: None,
        },
        Some(n) => Outcome {
            ok: false,
            witness: Some(n.to_string()),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{mobius, zeta};
    use crate::poset::{chain, divisor_lattice};
    use crate::scalars::ratio;

    #[test]
    fn geometric_inverse() {
        let mut one_minus_x = TruncatedPowerSeries::one(6);
        one_minus_x.coeffs[1] = int(-1);
        assert_eq!(
            ps_inverse(&one_minus_x).unwrap(),
            TruncatedPowerSeries::geometric(6)
        );
        assert_eq!(
            ps_inverse(&TruncatedPowerSeries::one(3)).unwrap(),
            TruncatedPowerSeries::one(3)
        );
        assert!(ps_inverse(&TruncatedPowerSeries::from_fn(3, |n| int(n as i64))).is_none());
    }

    #[test]
    fn exp_inverse() {
        assert_eq!(
            ps_inverse(&TruncatedPowerSeries::exp(8, false)).unwrap(),
            TruncatedPowerSeries::exp(8, true)
        );
    }

    #[test]
    fn bernoulli_small() {
        let b = bernoulli(4).unwrap();
        assert_eq!(
            b,
            vec![int(1), ratio(-1, 2), ratio(1, 6), int(0), ratio(-1, 30)]
        );
        assert_eq!(bernoulli(14).unwrap()[14], ratio(7, 6));
        assert!(bernoulli(61).is_err());
    }

    #[test]
    fn classical_mobius_small() {
        let mu = classical_mobius(30).unwrap();
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(mu[k], int(*e));
        }
        assert_eq!(mu[29], int(-1));
        let s: Rational = [1, 2, 3, 4, 6, 12].iter().map(|&d| mu[d - 1].clone()).sum();
        assert!(s.is_zero());
    }

    #[test]
    fn dirichlet_identities() {
        let z = TruncatedDirichletSeries::zeta(20);
        let u = TruncatedDirichletSeries::unit(20);
        let inv = dirichlet_inverse(&z).unwrap();
        assert_eq!(dirichlet_mul(&z, &inv).unwrap(), u);
        assert_eq!(dirichlet_mul(&u, &z).unwrap(), z);
        let f = TruncatedDirichletSeries::from_fn(20, |n| ratio(n as i64, 3));
        assert_eq!(
            dirichlet_mul(&f, &z).unwrap(),
            dirichlet_mul(&z, &f).unwrap()
        );
        assert!(
            dirichlet_inverse(&TruncatedDirichletSeries::from_fn(3, |n| int(n as i64 - 1)))
                .is_none()
        );
    }

    #[test]
    fn chain_generating_functions() {
        let r = Arc::new(relation_from_key(chain(6).unwrap(), "diff").unwrap());
        assert_eq!(
            incidence_to_series(&zeta(&r), SeriesFamily::Chain).unwrap(),
            Series::Power(TruncatedPowerSeries::geometric(6))
        );
        let mut one_minus_x = TruncatedPowerSeries::one(6);
        one_minus_x.coeffs[1] = int(-1);
        assert_eq!(
            incidence_to_series(&mobius(&r), SeriesFamily::Chain).unwrap(),
            Series::Power(one_minus_x)
        );
        assert!(incidence_to_series(&zeta(&r), SeriesFamily::DivisorRatio).is_err());
    }

    #[test]
    fn divisor_generating_function() {
        let r = Arc::new(relation_from_key(divisor_lattice(12).unwrap(), "ratio").unwrap());
        let Series::Dirichlet(z) =
            incidence_to_series(&zeta(&r), SeriesFamily::DivisorRatio).unwrap()
        else {
            panic!("expected a Dirichlet series")
        };
        for n in 1..=12 {
            assert_eq!(*z.coeff(n), if 12 % n == 0 { int(1) } else { int(0) });
        }
        assert!(
            check_series_morphism(&zeta(&r), &mobius(&r), SeriesFamily::DivisorRatio)
                .unwrap()
                .ok
        );
    }
}
