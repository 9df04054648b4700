//! The incidence algebra `I(P, ∼)` of functions on interval classes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{convolve_ops, LinearOperator};
use crate::error::{Error, Result};
use crate::interval_bialgebra::{check_interval_product_condition, IntervalBialgebra};
use crate::relation::{relation_from_key, ClassId, IntervalRelation, RelationJson};
use crate::scalars::{format_rational, parse_rational, Rational, SparseVector};

#[derive(Clone, Debug)]
pub struct IncidenceFunction {
    relation: Arc<IntervalRelation>,
    values: Vec<Rational>,
}

impl PartialEq for IncidenceFunction {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && same_relation(&self.relation, &other.relation)
    }
}

fn same_relation(a: &Arc<IntervalRelation>, b: &Arc<IntervalRelation>) -> bool {
    Arc::ptr_eq(a, b) || a.same_relation(b)
}

#[derive(Serialize)]
struct FunctionJson<'a> {
    relation: &'a RelationJson,
    values: BTreeMap<&'a str, String>,
}

impl IncidenceFunction {
    pub fn new(relation: Arc<IntervalRelation>, values: Vec<Rational>) -> Result<Self> {
        if values.len() != relation.num_classes() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} classes",
                values.len(),
                relation.num_classes()
            )));
        }
        Ok(IncidenceFunction { relation, values })
    }

    pub fn from_fn(relation: &Arc<IntervalRelation>, f: impl FnMut(ClassId) -> Rational) -> Self {
        let values = (0..relation.num_classes()).map(f).collect();
        IncidenceFunction {
            relation: relation.clone(),
            values,
        }
    }

    /// Reads values keyed by class key; every class must be present.
    pub fn from_keyed(
        relation: &Arc<IntervalRelation>,
        values: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut out = vec![None; relation.num_classes()];
        for (key, v) in values {
            let id = relation
                .class_by_key(key)
                .ok_or_else(|| Error::InvalidInput(format!("no class keyed `{key}`")))?;
            out[id] = Some(parse_rational(v)?);
        }
        let values = out
            .into_iter()
            .enumerate()
            .map(|(id, v)| {
                v.ok_or_else(|| {
                    Error::InvalidInput(format!("missing value for `{}`", relation.key(id)))
                })
            })
            .collect::<Result<_>>()?;
        IncidenceFunction::new(relation.clone(), values)
    }

    pub fn relation(&self) -> &Arc<IntervalRelation> {
        &self.relation
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, class: ClassId) -> &Rational {
        &self.values[class]
    }

    pub fn value_by_key(&self, key: &str) -> Option<&Rational> {
        self.relation.class_by_key(key).map(|c| &self.values[c])
    }

    /// `Φ([[a, b]])`
    pub fn at(&self, a: usize, b: usize) -> &Rational {
        &self.values[self.relation.class_of(a, b)]
    }

    /// Pointwise product, the composition of diagonal operators.
    pub fn pointwise(&self, other: &IncidenceFunction) -> Result<IncidenceFunction> {
        check_same(self, other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| x * y)
            .collect();
        IncidenceFunction::new(self.relation.clone(), values)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let values = (0..self.values.len())
            .map(|c| (self.relation.key(c), format_rational(&self.values[c])))
            .collect();
        serde_json::to_value(FunctionJson {
            relation: self.relation.spec(),
            values,
        })
        .expect("plain data serializes")
    }

    /// `class_key,value` rows in class order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("class_key,value\n");
        for (c, v) in self.values.iter().enumerate() {
            out.push_str(&format!(
                "{},{}\n",
                csv_field(self.relation.key(c)),
                format_rational(v)
            ));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn check_same(a: &IncidenceFunction, b: &IncidenceFunction) -> Result<()> {
    if same_relation(&a.relation, &b.relation) {
        Ok(())
    } else {
        Err(Error::RelationMismatch)
    }
}

/// `(Φ ⋆ Ψ)([a, b]) = Σ_{a⪯x⪯b} Φ([[a,x]]) Ψ([[x,b]])` on one interval.
pub fn star_on_interval(
    phi: &IncidenceFunction,
    psi: &IncidenceFunction,
    a: usize,
    b: usize,
) -> Rational {
    let r = &phi.relation;
    r.poset()
        .elements_between(a, b)
        .into_iter()
        .map(|x| phi.at(a, x) * psi.at(x, b))
        .fold(Rational::zero(), |acc, v| acc + v)
}

pub fn star(phi: &IncidenceFunction, psi: &IncidenceFunction) -> Result<IncidenceFunction> {
    check_same(phi, psi)?;
    let r = &phi.relation;
    let values: Vec<Rational> = r
        .classes()
        .iter()
        .map(|c| star_on_interval(phi, psi, c.representative.lo, c.representative.hi))
        .collect();
    #[cfg(debug_assertions)]
    if r.intervals().len() <= AUDIT_LIMIT {
        audit_star(phi, psi, &values);
    }
    IncidenceFunction::new(r.clone(), values)
}

/// Largest relation, in intervals, whose star products are re-evaluated on
/// every class member in debug builds.
pub const AUDIT_LIMIT: usize = 20_000;

#[cfg(debug_assertions)]
fn audit_star(phi: &IncidenceFunction, psi: &IncidenceFunction, values: &[Rational]) {
    for (c, v) in phi.relation.classes().iter().zip(values) {
        for m in &c.members {
            debug_assert_eq!(
                star_on_interval(phi, psi, m.lo, m.hi),
                *v,
                "star depends on the representative of {}",
                c.key
            );
        }
    }
}

/// The unit `U`: 1 on point classes, 0 elsewhere.
pub fn unit_function(r: &Arc<IntervalRelation>) -> IncidenceFunction {
    IncidenceFunction::from_fn(r, |c| {
        if r.class(c).representative.is_point() {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

pub fn zeta(r: &Arc<IntervalRelation>) -> IncidenceFunction {
    IncidenceFunction::from_fn(r, |_| Rational::one())
}

/// `Φ_I`: 1 on the class `I`, 0 elsewhere.
pub fn basis_function(r: &Arc<IntervalRelation>, class: ClassId) -> IncidenceFunction {
    IncidenceFunction::from_fn(r, |c| {
        if c == class {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// `Σ_K v_K Φ_K` for an element `v` of the interval space.
pub fn embed_element(r: &Arc<IntervalRelation>, v: &SparseVector) -> IncidenceFunction {
    IncidenceFunction::from_fn(r, |c| v.get(c))
}

/// The two-sided convolution inverse, absent iff some point value is zero.
/// Classes are processed in size order, so the recursion only reads
/// strictly smaller intervals.
pub fn star_inverse(phi: &IncidenceFunction) -> Option<IncidenceFunction> {
    let r = &phi.relation;
    let p = r.poset();
    let mut psi: Vec<Option<Rational>> = vec![None; r.num_classes()];
    for (id, class) in r.classes().iter().enumerate() {
        let (a, b) = (class.representative.lo, class.representative.hi);
        let pivot = phi.at(b, b);
        if pivot.is_zero() {
            return None;
        }
        if a == b {
            psi[id] = Some(pivot.recip());
            continue;
        }
        let mut sum = Rational::zero();
        for x in p.elements_between(a, b) {
            if x == b {
                continue;
            }
            let left = psi[r.class_of(a, x)]
                .as_ref()
                .expect("smaller classes come first");
            sum += left * phi.at(x, b);
        }
        psi[id] = Some(-sum / pivot);
    }
    let inverse = IncidenceFunction::new(
        r.clone(),
        psi.into_iter().map(|v| v.expect("filled")).collect(),
    )
    .ok()?;
    let u = unit_function(r);
    let left = star(&inverse, phi).ok()?;
    let right = star(phi, &inverse).ok()?;
    (left == u && right == u).then_some(inverse)
}

pub fn mobius(r: &Arc<IntervalRelation>) -> IncidenceFunction {
    star_inverse(&zeta(r)).expect("zeta is invertible")
}

/// Cross-checks the class-level Möbius function against the interval-level
/// one of the trivial relation on the same poset.
pub fn audit_mobius(r: &Arc<IntervalRelation>) -> Result<()> {
    let classwise = mobius(r);
    let trivial = Arc::new(relation_from_key(r.poset_arc().clone(), "trivial")?);
    let fine = mobius(&trivial);
    for iv in r.intervals() {
        if fine.at(iv.lo, iv.hi) != classwise.at(iv.lo, iv.hi) {
            return Err(Error::Internal(format!(
                "Möbius value on {} disagrees with its class {}",
                r.interval_label(*iv),
                r.key(r.class_of(iv.lo, iv.hi))
            )));
        }
    }
    Ok(())
}

/// `Φ̂`: the diagonal operator `I ↦ Φ(I) I`.
pub fn hat(phi: &IncidenceFunction) -> LinearOperator {
    LinearOperator::diagonal(&phi.values)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub ok: bool,
    pub witness: Option<String>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome {
            ok: true,
            witness: None,
        }
    }

    fn fail(witness: String) -> Self {
        Outcome {
            ok: false,
            witness: Some(witness),
        }
    }
}

fn check_on(ib: &IntervalBialgebra, f: &IncidenceFunction) -> Result<()> {
    if same_relation(f.relation(), ib.relation_arc()) {
        Ok(())
    } else {
        Err(Error::RelationMismatch)
    }
}

/// `hat(Φ ⋆ Ψ) = hat(Φ) ⋆ hat(Ψ)` in the convolution algebra of `L`.
pub fn check_hat_homomorphism(
    ib: &IntervalBialgebra,
    phi: &IncidenceFunction,
    psi: &IncidenceFunction,
) -> Result<Outcome> {
    check_on(ib, phi)?;
    check_on(ib, psi)?;
    let cond = check_interval_product_condition(ib);
    if let Some(w) = cond.witness {
        return Err(Error::Precondition(format!(
            "product of {} and {} has coefficient {} along ({})",
            w.left,
            w.right,
            format_rational(&w.coefficient),
            w.chain.join(",")
        )));
    }
    let b = ib.bialgebra();
    let lhs = hat(&star(phi, psi)?);
    let rhs = convolve_ops(&b.coalgebra, &b.algebra, &hat(phi), &hat(psi))?;
    for c in 0..ib.dim() {
        if lhs.image(c) != rhs.image(c) {
            return Ok(Outcome::fail(ib.relation().key(c).to_string()));
        }
    }
    Ok(Outcome::pass())
}

/// `(φ ⋆ ψ)([[0̂,a]]) = φ([[0̂,a]]) + ψ([[0̂,a]])` for every atom `a`, for
/// functions with value 1 on the point class.
pub fn check_atom_additivity(
    ib: &IntervalBialgebra,
    phi: &IncidenceFunction,
    psi: &IncidenceFunction,
) -> Result<Outcome> {
    check_on(ib, phi)?;
    check_on(ib, psi)?;
    let r = ib.relation();
    let p = r.poset();
    let zero = p.minimum().ok_or(Error::NoUniqueMinimum)?;
    let unit = ib.unit_class();
    for (name, f) in [("phi", phi), ("psi", psi)] {
        if !f.value(unit).is_one() {
            return Err(Error::Precondition(format!(
                "{name} takes {} on the point class, not 1",
                format_rational(f.value(unit))
            )));
        }
    }
    let product = star(phi, psi)?;
    for a in p.atoms()? {
        let c = r.class_of(zero, a);
        if *product.value(c) != phi.value(c) + psi.value(c) {
            return Ok(Outcome::fail(p.label(a).to_string()));
        }
    }
    Ok(Outcome::pass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{convolution_unit, solve_antipode};
    use crate::interval_bialgebra::build_interval_bialgebra;
    use crate::poset::{boolean_lattice, chain, divisor_lattice, Poset};
    use crate::scalars::{int, ratio};

    fn rel(p: Poset, key: &str) -> Arc<IntervalRelation> {
        Arc::new(relation_from_key(p, key).unwrap())
    }

    #[test]
    fn zeta_squared_counts() {
        let r = rel(chain(5).unwrap(), "diff");
        let z = zeta(&r);
        let zz = star(&z, &z).unwrap();
        for n in 0..=5 {
            assert_eq!(*zz.value_by_key(&n.to_string()).unwrap(), int(n + 1));
        }
    }

    #[test]
    fn mobius_values() {
        let r = rel(chain(4).unwrap(), "diff");
        let m = mobius(&r);
        let expected = [1, -1, 0, 0, 0];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(*m.value_by_key(&k.to_string()).unwrap(), int(*e));
        }
        let r = rel(divisor_lattice(12).unwrap(), "ratio");
        let m = mobius(&r);
        assert_eq!(*m.value_by_key("12").unwrap(), int(0));
        assert_eq!(*m.value_by_key("6").unwrap(), int(1));
        let r = rel(divisor_lattice(30).unwrap(), "ratio");
        assert_eq!(*mobius(&r).value_by_key("30").unwrap(), int(-1));
        let r = rel(boolean_lattice(3).unwrap(), "cardinality");
        let m = mobius(&r);
        for k in 0..=3 {
            assert_eq!(
                *m.value_by_key(&k.to_string()).unwrap(),
                int((-1i64).pow(k))
            );
        }
        audit_mobius(&r).unwrap();
    }

    #[test]
    fn unit_laws() {
        let r = rel(divisor_lattice(12).unwrap(), "ratio");
        let phi = IncidenceFunction::from_fn(&r, |c| ratio(c as i64 + 2, 3));
        let u = unit_function(&r);
        assert_eq!(star(&u, &phi).unwrap(), phi);
        assert_eq!(star(&phi, &u).unwrap(), phi);
        let z = zeta(&r);
        assert_eq!(star(&z, &mobius(&r)).unwrap(), u);
    }

    #[test]
    fn non_invertible() {
        let r = rel(chain(3).unwrap(), "diff");
        let phi = IncidenceFunction::from_fn(&r, |c| if c == 0 { int(0) } else { int(1) });
        assert!(star_inverse(&phi).is_none());
    }

    #[test]
    fn relation_mismatch() {
        let a = rel(chain(3).unwrap(), "diff");
        let b = rel(chain(3).unwrap(), "trivial");
        assert!(matches!(
            star(&zeta(&a), &zeta(&b)),
            Err(Error::RelationMismatch)
        ));
        let c = rel(chain(3).unwrap(), "diff");
        assert!(star(&zeta(&a), &zeta(&c)).is_ok());
    }

    #[test]
    fn hat_images() {
        let ib = build_interval_bialgebra(relation_from_key(chain(3).unwrap(), "diff").unwrap())
            .unwrap();
        let r = ib.relation_arc().clone();
        assert_eq!(hat(&zeta(&r)), LinearOperator::identity(4));
        let b = ib.bialgebra();
        assert_eq!(
            hat(&unit_function(&r)),
            convolution_unit(&b.coalgebra, &b.algebra).unwrap()
        );
        assert_eq!(solve_antipode(b).unwrap(), hat(&mobius(&r)));
    }

    #[test]
    fn hat_precondition() {
        let ib = build_interval_bialgebra(
            relation_from_key(boolean_lattice(2).unwrap(), "cardinality").unwrap(),
        )
        .unwrap();
        let z = zeta(ib.relation_arc());
        assert!(matches!(
            check_hat_homomorphism(&ib, &z, &z),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn atom_additivity_precondition() {
        let ib = build_interval_bialgebra(
            relation_from_key(divisor_lattice(12).unwrap(), "ratio").unwrap(),
        )
        .unwrap();
        let r = ib.relation_arc().clone();
        let two = IncidenceFunction::from_fn(&r, |_| int(2));
        assert!(check_atom_additivity(&ib, &two, &zeta(&r)).is_err());
        assert!(
            check_atom_additivity(&ib, &zeta(&r), &mobius(&r))
                .unwrap()
                .ok
        );
    }

    #[test]
    fn serialization() {
        let r = rel(divisor_lattice(6).unwrap(), "ratio");
        let m = mobius(&r);
        assert_eq!(m.to_csv(), "class_key,value\n1,1\n2,-1\n3,-1\n6,1\n");
        let j = m.to_json();
        assert_eq!(j["relation"]["builtin"], "ratio");
        assert_eq!(j["values"]["6"], "1");
        let keyed: BTreeMap<String, String> = serde_json::from_value(j["values"].clone()).unwrap();
        assert_eq!(IncidenceFunction::from_keyed(&r, &keyed).unwrap(), m);
    }
}
