//! The interval algebra, coalgebra and m-weak bialgebra `L(P, ∼)` on the
//! classes of a bialgebra-compatible relation.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{FiniteAlgebra, FiniteBialgebra, FiniteCoalgebra};
use crate::error::{Error, Result};
use crate::relation::{
    check_compatibility, check_delta_compatible, check_nabla_compatible, check_unitary, ClassId,
    CompatibilityVerdict, IntervalRelation,
};
use crate::scalars::{format_rational, Rational, SparseTensor, SparseVector};

/// Basis name of a class.
pub fn class_name(r: &IntervalRelation, id: ClassId) -> String {
    format!("I_{}", r.key(id))
}

fn basis_names(r: &IntervalRelation) -> Vec<String> {
    (0..r.num_classes()).map(|c| class_name(r, c)).collect()
}

/// `Δ[[a,b]] = Σ_x [[a,x]] ⊗ [[x,b]]` evaluated on one interval.
fn coproduct_of(r: &IntervalRelation, a: usize, b: usize) -> SparseTensor {
    let mut t = SparseTensor::new();
    for x in r.poset().elements_between(a, b) {
        t.add_term(r.class_of(a, x), r.class_of(x, b), Rational::one());
    }
    t
}

fn not_compatible(verdict: CompatibilityVerdict) -> Error {
    Error::NotCompatible(Box::new(verdict))
}

/// Comultiplication from representatives, audited on every member.
fn comultiplication(r: &IntervalRelation) -> Result<Vec<SparseTensor>> {
    let mut comult = Vec::with_capacity(r.num_classes());
    for class in r.classes() {
        let rep = class.representative;
        let t = coproduct_of(r, rep.lo, rep.hi);
        for m in &class.members {
            if coproduct_of(r, m.lo, m.hi) != t {
                return Err(Error::Internal(format!(
                    "coproduct of {} differs from its representative {}",
                    r.interval_label(*m),
                    r.interval_label(rep)
                )));
            }
        }
        comult.push(t);
    }
    Ok(comult)
}

/// `∇(I ⊗ J) = n_{I,J} K`, read off the coproducts: each `(I, J)` has at
/// most one target `K`.
fn multiplication(
    r: &IntervalRelation,
    comult: &[SparseTensor],
) -> Result<BTreeMap<(ClassId, ClassId), (ClassId, Rational)>> {
    let mut table = BTreeMap::new();
    for (k, t) in comult.iter().enumerate() {
        for ((i, j), n) in t.iter() {
            if let Some((other, _)) = table.insert((i, j), (k, n.clone())) {
                return Err(Error::Internal(format!(
                    "{} ⊗ {} multiplies into both {} and {}",
                    r.key(i),
                    r.key(j),
                    r.key(other),
                    r.key(k)
                )));
            }
        }
    }
    Ok(table)
}

fn dense_mult(
    d: usize,
    table: &BTreeMap<(ClassId, ClassId), (ClassId, Rational)>,
) -> Vec<SparseVector> {
    let mut mult = vec![SparseVector::new(); d * d];
    for (&(i, j), (k, n)) in table {
        mult[i * d + j] = SparseVector::term(*k, n.clone());
    }
    mult
}

/// The multiplication table `∇(e_i ⊗ e_j)` (index `i * d + j`) of a
/// relation that is ∇- and Δ-compatible, unit or not.
pub fn interval_product_table(r: &IntervalRelation) -> Result<Vec<SparseVector>> {
    let nabla = check_nabla_compatible(r);
    let delta = check_delta_compatible(r);
    if !nabla.ok || !delta.ok {
        let unitary = check_unitary(r);
        return Err(not_compatible(CompatibilityVerdict {
            nabla,
            delta,
            unitary,
        }));
    }
    let comult = comultiplication(r)?;
    Ok(dense_mult(r.num_classes(), &multiplication(r, &comult)?))
}

/// The interval coalgebra of a Δ-compatible relation.
pub fn interval_coalgebra(r: &IntervalRelation) -> Result<FiniteCoalgebra> {
    let delta = check_delta_compatible(r);
    if !delta.ok {
        let verdict = CompatibilityVerdict {
            nabla: check_nabla_compatible(r),
            delta,
            unitary: check_unitary(r),
        };
        return Err(not_compatible(verdict));
    }
    let comult = comultiplication(r)?;
    let counit = r
        .classes()
        .iter()
        .map(|c| {
            if c.representative.is_point() {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    FiniteCoalgebra::new(basis_names(r), comult, counit)
}

#[derive(Clone, Debug)]
pub struct IntervalBialgebra {
    relation: Arc<IntervalRelation>,
    bialgebra: FiniteBialgebra,
    multiplicities: BTreeMap<(ClassId, ClassId), (ClassId, Rational)>,
    unit: ClassId,
}

pub fn build_interval_bialgebra(r: impl Into<Arc<IntervalRelation>>) -> Result<IntervalBialgebra> {
    let relation = r.into();
    let r = &*relation;
    let verdict = check_compatibility(r);
    if !verdict.is_compatible() {
        return Err(not_compatible(verdict));
    }
    let unit = r
        .point_class()
        .ok_or_else(|| Error::Internal("unitary relation without a point class".into()))?;
    let coalgebra = interval_coalgebra(r)?;
    let comult: Vec<SparseTensor> = (0..r.num_classes())
        .map(|c| coalgebra.coproduct(c).clone())
        .collect();
    let multiplicities = multiplication(r, &comult)?;
    let algebra = FiniteAlgebra::new(
        basis_names(r),
        dense_mult(r.num_classes(), &multiplicities),
        SparseVector::basis(unit),
    )?;
    let bialgebra = FiniteBialgebra::new(algebra, coalgebra)?;
    Ok(IntervalBialgebra {
        relation,
        bialgebra,
        multiplicities,
        unit,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductWitness {
    pub chain: Vec<String>,
    pub left: String,
    pub right: String,
    #[serde(with = "crate::scalars::serde_rational")]
    pub coefficient: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCondition {
    pub ok: bool,
    pub witness: Option<ProductWitness>,
}

#[derive(Serialize)]
struct StructureJson {
    classes: Vec<String>,
    mult: BTreeMap<String, BTreeMap<String, String>>,
    comult: BTreeMap<String, BTreeMap<String, String>>,
}

impl IntervalBialgebra {
    pub fn relation(&self) -> &IntervalRelation {
        &self.relation
    }

    pub fn relation_arc(&self) -> &Arc<IntervalRelation> {
        &self.relation
    }

    pub fn bialgebra(&self) -> &FiniteBialgebra {
        &self.bialgebra
    }

    pub fn dim(&self) -> usize {
        self.bialgebra.dim()
    }

    pub fn unit_class(&self) -> ClassId {
        self.unit
    }

    /// `(K, n_{I,J})` with `∇(I ⊗ J) = n_{I,J} K`, or `None` when the
    /// product vanishes.
    pub fn multiplicity(&self, i: ClassId, j: ClassId) -> Option<(ClassId, &Rational)> {
        self.multiplicities.get(&(i, j)).map(|(k, n)| (*k, n))
    }

    pub fn multiplicities(&self) -> &BTreeMap<(ClassId, ClassId), (ClassId, Rational)> {
        &self.multiplicities
    }

    pub fn class_by_key(&self, key: &str) -> Option<ClassId> {
        self.relation.class_by_key(key)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let r = &*self.relation;
        let mut mult: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for (&(i, j), (k, n)) in &self.multiplicities {
            mult.entry(format!("{},{}", r.key(i), r.key(j)))
                .or_default()
                .insert(r.key(*k).to_string(), format_rational(n));
        }
        let mut comult: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for k in 0..self.dim() {
            let entry = comult.entry(r.key(k).to_string()).or_default();
            for ((i, j), n) in self.bialgebra.coalgebra.coproduct(k).iter() {
                entry.insert(format!("{},{}", r.key(i), r.key(j)), format_rational(n));
            }
        }
        serde_json::to_value(StructureJson {
            classes: r.keys(),
            mult,
            comult,
        })
        .expect("plain data serializes")
    }
}

/// The Hopf square `∇∘Δ` on one class, as `(eigenvalue, class)`.
pub fn hopf_square(ib: &IntervalBialgebra, class: ClassId) -> Result<(Rational, ClassId)> {
    let b = ib.bialgebra();
    let image = b.algebra.multiply_tensor(b.coalgebra.coproduct(class));
    let value = image.get(class);
    if image != SparseVector::term(class, value.clone()) {
        return Err(Error::Internal(format!(
            "Hopf square of {} is not a multiple of it",
            ib.relation().key(class)
        )));
    }
    Ok((value, class))
}

/// Every product `[[a,x]]·[[x,b]]` equals `[[a,b]]` with coefficient 1.
pub fn check_interval_product_condition(ib: &IntervalBialgebra) -> ProductCondition {
    let r = ib.relation();
    let p = r.poset();
    let n = p.len();
    for a in 0..n {
        for x in (0..n).filter(|&x| p.leq(a, x)) {
            for b in (0..n).filter(|&b| p.leq(x, b)) {
                let (i, j) = (r.class_of(a, x), r.class_of(x, b));
                let coefficient = ib
                    .multiplicity(i, j)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(Rational::zero);
                if !coefficient.is_one() {
                    let witness = ProductWitness {
                        chain: [a, x, b].iter().map(|&e| p.label(e).to_string()).collect(),
                        left: r.key(i).to_string(),
                        right: r.key(j).to_string(),
                        coefficient,
                    };
                    return ProductCondition {
                        ok: false,
                        witness: Some(witness),
                    };
                }
            }
        }
    }
    ProductCondition {
        ok: true,
        witness: None,
    }
}
