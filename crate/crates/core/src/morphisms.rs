//! Maps between interval spaces given class by class, and the pullbacks
//! they induce on incidence functions.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::incidence::{basis_function, mobius, star, unit_function, IncidenceFunction, Outcome};
use crate::interval_bialgebra::interval_coalgebra;
use crate::poset::{boolean_lattice, divisor_lattice};
use crate::relation::{relation_from_key, ClassId, IntervalRelation};
use crate::sampling::{random_incidence_function, rng};
use crate::scalars::{int, SparseTensor};

/// A linear map `L(P, ∼) → L(Q, ≈)` sending each class to a single class.
#[derive(Clone, Debug)]
pub struct ClassMap {
    source: Arc<IntervalRelation>,
    target: Arc<IntervalRelation>,
    map: Vec<ClassId>,
}

#[derive(Serialize)]
struct ClassMapJson {
    map: BTreeMap<String, String>,
}

impl ClassMap {
    pub fn new(
        source: Arc<IntervalRelation>,
        target: Arc<IntervalRelation>,
        map: Vec<ClassId>,
    ) -> Result<Self> {
        if map.len() != source.num_classes() {
            return Err(Error::DimensionMismatch(format!(
                "class map has {} entries for {} source classes",
                map.len(),
                source.num_classes()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&c| c >= target.num_classes()) {
            return Err(Error::InvalidInput(format!(
                "target class {bad} out of range"
            )));
        }
        Ok(ClassMap {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &Arc<IntervalRelation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<IntervalRelation> {
        &self.target
    }

    pub fn map(&self) -> &[ClassId] {
        &self.map
    }

    pub fn apply(&self, class: ClassId) -> ClassId {
        self.map[class]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.num_classes()];
        self.map
            .iter()
            .all(|&c| !std::mem::replace(&mut seen[c], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.num_classes()];
        for &c in &self.map {
            hit[c] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map = self
            .map
            .iter()
            .enumerate()
            .map(|(s, &t)| {
                (
                    self.source.key(s).to_string(),
                    self.target.key(t).to_string(),
                )
            })
            .collect();
        serde_json::to_value(ClassMapJson { map }).expect("string map serializes")
    }
}

/// The projection from a finer relation onto a coarser one on the same poset.
pub fn refinement_projection(
    fine: &Arc<IntervalRelation>,
    coarse: &Arc<IntervalRelation>,
) -> Result<ClassMap> {
    if !fine.same_poset(coarse) {
        return Err(Error::Precondition(
            "refinement needs a common poset".into(),
        ));
    }
    let mut map = Vec::with_capacity(fine.num_classes());
    for class in fine.classes() {
        let rep = class.representative;
        let target = coarse.class_of(rep.lo, rep.hi);
        if let Some(m) = class
            .members
            .iter()
            .find(|m| coarse.class_of(m.lo, m.hi) != target)
        {
            return Err(Error::NotRefinement(
                fine.interval_label(rep),
                fine.interval_label(*m),
            ));
        }
        map.push(target);
    }
    ClassMap::new(fine.clone(), coarse.clone(), map)
}

/// `g*(Ψ) = Ψ ∘ g`.
pub fn dual_pullback(g: &ClassMap, psi: &IncidenceFunction) -> Result<IncidenceFunction> {
    if !psi.relation().same_relation(&g.target) {
        return Err(Error::RelationMismatch);
    }
    Ok(IncidenceFunction::from_fn(&g.source, |c| {
        psi.value(g.map[c]).clone()
    }))
}

fn pullback_pair(g: &ClassMap, phi: &IncidenceFunction, psi: &IncidenceFunction) -> Result<bool> {
    let lhs = dual_pullback(g, &star(phi, psi)?)?;
    let rhs = star(&dual_pullback(g, phi)?, &dual_pullback(g, psi)?)?;
    Ok(lhs == rhs)
}

fn unit_preserved(g: &ClassMap) -> Result<bool> {
    Ok(dual_pullback(g, &unit_function(&g.target))? == unit_function(&g.source))
}

/// Tests `g*(Φ⋆Ψ) = g*Φ ⋆ g*Ψ` on `samples` seeded random pairs, and
/// `g*(U) = U`.
pub fn check_pullback_morphism(g: &ClassMap, samples: usize, seed: u64) -> Result<Outcome> {
    if !unit_preserved(g)? {
        return Ok(Outcome {
            ok: false,
            witness: Some("unit".into()),
        });
    }
    let mut rng = rng(seed);
    for i in 0..samples {
        let phi = random_incidence_function(&mut rng, &g.target);
        let psi = random_incidence_function(&mut rng, &g.target);
        if !pullback_pair(g, &phi, &psi)? {
            return Ok(Outcome {
                ok: false,
                witness: Some(format!("sample {i}")),
            });
        }
    }
    Ok(Outcome {
        ok: true,
        witness: None,
    })
}

/// As [`check_pullback_morphism`], on every pair of basis functions.
pub fn check_pullback_morphism_exhaustive(g: &ClassMap) -> Result<Outcome> {
    if !unit_preserved(g)? {
        return Ok(Outcome {
            ok: false,
            witness: Some("unit".into()),
        });
    }
    let t = &g.target;
    let basis: Vec<_> = (0..t.num_classes()).map(|c| basis_function(t, c)).collect();
    for (i, phi) in basis.iter().enumerate() {
        for (j, psi) in basis.iter().enumerate() {
            if !pullback_pair(g, phi, psi)? {
                return Ok(Outcome {
                    ok: false,
                    witness: Some(format!("I_{} ⋆ I_{}", t.key(i), t.key(j))),
                });
            }
        }
    }
    Ok(Outcome {
        ok: true,
        witness: None,
    })
}

/// Tests `Δ∘g = (g⊗g)∘Δ` and `ε∘g = ε` between the interval coalgebras.
pub fn check_coalgebra_morphism(g: &ClassMap) -> Result<Outcome> {
    let src = interval_coalgebra(&g.source)?;
    let dst = interval_coalgebra(&g.target)?;
    for c in 0..src.dim() {
        let image = g.map[c];
        if src.counit(c) != dst.counit(image) {
            return Ok(Outcome {
                ok: false,
                witness: Some(format!("counit on I_{}", g.source.key(c))),
            });
        }
        let mut pushed = SparseTensor::new();
        for ((i, j), v) in src.coproduct(c).iter() {
            pushed.add_term(g.map[i], g.map[j], v.clone());
        }
        if pushed != *dst.coproduct(image) {
            return Ok(Outcome {
                ok: false,
                witness: Some(format!("coproduct of I_{}", g.source.key(c))),
            });
        }
    }
    Ok(Outcome {
        ok: true,
        witness: None,
    })
}

#[derive(Clone, Debug)]
pub struct SquarefreeReport {
    pub n: u64,
    pub primes: Vec<u64>,
    /// boolean lattice on the primes with `setdiff` → divisors of `n` with `ratio`
    pub map: ClassMap,
    pub morphism_ok: bool,
    pub section_ok: bool,
    pub mobius_ok: bool,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Extends each basis function of the source along the inverse of a
/// bijective class map and checks that pulling back recovers it.
fn section_is_identity(g: &ClassMap) -> Result<bool> {
    let mut inverse = vec![0; g.target.num_classes()];
    for (s, &t) in g.map.iter().enumerate() {
        inverse[t] = s;
    }
    for c in 0..g.source.num_classes() {
        let phi = basis_function(&g.source, c);
        let extended = IncidenceFunction::from_fn(&g.target, |t| phi.value(inverse[t]).clone());
        if dual_pullback(g, &extended)? != phi {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For squarefree `n` with prime factors `p_1 < … < p_k`, the class map
/// sending `[A, B]` in the boolean lattice of rank `k` to the ratio class of
/// `Π_{i ∈ B∖A} p_i`, together with checks that its pullback is an algebra
/// morphism, that it is bijective on classes, and that it carries the
/// divisor Möbius function to the boolean one.
pub fn squarefree_restriction(n: u64) -> Result<SquarefreeReport> {
    if n == 0 {
        return Err(Error::InvalidInput("squarefree restriction of 0".into()));
    }
    let primes = prime_factors(n);
    if primes.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::NotSquarefree(n));
    }
    let target = Arc::new(relation_from_key(divisor_lattice(n)?, "ratio")?);
    let source = Arc::new(relation_from_key(
        boolean_lattice(primes.len())?,
        "setdiff",
    )?);
    let map = source
        .classes()
        .iter()
        .map(|class| {
            let diff = class.representative.hi & !class.representative.lo;
            let m: u64 = (0..primes.len())
                .filter(|b| diff >> b & 1 == 1)
                .map(|b| primes[b])
                .product();
            target
                .class_by_key(&m.to_string())
                .ok_or_else(|| Error::Internal(format!("no ratio class {m}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let map = ClassMap::new(source.clone(), target.clone(), map)?;
    let morphism_ok = check_pullback_morphism_exhaustive(&map)?.ok;
    let section_ok = map.is_injective() && map.is_surjective() && section_is_identity(&map)?;
    let pulled = dual_pullback(&map, &mobius(&target))?;
    let mobius_ok = pulled == mobius(&source)
        && source.classes().iter().enumerate().all(|(c, class)| {
            let k = (class.representative.hi & !class.representative.lo).count_ones();
            *pulled.value(c) == int(if k % 2 == 0 { 1 } else { -1 })
        });
    Ok(SquarefreeReport {
        n,
        primes,
        map,
        morphism_ok,
        section_ok,
        mobius_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::chain;

    fn rel(p: crate::poset::Poset, key: &str) -> Arc<IntervalRelation> {
        Arc::new(relation_from_key(p, key).unwrap())
    }

    #[test]
    fn trivial_to_diff_projection() {
        let p = Arc::new(chain(4).unwrap());
        let fine = rel_arc(&p, "trivial");
        let coarse = rel_arc(&p, "diff");
        let g = refinement_projection(&fine, &coarse).unwrap();
        assert!(check_pullback_morphism(&g, 5, 7).unwrap().ok);
        assert!(check_pullback_morphism_exhaustive(&g).unwrap().ok);
        assert!(check_coalgebra_morphism(&g).unwrap().ok);
        assert!(g.is_surjective() && !g.is_injective());
        assert_eq!(g.to_json()["map"]["[1,3]"], "2");
    }

    fn rel_arc(p: &Arc<crate::poset::Poset>, key: &str) -> Arc<IntervalRelation> {
        Arc::new(relation_from_key(p.clone(), key).unwrap())
    }

    #[test]
    fn wrong_direction_is_rejected() {
        let p = Arc::new(chain(3).unwrap());
        let err = refinement_projection(&rel_arc(&p, "diff"), &rel_arc(&p, "trivial")).unwrap_err();
        assert!(matches!(err, Error::NotRefinement(..)));
        let other = rel(chain(4).unwrap(), "diff");
        assert!(refinement_projection(&rel_arc(&p, "trivial"), &other).is_err());
    }

    #[test]
    fn squarefree() {
        for n in [1, 2, 6, 30, 210] {
            let rep = squarefree_restriction(n).unwrap();
            assert!(
                rep.morphism_ok && rep.section_ok && rep.mobius_ok,
                "n = {n}"
            );
        }
        let rep = squarefree_restriction(30).unwrap();
        assert_eq!(rep.primes, vec![2, 3, 5]);
        assert_eq!(rep.map.to_json()["map"]["{1,3}"], "10");
        assert!(matches!(
            squarefree_restriction(12),
            Err(Error::NotSquarefree(12))
        ));
    }

    #[test]
    fn pullback_rejects_foreign_function() {
        let p = Arc::new(chain(2).unwrap());
        let g = refinement_projection(&rel_arc(&p, "trivial"), &rel_arc(&p, "diff")).unwrap();
        let stranger = unit_function(&rel(chain(2).unwrap(), "points"));
        assert!(matches!(
            dual_pullback(&g, &stranger),
            Err(Error::RelationMismatch)
        ));
    }
}
