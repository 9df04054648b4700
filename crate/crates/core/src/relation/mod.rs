//! Equivalence relations on the intervals of a poset and the three
//! compatibility conditions that make the quotient an interval bialgebra.

mod canon;
mod matching;

pub use canon::{canonical_form, MAX_CANON_SIZE};
pub use matching::perfect_matching;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{parse_subset_label, Interval, Poset};

pub type ClassId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    Trivial,
    Points,
    SetDiff,
    Cardinality,
    Diff,
    Ratio,
    Isotype,
}

impl Builtin {
    pub const ALL: [Builtin; 7] = [
        Builtin::Trivial,
        Builtin::Points,
        Builtin::SetDiff,
        Builtin::Cardinality,
        Builtin::Diff,
        Builtin::Ratio,
        Builtin::Isotype,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Trivial => "trivial",
            Builtin::Points => "points",
            Builtin::SetDiff => "setdiff",
            Builtin::Cardinality => "cardinality",
            Builtin::Diff => "diff",
            Builtin::Ratio => "ratio",
            Builtin::Isotype => "isotype",
        }
    }

    pub fn parse(key: &str) -> Result<Builtin> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == key)
            .ok_or_else(|| Error::InvalidInput(format!("unknown relation `{key}`")))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Relation JSON: `{"builtin":"ratio"}` or `{"partition":[[["a","b"], ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationJson {
    Builtin(String),
    Partition(Vec<Vec<(String, String)>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub key: String,
    pub representative: Interval,
    pub members: Vec<Interval>,
}

#[derive(Clone, Debug)]
pub struct IntervalRelation {
    poset: Arc<Poset>,
    spec: RelationJson,
    intervals: Vec<Interval>,
    /// dense `n × n` table; `NONE` off the intervals
    class_table: Vec<u32>,
    classes: Vec<ClassInfo>,
    key_index: HashMap<String, ClassId>,
}

const NONE: u32 = u32::MAX;

/// Numbers compare numerically, everything else as strings.
pub(crate) fn key_order(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        _ => a.cmp(b),
    }
}

impl IntervalRelation {
    fn from_keys(poset: Arc<Poset>, spec: RelationJson, keys: Vec<String>) -> Self {
        let intervals = poset.all_intervals();
        let mut grouped: HashMap<&str, Vec<Interval>> = HashMap::new();
        for (iv, key) in intervals.iter().zip(&keys) {
            grouped.entry(key.as_str()).or_default().push(*iv);
        }
        let mut classes: Vec<ClassInfo> = grouped
            .into_iter()
            .map(|(key, members)| ClassInfo {
                key: key.to_string(),
                representative: members[0],
                members,
            })
            .collect();
        classes.sort_by(|x, y| {
            poset
                .interval_size(x.representative)
                .cmp(&poset.interval_size(y.representative))
                .then_with(|| key_order(&x.key, &y.key))
        });
        let n = poset.len();
        let mut class_table = vec![NONE; n * n];
        let mut key_index = HashMap::with_capacity(classes.len());
        for (id, c) in classes.iter().enumerate() {
            for iv in &c.members {
                class_table[iv.lo * n + iv.hi] = id as u32;
            }
            key_index.insert(c.key.clone(), id);
        }
        IntervalRelation {
            poset,
            spec,
            intervals,
            class_table,
            classes,
            key_index,
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn poset_arc(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn spec(&self) -> &RelationJson {
        &self.spec
    }

    pub fn name(&self) -> &str {
        match &self.spec {
            RelationJson::Builtin(b) => b,
            RelationJson::Partition(_) => "partition",
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class(&self, id: ClassId) -> &ClassInfo {
        &self.classes[id]
    }

    pub fn key(&self, id: ClassId) -> &str {
        &self.classes[id].key
    }

    pub fn keys(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.key.clone()).collect()
    }

    pub fn class_by_key(&self, key: &str) -> Option<ClassId> {
        self.key_index.get(key).copied()
    }

    /// Class of `[a, b]`; panics if `a ⋠ b`.
    #[inline]
    pub fn class_of(&self, a: usize, b: usize) -> ClassId {
        let c = self.class_table[a * self.poset.len() + b];
        assert!(c != NONE, "[{a},{b}] is not an interval");
        c as ClassId
    }

    pub fn class_of_interval(&self, iv: Interval) -> Result<ClassId> {
        self.poset.interval(iv.lo, iv.hi)?;
        Ok(self.class_of(iv.lo, iv.hi))
    }

    /// The class holding every point interval, if there is exactly one.
    pub fn point_class(&self) -> Option<ClassId> {
        let n = self.poset.len();
        if n == 0 {
            return None;
        }
        let first = self.class_of(0, 0);
        (0..n)
            .all(|a| self.class_of(a, a) == first)
            .then_some(first)
    }

    pub fn interval_label(&self, iv: Interval) -> String {
        format!("[{},{}]", self.poset.label(iv.lo), self.poset.label(iv.hi))
    }

    /// Same underlying poset.
    pub fn same_poset(&self, other: &IntervalRelation) -> bool {
        Arc::ptr_eq(&self.poset, &other.poset) || *self.poset == *other.poset
    }

    /// Same poset and same partition into classes.
    pub fn same_relation(&self, other: &IntervalRelation) -> bool {
        self.same_poset(other) && self.classes == other.classes
    }

    /// True when every class of `self` lies inside one class of `coarse`.
    pub fn refines(&self, coarse: &IntervalRelation) -> bool {
        self.same_poset(coarse)
            && self.classes.iter().all(|c| {
                let target = coarse.class_of(c.representative.lo, c.representative.hi);
                c.members
                    .iter()
                    .all(|m| coarse.class_of(m.lo, m.hi) == target)
            })
    }

    pub fn to_json(&self) -> RelationJson {
        self.spec.clone()
    }
}

/// Builds a builtin relation by name.
pub fn relation_from_key(poset: impl Into<Arc<Poset>>, key: &str) -> Result<IntervalRelation> {
    let builtin = Builtin::parse(key)?;
    let poset = poset.into();
    let keys = builtin_keys(&poset, builtin)?;
    Ok(IntervalRelation::from_keys(
        poset,
        RelationJson::Builtin(builtin.name().to_string()),
        keys,
    ))
}

/// Builds a relation from an explicit partition of the intervals, given as
/// label pairs.
pub fn relation_from_partition(
    poset: impl Into<Arc<Poset>>,
    partition: &[Vec<(String, String)>],
) -> Result<IntervalRelation> {
    let poset = poset.into();
    let n = poset.len();
    let mut owner = vec![usize::MAX; n * n];
    for (c, class) in partition.iter().enumerate() {
        if class.is_empty() {
            return Err(Error::InvalidPartition(format!("class {c} is empty")));
        }
        for (a, b) in class {
            let (ia, ib) = (poset.index_of(a)?, poset.index_of(b)?);
            poset.interval(ia, ib)?;
            if owner[ia * n + ib] != usize::MAX {
                return Err(Error::InvalidPartition(format!("[{a},{b}] appears twice")));
            }
            owner[ia * n + ib] = c;
        }
    }
    let intervals = poset.all_intervals();
    let mut first_member: Vec<Option<Interval>> = vec![None; partition.len()];
    for iv in &intervals {
        let c = owner[iv.lo * n + iv.hi];
        if c == usize::MAX {
            return Err(Error::InvalidPartition(format!(
                "[{},{}] is not covered",
                poset.label(iv.lo),
                poset.label(iv.hi)
            )));
        }
        first_member[c].get_or_insert(*iv);
    }
    let keys = intervals
        .iter()
        .map(|iv| {
            let rep = first_member[owner[iv.lo * n + iv.hi]].expect("covered");
            format!("[{},{}]", poset.label(rep.lo), poset.label(rep.hi))
        })
        .collect();
    Ok(IntervalRelation::from_keys(
        poset,
        RelationJson::Partition(partition.to_vec()),
        keys,
    ))
}

pub fn relation_from_json(
    poset: impl Into<Arc<Poset>>,
    spec: &RelationJson,
) -> Result<IntervalRelation> {
    match spec {
        RelationJson::Builtin(key) => relation_from_key(poset, key),
        RelationJson::Partition(p) => relation_from_partition(poset, p),
    }
}

fn inapplicable(b: Builtin, needs: &'static str) -> Error {
    Error::InapplicableRelation {
        relation: b.name().to_string(),
        needs,
    }
}

fn integer_labels(p: &Poset, b: Builtin, needs: &'static str) -> Result<Vec<i64>> {
    p.labels()
        .iter()
        .map(|l| l.parse::<i64>().map_err(|_| inapplicable(b, needs)))
        .collect()
}

fn builtin_keys(p: &Poset, b: Builtin) -> Result<Vec<String>> {
    let intervals = p.all_intervals();
    let plain = |iv: &Interval| format!("[{},{}]", p.label(iv.lo), p.label(iv.hi));
    let keys = match b {
        Builtin::Trivial => intervals.iter().map(plain).collect(),
        Builtin::Points => intervals
            .iter()
            .map(|iv| {
                if iv.is_point() {
                    "point".to_string()
                } else {
                    plain(iv)
                }
            })
            .collect(),
        Builtin::SetDiff | Builtin::Cardinality => {
            const NEEDS: &str = "subset-labelled elements such as {1,2} ordered by inclusion";
            let sets: Vec<BTreeSet<u64>> = p
                .labels()
                .iter()
                .map(|l| parse_subset_label(l).ok_or_else(|| inapplicable(b, NEEDS)))
                .collect::<Result<_>>()?;
            intervals
                .iter()
                .map(|iv| {
                    let (lo, hi) = (&sets[iv.lo], &sets[iv.hi]);
                    if !lo.is_subset(hi) {
                        return Err(inapplicable(b, NEEDS));
                    }
                    let diff: Vec<String> = hi.difference(lo).map(u64::to_string).collect();
                    Ok(if b == Builtin::SetDiff {
                        format!("{{{}}}", diff.join(","))
                    } else {
                        diff.len().to_string()
                    })
                })
                .collect::<Result<_>>()?
        }
        Builtin::Diff => {
            let v = integer_labels(p, b, "integer-labelled elements")?;
            intervals
                .iter()
                .map(|iv| (v[iv.hi] - v[iv.lo]).to_string())
                .collect()
        }
        Builtin::Ratio => {
            const NEEDS: &str = "positive-integer labels ordered by divisibility";
            let v = integer_labels(p, b, NEEDS)?;
            if v.iter().any(|&x| x <= 0) {
                return Err(inapplicable(b, NEEDS));
            }
            intervals
                .iter()
                .map(|iv| {
                    let (lo, hi) = (v[iv.lo], v[iv.hi]);
                    if hi % lo != 0 {
                        return Err(inapplicable(b, NEEDS));
                    }
                    Ok((hi / lo).to_string())
                })
                .collect::<Result<_>>()?
        }
        Builtin::Isotype => intervals
            .iter()
            .map(|iv| canonical_form(p, &p.elements_between(iv.lo, iv.hi)))
            .collect::<Result<_>>()?,
    };
    Ok(keys)
}

/// A failing instance: two tuples of poset elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationWitness {
    #[serde(skip)]
    pub first: Vec<usize>,
    #[serde(skip)]
    pub second: Vec<usize>,
    #[serde(rename = "first")]
    pub first_labels: Vec<String>,
    #[serde(rename = "second")]
    pub second_labels: Vec<String>,
}

impl RelationWitness {
    fn new(p: &Poset, first: Vec<usize>, second: Vec<usize>) -> Self {
        let labels = |v: &[usize]| v.iter().map(|&x| p.label(x).to_string()).collect();
        RelationWitness {
            first_labels: labels(&first),
            second_labels: labels(&second),
            first,
            second,
        }
    }
}

impl fmt::Display for RelationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) vs ({})",
            self.first_labels.join(","),
            self.second_labels.join(",")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub ok: bool,
    pub witness: Option<RelationWitness>,
}

impl CheckResult {
    fn from_witness(witness: Option<RelationWitness>) -> Self {
        CheckResult {
            ok: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityVerdict {
    pub nabla: CheckResult,
    pub delta: CheckResult,
    pub unitary: CheckResult,
}

impl CompatibilityVerdict {
    pub fn is_compatible(&self) -> bool {
        self.nabla.ok && self.delta.ok && self.unitary.ok
    }

    pub fn summary(&self) -> String {
        let part = |name: &str, c: &CheckResult| match &c.witness {
            None => format!("{name} pass"),
            Some(w) => format!("{name} fail at {w}"),
        };
        [
            part("nabla", &self.nabla),
            part("delta", &self.delta),
            part("unitary", &self.unitary),
        ]
        .join("; ")
    }
}

/// All point intervals share one class. The witness is the first point
/// against the first point outside its class.
pub fn check_unitary(r: &IntervalRelation) -> CheckResult {
    let n = r.poset().len();
    let witness = (1..n)
        .find(|&a| r.class_of(a, a) != r.class_of(0, 0))
        .map(|a| RelationWitness::new(r.poset(), vec![0, 0], vec![a, a]));
    CheckResult::from_witness(witness)
}

/// `[a,b]∼[a',b']`, `[b,c]∼[b',c']` ⇒ `[a,c]∼[a',c']`, over every pair of
/// chains. The witness is the first conflicting chain in lexicographic order
/// together with the earliest chain it conflicts with.
pub fn check_nabla_compatible(r: &IntervalRelation) -> CheckResult {
    let p = r.poset();
    let n = p.len();
    let mut seen: HashMap<(ClassId, ClassId), (ClassId, [usize; 3])> = HashMap::new();
    for a in 0..n {
        for b in (0..n).filter(|&b| p.leq(a, b)) {
            let left = r.class_of(a, b);
            for c in (0..n).filter(|&c| p.leq(b, c)) {
                let key = (left, r.class_of(b, c));
                let target = r.class_of(a, c);
                match seen.get(&key) {
                    None => {
                        seen.insert(key, (target, [a, b, c]));
                    }
                    Some((t, first)) if *t != target => {
                        let w = RelationWitness::new(p, first.to_vec(), vec![a, b, c]);
                        return CheckResult::from_witness(Some(w));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    CheckResult::from_witness(None)
}

/// A bijection `f: [a,b] → [a',b']` with `[a,x]∼[a',f(x)]` and
/// `[x,b]∼[f(x),b']` for every `x`, as `(x, f(x))` pairs.
pub fn find_delta_bijection(
    r: &IntervalRelation,
    i: Interval,
    j: Interval,
) -> Option<Vec<(usize, usize)>> {
    let p = r.poset();
    let left = p.elements_between(i.lo, i.hi);
    let right = p.elements_between(j.lo, j.hi);
    if left.len() != right.len() {
        return None;
    }
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|&x| {
            (0..right.len())
                .filter(|&k| {
                    let y = right[k];
                    r.class_of(i.lo, x) == r.class_of(j.lo, y)
                        && r.class_of(x, i.hi) == r.class_of(y, j.hi)
                })
                .collect()
        })
        .collect();
    let mate = perfect_matching(&adj, right.len())?;
    Some(left.iter().zip(mate).map(|(&x, k)| (x, right[k])).collect())
}

/// Every member of a class admits a bijection onto the representative. The
/// witness is `(representative, member)` for the first failing member in
/// lexicographic order.
pub fn check_delta_compatible(r: &IntervalRelation) -> CheckResult {
    let p = r.poset();
    for iv in r.intervals() {
        let rep = r.class(r.class_of(iv.lo, iv.hi)).representative;
        if rep == *iv {
            continue;
        }
        if find_delta_bijection(r, rep, *iv).is_none() {
            let w = RelationWitness::new(p, vec![rep.lo, rep.hi], vec![iv.lo, iv.hi]);
            return CheckResult::from_witness(Some(w));
        }
    }
    CheckResult::from_witness(None)
}

pub fn check_compatibility(r: &IntervalRelation) -> CompatibilityVerdict {
    CompatibilityVerdict {
        nabla: check_nabla_compatible(r),
        delta: check_delta_compatible(r),
        unitary: check_unitary(r),
    }
}
