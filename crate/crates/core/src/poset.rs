//! Finite posets stored as dense order matrices, with the generator
//! families used throughout the crate.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_BOOLEAN_RANK: usize = 12;
pub const MAX_DIVISOR_BOUND: u64 = 10_000;
pub const MAX_CHAIN_LENGTH: usize = 4096;

/// A closed interval `[lo, hi]` of a poset, by element index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        Interval { lo, hi }
    }

    pub fn point(a: usize) -> Self {
        Interval { lo: a, hi: a }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("labels", &self.labels)
            .field("covers", &self.cover_pairs())
            .finish()
    }
}

/// On-disk form: `{"elements": [...], "covers": [["a","b"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

impl Poset {
    /// Builds a poset from a full order matrix, checking the partial-order axioms.
    pub fn from_leq(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "order matrix of {} cells for {n} elements",
                leq.len()
            )));
        }
        let index = index_labels(&labels)?;
        let p = Poset { labels, index, leq };
        p.check_axioms()?;
        Ok(p)
    }

    fn from_fn(labels: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = le(a, b);
            }
        }
        let index = index_labels(&labels).expect("generator labels are distinct");
        let p = Poset { labels, index, leq };
        debug_assert!(p.check_axioms().is_ok());
        p
    }

    /// Verifies reflexivity, antisymmetry and transitivity.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            if !self.leq(a, a) {
                return Err(Error::NotPartialOrder(format!(
                    "{} is not below itself",
                    self.labels[a]
                )));
            }
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(Error::NotPartialOrder(format!(
                        "{} and {} are mutually below each other",
                        self.labels[a], self.labels[b]
                    )));
                }
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) && !self.leq(a, c) {
                        return Err(Error::NotPartialOrder(format!(
                            "{} ≤ {} ≤ {} but not {} ≤ {}",
                            self.labels[a],
                            self.labels[b],
                            self.labels[c],
                            self.labels[a],
                            self.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// The Hasse diagram: pairs `a ⋖ b`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|x| self.lt(a, x) && self.lt(x, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn interval(&self, a: usize, b: usize) -> Result<Interval> {
        if !self.leq(a, b) {
            return Err(Error::EmptyInterval(
                self.labels[a].clone(),
                self.labels[b].clone(),
            ));
        }
        Ok(Interval::new(a, b))
    }

    /// Sorted elements of `[a, b]`.
    pub fn interval_elements(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        self.interval(a, b)?;
        Ok(self.elements_between(a, b))
    }

    pub(crate) fn elements_between(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.leq(a, x) && self.leq(x, b))
            .collect()
    }

    pub fn interval_size(&self, iv: Interval) -> usize {
        (0..self.len())
            .filter(|&x| self.leq(iv.lo, x) && self.leq(x, iv.hi))
            .count()
    }

    /// Every nonempty interval, in lexicographic `(lo, hi)` order.
    pub fn all_intervals(&self) -> Vec<Interval> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.leq(a, b) {
                    out.push(Interval::new(a, b));
                }
            }
        }
        out
    }

    /// A topological order, smallest available index first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut below: Vec<usize> = (0..n)
            .map(|b| (0..n).filter(|&a| self.lt(a, b)).count())
            .collect();
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&b| below[b] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(a)) = ready.pop() {
            order.push(a);
            for (b, count) in below.iter_mut().enumerate() {
                if self.lt(a, b) {
                    *count -= 1;
                    if *count == 0 {
                        ready.push(Reverse(b));
                    }
                }
            }
        }
        order
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&m| (0..self.len()).all(|x| self.leq(m, x)))
    }

    /// Elements covering the minimum.
    pub fn atoms(&self) -> Result<Vec<usize>> {
        let zero = self.minimum().ok_or(Error::NoUniqueMinimum)?;
        Ok((0..self.len())
            .filter(|&a| self.interval_size(Interval::new(zero, a)) == 2)
            .collect())
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.labels.clone(),
            covers: self
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
                .collect(),
        }
    }

    pub fn from_json(j: &PosetJson) -> Result<Self> {
        let covers: Vec<(&str, &str)> = j
            .covers
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        poset_from_covers(&j.elements, &covers)
    }

    /// Parses a generator spec such as `boolean:3`, `chain:5`, `divisors:60`
    /// or `fan:4`.
    pub fn from_generator(spec: &str) -> Result<Self> {
        let (name, arg) = spec.split_once(':').ok_or_else(|| {
            Error::InvalidInput(format!("generator `{spec}` needs the form name:n"))
        })?;
        let n: u64 = arg.trim().parse().map_err(|_| {
            Error::InvalidInput(format!("generator parameter `{arg}` is not a count"))
        })?;
        match name {
            "boolean" => boolean_lattice(n as usize),
            "chain" => chain(n as usize),
            "divisors" => divisor_lattice(n),
            "fan" => antichain_with_zero(n as usize),
            _ => Err(Error::InvalidInput(format!("unknown generator `{name}`"))),
        }
    }
}

/// Builds the reflexive-transitive closure of a Hasse diagram.
pub fn poset_from_covers<S: AsRef<str>>(labels: &[S], covers: &[(&str, &str)]) -> Result<Poset> {
    let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
    let index = index_labels(&labels)?;
    let n = labels.len();
    let mut succ = vec![Vec::new(); n];
    for &(a, b) in covers {
        let ia = *index
            .get(a)
            .ok_or_else(|| Error::UnknownLabel(a.to_string()))?;
        let ib = *index
            .get(b)
            .ok_or_else(|| Error::UnknownLabel(b.to_string()))?;
        if ia == ib {
            return Err(Error::NotPartialOrder(format!("self-loop at {a}")));
        }
        succ[ia].push(ib);
    }
    let mut leq = vec![false; n * n];
    for s in 0..n {
        let mut stack = vec![s];
        leq[s * n + s] = true;
        while let Some(x) = stack.pop() {
            for &y in &succ[x] {
                if y == s {
                    return Err(Error::NotPartialOrder(format!(
                        "cycle through {}",
                        labels[s]
                    )));
                }
                if !leq[s * n + y] {
                    leq[s * n + y] = true;
                    stack.push(y);
                }
            }
        }
    }
    Ok(Poset { labels, index, leq })
}

fn size_bound(what: &'static str, got: u64, limit: u64) -> Result<()> {
    if got > limit {
        return Err(Error::SizeBound { what, got, limit });
    }
    Ok(())
}

pub fn subset_label(mask: usize) -> String {
    let members: Vec<String> = (0..usize::BITS as usize)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (b + 1).to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// Parses labels of the form `{1,3}` back into their member sets.
pub fn parse_subset_label(label: &str) -> Option<BTreeSet<u64>> {
    let inner = label.strip_prefix('{')?.strip_suffix('}')?;
    if inner.trim().is_empty() {
        return Some(BTreeSet::new());
    }
    inner.split(',').map(|t| t.trim().parse().ok()).collect()
}

/// Subsets of `{1..n}` ordered by inclusion; element `m` is the subset with
/// bitmask `m`.
pub fn boolean_lattice(n: usize) -> Result<Poset> {
    size_bound("boolean lattice rank", n as u64, MAX_BOOLEAN_RANK as u64)?;
    let labels = (0..1usize << n).map(subset_label).collect();
    Ok(Poset::from_fn(labels, |a, b| a & !b == 0))
}

/// The chain `0 < 1 < … < n`.
pub fn chain(n: usize) -> Result<Poset> {
    size_bound("chain length", n as u64, MAX_CHAIN_LENGTH as u64)?;
    let labels = (0..=n).map(|i| i.to_string()).collect();
    Ok(Poset::from_fn(labels, |a, b| a <= b))
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Divisors of `n` ordered by divisibility, ascending by value.
pub fn divisor_lattice(n: u64) -> Result<Poset> {
    if n == 0 {
        return Err(Error::InvalidInput("divisor lattice of 0".into()));
    }
    size_bound("divisor lattice bound", n, MAX_DIVISOR_BOUND)?;
    let ds = divisors(n);
    let labels = ds.iter().map(|d| d.to_string()).collect();
    Ok(Poset::from_fn(labels, |a, b| ds[b].is_multiple_of(ds[a])))
}

/// `n` pairwise incomparable elements `a1..an` above a common minimum `0`.
pub fn antichain_with_zero(n: usize) -> Result<Poset> {
    size_bound("antichain size", n as u64, MAX_CHAIN_LENGTH as u64)?;
    let labels = std::iter::once("0".to_string())
        .chain((1..=n).map(|i| format!("a{i}")))
        .collect();
    Ok(Poset::from_fn(labels, |a, b| a == 0 || a == b))
}
