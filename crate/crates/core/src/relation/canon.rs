//! Canonical forms of small posets up to isomorphism.

use crate::error::{Error, Result};
use crate::poset::Poset;

pub const MAX_CANON_SIZE: usize = 8;

/// Canonical string of the subposet induced on `elements`: the minimal
/// upper-triangle order string over all relabelings that are linear
/// extensions, prefixed by the element count.
pub fn canonical_form(p: &Poset, elements: &[usize]) -> Result<String> {
    let k = elements.len();
    if k > MAX_CANON_SIZE {
        return Err(Error::SizeBound {
            what: "isotype interval size",
            got: k as u64,
            limit: MAX_CANON_SIZE as u64,
        });
    }
    let mut best: Option<Vec<u8>> = None;
    let mut order = Vec::with_capacity(k);
    let mut used = vec![false; k];
    search(p, elements, &mut order, &mut used, &mut best);
    let bits = best.unwrap_or_default();
    Ok(format!("{k}:{}", String::from_utf8(bits).expect("ascii")))
}

fn bits_of(p: &Poset, elements: &[usize], order: &[usize]) -> Vec<u8> {
    let mut bits = Vec::with_capacity(order.len() * order.len() / 2);
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            let le = p.leq(elements[order[i]], elements[order[j]]);
            bits.push(if le { b'1' } else { b'0' });
        }
    }
    bits
}

fn search(
    p: &Poset,
    elements: &[usize],
    order: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<Vec<u8>>,
) {
    let k = elements.len();
    if order.len() == k {
        let bits = bits_of(p, elements, order);
        if best.as_ref().is_none_or(|b| bits < *b) {
            *best = Some(bits);
        }
        return;
    }
    for c in 0..k {
        if used[c] {
            continue;
        }
        let minimal = (0..k).all(|o| used[o] || o == c || !p.lt(elements[o], elements[c]));
        if !minimal {
            continue;
        }
        used[c] = true;
        order.push(c);
        search(p, elements, order, used, best);
        order.pop();
        used[c] = false;
    }
}
