//! Bruhat chain witnesses `A_k(v, w)` / `B_k(v, w)`, the closed-form action
//! of twisted skew operators on `e_m^{(k)}` and `h_m^{(k)}`, and the Pieri rule.
//!
//! A witness is a factorization `w = v s_{a_1 b_1} ... s_{a_t b_t}` with
//! `a_i <= k < b_i`, the `a_i` distinct (kind E) or the `b_i` distinct
//! (kind H), along which the length strictly increases.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::polyring::MultiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessKind {
    E,
    H,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainWitness {
    pub kind: WitnessKind,
    pub k: usize,
    /// `{a_1, ..., a_t}` for kind E, `{b_1, ..., b_t}` for kind H, sorted.
    pub support: Vec<usize>,
    /// `(a_i, b_i)` in application order.
    pub transpositions: Vec<(usize, usize)>,
}

impl ChainWitness {
    pub fn len(&self) -> usize {
        self.transpositions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transpositions.is_empty()
    }
}

/// Walks `v, v s_{a_1 b_1}, ...` and checks that the length strictly
/// increases at every step and that the walk ends at `w`.
fn lengths_increase(v: &Permutation, w: &Permutation, transpositions: &[(usize, usize)]) -> bool {
    let mut cur = v.clone();
    let mut len = cur.length();
    for &(a, b) in transpositions {
        let next = cur.mul_transposition_right(a, b);
        let next_len = next.length();
        if next_len <= len {
            return false;
        }
        cur = next;
        len = next_len;
    }
    &cur == w
}

/// Rotates a cycle (listed as `c, pi(c), pi(pi(c)), ...`) so that it starts
/// at `pivot`, and returns the remaining elements in reverse cycle order.
/// For the cycle `(b a_r ... a_1)` with pivot `b` this gives `a_1, ..., a_r`.
fn others_in_reverse(cycle: &[usize], pivot: usize) -> Vec<usize> {
    let at = cycle.iter().position(|&c| c == pivot).expect("pivot in cycle");
    let mut rest: Vec<usize> = cycle[at + 1..].iter().chain(&cycle[..at]).copied().collect();
    rest.reverse();
    rest
}

/// `A_k(v, w)`: the unique factorization with distinct `a_i`, if it exists.
pub fn a_set(v: &Permutation, w: &Permutation, k: usize) -> Option<ChainWitness> {
    assert_eq!(v.n(), w.n());
    assert!(k >= 1 && k < v.n(), "k = {k} outside 1..{}", v.n());
    let pi = &v.inverse() * w;
    let mut blocks = Vec::new();
    for cycle in pi.cycles() {
        let mut large = cycle.iter().filter(|&&c| c > k);
        let b = *large.next()?;
        if large.next().is_some() {
            return None;
        }
        let smalls = others_in_reverse(&cycle, b);
        // v(b) > v(a_1) > ... > v(a_r)
        let mut prev = v.apply(b);
        for &a in &smalls {
            let cur = v.apply(a);
            if cur >= prev {
                return None;
            }
            prev = cur;
        }
        blocks.push((b, smalls));
    }
    blocks.sort();
    let transpositions: Vec<(usize, usize)> =
        blocks.iter().flat_map(|(b, smalls)| smalls.iter().map(move |&a| (a, *b))).collect();
    if !lengths_increase(v, w, &transpositions) {
        return None;
    }
    let mut support: Vec<usize> = transpositions.iter().map(|t| t.0).collect();
    support.sort_unstable();
    Some(ChainWitness { kind: WitnessKind::E, k, support, transpositions })
}

/// `B_k(v, w)`: the unique factorization with distinct `b_i`, if it exists.
/// Existence is certified by direct length bookkeeping along the canonical
/// order (cycles sorted by their element `a <= k`).
pub fn b_set(v: &Permutation, w: &Permutation, k: usize) -> Option<ChainWitness> {
    assert_eq!(v.n(), w.n());
    assert!(k >= 1 && k < v.n(), "k = {k} outside 1..{}", v.n());
    let pi = &v.inverse() * w;
    let mut blocks = Vec::new();
    for cycle in pi.cycles() {
        let mut small = cycle.iter().filter(|&&c| c <= k);
        let a = *small.next()?;
        if small.next().is_some() {
            return None;
        }
        blocks.push((a, others_in_reverse(&cycle, a)));
    }
    blocks.sort();
    let transpositions: Vec<(usize, usize)> =
        blocks.iter().flat_map(|(a, larges)| larges.iter().map(move |&b| (*a, b))).collect();
    if !lengths_increase(v, w, &transpositions) {
        return None;
    }
    let mut support: Vec<usize> = transpositions.iter().map(|t| t.1).collect();
    support.sort_unstable();
    Some(ChainWitness { kind: WitnessKind::H, k, support, transpositions })
}

/// `~d_{w/v} e_m^{(k)} = e_{m - |A|}([k] \ A)` when `A = A_k(v, w)` exists, else 0.
pub fn tdel_on_elementary(v: &Permutation, w: &Permutation, m: i64, k: usize) -> MultiPoly {
    let n = v.n();
    match a_set(v, w, k) {
        Some(wit) => {
            let rest: Vec<usize> = (1..=k).filter(|a| !wit.support.contains(a)).collect();
            MultiPoly::elementary(m - wit.support.len() as i64, &rest, n)
        }
        None => MultiPoly::zero(n),
    }
}

/// `~d_{w/v} h_m^{(k)} = h_{m - |B|}([k] u B)` when `B = B_k(v, w)` exists, else 0.
pub fn tdel_on_homogeneous(v: &Permutation, w: &Permutation, m: i64, k: usize) -> MultiPoly {
    let n = v.n();
    match b_set(v, w, k) {
        Some(wit) => {
            let set: Vec<usize> = (1..=k).chain(wit.support.iter().copied()).collect();
            MultiPoly::homogeneous(m - wit.support.len() as i64, &set, n)
        }
        None => MultiPoly::zero(n),
    }
}

/// The permutations `w` with `S_v * e_m^{(k)} = sum_w S_w`, as elements of `S_big_n`.
pub fn pieri_e(v: &Permutation, m: usize, k: usize, big_n: usize) -> Result<Vec<Permutation>> {
    pieri(v, m, k, big_n, WitnessKind::E)
}

/// The permutations `w` with `S_v * h_m^{(k)} = sum_w S_w`, as elements of `S_big_n`.
pub fn pieri_h(v: &Permutation, m: usize, k: usize, big_n: usize) -> Result<Vec<Permutation>> {
    pieri(v, m, k, big_n, WitnessKind::H)
}

fn pieri(v: &Permutation, m: usize, k: usize, big_n: usize, kind: WitnessKind) -> Result<Vec<Permutation>> {
    if v.n() > big_n {
        return Err(Error::PieriAmbientTooSmall { n: big_n, needed: v.n() });
    }
    assert!(k >= 1 && k < big_n, "k = {k} outside 1..{big_n}");
    // Each cover moves at most one new letter, so S_{N+m} holds every term.
    let work = big_n + m;
    let start = v.embed(work);
    let target_len = start.length() + m;

    let mut level: BTreeSet<Permutation> = BTreeSet::from([start.clone()]);
    for _ in 0..m {
        let mut next = BTreeSet::new();
        for u in &level {
            let len = u.length();
            for a in 1..=k {
                for b in k + 1..=work {
                    let up = u.mul_transposition_right(a, b);
                    if up.length() == len + 1 {
                        next.insert(up);
                    }
                }
            }
        }
        level = next;
    }

    let mut out = Vec::new();
    let mut needed = big_n;
    for w in level {
        debug_assert_eq!(w.length(), target_len);
        let wit = match kind {
            WitnessKind::E => a_set(&start, &w, k),
            WitnessKind::H => b_set(&start, &w, k),
        };
        if wit.is_some_and(|x| x.support.len() == m) {
            match w.restrict(big_n) {
                Some(r) => out.push(r),
                None => needed = needed.max(w.largest_moved()),
            }
        }
    }
    if needed > big_n {
        return Err(Error::PieriAmbientTooSmall { n: big_n, needed });
    }
    out.sort();
    Ok(out)
}
