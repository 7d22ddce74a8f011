//! The finite symmetric group `S_n`.
//!
//! Permutations are written in one-line notation with 1-indexed semantics
//! (`w(1) w(2) ... w(n)`) and stored 0-indexed. Composition is
//! `(u * v)(i) = u(v(i))`, so `w * s_i` swaps positions `i, i+1` of the
//! one-line word and `s_i * w` swaps the values `i, i+1`.
//!
//! Words are sequences of simple-transposition letters `i` in `1..n`.
//! Positions inside a word are 0-indexed slice offsets.

use std::collections::HashSet;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from 1-indexed one-line notation.
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n];
        for &v in &one_line {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("{one_line:?} is not a bijection on 1..={n}")));
            }
            seen[v - 1] = true;
        }
        Ok(Self { images: one_line.into_iter().map(|v| v - 1).collect() })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        });
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_zero_based((0..n).collect())
    }

    /// The longest element `w_0 = n ... 2 1`.
    pub fn longest(n: usize) -> Self {
        Self::from_zero_based((0..n).rev().collect())
    }

    /// The simple transposition `s_i`, `1 <= i < n`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} not in S_{n}");
        Self::transposition(n, i, i + 1)
    }

    /// The transposition `s_ab` exchanging `a` and `b` (1-indexed).
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a >= 1 && a <= n && b >= 1 && b <= n && a != b);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a - 1, b - 1);
        Self::from_zero_based(images)
    }

    /// Product `s_{i_1} s_{i_2} ... s_{i_l}` of a word, taken left to right.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut w = Self::identity(n);
        for &i in word {
            w.swap_positions(i);
        }
        w
    }

    /// Parses `2431` (single digits) or `2,4,3,1,10` (comma separated).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        match values {
            Some(v) => Self::new(v),
            None => Err(Error::InvalidPermutation(format!("cannot parse {s:?}"))),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `w(i)` for 1-indexed `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// One-line notation, 1-indexed.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Self::from_zero_based(inv)
    }

    /// `u.compose(v)(i) = u(v(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch { left: self.n(), right: other.n() });
        }
        Ok(Self::from_zero_based(other.images.iter().map(|&j| self.images[j]).collect()))
    }

    /// `w * s_i`.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        let mut w = self.clone();
        w.swap_positions(i);
        w
    }

    /// `s_i * w`.
    pub fn mul_simple_left(&self, i: usize) -> Self {
        let mut w = self.clone();
        for v in &mut w.images {
            if *v == i - 1 {
                *v = i;
            } else if *v == i {
                *v = i - 1;
            }
        }
        w
    }

    /// `w * s_ab`, swapping the entries at positions `a` and `b`.
    pub fn mul_transposition_right(&self, a: usize, b: usize) -> Self {
        let mut w = self.clone();
        w.images.swap(a - 1, b - 1);
        w
    }

    fn swap_positions(&mut self, i: usize) {
        assert!(i >= 1 && i < self.n(), "s_{i} not in S_{}", self.n());
        self.images.swap(i - 1, i);
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// All pairs `a < b` with `w(a) > w(b)`, 1-indexed, in lexicographic order.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let w = &self.images;
        let mut out = Vec::new();
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    out.push((a + 1, b + 1));
                }
            }
        }
        out
    }

    /// `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.images[i - 1] > self.images[i]
    }

    /// `l(s_i w) < l(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.images[i - 1] > inv.images[i]
    }

    /// Every element of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Self> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = vec![Self::from_zero_based(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Self::from_zero_based(cur.clone()));
        }
        out
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            images.swap(i, j);
        }
        Self::from_zero_based(images)
    }

    /// The image of `w` under `S_n -> S_m` acting on the first `n` letters.
    pub fn embed(&self, m: usize) -> Self {
        assert!(m >= self.n());
        let mut images = self.images.clone();
        images.extend(self.n()..m);
        Self::from_zero_based(images)
    }

    /// Inverse of [`embed`](Self::embed); `None` if `w` moves a letter above `m`.
    pub fn restrict(&self, m: usize) -> Option<Self> {
        if m == 0 || m > self.n() {
            return None;
        }
        if self.images[m..].iter().enumerate().any(|(i, &v)| v != m + i) {
            return None;
        }
        Some(Self::from_zero_based(self.images[..m].to_vec()))
    }

    /// Largest letter not fixed by `w` (0 for the identity).
    pub fn largest_moved(&self) -> usize {
        self.images.iter().enumerate().rev().find(|(i, v)| i != *v).map_or(0, |(i, _)| i + 1)
    }

    /// `code(w)_i = #{ j > i : w(j) < w(i) }`.
    pub fn lehmer_code(&self) -> Vec<u32> {
        let w = &self.images;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[j] < w[i]).count() as u32).collect()
    }

    /// The permutation of `S_n` with the given Lehmer code, if it fits.
    pub fn from_lehmer_code(code: &[u32], n: usize) -> Option<Self> {
        if code.len() > n && code[n..].iter().any(|&c| c != 0) {
            return None;
        }
        let mut unused: Vec<usize> = (0..n).collect();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let c = code.get(i).copied().unwrap_or(0) as usize;
            if c >= unused.len() {
                return None;
            }
            images.push(unused.remove(c));
        }
        Some(Self::from_zero_based(images))
    }

    /// Disjoint cycle decomposition, fixed points omitted. Each cycle is
    /// listed from its smallest element `c` as `(c, w(c), w(w(c)), ...)`.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                cycle.push(c + 1);
                c = self.images[c];
            }
            out.push(cycle);
        }
        out
    }

    /// Lexicographically smallest reduced word, built greedily from the
    /// smallest left descent.
    pub fn canonical_reduced_word(&self) -> ReducedWord {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while let Some(i) = (1..w.n()).find(|&i| w.has_left_descent(i)) {
            word.push(i);
            w = w.mul_simple_left(i);
        }
        ReducedWord { letters: word }
    }

    /// The reduced word whose reversal is lexicographically smallest: the
    /// reverse of the canonical word of `w^{-1}`. For `w_0` in `S_4` this is
    /// `1 2 3 1 2 1`.
    pub fn right_canonical_reduced_word(&self) -> ReducedWord {
        let mut letters = self.inverse().canonical_reduced_word().letters;
        letters.reverse();
        ReducedWord { letters }
    }

    /// Every reduced word of `w`, in lexicographic order.
    pub fn reduced_words(&self) -> Vec<ReducedWord> {
        fn go(w: &Permutation, prefix: &mut Vec<usize>, out: &mut Vec<ReducedWord>) {
            if w.is_identity() {
                out.push(ReducedWord { letters: prefix.clone() });
                return;
            }
            for i in 1..w.n() {
                if w.has_left_descent(i) {
                    prefix.push(i);
                    go(&w.mul_simple_left(i), prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Bruhat order, decided by subword search in the canonical word of `w`.
    pub fn bruhat_leq(&self, w: &Self) -> bool {
        assert_eq!(self.n(), w.n());
        if self.length() > w.length() {
            return false;
        }
        bruhat_leq_with_word(self, &w.canonical_reduced_word())
    }
}

/// `v <= w` where `word` is any reduced word of `w`.
pub fn bruhat_leq_with_word(v: &Permutation, word: &ReducedWord) -> bool {
    let reach = SuffixProducts::new(word.letters(), v.n());
    reach.contains(0, v)
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on size mismatch; use [`Permutation::compose`] to get an error.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("permutation sizes differ")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = self.one_line();
        if self.n() <= 9 {
            for v in line {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = line.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::new(v).map_err(serde::de::Error::custom)
    }
}

/// A word in the simple transpositions whose product has length equal to
/// the number of letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ReducedWord {
    letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(letters: Vec<usize>, n: usize) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&i| i == 0 || i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        if Permutation::from_word(n, &letters).length() != letters.len() {
            return Err(Error::NotReduced { word: letters, n });
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn product(&self, n: usize) -> Permutation {
        Permutation::from_word(n, &self.letters)
    }

    /// The pairs `(alpha_m, beta_m)` with
    /// `s_{i_m} s_{i_{m+1}} ... s_{i_l} = s_{i_{m+1}} ... s_{i_l} s_{alpha_m beta_m}`.
    pub fn alpha_beta_pairs(&self, n: usize) -> AlphaBetaPairs {
        let mut r = Permutation::identity(n);
        let mut pairs = vec![(0, 0); self.len()];
        for (m, &i) in self.letters.iter().enumerate().rev() {
            let (a, b) = (r.apply(i), r.apply(i + 1));
            debug_assert!(a < b);
            pairs[m] = (a, b);
            r = r.mul_simple_right(i);
        }
        pairs
    }
}

/// `(alpha_m, beta_m)` for each letter of a reduced word, 1-indexed.
pub type AlphaBetaPairs = Vec<(usize, usize)>;

/// Checked form of [`ReducedWord::alpha_beta_pairs`] for a raw word.
pub fn alpha_beta_pairs(word: &[usize], n: usize) -> Result<AlphaBetaPairs> {
    Ok(ReducedWord::new(word.to_vec(), n)?.alpha_beta_pairs(n))
}

/// Returns `w * prod_{j not in J} s_{alpha_j beta_j}` for a reduced word of
/// `w`, asserting that it equals the subword product `prod_{j in J} s_{i_j}`.
/// `subset` holds sorted positions.
pub fn remove_letters_factorization(word: &ReducedWord, n: usize, subset: &[usize]) -> Permutation {
    let pairs = word.alpha_beta_pairs(n);
    let mut via_pairs = word.product(n);
    let mut direct = Permutation::identity(n);
    let mut keep = subset.iter().peekable();
    for (pos, (&letter, &(a, b))) in word.letters().iter().zip(&pairs).enumerate() {
        if keep.peek() == Some(&&pos) {
            keep.next();
            direct = direct.mul_simple_right(letter);
        } else {
            via_pairs = via_pairs.mul_transposition_right(a, b);
        }
    }
    assert_eq!(via_pairs, direct, "factorization mismatch for J = {subset:?}");
    via_pairs
}

/// For each position `p` of a word, the set of products of subwords of the
/// suffix starting at `p`.
pub(crate) struct SuffixProducts {
    sets: Vec<HashSet<Permutation>>,
}

impl SuffixProducts {
    pub(crate) fn new(word: &[usize], n: usize) -> Self {
        let mut sets = vec![HashSet::new(); word.len() + 1];
        sets[word.len()].insert(Permutation::identity(n));
        for p in (0..word.len()).rev() {
            let mut here = sets[p + 1].clone();
            for x in &sets[p + 1] {
                here.insert(x.mul_simple_left(word[p]));
            }
            sets[p] = here;
        }
        Self { sets }
    }

    pub(crate) fn contains(&self, pos: usize, x: &Permutation) -> bool {
        self.sets[pos].contains(x)
    }
}

/// All position subsets `J` (sorted, 0-indexed) of `word` whose left-to-right
/// product is `target`. With `require_reduced`, only subwords that are
/// themselves reduced words are returned.
pub fn subwords_with_product(word: &[usize], target: &Permutation, require_reduced: bool) -> Vec<Vec<usize>> {
    let n = target.n();
    let reach = SuffixProducts::new(word, n);
    let target_len = target.length();
    let mut out = Vec::new();
    let mut chosen = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn go(
        word: &[usize],
        pos: usize,
        prefix: &Permutation,
        prefix_len: usize,
        target: &Permutation,
        target_len: usize,
        require_reduced: bool,
        reach: &SuffixProducts,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let needed = &prefix.inverse() * target;
        if !reach.contains(pos, &needed) {
            return;
        }
        if pos == word.len() {
            out.push(chosen.clone());
            return;
        }
        let i = word[pos];
        let next = prefix.mul_simple_right(i);
        let grows = !prefix.has_right_descent(i);
        if !require_reduced || (grows && prefix_len < target_len) {
            chosen.push(pos);
            let len = if grows { prefix_len + 1 } else { prefix_len - 1 };
            go(word, pos + 1, &next, len, target, target_len, require_reduced, reach, chosen, out);
            chosen.pop();
        }
        go(word, pos + 1, prefix, prefix_len, target, target_len, require_reduced, reach, chosen, out);
    }

    go(word, 0, &Permutation::identity(n), 0, target, target_len, require_reduced, &reach, &mut chosen, &mut out);
    out.sort();
    out
}
