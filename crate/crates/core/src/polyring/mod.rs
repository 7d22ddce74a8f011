//! Exact sparse polynomials in `x_1..x_n` and `y_1..y_n` over the integers.
//!
//! Every polynomial carries its ambient size `n`; binary operations check it.
//! Permutations act on the `x` alphabet only, by `x_i -> x_{w(i)}`.

mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;

pub use text::parse;

/// Exponent vectors for the two alphabets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    x: Vec<u32>,
    y: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self { x: vec![0; n], y: vec![0; n] }
    }

    pub fn new(x: Vec<u32>, y: Vec<u32>) -> Self {
        assert_eq!(x.len(), y.len());
        Self { x, y }
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.x
    }

    pub fn y_exponents(&self) -> &[u32] {
        &self.y
    }

    pub fn degree(&self) -> u32 {
        self.x.iter().sum::<u32>() + self.y.iter().sum::<u32>()
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    fn y_is_constant(&self) -> bool {
        self.y.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Self) -> Self {
        Self {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            y: self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Graded lexicographic on `(x, y)`: total degree first, then the exponent
/// vectors compared lexicographically with `x_1` most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.x.cmp(&other.x)).then_with(|| self.y.cmp(&other.y))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, 1)
    }

    pub fn constant(n: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(n, Monomial::one(n), c)
    }

    pub fn monomial(n: usize, m: Monomial, c: impl Into<BigInt>) -> Self {
        assert_eq!(m.x.len(), n);
        let mut p = Self::zero(n);
        p.add_term(m, c.into());
        p
    }

    /// `x_i`, 1-indexed.
    pub fn x(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "x{i} outside ambient size {n}");
        let mut m = Monomial::one(n);
        m.x[i - 1] = 1;
        Self::monomial(n, m, 1)
    }

    /// `y_j`, 1-indexed.
    pub fn y(n: usize, j: usize) -> Self {
        assert!(j >= 1 && j <= n, "y{j} outside ambient size {n}");
        let mut m = Monomial::one(n);
        m.y[j - 1] = 1;
        Self::monomial(n, m, 1)
    }

    /// `x^exps` with no `y`.
    pub fn x_monomial(exps: &[u32]) -> Self {
        let n = exps.len();
        Self::monomial(n, Monomial::new(exps.to_vec(), vec![0; n]), 1)
    }

    /// The staircase monomial `x_1^{n-1} x_2^{n-2} ... x_{n-1}`.
    pub fn staircase(n: usize) -> Self {
        let exps: Vec<u32> = (0..n).map(|i| (n - 1 - i) as u32).collect();
        Self::x_monomial(&exps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one(self.n))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn has_y(&self) -> bool {
        self.terms.keys().any(|m| !m.y_is_constant())
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same_n(&self, other: &Self) {
        assert_eq!(self.n, other.n, "ambient sizes differ");
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self { n: self.n, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * &c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn map_monomials(&self, f: impl Fn(&Monomial) -> (Monomial, bool)) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let (m2, negate) = f(m);
            out.add_term(m2, if negate { -c } else { c.clone() });
        }
        out
    }

    /// `(wP)(x_1, ..., x_n) = P(x_{w(1)}, ..., x_{w(n)})`.
    pub fn act_permutation(&self, w: &Permutation) -> Self {
        assert_eq!(w.n(), self.n, "permutation and polynomial sizes differ");
        let images = w.zero_based();
        self.map_monomials(|m| {
            let mut x = vec![0; self.n];
            for (i, &e) in m.x.iter().enumerate() {
                x[images[i]] = e;
            }
            (Monomial { x, y: m.y.clone() }, false)
        })
    }

    /// `s_ab P`: exchange `x_a` and `x_b`.
    pub fn swap_x(&self, a: usize, b: usize) -> Self {
        self.map_monomials(|m| {
            let mut m2 = m.clone();
            m2.x.swap(a - 1, b - 1);
            (m2, false)
        })
    }

    /// `(P - s_ab P) / (x_a - x_b)` for `a != b`, computed per monomial with
    /// `(x_a^p x_b^q - x_a^q x_b^p) / (x_a - x_b) = sum x_a^r x_b^s` over
    /// `r + s = p + q - 1`, `min(p,q) <= r, s`, negated when `p < q`.
    pub fn divided_difference(&self, a: usize, b: usize) -> Self {
        assert!(a != b && a >= 1 && b >= 1 && a <= self.n && b <= self.n);
        let (ia, ib) = (a - 1, b - 1);
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let (p, q) = (m.x[ia], m.x[ib]);
            if p == q {
                continue;
            }
            let (lo, hi) = (p.min(q), p.max(q));
            let coeff = if p > q { c.clone() } else { -c };
            for r in lo..hi {
                let mut m2 = m.clone();
                m2.x[ia] = r;
                m2.x[ib] = hi + lo - 1 - r;
                out.add_term(m2, coeff.clone());
            }
        }
        out
    }

    /// `T_i P = s_i P + d_i P`.
    pub fn twisted_op(&self, i: usize) -> Self {
        assert!(i >= 1 && i < self.n, "T_{i} undefined for n = {}", self.n);
        &self.swap_x(i, i + 1) + &self.divided_difference(i, i + 1)
    }

    /// Replaces every `x_j` by `y_{w(j)}`.
    pub fn substitute_x_by_y(&self, w: &Permutation) -> Self {
        assert_eq!(w.n(), self.n);
        let images = w.zero_based();
        self.map_monomials(|m| {
            let mut y = m.y.clone();
            for (j, &e) in m.x.iter().enumerate() {
                y[images[j]] += e;
            }
            (Monomial { x: vec![0; self.n], y }, false)
        })
    }

    /// Specializes every `y_j` to zero.
    pub fn set_y_zero(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if m.y_is_constant() {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn is_monomial_nonnegative(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of the terms of least total degree.
    pub fn min_degree_part(&self) -> Result<Self> {
        let d = self.terms.keys().map(Monomial::degree).min().ok_or(Error::ZeroPolynomial)?;
        Ok(self.homogeneous_part(d))
    }

    /// Re-embeds into a larger ambient size.
    pub fn embed(&self, n: usize) -> Self {
        assert!(n >= self.n);
        let pad = |v: &Vec<u32>| {
            let mut v = v.clone();
            v.resize(n, 0);
            v
        };
        Self {
            n,
            terms: self.terms.iter().map(|(m, c)| (Monomial { x: pad(&m.x), y: pad(&m.y) }, c.clone())).collect(),
        }
    }

    /// Shrinks the ambient size; fails if a dropped variable occurs.
    pub fn restrict(&self, n: usize) -> Result<Self> {
        if n >= self.n {
            return Ok(self.embed(n));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.x[n..].iter().chain(&m.y[n..]).any(|&e| e != 0) {
                return Err(Error::VariablesOutOfRange { n });
            }
            terms.insert(Monomial { x: m.x[..n].to_vec(), y: m.y[..n].to_vec() }, c.clone());
        }
        Ok(Self { n, terms })
    }

    /// `e_m(A)`; `A` holds 1-indexed variable indices.
    pub fn elementary(m: i64, set: &[usize], n: usize) -> Self {
        let idx = normalize_index_set(set, n);
        if m < 0 || m as usize > idx.len() {
            return Self::zero(n);
        }
        let mut out = Self::zero(n);
        let mut exps = vec![0u32; n];
        fn go(idx: &[usize], start: usize, left: usize, exps: &mut Vec<u32>, out: &mut MultiPoly) {
            if left == 0 {
                out.add_term(Monomial::new(exps.clone(), vec![0; exps.len()]), BigInt::one());
                return;
            }
            for k in start..idx.len() {
                if idx.len() - k < left {
                    break;
                }
                exps[idx[k]] += 1;
                go(idx, k + 1, left - 1, exps, out);
                exps[idx[k]] -= 1;
            }
        }
        go(&idx, 0, m as usize, &mut exps, &mut out);
        out
    }

    /// `h_m(A)`; `A` holds 1-indexed variable indices.
    pub fn homogeneous(m: i64, set: &[usize], n: usize) -> Self {
        let idx = normalize_index_set(set, n);
        if m < 0 {
            return Self::zero(n);
        }
        let mut out = Self::zero(n);
        let mut exps = vec![0u32; n];
        fn go(idx: &[usize], start: usize, left: usize, exps: &mut Vec<u32>, out: &mut MultiPoly) {
            if left == 0 {
                out.add_term(Monomial::new(exps.clone(), vec![0; exps.len()]), BigInt::one());
                return;
            }
            for k in start..idx.len() {
                exps[idx[k]] += 1;
                go(idx, k, left - 1, exps, out);
                exps[idx[k]] -= 1;
            }
        }
        go(&idx, 0, m as usize, &mut exps, &mut out);
        out
    }

    /// `e_m^{(k)} = e_m(x_1, ..., x_k)`.
    pub fn elementary_k(m: i64, k: usize, n: usize) -> Self {
        Self::elementary(m, &(1..=k).collect::<Vec<_>>(), n)
    }

    /// `h_m^{(k)} = h_m(x_1, ..., x_k)`.
    pub fn homogeneous_k(m: i64, k: usize, n: usize) -> Self {
        Self::homogeneous(m, &(1..=k).collect::<Vec<_>>(), n)
    }
}

fn normalize_index_set(set: &[usize], n: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = set
        .iter()
        .map(|&i| {
            assert!(i >= 1 && i <= n, "index {i} outside 1..={n}");
            i - 1
        })
        .collect();
    idx.sort_unstable();
    idx.dedup();
    idx
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        self.check_same_n(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        self.check_same_n(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(-1)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(-1)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_n(rhs);
        let mut out = MultiPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(mut iter: I) -> MultiPoly {
        let first = iter.next().expect("sum of an empty iterator has no ambient size");
        iter.fold(first, |acc, p| acc + p)
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    coeff: String,
    x: Vec<u32>,
    y: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    n: usize,
    terms: Vec<TermWire>,
}

/// `{"n": n, "terms": [{"coeff": "<decimal>", "x": [...], "y": [...]}]}`,
/// terms in descending graded-lex order.
impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyWire {
            n: self.n,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermWire { coeff: c.to_string(), x: m.x.clone(), y: m.y.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = PolyWire::deserialize(d)?;
        let mut p = MultiPoly::zero(wire.n);
        for t in wire.terms {
            if t.x.len() != wire.n || t.y.len() != wire.n {
                return Err(D::Error::custom("exponent vector length differs from n"));
            }
            let c: BigInt = t.coeff.parse().map_err(D::Error::custom)?;
            p.add_term(Monomial { x: t.x, y: t.y }, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, n: usize) -> MultiPoly {
        parse(s, n).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn permutation_action() {
        assert_eq!(poly("x1", 2).act_permutation(&perm("21")), poly("x2", 2));
        let e2 = MultiPoly::elementary_k(2, 3, 3);
        assert_eq!(e2.act_permutation(&perm("312")), e2);
        assert_eq!(poly("x1^2*x2", 3).act_permutation(&perm("231")), poly("x2^2*x3", 3));
        assert_eq!(poly("x1*y1", 2).act_permutation(&perm("21")), poly("x2*y1", 2));
    }

    #[test]
    fn action_is_a_left_action() {
        let p = poly("x1^3*x2 + 2*x2*x3^2 - x1*x4 + y2*x3", 4);
        for u in Permutation::all(4).iter().step_by(5) {
            for v in Permutation::all(4).iter().step_by(7) {
                assert_eq!(p.act_permutation(v).act_permutation(u), p.act_permutation(&(u * v)));
            }
        }
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(poly("x1^2*x2", 2).divided_difference(1, 2), poly("x1*x2", 2));
        assert!(poly("x1*x2", 2).divided_difference(1, 2).is_zero());
        assert_eq!(poly("x1", 2).divided_difference(1, 2), MultiPoly::one(2));
        assert_eq!(poly("x1", 3).divided_difference(3, 1), poly("-1", 3));
        assert_eq!(poly("x3^2*y1", 3).divided_difference(1, 3), poly("-x1*y1 - x3*y1", 3));
    }

    #[test]
    fn divided_difference_times_denominator() {
        let p = poly("x1^4*x2 - 3*x2^3*x3 + x1*x3^5*y2 + 7", 3);
        for (a, b) in [(1, 2), (2, 1), (1, 3), (3, 2)] {
            let q = p.divided_difference(a, b);
            let denom = &MultiPoly::x(3, a) - &MultiPoly::x(3, b);
            assert_eq!(&q * &denom, &p - &p.swap_x(a, b));
        }
    }

    #[test]
    fn twisted_op_examples() {
        assert_eq!(MultiPoly::one(3).twisted_op(2), MultiPoly::one(3));
        assert_eq!(poly("x1", 2).twisted_op(1), poly("x2 + 1", 2));
        let s132 = poly("x2^2*x3 + x1*x3 + x2^2 + x2*x3 + x1 + x2", 3);
        let s123 = poly("x2*x3^2 + x1*x2 + 2*x2*x3 + x3^2 + x2 + 2*x3 + 1", 3);
        assert_eq!(s132.twisted_op(2), s123);
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(poly("x1 - y1", 2).substitute_x_by_y(&perm("21")), poly("y2 - y1", 2));
        assert!(poly("x1 - y1", 2).substitute_x_by_y(&perm("12")).is_zero());
        assert_eq!(poly("x1*x2", 3).substitute_x_by_y(&perm("321")), poly("y3*y2", 3));
    }

    #[test]
    fn positivity_and_min_degree() {
        assert!(poly("x1 + 2*x2*x3", 3).is_monomial_nonnegative());
        assert!(!poly("x1 - x2", 3).is_monomial_nonnegative());
        let s123 = poly("x2*x3^2 + 2*x2*x3 + x3^2 + 2*x3 + x1*x2 + x2 + 1", 3);
        assert!(s123.is_monomial_nonnegative());
        assert_eq!(s123.min_degree_part().unwrap(), MultiPoly::one(3));
        assert_eq!(poly("x1^2 + x1", 2).min_degree_part().unwrap(), poly("x1", 2));
        let h = poly("x1*x2 - y1*x2 + 3*y2^2", 2);
        assert_eq!(h.min_degree_part().unwrap(), h);
        assert_eq!(MultiPoly::zero(2).min_degree_part(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn symmetric_function_examples() {
        assert_eq!(MultiPoly::elementary(2, &[1, 2], 3), poly("x1*x2", 3));
        assert_eq!(MultiPoly::homogeneous(2, &[1, 2], 3), poly("x1^2 + x1*x2 + x2^2", 3));
        assert!(MultiPoly::elementary(-1, &[1, 2], 3).is_zero());
        assert!(MultiPoly::homogeneous(-1, &[1, 2], 3).is_zero());
        assert_eq!(MultiPoly::elementary(0, &[], 3), MultiPoly::one(3));
        assert_eq!(MultiPoly::homogeneous(0, &[], 3), MultiPoly::one(3));
        assert!(MultiPoly::elementary(3, &[1, 2], 3).is_zero());
        assert!(MultiPoly::homogeneous(2, &[], 3).is_zero());
    }

    #[test]
    fn embed_restrict() {
        let p = poly("x1*y2 + 3", 2);
        assert_eq!(p.embed(4).restrict(2).unwrap(), p);
        assert_eq!(poly("x3", 3).restrict(2), Err(Error::VariablesOutOfRange { n: 2 }));
    }

    #[test]
    fn json_roundtrip() {
        let p = poly("x2*x3^2 - 12345678901234567890123*y1 + 1", 3);
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with(r#"{"n":3,"terms":[{"coeff":"1","x":[0,1,2],"y":[0,0,0]}"#));
        let back: MultiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
