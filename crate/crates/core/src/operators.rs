//! Formal operator expressions over the divided differences `d_ab`.
//!
//! A term is `coeff * [u] * d_{a1 b1} d_{a2 b2} ... d_{ar br}`, read as a
//! composition with the leftmost symbol outermost, so `d_{ar br}` acts first
//! and the optional permutation `u` acts last. Expressions are kept formal;
//! two expressions are compared by applying them to a spanning basket of
//! polynomials.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::permutation::{subwords_with_product, Permutation, ReducedWord};
use crate::polyring::MultiPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpTerm {
    pub coeff: i64,
    pub leading: Option<Permutation>,
    pub word: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorExpr {
    n: usize,
    terms: Vec<OpTerm>,
    positive: bool,
}

type TermKey = (Option<Permutation>, Vec<(usize, usize)>);

impl OperatorExpr {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: Vec::new(), positive: false }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_terms(n, vec![OpTerm { coeff: 1, leading: None, word: Vec::new() }])
    }

    /// A single word `d_{a1 b1} ... d_{ar br}` with coefficient 1.
    pub fn word(n: usize, pairs: &[(usize, usize)]) -> Self {
        Self::from_terms(n, vec![OpTerm { coeff: 1, leading: None, word: pairs.to_vec() }])
    }

    /// Builds an expression, merging equal terms and dropping zeros.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = OpTerm>) -> Self {
        let mut acc: BTreeMap<TermKey, i64> = BTreeMap::new();
        for t in terms {
            for &(a, b) in &t.word {
                assert!(a != b && a >= 1 && b >= 1 && a <= n && b <= n, "bad pair ({a},{b}) for n = {n}");
            }
            if let Some(u) = &t.leading {
                assert_eq!(u.n(), n);
            }
            *acc.entry((t.leading, t.word)).or_insert(0) += t.coeff;
        }
        let mut terms: Vec<OpTerm> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|((leading, word), coeff)| OpTerm { coeff, leading, word })
            .collect();
        terms.sort_by(|s, t| {
            t.word.len().cmp(&s.word.len()).then_with(|| s.leading.cmp(&t.leading)).then_with(|| s.word.cmp(&t.word))
        });
        Self { n, terms, positive: false }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[OpTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the expression was produced by the positive expansion.
    pub fn is_flagged_positive(&self) -> bool {
        self.positive
    }

    /// Structural positivity: every pair increasing, every coefficient
    /// positive, no permutation factors.
    pub fn satisfies_positive_form(&self) -> bool {
        self.terms.iter().all(|t| t.coeff > 0 && t.leading.is_none() && t.word.iter().all(|&(a, b)| a < b))
    }

    fn mark_positive(mut self) -> Self {
        debug_assert!(self.satisfies_positive_form());
        self.positive = true;
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self::from_terms(self.n, self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|t| OpTerm { coeff: t.coeff * c, ..t.clone() }))
    }

    /// `d_ab * self`; only defined for expressions without permutation factors.
    pub fn prefix(&self, a: usize, b: usize) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|t| {
                assert!(t.leading.is_none(), "prefix through a permutation factor");
                let mut word = vec![(a, b)];
                word.extend_from_slice(&t.word);
                OpTerm { coeff: t.coeff, leading: None, word }
            }),
        )
    }

    /// `u * self`.
    pub fn with_leading(&self, u: &Permutation) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|t| OpTerm {
                coeff: t.coeff,
                leading: Some(match &t.leading {
                    Some(l) => u * l,
                    None => u.clone(),
                }),
                word: t.word.clone(),
            }),
        )
    }

    /// Rewrites every `d_ab` with `a > b` as `-d_ba`.
    pub fn oriented(&self) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|t| {
                let flips = t.word.iter().filter(|(a, b)| a > b).count();
                OpTerm {
                    coeff: if flips % 2 == 0 { t.coeff } else { -t.coeff },
                    leading: t.leading.clone(),
                    word: t.word.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect(),
                }
            }),
        )
    }

    /// Terms whose word has exactly `len` letters.
    pub fn part_of_length(&self, len: usize) -> Self {
        Self::from_terms(self.n, self.terms.iter().filter(|t| t.word.len() == len).cloned())
    }

    pub fn apply(&self, p: &MultiPoly) -> MultiPoly {
        assert_eq!(p.n(), self.n, "operator and polynomial sizes differ");
        let mut out = MultiPoly::zero(self.n);
        for t in &self.terms {
            let mut q = p.clone();
            for &(a, b) in t.word.iter().rev() {
                if q.is_zero() {
                    break;
                }
                q = q.divided_difference(a, b);
            }
            if let Some(u) = &t.leading {
                q = q.act_permutation(u);
            }
            out += &q.scale(t.coeff);
        }
        out
    }

    /// First basket element on which the two expressions differ.
    pub fn disagreement<'a>(&self, other: &Self, basket: &'a [MultiPoly]) -> Option<&'a MultiPoly> {
        basket.iter().find(|p| self.apply(p) != other.apply(p))
    }

    pub fn agrees_on(&self, other: &Self, basket: &[MultiPoly]) -> bool {
        self.disagreement(other, basket).is_none()
    }
}

impl fmt::Display for OperatorExpr {
    /// `d(a,b)` words joined by `*`, terms by ` + ` / ` − `, permutation
    /// factors as `[w=...]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            match (k, t.coeff < 0) {
                (0, true) => f.write_str("−")?,
                (0, false) => {}
                (_, true) => f.write_str(" − ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            let mag = t.coeff.unsigned_abs();
            if mag != 1 || (t.leading.is_none() && t.word.is_empty()) {
                factors.push(mag.to_string());
            }
            if let Some(u) = &t.leading {
                factors.push(format!("[w={u}]"));
            }
            factors.extend(t.word.iter().map(|(a, b)| format!("∂({a},{b})")));
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Moves the permutations of `phi_J` to the left and cancels them against
/// `v^{-1}`: for each position `j` outside `J`, `d_{i_j}` becomes
/// `d_{r^{-1}(i_j), r^{-1}(i_j + 1)}` where `r` is the product of the letters
/// of `J` to the right of `j`.
fn phi_word(word: &[usize], subset: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut r_inv = Permutation::identity(n);
    let mut in_j = vec![false; word.len()];
    for &j in subset {
        in_j[j] = true;
    }
    let mut pairs = Vec::with_capacity(word.len() - subset.len());
    for (pos, &i) in word.iter().enumerate().rev() {
        if in_j[pos] {
            r_inv = r_inv.mul_simple_right(i);
        } else {
            pairs.push((r_inv.apply(i), r_inv.apply(i + 1)));
        }
    }
    pairs.reverse();
    pairs
}

fn naive_expansion(word: &[usize], v: &Permutation, require_reduced: bool) -> OperatorExpr {
    let n = v.n();
    let subsets = subwords_with_product(word, v, require_reduced);
    OperatorExpr::from_terms(n, subsets.iter().map(|j| OpTerm { coeff: 1, leading: None, word: phi_word(word, j, n) }))
}

/// Macdonald's skew divided difference `d_{w/v}` from the canonical word of `w`.
pub fn skew_naive(w: &Permutation, v: &Permutation) -> OperatorExpr {
    assert_eq!(w.n(), v.n());
    skew_naive_with_word(&w.canonical_reduced_word(), v)
}

pub fn skew_naive_with_word(word: &ReducedWord, v: &Permutation) -> OperatorExpr {
    naive_expansion(word.letters(), v, true)
}

/// `~d_{w/v}` from subwords of the canonical word of `w` with product `v`,
/// not necessarily reduced.
pub fn twisted_skew_naive(w: &Permutation, v: &Permutation) -> OperatorExpr {
    assert_eq!(w.n(), v.n());
    twisted_skew_naive_with_word(w.canonical_reduced_word().letters(), v)
}

/// As [`twisted_skew_naive`] for an arbitrary (possibly non-reduced) word of `w`.
pub fn twisted_skew_naive_with_word(word: &[usize], v: &Permutation) -> OperatorExpr {
    naive_expansion(word, v, false)
}

/// Positive expansion of `~d_{w/v}`: with `w_0 v = s_{i_1} ... s_{i_l}`
/// reduced, the sum over `J` with `prod_{j in J} s_{i_j} = w_0 w` of
/// `prod_{j not in J} d_{alpha_j beta_j}`. Uses the right-canonical word of
/// `w_0 v`.
pub fn twisted_skew_positive(w: &Permutation, v: &Permutation) -> OperatorExpr {
    assert_eq!(w.n(), v.n());
    let w0 = Permutation::longest(v.n());
    twisted_skew_positive_with_word(&(&w0 * v).right_canonical_reduced_word(), w)
}

/// Positive expansion for a given reduced word of `w_0 v`.
pub fn twisted_skew_positive_with_word(word_w0v: &ReducedWord, w: &Permutation) -> OperatorExpr {
    let n = w.n();
    let pairs = word_w0v.alpha_beta_pairs(n);
    let target = &Permutation::longest(n) * w;
    let subsets = subwords_with_product(word_w0v.letters(), &target, false);
    OperatorExpr::from_terms(
        n,
        subsets.iter().map(|j| {
            let mut in_j = vec![false; pairs.len()];
            for &q in j {
                in_j[q] = true;
            }
            OpTerm {
                coeff: 1,
                leading: None,
                word: pairs.iter().zip(&in_j).filter(|(_, inside)| !**inside).map(|(p, _)| *p).collect(),
            }
        }),
    )
    .mark_positive()
}

/// `T_w = sum_v v ~d_{w/v}` as a single expression with permutation factors.
pub fn twisted_expansion(w: &Permutation) -> OperatorExpr {
    let n = w.n();
    Permutation::all(n)
        .iter()
        .map(|v| twisted_skew_naive(w, v).with_leading(v))
        .fold(OperatorExpr::zero(n), |acc, e| acc.add(&e))
}

/// `T_w P = T_{i_1} ... T_{i_l} P` for a reduced word of `w`.
pub fn apply_twisted(w: &Permutation, p: &MultiPoly) -> MultiPoly {
    apply_twisted_word(w.canonical_reduced_word().letters(), p)
}

pub fn apply_twisted_word(word: &[usize], p: &MultiPoly) -> MultiPoly {
    word.iter().rev().fold(p.clone(), |acc, &i| acc.twisted_op(i))
}

/// `d_w P = d_{i_1} ... d_{i_l} P` for a reduced word of `w`.
pub fn apply_nil(w: &Permutation, p: &MultiPoly) -> MultiPoly {
    w.canonical_reduced_word().letters().iter().rev().fold(p.clone(), |acc, &i| acc.divided_difference(i, i + 1))
}

/// Right-hand side of the twisted Leibniz rule,
/// `sum_v v(~d_{w/v} P) * T_v Q`.
pub fn leibniz_expand(w: &Permutation, p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    let n = w.n();
    let mut out = MultiPoly::zero(n);
    for v in Permutation::all(n) {
        let op = twisted_skew_naive(w, &v);
        if op.is_zero() {
            continue;
        }
        let left = op.apply(p).act_permutation(&v);
        if left.is_zero() {
            continue;
        }
        out += &(&left * &apply_twisted(&v, q));
    }
    out
}

/// All monomials in `x_1..x_n` of degree at most `max_degree`.
pub fn monomial_basket(n: usize, max_degree: u32) -> Vec<MultiPoly> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn go(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<MultiPoly>) {
        if i == exps.len() {
            out.push(MultiPoly::x_monomial(exps));
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            go(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    go(0, max_degree, &mut exps, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn expr(n: usize, terms: &[(i64, &[(usize, usize)])]) -> OperatorExpr {
        OperatorExpr::from_terms(n, terms.iter().map(|(c, w)| OpTerm { coeff: *c, leading: None, word: w.to_vec() }))
    }

    // w = s1 s2 s3 s2 s1, v = s1
    fn w_12321() -> Permutation {
        Permutation::from_word(4, &[1, 2, 3, 2, 1])
    }

    #[test]
    fn apply_examples() {
        let p = parse("x1^2*x2", 2).unwrap();
        assert_eq!(OperatorExpr::word(2, &[(1, 2)]).apply(&p), p.divided_difference(1, 2));
        assert!(OperatorExpr::zero(2).apply(&p).is_zero());
        assert_eq!(OperatorExpr::identity(2).apply(&p), p);
        let swap = OperatorExpr::identity(2).with_leading(&perm("21"));
        assert_eq!(swap.apply(&p), parse("x1*x2^2", 2).unwrap());
    }

    #[test]
    fn skew_naive_example() {
        let w = w_12321();
        let v = perm("2134");
        let expected = expr(4, &[(1, &[(2, 3), (3, 4), (2, 3), (1, 2)]), (-1, &[(1, 2), (1, 3), (3, 4), (1, 3)])]);
        assert_eq!(skew_naive(&w, &v).oriented(), expected);
        assert_eq!(skew_naive(&w, &w), OperatorExpr::identity(4));
        assert!(skew_naive(&perm("1324"), &perm("2134")).is_zero());
    }

    #[test]
    fn twisted_skew_naive_example() {
        let w = w_12321();
        let expected = expr(
            4,
            &[
                (1, &[(2, 3), (3, 4), (2, 3), (1, 2)]),
                (1, &[(2, 1), (1, 3), (3, 4), (1, 3)]),
                (1, &[(2, 4), (1, 2)]),
                (1, &[(2, 1), (1, 4)]),
            ],
        );
        assert_eq!(twisted_skew_naive_with_word(&[1, 2, 3, 2, 1], &perm("2134")), expected);
        assert_eq!(twisted_skew_naive(&w, &w), OperatorExpr::identity(4));
        let s121 = perm("321");
        let expected = expr(3, &[(1, &[(1, 2), (2, 3), (1, 2)]), (1, &[(1, 3)])]);
        assert_eq!(twisted_skew_naive(&s121, &Permutation::identity(3)), expected);
    }

    #[test]
    fn twisted_skew_positive_example() {
        let got = twisted_skew_positive(&w_12321(), &perm("2134"));
        let expected = expr(
            4,
            &[(1, &[(3, 4), (2, 4), (1, 3), (2, 3)]), (1, &[(3, 4), (1, 4), (2, 4), (1, 3)]), (1, &[(1, 4), (2, 4)])],
        );
        assert_eq!(got.terms(), expected.terms());
        assert!(got.is_flagged_positive() && got.satisfies_positive_form());
        let basket = monomial_basket(4, 6);
        assert!(got.agrees_on(&twisted_skew_naive(&w_12321(), &perm("2134")), &basket));

        let w0 = Permutation::longest(4);
        assert_eq!(twisted_skew_positive(&w0, &w0).terms(), OperatorExpr::identity(4).terms());
        assert!(twisted_skew_positive(&perm("4312"), &w0).is_zero());
    }

    #[test]
    fn oriented_example_and_display() {
        let e = expr(4, &[(1, &[(2, 3), (1, 2)]), (2, &[(2, 1)]), (3, &[])]);
        assert_eq!(e.to_string(), "∂(2,3)*∂(1,2) + 2*∂(2,1) + 3");
        assert_eq!(e.oriented().to_string(), "∂(2,3)*∂(1,2) − 2*∂(1,2) + 3");
        let led = OperatorExpr::word(3, &[(1, 3)]).with_leading(&perm("213"));
        assert_eq!(led.to_string(), "[w=213]*∂(1,3)");
        assert_eq!(OperatorExpr::zero(3).to_string(), "0");
    }

    #[test]
    fn leibniz_examples() {
        let s1 = perm("21");
        let p = parse("x1", 2).unwrap();
        let q = parse("x2", 2).unwrap();
        assert_eq!(leibniz_expand(&s1, &p, &q), (&p * &q).twisted_op(1));
        let id = Permutation::identity(3);
        let p = parse("x1^2 + x2*x3", 3).unwrap();
        let q = parse("x3 - 2*x1", 3).unwrap();
        assert_eq!(leibniz_expand(&id, &p, &q), &p * &q);
        let w0 = Permutation::longest(3);
        let p = parse("x1^3 + 2*x1*x2*x3 - x3^2", 3).unwrap();
        let q = parse("x2^3 - x1*x3 + 4*x1", 3).unwrap();
        assert_eq!(leibniz_expand(&w0, &p, &q), apply_twisted(&w0, &(&p * &q)));
    }

    #[test]
    fn twisted_expansion_is_t_w() {
        let basket = monomial_basket(3, 3);
        for w in Permutation::all(3) {
            let e = twisted_expansion(&w);
            for p in &basket {
                assert_eq!(e.apply(p), apply_twisted(&w, p), "w = {w}, P = {p}");
            }
        }
    }

    #[test]
    fn basket_size() {
        // C(4 + 6, 4)
        assert_eq!(monomial_basket(4, 6).len(), 210);
    }
}
