//! Localizations `~S_v(wy, y)` at torus fixed points.

use std::fmt;

use serde::Serialize;

use super::{double_schubert, double_twisted_schubert};
use crate::permutation::{subwords_with_product, Permutation, ReducedWord};
use crate::polyring::MultiPoly;

/// `x_j -> y_{w(j)}` in the double twisted polynomial of `v`.
pub fn localize(v: &Permutation, w: &Permutation) -> MultiPoly {
    double_twisted_schubert(v).substitute_x_by_y(w)
}

/// The factorization `P(w) * Q(v, w)` of a localization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationFactors {
    /// Pairs `a < b` with `w^{-1}(a) < w^{-1}(b)`; each gives `1 + y_b - y_a`.
    pub prefactor_pairs: Vec<(usize, usize)>,
    pub prefactor: MultiPoly,
    pub subset_sum: MultiPoly,
}

impl LocalizationFactors {
    pub fn product(&self) -> MultiPoly {
        &self.prefactor * &self.subset_sum
    }
}

/// Factored text: `(1+y3-y1)*(1+y3-y2)`, with the subset sum appended in
/// parentheses unless it is 1.
impl fmt::Display for LocalizationFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.prefactor_pairs.iter().map(|(a, b)| format!("(1+y{b}-y{a})")).collect();
        if self.subset_sum.is_zero() {
            return f.write_str("0");
        }
        if self.subset_sum != MultiPoly::one(self.subset_sum.n()) || parts.is_empty() {
            if parts.is_empty() {
                parts.push(self.subset_sum.to_string());
            } else {
                parts.push(format!("({})", self.subset_sum));
            }
        }
        f.write_str(&parts.join("*"))
    }
}

fn prefactor(w: &Permutation) -> (Vec<(usize, usize)>, MultiPoly) {
    let n = w.n();
    let winv = w.inverse();
    let mut pairs = Vec::new();
    let mut p = MultiPoly::one(n);
    for a in 1..=n {
        for b in a + 1..=n {
            if winv.apply(a) < winv.apply(b) {
                pairs.push((a, b));
                p = &p * &(&(&MultiPoly::one(n) + &MultiPoly::y(n, b)) - &MultiPoly::y(n, a));
            }
        }
    }
    (pairs, p)
}

/// `sum_J prod_{j in J} (y_{beta_j} - y_{alpha_j})` over subwords of
/// `word` (a reduced word for `w^{-1}`) with product `v^{-1}`.
fn subset_sum(v: &Permutation, word: &ReducedWord, require_reduced: bool) -> MultiPoly {
    let n = v.n();
    let pairs = word.alpha_beta_pairs(n);
    let target = v.inverse();
    let mut out = MultiPoly::zero(n);
    for subset in subwords_with_product(word.letters(), &target, require_reduced) {
        let term = subset.iter().fold(MultiPoly::one(n), |acc, &j| {
            let (alpha, beta) = pairs[j];
            &acc * &(&MultiPoly::y(n, beta) - &MultiPoly::y(n, alpha))
        });
        out += &term;
    }
    out
}

/// Closed-form localization using the canonical reduced word of `w^{-1}`.
pub fn localize_formula(v: &Permutation, w: &Permutation) -> LocalizationFactors {
    localize_formula_with_word(v, w, &w.inverse().canonical_reduced_word())
}

/// Closed-form localization for a given reduced word of `w^{-1}`.
pub fn localize_formula_with_word(v: &Permutation, w: &Permutation, word: &ReducedWord) -> LocalizationFactors {
    assert_eq!(v.n(), w.n());
    debug_assert_eq!(word.product(w.n()), w.inverse());
    let (prefactor_pairs, prefactor) = prefactor(w);
    LocalizationFactors { prefactor_pairs, prefactor, subset_sum: subset_sum(v, word, false) }
}

/// `S_v(wy, y)` as a sum over reduced subwords of a reduced word for `w^{-1}`.
pub fn billey(v: &Permutation, w: &Permutation) -> MultiPoly {
    assert_eq!(v.n(), w.n());
    subset_sum(v, &w.inverse().canonical_reduced_word(), true)
}

/// Direct substitution into the double Schubert polynomial.
pub fn localize_ordinary(v: &Permutation, w: &Permutation) -> MultiPoly {
    double_schubert(v).substitute_x_by_y(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    const IDENTITY_TABLE: [(&str, &str); 6] = [
        ("321", "1 + (y2-y1)*(y3-y2)"),
        ("312", "1+y2-y1"),
        ("231", "1+y3-y2"),
        ("213", "(1+y3-y1)*(1+y3-y2)"),
        ("132", "(1+y2-y1)*(1+y3-y1)"),
        ("123", "(1+y2-y1)*(1+y3-y1)*(1+y3-y2)"),
    ];

    #[test]
    fn identity_localizations_in_s3() {
        let v = perm("123");
        for (w, expected) in IDENTITY_TABLE {
            let w = perm(w);
            let expected = parse(expected, 3).unwrap();
            assert_eq!(localize(&v, &w), expected, "{w}");
            assert_eq!(localize_formula(&v, &w).product(), expected, "{w}");
        }
    }

    #[test]
    fn factored_display() {
        let f = localize_formula(&perm("123"), &perm("213"));
        assert_eq!(f.to_string(), "(1+y3-y1)*(1+y3-y2)");
        let f = localize_formula(&perm("123"), &perm("321"));
        assert_eq!(f.to_string(), "y1*y2 - y1*y3 - y2^2 + y2*y3 + 1");
        assert_eq!(localize_formula(&perm("321"), &perm("123")).to_string(), "0");
    }

    #[test]
    fn longest_element() {
        let w0 = perm("321");
        let f = localize_formula(&w0, &w0);
        assert_eq!(f.prefactor, MultiPoly::one(3));
        assert_eq!(f.subset_sum, parse("(y2-y1)(y3-y1)(y3-y2)", 3).unwrap());
        for w in Permutation::all(3) {
            if w != w0 {
                assert!(localize(&w0, &w).is_zero());
            }
        }
        let f = localize_formula(&perm("123"), &perm("123"));
        assert_eq!(f.subset_sum, MultiPoly::one(3));
    }

    #[test]
    fn formula_matches_substitution_in_s3() {
        for v in Permutation::all(3) {
            for w in Permutation::all(3) {
                assert_eq!(localize_formula(&v, &w).product(), localize(&v, &w), "{v} at {w}");
            }
        }
    }

    #[test]
    fn subset_sum_independent_of_word() {
        for v in Permutation::all(3) {
            for w in Permutation::all(3) {
                let sums: Vec<MultiPoly> = w
                    .inverse()
                    .reduced_words()
                    .iter()
                    .map(|word| localize_formula_with_word(&v, &w, word).subset_sum)
                    .collect();
                assert!(sums.windows(2).all(|p| p[0] == p[1]), "{v} at {w}");
            }
        }
    }

    #[test]
    fn billey_examples() {
        assert_eq!(billey(&perm("213"), &perm("231")), parse("y2 - y1", 3).unwrap());
        for w in Permutation::all(3) {
            assert_eq!(billey(&perm("123"), &w), MultiPoly::one(3));
        }
        assert!(billey(&perm("321"), &perm("213")).is_zero());
        for v in Permutation::all(3) {
            for w in Permutation::all(3) {
                assert_eq!(billey(&v, &w), localize_ordinary(&v, &w), "{v} at {w}");
            }
        }
    }

    #[test]
    fn recurrence_in_s3() {
        let n = 3;
        for v in Permutation::all(n) {
            for w in Permutation::all(n) {
                for i in 1..n {
                    let d = &MultiPoly::y(n, w.apply(i + 1)) - &MultiPoly::y(n, w.apply(i));
                    let lhs = &(&MultiPoly::one(n) + &d) * &localize(&v, &w.mul_simple_right(i));
                    let rhs = &(&d * &localize(&v.mul_simple_right(i), &w)) + &localize(&v, &w);
                    assert_eq!(lhs, rhs, "{v} {w} {i}");
                }
            }
        }
    }
}
