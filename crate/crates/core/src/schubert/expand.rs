//! Expansion of a polynomial in `x` into the Schubert basis.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use super::schubert_stable;
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::polyring::{Monomial, MultiPoly};

/// `max total degree + largest variable index + 1`, enough for every
/// Lehmer code met during the expansion to fit.
pub fn default_expansion_size(f: &MultiPoly) -> usize {
    let degree = f.total_degree().unwrap_or(0) as usize;
    let largest =
        f.terms().flat_map(|(m, _)| m.x_exponents().iter().rposition(|&e| e > 0).map(|i| i + 1)).max().unwrap_or(0);
    (degree + largest + 1).max(f.n())
}

/// Coefficients `c_u` with `f = sum_u c_u S_u`, `u` in `S_big_n`.
///
/// The lex-smallest monomial (comparing `x_1` first) of `sum c_u S_u` is
/// `x^{code(u)}` for the `u` with lex-smallest code, with coefficient `c_u`;
/// peel it off and repeat.
pub fn expand_schubert(f: &MultiPoly, big_n: usize) -> Result<BTreeMap<Permutation, BigInt>> {
    if f.has_y() {
        return Err(Error::HasYVariables);
    }
    let mut rest = if f.n() <= big_n { f.embed(big_n) } else { f.restrict(big_n)? };
    let mut cache: HashMap<Permutation, MultiPoly> = HashMap::new();
    let mut out = BTreeMap::new();
    while !rest.is_zero() {
        let (lead, coeff) = rest
            .terms()
            .min_by(|a, b| a.0.x_exponents().cmp(b.0.x_exponents()))
            .map(|(m, c): (&Monomial, &BigInt)| (m.x_exponents().to_vec(), c.clone()))
            .expect("nonzero");
        let u = Permutation::from_lehmer_code(&lead, big_n)
            .ok_or_else(|| Error::ExpansionTooSmall { n: big_n, code: lead.clone() })?;
        let s = cache.entry(u.clone()).or_insert_with(|| schubert_stable(&u, big_n));
        rest -= &s.scale(coeff.clone());
        out.insert(u, coeff);
    }
    Ok(out)
}
