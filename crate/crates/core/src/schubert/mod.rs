//! The Schubert family: ordinary, double, twisted and double twisted
//! polynomials, each computable by an operator recursion and by a
//! combinatorial sum (pipe dreams or Bruhat chains).

mod chains;
mod expand;
mod localize;
mod pipedream;

pub use chains::{
    chain_from_pipe_dream, double_twisted_schubert_via_chains, pipe_dream_from_chain, twisted_schubert_via_chains,
    ChainSequence,
};
pub use expand::{default_expansion_size, expand_schubert};
pub use localize::{
    billey, localize, localize_formula, localize_formula_with_word, localize_ordinary, LocalizationFactors,
};
pub use pipedream::{double_schubert_via_pipedreams, schubert_via_pipedreams, PipeDream};

use serde::Serialize;

use crate::operators::{apply_nil, apply_twisted};
use crate::permutation::Permutation;
use crate::polyring::MultiPoly;

/// `prod_{i+j <= n} (x_i - y_j)`.
pub fn double_staircase(n: usize) -> MultiPoly {
    let mut out = MultiPoly::one(n);
    for i in 1..n {
        for j in 1..=n - i {
            out = &out * &(&MultiPoly::x(n, i) - &MultiPoly::y(n, j));
        }
    }
    out
}

fn top_word(w: &Permutation) -> Permutation {
    &w.inverse() * &Permutation::longest(w.n())
}

/// `S_w = d_{w^{-1} w_0}(x_1^{n-1} ... x_{n-1})`.
pub fn schubert(w: &Permutation) -> MultiPoly {
    apply_nil(&top_word(w), &MultiPoly::staircase(w.n()))
}

/// `S_w(x, y)`, divided differences acting on `x` only.
pub fn double_schubert(w: &Permutation) -> MultiPoly {
    apply_nil(&top_word(w), &double_staircase(w.n()))
}

/// `~S_w = T_{w^{-1} w_0}(x_1^{n-1} ... x_{n-1})`. Unlike `S_w` this depends on `n`.
pub fn twisted_schubert(w: &Permutation) -> MultiPoly {
    apply_twisted(&top_word(w), &MultiPoly::staircase(w.n()))
}

pub fn double_twisted_schubert(w: &Permutation) -> MultiPoly {
    apply_twisted(&top_word(w), &double_staircase(w.n()))
}

/// `S_w` computed in the smallest symmetric group containing `w`, then
/// embedded into ambient size `n`. Schubert polynomials are stable, so this
/// agrees with `schubert(w.embed(n))`.
pub fn schubert_stable(w: &Permutation, n: usize) -> MultiPoly {
    let m = w.largest_moved().max(1);
    let small = w.restrict(m).expect("restriction to the moved letters");
    let p = schubert(&small);
    if n >= m {
        p.embed(n)
    } else {
        p.restrict(n).expect("variables of S_w lie below its largest moved letter")
    }
}

/// One failure of monomial positivity for `T_v S_w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TvCounterexample {
    pub v: Permutation,
    pub w: Permutation,
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TvPositivityReport {
    pub n: usize,
    pub checked: usize,
    pub counterexamples: Vec<TvCounterexample>,
}

/// Tests whether `T_v S_w` is monomial positive for every `v, w` in `S_n`.
/// The answer is not known in general; this only reports what it finds.
pub fn tv_positivity(n: usize) -> TvPositivityReport {
    let all = Permutation::all(n);
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for w in &all {
        let sw = schubert(w);
        for v in &all {
            checked += 1;
            let p = apply_twisted(v, &sw);
            if !p.is_monomial_nonnegative() {
                counterexamples.push(TvCounterexample { v: v.clone(), w: w.clone(), polynomial: p.to_string() });
            }
        }
    }
    TvPositivityReport { n, checked, counterexamples }
}
