//! Chains `u_1, ..., u_n` with `u_n = w^{-1} w_0` and every
//! `A_i(u_i, u_{i+1})` defined, their monomial contributions, and the
//! correspondence between minimum-degree chains and reduced pipe dreams.

use std::collections::HashMap;

use serde::Serialize;

use super::pipedream::PipeDream;
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::polyring::MultiPoly;
use crate::symchains::{a_set, ChainWitness};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChainSequence {
    n: usize,
    /// `u_1, ..., u_n`.
    perms: Vec<Permutation>,
    /// `A_i(u_i, u_{i+1})` for `i = 1..n-1`.
    witnesses: Vec<ChainWitness>,
}

/// Predecessors `u` of `next` at level `i`, with their witnesses.
type Steps = Vec<(Permutation, ChainWitness)>;

struct StepCache {
    all: Vec<Permutation>,
    memo: HashMap<(usize, Permutation), std::rc::Rc<Steps>>,
}

impl StepCache {
    fn new(n: usize) -> Self {
        Self { all: Permutation::all(n), memo: HashMap::new() }
    }

    fn steps(&mut self, i: usize, next: &Permutation) -> std::rc::Rc<Steps> {
        if let Some(s) = self.memo.get(&(i, next.clone())) {
            return s.clone();
        }
        let steps: Steps = self.all.iter().filter_map(|u| a_set(u, next, i).map(|wit| (u.clone(), wit))).collect();
        let steps = std::rc::Rc::new(steps);
        self.memo.insert((i, next.clone()), steps.clone());
        steps
    }
}

impl ChainSequence {
    /// Validates `u_1..u_n` and computes the witnesses.
    pub fn new(perms: Vec<Permutation>) -> Result<Self> {
        let n = perms.len();
        if n == 0 {
            return Err(Error::InvalidChain("empty sequence".into()));
        }
        if let Some(bad) = perms.iter().find(|u| u.n() != n) {
            return Err(Error::SizeMismatch { left: n, right: bad.n() });
        }
        let mut witnesses = Vec::with_capacity(n - 1);
        for i in 1..n {
            let wit = a_set(&perms[i - 1], &perms[i], i)
                .ok_or_else(|| Error::InvalidChain(format!("A_{i}({}, {}) does not exist", perms[i - 1], perms[i])))?;
            witnesses.push(wit);
        }
        Ok(Self { n, perms, witnesses })
    }

    /// All chains ending at `u_n = w^{-1} w_0`, sorted.
    pub fn enumerate(w: &Permutation) -> Vec<ChainSequence> {
        let n = w.n();
        let top = &w.inverse() * &Permutation::longest(n);
        let mut cache = StepCache::new(n);
        let mut out = Vec::new();
        let mut perms = vec![top.clone(); n];
        let mut witnesses: Vec<Option<ChainWitness>> = vec![None; n.saturating_sub(1)];
        fn go(
            i: usize,
            cache: &mut StepCache,
            perms: &mut Vec<Permutation>,
            witnesses: &mut Vec<Option<ChainWitness>>,
            out: &mut Vec<ChainSequence>,
        ) {
            if i == 0 {
                out.push(ChainSequence {
                    n: perms.len(),
                    perms: perms.clone(),
                    witnesses: witnesses.iter().map(|w| w.clone().expect("filled")).collect(),
                });
                return;
            }
            let next = perms[i].clone();
            for (u, wit) in cache.steps(i, &next).iter() {
                perms[i - 1] = u.clone();
                witnesses[i - 1] = Some(wit.clone());
                go(i - 1, cache, perms, witnesses, out);
            }
        }
        go(n - 1, &mut cache, &mut perms, &mut witnesses, &mut out);
        out.sort_by(|a, b| a.perms.cmp(&b.perms));
        out
    }

    /// The chains contributing to the ordinary `S_w`: `u_1 = id` and
    /// `|A_i| = l(u_{i+1}) - l(u_i)` for every `i`.
    pub fn enumerate_minimum_degree(w: &Permutation) -> Vec<ChainSequence> {
        Self::enumerate(w).into_iter().filter(Self::is_minimum_degree).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn witnesses(&self) -> &[ChainWitness] {
        &self.witnesses
    }

    /// `w` with `u_n = w^{-1} w_0`.
    pub fn permutation(&self) -> Permutation {
        (&self.perms[self.n - 1] * &Permutation::longest(self.n)).inverse()
    }

    pub fn is_minimum_degree(&self) -> bool {
        self.perms[0].is_identity()
            && self
                .witnesses
                .iter()
                .enumerate()
                .all(|(k, wit)| wit.support.len() + self.perms[k].length() == self.perms[k + 1].length())
    }

    /// `{u_i(j) : j <= i, j not in A_i}` for level `i` (1-based).
    pub fn level_variables(&self, i: usize) -> Vec<usize> {
        level_variables(&self.perms[i - 1], &self.witnesses[i - 1], i)
    }

    /// `prod_i prod_{j <= i, j not in A_i} x_{u_i(j)}`.
    pub fn weight(&self) -> MultiPoly {
        let mut exps = vec![0u32; self.n];
        for i in 1..self.n {
            for v in self.level_variables(i) {
                exps[v - 1] += 1;
            }
        }
        MultiPoly::x_monomial(&exps)
    }

    /// `prod_i prod_{j <= i, j not in A_i} (x_{u_i(j)} - y_{n-i})`.
    pub fn double_weight(&self) -> MultiPoly {
        let n = self.n;
        let mut out = MultiPoly::one(n);
        for i in 1..n {
            for v in self.level_variables(i) {
                out = &out * &(&MultiPoly::x(n, v) - &MultiPoly::y(n, n - i));
            }
        }
        out
    }
}

fn level_variables(u: &Permutation, wit: &ChainWitness, i: usize) -> Vec<usize> {
    (1..=i).filter(|j| !wit.support.contains(j)).map(|j| u.apply(j)).collect()
}

/// Sums `prod_i factor(i, v)` over all chains for `w`, where `v` runs over
/// the level variables. Memoized on `(i, u_{i+1})`.
fn chain_sum(w: &Permutation, factor: impl Fn(usize, usize) -> MultiPoly) -> MultiPoly {
    let n = w.n();
    let top = &w.inverse() * &Permutation::longest(n);
    let mut cache = StepCache::new(n);
    let mut memo: HashMap<(usize, Permutation), MultiPoly> = HashMap::new();
    fn go(
        i: usize,
        next: &Permutation,
        factor: &dyn Fn(usize, usize) -> MultiPoly,
        cache: &mut StepCache,
        memo: &mut HashMap<(usize, Permutation), MultiPoly>,
    ) -> MultiPoly {
        let n = next.n();
        if i == 0 {
            return MultiPoly::one(n);
        }
        if let Some(p) = memo.get(&(i, next.clone())) {
            return p.clone();
        }
        let mut total = MultiPoly::zero(n);
        for (u, wit) in cache.steps(i, next).iter() {
            let below = go(i - 1, u, factor, cache, memo);
            if below.is_zero() {
                continue;
            }
            let here = level_variables(u, wit, i).into_iter().fold(MultiPoly::one(n), |acc, v| &acc * &factor(i, v));
            total += &(&here * &below);
        }
        memo.insert((i, next.clone()), total.clone());
        total
    }
    go(n - 1, &top, &factor, &mut cache, &mut memo)
}

/// `~S_w` as a sum of monomials over chains; every coefficient it produces
/// is a count, hence nonnegative.
pub fn twisted_schubert_via_chains(w: &Permutation) -> MultiPoly {
    let n = w.n();
    chain_sum(w, |_, v| MultiPoly::x(n, v))
}

/// `~S_w(x, y)` as a sum over chains of products of `x_v - y_{n-i}`.
pub fn double_twisted_schubert_via_chains(w: &Permutation) -> MultiPoly {
    let n = w.n();
    chain_sum(w, |i, v| &MultiPoly::x(n, v) - &MultiPoly::y(n, n - i))
}

/// Reads `w_0 u_i^{-1}` down the left edge of column `n + 1 - i` (rows
/// `1..=i`) followed by `n - i, ..., 1`.
pub fn chain_from_pipe_dream(pd: &PipeDream) -> Result<ChainSequence> {
    let trace = pd.trace();
    if !trace.reduced {
        return Err(Error::NonReducedPipeDream);
    }
    let n = pd.n();
    let w0 = Permutation::longest(n);
    let mut perms = Vec::with_capacity(n);
    for i in 1..=n {
        let col = n + 1 - i;
        let mut one_line: Vec<usize> = (1..=i).map(|r| trace.left_labels[r - 1][col - 1]).collect();
        one_line.extend((1..=n - i).rev());
        let read = Permutation::new(one_line).map_err(|e| Error::InvalidChain(e.to_string()))?;
        perms.push((&w0 * &read).inverse());
    }
    ChainSequence::new(perms)
}

/// Inverse of [`chain_from_pipe_dream`]: column `n - i` has crosses in rows
/// `u_i(j)` for `j <= i`, `j` not in `A_i`.
pub fn pipe_dream_from_chain(chain: &ChainSequence) -> Result<PipeDream> {
    if !chain.is_minimum_degree() {
        return Err(Error::InvalidChain("not a minimum-degree chain".into()));
    }
    let n = chain.n();
    let crosses = (1..n).flat_map(|i| chain.level_variables(i).into_iter().map(move |row| (row, n - i)));
    let pd = PipeDream::new(n, crosses)?;
    if !pd.is_reduced() {
        return Err(Error::NonReducedPipeDream);
    }
    Ok(pd)
}
