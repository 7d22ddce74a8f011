//! Pipe dreams in the staircase `{(i, j) : i + j <= n}`.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::polyring::MultiPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PipeDreamWire")]
pub struct PipeDream {
    n: usize,
    crosses: BTreeSet<(usize, usize)>,
}

#[derive(Deserialize)]
struct PipeDreamWire {
    n: usize,
    crosses: Vec<(usize, usize)>,
}

impl TryFrom<PipeDreamWire> for PipeDream {
    type Error = Error;

    fn try_from(w: PipeDreamWire) -> Result<Self> {
        PipeDream::new(w.n, w.crosses)
    }
}

/// Result of following every pipe through the grid.
#[derive(Clone, Debug)]
pub(crate) struct Trace {
    pub(crate) permutation: Permutation,
    pub(crate) reduced: bool,
    /// `left_labels[r-1][c-1]`: label (top exit column) of the pipe crossing
    /// the left edge of cell `(r, c)`.
    pub(crate) left_labels: Vec<Vec<usize>>,
}

impl PipeDream {
    pub fn new(n: usize, crosses: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let crosses: BTreeSet<(usize, usize)> = crosses.into_iter().collect();
        if let Some(&(row, col)) = crosses.iter().find(|&&(r, c)| r == 0 || c == 0 || r + c > n) {
            return Err(Error::CellOutsideStaircase { row, col, n });
        }
        Ok(Self { n, crosses })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn crosses(&self) -> &BTreeSet<(usize, usize)> {
        &self.crosses
    }

    pub fn is_cross(&self, row: usize, col: usize) -> bool {
        self.crosses.contains(&(row, col))
    }

    pub(crate) fn trace(&self) -> Trace {
        let n = self.n;
        let mut images = vec![0; n];
        // entered_from_left[r][c] = row the pipe started in
        let mut entered_from_left = vec![vec![0; n + 1]; n + 1];
        let mut horizontal = vec![vec![0; n + 1]; n + 1];
        let mut vertical = vec![vec![0; n + 1]; n + 1];
        for start in 1..=n {
            let (mut r, mut c) = (start, 1);
            let mut moving_right = true;
            loop {
                if moving_right {
                    entered_from_left[r][c] = start;
                }
                let cross = self.is_cross(r, c);
                if cross {
                    if moving_right {
                        horizontal[r][c] = start;
                    } else {
                        vertical[r][c] = start;
                    }
                } else {
                    moving_right = !moving_right;
                }
                if moving_right {
                    c += 1;
                } else if r == 1 {
                    images[start - 1] = c;
                    break;
                } else {
                    r -= 1;
                }
                debug_assert!(c <= n, "pipe left the grid");
            }
        }
        let mut seen = HashSet::new();
        let mut reduced = true;
        for &(r, c) in &self.crosses {
            let (a, b) = (horizontal[r][c], vertical[r][c]);
            if !seen.insert((a.min(b), a.max(b))) {
                reduced = false;
            }
        }
        let left_labels = (1..=n)
            .map(|r| {
                (1..=n)
                    .map(|c| match entered_from_left[r][c] {
                        0 => 0,
                        s => images[s - 1],
                    })
                    .collect()
            })
            .collect();
        Trace { permutation: Permutation::new(images).expect("pipes realize a permutation"), reduced, left_labels }
    }

    /// The permutation `w` such that the pipe entering row `i` exits column `w(i)`.
    pub fn permutation(&self) -> Permutation {
        self.trace().permutation
    }

    /// No two pipes cross more than once.
    pub fn is_reduced(&self) -> bool {
        self.trace().reduced
    }

    /// `prod x_row` over the crosses.
    pub fn weight(&self) -> MultiPoly {
        let mut exps = vec![0u32; self.n];
        for &(r, _) in &self.crosses {
            exps[r - 1] += 1;
        }
        MultiPoly::x_monomial(&exps)
    }

    /// `prod (x_row - y_col)` over the crosses.
    pub fn double_weight(&self) -> MultiPoly {
        self.crosses
            .iter()
            .fold(MultiPoly::one(self.n), |acc, &(r, c)| &acc * &(&MultiPoly::x(self.n, r) - &MultiPoly::y(self.n, c)))
    }

    /// Reduced pipe dreams of `w`, by brute force over subsets of the
    /// staircase with exactly `l(w)` crosses.
    pub fn enumerate(w: &Permutation) -> Vec<PipeDream> {
        let n = w.n();
        let cells: Vec<(usize, usize)> = (1..n).flat_map(|r| (1..=n - r).map(move |c| (r, c))).collect();
        let target = w.length();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        fn go(
            cells: &[(usize, usize)],
            idx: usize,
            left: usize,
            n: usize,
            w: &Permutation,
            chosen: &mut Vec<(usize, usize)>,
            out: &mut Vec<PipeDream>,
        ) {
            if left == 0 {
                let pd = PipeDream { n, crosses: chosen.iter().copied().collect() };
                let t = pd.trace();
                if t.reduced && &t.permutation == w {
                    out.push(pd);
                }
                return;
            }
            if cells.len() - idx < left {
                return;
            }
            chosen.push(cells[idx]);
            go(cells, idx + 1, left - 1, n, w, chosen, out);
            chosen.pop();
            go(cells, idx + 1, left, n, w, chosen, out);
        }
        go(&cells, 0, target, n, w, &mut chosen, &mut out);
        out.sort();
        out
    }
}

pub fn schubert_via_pipedreams(w: &Permutation) -> MultiPoly {
    PipeDream::enumerate(w).iter().fold(MultiPoly::zero(w.n()), |acc, pd| &acc + &pd.weight())
}

pub fn double_schubert_via_pipedreams(w: &Permutation) -> MultiPoly {
    PipeDream::enumerate(w).iter().fold(MultiPoly::zero(w.n()), |acc, pd| &acc + &pd.double_weight())
}
