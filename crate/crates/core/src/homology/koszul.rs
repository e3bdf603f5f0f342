//! `Tor_s(V)_n` as the homology of the Koszul complex
//! `K_p(V)_n = ⊕_{T ⊆ [n], |T| = p} V_{n-p}`, with differential
//! `(T, v) ↦ Σ_j (-1)^j (T ∖ t_j, ι_{(t_j - j)} v)` for `T = {t_0 < … < t_{p-1}}`,
//! where `ι_{(q)}` is the order-preserving injection missing `q`.

use std::collections::HashMap;

use super::GradedDims;
use crate::linalg::{Field, Matrix};
use crate::module::TruncatedModule;

/// Default cap on the number of entries of a single Koszul matrix.
pub const DEFAULT_BUDGET: usize = 96_000_000;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `p`-element subsets of `0..n` as bitmasks, in lexicographic order.
fn subsets(n: usize, p: usize) -> Vec<u64> {
    fn go(start: usize, n: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for t in start..=n - left {
            go(t + 1, n, left - 1, acc | 1 << t, out);
        }
    }
    let mut out = Vec::with_capacity(binomial(n, p));
    if p <= n {
        go(0, n, p, 0, &mut out);
    }
    out
}

/// Koszul complex of a truncated module, with cached ranks.
pub struct Koszul<'a, F: Field> {
    module: &'a TruncatedModule<F>,
    budget: usize,
    /// Transposed skip maps out of each degree.
    skips: HashMap<usize, Vec<Matrix<F>>>,
    ranks: HashMap<(usize, usize), Option<usize>>,
}

impl<'a, F: Field> Koszul<'a, F> {
    pub fn new(module: &'a TruncatedModule<F>) -> Self {
        Self::with_budget(module, DEFAULT_BUDGET)
    }

    pub fn with_budget(module: &'a TruncatedModule<F>, budget: usize) -> Self {
        Koszul {
            module,
            budget,
            skips: HashMap::new(),
            ranks: HashMap::new(),
        }
    }

    fn reliable(&self) -> usize {
        self.module.reliable_up_to().min(self.module.truncation())
    }

    /// `dim K_p(V)_n`.
    pub fn chain_dim(&self, p: usize, n: usize) -> usize {
        if p > n {
            return 0;
        }
        binomial(n, p) * self.module.dim(n - p)
    }

    /// Largest `n` with `Tor_s(V)_n` computable from the stored degrees.
    pub fn top_degree(&self, s: usize) -> usize {
        self.reliable() + s.saturating_sub(1)
    }

    /// `d_p` at degree `n`, or `None` past the budget.
    pub fn differential(&mut self, p: usize, n: usize) -> Option<Matrix<F>> {
        let f = self.module.field().clone();
        assert!(p >= 1 && n + 1 <= self.reliable() + p, "Koszul differential beyond the stored degrees");
        let (a, b) = (self.module.dim(n - p), self.module.dim(n - p + 1));
        let rows = binomial(n, p) * a;
        let cols = binomial(n, p - 1) * b;
        if rows.saturating_mul(cols) > self.budget {
            return None;
        }
        let mut m = Matrix::zeros(&f, rows, cols);
        if rows == 0 || cols == 0 {
            return Some(m);
        }
        let module = self.module;
        let skips = self
            .skips
            .entry(n - p)
            .or_insert_with(|| module.skip_maps(n - p).iter().map(Matrix::transpose).collect());
        let faces: HashMap<u64, usize> = subsets(n, p - 1)
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        for (row_block, t) in subsets(n, p).into_iter().enumerate() {
            let mut j = 0;
            for point in 0..n {
                if t & 1 << point == 0 {
                    continue;
                }
                let col_block = faces[&(t & !(1 << point))];
                let block = &skips[point - j];
                for r in 0..a {
                    let target = &mut m.row_mut(row_block * a + r)[col_block * b..(col_block + 1) * b];
                    for (x, y) in target.iter_mut().zip(block.row(r)) {
                        *x = if j % 2 == 0 { y.clone() } else { f.neg(y) };
                    }
                }
                j += 1;
            }
        }
        Some(m)
    }

    /// `rank d_p` at degree `n`.
    pub fn rank(&mut self, p: usize, n: usize) -> Option<usize> {
        if p == 0 || p > n {
            return Some(0);
        }
        if let Some(&r) = self.ranks.get(&(p, n)) {
            return r;
        }
        let f = self.module.field().clone();
        let r = if self.module.dim(n - p) == 0 || self.module.dim(n - p + 1) == 0 {
            Some(0)
        } else {
            self.differential(p, n).map(|m| m.rank(&f))
        };
        self.ranks.insert((p, n), r);
        r
    }

    /// `dim Tor_s(V)_n`.
    pub fn tor_dim(&mut self, s: usize, n: usize) -> Option<usize> {
        assert!(n <= self.top_degree(s), "Tor degree beyond the stored degrees");
        let chain = self.chain_dim(s, n);
        if chain == 0 {
            return Some(0);
        }
        let out = self.rank(s, n)?;
        let inc = self.rank(s + 1, n)?;
        Some(chain - out - inc)
    }

    /// `Tor_s(V)` in degrees `0..=min(top, top_degree(s))`, cut short at the
    /// first degree whose matrices exceed the budget.
    pub fn tor(&mut self, s: usize, top: usize) -> GradedDims {
        let top = top.min(self.top_degree(s));
        let mut dims = Vec::with_capacity(top + 1);
        for n in 0..=top {
            match self.tor_dim(s, n) {
                Some(d) => dims.push(d),
                None => break,
            }
        }
        GradedDims::new(dims)
    }
}

/// `Tor_s(V)` for `s = 0..=s_max` over the full computable range.
pub fn koszul_tor<F: Field>(v: &TruncatedModule<F>, s_max: usize) -> Vec<GradedDims> {
    let mut k = Koszul::new(v);
    (0..=s_max).map(|s| k.tor(s, usize::MAX)).collect()
}
