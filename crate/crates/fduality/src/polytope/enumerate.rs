//! Lattice point enumeration over an integral box, pruned by interval
//! propagation on the half-spaces.

use super::arith::{cdiv, fdiv};

/// How a scan is scheduled. Both produce identical, ordered output.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

/// `{x in Z^n : c0 + c.x >= t}` for every row `(c0, c, t)`, inside `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct Region {
    pub n: usize,
    rows: Vec<Vec<i128>>,
    thresholds: Vec<i128>,
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Region {
    pub fn new(n: usize, lo: Vec<i64>, hi: Vec<i64>) -> Self {
        Region { n, rows: Vec::new(), thresholds: Vec::new(), lo, hi }
    }

    /// `c0 + c.x >= threshold` with `row = [c0, c...]`.
    pub fn push(&mut self, row: Vec<i128>, threshold: i128) {
        assert_eq!(row.len(), self.n + 1);
        self.rows.push(row);
        self.thresholds.push(threshold);
    }

    pub fn push_eq(&mut self, row: Vec<i128>) {
        let neg = row.iter().map(|x| -x).collect();
        self.push(row, 0);
        self.push(neg, 0);
    }

    pub fn is_empty_box(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.rows.iter().zip(&self.thresholds).all(|(r, &t)| {
            let v = r[0] + r[1..].iter().zip(x).map(|(c, &xi)| c * xi as i128).sum::<i128>();
            v >= t
        })
    }

    /// `suffix[k][r]` = max of `sum_{j>=k} c_j x_j` over the box.
    fn suffix_max(&self) -> Vec<Vec<i128>> {
        let n = self.n;
        let mut s = vec![vec![0i128; self.rows.len()]; n + 1];
        for k in (0..n).rev() {
            for (r, row) in self.rows.iter().enumerate() {
                let c = row[k + 1];
                let m = (c * self.lo[k] as i128).max(c * self.hi[k] as i128);
                s[k][r] = s[k + 1][r] + m;
            }
        }
        s
    }

    /// Admissible range for `x_k` given partial row values.
    fn range(&self, k: usize, partial: &[i128], suffix: &[Vec<i128>]) -> Option<(i64, i64)> {
        let (mut lo, mut hi) = (self.lo[k] as i128, self.hi[k] as i128);
        for (r, row) in self.rows.iter().enumerate() {
            let c = row[k + 1];
            let slack = partial[r] + suffix[k + 1][r] - self.thresholds[r];
            if c > 0 {
                lo = lo.max(cdiv(-slack, c));
            } else if c < 0 {
                hi = hi.min(fdiv(slack, -c));
            } else if slack < 0 {
                return None;
            }
            if lo > hi {
                return None;
            }
        }
        Some((lo as i64, hi as i64))
    }

    fn walk<A>(
        &self,
        k: usize,
        x: &mut Vec<i64>,
        partial: &mut Vec<i128>,
        suffix: &[Vec<i128>],
        acc: &mut A,
        visit: &(impl Fn(&mut A, &[i64]) + ?Sized),
    ) {
        if k == self.n {
            visit(acc, x);
            return;
        }
        let Some((lo, hi)) = self.range(k, partial, suffix) else { return };
        for v in lo..=hi {
            x.push(v);
            for (r, row) in self.rows.iter().enumerate() {
                partial[r] += row[k + 1] * v as i128;
            }
            self.walk(k + 1, x, partial, suffix, acc, visit);
            for (r, row) in self.rows.iter().enumerate() {
                partial[r] -= row[k + 1] * v as i128;
            }
            x.pop();
        }
    }

    /// One accumulator per admissible value of the first coordinate, in order.
    pub fn scan<A: Send>(
        &self,
        strategy: Strategy,
        make: impl Fn() -> A + Sync,
        visit: impl Fn(&mut A, &[i64]) + Sync,
    ) -> Vec<A> {
        if self.is_empty_box() {
            return Vec::new();
        }
        let suffix = self.suffix_max();
        let base: Vec<i128> = self.rows.iter().map(|r| r[0]).collect();
        if self.n == 0 {
            let mut acc = make();
            if self.contains(&[]) {
                visit(&mut acc, &[]);
            }
            return vec![acc];
        }
        let Some((lo, hi)) = self.range(0, &base, &suffix) else { return Vec::new() };
        let slice = |v: i64| {
            let mut acc = make();
            let mut partial: Vec<i128> =
                self.rows.iter().zip(&base).map(|(r, b)| b + r[1] * v as i128).collect();
            let mut x = vec![v];
            self.walk(1, &mut x, &mut partial, &suffix, &mut acc, &visit);
            acc
        };
        match strategy {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                (lo..=hi).into_par_iter().map(slice).collect()
            }
            _ => (lo..=hi).map(slice).collect(),
        }
    }

    pub fn points(&self, strategy: Strategy) -> Vec<Vec<i64>> {
        self.scan(strategy, Vec::new, |acc: &mut Vec<Vec<i64>>, x| acc.push(x.to_vec()))
            .into_iter()
            .flatten()
            .collect()
    }

    pub fn count(&self, strategy: Strategy) -> u64 {
        self.scan(strategy, || 0u64, |acc, _| *acc += 1).into_iter().sum()
    }

    /// Bin every point by `f`; points mapped to `None` or past `bins` are skipped.
    pub fn histogram(
        &self,
        strategy: Strategy,
        bins: usize,
        f: impl Fn(&[i64]) -> Option<usize> + Sync,
    ) -> Vec<u64> {
        let parts = self.scan(strategy, || vec![0u64; bins], |acc, x| {
            if let Some(b) = f(x).filter(|&b| b < bins) {
                acc[b] += 1;
            }
        });
        let mut out = vec![0u64; bins];
        for p in parts {
            out.iter_mut().zip(p).for_each(|(o, c)| *o += c);
        }
        out
    }

    /// Unpruned box walk; the reference the pruned scan is checked against.
    pub fn brute_force_points(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        if self.is_empty_box() {
            return out;
        }
        let mut x = self.lo.clone();
        loop {
            if self.contains(&x) {
                out.push(x.clone());
            }
            let mut k = self.n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if x[k] < self.hi[k] {
                    x[k] += 1;
                    break;
                }
                x[k] = self.lo[k];
            }
        }
    }
}
