//! Integer linear algebra: dense big-integer matrices, Smith normal form,
//! class groups of toric varieties and primitive vectors.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Dense row-major matrix over Z.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.as_ref().len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            for (j, &x) in row.as_ref().iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_columns<C: AsRef<[i64]>>(nrows: usize, cols: &[C]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.as_ref().len(), nrows, "ragged columns");
            for (i, &x) in col.as_ref().iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Entries as i64 rows; `None` if something does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `U * A * W = D` with `U`, `W` unimodular and `D` diagonal, `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub w: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (r, c) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut w = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let pivot = (t..r)
            .flat_map(|i| (t..c).map(move |j| (i, j)))
            .filter(|&(i, j)| !d[(i, j)].is_zero())
            .min_by(|&p, &q| d[p].abs().cmp(&d[q].abs()));
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        w.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d[(i, t)].is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col(j, t, &q);
                w.add_col(j, t, &q);
                if !d[(t, j)].is_zero() {
                    d.swap_cols(t, j);
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            match bad {
                Some((i, _)) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, d, w }
}

/// Primitive column vectors of a fan, stored column-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FanMatrix {
    pub n: usize,
    pub columns: Vec<Vec<i64>>,
}

impl FanMatrix {
    pub fn new(n: usize, columns: Vec<Vec<i64>>) -> Result<Self> {
        for c in &columns {
            if c.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: c.len() });
            }
        }
        Ok(FanMatrix { n, columns })
    }

    /// `(I_n | -1)`, the fan matrix of projective space.
    pub fn projective(n: usize) -> Self {
        let mut columns: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        columns.push(vec![-1; n]);
        FanMatrix { n, columns }
    }

    pub fn m(&self) -> usize {
        self.columns.len()
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.n, &self.columns)
    }

    pub fn select(&self, idx: &[usize]) -> FanMatrix {
        FanMatrix { n: self.n, columns: idx.iter().map(|&j| self.columns[j].clone()).collect() }
    }

    pub fn permuted(&self, perm: &[usize]) -> FanMatrix {
        self.select(perm)
    }
}

/// Cl(X) = Z^m / im(V^T), presented through the Smith form of V^T.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    /// Free part: rows annihilating im(V^T).
    pub degree_map: IntMatrix,
    /// Torsion coordinates, read modulo the matching entry of `torsion`.
    pub torsion_map: IntMatrix,
    u: IntMatrix,
    diag: Vec<BigInt>,
}

/// Coordinates of a divisor class: free part plus torsion residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub free: Vec<String>,
    pub torsion: Vec<String>,
}

impl ClassGroup {
    pub fn class_of(&self, divisor: &[i64]) -> DivisorClass {
        let v: Vec<BigInt> = divisor.iter().map(|&x| BigInt::from(x)).collect();
        let free = self.degree_map.mul_vec(&v).iter().map(|x| x.to_string()).collect();
        let torsion = self
            .torsion_map
            .mul_vec(&v)
            .iter()
            .zip(&self.torsion)
            .map(|(x, m)| x.mod_floor(m).to_string())
            .collect();
        DivisorClass { free, torsion }
    }

    /// Is `divisor` principal, i.e. in im(V^T)?
    pub fn is_principal(&self, divisor: &[i64]) -> bool {
        let v: Vec<BigInt> = divisor.iter().map(|&x| BigInt::from(x)).collect();
        let y = self.u.mul_vec(&v);
        y.iter().enumerate().all(|(i, yi)| match self.diag.get(i) {
            Some(di) if !di.is_zero() => yi.is_multiple_of(di),
            _ => yi.is_zero(),
        })
    }
}

pub fn class_group(v: &FanMatrix) -> Result<ClassGroup> {
    let vt = v.to_int_matrix().transpose();
    let snf = smith_normal_form(&vt);
    let rank = snf.rank();
    if rank < v.n {
        return Err(Error::RankDeficient { rank, rows: v.n });
    }
    let m = v.m();
    let diag = snf.diagonal();
    let mut degree_map = IntMatrix::zeros(m - v.n, m);
    for i in v.n..m {
        for j in 0..m {
            degree_map[(i - v.n, j)] = snf.u[(i, j)].clone();
        }
    }
    let tors: Vec<usize> = (0..v.n).filter(|&i| diag[i] > BigInt::one()).collect();
    let mut torsion_map = IntMatrix::zeros(tors.len(), m);
    for (r, &i) in tors.iter().enumerate() {
        for j in 0..m {
            torsion_map[(r, j)] = snf.u[(i, j)].clone();
        }
    }
    Ok(ClassGroup {
        rank: m - v.n,
        torsion: tors.iter().map(|&i| diag[i].clone()).collect(),
        degree_map,
        torsion_map,
        u: snf.u,
        diag,
    })
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

pub fn primitive(v: &[i64]) -> Result<Vec<i64>> {
    let g = gcd_slice(v);
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_snf(a: &IntMatrix) -> Snf {
        let s = smith_normal_form(a);
        let uaw = s.u.mul(a).unwrap().mul(&s.w).unwrap();
        assert_eq!(uaw, s.d);
        assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        for k in 1..diag.len() {
            if !diag[k].is_zero() {
                assert!(diag[k].is_multiple_of(&diag[k - 1]));
            }
        }
        for m in [&s.u, &s.w] {
            let det = det_bareiss(m);
            assert!(det.abs().is_one(), "not unimodular: {det}");
        }
        s
    }

    fn det_bareiss(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        let mut a = m.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * prev
    }

    #[test]
    fn snf_identity() {
        let s = check_snf(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn snf_diag_2_3() {
        let s = check_snf(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn snf_of_projective_plane_fan() {
        let v = FanMatrix::projective(2).to_int_matrix();
        let s = check_snf(&v);
        assert_eq!(s.d, IntMatrix::from_rows(&[[1, 0, 0], [0, 1, 0]]));
    }

    #[test]
    fn class_group_of_projective_space() {
        for n in 1..6 {
            let cg = class_group(&FanMatrix::projective(n)).unwrap();
            assert_eq!(cg.rank, 1);
            assert!(cg.torsion.is_empty());
            let row: Vec<i64> = cg.degree_map.row(0).iter().map(|x| x.to_i64().unwrap()).collect();
            let sign = row[0].signum();
            assert_eq!(row.iter().map(|x| x * sign).collect::<Vec<_>>(), vec![1; n + 1]);
        }
    }

    #[test]
    fn class_group_square_identity() {
        let v = FanMatrix::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(class_group(&v).unwrap().rank, 0);
    }

    #[test]
    fn class_group_rank_deficient() {
        let v = FanMatrix::new(2, vec![vec![1, 0], vec![-1, 0]]).unwrap();
        assert!(matches!(class_group(&v), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn weighted_projective_torsion() {
        // P(1,1,2)/(Z/2): fan (e1, e2, -1-... ) with a torsion class group
        let v = FanMatrix::new(2, vec![vec![1, 0], vec![1, 2], vec![-1, -1]]).unwrap();
        let cg = class_group(&v).unwrap();
        assert_eq!(cg.rank, 1);
        let prod: BigInt = cg.torsion.iter().product();
        // |det| of any 2x2 minor chain: index of the lattice spanned by the rays
        assert_eq!(prod, BigInt::from(1));
        assert!(cg.is_principal(&[1, 1, -1]));
        assert!(!cg.is_principal(&[1, 0, 0]));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&[2, -2, 4]).unwrap(), vec![1, -1, 2]);
        assert_eq!(primitive(&[3, 0, 0, 0, 0]).unwrap(), vec![1, 0, 0, 0, 0]);
        assert_eq!(primitive(&[5, 7]).unwrap(), vec![5, 7]);
        assert_eq!(primitive(&[0, 0]), Err(Error::ZeroVector));
    }

    proptest! {
        #[test]
        fn snf_reconstructs(entries in proptest::collection::vec(-6i64..=6, 12), shape in 0usize..3) {
            let (r, c) = [(3, 4), (4, 3), (2, 6)][shape];
            let rows: Vec<Vec<i64>> = entries.chunks(c).take(r).map(|x| x.to_vec()).collect();
            check_snf(&IntMatrix::from_rows(&rows));
        }

        #[test]
        fn degree_map_annihilates_image(entries in proptest::collection::vec(-4i64..=4, 10)) {
            let mut cols: Vec<Vec<i64>> = entries.chunks(2).map(|x| x.to_vec()).collect();
            cols.push(vec![1, 0]);
            cols.push(vec![0, 1]);
            let v = FanMatrix::new(2, cols).unwrap();
            let cg = class_group(&v).unwrap();
            let z = cg.degree_map.mul(&v.to_int_matrix().transpose()).unwrap();
            prop_assert!(z.to_i64_rows().unwrap().iter().flatten().all(|&x| x == 0));
            for row in 0..v.n {
                let d: Vec<i64> = v.columns.iter().map(|c| c[row]).collect();
                prop_assert!(cg.is_principal(&d));
            }
        }

        #[test]
        fn primitive_is_idempotent(v in proptest::collection::vec(-50i64..=50, 1..6)) {
            prop_assume!(v.iter().any(|&x| x != 0));
            let p = primitive(&v).unwrap();
            prop_assert_eq!(primitive(&p).unwrap(), p.clone());
            prop_assert_eq!(gcd_slice(&p), 1);
        }
    }
}
