//! Double description for cones `{y : A y >= 0}`, lineality included.
//!
//! Rays are carried with the set of processed rows they make tight; adjacency
//! in the Motzkin step is the combinatorial test.

use super::arith::{combine, dot, reduce};
use crate::error::Result;

#[derive(Clone, Debug)]
pub(crate) struct Cone {
    pub lineality: Vec<Vec<i128>>,
    pub rays: Vec<Vec<i128>>,
}

#[derive(Clone)]
struct Ray {
    v: Vec<i128>,
    z: Bits,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn first_n(len: usize, n: usize) -> Self {
        let mut b = Bits::new(len);
        (0..n).for_each(|i| b.set(i));
        b
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

pub(crate) fn dd(rows: &[Vec<i128>], d: usize) -> Result<Cone> {
    let nrows = rows.len();
    let mut lin: Vec<Vec<i128>> = (0..d)
        .map(|i| (0..d).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in rows.iter().enumerate() {
        debug_assert_eq!(a.len(), d);
        let vals: Vec<i128> = lin.iter().map(|l| dot(a, l)).collect::<Result<_>>()?;
        if let Some(p) = vals.iter().position(|&x| x != 0) {
            let mut l = lin.swap_remove(p);
            let mut al = vals[p];
            if al < 0 {
                l.iter_mut().for_each(|x| *x = -*x);
                al = -al;
            }
            for li in lin.iter_mut() {
                let ai = dot(a, li)?;
                if ai != 0 {
                    *li = combine(al, li, ai, &l)?;
                    reduce(li);
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v)?;
                if ar != 0 {
                    r.v = combine(al, &r.v, ar, &l)?;
                    reduce(&mut r.v);
                }
                r.z.set(k);
            }
            reduce(&mut l);
            rays.push(Ray { v: l, z: Bits::first_n(nrows, k) });
            continue;
        }

        let vals: Vec<i128> = rays.iter().map(|r| dot(a, &r.v)).collect::<Result<_>>()?;
        if vals.iter().all(|&x| x >= 0) {
            for (r, &x) in rays.iter_mut().zip(&vals) {
                if x == 0 {
                    r.z.set(k);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        let need = (d - lin.len()).saturating_sub(2) as u32;
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].z.and(&rays[q].z);
                if common.count() < need {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !common.subset_of(&r.z));
                if !adjacent {
                    continue;
                }
                let mut v = combine(vals[p], &rays[q].v, vals[q], &rays[p].v)?;
                reduce(&mut v);
                let mut z = common;
                z.set(k);
                fresh.push(Ray { v, z });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i] > 0 {
                next.push(r);
            } else if vals[i] == 0 {
                r.z.set(k);
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }
    Ok(Cone { lineality: lin, rays: rays.into_iter().map(|r| r.v).collect() })
}
