//! Checked i128 helpers for the exact kernel.

use crate::error::{Error, Result};
use num_integer::Integer;

#[inline]
pub(crate) fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("mul"))
}

#[inline]
pub(crate) fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow("add"))
}

#[inline]
pub(crate) fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow("sub"))
}

pub(crate) fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |s, (&x, &y)| add(s, mul(x, y)?))
}

/// `p*u - q*v`, entrywise.
pub(crate) fn combine(p: i128, u: &[i128], q: i128, v: &[i128]) -> Result<Vec<i128>> {
    u.iter().zip(v).map(|(&x, &y)| sub(mul(p, x)?, mul(q, y)?)).collect()
}

pub(crate) fn gcd_all(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, x| g.gcd(x))
}

/// Divide out the content; zero vectors are left alone.
pub(crate) fn reduce(v: &mut [i128]) {
    let g = gcd_all(v);
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

pub(crate) fn fdiv(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

pub(crate) fn cdiv(a: i128, b: i128) -> i128 {
    -(Integer::div_floor(&-a, &b))
}

/// Rank over Q by fraction-free elimination.
pub(crate) fn rank(rows: &[Vec<i128>]) -> Result<usize> {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                let new = combine(a, &m[i], b, &m[r])?;
                m[i] = new;
                reduce(&mut m[i]);
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_small() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]).unwrap(), 1);
        assert_eq!(rank(&[vec![1, 0, 0], vec![0, 0, 1], vec![1, 0, 1]]).unwrap(), 2);
        assert_eq!(rank(&[]).unwrap(), 0);
    }

    #[test]
    fn rounding() {
        assert_eq!(fdiv(-3, 2), -2);
        assert_eq!(cdiv(-3, 2), -1);
        assert_eq!(cdiv(3, 2), 2);
    }

    #[test]
    fn overflow_reported() {
        assert_eq!(mul(i128::MAX, 2), Err(Error::Overflow("mul")));
    }
}
