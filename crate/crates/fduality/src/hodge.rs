//! Lattice-count formulas for Hodge numbers of projective complete
//! intersections and their f-mirrors, stringy E-coefficients, moduli counts.

use crate::error::{Error, Result};
use crate::f_process::{Case, FDualData, PartitionedFraming};
use crate::fan::{resolved_rays, support_value_resolved};
use crate::lattice::FanMatrix;
use crate::polytope::enumerate::Strategy;
use crate::polytope::{minkowski_sum_all, HPolytope, VPolytope};
use num_integer::binomial;
use serde::Serialize;
use std::collections::BTreeMap;

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        0
    } else {
        binomial(n as i128, k as i128)
    }
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) { 1 } else { -1 }
}

/// `l*` of a Minkowski sum; the empty sum counts 0.
fn l_star_sum(n: usize, polys: &[&VPolytope]) -> Result<u64> {
    if polys.is_empty() {
        return Ok(0);
    }
    Ok(minkowski_sum_all(n, polys)?.count_l_star())
}

fn subsets(l: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << l).map(move |mask| (0..l).filter(|&k| mask >> k & 1 == 1).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KEntry {
    /// 1-based part indices.
    pub subset: Vec<usize>,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeReport {
    pub n: usize,
    pub l: usize,
    /// `h^p(O_Y)`, `p = 0..=n-l`.
    pub h_o: Vec<i64>,
    /// `h^p(Ω_Y)`, `p = 0..=n-l`.
    pub h_omega: Vec<i64>,
    pub k_a: i64,
    pub k_table: Vec<KEntry>,
    /// Named lattice counts that fed the formulas.
    pub counts: BTreeMap<String, u64>,
    pub provenance: BTreeMap<String, String>,
}

/// Hodge numbers of a general complete intersection `Y ⊂ P^n` cut by the parts of `pf`.
pub fn hodge_projective_ci(pf: &PartitionedFraming) -> Result<HodgeReport> {
    let n = pf.v.n;
    let l = pf.l();
    if pf.v != FanMatrix::projective(n) {
        return Err(Error::OutOfHypotheses("ambient space is not P^n".into()));
    }
    if n < 4 || n < l + 2 {
        return Err(Error::OutOfHypotheses(format!("need n >= 4 and n - l >= 2, got n = {n}, l = {l}")));
    }
    let parts = pf.part_polytopes()?;
    let divisors: Vec<VPolytope> = (0..=n)
        .map(|i| {
            let mut e = vec![0; n + 1];
            e[i] = 1;
            HPolytope::from_framing(&pf.v, &e)?.vertices()
        })
        .collect::<Result<_>>()?;

    let mut counts = BTreeMap::new();
    let name = |j: &[usize]| {
        let s: Vec<String> = j.iter().map(|k| format!("a{}", k + 1)).collect();
        if s.is_empty() { "0".to_string() } else { s.join("+") }
    };
    let mut h_top = 0i64;
    let mut k_a = 0i64;
    let mut k_table = Vec::new();
    for j in subsets(l) {
        let sgn = sign(l - j.len());
        let base: Vec<&VPolytope> = j.iter().map(|&k| &parts[k]).collect();
        let ls = l_star_sum(n, &base)?;
        counts.insert(format!("l*({})", name(&j)), ls);
        let mut with = |extra: &VPolytope, label: String| -> Result<u64> {
            let mut v = base.clone();
            v.push(extra);
            let c = l_star_sum(n, &v)?;
            counts.insert(format!("l*({label}+{})", name(&j)), c);
            Ok(c)
        };
        let mut sum_k = 0i64;
        for (k, p) in parts.iter().enumerate() {
            sum_k += with(p, format!("a{}", k + 1))? as i64;
        }
        let mut sum_i = 0i64;
        for (i, p) in divisors.iter().enumerate() {
            sum_i += with(p, format!("D{}", i + 1))? as i64;
        }
        h_top += sgn * ls as i64;
        k_a += sgn * (sum_k - sum_i);
        k_table.push(KEntry { subset: j.iter().map(|k| k + 1).collect(), value: ls as i64 + sum_k - sum_i });
    }

    let dim = n - l;
    let mut h_o = vec![0; dim + 1];
    h_o[0] = 1;
    h_o[dim] += h_top;
    let mut h_omega = vec![0; dim + 1];
    let mut provenance = BTreeMap::new();
    provenance.insert("h_o".into(), "Koszul alternating sum of l* over subsets".into());
    if dim >= 3 {
        h_omega[1] = 1;
        h_omega[dim - 1] = h_top + k_a;
        provenance.insert("h_omega[1]".into(), "Lefschetz".into());
        provenance.insert(format!("h_omega[{}]", dim - 1), "h^{n-l}(O_Y) + K_a".into());
    } else {
        h_omega[1] = 1 + h_top + k_a;
        provenance.insert("h_omega[1]".into(), "1 + h^2(O_Y) + K_a".into());
    }
    Ok(HodgeReport { n, l, h_o, h_omega, k_a, k_table, counts, provenance })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MirrorO {
    /// `h^p(O)` of the mirror, `p = 0..=n-l`.
    pub h_o: Vec<i64>,
    pub l_star_total: u64,
    /// `l*` of each proper nonempty partial sum, 1-based subsets.
    pub partial: Vec<(Vec<usize>, u64)>,
}

/// `h^p(O)` of the f-mirror, after checking `l*(Δ_b) = 1` and that every
/// proper partial sum of the `Δ_{b_k}` has no interior points.
pub fn hodge_mirror_o(d: &FDualData) -> Result<MirrorO> {
    if d.case == Case::Wf {
        return Err(Error::CaseWf);
    }
    let n = d.dual_fan_matrix.n;
    let l = d.l();
    if n < l + 2 {
        return Err(Error::OutOfHypotheses(format!("n - l = {} < 2", n as i64 - l as i64)));
    }
    let parts = d.part_polytopes()?;
    let total = HPolytope::from_framing(&d.dual_fan_matrix, &d.b)?.vertices()?;
    let l_star_total = total.count_l_star();
    if l_star_total != 1 {
        return Err(Error::PremiseFailed(format!("l*(Δ_b) = {l_star_total}, expected 1")));
    }
    let mut partial = Vec::new();
    for j in subsets(l).filter(|j| !j.is_empty() && j.len() < l) {
        let refs: Vec<&VPolytope> = j.iter().map(|&k| &parts[k]).collect();
        let c = l_star_sum(n, &refs)?;
        let one_based: Vec<usize> = j.iter().map(|k| k + 1).collect();
        if c != 0 {
            return Err(Error::PremiseFailed(format!("l* of partial sum {one_based:?} is {c}, expected 0")));
        }
        partial.push((one_based, c));
    }
    let dim = n - l;
    let mut h_o = vec![0; dim + 1];
    h_o[0] = 1;
    h_o[dim] = 1;
    Ok(MirrorO { h_o, l_star_total, partial })
}

/// `Λ_{a0}` for `a0 = (1_n, d-n)`: columns `d e_j - 1` and `-1`.
pub fn hypersurface_dual_fan(n: usize, d: i64) -> FanMatrix {
    FanMatrix { n, columns: resolved_rays(n, d)[..=n].to_vec() }
}

/// `b0 = (δ 1_n, 1)`.
pub fn hypersurface_dual_framing(n: usize, d: i64) -> Vec<i64> {
    let mut b = vec![d - n as i64; n];
    b.push(1);
    b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MirrorHypersurfaceH {
    /// `h^1 = r`, stated for `n >= 4`.
    pub h1: Option<i64>,
    pub l_star_2b0: u64,
    /// `h^{n-2} - h^{n-1} + h^n` on the unresolved quotient.
    pub alternating_unresolved: i64,
    /// `h^{n-2}` for a smooth transform with Cl-rank `r`.
    pub h_n_minus_2: i64,
    /// `0 <= h^n <= r`, never resolved.
    pub h_n_bounds: (i64, i64),
}

pub fn mirror_hypersurface_h(n: usize, d: i64, r: i64) -> Result<MirrorHypersurfaceH> {
    if n < 3 || d < n as i64 + 1 || r < 1 {
        return Err(Error::OutOfHypotheses(format!("n = {n}, d = {d}, r = {r}")));
    }
    let lam = hypersurface_dual_fan(n, d);
    let b0 = hypersurface_dual_framing(n, d);
    let delta = HPolytope::from_framing(&lam, &b0)?.vertices()?;
    let l_star_2b0 = delta.dilate(2, 1)?.count_l_star();
    let mut sum_i = 0i64;
    for i in 0..=n {
        let mut e = vec![0; n + 1];
        e[i] = 1;
        let di = HPolytope::from_framing(&lam, &e)?.vertices()?;
        let c = minkowski_sum_all(n, &[&di, &delta])?.count_l_star();
        sum_i += c as i64;
    }
    let ls = l_star_2b0 as i64;
    let (alternating_unresolved, h_n_minus_2) = if n == 3 {
        (ls - sum_i + 1, ls + 2 * r - 5)
    } else {
        (ls - sum_i, ls - n as i64 + r - 2)
    };
    Ok(MirrorHypersurfaceH {
        h1: (n >= 4).then_some(r),
        l_star_2b0,
        alternating_unresolved,
        h_n_minus_2,
        h_n_bounds: (0, r),
    })
}

/// `ψ_a(h) = l(hΔ_a) - l((h-1)Δ_a)`, `ψ_a(0) = 1`.
pub fn psi_shells(v: &FanMatrix, a: &[i64], h_max: usize) -> Result<Vec<u64>> {
    let delta = HPolytope::from_framing(v, a)?;
    let mut out = vec![1];
    let mut prev = 1u64;
    for h in 1..=h_max {
        let c = delta.dilate(h as i64)?.vertices()?.count_l();
        out.push(c - prev);
        prev = c;
    }
    Ok(out)
}

/// `c_h = Σ_j (-1)^{n-h-j} C(n, h+j) ψ(j)`, only for `|a| = n+1`.
pub fn stringy_c(n: usize, a: &[i64], psi: &[u64]) -> Result<Vec<i64>> {
    let total: i64 = a.iter().sum();
    if total != n as i64 + 1 {
        return Err(Error::NotGorenstein(total, n + 1));
    }
    if psi.len() < n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, found: psi.len() });
    }
    Ok(alternating_coefficients(n, psi))
}

fn alternating_coefficients(n: usize, values: &[u64]) -> Vec<i64> {
    (0..=n)
        .map(|p| {
            (0..=n - p)
                .map(|h| sign(n - p - h) * binom(n as i64, (p + h) as i64) as i64 * values[h] as i64)
                .sum()
        })
        .collect()
}

/// `φ(h)` for `h <= h_max` by counting lattice points by their support value
/// on the partial resolution.
pub fn phi_a0_direct(n: usize, d: i64, h_max: usize) -> Result<Vec<u64>> {
    phi_a0_direct_with(n, d, h_max, Strategy::default())
}

pub fn phi_a0_direct_with(n: usize, d: i64, h_max: usize, s: Strategy) -> Result<Vec<u64>> {
    let rays = resolved_rays(n, d);
    let mut pts = rays;
    pts.push(vec![0; n]);
    let hull = VPolytope::from_integer_points(n, &pts)?;
    let bound = if h_max == 0 { hull.dilate(1, 1)? } else { hull.dilate(h_max as i64, 1)? };
    Ok(bound.region(false).histogram(s, h_max + 1, |m| usize::try_from(support_value_resolved(n, d, m)).ok()))
}

/// `φ(h)` from `Σ_{l<=h} φ(l) = C(n+hd, n) - Σ_{j<=h} Σ_{i<d-n} C(jd-j+h-i, n-1)`.
pub fn phi_a0_recursive(n: usize, d: i64, h_max: usize) -> Vec<u64> {
    let ni = n as i64;
    let mut out: Vec<u64> = Vec::with_capacity(h_max + 1);
    for h in 0..=h_max as i64 {
        let mut v = binom(ni + h * d, ni);
        for j in 1..=h {
            for i in 1..d - ni {
                v -= binom(j * d - j + h - i, ni - 1);
            }
        }
        v -= out.iter().map(|&x| x as i128).sum::<i128>();
        out.push(v as u64);
    }
    out
}

/// The closed form displayed alongside the recursion. Agrees with it at
/// `h <= 1` only; kept to document the discrepancy.
pub fn phi_a0_displayed_closed_form(n: usize, d: i64, h: usize) -> i128 {
    let (n, h) = (n as i64, h as i64);
    match h {
        0 => 1,
        1 => binom(d + n, n) - binom(d, n) + n as i128,
        _ => {
            let a: i128 = (1..n).map(|i| binom(h * d + i, n - 1)).sum();
            let b: i128 = (0..h).map(|l| binom(l * d + n + h - l - 1, n - 1)).sum();
            let c: i128 = (1..h).map(|l| binom(l * d + h - l - 1, n - 1)).sum();
            a + b - c
        }
    }
}

/// Both computations of `φ(0..=h_max)`; a disagreement is an error.
pub fn phi_a0(n: usize, d: i64, h_max: usize) -> Result<Vec<u64>> {
    if n < 1 || d < n as i64 + 1 {
        return Err(Error::OutOfHypotheses(format!("need d >= n+1, got n = {n}, d = {d}")));
    }
    let direct = phi_a0_direct(n, d, h_max)?;
    let rec = phi_a0_recursive(n, d, h_max);
    if direct != rec {
        return Err(Error::CrossCheckMismatch(format!("φ direct {direct:?} vs recursion {rec:?}")));
    }
    Ok(direct)
}

/// `c'_p = Σ_h (-1)^{n-p-h} C(n, p+h) φ(h)`, `p = 0..=n`, checked against
/// `c'_1 = C(d+n, n) - C(d, n)`.
pub fn c_prime(n: usize, d: i64) -> Result<Vec<i64>> {
    let phi = phi_a0(n, d, n)?;
    let c = alternating_coefficients(n, &phi);
    let want = binom(d + n as i64, n as i64) - binom(d, n as i64);
    if c[1] as i128 != want {
        return Err(Error::CrossCheckMismatch(format!("c'_1 = {} but C(d+n,n) - C(d,n) = {want}", c[1])));
    }
    Ok(c)
}

/// Both sides of `C(2d-1,n) - (n+1)C(d-1,n) = Σ_i (-1)^{n-i} C(n+1,i+1) C(id-d+n,n)`.
pub fn identity_a_sides(n: usize, d: i64) -> (i128, i128) {
    let ni = n as i64;
    let lhs = binom(2 * d - 1, ni) - (ni as i128 + 1) * binom(d - 1, ni);
    let rhs = (1..=ni).map(|i| sign((ni - i) as usize) as i128 * binom(ni + 1, i + 1) * binom(i * d - d + ni, ni)).sum();
    (lhs, rhs)
}

pub fn identity_a(n: usize, d: i64) -> bool {
    let (l, r) = identity_a_sides(n, d);
    l == r
}

/// `m_Y = C(n+d, d) - (n+1)^2`.
pub fn m_y_hypersurface(n: usize, d: i64) -> i128 {
    binom(n as i64 + d, d) - (n as i128 + 1).pow(2)
}

/// Complex moduli of `Y_{d1,d2} ⊂ P^n`, `d1 < d2`: both projectivized linear
/// systems, minus the multiples of the first equation, minus `PGL(n+1)`.
pub fn m_y_two_part(n: usize, d1: i64, d2: i64) -> Result<i128> {
    if !(1 <= d1 && d1 < d2) {
        return Err(Error::OutOfHypotheses(format!("need 1 <= d1 < d2, got ({d1}, {d2})")));
    }
    let ni = n as i64;
    let p = |d: i64| binom(d + ni, ni) - 1;
    Ok(p(d1) + p(d2) - binom(d2 - d1 + ni, ni) - ((ni as i128 + 1).pow(2) - 1))
}

/// `h^1` of the Calabi–Yau mirror for `d = n+1`.
pub fn calabi_yau_h11(n: usize) -> i128 {
    let ni = n as i64;
    let s: i128 = (1..=ni)
        .map(|i| sign((ni - i) as usize) as i128 * binom(ni + 1, i + 1) * binom(i * ni + i - 1, ni))
        .sum();
    s - (ni as i128 + 1) * binom(ni, ni - 1)
}

/// Points blown up on the way to the B-mirror: `C(d, n) - (n+1)^2`.
pub fn blowup_points(n: usize, d: i64) -> i128 {
    binom(d, n as i64) - (n as i128 + 1).pow(2)
}

/// Interior lattice points of a facet of the dual simplex: `C(d-1, n-1)`.
pub fn facet_interior_points(n: usize, d: i64) -> i128 {
    binom(d - 1, n as i64 - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StringyData {
    pub n: usize,
    pub d: i64,
    /// Only when `d = n+1`.
    pub psi: Option<Vec<u64>>,
    pub c: Option<Vec<i64>>,
    pub phi: Vec<u64>,
    pub c_prime: Vec<i64>,
}

pub fn stringy_data(n: usize, d: i64, h_max: usize) -> Result<StringyData> {
    let a0: Vec<i64> = {
        let mut a = vec![1; n];
        a.push(d - n as i64);
        a
    };
    let (psi, c) = if d == n as i64 + 1 {
        let psi = psi_shells(&FanMatrix::projective(n), &a0, h_max.max(n))?;
        let c = stringy_c(n, &a0, &psi)?;
        (Some(psi), Some(c))
    } else {
        (None, None)
    };
    let phi = phi_a0(n, d, h_max.max(n))?;
    let c_prime = if d >= n as i64 + 2 { c_prime(n, d)? } else { alternating_coefficients(n, &phi) };
    Ok(StringyData { n, d, psi, c, phi, c_prime })
}
