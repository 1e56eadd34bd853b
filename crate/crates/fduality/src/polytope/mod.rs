//! Exact rational polytopes: H- and V-representations, Minkowski sums,
//! convex unions, dilations, integer parts and lattice-point counts.

pub(crate) mod arith;
pub(crate) mod dd;
pub mod enumerate;

pub use enumerate::{Region, Strategy};

use crate::error::{Error, Result};
use crate::f_process::Case;
use crate::lattice::FanMatrix;
use arith::{dot, gcd_all, rank, reduce};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;

/// Default bound on dilation searches; `FPROC_HCAP` overrides it.
pub const DEFAULT_HCAP: u32 = 64;

pub fn hcap() -> u32 {
    std::env::var("FPROC_HCAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&c| c > 0)
        .unwrap_or(DEFAULT_HCAP)
}

/// A rational point `num / den`, reduced, `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoint {
    num: Vec<i128>,
    den: i128,
}

impl QPoint {
    pub fn new(mut num: Vec<i128>, mut den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|x| *x = -*x);
        }
        let g = gcd_all(&num).gcd(&den);
        if g > 1 {
            num.iter_mut().for_each(|x| *x /= g);
            den /= g;
        }
        QPoint { num, den }
    }

    pub fn integral(v: &[i64]) -> Self {
        QPoint { num: v.iter().map(|&x| x as i128).collect(), den: 1 }
    }

    pub fn origin(n: usize) -> Self {
        QPoint { num: vec![0; n], den: 1 }
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    pub fn numerators(&self) -> &[i128] {
        &self.num
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn to_integral(&self) -> Option<Vec<i64>> {
        if self.den != 1 {
            return None;
        }
        self.num.iter().map(|&x| i64::try_from(x).ok()).collect()
    }

    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|&x| BigRational::new(BigInt::from(x), BigInt::from(self.den)))
            .collect()
    }

    /// Coordinates as `"p/q"` strings (`"p"` when integral).
    pub fn coord_strings(&self) -> Vec<String> {
        self.coords().iter().map(|q| q.to_string()).collect()
    }

    pub fn from_rationals(v: &[BigRational]) -> Result<Self> {
        let den = v.iter().fold(BigInt::from(1), |l, q| l.lcm(q.denom()));
        let den128 = i128::try_from(&den).map_err(|_| Error::Overflow("rational input"))?;
        let num = v
            .iter()
            .map(|q| i128::try_from(q.numer() * (&den / q.denom())).map_err(|_| Error::Overflow("rational input")))
            .collect::<Result<Vec<_>>>()?;
        Ok(QPoint::new(num, den128))
    }

    fn homogeneous(&self) -> Vec<i128> {
        std::iter::once(self.den).chain(self.num.iter().copied()).collect()
    }

    pub fn add(&self, o: &QPoint) -> Result<QPoint> {
        let num = self
            .num
            .iter()
            .zip(&o.num)
            .map(|(&a, &b)| arith::add(arith::mul(a, o.den)?, arith::mul(b, self.den)?))
            .collect::<Result<_>>()?;
        Ok(QPoint::new(num, arith::mul(self.den, o.den)?))
    }

    pub fn scale(&self, p: i128, q: i128) -> Result<QPoint> {
        let num = self.num.iter().map(|&a| arith::mul(a, p)).collect::<Result<_>>()?;
        Ok(QPoint::new(num, arith::mul(self.den, q)?))
    }

    /// `c0 * den + c . num`; same sign as `c0 + c . x`.
    fn eval(&self, row: &[i128]) -> Result<i128> {
        dot(row, &self.homogeneous())
    }
}

impl Ord for QPoint {
    fn cmp(&self, o: &Self) -> Ordering {
        for (&a, &b) in self.num.iter().zip(&o.num) {
            let ord = match (a.checked_mul(o.den), b.checked_mul(self.den)) {
                (Some(x), Some(y)) => x.cmp(&y),
                _ => (BigInt::from(a) * o.den).cmp(&(BigInt::from(b) * self.den)),
            };
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.num.len().cmp(&o.num.len())
    }
}

impl PartialOrd for QPoint {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Serialize for QPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coord_strings().serialize(s)
    }
}

/// `{x : c0 + c.x >= 0}` for every row `[c0, c...]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    n: usize,
    rows: Vec<Vec<i128>>,
}

impl HPolytope {
    /// Rows `[c0, c]` of `c0 + c.x >= 0`.
    pub fn from_rows(n: usize, rows: Vec<Vec<i128>>) -> Result<Self> {
        for r in &rows {
            if r.len() != n + 1 {
                return Err(Error::DimensionMismatch { expected: n + 1, found: r.len() });
            }
        }
        Ok(HPolytope { n, rows })
    }

    /// `{m : V^T m >= -a}`.
    pub fn from_framing(v: &FanMatrix, a: &[i64]) -> Result<Self> {
        if a.len() != v.m() {
            return Err(Error::DimensionMismatch { expected: v.m(), found: a.len() });
        }
        let rows = v
            .columns
            .iter()
            .zip(a)
            .map(|(col, &ai)| {
                std::iter::once(ai as i128).chain(col.iter().map(|&x| x as i128)).collect()
            })
            .collect();
        Ok(HPolytope { n: v.n, rows })
    }

    /// `{x : A x >= -b}` with rational data.
    pub fn from_ab(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
        }
        let n = a.first().map_or(0, Vec::len);
        let mut rows = Vec::with_capacity(a.len());
        for (ai, bi) in a.iter().zip(b) {
            if ai.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: ai.len() });
            }
            let full: Vec<BigRational> = std::iter::once(bi.clone()).chain(ai.iter().cloned()).collect();
            let p = QPoint::from_rationals(&full)?;
            rows.push(p.num);
        }
        Ok(HPolytope { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    pub fn contains(&self, p: &QPoint) -> Result<bool> {
        for r in &self.rows {
            if p.eval(r)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `k * P` for a positive integer `k`.
    pub fn dilate(&self, k: i64) -> Result<HPolytope> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r[0] = arith::mul(r[0], k as i128)?;
                Ok(r)
            })
            .collect::<Result<_>>()?;
        Ok(HPolytope { n: self.n, rows })
    }

    /// Vertex enumeration. Empty input gives the empty polytope.
    pub fn vertices(&self) -> Result<VPolytope> {
        let d = self.n + 1;
        let mut rows = Vec::with_capacity(self.rows.len() + 1);
        let mut t = vec![0i128; d];
        t[0] = 1;
        rows.push(t);
        rows.extend(self.rows.iter().cloned());
        let cone = dd::dd(&rows, d)?;
        let mut pts = Vec::new();
        let mut recession = !cone.lineality.is_empty();
        for r in cone.rays {
            if r[0] > 0 {
                pts.push(QPoint::new(r[1..].to_vec(), r[0]));
            } else {
                recession = true;
            }
        }
        if pts.is_empty() {
            return Ok(VPolytope::empty(self.n));
        }
        if recession {
            return Err(Error::Unbounded);
        }
        VPolytope::from_points(self.n, pts)
    }
}

impl Serialize for HPolytope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Hrep {
            #[serde(rename = "A")]
            a: Vec<Vec<String>>,
            b: Vec<String>,
        }
        let a = self.rows.iter().map(|r| r[1..].iter().map(|x| x.to_string()).collect()).collect();
        let b = self.rows.iter().map(|r| r[0].to_string()).collect();
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("hrep", &Hrep { a, b })?;
        m.end()
    }
}

/// Facet and affine-hull description of a V-polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub n: usize,
    /// `None` for the empty polytope.
    pub dim: Option<usize>,
    /// `c0 + c.x = 0` on the affine hull.
    pub eqs: Vec<Vec<i128>>,
    /// `c0 + c.x >= 0`, one per facet, content removed.
    pub ineqs: Vec<Vec<i128>>,
}

impl Hull {
    fn of_points(n: usize, pts: &[QPoint]) -> Result<Hull> {
        if pts.is_empty() {
            return Ok(Hull { n, dim: None, eqs: Vec::new(), ineqs: Vec::new() });
        }
        let rows: Vec<Vec<i128>> = pts.iter().map(QPoint::homogeneous).collect();
        let cone = dd::dd(&rows, n + 1)?;
        let mut eqs = cone.lineality;
        eqs.iter_mut().for_each(|e| reduce(e));
        eqs.sort();
        let mut ineqs = Vec::new();
        for r in cone.rays {
            let mut tight = false;
            for p in &rows {
                if dot(&r, p)? == 0 {
                    tight = true;
                    break;
                }
            }
            if tight {
                ineqs.push(r);
            }
        }
        ineqs.sort();
        Ok(Hull { n, dim: Some(n - eqs.len()), eqs, ineqs })
    }

    fn tight_rank(&self, p: &QPoint) -> Result<usize> {
        let mut rows = self.eqs.clone();
        for r in &self.ineqs {
            if p.eval(r)? == 0 {
                rows.push(r.clone());
            }
        }
        rank(&rows)
    }

    pub fn contains(&self, p: &QPoint) -> Result<bool> {
        if self.dim.is_none() {
            return Ok(false);
        }
        for e in &self.eqs {
            if p.eval(e)? != 0 {
                return Ok(false);
            }
        }
        for r in &self.ineqs {
            if p.eval(r)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn relint_contains(&self, p: &QPoint) -> Result<bool> {
        if !self.contains(p)? {
            return Ok(false);
        }
        for r in &self.ineqs {
            if p.eval(r)? == 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn interior_contains(&self, p: &QPoint) -> Result<bool> {
        Ok(self.dim == Some(self.n) && self.relint_contains(p)?)
    }
}

/// Vertex representation; vertices sorted and irredundant.
#[derive(Clone, Debug)]
pub struct VPolytope {
    n: usize,
    vertices: Vec<QPoint>,
    hull: Hull,
}

impl PartialEq for VPolytope {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.vertices == o.vertices
    }
}

impl Eq for VPolytope {}

impl VPolytope {
    pub fn empty(n: usize) -> Self {
        VPolytope { n, vertices: Vec::new(), hull: Hull { n, dim: None, eqs: Vec::new(), ineqs: Vec::new() } }
    }

    /// Convex hull of `pts`, reduced to its vertices.
    pub fn from_points(n: usize, mut pts: Vec<QPoint>) -> Result<Self> {
        for p in &pts {
            if p.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
            }
        }
        pts.sort();
        pts.dedup();
        let hull = Hull::of_points(n, &pts)?;
        let dim = hull.dim.unwrap_or(0);
        let mut vertices = Vec::new();
        for p in pts {
            if hull.tight_rank(&p)? == n || dim == 0 {
                vertices.push(p);
            }
        }
        Ok(VPolytope { n, vertices, hull })
    }

    pub fn from_integer_points(n: usize, pts: &[Vec<i64>]) -> Result<Self> {
        Self::from_points(n, pts.iter().map(|p| QPoint::integral(p)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[QPoint] {
        &self.vertices
    }

    pub fn hull(&self) -> &Hull {
        &self.hull
    }

    pub fn dim(&self) -> Option<usize> {
        self.hull.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(QPoint::is_integral)
    }

    pub fn contains(&self, p: &QPoint) -> Result<bool> {
        self.hull.contains(p)
    }

    pub fn origin_in_interior(&self) -> Result<bool> {
        self.hull.interior_contains(&QPoint::origin(self.n))
    }

    pub fn origin_in_relint(&self) -> Result<bool> {
        self.hull.relint_contains(&QPoint::origin(self.n))
    }

    pub fn to_hpolytope(&self) -> HPolytope {
        let mut rows = self.hull.ineqs.clone();
        for e in &self.hull.eqs {
            rows.push(e.clone());
            rows.push(e.iter().map(|x| -x).collect());
        }
        HPolytope { n: self.n, rows }
    }

    /// Integral points of `self` (of its relative interior when `strict`).
    pub fn region(&self, strict: bool) -> Region {
        let n = self.n;
        if self.is_empty() {
            return Region::new(n, vec![1; n], vec![0; n]);
        }
        let lo = (0..n)
            .map(|i| self.vertices.iter().map(|v| arith::cdiv(v.num[i], v.den)).min().unwrap() as i64)
            .collect();
        let hi = (0..n)
            .map(|i| self.vertices.iter().map(|v| arith::fdiv(v.num[i], v.den)).max().unwrap() as i64)
            .collect();
        let mut r = Region::new(n, lo, hi);
        for e in &self.hull.eqs {
            r.push_eq(e.clone());
        }
        for f in &self.hull.ineqs {
            r.push(f.clone(), i128::from(strict));
        }
        r
    }

    pub fn lattice_points_with(&self, s: Strategy) -> Vec<Vec<i64>> {
        self.region(false).points(s)
    }

    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        self.lattice_points_with(Strategy::default())
    }

    pub fn interior_lattice_points(&self) -> Vec<Vec<i64>> {
        self.region(true).points(Strategy::default())
    }

    pub fn count_l_with(&self, s: Strategy) -> u64 {
        self.region(false).count(s)
    }

    pub fn count_l(&self) -> u64 {
        self.count_l_with(Strategy::default())
    }

    /// Lattice points of the relative interior.
    pub fn count_l_star_with(&self, s: Strategy) -> u64 {
        self.region(true).count(s)
    }

    pub fn count_l_star(&self) -> u64 {
        self.count_l_star_with(Strategy::default())
    }

    pub fn dilate(&self, p: i64, q: i64) -> Result<VPolytope> {
        dilate(self, p, q)
    }
}

impl Serialize for VPolytope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("vrep", &self.vertices)?;
        m.end()
    }
}

/// A polytope whose vertices are all integral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LatticePolytope(VPolytope);

impl LatticePolytope {
    pub fn new(p: VPolytope) -> Option<Self> {
        p.is_lattice().then_some(LatticePolytope(p))
    }

    pub fn into_inner(self) -> VPolytope {
        self.0
    }
}

impl std::ops::Deref for LatticePolytope {
    type Target = VPolytope;
    fn deref(&self) -> &VPolytope {
        &self.0
    }
}

pub fn minkowski_sum(p: &VPolytope, q: &VPolytope) -> Result<VPolytope> {
    if p.n != q.n {
        return Err(Error::DimensionMismatch { expected: p.n, found: q.n });
    }
    if p.is_empty() || q.is_empty() {
        return Ok(VPolytope::empty(p.n));
    }
    let mut pts = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            pts.push(a.add(b)?);
        }
    }
    VPolytope::from_points(p.n, pts)
}

/// Sum of a list; the empty list sums to `{0}`.
pub fn minkowski_sum_all(n: usize, ps: &[&VPolytope]) -> Result<VPolytope> {
    let mut acc = VPolytope::from_points(n, vec![QPoint::origin(n)])?;
    for p in ps {
        acc = minkowski_sum(&acc, p)?;
    }
    Ok(acc)
}

pub fn conv_union(ps: &[&VPolytope]) -> Result<VPolytope> {
    let Some(first) = ps.first() else {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    };
    let n = first.n;
    let mut pts = Vec::new();
    for p in ps {
        if p.n != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.n });
        }
        pts.extend(p.vertices.iter().cloned());
    }
    VPolytope::from_points(n, pts)
}

/// `(p/q) * P`, `p/q > 0`.
pub fn dilate(poly: &VPolytope, p: i64, q: i64) -> Result<VPolytope> {
    assert!(p > 0 && q > 0, "dilation factor must be positive");
    let vertices = poly.vertices.iter().map(|v| v.scale(p as i128, q as i128)).collect::<Result<Vec<_>>>()?;
    let mut hull = poly.hull.clone();
    for r in hull.ineqs.iter_mut().chain(hull.eqs.iter_mut()) {
        r[0] = arith::mul(r[0], p as i128)?;
        r[1..].iter_mut().try_for_each(|c| -> Result<()> {
            *c = arith::mul(*c, q as i128)?;
            Ok(())
        })?;
        reduce(r);
    }
    Ok(VPolytope { n: poly.n, vertices, hull })
}

/// `[P] = conv(P ∩ M)`.
pub fn integer_part(p: &VPolytope) -> Result<LatticePolytope> {
    if p.is_lattice() {
        return Ok(LatticePolytope(p.clone()));
    }
    let pts = p.lattice_points();
    Ok(LatticePolytope(VPolytope::from_integer_points(p.n, &pts)?))
}

/// Least `k` with `0 ∈ Int[kΔ]`; `(Wf, 1)` when the origin sits on the boundary.
pub fn k0(delta: &HPolytope, cap: u32) -> Result<(Case, u32)> {
    let p = delta.vertices()?;
    let o = QPoint::origin(p.n);
    if !p.contains(&o)? {
        return Err(Error::OriginOutside);
    }
    if !p.origin_in_interior()? {
        return Ok((Case::Wf, 1));
    }
    for k in 1..=cap {
        if integer_part(&dilate(&p, k as i64, 1)?)?.origin_in_interior()? {
            return Ok((Case::F, k));
        }
    }
    Err(Error::IterationCap { what: "k0", cap })
}

/// Least `h` with every `[hΔ_k]` positive-dimensional and `0 ∈ relint Σ[hΔ_k]`.
pub fn h0(parts: &[VPolytope], cap: u32) -> Result<u32> {
    let Some(first) = parts.first() else {
        return Err(Error::PartitionInvalid("no parts".into()));
    };
    let n = first.n;
    'h: for h in 1..=cap {
        let mut ints = Vec::with_capacity(parts.len());
        for p in parts {
            let q = integer_part(&dilate(p, h as i64, 1)?)?;
            if q.dim().unwrap_or(0) == 0 {
                continue 'h;
            }
            ints.push(q.into_inner());
        }
        let refs: Vec<&VPolytope> = ints.iter().collect();
        if minkowski_sum_all(n, &refs)?.origin_in_relint()? {
            return Ok(h);
        }
    }
    Err(Error::IterationCap { what: "h0", cap })
}

/// No subfamily `S` has `dim Σ_S < |S| + h - 1`.
pub fn h_independent(polys: &[&VPolytope], h: usize) -> Result<bool> {
    let Some(first) = polys.first() else { return Ok(true) };
    let n = first.n;
    for mask in 1u32..(1 << polys.len()) {
        let sub: Vec<&VPolytope> =
            polys.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| *p).collect();
        let dim = minkowski_sum_all(n, &sub)?.dim().map_or(-1, |d| d as i64);
        if dim < (sub.len() + h) as i64 - 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Origin is the only interior point and every facet is at lattice distance 1.
pub fn is_reflexive(p: &VPolytope) -> Result<bool> {
    if p.dim() != Some(p.n) {
        return Err(Error::NotFullDimensional { dim: p.dim().unwrap_or(0), ambient: p.n });
    }
    if !p.is_lattice() || !p.origin_in_interior()? {
        return Ok(false);
    }
    Ok(p.hull.ineqs.iter().all(|r| r[0] > 0 && r[0] == gcd_all(&r[1..])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FanMatrix;
    use proptest::prelude::*;

    fn cube(n: usize, lo: i64, hi: i64) -> HPolytope {
        let mut rows = Vec::new();
        for i in 0..n {
            let mut r = vec![0i128; n + 1];
            r[0] = -(lo as i128);
            r[i + 1] = 1;
            rows.push(r);
            let mut r = vec![0i128; n + 1];
            r[0] = hi as i128;
            r[i + 1] = -1;
            rows.push(r);
        }
        HPolytope::from_rows(n, rows).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn unit_cube_vertices() {
        let v = cube(3, 0, 1).vertices().unwrap();
        assert_eq!(v.vertices().len(), 8);
        assert_eq!(v.dim(), Some(3));
        assert_eq!(v.hull().ineqs.len(), 6);
        assert_eq!(v.count_l(), 8);
        assert_eq!(v.count_l_star(), 0);
    }

    #[test]
    fn zero_framing_is_a_point() {
        let p = HPolytope::from_framing(&FanMatrix::projective(3), &[0, 0, 0, 0]).unwrap().vertices().unwrap();
        assert_eq!(p.vertices(), &[QPoint::origin(3)]);
        assert_eq!(p.dim(), Some(0));
        assert_eq!(p.count_l_star(), 1);
    }

    #[test]
    fn projective_framing_vertex() {
        let p = HPolytope::from_framing(&FanMatrix::projective(5), &[1, 1, 1, 1, 1, 2]).unwrap().vertices().unwrap();
        assert!(p.vertices().contains(&QPoint::integral(&[-1; 5])));
        assert!(p.vertices().contains(&QPoint::integral(&[6, -1, -1, -1, -1])));
        assert_eq!(p.vertices().len(), 6);
    }

    #[test]
    fn unbounded_is_reported() {
        let h = HPolytope::from_rows(2, vec![vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(h.vertices(), Err(Error::Unbounded));
    }

    #[test]
    fn infeasible_is_empty() {
        let h = HPolytope::from_rows(1, vec![vec![-1, 1], vec![-1, -1]]).unwrap();
        let p = h.vertices().unwrap();
        assert!(p.is_empty());
        assert_eq!(p.count_l(), 0);
        assert!(integer_part(&p).unwrap().is_empty());
    }

    #[test]
    fn segment_relint_counts() {
        let s = VPolytope::from_integer_points(2, &[vec![0, 0], vec![3, 3]]).unwrap();
        assert_eq!(s.dim(), Some(1));
        assert_eq!(s.count_l(), 4);
        assert_eq!(s.count_l_star(), 2);
    }

    #[test]
    fn minkowski_of_segments_is_square() {
        let a = VPolytope::from_integer_points(2, &[vec![0, 0], vec![1, 0]]).unwrap();
        let b = VPolytope::from_integer_points(2, &[vec![0, 0], vec![0, 1]]).unwrap();
        let s = minkowski_sum(&a, &b).unwrap();
        assert_eq!(s, cube(2, 0, 1).vertices().unwrap());
        let z = VPolytope::from_points(2, vec![QPoint::origin(2)]).unwrap();
        assert_eq!(minkowski_sum(&s, &z).unwrap(), s);
    }

    #[test]
    fn anticanonical_dilations_match_binomials() {
        for n in 1..=4u64 {
            let d = HPolytope::from_framing(&FanMatrix::projective(n as usize), &vec![1; n as usize + 1])
                .unwrap()
                .vertices()
                .unwrap();
            for i in 1..=3u64 {
                let l = if i == 1 { 1 } else { d.dilate((i - 1) as i64, 1).unwrap().count_l() };
                assert_eq!(l, binom(i * n + i - 1, n));
            }
        }
    }

    #[test]
    fn reflexivity() {
        let v = FanMatrix::projective(3);
        let p = HPolytope::from_framing(&v, &[1, 1, 1, 1]).unwrap().vertices().unwrap();
        assert!(is_reflexive(&p).unwrap());
        let q = HPolytope::from_framing(&v, &[1, 1, 1, 2]).unwrap().vertices().unwrap();
        assert!(!is_reflexive(&q).unwrap());
        assert!(is_reflexive(&cube(3, -1, 1).vertices().unwrap()).unwrap());
        let seg = VPolytope::from_integer_points(2, &[vec![-1, 0], vec![1, 0]]).unwrap();
        assert!(matches!(is_reflexive(&seg), Err(Error::NotFullDimensional { .. })));
    }

    #[test]
    fn k0_cases() {
        let v = FanMatrix::projective(5);
        let f = HPolytope::from_framing(&v, &[1; 6]).unwrap();
        assert_eq!(k0(&f, 64).unwrap(), (Case::F, 1));
        let w = HPolytope::from_framing(&v, &[1, 1, 0, 1, 1, 1]).unwrap();
        assert_eq!(k0(&w, 64).unwrap(), (Case::Wf, 1));
        for d in 2..5 {
            let h = HPolytope::from_framing(&FanMatrix::projective(3), &[1, 1, 1, d]).unwrap();
            assert_eq!(k0(&h, 64).unwrap(), (Case::F, 1));
        }
    }

    #[test]
    fn h0_needs_dilation_for_thin_simplex() {
        // only the origin is integral until h = 3
        let t = VPolytope::from_points(
            2,
            vec![QPoint::new(vec![-1, -1], 3), QPoint::new(vec![2, -1], 3), QPoint::new(vec![-1, 2], 3)],
        )
        .unwrap();
        assert_eq!(integer_part(&t).unwrap().dim(), Some(0));
        assert_eq!(h0(std::slice::from_ref(&t), 64).unwrap(), 3);
        assert_eq!(h0(&[t], 2), Err(Error::IterationCap { what: "h0", cap: 2 }));
    }

    #[test]
    fn independence() {
        let seg = |v: Vec<i64>| VPolytope::from_integer_points(3, &[vec![0, 0, 0], v]).unwrap();
        let a = seg(vec![1, 0, 0]);
        let b = seg(vec![2, 0, 0]);
        assert!(!h_independent(&[&a, &b], 2).unwrap());
        let c = cube(3, 0, 1).vertices().unwrap();
        assert!(h_independent(&[&c], 3).unwrap());
        assert!(!h_independent(&[&c], 4).unwrap());
    }

    #[test]
    fn rational_vertex_strings() {
        let p = QPoint::new(vec![-1, -1, 5], 4);
        assert_eq!(p.coord_strings(), vec!["-1/4", "-1/4", "5/4"]);
        assert_eq!(QPoint::new(vec![2, 4], -2), QPoint::integral(&[-1, -2]));
    }

    fn small_framing() -> impl Strategy_<Value = (Vec<i64>, Vec<i64>)> {
        (proptest::collection::vec(0i64..3, 4), proptest::collection::vec(0i64..3, 4))
    }
    use proptest::strategy::Strategy as Strategy_;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn minkowski_of_framings((a, b) in small_framing()) {
            let v = FanMatrix::new(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]]).unwrap();
            let pa = HPolytope::from_framing(&v, &a).unwrap().vertices().unwrap();
            let pb = HPolytope::from_framing(&v, &b).unwrap().vertices().unwrap();
            let ab: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let pab = HPolytope::from_framing(&v, &ab).unwrap().vertices().unwrap();
            prop_assert_eq!(minkowski_sum(&pa, &pb).unwrap(), pab);
        }

        #[test]
        fn round_trip_keeps_points(a in proptest::collection::vec(0i64..4, 4)) {
            let v = FanMatrix::projective(3);
            let h = HPolytope::from_framing(&v, &a).unwrap();
            let p = h.vertices().unwrap();
            let back = p.to_hpolytope().vertices().unwrap();
            prop_assert_eq!(back.lattice_points(), p.lattice_points());
            for x in p.lattice_points() {
                prop_assert!(h.contains(&QPoint::integral(&x)).unwrap());
            }
        }

        #[test]
        fn boundary_split(pts in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 4..8)) {
            let p = VPolytope::from_integer_points(3, &pts).unwrap();
            prop_assume!(p.dim() == Some(3));
            let boundary = p
                .lattice_points()
                .iter()
                .filter(|x| !p.hull().relint_contains(&QPoint::integral(x)).unwrap())
                .count() as u64;
            prop_assert_eq!(p.count_l(), p.count_l_star() + boundary);
            prop_assert_eq!(
                p.count_l_with(enumerate::Strategy::Sequential),
                p.count_l_with(enumerate::Strategy::Parallel)
            );
        }
    }
}
