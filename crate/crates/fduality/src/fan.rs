//! Cones, face fans of polytopes, fan matrices and the canonical support
//! function.

use crate::error::{Error, Result};
use crate::lattice::{primitive, FanMatrix};
use crate::polytope::arith::{dot, reduce};
use crate::polytope::{dd, QPoint, VPolytope};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Cone spanned by primitive generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub generators: Vec<Vec<i64>>,
    eqs: Vec<Vec<i128>>,
    facets: Vec<Vec<i128>>,
}

impl Cone {
    pub fn new(n: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.len() });
            }
            gens.push(primitive(&g)?);
        }
        let rows: Vec<Vec<i128>> = gens.iter().map(|g| g.iter().map(|&x| x as i128).collect()).collect();
        let dual = dd::dd(&rows, n)?;
        let mut eqs = dual.lineality;
        eqs.iter_mut().for_each(|e| reduce(e));
        Ok(Cone { generators: gens, eqs, facets: dual.rays })
    }

    pub fn dim(&self) -> usize {
        self.generators.first().map_or(0, Vec::len) - self.eqs.len()
    }

    /// No line: the H-description has trivial lineality.
    pub fn is_strongly_convex(&self) -> bool {
        let n = self.generators.first().map_or(0, Vec::len);
        let mut rows = self.facets.clone();
        for e in &self.eqs {
            rows.push(e.clone());
            rows.push(e.iter().map(|x| -x).collect());
        }
        dd::dd(&rows, n).is_ok_and(|c| c.lineality.is_empty())
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        let m: Vec<i128> = m.iter().map(|&x| x as i128).collect();
        self.eqs.iter().all(|e| dot(e, &m) == Ok(0)) && self.facets.iter().all(|f| dot(f, &m).is_ok_and(|v| v >= 0))
    }
}

/// Rays (primitive, sorted) and maximal cones as ray-index lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fan {
    #[serde(skip)]
    pub n: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(skip)]
    pub complete: bool,
    #[serde(skip)]
    pub simplicial: bool,
}

impl Fan {
    pub fn cone(&self, k: usize) -> Result<Cone> {
        Cone::new(self.n, self.max_cones[k].iter().map(|&i| self.rays[i].clone()).collect())
    }
}

fn direction(v: &QPoint) -> Result<Vec<i64>> {
    let num: Vec<i64> = v
        .numerators()
        .iter()
        .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("ray")))
        .collect::<Result<_>>()?;
    primitive(&num)
}

/// Cones over the faces of `p` that miss the origin.
pub fn face_fan(p: &VPolytope) -> Result<Fan> {
    let n = p.n();
    let origin = QPoint::origin(n);
    if !p.contains(&origin)? {
        return Err(Error::OriginOutside);
    }
    let complete = p.origin_in_interior()?;
    let verts = p.vertices();
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for f in &p.hull().ineqs {
        if f[0] == 0 {
            continue;
        }
        let tight: Vec<usize> = (0..verts.len())
            .filter(|&i| {
                let h: Vec<i128> =
                    std::iter::once(verts[i].denominator()).chain(verts[i].numerators().iter().copied()).collect();
                dot(f, &h) == Ok(0)
            })
            .collect();
        facets.push(tight);
    }
    let mut used: Vec<usize> = facets.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let mut rays: Vec<Vec<i64>> = used.iter().map(|&i| direction(&verts[i])).collect::<Result<_>>()?;
    let order = {
        let mut idx: Vec<usize> = (0..rays.len()).collect();
        idx.sort_by(|&a, &b| rays[a].cmp(&rays[b]));
        idx
    };
    let mut position = vec![0usize; verts.len()];
    for (new, &old) in order.iter().enumerate() {
        position[used[old]] = new;
    }
    rays = order.iter().map(|&i| rays[i].clone()).collect();
    let mut max_cones: Vec<Vec<usize>> = facets
        .into_iter()
        .map(|f| {
            let mut c: Vec<usize> = f.into_iter().map(|i| position[i]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    max_cones.sort();
    let dim = p.dim().unwrap_or(0);
    let simplicial = max_cones.iter().all(|c| c.len() == dim);
    Ok(Fan { n, rays, max_cones, complete, simplicial })
}

pub fn fan_matrix(f: &Fan) -> FanMatrix {
    FanMatrix { n: f.n, columns: f.rays.clone() }
}

/// `perm` with `a[j] == b[perm[j]]` for all columns `j`.
pub fn columns_equal_up_to_permutation(a: &FanMatrix, b: &FanMatrix) -> Option<Vec<usize>> {
    if a.n != b.n || a.m() != b.m() {
        return None;
    }
    let mut taken = vec![false; b.m()];
    let mut perm = Vec::with_capacity(a.m());
    for col in &a.columns {
        let j = (0..b.m()).find(|&j| !taken[j] && &b.columns[j] == col)?;
        taken[j] = true;
        perm.push(j);
    }
    Some(perm)
}

/// `V_I^{-1} = inv / den` for one simplicial cone, kept integral.
#[derive(Clone, Debug)]
struct SimplicialPiece {
    inv: Vec<Vec<BigInt>>,
    den: BigInt,
}

impl SimplicialPiece {
    fn new(gens: &[Vec<i64>]) -> Result<Self> {
        let n = gens.len();
        // rows of the augmented matrix [G | I], G with the generators as columns
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        let v = if j < n { gens[j][i] } else { i64::from(j - n == i) };
                        BigRational::from_integer(BigInt::from(v))
                    })
                    .collect()
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !m[r][c].is_zero()).ok_or(Error::NotSimplicial)?;
            m.swap(c, p);
            let piv = m[c][c].clone();
            m[c].iter_mut().for_each(|x| *x /= &piv);
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    let pivot_row = m[c].clone();
                    for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                        *x -= p * &f;
                    }
                }
            }
        }
        let den = m
            .iter()
            .flat_map(|r| r[n..].iter())
            .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let inv = m
            .iter()
            .map(|r| r[n..].iter().map(|q| q.numer() * (&den / q.denom())).collect())
            .collect();
        Ok(SimplicialPiece { inv, den })
    }

    /// Coordinates times `den`, or `None` outside the cone.
    fn coords(&self, m: &[i64]) -> Option<Vec<BigInt>> {
        let c: Vec<BigInt> = self
            .inv
            .iter()
            .map(|row| row.iter().zip(m).map(|(a, &x)| a * x).sum())
            .collect();
        c.iter().all(|x| !x.is_negative()).then_some(c)
    }
}

/// The canonical support function of a complete simplicial fan, prepared for
/// repeated evaluation.
#[derive(Clone, Debug)]
pub struct SupportFunction {
    n: usize,
    pieces: Vec<SimplicialPiece>,
}

impl SupportFunction {
    pub fn new(f: &Fan) -> Result<Self> {
        if !f.simplicial {
            return Err(Error::NotSimplicial);
        }
        if !f.complete {
            return Err(Error::NotComplete);
        }
        let pieces = f
            .max_cones
            .iter()
            .map(|c| {
                let gens: Vec<Vec<i64>> = c.iter().map(|&i| f.rays[i].clone()).collect();
                SimplicialPiece::new(&gens)
            })
            .collect::<Result<_>>()?;
        Ok(SupportFunction { n: f.n, pieces })
    }

    /// Value on every maximal cone containing `m`.
    pub fn values_all(&self, m: &[i64]) -> Vec<BigRational> {
        self.pieces
            .iter()
            .filter_map(|p| p.coords(m).map(|c| BigRational::new(c.iter().sum(), p.den.clone())))
            .collect()
    }

    /// `φ_K(m) = Σ c_i` where `m = Σ c_i v_i` on a cone containing `m`.
    pub fn value(&self, m: &[i64]) -> Result<BigRational> {
        if m.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: m.len() });
        }
        for p in &self.pieces {
            if let Some(c) = p.coords(m) {
                return Ok(BigRational::new(c.iter().sum(), p.den.clone()));
            }
        }
        Err(Error::NotComplete)
    }
}

pub fn canonical_support_value(f: &Fan, m: &[i64]) -> Result<BigRational> {
    SupportFunction::new(f)?.value(m)
}

/// Support function of the partial resolution of `X_{(1_n, d-n)}` obtained by
/// adding the rays `e_1..e_n` inside the last cone. Integral, and `>= 0`.
pub fn support_value_resolved(n: usize, d: i64, m: &[i64]) -> i64 {
    assert_eq!(m.len(), n);
    let delta = d - n as i64;
    let sum: i64 = m.iter().sum();
    let min = *m.iter().min().expect("n >= 1");
    if m.iter().all(|&x| delta * x + sum >= 0) {
        sum + (delta - 1) * min.min(0)
    } else {
        -min
    }
}

/// Columns of the resolved fan: `d e_j - 1`, `-1`, then the added `e_j`.
pub fn resolved_rays(n: usize, d: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { d - 1 } else { -1 }).collect())
        .collect();
    out.push(vec![-1; n]);
    out.extend((0..n).map(|j| (0..n).map(|i| i64::from(i == j)).collect()));
    out
}

pub fn is_integral(q: &BigRational) -> bool {
    q.is_integer()
}

pub fn to_i64(q: &BigRational) -> Option<i64> {
    q.is_integer().then(|| q.to_integer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::HPolytope;
    use proptest::prelude::*;

    fn diamond() -> VPolytope {
        VPolytope::from_integer_points(2, &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]).unwrap()
    }

    fn framed_fan(n: usize, a: &[i64]) -> Fan {
        let p = HPolytope::from_framing(&FanMatrix::projective(n), a).unwrap().vertices().unwrap();
        face_fan(&p).unwrap()
    }

    #[test]
    fn diamond_face_fan_is_quadrants() {
        let f = face_fan(&diamond()).unwrap();
        assert_eq!(f.rays, vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
        assert_eq!(f.max_cones.len(), 4);
        assert!(f.complete && f.simplicial);
    }

    #[test]
    fn origin_outside() {
        let p = VPolytope::from_integer_points(1, &[vec![1], vec![2]]).unwrap();
        assert_eq!(face_fan(&p), Err(Error::OriginOutside));
    }

    #[test]
    fn boundary_origin_gives_incomplete_fan() {
        let p = VPolytope::from_integer_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let f = face_fan(&p).unwrap();
        assert!(!f.complete);
        assert_eq!(f.rays, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(f.max_cones, vec![vec![0, 1]]);
    }

    #[test]
    fn projective_self_reproduction() {
        for n in 1..=5 {
            let v = FanMatrix::projective(n);
            let cols: Vec<Vec<i64>> = v.columns.clone();
            let p = VPolytope::from_integer_points(n, &cols).unwrap();
            let f = fan_matrix(&face_fan(&p).unwrap());
            assert!(columns_equal_up_to_permutation(&v, &f).is_some());
        }
    }

    #[test]
    fn permutation_witness() {
        let a = FanMatrix::projective(2);
        assert_eq!(columns_equal_up_to_permutation(&a, &a), Some(vec![0, 1, 2]));
        let b = a.permuted(&[1, 0, 2]);
        assert_eq!(columns_equal_up_to_permutation(&a, &b), Some(vec![1, 0, 2]));
        let c = FanMatrix::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(columns_equal_up_to_permutation(&a, &c), None);
    }

    #[test]
    fn support_value_on_rays_and_origin() {
        let f = framed_fan(3, &[1, 1, 1, 1]);
        for r in &f.rays {
            assert_eq!(canonical_support_value(&f, r).unwrap(), BigRational::one());
        }
        assert!(canonical_support_value(&f, &[0, 0, 0]).unwrap().is_zero());
    }

    #[test]
    fn non_gorenstein_denominator() {
        for delta in 2..5i64 {
            let mut a = vec![1; 4];
            a[3] = delta;
            let f = framed_fan(3, &a);
            let v = canonical_support_value(&f, &[1, 0, 0]).unwrap();
            assert_eq!(v, BigRational::new(BigInt::one(), BigInt::from(delta)));
        }
    }

    #[test]
    fn incomplete_fan_rejected() {
        let p = VPolytope::from_integer_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let f = face_fan(&p).unwrap();
        assert_eq!(canonical_support_value(&f, &[1, 1]), Err(Error::NotComplete));
        let sq = VPolytope::from_integer_points(2, &[vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]).unwrap();
        let mut f = face_fan(&sq).unwrap();
        assert!(f.simplicial);
        f.simplicial = false;
        assert_eq!(canonical_support_value(&f, &[1, 1]), Err(Error::NotSimplicial));
    }

    #[test]
    fn resolved_rays_have_value_one() {
        for (n, d) in [(4, 6), (5, 7), (3, 5)] {
            for r in resolved_rays(n, d) {
                assert_eq!(support_value_resolved(n, d, &r), 1);
            }
            assert_eq!(support_value_resolved(n, d, &vec![0; n]), 0);
        }
    }

    #[test]
    fn cone_membership() {
        let c = Cone::new(2, vec![vec![1, 0], vec![1, 2]]).unwrap();
        assert!(c.contains(&[2, 1]));
        assert!(!c.contains(&[0, 1]));
        assert_eq!(c.dim(), 2);
        assert!(c.is_strongly_convex());
        let half = Cone::new(2, vec![vec![1, 0], vec![-1, 0], vec![0, 1]]).unwrap();
        assert!(!half.is_strongly_convex());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn support_value_homogeneous_and_well_defined(m in proptest::collection::vec(-6i64..=6, 3), k in 1i64..5) {
            let f = framed_fan(3, &[1, 1, 2, 1]);
            let s = SupportFunction::new(&f).unwrap();
            let all = s.values_all(&m);
            prop_assert!(!all.is_empty());
            prop_assert!(all.iter().all(|v| v == &all[0]));
            let km: Vec<i64> = m.iter().map(|x| x * k).collect();
            prop_assert_eq!(s.value(&km).unwrap(), &all[0] * BigRational::from_integer(BigInt::from(k)));
        }

        #[test]
        fn resolved_value_matches_cone_decomposition(m in proptest::collection::vec(-8i64..=8, 4)) {
            // the resolved fan, as the face fan of its rays' hull, evaluates identically
            let (n, d) = (4usize, 6i64);
            let v = support_value_resolved(n, d, &m);
            prop_assert!(v >= 0);
            let km: Vec<i64> = m.iter().map(|x| 3 * x).collect();
            prop_assert_eq!(support_value_resolved(n, d, &km), 3 * v);
        }

        #[test]
        fn face_fan_round_trip(a in proptest::collection::vec(1i64..4, 4)) {
            let f = framed_fan(3, &a);
            let m = fan_matrix(&f);
            let p = VPolytope::from_integer_points(3, &m.columns).unwrap();
            let again = fan_matrix(&face_fan(&p).unwrap());
            prop_assert_eq!(again, m);
        }
    }
}
