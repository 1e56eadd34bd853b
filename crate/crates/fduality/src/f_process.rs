//! Partitioned framings and the f-duality algorithm: dual fan matrix, dual
//! framings, the second dualization and calibration.

use crate::error::{Error, Result};
use crate::fan::{columns_equal_up_to_permutation, face_fan, fan_matrix};
use crate::lattice::{gcd_slice, primitive, FanMatrix};
use crate::polytope::{self, conv_union, dilate, integer_part, HPolytope, QPoint, VPolytope};
use serde::{Deserialize, Serialize};

/// Origin interior to the framing polytope (`F`) or on its boundary (`Wf`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "f")]
    F,
    #[serde(rename = "wf")]
    Wf,
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Case::F => "f",
            Case::Wf => "wf",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionedFraming {
    pub v: FanMatrix,
    pub a: Vec<i64>,
    /// Disjoint 0-based index sets covering the columns.
    pub partition: Vec<Vec<usize>>,
}

impl PartitionedFraming {
    pub fn new(v: FanMatrix, a: Vec<i64>, partition: Vec<Vec<usize>>) -> Result<Self> {
        let pf = PartitionedFraming { v, a, partition };
        pf.check_shape()?;
        Ok(pf)
    }

    fn check_shape(&self) -> Result<()> {
        let m = self.v.m();
        if self.a.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: self.a.len() });
        }
        if self.a.iter().any(|&x| x < 0) {
            return Err(Error::InvalidFraming(format!("negative weight in {:?}", self.a)));
        }
        if self.partition.is_empty() {
            return Err(Error::PartitionInvalid("no parts".into()));
        }
        let mut seen = vec![false; m];
        for part in &self.partition {
            if part.is_empty() {
                return Err(Error::PartitionInvalid("empty part".into()));
            }
            for &i in part {
                if i >= m {
                    return Err(Error::PartitionInvalid(format!("index {} out of range", i + 1)));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::PartitionInvalid(format!("index {} repeated", i + 1)));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::PartitionInvalid(format!("index {} not covered", i + 1)));
        }
        for (k, part) in self.partition.iter().enumerate() {
            if part.iter().all(|&i| self.a[i] == 0) {
                return Err(Error::PartitionInvalid(format!("part {} has zero weight", k + 1)));
            }
        }
        Ok(())
    }

    pub fn l(&self) -> usize {
        self.partition.len()
    }

    /// `a_k`: the weights on `I_k`, zero elsewhere.
    pub fn part(&self, k: usize) -> Vec<i64> {
        let mut out = vec![0; self.a.len()];
        for &i in &self.partition[k] {
            out[i] = self.a[i];
        }
        out
    }

    pub fn parts(&self) -> Vec<Vec<i64>> {
        (0..self.l()).map(|k| self.part(k)).collect()
    }

    pub fn is_strict(&self) -> bool {
        self.a.iter().all(|&x| x > 0)
    }

    pub fn framing_polytope(&self) -> Result<HPolytope> {
        HPolytope::from_framing(&self.v, &self.a)
    }

    pub fn part_polytopes(&self) -> Result<Vec<VPolytope>> {
        self.parts().iter().map(|ak| HPolytope::from_framing(&self.v, ak)?.vertices()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    #[serde(rename = "ftv")]
    Ftv,
    #[serde(rename = "wftv")]
    Wftv,
}

#[derive(Clone, Debug)]
pub struct Diagnostics {
    pub kind: Kind,
    pub issues: Vec<Error>,
}

impl Diagnostics {
    pub fn into_result(self) -> Result<Kind> {
        match self.issues.into_iter().next() {
            Some(e) => Err(e),
            None => Ok(self.kind),
        }
    }
}

/// Every violated condition, plus the ftv/wftv classification.
pub fn validate(pf: &PartitionedFraming) -> Diagnostics {
    let mut issues = Vec::new();
    for (j, c) in pf.v.columns.iter().enumerate() {
        if c.len() != pf.v.n {
            issues.push(Error::DimensionMismatch { expected: pf.v.n, found: c.len() });
        } else if gcd_slice(c) != 1 {
            issues.push(Error::InvalidFraming(format!("column {} is not primitive", j + 1)));
        }
    }
    if issues.is_empty() {
        let rank = crate::lattice::smith_normal_form(&pf.v.to_int_matrix()).rank();
        if rank < pf.v.n {
            issues.push(Error::RankDeficient { rank, rows: pf.v.n });
        } else {
            let hull = VPolytope::from_integer_points(pf.v.n, &pf.v.columns);
            match hull.and_then(|h| h.origin_in_interior()) {
                Ok(true) => {}
                Ok(false) => issues.push(Error::NotComplete),
                Err(e) => issues.push(e),
            }
        }
    }
    if let Err(e) = pf.check_shape() {
        issues.push(e);
    }
    let kind = if pf.is_strict() { Kind::Ftv } else { Kind::Wftv };
    Diagnostics { kind, issues }
}

/// Output of one dualization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FDualData {
    pub case: Case,
    pub h0: u32,
    pub dual_fan_matrix: FanMatrix,
    pub b: Vec<i64>,
    pub b_k: Vec<Vec<i64>>,
    /// Induced partition of the dual columns, 0-based.
    pub j_parts: Vec<Vec<usize>>,
}

impl FDualData {
    /// Reorder the dual columns: new column `j` is old column `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> FDualData {
        let mut inv = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut j_parts: Vec<Vec<usize>> =
            self.j_parts.iter().map(|p| p.iter().map(|&j| inv[j]).collect()).collect();
        j_parts.iter_mut().for_each(|p| p.sort_unstable());
        FDualData {
            case: self.case,
            h0: self.h0,
            dual_fan_matrix: self.dual_fan_matrix.permuted(perm),
            b: perm.iter().map(|&j| self.b[j]).collect(),
            b_k: self.b_k.iter().map(|bk| perm.iter().map(|&j| bk[j]).collect()).collect(),
            j_parts,
        }
    }

    pub fn l(&self) -> usize {
        self.b_k.len()
    }

    /// The dual as a partitioned framing, ready for the second pass.
    pub fn as_framing(&self) -> Result<PartitionedFraming> {
        PartitionedFraming::new(self.dual_fan_matrix.clone(), self.b.clone(), self.j_parts.clone())
    }

    pub fn part_polytopes(&self) -> Result<Vec<VPolytope>> {
        self.b_k
            .iter()
            .map(|bk| HPolytope::from_framing(&self.dual_fan_matrix, bk)?.vertices())
            .collect()
    }
}

enum Dilation {
    /// Least `h` with positive-dimensional integer parts whose sum has 0 in its relative interior.
    RelintSum,
    /// Least `h` with `0 ∈ Int[h Δ]` for the total framing polytope.
    Interior,
}

fn dualize(
    v: &FanMatrix,
    weights: &[Vec<i64>],
    partition: &[Vec<usize>],
    rule: Dilation,
    cap: u32,
) -> Result<FDualData> {
    let total: Vec<i64> = (0..v.m()).map(|i| weights.iter().map(|w| w[i]).sum()).collect();
    let delta = HPolytope::from_framing(v, &total)?;
    let delta_v = delta.vertices()?;
    let case = if delta_v.origin_in_interior()? { Case::F } else { Case::Wf };
    let parts: Vec<VPolytope> =
        weights.iter().map(|w| HPolytope::from_framing(v, w)?.vertices()).collect::<Result<_>>()?;

    let h = match (case, rule) {
        (Case::Wf, _) => 1,
        (Case::F, Dilation::RelintSum) => polytope::h0(&parts, cap)?,
        (Case::F, Dilation::Interior) => {
            let mut found = None;
            for h in 1..=cap {
                if integer_part(&dilate(&delta_v, h as i64, 1)?)?.origin_in_interior()? {
                    found = Some(h);
                    break;
                }
            }
            found.ok_or(Error::IterationCap { what: "h1", cap })?
        }
    };
    let refs: Vec<&VPolytope> = parts.iter().collect();
    let hull = integer_part(&dilate(&conv_union(&refs)?, h as i64, 1)?)?;
    let fan = face_fan(&hull)?;
    let lam = fan_matrix(&fan);

    let l = weights.len();
    let mut b_k = vec![vec![0i64; lam.m()]; l];
    for (j, col) in lam.columns.iter().enumerate() {
        for (k, part) in partition.iter().enumerate() {
            let min = part
                .iter()
                .map(|&i| col.iter().zip(&v.columns[i]).map(|(x, y)| x * y).sum::<i64>())
                .min()
                .unwrap_or(0);
            b_k[k][j] = (-min).max(0);
        }
    }
    let b: Vec<i64> = (0..lam.m()).map(|j| b_k.iter().map(|bk| bk[j]).sum()).collect();

    let mut j_parts = vec![Vec::new(); l];
    for (j, col) in lam.columns.iter().enumerate() {
        let p = QPoint::integral(col);
        let members: Vec<usize> =
            (0..l).filter(|&k| parts[k].contains(&p).unwrap_or(false)).collect();
        let support: Vec<usize> = (0..l).filter(|&k| b_k[k][j] > 0).collect();
        let k = match (members.as_slice(), support.as_slice()) {
            ([k], _) => *k,
            (_, [k]) => *k,
            (ms, ss) => {
                let both: Vec<usize> = ms.iter().copied().filter(|k| ss.contains(k)).collect();
                match both.as_slice() {
                    [k] => *k,
                    _ => {
                        return Err(Error::PartitionInvalid(format!(
                            "dual column {} has no unique part (members {:?}, support {:?})",
                            j + 1,
                            ms,
                            ss
                        )))
                    }
                }
            }
        };
        j_parts[k].push(j);
    }
    Ok(FDualData { case, h0: h, dual_fan_matrix: lam, b, b_k, j_parts })
}

/// First dualization of `pf`.
pub fn f_dual(pf: &PartitionedFraming) -> Result<FDualData> {
    f_dual_with_cap(pf, polytope::hcap())
}

pub fn f_dual_with_cap(pf: &PartitionedFraming, cap: u32) -> Result<FDualData> {
    pf.check_shape()?;
    dualize(&pf.v, &pf.parts(), &pf.partition, Dilation::RelintSum, cap)
}

/// Both dualizations; `second.b_k` holds the `c_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FProcess {
    pub first: FDualData,
    pub second: FDualData,
}

pub fn f_process(pf: &PartitionedFraming) -> Result<FProcess> {
    f_process_with_cap(pf, polytope::hcap())
}

pub fn f_process_with_cap(pf: &PartitionedFraming, cap: u32) -> Result<FProcess> {
    let first = f_dual_with_cap(pf, cap)?;
    if first.case == Case::Wf {
        return Err(Error::CaseWf);
    }
    let second = dualize(&first.dual_fan_matrix, &first.b_k, &first.j_parts, Dilation::Interior, cap)?;
    Ok(FProcess { first, second })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Calibration {
    pub calibrated: bool,
    /// `V[j] == Λ̌_b̌[permutation[j]]`, when the columns match.
    pub permutation: Option<Vec<usize>>,
    pub process: FProcess,
}

pub fn is_calibrated(pf: &PartitionedFraming) -> Result<Calibration> {
    let process = f_process(pf)?;
    let perm = columns_equal_up_to_permutation(&pf.v, &process.second.dual_fan_matrix);
    let calibrated = perm.as_ref().is_some_and(|p| {
        process.second.b_k.len() == pf.l()
            && (0..pf.l()).all(|k| {
                let ak = pf.part(k);
                (0..pf.v.m()).all(|j| process.second.b_k[k][p[j]] == ak[j])
            })
    });
    Ok(Calibration { calibrated, permutation: perm, process })
}

/// Part sizes `m_k`: left to right, as large as the degrees allow while
/// leaving one column for each later part. A single-column part of degree
/// at least 2 is never calibrated, so when the greedy split has one the
/// lexicographically largest split without such parts is used instead, if any.
pub fn default_part_sizes(n: usize, degrees: &[i64]) -> Result<Vec<usize>> {
    let l = degrees.len();
    let sum: i64 = degrees.iter().sum();
    if l == 0 || l > n || degrees.iter().any(|&d| d < 1) || sum < n as i64 + 1 {
        return Err(Error::InfeasibleDegrees(format!("n = {n}, degrees {degrees:?}")));
    }
    let mut left = n + 1;
    let mut sizes = Vec::with_capacity(l);
    for (k, &d) in degrees.iter().enumerate() {
        let m = (d as usize).min(left - (l - k - 1));
        sizes.push(m);
        left -= m;
    }
    if has_thin_part(degrees, &sizes) {
        let mut buf = Vec::with_capacity(l);
        if thick_split(degrees, n + 1, &mut buf) {
            return Ok(buf);
        }
    }
    Ok(sizes)
}

fn has_thin_part(degrees: &[i64], sizes: &[usize]) -> bool {
    sizes.iter().zip(degrees).any(|(&m, &d)| m == 1 && d >= 2)
}

/// Largest-first search for sizes summing to `left` with `2 <= m_k <= d_k`
/// whenever `d_k >= 2`.
fn thick_split(degrees: &[i64], left: usize, buf: &mut Vec<usize>) -> bool {
    let k = buf.len();
    if k == degrees.len() {
        return left == 0;
    }
    let rest = degrees.len() - k - 1;
    let lo = if degrees[k] >= 2 { 2 } else { 1 };
    let hi = (degrees[k] as usize).min(left.saturating_sub(rest));
    for m in (lo..=hi).rev() {
        buf.push(m);
        if thick_split(degrees, left - m, buf) {
            return true;
        }
        buf.pop();
    }
    false
}

fn check_sizes(n: usize, degrees: &[i64], sizes: &[usize]) -> Result<()> {
    let bad = sizes.len() != degrees.len()
        || sizes.iter().sum::<usize>() != n + 1
        || sizes.iter().zip(degrees).any(|(&m, &d)| m == 0 || m as i64 > d);
    if bad {
        return Err(Error::InfeasibleDegrees(format!("part sizes {sizes:?} for degrees {degrees:?} on P^{n}")));
    }
    Ok(())
}

/// `a_k = (1, .., 1, δ_k)` on consecutive blocks of sizes `m_k`, `δ_k = d_k - m_k + 1`.
pub fn canonical_projective_framing(n: usize, degrees: &[i64]) -> Result<PartitionedFraming> {
    let sizes = default_part_sizes(n, degrees)?;
    canonical_projective_framing_with_sizes(n, degrees, &sizes)
}

pub fn canonical_projective_framing_with_sizes(
    n: usize,
    degrees: &[i64],
    sizes: &[usize],
) -> Result<PartitionedFraming> {
    check_sizes(n, degrees, sizes)?;
    let mut a = Vec::with_capacity(n + 1);
    let mut partition = Vec::with_capacity(sizes.len());
    for (&m, &d) in sizes.iter().zip(degrees) {
        let start = a.len();
        a.extend(std::iter::repeat_n(1, m - 1));
        a.push(d - m as i64 + 1);
        partition.push((start..start + m).collect());
    }
    PartitionedFraming::new(FanMatrix::projective(n), a, partition)
}

/// Weak framing for `Σ d_k <= n`: part `k >= 2` takes `d_k` columns, the
/// first part takes the rest; each `a_k` is `d_k` ones at the head of its block.
pub fn weak_projective_framing(n: usize, degrees: &[i64]) -> Result<PartitionedFraming> {
    let l = degrees.len();
    let sum: i64 = degrees.iter().sum();
    if l == 0 || degrees.iter().any(|&d| d < 1) || sum > n as i64 {
        return Err(Error::InfeasibleDegrees(format!("n = {n}, degrees {degrees:?}")));
    }
    let rest: usize = degrees[1..].iter().map(|&d| d as usize).sum();
    let mut sizes = vec![n + 1 - rest];
    sizes.extend(degrees[1..].iter().map(|&d| d as usize));
    let mut a = Vec::with_capacity(n + 1);
    let mut partition = Vec::with_capacity(l);
    for (&m, &d) in sizes.iter().zip(degrees) {
        let start = a.len();
        a.extend((0..m).map(|i| i64::from((i as i64) < d)));
        partition.push((start..start + m).collect());
    }
    PartitionedFraming::new(FanMatrix::projective(n), a, partition)
}

/// Closed-form dual of a canonical projective framing, columns in the
/// order of the parts and, within a part, of the vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedDual {
    pub columns: Vec<Vec<i64>>,
    pub b_k: Vec<Vec<i64>>,
    pub j_parts: Vec<Vec<usize>>,
    /// Vertex label (0-based) of each column.
    pub labels: Vec<usize>,
}

/// Vertices of `Δ_{a_k}` on `P^n`, label `j`: `|a_k| e_j - a'_k`, and `-a'_k` for `j = n`.
fn projective_vertex(n: usize, ak: &[i64], j: usize) -> Vec<i64> {
    let total: i64 = ak.iter().sum();
    (0..n).map(|i| if i == j { total - ak[i] } else { -ak[i] }).collect()
}

pub fn expected_dual_framing(n: usize, degrees: &[i64]) -> Result<ExpectedDual> {
    let sizes = default_part_sizes(n, degrees)?;
    expected_dual_framing_with_sizes(n, degrees, &sizes)
}

pub fn expected_dual_framing_with_sizes(n: usize, degrees: &[i64], sizes: &[usize]) -> Result<ExpectedDual> {
    let pf = canonical_projective_framing_with_sizes(n, degrees, sizes)?;
    let l = degrees.len();
    let mut columns = Vec::new();
    let mut labels = Vec::new();
    let mut entries: Vec<(usize, i64)> = Vec::new();
    let mut j_parts = vec![Vec::new(); l];
    for k in 0..l {
        let ak = pf.part(k);
        let block = &pf.partition[k];
        let last = *block.iter().max().unwrap();
        let m = sizes[k];
        let delta = degrees[k] - m as i64 + 1;
        for j in 0..=n {
            let vtx = projective_vertex(n, &ak, j);
            if vtx.iter().all(|&x| x == 0) {
                continue;
            }
            let b = match m {
                1 => 1,
                2 if block.contains(&j) => 1,
                2 => delta,
                _ if j == last => 1,
                _ => delta,
            };
            j_parts[k].push(columns.len());
            columns.push(primitive(&vtx)?);
            labels.push(j);
            entries.push((k, b));
        }
    }
    let mut b_k = vec![vec![0; columns.len()]; l];
    for (j, &(k, b)) in entries.iter().enumerate() {
        b_k[k][j] = b;
    }
    Ok(ExpectedDual { columns, b_k, j_parts, labels })
}

impl ExpectedDual {
    /// Permutation `p` with computed column `p[j]` carrying expected column
    /// `j` together with its part and weight.
    pub fn match_computed(&self, d: &FDualData) -> Option<Vec<usize>> {
        let m = self.columns.len();
        if d.dual_fan_matrix.m() != m || d.l() != self.b_k.len() {
            return None;
        }
        let part_of = |parts: &[Vec<usize>], j: usize| parts.iter().position(|p| p.contains(&j));
        let mut taken = vec![false; m];
        let mut perm = Vec::with_capacity(m);
        for j in 0..m {
            let k = part_of(&self.j_parts, j)?;
            let found = (0..m).find(|&i| {
                !taken[i]
                    && d.dual_fan_matrix.columns[i] == self.columns[j]
                    && part_of(&d.j_parts, i) == Some(k)
                    && (0..self.b_k.len()).all(|kk| d.b_k[kk][i] == self.b_k[kk][j])
            })?;
            taken[found] = true;
            perm.push(found);
        }
        Some(perm)
    }
}

/// For a framing of `P^n`: the permutation putting the computed dual columns
/// in the order of the parts and, within a part, of the vertex labels of
/// `Δ_{a_k}`. `None` if some nonzero vertex has no matching column in its part.
pub fn projective_label_order(pf: &PartitionedFraming, d: &FDualData) -> Option<Vec<usize>> {
    let n = pf.v.n;
    if pf.v != FanMatrix::projective(n) || d.l() != pf.l() {
        return None;
    }
    let mut taken = vec![false; d.dual_fan_matrix.m()];
    let mut perm = Vec::with_capacity(taken.len());
    for k in 0..pf.l() {
        let ak = pf.part(k);
        for j in 0..=n {
            let vtx = projective_vertex(n, &ak, j);
            if vtx.iter().all(|&x| x == 0) {
                continue;
            }
            let col = primitive(&vtx).ok()?;
            let i = d.j_parts[k]
                .iter()
                .copied()
                .find(|&i| !taken[i] && d.dual_fan_matrix.columns[i] == col)?;
            taken[i] = true;
            perm.push(i);
        }
    }
    taken.iter().all(|&t| t).then_some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_y34() {
        let pf = canonical_projective_framing(5, &[3, 4]).unwrap();
        assert_eq!(pf.a, vec![1, 1, 1, 1, 1, 2]);
        assert_eq!(pf.part(0), vec![1, 1, 1, 0, 0, 0]);
        assert_eq!(pf.part(1), vec![0, 0, 0, 1, 1, 2]);
        assert_eq!(validate(&pf).into_result().unwrap(), Kind::Ftv);
    }

    #[test]
    fn canonical_quintic_and_guard() {
        assert_eq!(canonical_projective_framing(4, &[5]).unwrap().a, vec![1; 5]);
        assert!(matches!(canonical_projective_framing(5, &[2, 3]), Err(Error::InfeasibleDegrees(_))));
        assert!(matches!(default_part_sizes(2, &[1, 1, 1]), Err(Error::InfeasibleDegrees(_))));
    }

    #[test]
    fn part_sizes_avoid_thin_parts() {
        assert_eq!(default_part_sizes(5, &[3, 4]).unwrap(), vec![3, 3]);
        assert_eq!(default_part_sizes(4, &[4, 4]).unwrap(), vec![3, 2]);
        assert_eq!(default_part_sizes(6, &[5, 5, 5]).unwrap(), vec![3, 2, 2]);
        assert_eq!(default_part_sizes(5, &[1, 6]).unwrap(), vec![1, 5]);
        // no split without a thin part: greedy is kept
        assert_eq!(default_part_sizes(4, &[2, 2, 2]).unwrap(), vec![2, 2, 1]);
        let pf = canonical_projective_framing(4, &[4, 4]).unwrap();
        assert!(is_calibrated(&pf).unwrap().calibrated);
        let pf = canonical_projective_framing(4, &[2, 2, 2]).unwrap();
        assert!(!is_calibrated(&pf).unwrap().calibrated);
    }

    #[test]
    fn weak_framings() {
        let y23 = weak_projective_framing(5, &[2, 3]).unwrap();
        assert_eq!(y23.a, vec![1, 1, 0, 1, 1, 1]);
        assert_eq!(y23.partition, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(validate(&y23).into_result().unwrap(), Kind::Wftv);
        assert_eq!(weak_projective_framing(5, &[1, 3]).unwrap().a, vec![1, 0, 0, 1, 1, 1]);
        assert_eq!(weak_projective_framing(3, &[1]).unwrap().a, vec![1, 0, 0, 0]);
    }

    #[test]
    fn zero_part_rejected() {
        let r = PartitionedFraming::new(FanMatrix::projective(2), vec![1, 0, 1], vec![vec![0, 2], vec![1]]);
        assert!(matches!(r, Err(Error::PartitionInvalid(_))));
    }

    #[test]
    fn validate_reports_each_problem() {
        let v = FanMatrix::new(2, vec![vec![2, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let pf = PartitionedFraming { v, a: vec![1, 0, 1], partition: vec![vec![1]] };
        let d = validate(&pf);
        assert!(d.issues.iter().any(|e| matches!(e, Error::InvalidFraming(_))));
        assert!(d.issues.iter().any(|e| matches!(e, Error::PartitionInvalid(_))));
        assert_eq!(d.kind, Kind::Wftv);
    }

    #[test]
    fn hypersurface_dual_framing() {
        for (n, delta) in [(3usize, 1i64), (3, 2), (4, 2)] {
            let d = n as i64 + delta;
            let pf = canonical_projective_framing(n, &[d]).unwrap();
            let dual = f_dual(&pf).unwrap();
            let exp = expected_dual_framing(n, &[d]).unwrap();
            assert!(exp.match_computed(&dual).is_some(), "n={n} δ={delta}: {dual:?}");
            let mut b = dual.b.clone();
            b.sort();
            let mut want = vec![delta; n];
            want.push(1);
            want.sort();
            assert_eq!(b, want);
        }
    }

    #[test]
    fn quintic_is_calibrated() {
        let c = is_calibrated(&canonical_projective_framing(4, &[5]).unwrap()).unwrap();
        assert!(c.calibrated);
    }

    #[test]
    fn weak_case_has_no_second_pass() {
        let pf = weak_projective_framing(5, &[2, 3]).unwrap();
        assert_eq!(f_dual(&pf).unwrap().case, Case::Wf);
        assert_eq!(f_process(&pf), Err(Error::CaseWf));
    }

    #[test]
    fn b_is_minimal() {
        let pf = canonical_projective_framing(4, &[2, 3]).unwrap();
        let d = f_dual(&pf).unwrap();
        for (k, part) in pf.partition.iter().enumerate() {
            for (j, col) in d.dual_fan_matrix.columns.iter().enumerate() {
                let ok = |b: i64| {
                    part.iter().all(|&i| col.iter().zip(&pf.v.columns[i]).map(|(x, y)| x * y).sum::<i64>() + b >= 0)
                };
                assert!(ok(d.b_k[k][j]));
                if d.b_k[k][j] > 0 {
                    assert!(!ok(d.b_k[k][j] - 1));
                }
            }
        }
    }

    #[test]
    fn permuted_round_trip() {
        let d = f_dual(&canonical_projective_framing(5, &[3, 4]).unwrap()).unwrap();
        let m = d.dual_fan_matrix.m();
        let perm: Vec<usize> = (0..m).rev().collect();
        assert_eq!(d.permuted(&perm).permuted(&perm), d);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn interior_origin_lemma(w in proptest::collection::vec(0i64..3, 8), split in 1usize..4) {
            // P^3 with two parts; check the lemma whenever its hypotheses hold
            let v = FanMatrix::projective(3);
            let a1: Vec<i64> = (0..4).map(|i| if i < split { w[i] } else { 0 }).collect();
            let a2: Vec<i64> = (0..4).map(|i| if i >= split { w[i + 4] } else { 0 }).collect();
            let p1 = HPolytope::from_framing(&v, &a1).unwrap().vertices().unwrap();
            let p2 = HPolytope::from_framing(&v, &a2).unwrap().vertices().unwrap();
            prop_assume!(p1.dim().unwrap_or(0) > 0 && p2.dim().unwrap_or(0) > 0);
            let sum = polytope::minkowski_sum(&p1, &p2).unwrap();
            prop_assume!(sum.origin_in_relint().unwrap());
            prop_assert!(conv_union(&[&p1, &p2]).unwrap().origin_in_relint().unwrap());
        }

        #[test]
        fn dual_minkowski_identity(d1 in 2i64..4, d2 in 2i64..4) {
            let pf = canonical_projective_framing(3, &[d1, d2]).unwrap();
            let d = f_dual(&pf).unwrap();
            prop_assume!(d.case == Case::F);
            let parts = d.part_polytopes().unwrap();
            let sum = polytope::minkowski_sum(&parts[0], &parts[1]).unwrap();
            let total = HPolytope::from_framing(&d.dual_fan_matrix, &d.b).unwrap().vertices().unwrap();
            prop_assert_eq!(sum.lattice_points(), total.lattice_points());
            prop_assert_eq!(sum, total);
        }
    }
}
