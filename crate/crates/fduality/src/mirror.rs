//! Defining polynomials of `Y` and of its f-mirror in Cox coordinates, and
//! the Landau–Ginzburg models read off from them.

use crate::error::{Error, Result};
use crate::f_process::{Case, FDualData};
use crate::lattice::{class_group, DivisorClass, FanMatrix};
use crate::polytope::{arith, HPolytope, VPolytope};
use serde::Serialize;

/// A polynomial with symbolic coefficients: one slot per monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxPolynomial {
    #[serde(rename = "vars")]
    pub num_vars: usize,
    /// Graded lexicographic order.
    pub monomials: Vec<Vec<i64>>,
    pub coeffs: Vec<String>,
}

impl CoxPolynomial {
    /// Sorts and deduplicates; the monomial equal to `marked` gets the `psi` slot.
    pub fn new(num_vars: usize, mut monomials: Vec<Vec<i64>>, marked: Option<&[i64]>) -> Result<Self> {
        if monomials.is_empty() {
            return Err(Error::EmptyNewton);
        }
        for e in &monomials {
            if e.len() != num_vars {
                return Err(Error::DimensionMismatch { expected: num_vars, found: e.len() });
            }
            if e.iter().any(|&x| x < 0) {
                return Err(Error::NegativeExponent(e.clone()));
            }
        }
        monomials.sort_by_key(|e| (e.iter().sum::<i64>(), e.clone()));
        monomials.dedup();
        let mut next = 0;
        let coeffs = monomials
            .iter()
            .map(|e| {
                if marked == Some(e.as_slice()) {
                    "psi".to_string()
                } else {
                    next += 1;
                    format!("c{next}")
                }
            })
            .collect();
        Ok(CoxPolynomial { num_vars, monomials, coeffs })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// The exponent set, for order-free comparisons.
    pub fn exponent_set(&self) -> std::collections::BTreeSet<Vec<i64>> {
        self.monomials.iter().cloned().collect()
    }

    /// `x^e` terms as text, 1-based variable names.
    pub fn render(&self) -> String {
        let terms: Vec<String> = self
            .monomials
            .iter()
            .zip(&self.coeffs)
            .map(|(e, c)| {
                let mono = monomial_text(e);
                if mono.is_empty() { c.clone() } else { format!("{c}*{mono}") }
            })
            .collect();
        terms.join(" + ")
    }
}

fn monomial_text(e: &[i64]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| if x == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, x) })
        .collect();
    parts.join("*")
}

/// `lambda^T p + w` for every lattice point `p` of `poly`.
fn exponents(lambda: &FanMatrix, poly: &VPolytope, w: &[i64]) -> Vec<Vec<i64>> {
    poly.lattice_points()
        .iter()
        .map(|p| {
            lambda
                .columns
                .iter()
                .zip(w)
                .map(|(col, wi)| col.iter().zip(p).map(|(x, y)| x * y).sum::<i64>() + wi)
                .collect()
        })
        .collect()
}

fn newton(lambda: &FanMatrix, w: &[i64]) -> Result<VPolytope> {
    let poly = HPolytope::from_framing(lambda, w)?.vertices()?;
    if poly.is_empty() {
        return Err(Error::EmptyNewton);
    }
    Ok(poly)
}

/// Generic section of `D_{a_k}`: one monomial per lattice point of `Δ_{a_k}`.
pub fn primal_polynomial(v: &FanMatrix, ak: &[i64]) -> Result<CoxPolynomial> {
    if ak.iter().any(|&x| x < 0) {
        return Err(Error::InvalidFraming(format!("{ak:?} is not effective")));
    }
    let poly = newton(v, ak)?;
    CoxPolynomial::new(v.m(), exponents(v, &poly, ak), None)
}

/// Mirror polynomial of part `k` in case (f). Part 0 carries the `psi` slot
/// on `x^{b_k}`.
pub fn mirror_polynomial_f(d: &FDualData, k: usize) -> Result<CoxPolynomial> {
    if d.case == Case::Wf {
        return Err(Error::CaseWf);
    }
    let bk = &d.b_k[k];
    let poly = newton(&d.dual_fan_matrix, bk)?;
    let marked = (k == 0).then_some(bk.as_slice());
    CoxPolynomial::new(d.dual_fan_matrix.m(), exponents(&d.dual_fan_matrix, &poly, bk), marked)
}

/// Mirror polynomial of part `k` in case (wf): the Newton polytope is
/// `conv(V_{I_k}, 0)`.
pub fn mirror_polynomial_wf(v: &FanMatrix, ik: &[usize], d: &FDualData, k: usize) -> Result<CoxPolynomial> {
    let mut pts: Vec<Vec<i64>> = ik.iter().map(|&i| v.columns[i].clone()).collect();
    pts.push(vec![0; v.n]);
    let nabla = VPolytope::from_integer_points(v.n, &pts)?;
    let bk = &d.b_k[k];
    let marked = (k == 0).then_some(bk.as_slice());
    CoxPolynomial::new(d.dual_fan_matrix.m(), exponents(&d.dual_fan_matrix, &nabla, bk), marked)
}

/// All mirror polynomials, dispatching on the case.
pub fn mirror_polynomials(v: &FanMatrix, partition: &[Vec<usize>], d: &FDualData) -> Result<Vec<CoxPolynomial>> {
    (0..d.l())
        .map(|k| match d.case {
            Case::F => mirror_polynomial_f(d, k),
            Case::Wf => mirror_polynomial_wf(v, &partition[k], d, k),
        })
        .collect()
}

/// Common class of the monomials of `f` in `Cl` of the toric variety of `lambda`.
pub fn check_homogeneous(f: &CoxPolynomial, lambda: &FanMatrix) -> Result<DivisorClass> {
    if f.num_vars != lambda.m() {
        return Err(Error::DimensionMismatch { expected: lambda.m(), found: f.num_vars });
    }
    let cl = class_group(lambda)?;
    let first = &f.monomials[0];
    for e in &f.monomials[1..] {
        let diff: Vec<i64> = e.iter().zip(first).map(|(x, y)| x - y).collect();
        if !cl.is_principal(&diff) {
            return Err(Error::NotHomogeneous(first.clone(), e.clone()));
        }
    }
    Ok(cl.class_of(first))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentTerm {
    pub exponent: Vec<i64>,
    pub coeff: String,
}

/// Laurent components `f_k / x^{b_k}` and their Givental reparametrization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LGModel {
    /// `u_{jk}`, grouped by part.
    #[serde(rename = "laurent")]
    pub components: Vec<Vec<LaurentTerm>>,
    /// `q_k = Π_j u_{jk}` after rescaling the generic coefficients to 1.
    pub q: Vec<LaurentTerm>,
    #[serde(rename = "F_terms")]
    pub f_terms: usize,
}

impl LGModel {
    /// Exponent and coefficient of `Π_k q_k`.
    pub fn q_product(&self) -> LaurentTerm {
        let n = self.q.first().map_or(0, |t| t.exponent.len());
        let mut exponent = vec![0; n];
        let mut coeffs = Vec::new();
        for t in &self.q {
            exponent.iter_mut().zip(&t.exponent).for_each(|(a, b)| *a += b);
            if t.coeff != "1" {
                coeffs.push(t.coeff.clone());
            }
        }
        let coeff = if coeffs.is_empty() { "1".to_string() } else { coeffs.join("*") };
        LaurentTerm { exponent, coeff }
    }
}

/// The zero Laurent exponent is `psi` in the first part and `1` elsewhere;
/// other coefficients are rescaled to 1.
pub fn lg_model(polys: &[CoxPolynomial], b_k: &[Vec<i64>]) -> Result<LGModel> {
    if polys.len() != b_k.len() {
        return Err(Error::DimensionMismatch { expected: polys.len(), found: b_k.len() });
    }
    let mut components = Vec::with_capacity(polys.len());
    let mut q = Vec::with_capacity(polys.len());
    for (k, (f, bk)) in polys.iter().zip(b_k).enumerate() {
        if bk.len() != f.num_vars {
            return Err(Error::DimensionMismatch { expected: f.num_vars, found: bk.len() });
        }
        let mut terms = Vec::with_capacity(f.len());
        let mut qk = vec![0; f.num_vars];
        let mut qc = "1".to_string();
        for e in &f.monomials {
            let exponent: Vec<i64> = e.iter().zip(bk).map(|(x, b)| x - b).collect();
            let coeff = if exponent.iter().all(|&x| x == 0) {
                if k == 0 { "psi" } else { "1" }
            } else {
                "1"
            }
            .to_string();
            if coeff == "psi" {
                qc = coeff.clone();
            }
            qk.iter_mut().zip(&exponent).for_each(|(a, b)| *a += b);
            terms.push(LaurentTerm { exponent, coeff });
        }
        components.push(terms);
        q.push(LaurentTerm { exponent: qk, coeff: qc });
    }
    let f_terms = components.iter().map(Vec::len).sum();
    Ok(LGModel { components, q, f_terms })
}

/// Coefficients left after rescaling variables and equations:
/// `N - rank` of the characters `(exponent, e_k)` of all `N` monomials.
pub fn modulus_count(polys: &[CoxPolynomial]) -> Result<usize> {
    let l = polys.len();
    let rows: Vec<Vec<i128>> = polys
        .iter()
        .enumerate()
        .flat_map(|(k, f)| {
            f.monomials.iter().map(move |e| {
                let mut r: Vec<i128> = e.iter().map(|&x| x as i128).collect();
                r.extend((0..l).map(|kk| i128::from(kk == k)));
                r
            })
        })
        .collect();
    Ok(rows.len() - arith::rank(&rows)?)
}
