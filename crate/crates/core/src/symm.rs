//! Elementary symmetric functions of a real spectrum, the Garding cone
//! Gamma_k, and the inequalities (MacLaurin, concavity) the solvers rely on.

use crate::error::{Error, Result};

/// Real eigenvalue vector of a complex Hessian.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Validation("spectrum must have length >= 1".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation("spectrum entries must be finite".into()));
        }
        Ok(Spectrum { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl From<&[f64]> for Spectrum {
    fn from(v: &[f64]) -> Self {
        Spectrum { values: v.to_vec() }
    }
}

/// Binomial coefficient C(n, k) as f64; exact for the small n used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0_f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// S_k(lambda) by the stable DP recurrence over prefixes, O(n k).
///
/// S_0 = 1 by convention.
pub fn elem_sym(lambda: &Spectrum, k: isize) -> Result<f64> {
    let n = lambda.len() as isize;
    if k < 0 || k > n {
        return Err(Error::Domain(format!(
            "elem_sym order k={k} out of range 0..={n}"
        )));
    }
    Ok(elem_sym_raw(lambda.values(), k as usize))
}

pub(crate) fn elem_sym_raw(values: &[f64], k: usize) -> f64 {
    // e[j] holds S_j of the prefix processed so far.
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for &x in values {
        for j in (1..=k.min(values.len())).rev() {
            e[j] += x * e[j - 1];
        }
    }
    e[k]
}

/// S_k of lambda with entry `i` removed.
pub fn elem_sym_reduced(lambda: &Spectrum, k: isize, i: usize) -> Result<f64> {
    let n = lambda.len();
    if i >= n {
        return Err(Error::Domain(format!("reduced index {i} out of range 0..{n}")));
    }
    if k < 0 || k as usize > n - 1 {
        return Err(Error::Domain(format!(
            "elem_sym_reduced order k={k} out of range 0..={}",
            n - 1
        )));
    }
    let mut rest: Vec<f64> = Vec::with_capacity(n - 1);
    rest.extend_from_slice(&lambda.values()[..i]);
    rest.extend_from_slice(&lambda.values()[i + 1..]);
    Ok(elem_sym_raw(&rest, k as usize))
}

/// Strict membership lambda in Gamma_k: S_i(lambda) > 0 for 1 <= i <= k.
pub fn in_gamma_k(lambda: &Spectrum, k: usize, strict: bool) -> Result<bool> {
    in_gamma_k_tol(lambda, k, if strict { f64::NEG_INFINITY } else { 0.0 })
}

/// Closure-mode membership with tolerance: S_i(lambda) >= -tol for 1 <= i <= k.
///
/// `tol = NEG_INFINITY` is the strict test S_i > 0 (used via [`in_gamma_k`]).
pub fn in_gamma_k_tol(lambda: &Spectrum, k: usize, tol: f64) -> Result<bool> {
    let n = lambda.len();
    if k < 1 || k > n {
        return Err(Error::Domain(format!("gamma_k order k={k} out of range 1..={n}")));
    }
    // One DP sweep yields all S_1..S_k.
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for &x in lambda.values() {
        for j in (1..=k).rev() {
            e[j] += x * e[j - 1];
        }
    }
    let ok = if tol == f64::NEG_INFINITY {
        e[1..=k].iter().all(|&s| s > 0.0)
    } else {
        e[1..=k].iter().all(|&s| s >= -tol)
    };
    Ok(ok)
}

/// MacLaurin gap (S_l/C_n^l)^{1/l} - (S_k/C_n^k)^{1/k}; nonnegative on Gamma_k.
pub fn maclaurin_gap(lambda: &Spectrum, k: usize, l: usize) -> Result<f64> {
    let n = lambda.len();
    if l < 1 || l > k || k > n {
        return Err(Error::Domain(format!("maclaurin orders l={l}, k={k} invalid for n={n}")));
    }
    if !in_gamma_k(lambda, k, true)? {
        return Err(Error::Precondition("maclaurin_gap requires lambda in Gamma_k".into()));
    }
    let sl = elem_sym_raw(lambda.values(), l);
    let sk = elem_sym_raw(lambda.values(), k);
    let ml = (sl / binomial(n, l)).powf(1.0 / l as f64);
    let mk = (sk / binomial(n, k)).powf(1.0 / k as f64);
    Ok(ml - mk)
}

/// Concavity probe of S_k^{1/k} along the segment t*l1 + (1-t)*l2 in Gamma_k:
/// returns S_k^{1/k}(mix) - t S_k^{1/k}(l1) - (1-t) S_k^{1/k}(l2), which is
/// nonnegative up to rounding.
pub fn concavity_probe(l1: &Spectrum, l2: &Spectrum, k: usize, t: f64) -> Result<f64> {
    if l1.len() != l2.len() {
        return Err(Error::Validation("spectra must have equal length".into()));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t={t} outside [0,1]")));
    }
    if !in_gamma_k(l1, k, true)? || !in_gamma_k(l2, k, true)? {
        return Err(Error::Precondition("concavity_probe requires both spectra in Gamma_k".into()));
    }
    let mix: Vec<f64> = l1
        .values()
        .iter()
        .zip(l2.values())
        .map(|(a, b)| t * a + (1.0 - t) * b)
        .collect();
    let p = 1.0 / k as f64;
    let f = |v: &[f64]| elem_sym_raw(v, k).powf(p);
    Ok(f(&mix) - t * f(l1.values()) - (1.0 - t) * f(l2.values()))
}
