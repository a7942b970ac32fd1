//! Hermitian matrices: S_k via principal minors (the production path),
//! its matrix gradient, and eigenvalues by cyclic Jacobi rotations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symm::Spectrum;

const HERMITIAN_TOL: f64 = 1e-12;

/// Dense n x n complex Hermitian matrix (a complex Hessian at a point).
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    n: usize,
    entries: Vec<Complex64>, // row major
}

impl HermitianMatrix {
    /// Validates conjugate symmetry to 1e-12 absolute, then symmetrizes so the
    /// stored matrix is Hermitian to working precision.
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Validation(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            for j in i..n {
                let d = entries[i * n + j] - entries[j * n + i].conj();
                if d.norm() > HERMITIAN_TOL {
                    return Err(Error::Validation(format!(
                        "matrix not Hermitian: |A[{i}][{j}] - conj(A[{j}][{i}])| = {:.3e}",
                        d.norm()
                    )));
                }
            }
        }
        let mut m = HermitianMatrix { n, entries };
        for i in 0..n {
            for j in i..n {
                let avg = 0.5 * (m.entries[i * n + j] + m.entries[j * n + i].conj());
                m.entries[i * n + j] = avg;
                m.entries[j * n + i] = avg.conj();
            }
            let d = m.entries[i * n + i];
            m.entries[i * n + i] = Complex64::new(d.re, 0.0);
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::Validation("ragged rows".into()));
            }
            entries.extend_from_slice(r);
        }
        Self::new(n, entries)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &v) in values.iter().enumerate() {
            entries[i * n + i] = Complex64::new(v, 0.0);
        }
        HermitianMatrix { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Quadratic form xi^* A xi for a unit direction xi (real output).
    pub fn quad_form(&self, xi: &[Complex64]) -> f64 {
        let n = self.n;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += xi[i].conj() * self.entries[i * n + j] * xi[j];
            }
        }
        acc.re
    }
}

/// Determinant of a small complex matrix by LU with partial pivoting.
fn det_complex(m: &[Complex64], n: usize) -> Complex64 {
    let mut a = m.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col * n + col].norm();
        for r in col + 1..n {
            let v = a[r * n + col].norm();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            for c in 0..n {
                a.swap(col * n + c, piv * n + c);
            }
            det = -det;
        }
        let d = a[col * n + col];
        det *= d;
        for r in col + 1..n {
            let factor = a[r * n + col] / d;
            for c in col..n {
                let v = a[col * n + c];
                a[r * n + c] -= factor * v;
            }
        }
    }
    det
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// S_k(A) as the sum of k x k principal minors (real for Hermitian A).
pub fn sigma_k_hermitian(a: &HermitianMatrix, k: usize) -> Result<f64> {
    let n = a.dim();
    if k < 1 || k > n {
        return Err(Error::Domain(format!("sigma_k order k={k} out of range 1..={n}")));
    }
    let mut total = 0.0;
    for s in subsets(n, k) {
        let mut sub = Vec::with_capacity(k * k);
        for &i in &s {
            for &j in &s {
                sub.push(a.get(i, j));
            }
        }
        total += det_complex(&sub, k).re;
    }
    Ok(total)
}

/// Matrix of partials dS_k/dA_{ij}; Hermitian, and on diagonal matrices its
/// diagonal reproduces S_{k-1}(lambda|i).
pub fn sigma_k_gradient(a: &HermitianMatrix, k: usize) -> Result<HermitianMatrix> {
    let n = a.dim();
    if k < 1 || k > n {
        return Err(Error::Domain(format!("sigma_k order k={k} out of range 1..={n}")));
    }
    let mut grad = vec![Complex64::new(0.0, 0.0); n * n];
    for s in subsets(n, k) {
        // d det(A_S)/dA_{ij} = adj(A_S)_{ji} for i, j in S.
        for (pi, &i) in s.iter().enumerate() {
            for (pj, &j) in s.iter().enumerate() {
                // adj(A_S)_{pj,pi} = (-1)^{pi+pj} det(minor with row pi, col pj removed)
                let mut minor = Vec::with_capacity((k - 1) * (k - 1));
                for (ri, &r) in s.iter().enumerate() {
                    if ri == pi {
                        continue;
                    }
                    for (ci, &c) in s.iter().enumerate() {
                        if ci == pj {
                            continue;
                        }
                        minor.push(a.get(r, c));
                    }
                }
                let cof = if (pi + pj) % 2 == 0 { 1.0 } else { -1.0 };
                let d = if k == 1 {
                    Complex64::new(1.0, 0.0)
                } else {
                    det_complex(&minor, k - 1)
                };
                grad[i * n + j] += cof * d;
            }
        }
    }
    HermitianMatrix::new(n, grad)
}

/// Eigenvalues by cyclic Jacobi with complex rotations; ascending order.
///
/// Intended for the tiny matrices of this crate (n <= 4); converges for any n.
pub fn eigenvalues(a: &HermitianMatrix) -> Result<Spectrum> {
    let n = a.dim();
    let mut m = a.entries().to_vec();
    let off = |m: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let scale = a.norm().max(1.0);
    for _sweep in 0..60 {
        if off(&m) <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.norm() <= 1e-18 * scale {
                    continue;
                }
                let app = m[p * n + p].re;
                let aqq = m[q * n + q].re;
                let phase = apq / apq.norm(); // e^{i phi}
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Columns: col_p' = c col_p - s conj(phase) col_q ; col_q' = s phase col_p + c col_q
                for r in 0..n {
                    let vrp = m[r * n + p];
                    let vrq = m[r * n + q];
                    m[r * n + p] = c * vrp - s * phase.conj() * vrq;
                    m[r * n + q] = s * phase * vrp + c * vrq;
                }
                for col in 0..n {
                    let vpc = m[p * n + col];
                    let vqc = m[q * n + col];
                    m[p * n + col] = c * vpc - s * phase * vqc;
                    m[q * n + col] = s * phase.conj() * vpc + c * vqc;
                }
                m[p * n + q] = Complex64::new(0.0, 0.0);
                m[q * n + p] = Complex64::new(0.0, 0.0);
            }
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| m[i * n + i].re).collect();
    vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Spectrum::new(vals)
}
