use alloc::vec;
use alloc::vec::Vec;

use super::{dot, gemm, gemm_nt, Matrix, SymMatrix};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;
/// Off-diagonal Frobenius norm, relative to ‖M‖_F, at which Jacobi stops.
const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Cyclic Jacobi on the row-major symmetric `a` (destroyed: its diagonal
/// becomes the eigenvalues). Rotations are accumulated into the rows of `vt`,
/// which must hold an orthogonal matrix on entry.
fn jacobi(a: &mut [f64], vt: &mut [f64], n: usize) -> Result<()> {
    let frob = libm::sqrt(dot(a, a));
    if frob == 0.0 || n < 2 {
        return Ok(());
    }
    let target = OFF_DIAGONAL_TOL * frob;
    for sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        let off = libm::sqrt(2.0 * off);
        if off <= target {
            return Ok(());
        }
        // Skip small rotations during the first sweeps of a cold start.
        let thresh = if sweep < 3 { 0.2 * off / (n * n) as f64 } else { 0.0 };
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                if apq.abs() <= thresh {
                    continue;
                }
                rotate(a, vt, n, p, q);
            }
        }
    }
    let mut off = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            off += 2.0 * a[p * n + q] * a[p * n + q];
        }
    }
    Err(Error::Numeric {
        what: "Jacobi eigensolver",
        residual: libm::sqrt(off) / frob,
    })
}

#[inline]
fn rotate(a: &mut [f64], vt: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = 0.5 * (aqq - app) / apq;
    let mut t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
    if theta < 0.0 {
        t = -t;
    }
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    let tau = s / (1.0 + c);

    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[p * n + r];
        let arq = a[q * n + r];
        let np = arp - s * (arq + tau * arp);
        let nq = arq + s * (arp - tau * arq);
        a[p * n + r] = np;
        a[r * n + p] = np;
        a[q * n + r] = nq;
        a[r * n + q] = nq;
    }
    let (lo, hi) = vt.split_at_mut(q * n);
    let vp = &mut lo[p * n..(p + 1) * n];
    let vq = &mut hi[..n];
    for (x, y) in vp.iter_mut().zip(vq.iter_mut()) {
        let (g, h) = (*x, *y);
        *x = g - s * (h + tau * g);
        *y = h + s * (g - tau * h);
    }
}

/// Reusable eigendecomposition state.
///
/// After a successful call the rows of [`EigenWorkspace::vectors`] hold
/// orthonormal eigenvectors aligned with the returned eigenvalues. Calling
/// [`EigenWorkspace::decompose_warm`] on a nearby matrix first rotates it into
/// the previous eigenbasis, so Jacobi only has to clean up a nearly diagonal
/// matrix.
#[derive(Debug, Clone)]
pub struct EigenWorkspace {
    n: usize,
    vt: Vec<f64>,
    scratch: Vec<f64>,
    rot: Vec<f64>,
    warm: bool,
}

impl EigenWorkspace {
    pub fn new(n: usize) -> Self {
        EigenWorkspace {
            n,
            vt: identity(n),
            scratch: vec![0.0; n * n],
            rot: vec![0.0; n * n],
            warm: false,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Row `i` is the eigenvector of the `i`-th returned eigenvalue.
    pub fn vectors(&self) -> &[f64] {
        &self.vt
    }

    /// Cold-start decomposition. Eigenvalues are returned unsorted.
    pub fn decompose(&mut self, m: &SymMatrix) -> Result<Vec<f64>> {
        self.check_order(m.order())?;
        let n = self.n;
        let mut a = m.as_slice().to_vec();
        self.vt = identity(n);
        jacobi(&mut a, &mut self.vt, n)?;
        self.warm = true;
        Ok((0..n).map(|i| a[i * n + i]).collect())
    }

    /// Decomposition warm-started from the previous eigenbasis.
    pub fn decompose_warm(&mut self, m: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        if m.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                found: m.len(),
            });
        }
        if !self.warm {
            let mut a = m.to_vec();
            self.vt = identity(n);
            jacobi(&mut a, &mut self.vt, n)?;
            self.warm = true;
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }
        // B = Vᵀ M V with V's columns stored as the rows of `vt`.
        gemm(&self.vt, m, &mut self.scratch, n, n, n);
        let mut b = vec![0.0; n * n];
        gemm_nt(&self.scratch, &self.vt, &mut b, n, n, n);
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (b[i * n + j] + b[j * n + i]);
                b[i * n + j] = avg;
                b[j * n + i] = avg;
            }
        }
        self.rot = identity(n);
        if let Err(e) = jacobi(&mut b, &mut self.rot, n) {
            self.warm = false;
            return Err(e);
        }
        gemm(&self.rot, &self.vt, &mut self.scratch, n, n, n);
        core::mem::swap(&mut self.vt, &mut self.scratch);
        Ok((0..n).map(|i| b[i * n + i]).collect())
    }

    /// Writes `Σ_{λ>0} λ v vᵀ` (the PSD-cone projection of `m`) into `out`
    /// using a warm-started decomposition.
    pub fn psd_part(&mut self, m: &[f64], out: &mut [f64]) -> Result<()> {
        let vals = self.decompose_warm(m)?;
        let n = self.n;
        let positive = vals.iter().filter(|&&l| l > 0.0).count();
        // Sum over whichever side has fewer terms.
        let (keep_positive, base): (bool, &[f64]) = if 2 * positive <= n { (true, &[]) } else { (false, m) };
        if keep_positive {
            out.iter_mut().for_each(|x| *x = 0.0);
        } else {
            out.copy_from_slice(base);
        }
        for (k, &lam) in vals.iter().enumerate() {
            let take = if keep_positive { lam > 0.0 } else { lam < 0.0 };
            if !take {
                continue;
            }
            let w = if keep_positive { lam } else { -lam };
            let v = &self.vt[k * n..(k + 1) * n];
            for i in 0..n {
                let wi = w * v[i];
                if wi == 0.0 {
                    continue;
                }
                let row = &mut out[i * n..(i + 1) * n];
                for (o, vj) in row.iter_mut().zip(v) {
                    *o += wi * vj;
                }
            }
        }
        // Restore exact symmetry lost to rounding.
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (out[i * n + j] + out[j * n + i]);
                out[i * n + j] = avg;
                out[j * n + i] = avg;
            }
        }
        Ok(())
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if n != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: n,
            });
        }
        Ok(())
    }
}

fn identity(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    v
}

/// One eigenspace: a cluster of numerically equal eigenvalues and the
/// orthogonal projector onto its span.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpace {
    pub value: f64,
    pub multiplicity: usize,
    pub projector: SymMatrix,
}

/// Eigendecomposition of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Sorted descending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, aligned with `values`.
    pub vectors: Matrix,
    /// Eigenspaces in descending order of eigenvalue.
    pub spaces: Vec<EigenSpace>,
}

impl Spectrum {
    pub fn largest(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn least(&self) -> Option<f64> {
        self.values.last().copied()
    }

    pub fn least_space(&self) -> Option<&EigenSpace> {
        self.spaces.last()
    }

    /// Σ λ_i E_i.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.vectors.rows();
        let mut out = SymMatrix::zeros(n);
        for s in &self.spaces {
            out = out.add(&s.projector.scale(s.value));
        }
        out
    }
}

/// Full eigendecomposition. Eigenvalues whose consecutive gaps are at most
/// `tol·(1 + spectral range)` are grouped into one eigenspace.
pub fn eig_sym(m: &SymMatrix, tol: f64) -> Result<Spectrum> {
    let n = m.order();
    let mut ws = EigenWorkspace::new(n);
    let vals = ws.decompose(m)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));
    let values: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
    let vt = ws.vectors();
    let vectors = Matrix::from_fn(n, n, |r, c| vt[order[c] * n + r]);

    let range = match (values.first(), values.last()) {
        (Some(hi), Some(lo)) => hi - lo,
        _ => 0.0,
    };
    let gap = tol * (1.0 + range);
    let mut spaces = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end - 1] - values[end] <= gap {
            end += 1;
        }
        let members = &order[start..end];
        let projector = SymMatrix::from_fn(n, |i, j| members.iter().map(|&k| vt[k * n + i] * vt[k * n + j]).sum());
        let value = values[start..end].iter().sum::<f64>() / (end - start) as f64;
        spaces.push(EigenSpace {
            value,
            multiplicity: end - start,
            projector,
        });
        start = end;
    }
    Ok(Spectrum {
        values,
        vectors,
        spaces,
    })
}

/// Vectors `v_i` with `⟨v_i, v_j⟩ ≈ M_ij`, one coordinate per eigenvalue
/// above `tol`. Eigenvalues in `[-tol, tol]` are treated as zero.
pub fn gram_factor(m: &SymMatrix, tol: f64) -> Result<Vec<Vec<f64>>> {
    let n = m.order();
    let mut ws = EigenWorkspace::new(n);
    let vals = ws.decompose(m)?;
    let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -tol {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    let vt = ws.vectors();
    let mut kept: Vec<usize> = (0..n).filter(|&k| vals[k] > tol).collect();
    kept.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));
    Ok((0..n)
        .map(|i| kept.iter().map(|&k| libm::sqrt(vals[k]) * vt[k * n + i]).collect())
        .collect())
}

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues clipped to 0.
pub fn project_psd(m: &SymMatrix) -> Result<SymMatrix> {
    let n = m.order();
    let mut ws = EigenWorkspace::new(n);
    let mut out = vec![0.0; n * n];
    ws.psd_part(m.as_slice(), &mut out)?;
    Ok(SymMatrix::from_raw(n, out))
}
