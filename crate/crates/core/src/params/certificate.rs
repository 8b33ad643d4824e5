//! Repair of approximate solver output into exactly feasible certificates,
//! and independent feasibility checks for them.

use crate::graph::Graph;
use crate::linalg::SymMatrix;
use crate::sdp::ParamKind;
use crate::{Error, Result};

/// Constraint violations of a certificate; all zero for an exact one.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CertificateResiduals {
    /// Primal: `max |M_ii − (λ − 1)|`. Dual: `|tr P − 1|`.
    pub normalization: f64,
    /// Violation of the edge and non-edge entry conditions.
    pub support: f64,
    /// `max(0, −λ_min)`.
    pub cone: f64,
}

impl CertificateResiduals {
    pub fn max(&self) -> f64 {
        self.normalization.max(self.support).max(self.cone)
    }
}

fn check_order(g: &Graph, m: &SymMatrix) -> Result<()> {
    if m.order() != g.order() {
        return Err(Error::Dimension {
            expected: g.order(),
            found: m.order(),
        });
    }
    Ok(())
}

/// Shift that makes `m + sI` PSD, padded by a rounding margin.
fn psd_shift(m: &SymMatrix) -> Result<f64> {
    let least = m.min_eigenvalue()?;
    if least >= 0.0 {
        return Ok(0.0);
    }
    Ok(-least + 1e-14 * (1.0 + m.max_abs()))
}

/// Turns an approximate primal matrix `M` into a feasible one and returns it
/// with its objective λ.
///
/// Edge entries are set to −1 (ϑ̄) or clipped to at most −1 (χ_vec), every
/// diagonal entry is raised to the largest one, and the diagonal is shifted
/// until `M ⪰ 0`. Each step keeps the previous conditions.
pub fn repair_primal(g: &Graph, kind: ParamKind, m: &SymMatrix) -> Result<(SymMatrix, f64)> {
    check_order(g, m)?;
    let n = g.order();
    let mut out = m.clone();
    for (u, v) in g.edges() {
        let x = match kind {
            ParamKind::ThetaBar => -1.0,
            ParamKind::ChiVec => m.get(u, v).min(-1.0),
        };
        out.set(u, v, x);
    }
    let top = out.diagonal().into_iter().fold(0.0, f64::max);
    for i in 0..n {
        out.set(i, i, top);
    }
    out.shift_diagonal(psd_shift(&out)?);
    let lambda = 1.0 + out.get(0, 0);
    Ok((out, lambda))
}

/// Turns an approximate dual matrix `P` into a feasible one.
///
/// Non-edges are zeroed, χ_vec edges clipped at zero, the diagonal shifted
/// until `P ⪰ 0` and the result scaled to unit trace. A candidate whose
/// shifted trace is not positive is replaced by `I/n`.
pub fn repair_dual(g: &Graph, kind: ParamKind, p: &SymMatrix) -> Result<SymMatrix> {
    check_order(g, p)?;
    let n = g.order();
    let mut out = p.clone();
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                out.set(u, v, 0.0);
            } else if kind == ParamKind::ChiVec {
                out.set(u, v, p.get(u, v).max(0.0));
            }
        }
    }
    out.shift_diagonal(psd_shift(&out)?);
    let t = out.trace();
    if !(t > 0.0 && t.is_finite()) {
        return Ok(SymMatrix::identity(n).scale(1.0 / n as f64));
    }
    Ok(out.scale(1.0 / t))
}

/// Residuals of `M` as a primal certificate for the value `lambda`.
pub fn check_primal(g: &Graph, kind: ParamKind, m: &SymMatrix, lambda: f64) -> Result<CertificateResiduals> {
    check_order(g, m)?;
    let normalization = (0..g.order()).fold(0.0_f64, |acc, i| acc.max((m.get(i, i) - (lambda - 1.0)).abs()));
    let support = g.edges().fold(0.0_f64, |acc, (u, v)| {
        let x = m.get(u, v) + 1.0;
        acc.max(if kind.is_strict() { x.abs() } else { x.max(0.0) })
    });
    let cone = (-m.min_eigenvalue()?).max(0.0);
    Ok(CertificateResiduals {
        normalization,
        support,
        cone,
    })
}

/// Residuals of `P` as a dual certificate; its value is `P.msum()`.
pub fn check_dual(g: &Graph, kind: ParamKind, p: &SymMatrix) -> Result<CertificateResiduals> {
    check_order(g, p)?;
    let n = g.order();
    let mut support: f64 = 0.0;
    for u in 0..n {
        for v in u + 1..n {
            let x = p.get(u, v);
            if !g.has_edge(u, v) {
                support = support.max(x.abs());
            } else if !kind.is_strict() {
                support = support.max(-x);
            }
        }
    }
    let cone = (-p.min_eigenvalue()?).max(0.0);
    Ok(CertificateResiduals {
        normalization: (p.trace() - 1.0).abs(),
        support,
        cone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_sym(rng: &mut ChaCha8Rng, n: usize) -> SymMatrix {
        SymMatrix::from_fn(n, |_, _| rng.gen_range(-2.0..2.0))
    }

    #[test]
    fn repairs_of_arbitrary_matrices_are_feasible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let graphs = [
            generate(Family::Cycle, 5).unwrap(),
            generate(Family::Petersen, 0).unwrap(),
            generate(Family::Path, 4).unwrap(),
        ];
        for g in &graphs {
            for kind in [ParamKind::ThetaBar, ParamKind::ChiVec] {
                for _ in 0..5 {
                    let (m, lambda) = repair_primal(g, kind, &random_sym(&mut rng, g.order())).unwrap();
                    assert!(check_primal(g, kind, &m, lambda).unwrap().max() <= 1e-12);
                    let p = repair_dual(g, kind, &random_sym(&mut rng, g.order())).unwrap();
                    assert!(check_dual(g, kind, &p).unwrap().max() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn weak_duality_between_repaired_certificates() {
        // ⟨J, P⟩ ≤ λ for any feasible pair.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = generate(Family::Cycle, 7).unwrap();
        for kind in [ParamKind::ThetaBar, ParamKind::ChiVec] {
            for _ in 0..20 {
                let (_, lambda) = repair_primal(&g, kind, &random_sym(&mut rng, 7)).unwrap();
                let p = repair_dual(&g, kind, &random_sym(&mut rng, 7)).unwrap();
                assert!(p.msum() <= lambda + 1e-9, "{} > {lambda}", p.msum());
            }
        }
    }

    #[test]
    fn checks_detect_violations() {
        let k2 = generate(Family::Complete, 2).unwrap();
        let m = SymMatrix::from_fn(2, |i, j| if i == j { 1.0 } else { -0.5 });
        let r = check_primal(&k2, ParamKind::ThetaBar, &m, 2.0).unwrap();
        assert!((r.support - 0.5).abs() <= 1e-15);
        // −2 satisfies the χ_vec inequality but not the ϑ̄ equality.
        let m = SymMatrix::from_fn(2, |i, j| if i == j { 2.0 } else { -2.0 });
        assert_eq!(check_primal(&k2, ParamKind::ChiVec, &m, 3.0).unwrap().support, 0.0);
        assert_eq!(check_primal(&k2, ParamKind::ThetaBar, &m, 3.0).unwrap().support, 1.0);

        let p = SymMatrix::from_fn(2, |i, j| if i == j { 0.5 } else { -0.5 });
        assert_eq!(check_dual(&k2, ParamKind::ThetaBar, &p).unwrap().max(), 0.0);
        assert_eq!(check_dual(&k2, ParamKind::ChiVec, &p).unwrap().support, 0.5);
        assert!(check_dual(&k2, ParamKind::ChiVec, &SymMatrix::identity(3)).is_err());
    }
}
