//! Over-relaxed ADMM on the splitting `X ∈ S` (affine and entry
//! constraints), `Z ⪰ 0`, `X = Z`.
//!
//! Each iteration projects onto `S` in closed form, projects onto the PSD
//! cone through a warm-started Jacobi decomposition and updates the scaled
//! multiplier `U`. By Moreau's decomposition `U` is always negative
//! semidefinite, so `W = −ρU` is a PSD dual slack at every iterate and the
//! dual objective can be read off without another eigendecomposition.

use alloc::vec;
use alloc::vec::Vec;

use super::{EntryConstraint, Residuals, SdpProblem, SdpSolution, Sense, SolverConfig, Status};
use crate::linalg::{dot, EigenWorkspace, SymMatrix};
use crate::{Error, Result};

const CHECK_EVERY: usize = 5;
const BALANCE_EVERY: usize = 25;
const BALANCE_RATIO: f64 = 10.0;
const PENALTY_STEP: f64 = 2.0;
const PENALTY_RANGE: (f64, f64) = (1e-6, 1e6);
/// Iterations without halving the best primal residual before the problem
/// is reported as suspected infeasible.
const STALL_WINDOW: usize = 5_000;
const STALL_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy)]
enum Bound {
    Fixed(f64),
    AtMost(f64),
    NonNegative,
}

/// Precomputed projection data for the set S.
struct AffineBox {
    n: usize,
    /// Per full-storage entry, its entry constraint if any.
    bound: Vec<Option<Bound>>,
    /// Equality rows: merged upper-triangle terms `(i, j, coef)`.
    rows: Vec<Vec<(usize, usize, f64)>>,
    rhs: Vec<f64>,
    /// Lower-triangular Cholesky factor of the Gram matrix ⟨A_k, A_l⟩.
    chol: Vec<f64>,
}

impl AffineBox {
    fn new(p: &SdpProblem) -> Result<Self> {
        let n = p.order;
        let mut bound = vec![None; n * n];
        for b in &p.bounds {
            let c = match b.constraint {
                EntryConstraint::Fixed(v) => Bound::Fixed(v),
                EntryConstraint::AtMost(v) => Bound::AtMost(v),
                EntryConstraint::NonNegative => Bound::NonNegative,
            };
            bound[b.row * n + b.col] = Some(c);
            bound[b.col * n + b.row] = Some(c);
        }
        let mut rows = Vec::with_capacity(p.equalities.len());
        for c in &p.equalities {
            let mut terms: Vec<(usize, usize, f64)> = Vec::with_capacity(c.terms.len());
            for &(r, s, coef) in &c.terms {
                let (i, j) = (r.min(s), r.max(s));
                match terms.iter_mut().find(|t| t.0 == i && t.1 == j) {
                    Some(t) => t.2 += coef,
                    None => terms.push((i, j, coef)),
                }
            }
            rows.push(terms);
        }
        let m = rows.len();
        let mut gram = vec![0.0; m * m];
        for k in 0..m {
            for l in 0..=k {
                let mut s = 0.0;
                for &(i, j, a) in &rows[k] {
                    if let Some(&(_, _, b)) = rows[l].iter().find(|t| t.0 == i && t.1 == j) {
                        s += if i == j { a * b } else { 2.0 * a * b };
                    }
                }
                gram[k * m + l] = s;
                gram[l * m + k] = s;
            }
        }
        let chol = cholesky(&gram, m).ok_or_else(|| {
            Error::Malformed(alloc::string::String::from(
                "equality constraints are linearly dependent",
            ))
        })?;
        Ok(AffineBox {
            n,
            bound,
            rows,
            rhs: p.equalities.iter().map(|c| c.rhs).collect(),
            chol,
        })
    }

    /// ⟨A_k, X⟩ for every row.
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        self.rows
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .map(|&(i, j, a)| {
                        if i == j {
                            a * x[i * n + i]
                        } else {
                            2.0 * a * x[i * n + j]
                        }
                    })
                    .sum()
            })
            .collect()
    }

    /// X ← X − Σ y_k A_k.
    fn subtract_adjoint(&self, x: &mut [f64], y: &[f64]) {
        let n = self.n;
        for (terms, &yk) in self.rows.iter().zip(y) {
            for &(i, j, a) in terms {
                x[i * n + j] -= yk * a;
                if i != j {
                    x[j * n + i] -= yk * a;
                }
            }
        }
    }

    fn solve_normal(&self, r: &mut [f64]) {
        cholesky_solve(&self.chol, r.len(), r);
    }

    /// Euclidean projection onto S, in place.
    fn project(&self, x: &mut [f64]) {
        for (xi, b) in x.iter_mut().zip(&self.bound) {
            match b {
                None => {}
                Some(Bound::Fixed(v)) => *xi = *v,
                Some(Bound::AtMost(v)) => *xi = xi.min(*v),
                Some(Bound::NonNegative) => *xi = xi.max(0.0),
            }
        }
        if !self.rows.is_empty() {
            let mut r = self.apply(x);
            for (rk, bk) in r.iter_mut().zip(&self.rhs) {
                *rk -= bk;
            }
            self.solve_normal(&mut r);
            self.subtract_adjoint(x, &r);
        }
    }

    /// Lagrangian dual value `inf_{X∈S} ⟨R, X⟩` for `R = C − W` together with
    /// the Frobenius norm of the part of `R` that makes it −∞.
    fn dual_value(&self, r: &[f64]) -> (f64, f64) {
        let n = self.n;
        let mut value = 0.0;
        let mut infeas = 0.0;
        let mut y = self.apply(r);
        self.solve_normal(&mut y);
        value += dot(&y, &self.rhs);
        let mut free = r.to_vec();
        self.subtract_adjoint(&mut free, &y);
        for i in 0..n {
            for j in i..n {
                let w = if i == j { 1.0 } else { 2.0 };
                let e = r[i * n + j];
                match self.bound[i * n + j] {
                    None => infeas += w * free[i * n + j] * free[i * n + j],
                    Some(Bound::Fixed(v)) => value += w * e * v,
                    Some(Bound::AtMost(v)) => {
                        if e <= 0.0 {
                            value += w * e * v;
                        } else {
                            infeas += w * e * e;
                        }
                    }
                    Some(Bound::NonNegative) => {
                        if e < 0.0 {
                            infeas += w * e * e;
                        }
                    }
                }
            }
        }
        (value, libm::sqrt(infeas))
    }

    fn violations(&self, x: &[f64]) -> (f64, f64) {
        let mut affine = 0.0f64;
        for (ax, b) in self.apply(x).iter().zip(&self.rhs) {
            affine = affine.max((ax - b).abs());
        }
        let mut entry = 0.0f64;
        for (xi, b) in x.iter().zip(&self.bound) {
            let v = match b {
                None => 0.0,
                Some(Bound::Fixed(v)) => (xi - v).abs(),
                Some(Bound::AtMost(v)) => (xi - v).max(0.0),
                Some(Bound::NonNegative) => (-xi).max(0.0),
            };
            entry = entry.max(v);
        }
        (affine, entry)
    }
}

fn cholesky(a: &[f64], m: usize) -> Option<Vec<f64>> {
    let mut l = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..=i {
            let mut s = a[i * m + j];
            for k in 0..j {
                s -= l[i * m + k] * l[j * m + k];
            }
            if i == j {
                if s <= 1e-12 * (1.0 + a[i * m + i].abs()) {
                    return None;
                }
                l[i * m + i] = libm::sqrt(s);
            } else {
                l[i * m + j] = s / l[j * m + j];
            }
        }
    }
    Some(l)
}

fn cholesky_solve(l: &[f64], m: usize, b: &mut [f64]) {
    for i in 0..m {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i * m + k] * b[k];
        }
        b[i] = s / l[i * m + i];
    }
    for i in (0..m).rev() {
        let mut s = b[i];
        for k in i + 1..m {
            s -= l[k * m + i] * b[k];
        }
        b[i] = s / l[i * m + i];
    }
}

fn fro(x: &[f64]) -> f64 {
    libm::sqrt(dot(x, x))
}

fn fro_diff(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Solves `p` with over-relaxed ADMM. Deterministic: identical inputs and
/// configuration give an identical iterate sequence.
///
/// A run that hits `max_iter` returns its last iterate with
/// [`Status::MaxIter`]; a run whose primal residual stalls far from zero is
/// reported as [`Status::InfeasibleSuspected`].
pub fn solve(p: &SdpProblem, cfg: &SolverConfig) -> Result<SdpSolution> {
    cfg.validate()?;
    p.validate()?;
    let n = p.order;
    let set = AffineBox::new(p)?;
    let sign = match p.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let c: Vec<f64> = p.objective.as_slice().iter().map(|v| sign * v).collect();
    let c_norm = fro(&c);
    let alpha = cfg.over_relaxation;

    let mut x = vec![0.0; n * n];
    let mut z = vec![0.0; n * n];
    let mut z_prev = vec![0.0; n * n];
    let mut u = vec![0.0; n * n];
    let mut v = vec![0.0; n * n];
    let mut rho = cfg.penalty;
    let mut eig = EigenWorkspace::new(n);

    let mut status = Status::MaxIter;
    let mut iterations = 0;
    let mut best_primal = f64::INFINITY;
    let mut best_at = 0;

    for it in 1..=cfg.max_iter {
        iterations = it;
        for k in 0..n * n {
            x[k] = z[k] - u[k] - c[k] / rho;
        }
        set.project(&mut x);
        for k in 0..n * n {
            v[k] = alpha * x[k] + (1.0 - alpha) * z[k] + u[k];
        }
        core::mem::swap(&mut z, &mut z_prev);
        eig.psd_part(&v, &mut z)?;
        for k in 0..n * n {
            u[k] = v[k] - z[k];
        }

        let check = it % CHECK_EVERY == 0;
        let balance = it % BALANCE_EVERY == 0;
        if !(check || balance) {
            continue;
        }
        let r_primal = fro_diff(&x, &z) / (1.0 + fro(&x).max(fro(&z)));
        let r_dual = rho * fro_diff(&z, &z_prev) / (1.0 + rho * fro(&u));

        if check {
            if r_primal < 0.5 * best_primal {
                best_primal = r_primal;
                best_at = it;
            }
            if r_primal <= cfg.tol && r_dual <= cfg.tol {
                let (gap, dual_infeas) = gap_and_dual(&set, &c, &x, &u, rho);
                if gap <= cfg.gap_tol && dual_infeas / (1.0 + c_norm) <= cfg.tol {
                    status = Status::Optimal;
                    break;
                }
            }
            if it - best_at > STALL_WINDOW && r_primal > STALL_FLOOR {
                status = Status::InfeasibleSuspected;
                break;
            }
        }
        if balance {
            let (lo, hi) = PENALTY_RANGE;
            if r_primal > BALANCE_RATIO * r_dual && rho * PENALTY_STEP <= hi {
                rho *= PENALTY_STEP;
                u.iter_mut().for_each(|e| *e /= PENALTY_STEP);
            } else if r_dual > BALANCE_RATIO * r_primal && rho / PENALTY_STEP >= lo {
                rho /= PENALTY_STEP;
                u.iter_mut().for_each(|e| *e *= PENALTY_STEP);
            }
        }
    }

    let w: Vec<f64> = u.iter().map(|e| -rho * e).collect();
    let primal_min = dot(&c, &x);
    let r: Vec<f64> = c.iter().zip(&w).map(|(ci, wi)| ci - wi).collect();
    let (dual_min, dual_infeas) = set.dual_value(&r);
    let x = SymMatrix::from_raw(n, x);
    let (affine, entrywise) = set.violations(x.as_slice());
    let x_norm = 1.0 + x.frobenius_norm();
    let cone = if n == 0 { 0.0 } else { (-x.min_eigenvalue()?).max(0.0) };
    let residuals = Residuals {
        affine: affine / x_norm,
        cone: cone / x_norm,
        entrywise: entrywise / x_norm,
        dual: dual_infeas / (1.0 + c_norm),
    };
    Ok(SdpSolution {
        x,
        multiplier: SymMatrix::from_raw(n, w),
        objective: sign * primal_min,
        dual_objective: sign * dual_min,
        gap: (primal_min - dual_min).abs(),
        residuals,
        iterations,
        status,
    })
}

fn gap_and_dual(set: &AffineBox, c: &[f64], x: &[f64], u: &[f64], rho: f64) -> (f64, f64) {
    let r: Vec<f64> = c.iter().zip(u).map(|(ci, ui)| ci + rho * ui).collect();
    let (d, infeas) = set.dual_value(&r);
    ((dot(c, x) - d).abs(), infeas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdp::{EntryBound, LinearConstraint};

    fn trace_one(n: usize) -> LinearConstraint {
        LinearConstraint {
            terms: (0..n).map(|i| (i, i, 1.0)).collect(),
            rhs: 1.0,
        }
    }

    #[test]
    fn max_eigenvalue_of_a_fixed_matrix() {
        // max ⟨C, X⟩ s.t. tr X = 1, X ⪰ 0 equals λ_max(C).
        let c = SymMatrix::new(2, vec![2.0, 1.0, 1.0, 2.0]).unwrap();
        let p = SdpProblem {
            order: 2,
            sense: Sense::Maximize,
            objective: c,
            equalities: vec![trace_one(2)],
            bounds: vec![],
        };
        let s = solve(&p, &SolverConfig::default()).unwrap();
        assert_eq!(s.status, Status::Optimal);
        assert!((s.objective - 3.0).abs() <= 1e-5);
        assert!((s.dual_objective - 3.0).abs() <= 1e-5);
    }

    #[test]
    fn infeasible_problem_is_flagged() {
        // X_00 = −1 cannot hold for a PSD matrix.
        let p = SdpProblem {
            order: 2,
            sense: Sense::Minimize,
            objective: SymMatrix::identity(2),
            equalities: vec![],
            bounds: vec![EntryBound {
                row: 0,
                col: 0,
                constraint: EntryConstraint::Fixed(-1.0),
            }],
        };
        let s = solve(&p, &SolverConfig::default()).unwrap();
        assert_eq!(s.status, Status::InfeasibleSuspected);
    }

    #[test]
    fn max_iter_returns_best_iterate() {
        let p = SdpProblem {
            order: 3,
            sense: Sense::Maximize,
            objective: SymMatrix::ones(3),
            equalities: vec![trace_one(3)],
            bounds: vec![],
        };
        let cfg = SolverConfig {
            max_iter: 3,
            ..SolverConfig::default()
        };
        let s = solve(&p, &cfg).unwrap();
        assert_eq!(s.status, Status::MaxIter);
        assert_eq!(s.iterations, 3);
    }

    #[test]
    fn malformed_problems_are_rejected() {
        let mut p = SdpProblem {
            order: 2,
            sense: Sense::Minimize,
            objective: SymMatrix::identity(2),
            equalities: vec![trace_one(2)],
            bounds: vec![EntryBound {
                row: 1,
                col: 1,
                constraint: EntryConstraint::NonNegative,
            }],
        };
        assert!(matches!(solve(&p, &SolverConfig::default()), Err(Error::Malformed(_))));
        p.bounds.clear();
        p.equalities.push(trace_one(2));
        assert!(matches!(solve(&p, &SolverConfig::default()), Err(Error::Malformed(_))));
        p.equalities.pop();
        let bad = SolverConfig {
            over_relaxation: 2.0,
            ..SolverConfig::default()
        };
        assert!(solve(&p, &bad).is_err());
    }

    #[test]
    fn cholesky_roundtrip() {
        let a = [4.0, 2.0, 2.0, 3.0];
        let l = cholesky(&a, 2).unwrap();
        let mut b = [2.0, 1.0];
        cholesky_solve(&l, 2, &mut b);
        assert!((4.0 * b[0] + 2.0 * b[1] - 2.0).abs() < 1e-14);
        assert!((2.0 * b[0] + 3.0 * b[1] - 1.0).abs() < 1e-14);
        assert!(cholesky(&[1.0, 1.0, 1.0, 1.0], 2).is_none());
    }
}
