//! Semidefinite programs over a single symmetric matrix variable and a
//! first-order operator-splitting solver for them.
//!
//! A problem is
//!
//! ```text
//! min / max  ⟨C, X⟩
//! s.t.       ⟨A_k, X⟩ = b_k           (general equalities)
//!            X_ij = v, X_ij ≤ v, X_ij ≥ 0   (entry constraints)
//!            X ⪰ 0
//! ```
//!
//! Entry constraints and the supports of the general equalities must be
//! pairwise disjoint. That keeps the projection onto the affine-and-box set
//! exact: entry constraints are clipped independently and the equalities are
//! enforced on the remaining entries through a pre-factored normal-equation
//! system.

use alloc::vec::Vec;

use crate::linalg::SymMatrix;
use crate::{Error, Result};

mod admm;
mod build;

pub use admm::solve;
pub use build::{build, build_chi_vec, build_theta_bar, Form, ParamKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntryConstraint {
    Fixed(f64),
    AtMost(f64),
    NonNegative,
}

/// Constraint on the symmetric entry pair `(row, col)`/`(col, row)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntryBound {
    pub row: usize,
    pub col: usize,
    pub constraint: EntryConstraint,
}

/// `⟨A, X⟩ = rhs` where `A` is the symmetric matrix with `A_ij = A_ji = coef`
/// for each term `(i, j, coef)`. Off-diagonal terms therefore contribute
/// `2·coef·X_ij` to the inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub terms: Vec<(usize, usize, f64)>,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdpProblem {
    pub order: usize,
    pub sense: Sense,
    pub objective: SymMatrix,
    pub equalities: Vec<LinearConstraint>,
    pub bounds: Vec<EntryBound>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Relative primal/dual residual tolerance.
    pub tol: f64,
    /// Absolute duality-gap tolerance.
    pub gap_tol: f64,
    pub max_iter: usize,
    /// Over-relaxation factor, in (0, 2).
    pub over_relaxation: f64,
    /// Initial penalty; rescaled by residual balancing during the solve.
    pub penalty: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-7,
            gap_tol: 1e-5,
            max_iter: 50_000,
            over_relaxation: 1.6,
            penalty: 1.0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = self.tol > 0.0 && self.gap_tol > 0.0 && self.penalty > 0.0 && self.max_iter > 0;
        if !positive || !(self.over_relaxation > 0.0 && self.over_relaxation < 2.0) {
            return Err(Error::Domain(alloc::format!("invalid solver configuration {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    MaxIter,
    InfeasibleSuspected,
}

/// Residuals of a returned iterate, each relative to `1 + ‖·‖_F` of the
/// quantity it measures.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Residuals {
    /// Violation of the general equalities.
    pub affine: f64,
    /// Negative part of the least eigenvalue of X.
    pub cone: f64,
    /// Violation of the entry constraints.
    pub entrywise: f64,
    /// Dual infeasibility of the multiplier.
    pub dual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdpSolution {
    /// Primal iterate; satisfies the affine and entry constraints exactly
    /// up to rounding.
    pub x: SymMatrix,
    /// PSD dual slack reconstructed from the splitting multiplier.
    pub multiplier: SymMatrix,
    /// ⟨C, X⟩ in the problem's own sense.
    pub objective: f64,
    /// Dual objective estimate from the multiplier, in the problem's sense.
    pub dual_objective: f64,
    pub gap: f64,
    pub residuals: Residuals,
    pub iterations: usize,
    pub status: Status,
}

impl SdpProblem {
    /// Checks index ranges, symmetry of supports and disjointness.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        if self.objective.order() != n {
            return Err(Error::Dimension {
                expected: n,
                found: self.objective.order(),
            });
        }
        // 0 = untouched, 1 = entry constraint, 2 = equality support.
        let mut owner = alloc::vec![0u8; n * n];
        for b in &self.bounds {
            if b.row >= n || b.col >= n {
                return Err(Error::Malformed(alloc::format!(
                    "entry bound ({}, {}) outside order {n}",
                    b.row,
                    b.col
                )));
            }
            let (i, j) = (b.row.min(b.col), b.row.max(b.col));
            if owner[i * n + j] != 0 {
                return Err(Error::Malformed(alloc::format!("entry ({i}, {j}) bounded twice")));
            }
            if let EntryConstraint::Fixed(v) | EntryConstraint::AtMost(v) = b.constraint {
                if !v.is_finite() {
                    return Err(Error::Malformed(alloc::format!("non-finite bound at ({i}, {j})")));
                }
            }
            owner[i * n + j] = 1;
        }
        for (k, c) in self.equalities.iter().enumerate() {
            if c.terms.is_empty() || !c.rhs.is_finite() {
                return Err(Error::Malformed(alloc::format!("equality {k} is empty or non-finite")));
            }
            for &(r, s, coef) in &c.terms {
                if r >= n || s >= n || !coef.is_finite() {
                    return Err(Error::Malformed(alloc::format!(
                        "equality {k} has a bad term ({r}, {s})"
                    )));
                }
                let (i, j) = (r.min(s), r.max(s));
                if owner[i * n + j] == 1 {
                    return Err(Error::Malformed(alloc::format!(
                        "equality {k} touches the bounded entry ({i}, {j})"
                    )));
                }
                owner[i * n + j] = 2;
            }
        }
        Ok(())
    }
}
