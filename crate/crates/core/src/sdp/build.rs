//! The four programs for ϑ̄ and χ_vec.
//!
//! Primal (order n+1): the variable is `diag(M, λ)` with the border entries
//! pinned to zero, so `X ⪰ 0` iff `M ⪰ 0` (λ ≥ 1 holds automatically).
//!
//! ```text
//! min X_nn   s.t.  M_ii − X_nn = −1        for every vertex i
//!                  M_ij = −1   (ϑ̄)   or   M_ij ≤ −1   (χ_vec)   on edges
//! ```
//!
//! Dual (order n):
//!
//! ```text
//! max ⟨J, P⟩  s.t.  P_ij = 0 on non-edges,  tr P = 1,  P ⪰ 0
//!                   P_ij ≥ 0 on edges     (χ_vec only)
//! ```
//!
//! Entrywise nonnegativity on the diagonal is implied by `P ⪰ 0` and on
//! non-edges by `P_ij = 0`, so only edge entries carry the extra bound.

use alloc::vec::Vec;

use super::{EntryBound, EntryConstraint, LinearConstraint, SdpProblem, Sense};
use crate::graph::Graph;
use crate::linalg::SymMatrix;
use crate::{Error, Result};

/// Which parameter a program computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamKind {
    /// ϑ̄: strict vector chromatic number.
    ThetaBar,
    /// χ_vec: vector chromatic number.
    ChiVec,
}

impl ParamKind {
    pub fn name(self) -> &'static str {
        match self {
            ParamKind::ThetaBar => "theta-bar",
            ParamKind::ChiVec => "chi-vec",
        }
    }

    /// Whether edge inner products must equal (rather than be at most)
    /// −1/(k−1).
    pub fn is_strict(self) -> bool {
        self == ParamKind::ThetaBar
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    Primal,
    Dual,
}

pub fn build_theta_bar(g: &Graph, form: Form) -> Result<SdpProblem> {
    build(g, ParamKind::ThetaBar, form)
}

pub fn build_chi_vec(g: &Graph, form: Form) -> Result<SdpProblem> {
    build(g, ParamKind::ChiVec, form)
}

pub fn build(g: &Graph, kind: ParamKind, form: Form) -> Result<SdpProblem> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Domain("the graph has no vertices".into()));
    }
    Ok(match form {
        Form::Primal => primal(g, kind),
        Form::Dual => dual(g, kind),
    })
}

fn primal(g: &Graph, kind: ParamKind) -> SdpProblem {
    let n = g.order();
    let lam = n;
    let mut bounds = Vec::new();
    for i in 0..n {
        bounds.push(EntryBound {
            row: i,
            col: lam,
            constraint: EntryConstraint::Fixed(0.0),
        });
        for j in i + 1..n {
            if g.has_edge(i, j) {
                let constraint = match kind {
                    ParamKind::ThetaBar => EntryConstraint::Fixed(-1.0),
                    ParamKind::ChiVec => EntryConstraint::AtMost(-1.0),
                };
                bounds.push(EntryBound {
                    row: i,
                    col: j,
                    constraint,
                });
            }
        }
    }
    let equalities = (0..n)
        .map(|i| LinearConstraint {
            terms: alloc::vec![(i, i, 1.0), (lam, lam, -1.0)],
            rhs: -1.0,
        })
        .collect();
    let objective = SymMatrix::from_fn(n + 1, |i, j| if i == lam && j == lam { 1.0 } else { 0.0 });
    SdpProblem {
        order: n + 1,
        sense: Sense::Minimize,
        objective,
        equalities,
        bounds,
    }
}

fn dual(g: &Graph, kind: ParamKind) -> SdpProblem {
    let n = g.order();
    let mut bounds = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                bounds.push(EntryBound {
                    row: i,
                    col: j,
                    constraint: EntryConstraint::Fixed(0.0),
                });
            } else if kind == ParamKind::ChiVec {
                bounds.push(EntryBound {
                    row: i,
                    col: j,
                    constraint: EntryConstraint::NonNegative,
                });
            }
        }
    }
    let trace = LinearConstraint {
        terms: (0..n).map(|i| (i, i, 1.0)).collect(),
        rhs: 1.0,
    };
    SdpProblem {
        order: n,
        sense: Sense::Maximize,
        objective: SymMatrix::ones(n),
        equalities: alloc::vec![trace],
        bounds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::sdp::{solve, SolverConfig, Status};

    #[test]
    fn zero_vertices_rejected() {
        assert!(matches!(
            build_theta_bar(&Graph::empty(0), Form::Dual),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn theta_bar_dual_small_cases() {
        let cfg = SolverConfig::default();
        let k3 = generate(Family::Complete, 3).unwrap();
        let s = solve(&build_theta_bar(&k3, Form::Dual).unwrap(), &cfg).unwrap();
        assert_eq!(s.status, Status::Optimal);
        assert!((s.objective - 3.0).abs() <= 1e-5, "{}", s.objective);

        let e4 = Graph::empty(4);
        let s = solve(&build_theta_bar(&e4, Form::Dual).unwrap(), &cfg).unwrap();
        assert!((s.objective - 1.0).abs() <= 1e-6, "{}", s.objective);
    }

    #[test]
    fn k2_dual_matches_two_by_two_optimum() {
        // P = [[a, b], [b, 1−a]] ⪰ 0: ⟨J,P⟩ = 1 + 2b with b² ≤ a(1−a) ≤ 1/4,
        // so the optimum is 2 at a = b = 1/2.
        let k2 = generate(Family::Complete, 2).unwrap();
        let s = solve(&build_theta_bar(&k2, Form::Dual).unwrap(), &SolverConfig::default()).unwrap();
        assert!((s.objective - 2.0).abs() <= 1e-5);
        assert!((s.x.get(0, 1) - 0.5).abs() <= 1e-4);
    }

    #[test]
    fn empty_graph_primal_optimum() {
        // M = 0, λ = 1 is feasible and optimal.
        let s = solve(
            &build_theta_bar(&Graph::empty(3), Form::Primal).unwrap(),
            &SolverConfig::default(),
        )
        .unwrap();
        assert!((s.objective - 1.0).abs() <= 1e-5);
        assert!(s.x.get(0, 0).abs() <= 1e-4);
    }

    #[test]
    fn cycle_five_dual_is_sqrt_five() {
        let c5 = generate(Family::Cycle, 5).unwrap();
        let s = solve(&build_theta_bar(&c5, Form::Dual).unwrap(), &SolverConfig::default()).unwrap();
        // 1 − 2/τ with τ = 2cos(4π/5).
        let oracle = 1.0 - 2.0 / (2.0 * libm::cos(4.0 * core::f64::consts::PI / 5.0));
        assert!((s.objective - oracle).abs() <= 1e-4);
        assert!((oracle - libm::sqrt(5.0)).abs() <= 1e-12);
    }
}
