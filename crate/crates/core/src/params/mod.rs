//! Graph parameters with machine-checkable certificates.
//!
//! SDP-backed values come with a feasible primal matrix `M` (an upper bound)
//! and a feasible dual matrix `P` (a lower bound), both repaired to exact
//! feasibility from the solver output and re-checkable with
//! [`check_primal`] and [`check_dual`].

use alloc::boxed::Box;
use alloc::format;

use crate::graph::{bipartition, remove_isolated, Graph};
use crate::linalg::{eig_sym, SymMatrix};
use crate::sdp::{self, Form, ParamKind, SolverConfig, Status};
use crate::{Error, Result};

mod certificate;
mod chromatic;
mod onehom;

pub use certificate::{check_dual, check_primal, repair_dual, repair_primal, CertificateResiduals};
pub use chromatic::{chromatic_number, chromatic_number_capped, Chromatic, DEFAULT_CHROMATIC_CAP};
pub use onehom::{one_homogeneous_check, OneHomReport, OneHomWitness, WalkConstants};

/// Grouping tolerance used when extracting eigenspaces of adjacency matrices.
pub const EIGEN_GROUPING_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Sdp,
    Spectral,
    /// Fixed value without solving anything: 1 for edgeless graphs, 2 for
    /// bipartite graphs with an edge.
    Convention,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Sdp => "sdp",
            Method::Spectral => "spectral",
            Method::Convention => "convention",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamResult {
    /// Midpoint of `[lower, upper]`.
    pub value: f64,
    /// ⟨J, P⟩ of the dual certificate.
    pub lower: f64,
    /// λ of the primal certificate.
    pub upper: f64,
    /// `upper − lower`, clamped at zero.
    pub gap: f64,
    pub method: Method,
    /// `M ⪰ 0` with `M ∘ I = (upper − 1)I` and the edge condition.
    pub primal_certificate: Option<SymMatrix>,
    /// `P ⪰ 0` with `tr P = 1`, zero on non-edges (and `P ≥ 0` for χ_vec).
    pub dual_certificate: Option<SymMatrix>,
    pub iterations: usize,
}

impl ParamResult {
    fn convention() -> Self {
        ParamResult {
            value: 1.0,
            lower: 1.0,
            upper: 1.0,
            gap: 0.0,
            method: Method::Convention,
            primal_certificate: None,
            dual_certificate: None,
            iterations: 0,
        }
    }

    fn from_certificates(method: Method, (m, upper): (SymMatrix, f64), p: SymMatrix, iterations: usize) -> Self {
        let lower = p.msum();
        ParamResult {
            value: 0.5 * (lower + upper),
            lower,
            upper,
            gap: (upper - lower).max(0.0),
            method,
            primal_certificate: Some(m),
            dual_certificate: Some(p),
            iterations,
        }
    }
}

/// ϑ̄(G) via the dual program. Edgeless graphs give 1 by convention.
pub fn theta_bar(g: &Graph, cfg: &SolverConfig) -> Result<ParamResult> {
    solve_param(g, ParamKind::ThetaBar, Form::Dual, cfg)
}

/// χ_vec(G) via the dual program. Edgeless graphs give 1 by convention.
pub fn chi_vec(g: &Graph, cfg: &SolverConfig) -> Result<ParamResult> {
    solve_param(g, ParamKind::ChiVec, Form::Dual, cfg)
}

/// Solves either form of a parameter's program and turns the iterate and
/// the multiplier into exactly feasible certificates for both sides.
///
/// The primal form is what coloring extraction needs: its iterate is the
/// Gram matrix, whereas a dual-form solve only recovers `M` from the
/// multiplier.
pub fn solve_param(g: &Graph, kind: ParamKind, form: Form, cfg: &SolverConfig) -> Result<ParamResult> {
    if g.edge_count() == 0 {
        return Ok(ParamResult::convention());
    }
    let problem = sdp::build(g, kind, form)?;
    let sol = sdp::solve(&problem, cfg)?;
    let n = g.order();
    let (m_candidate, p_candidate) = match form {
        Form::Dual => (sol.multiplier.clone(), sol.x.clone()),
        Form::Primal => (leading_block(&sol.x, n), leading_block(&sol.multiplier, n)),
    };
    let primal = repair_primal(g, kind, &m_candidate)?;
    let dual = repair_dual(g, kind, &p_candidate)?;
    let result = ParamResult::from_certificates(Method::Sdp, primal, dual, sol.iterations);
    if sol.status != Status::Optimal {
        return Err(Error::Solver {
            status: sol.status,
            partial: Box::new(result),
        });
    }
    Ok(result)
}

fn leading_block(x: &SymMatrix, n: usize) -> SymMatrix {
    SymMatrix::from_fn(n, |i, j| x.get(i, j))
}

/// Lower bound `1 − (2e/n)/τ` on χ_vec, τ the least adjacency eigenvalue.
pub fn spectral_lower_bound(g: &Graph) -> Result<f64> {
    let e = g.edge_count();
    if e == 0 {
        return Err(Error::Domain("spectral lower bound needs at least one edge".into()));
    }
    let n = g.order() as f64;
    let tau = least_eigenvalue(g)?;
    Ok(1.0 - (2.0 * e as f64 / n) / tau)
}

fn least_eigenvalue(g: &Graph) -> Result<f64> {
    g.adjacency_matrix().min_eigenvalue()
}

/// `χ_vec = ϑ̄ = 1 − k/τ` for a 1-homogeneous graph of degree `k` with least
/// eigenvalue `τ`.
///
/// The result carries the two closed-form certificates: `P = (A − τI)/(−nτ)`
/// on the dual side and `M = −(nk/(rτ))·E_τ` on the primal side, where `E_τ`
/// is the projector onto the τ-eigenspace and `r` its rank.
pub fn spectral_vector_chromatic(g: &Graph) -> Result<ParamResult> {
    if g.edge_count() == 0 {
        return Err(Error::Domain("spectral formula needs at least one edge".into()));
    }
    let report = one_homogeneous_check(g);
    if !report.is_one_homogeneous {
        return Err(Error::Domain(match report.failing_witness {
            Some(w) => format!("graph is not 1-homogeneous: {w}"),
            None => "graph is not 1-homogeneous".into(),
        }));
    }
    let n = g.order();
    let a = g.adjacency_matrix();
    let spectrum = eig_sym(&a, EIGEN_GROUPING_TOL)?;
    let least = spectrum.least_space().expect("nonempty graph has a spectrum");
    let tau = least.value;
    let k = g.degree(0) as f64;
    let r = least.multiplicity as f64;

    let mut p = a.clone();
    p.shift_diagonal(-tau);
    let p = p.scale(1.0 / (-(n as f64) * tau));
    let m = least.projector.scale(-(n as f64) * k / (r * tau));
    let upper = 1.0 - k / tau;
    let mut result = ParamResult::from_certificates(Method::Spectral, (m, upper), p, 0);
    result.value = upper;
    Ok(result)
}

/// Closed-form value without an SDP, after discarding isolated vertices:
/// the spectral formula when the rest is 1-homogeneous, otherwise 2 when it
/// is bipartite.
///
/// The bipartite value carries the certificates `M = ssᵀ` for the ±1 side
/// vector `s` and `P = ½(e_u + e_v)(e_u + e_v)ᵀ` for any edge `uv`. Isolated
/// vertices get `λ − 1` on the primal diagonal and zero elsewhere.
pub fn closed_form_vector_chromatic(g: &Graph) -> Result<ParamResult> {
    if g.edge_count() == 0 {
        return Err(Error::Domain("closed form needs at least one edge".into()));
    }
    let (core, index) = remove_isolated(g);
    let reduced = if one_homogeneous_check(&core).is_one_homogeneous {
        spectral_vector_chromatic(&core)?
    } else {
        let Some(side) = bipartition(&core) else {
            return Err(Error::Domain(
                "graph without isolated vertices is neither 1-homogeneous nor bipartite".into(),
            ));
        };
        let (u, v) = core.edges().next().expect("edges survive removal of isolated vertices");
        let sign = |i: usize| if side[i] == 0 { 1.0 } else { -1.0 };
        let m = SymMatrix::from_fn(core.order(), |i, j| sign(i) * sign(j));
        let e = |i: usize| (i == u || i == v) as u8 as f64;
        let p = SymMatrix::from_fn(core.order(), |i, j| 0.5 * e(i) * e(j));
        ParamResult::from_certificates(Method::Convention, (m, 2.0), p, 0)
    };
    if core.order() == g.order() {
        return Ok(reduced);
    }
    let embed = |x: &SymMatrix, isolated_diagonal: f64| {
        SymMatrix::from_fn(g.order(), |i, j| match (index[i], index[j]) {
            (Some(a), Some(b)) => x.get(a, b),
            _ if i == j => isolated_diagonal,
            _ => 0.0,
        })
    };
    let m = embed(
        reduced
            .primal_certificate
            .as_ref()
            .expect("closed forms carry certificates"),
        reduced.upper - 1.0,
    );
    let p = embed(
        reduced
            .dual_certificate
            .as_ref()
            .expect("closed forms carry certificates"),
        0.0,
    );
    Ok(ParamResult {
        primal_certificate: Some(m),
        dual_certificate: Some(p),
        ..reduced
    })
}
