//! Product and union identities for ϑ̄, χ_vec and χ checked on concrete
//! graph pairs.
//!
//! Every check compares a left-hand side computed on the combined graph with
//! a right-hand side built from the factors. Each SDP solve made along the
//! way is recorded so that callers can audit the certified gaps.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::{product, union, Graph, ProductKind};
use crate::params::{
    chi_vec, chromatic_number_capped, one_homogeneous_check, spectral_lower_bound, theta_bar, Chromatic, Method,
    ParamResult,
};
use crate::sdp::{ParamKind, SolverConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityConfig {
    pub solver: SolverConfig,
    /// Allowed `|lhs − rhs|` for equalities and `lhs − rhs` for bounds.
    pub tol: f64,
    /// Largest combined graph the suites will build.
    pub max_order: usize,
    /// Vertex cap for exact chromatic numbers.
    pub chromatic_cap: usize,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        IdentityConfig {
            solver: SolverConfig::default(),
            tol: 1e-3,
            max_order: 110,
            chromatic_cap: 110,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `|lhs − rhs| ≤ tol`.
    Equal,
    /// `lhs ≤ rhs + tol`.
    AtMost,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    /// E.g. `"theta-bar(G □ H) = max"`.
    pub name: String,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs − rhs|` or `max(0, lhs − rhs)`.
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl IdentityCheck {
    pub fn new(name: String, relation: Relation, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let residual = match relation {
            Relation::Equal => (lhs - rhs).abs(),
            Relation::AtMost => (lhs - rhs).max(0.0),
        };
        IdentityCheck {
            name,
            relation,
            lhs,
            rhs,
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }
}

/// One SDP-backed parameter evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveRecord {
    /// E.g. `"chi-vec(G × H)"`.
    pub subject: String,
    pub method: Method,
    pub lower: f64,
    pub upper: f64,
    pub gap: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteOutcome {
    pub checks: Vec<IdentityCheck>,
    pub solves: Vec<SolveRecord>,
}

impl SuiteOutcome {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn extend(&mut self, other: SuiteOutcome) {
        self.checks.extend(other.checks);
        self.solves.extend(other.solves);
    }

    fn param(&mut self, kind: ParamKind, g: &Graph, subject: &str, cfg: &SolverConfig) -> Result<f64> {
        let r: ParamResult = match kind {
            ParamKind::ThetaBar => theta_bar(g, cfg)?,
            ParamKind::ChiVec => chi_vec(g, cfg)?,
        };
        self.solves.push(SolveRecord {
            subject: format!("{}({subject})", kind.name()),
            method: r.method,
            lower: r.lower,
            upper: r.upper,
            gap: r.gap,
            iterations: r.iterations,
        });
        Ok(r.value)
    }

    fn check(&mut self, name: String, relation: Relation, lhs: f64, rhs: f64, tol: f64) {
        self.checks.push(IdentityCheck::new(name, relation, lhs, rhs, tol));
    }
}

fn build(kind: ProductKind, g: &Graph, h: &Graph, cfg: &IdentityConfig) -> Result<Graph> {
    let size = g.order() * h.order();
    if size > cfg.max_order {
        return Err(Error::Capacity {
            what: "product vertices",
            size,
            limit: cfg.max_order,
        });
    }
    Ok(product(kind, g, h))
}

fn chromatic(g: &Graph, cfg: &IdentityConfig) -> Result<usize> {
    match chromatic_number_capped(g, g.order(), cfg.chromatic_cap)? {
        Chromatic::Exact { number, .. } => Ok(number),
        Chromatic::ExceedsLimit { .. } => unreachable!("χ never exceeds the vertex count"),
    }
}

/// ϑ̄, χ_vec and χ of `G □ H` against the maxima over the factors.
pub fn sabidussi(g: &Graph, h: &Graph, cfg: &IdentityConfig) -> Result<SuiteOutcome> {
    let gh = build(ProductKind::Cartesian, g, h, cfg)?;
    let mut out = SuiteOutcome::default();
    for kind in [ParamKind::ThetaBar, ParamKind::ChiVec] {
        let a = out.param(kind, g, "G", &cfg.solver)?;
        let b = out.param(kind, h, "H", &cfg.solver)?;
        let p = out.param(kind, &gh, "G □ H", &cfg.solver)?;
        out.check(
            format!("{}(G □ H) = max", kind.name()),
            Relation::Equal,
            p,
            a.max(b),
            cfg.tol,
        );
    }
    let (a, b, p) = (chromatic(g, cfg)?, chromatic(h, cfg)?, chromatic(&gh, cfg)?);
    out.check(
        "chi(G □ H) = max".into(),
        Relation::Equal,
        p as f64,
        a.max(b) as f64,
        0.0,
    );
    Ok(out)
}

/// ϑ̄ of `G × H` against the minimum over the factors, and the same for
/// χ_vec when both factors are 1-homogeneous.
pub fn hedetniemi(g: &Graph, h: &Graph, cfg: &IdentityConfig) -> Result<SuiteOutcome> {
    let gh = build(ProductKind::Categorical, g, h, cfg)?;
    let mut out = SuiteOutcome::default();
    let mut kinds = alloc::vec![ParamKind::ThetaBar];
    if one_homogeneous_check(g).is_one_homogeneous && one_homogeneous_check(h).is_one_homogeneous {
        kinds.push(ParamKind::ChiVec);
    }
    for kind in kinds {
        let a = out.param(kind, g, "G", &cfg.solver)?;
        let b = out.param(kind, h, "H", &cfg.solver)?;
        let p = out.param(kind, &gh, "G × H", &cfg.solver)?;
        out.check(
            format!("{}(G × H) = min", kind.name()),
            Relation::Equal,
            p,
            a.min(b),
            cfg.tol,
        );
    }
    Ok(out)
}

/// ϑ̄ of the strong and disjunctive products against `ϑ̄(G)·ϑ̄(H)`.
pub fn multiplicativity(g: &Graph, h: &Graph, cfg: &IdentityConfig) -> Result<SuiteOutcome> {
    let strong = build(ProductKind::Strong, g, h, cfg)?;
    let disjunctive = build(ProductKind::Disjunctive, g, h, cfg)?;
    let mut out = SuiteOutcome::default();
    let a = out.param(ParamKind::ThetaBar, g, "G", &cfg.solver)?;
    let b = out.param(ParamKind::ThetaBar, h, "H", &cfg.solver)?;
    let s = out.param(ParamKind::ThetaBar, &strong, "G ⊠ H", &cfg.solver)?;
    out.check("theta-bar(G ⊠ H) = product".into(), Relation::Equal, s, a * b, cfg.tol);
    let d = out.param(ParamKind::ThetaBar, &disjunctive, "G ∗ H", &cfg.solver)?;
    out.check("theta-bar(G ∗ H) = product".into(), Relation::Equal, d, a * b, cfg.tol);
    Ok(out)
}

/// `ϑ̄(G ∪ H) ≤ ϑ̄(G)·ϑ̄(H)` for graphs on a common vertex set.
pub fn union_bound(g: &Graph, h: &Graph, cfg: &IdentityConfig) -> Result<SuiteOutcome> {
    let gh = union(g, h)?;
    let mut out = SuiteOutcome::default();
    let a = out.param(ParamKind::ThetaBar, g, "G", &cfg.solver)?;
    let b = out.param(ParamKind::ThetaBar, h, "H", &cfg.solver)?;
    let u = out.param(ParamKind::ThetaBar, &gh, "G ∪ H", &cfg.solver)?;
    out.check(
        "theta-bar(G ∪ H) <= product".into(),
        Relation::AtMost,
        u,
        a * b,
        cfg.tol,
    );
    Ok(out)
}

/// `spectral bound ≤ χ_vec ≤ ϑ̄ ≤ χ`, the last link only within the
/// chromatic cap and the first only when `G` has an edge.
pub fn chain(g: &Graph, cfg: &IdentityConfig) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    let chi_v = out.param(ParamKind::ChiVec, g, "G", &cfg.solver)?;
    let theta = out.param(ParamKind::ThetaBar, g, "G", &cfg.solver)?;
    if g.edge_count() > 0 {
        out.check(
            "spectral bound <= chi-vec".into(),
            Relation::AtMost,
            spectral_lower_bound(g)?,
            chi_v,
            cfg.tol,
        );
    }
    out.check("chi-vec <= theta-bar".into(), Relation::AtMost, chi_v, theta, cfg.tol);
    if g.order() <= cfg.chromatic_cap {
        out.check(
            "theta-bar <= chi".into(),
            Relation::AtMost,
            theta,
            chromatic(g, cfg)? as f64,
            cfg.tol,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn cfg() -> IdentityConfig {
        IdentityConfig::default()
    }

    #[test]
    fn named_pairs() {
        let c5 = generate(Family::Cycle, 5).unwrap();
        let k3 = generate(Family::Complete, 3).unwrap();
        let s = sabidussi(&c5, &k3, &cfg()).unwrap();
        assert!(s.pass(), "{:?}", s.checks);
        assert_eq!(s.checks.len(), 3);
        assert_eq!(s.solves.len(), 6);
        let h = hedetniemi(&c5, &k3, &cfg()).unwrap();
        assert!(h.pass(), "{:?}", h.checks);
        assert_eq!(h.checks.len(), 2);
        let m = multiplicativity(&c5, &c5, &cfg()).unwrap();
        assert!(m.pass(), "{:?}", m.checks);
        assert!((m.checks[0].lhs - 5.0).abs() <= 1e-3);
        for solve in s.solves.iter().chain(&h.solves).chain(&m.solves) {
            assert!(solve.gap <= 2e-5, "{solve:?}");
        }
    }

    #[test]
    fn union_and_chain() {
        let c5 = generate(Family::Cycle, 5).unwrap();
        let p5 = generate(Family::Path, 5).unwrap();
        assert!(union_bound(&c5, &p5, &cfg()).unwrap().pass());
        assert!(matches!(
            union_bound(&c5, &Graph::empty(4), &cfg()),
            Err(Error::Dimension { .. })
        ));
        let c = chain(&generate(Family::Petersen, 10).unwrap(), &cfg()).unwrap();
        assert!(c.pass() && c.checks.len() == 3);
        let e = chain(&Graph::empty(3), &cfg()).unwrap();
        assert!(e.pass() && e.checks.len() == 2);
    }

    #[test]
    fn capacity_names_product_size() {
        let small = IdentityConfig { max_order: 20, ..cfg() };
        let c5 = generate(Family::Cycle, 5).unwrap();
        assert!(matches!(
            sabidussi(&c5, &c5, &small),
            Err(Error::Capacity {
                what: "product vertices",
                size: 25,
                limit: 20
            })
        ));
    }

    #[test]
    fn failing_check_is_reported() {
        let c = IdentityCheck::new("x".into(), Relation::AtMost, 2.0, 1.0, 0.5);
        assert!(!c.pass && c.residual == 1.0);
        let c = IdentityCheck::new("x".into(), Relation::AtMost, 0.0, 1.0, 0.0);
        assert!(c.pass && c.residual == 0.0);
    }
}
