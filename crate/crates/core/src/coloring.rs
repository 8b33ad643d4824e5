//! Vector colorings: construction, extraction from SDP solutions, lifting,
//! tensor products for Cartesian products, and verification. Also the
//! modular classical coloring of a Cartesian product.
//!
//! A vector k-coloring puts a unit vector on every vertex with edge inner
//! products at most `t = −1/(k−1)`; a strict one has them equal to `t`.

use alloc::format;
use alloc::vec::Vec;

use crate::graph::{pair_index, Graph};
use crate::linalg::{dot, eig_sym, kron_vec, norm, SymMatrix};
use crate::params::solve_param;
use crate::sdp::{Form, ParamKind, SolverConfig};
use crate::{Error, Result};

/// Unit-norm tolerance enforced on construction.
pub const UNIT_NORM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct VectorColoring {
    vectors: Vec<Vec<f64>>,
    dim: usize,
    k: f64,
    strict: bool,
}

impl VectorColoring {
    /// Checks `k > 1`, a common dimension and unit norms within
    /// [`UNIT_NORM_TOL`].
    pub fn new(vectors: Vec<Vec<f64>>, k: f64, strict: bool) -> Result<Self> {
        if !(k > 1.0) || k.is_nan() {
            return Err(Error::Domain(format!("coloring target k = {k} must exceed 1")));
        }
        let dim = vectors.first().map_or(0, Vec::len);
        for (v, x) in vectors.iter().enumerate() {
            if x.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: x.len(),
                });
            }
            let r = norm(x);
            if !((r - 1.0).abs() <= UNIT_NORM_TOL) {
                return Err(Error::Domain(format!("vector of vertex {v} has norm {r}")));
            }
        }
        Ok(VectorColoring {
            vectors,
            dim,
            k,
            strict,
        })
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// Number of colored vertices.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Edge inner-product target `−1/(k−1)`.
    pub fn target(&self) -> f64 {
        edge_target(self.k)
    }

    /// Gram matrix of the vectors.
    pub fn gram(&self) -> SymMatrix {
        SymMatrix::gram(&self.vectors)
    }
}

fn edge_target(k: f64) -> f64 {
    -1.0 / (k - 1.0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalColoring {
    colors: Vec<usize>,
    m: usize,
}

impl ClassicalColoring {
    pub fn new(colors: Vec<usize>, m: usize) -> Result<Self> {
        if let Some(v) = colors.iter().position(|&c| c >= m) {
            return Err(Error::Domain(format!(
                "vertex {v} has color {} outside 0..{m}",
                colors[v]
            )));
        }
        Ok(ClassicalColoring { colors, m })
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// First monochromatic edge, if any.
    pub fn conflict(&self, g: &Graph) -> Result<Option<(usize, usize)>> {
        if self.colors.len() != g.order() {
            return Err(Error::Dimension {
                expected: g.order(),
                found: self.colors.len(),
            });
        }
        Ok(g.edges().find(|&(u, v)| self.colors[u] == self.colors[v]))
    }
}

/// The `n` vertices of a regular simplex centered at the origin, in
/// dimension `n − 1`, with pairwise inner products `−1/(n−1)`.
///
/// Vertex `i` is the centered basis vector `e_i − 1/n` written in the
/// orthonormal Helmert basis of the sum-zero hyperplane and rescaled to unit
/// length.
pub fn simplex_coloring(n: usize) -> Result<VectorColoring> {
    if n < 2 {
        return Err(Error::Domain(format!("simplex coloring needs n ≥ 2, got {n}")));
    }
    let scale = libm::sqrt(n as f64 / (n - 1) as f64);
    let vectors = (0..n)
        .map(|i| {
            (1..n)
                .map(|k| {
                    // h_k = (1, …, 1, −k, 0, …)/√(k(k+1)), with k ones.
                    let h = match i.cmp(&k) {
                        core::cmp::Ordering::Less => 1.0,
                        core::cmp::Ordering::Equal => -(k as f64),
                        core::cmp::Ordering::Greater => 0.0,
                    };
                    scale * h / libm::sqrt((k * (k + 1)) as f64)
                })
                .collect()
        })
        .collect();
    VectorColoring::new(vectors, n as f64, true)
}

/// Vectors from a primal matrix `M` with `M ∘ I = (λ−1)I`, normalized by
/// `√(λ−1)`. Eigenvalues at most `tol·λ_max` are dropped.
pub fn extract_coloring(m: &SymMatrix, lambda: f64, tol: f64, strict: bool) -> Result<VectorColoring> {
    if !(lambda > 1.0 + tol) {
        return Err(Error::Domain(format!("degenerate primal value λ = {lambda}")));
    }
    let scale = lambda - 1.0;
    let diagonal = m.diagonal().iter().fold(0.0_f64, |acc, d| acc.max((d - scale).abs()));
    if diagonal > tol * (1.0 + scale) {
        return Err(Error::Infeasible {
            constraint: "diagonal equals λ − 1",
            residual: diagonal,
        });
    }
    let spectrum = eig_sym(m, tol)?;
    let top = spectrum.largest().unwrap_or(0.0);
    let least = spectrum.least().unwrap_or(0.0);
    if least < -tol * (1.0 + top) {
        return Err(Error::Infeasible {
            constraint: "positive semidefinite",
            residual: -least,
        });
    }
    let kept: Vec<usize> = (0..m.order()).filter(|&c| spectrum.values[c] > tol * top).collect();
    let vectors = (0..m.order())
        .map(|i| {
            let mut x: Vec<f64> = kept
                .iter()
                .map(|&c| libm::sqrt(spectrum.values[c]) * spectrum.vectors[(i, c)])
                .collect();
            let r = norm(&x);
            for a in x.iter_mut() {
                *a /= r;
            }
            x
        })
        .collect();
    VectorColoring::new(vectors, lambda, strict)
}

/// Solves the primal program for `kind` and extracts a coloring at the
/// certified upper bound.
pub fn vector_coloring(g: &Graph, kind: ParamKind, cfg: &SolverConfig) -> Result<VectorColoring> {
    let r = solve_param(g, kind, Form::Primal, cfg)?;
    let m = r
        .primal_certificate
        .ok_or_else(|| Error::Domain("an edgeless graph has no vector coloring with finite k".into()))?;
    extract_coloring(&m, r.upper, cfg.tol.max(1e-9), kind.is_strict())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColoringReport {
    pub pass: bool,
    /// Edge with the largest residual.
    pub worst_edge: Option<(usize, usize)>,
    /// Strict: `|⟨φu, φv⟩ − t|`. Non-strict: `max(0, ⟨φu, φv⟩ − t)`.
    pub worst_residual: f64,
    /// `max |‖φv‖ − 1|`.
    pub norm_residual: f64,
    pub tolerance: f64,
}

pub fn verify_coloring(g: &Graph, c: &VectorColoring, tol: f64) -> Result<ColoringReport> {
    if c.len() != g.order() {
        return Err(Error::Dimension {
            expected: g.order(),
            found: c.len(),
        });
    }
    let t = c.target();
    let mut worst_edge = None;
    let mut worst_residual = 0.0;
    for (u, v) in g.edges() {
        let x = dot(&c.vectors[u], &c.vectors[v]) - t;
        let r = if c.strict { x.abs() } else { x.max(0.0) };
        if worst_edge.is_none() || r > worst_residual {
            worst_edge = Some((u, v));
            worst_residual = r;
        }
    }
    let norm_residual = c.vectors.iter().fold(0.0_f64, |acc, x| acc.max((norm(x) - 1.0).abs()));
    Ok(ColoringReport {
        pass: worst_residual <= tol && norm_residual <= tol,
        worst_edge,
        worst_residual,
        norm_residual,
        tolerance: tol,
    })
}

/// Raises the target to `k_target ≥ k` by `φ′ = (αφ, √(1 − α²))` with
/// `α² = (t′ − 1)/(t − 1)`, so edge inner products `t` become `t′`.
/// Non-strict input gives non-strict output.
pub fn lift_coloring(c: &VectorColoring, k_target: f64) -> Result<VectorColoring> {
    if !(k_target >= c.k) || !k_target.is_finite() {
        return Err(Error::Domain(format!(
            "cannot lift a {}-coloring to k = {k_target}",
            c.k
        )));
    }
    let alpha2 = (edge_target(k_target) - 1.0) / (c.target() - 1.0);
    let alpha = libm::sqrt(alpha2);
    let extra = libm::sqrt((1.0 - alpha2).max(0.0));
    let vectors = c
        .vectors
        .iter()
        .map(|x| x.iter().map(|a| alpha * a).chain(core::iter::once(extra)).collect())
        .collect();
    VectorColoring::new(vectors, k_target, c.strict)
}

/// `(u, v) ↦ g(u) ⊗ h(v)` in product vertex order, a vector k-coloring of
/// `G □ H` when both inputs share the target `k`.
pub fn cartesian_tensor_coloring(cg: &VectorColoring, ch: &VectorColoring) -> Result<VectorColoring> {
    if (cg.k - ch.k).abs() > 1e-12 * cg.k.max(ch.k) {
        return Err(Error::Domain(format!(
            "targets differ ({} vs {}); lift the smaller coloring first",
            cg.k, ch.k
        )));
    }
    let nh = ch.len();
    let mut vectors = Vec::with_capacity(cg.len() * nh);
    for u in 0..cg.len() {
        for v in 0..nh {
            debug_assert_eq!(pair_index(u, v, nh), vectors.len());
            vectors.push(kron_vec(&cg.vectors[u], &ch.vectors[v]));
        }
    }
    VectorColoring::new(vectors, cg.k.max(ch.k), cg.strict && ch.strict)
}

/// `(u, v) ↦ (g(u) + h(v)) mod m`, proper on `G □ H` whenever both inputs
/// are proper.
pub fn modular_coloring(gc: &ClassicalColoring, hc: &ClassicalColoring) -> Result<ClassicalColoring> {
    if gc.m != hc.m {
        return Err(Error::Domain(format!("color counts differ ({} vs {})", gc.m, hc.m)));
    }
    let m = gc.m;
    let colors = gc
        .colors
        .iter()
        .flat_map(|&a| hc.colors.iter().map(move |&b| (a + b) % m))
        .collect();
    ClassicalColoring::new(colors, m)
}
