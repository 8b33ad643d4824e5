//! Quantum homomorphism certificates.
//!
//! A measurement tuple over a graph `H` is a family `(E_v)_{v ∈ V(H)}` of
//! `d × d` orthogonal projectors summing to the identity. Two tuples `E`,
//! `E′` are adjacent in the measurement graph `M(H, d)` when
//! `E_v E′_{v′} = 0` for every pair `v ≁ v′`, including `v = v′`. A quantum
//! homomorphism `G → H` is a homomorphism `G → M(H, d)`.
//!
//! Structural conditions are checked at `tol`; products of two projectors
//! (orthogonality and adjacency) at [`PRODUCT_TOL_FACTOR`]`·tol`.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::graph::{pair_index, product, Graph, ProductKind};
use crate::linalg::ComplexMatrix;
use crate::{Error, Result};

/// Default structural tolerance.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Products of two ε-accurate projectors are checked at this multiple of ε.
pub const PRODUCT_TOL_FACTOR: f64 = 10.0;

/// An orthogonal projector: Hermitian and idempotent within the tolerance it
/// was checked against.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector(ComplexMatrix);

impl Projector {
    pub fn new(m: ComplexMatrix, tol: f64) -> Result<Self> {
        let hermitian = m.max_diff(&m.adjoint());
        if hermitian > tol {
            return Err(Error::Infeasible {
                constraint: "hermitian",
                residual: hermitian,
            });
        }
        let idempotent = m.mul(&m).max_diff(&m);
        if idempotent > tol {
            return Err(Error::Infeasible {
                constraint: "idempotent",
                residual: idempotent,
            });
        }
        Ok(Projector(m))
    }

    /// `vv†/‖v‖²` for a nonzero vector `v`.
    pub fn onto(v: &[Complex64]) -> Result<Self> {
        let r2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if !(r2 > 0.0) || !r2.is_finite() {
            return Err(Error::Domain("projector onto a zero or non-finite vector".into()));
        }
        Ok(Projector(ComplexMatrix::rank_one(v).scale(1.0 / r2)))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }
}

/// One part per vertex of the target graph, all of order `d`. Parts are not
/// validated on construction; [`verify_measurement`] reports on them.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementTuple {
    parts: Vec<ComplexMatrix>,
    d: usize,
}

impl MeasurementTuple {
    pub fn new(parts: Vec<ComplexMatrix>) -> Result<Self> {
        let d = parts.first().map_or(0, ComplexMatrix::order);
        if let Some(p) = parts.iter().find(|p| p.order() != d) {
            return Err(Error::Dimension {
                expected: d,
                found: p.order(),
            });
        }
        Ok(MeasurementTuple { parts, d })
    }

    /// `d = 1` tuple with a single 1 at `color`.
    pub fn indicator(n_colors: usize, color: usize) -> Result<Self> {
        if color >= n_colors {
            return Err(Error::Domain(format!("color {color} outside 0..{n_colors}")));
        }
        let parts = (0..n_colors)
            .map(|c| {
                if c == color {
                    ComplexMatrix::identity(1)
                } else {
                    ComplexMatrix::zeros(1)
                }
            })
            .collect();
        Ok(MeasurementTuple { parts, d: 1 })
    }

    pub fn parts(&self) -> &[ComplexMatrix] {
        &self.parts
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of parts, i.e. the order of the target graph.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MeasurementReport {
    pub pass: bool,
    /// `max_v ‖E_v − E_v†‖_max`.
    pub hermitian: f64,
    /// `max_v ‖E_v² − E_v‖_max`.
    pub idempotent: f64,
    /// `‖Σ_v E_v − I‖_max`.
    pub sum_identity: f64,
    /// `max_{v ≠ v′} ‖E_v E_{v′}‖_max`.
    pub orthogonality: f64,
}

impl MeasurementReport {
    /// Name and residual of the first failing condition.
    pub fn failure(&self, tol: f64) -> Option<(&'static str, f64)> {
        [
            ("hermitian", self.hermitian, tol),
            ("idempotent", self.idempotent, tol),
            ("sum to identity", self.sum_identity, tol),
            ("orthogonality", self.orthogonality, PRODUCT_TOL_FACTOR * tol),
        ]
        .into_iter()
        .find(|&(_, r, t)| !(r <= t))
        .map(|(name, r, _)| (name, r))
    }
}

pub fn verify_measurement(t: &MeasurementTuple, tol: f64) -> MeasurementReport {
    let mut r = MeasurementReport::default();
    let mut sum = ComplexMatrix::zeros(t.d);
    for (i, e) in t.parts.iter().enumerate() {
        r.hermitian = r.hermitian.max(e.max_diff(&e.adjoint()));
        r.idempotent = r.idempotent.max(e.mul(e).max_diff(e));
        sum = sum.add(e);
        for f in &t.parts[i + 1..] {
            r.orthogonality = r.orthogonality.max(e.product_max_norm(f)).max(f.product_max_norm(e));
        }
    }
    r.sum_identity = sum.max_diff(&ComplexMatrix::identity(t.d));
    r.pass = r.failure(tol).is_none();
    r
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjacencyCheck {
    pub adjacent: bool,
    /// First non-adjacent pair `(v, v′)` of target vertices with
    /// `E_v E′_{v′} ≠ 0` or `E′_{v′} E_v ≠ 0`.
    pub witness: Option<(usize, usize)>,
    pub residual: f64,
}

/// Adjacency of `t1` and `t2` in `M(h, d)`, checking both product orders.
pub fn measurement_adjacent(
    t1: &MeasurementTuple,
    t2: &MeasurementTuple,
    h: &Graph,
    tol: f64,
) -> Result<AdjacencyCheck> {
    let n = h.order();
    if t1.len() != n || t2.len() != n {
        return Err(Error::Domain(format!(
            "tuples with {} and {} parts do not index a {n}-vertex target",
            t1.len(),
            t2.len()
        )));
    }
    if t1.d != t2.d {
        return Err(Error::Domain(format!("tuple dimensions differ ({} vs {})", t1.d, t2.d)));
    }
    let mut check = AdjacencyCheck {
        adjacent: true,
        witness: None,
        residual: 0.0,
    };
    for v in 0..n {
        for w in 0..n {
            if h.has_edge(v, w) {
                continue;
            }
            let (a, b) = (&t1.parts[v], &t2.parts[w]);
            let r = a.product_max_norm(b).max(b.product_max_norm(a));
            check.residual = check.residual.max(r);
            if !(r <= tol) && check.witness.is_none() {
                check.witness = Some((v, w));
                check.adjacent = false;
            }
        }
    }
    Ok(check)
}

/// An assignment of measurement tuples over `target` to the vertices of
/// `source`, all of dimension `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumHomomorphism {
    source: Graph,
    target: Graph,
    d: usize,
    assignment: Vec<MeasurementTuple>,
}

impl QuantumHomomorphism {
    pub fn new(source: Graph, target: Graph, assignment: Vec<MeasurementTuple>) -> Result<Self> {
        if assignment.len() != source.order() {
            return Err(Error::Dimension {
                expected: source.order(),
                found: assignment.len(),
            });
        }
        if let Some(t) = assignment.iter().find(|t| t.len() != target.order()) {
            return Err(Error::Dimension {
                expected: target.order(),
                found: t.len(),
            });
        }
        let d = assignment.first().map_or(1, |t| t.d);
        if let Some(t) = assignment.iter().find(|t| t.d != d) {
            return Err(Error::Dimension {
                expected: d,
                found: t.d,
            });
        }
        Ok(QuantumHomomorphism {
            source,
            target,
            d,
            assignment,
        })
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn assignment(&self) -> &[MeasurementTuple] {
        &self.assignment
    }

    /// Same certificate with every part replaced by `E ⊗ I_m`.
    pub fn tensor_identity(&self, m: usize) -> Self {
        let id = ComplexMatrix::identity(m);
        self.map_parts(self.d * m, |e| e.kron(&id))
    }

    /// Same certificate with every part replaced by `U E U†`; valid input
    /// stays valid when `U` is unitary.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.order() != self.d {
            return Err(Error::Dimension {
                expected: self.d,
                found: u.order(),
            });
        }
        Ok(self.map_parts(self.d, |e| e.conjugate_by(u)))
    }

    fn map_parts(&self, d: usize, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Self {
        let assignment = self
            .assignment
            .iter()
            .map(|t| MeasurementTuple {
                parts: t.parts.iter().map(&f).collect(),
                d,
            })
            .collect();
        QuantumHomomorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            d,
            assignment,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuantumWitness {
    /// The tuple at `vertex` fails a structural condition.
    Measurement {
        vertex: usize,
        condition: &'static str,
        residual: f64,
    },
    /// The tuples at the ends of `edge` are not adjacent; `pair` is the
    /// offending target pair.
    Edge {
        edge: (usize, usize),
        pair: (usize, usize),
        residual: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumReport {
    pub pass: bool,
    /// First failure, vertices before edges.
    pub witness: Option<QuantumWitness>,
    /// Worst structural residual over all tuples.
    pub measurement_residual: f64,
    /// Worst adjacency residual over all edges.
    pub adjacency_residual: f64,
}

pub fn verify_quantum_hom(q: &QuantumHomomorphism, tol: f64) -> QuantumReport {
    let mut report = QuantumReport {
        pass: true,
        witness: None,
        measurement_residual: 0.0,
        adjacency_residual: 0.0,
    };
    for (vertex, t) in q.assignment.iter().enumerate() {
        let r = verify_measurement(t, tol);
        report.measurement_residual = report
            .measurement_residual
            .max(r.hermitian)
            .max(r.idempotent)
            .max(r.sum_identity)
            .max(r.orthogonality);
        if let (Some((condition, residual)), None) = (r.failure(tol), &report.witness) {
            report.witness = Some(QuantumWitness::Measurement {
                vertex,
                condition,
                residual,
            });
        }
    }
    for (u, w) in q.source.edges() {
        let check = measurement_adjacent(&q.assignment[u], &q.assignment[w], &q.target, PRODUCT_TOL_FACTOR * tol)
            .expect("dimensions validated on construction");
        report.adjacency_residual = report.adjacency_residual.max(check.residual);
        if let (Some(pair), None) = (check.witness, &report.witness) {
            report.witness = Some(QuantumWitness::Edge {
                edge: (u, w),
                pair,
                residual: check.residual,
            });
        }
    }
    report.pass = report.witness.is_none();
    report
}

/// The `d = 1` certificate of a classical homomorphism `f: G → H`.
pub fn classical_embedding(g: &Graph, h: &Graph, f: &[usize]) -> Result<QuantumHomomorphism> {
    g.check_homomorphism(h, f)?;
    let assignment = f
        .iter()
        .map(|&c| MeasurementTuple::indicator(h.order(), c))
        .collect::<Result<_>>()?;
    QuantumHomomorphism::new(g.clone(), h.clone(), assignment)
}

/// `(u, v) ↦ (φ¹(u)_w ⊗ φ²(v)_z)_{(w, z)}`, a quantum homomorphism
/// `G ∘ H → F ∘ K` of dimension `d₁d₂` for each product `∘`.
pub fn product_qhom(kind: ProductKind, q1: &QuantumHomomorphism, q2: &QuantumHomomorphism) -> QuantumHomomorphism {
    let nk = q2.target.order();
    let mut assignment = Vec::with_capacity(q1.source.order() * q2.source.order());
    for t1 in &q1.assignment {
        for t2 in &q2.assignment {
            let mut parts = Vec::with_capacity(t1.len() * nk);
            for (w, a) in t1.parts.iter().enumerate() {
                for (z, b) in t2.parts.iter().enumerate() {
                    debug_assert_eq!(pair_index(w, z, nk), parts.len());
                    parts.push(a.kron(b));
                }
            }
            assignment.push(MeasurementTuple { parts, d: q1.d * q2.d });
        }
    }
    QuantumHomomorphism {
        source: product(kind, &q1.source, &q2.source),
        target: product(kind, &q1.target, &q2.target),
        d: q1.d * q2.d,
        assignment,
    }
}

/// Follows `q: G → M(H, d)` by a classical homomorphism `f: H → K`, merging
/// parts: `E′_c = Σ_{f(h) = c} E_h`.
pub fn compose_classical(q: &QuantumHomomorphism, k: &Graph, f: &[usize]) -> Result<QuantumHomomorphism> {
    q.target.check_homomorphism(k, f)?;
    let assignment = q
        .assignment
        .iter()
        .map(|t| {
            let mut parts = alloc::vec![ComplexMatrix::zeros(q.d); k.order()];
            for (h, e) in t.parts.iter().enumerate() {
                parts[f[h]] = parts[f[h]].add(e);
            }
            MeasurementTuple { parts, d: q.d }
        })
        .collect();
    QuantumHomomorphism::new(q.source.clone(), k.clone(), assignment)
}

fn complete_order(g: &Graph) -> Result<usize> {
    if g.is_complete() {
        Ok(g.order())
    } else {
        Err(Error::Domain("target is not a complete graph".into()))
    }
}

/// Promotes a quantum n-coloring to `n_colors ≥ n` colors with zero parts.
pub fn pad_colors(q: &QuantumHomomorphism, n_colors: usize) -> Result<QuantumHomomorphism> {
    let n = complete_order(&q.target)?;
    if n_colors < n {
        return Err(Error::Domain(format!("cannot pad {n} colors down to {n_colors}")));
    }
    let f: Vec<usize> = (0..n).collect();
    compose_classical(q, &crate::graph::generate(crate::Family::Complete, n_colors)?, &f)
}

/// Quantum n-colorings of `G` and `H` give one of `G □ H`: the Cartesian
/// tensor certificate into `K_n □ K_n`, followed by `(w, z) ↦ (w + z) mod n`.
pub fn quantum_sabidussi(q1: &QuantumHomomorphism, q2: &QuantumHomomorphism) -> Result<QuantumHomomorphism> {
    let n = complete_order(&q1.target)?;
    let m = complete_order(&q2.target)?;
    if n != m {
        return Err(Error::Domain(format!(
            "color counts differ ({n} vs {m}); pad the smaller coloring first"
        )));
    }
    let p = product_qhom(ProductKind::Cartesian, q1, q2);
    let f: Vec<usize> = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    compose_classical(&p, &q1.target, &f)
}
