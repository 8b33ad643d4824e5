//! Quantum homomorphism certificates as JSON.
//!
//! ```json
//! {"d": 1, "n_colors": 3, "graph": "cycle:5",
//!  "assignment": [[[[[1.0, 0.0]]], [[[0.0, 0.0]]], [[[0.0, 0.0]]]], ...]}
//! ```
//!
//! `assignment[v][c]` is the `d × d` part for color `c` at vertex `v`, as
//! rows of `[re, im]` pairs. `graph` and the optional `target` are either a
//! graph spec string (see [`crate::spec`]) or an inline `{"n", "edges"}`
//! object. Without `target` the target graph is `K_{n_colors}`.

use std::path::Path;

use chromvec_core::graph::{generate, Family};
use chromvec_core::linalg::{Complex64, ComplexMatrix};
use chromvec_core::quantum::{MeasurementTuple, QuantumHomomorphism};
use chromvec_core::Graph;
use serde::{Deserialize, Serialize};

use crate::spec::resolve_graph;
use crate::ToolError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    Spec(String),
    Inline {
        n: usize,
        edges: Vec<[usize; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
}

impl GraphRef {
    pub fn inline(g: &Graph) -> Self {
        GraphRef::Inline {
            n: g.order(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            label: g.label().map(str::to_string),
        }
    }

    /// Spec strings are resolved relative to `base`; `random:` specs use `seed`.
    pub fn resolve(&self, base: Option<&Path>, seed: u64) -> Result<Graph, ToolError> {
        match self {
            GraphRef::Spec(s) => Ok(resolve_graph(s, base, seed)?.0),
            GraphRef::Inline { n, edges, label } => {
                let pairs: Vec<(usize, usize)> = edges.iter().map(|&[u, v]| (u, v)).collect();
                if let Some(&(u, v)) = pairs.iter().find(|&&(u, v)| u == v || u >= *n || v >= *n) {
                    return Err(ToolError::Validation(format!(
                        "invalid edge ({u}, {v}) for {n} vertices"
                    )));
                }
                let g = Graph::from_edges(*n, &pairs)?;
                Ok(match label {
                    Some(l) => g.with_label(l.clone()),
                    None => g,
                })
            }
        }
    }
}

pub type Entry = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub d: usize,
    pub n_colors: usize,
    pub graph: GraphRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<GraphRef>,
    pub assignment: Vec<Vec<Vec<Vec<Entry>>>>,
}

fn is_default_target(g: &Graph) -> bool {
    generate(Family::Complete, g.order()).is_ok_and(|k| &k == g)
}

impl CertificateFile {
    /// Inline graphs; `target` is omitted when it equals the default `K_{n_colors}`.
    pub fn from_qhom(q: &QuantumHomomorphism) -> Self {
        let n_colors = q.target().order();
        let target = (!is_default_target(q.target())).then(|| GraphRef::inline(q.target()));
        let assignment = q
            .assignment()
            .iter()
            .map(|t| {
                t.parts()
                    .iter()
                    .map(|p| {
                        let d = p.order();
                        (0..d)
                            .map(|i| (0..d).map(|j| p.entries()[i * d + j]).map(|z| [z.re, z.im]).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        CertificateFile {
            d: q.d(),
            n_colors,
            graph: GraphRef::inline(q.source()),
            target,
            assignment,
        }
    }

    pub fn into_qhom(self, base: Option<&Path>, seed: u64) -> Result<QuantumHomomorphism, ToolError> {
        let source = self.graph.resolve(base, seed)?;
        let target = match &self.target {
            Some(t) => t.resolve(base, seed)?,
            None => generate(Family::Complete, self.n_colors)?,
        };
        let mismatch = |what: &str, expected: usize, found: usize| {
            ToolError::Validation(format!("{what}: expected {expected}, found {found}"))
        };
        if target.order() != self.n_colors {
            return Err(mismatch("target order", self.n_colors, target.order()));
        }
        if self.assignment.len() != source.order() {
            return Err(mismatch("assignment length", source.order(), self.assignment.len()));
        }
        let d = self.d;
        let mut tuples = Vec::with_capacity(self.assignment.len());
        for (v, parts) in self.assignment.into_iter().enumerate() {
            if parts.len() != self.n_colors {
                return Err(mismatch(&format!("parts at vertex {v}"), self.n_colors, parts.len()));
            }
            let mut matrices = Vec::with_capacity(parts.len());
            for (c, rows) in parts.into_iter().enumerate() {
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return Err(ToolError::Validation(format!("part ({v}, {c}) is not {d} × {d}")));
                }
                let entries: Vec<Complex64> = rows
                    .into_iter()
                    .flatten()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect();
                if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                    return Err(ToolError::Validation(format!("part ({v}, {c}) has a non-finite entry")));
                }
                matrices.push(ComplexMatrix::from_entries(d, entries)?);
            }
            tuples.push(MeasurementTuple::new(matrices)?);
        }
        if d == 0 && !tuples.is_empty() {
            return Err(ToolError::Validation("dimension d must be positive".into()));
        }
        Ok(QuantumHomomorphism::new(source, target, tuples)?)
    }
}

pub fn write_certificate(q: &QuantumHomomorphism) -> String {
    serde_json::to_string(&CertificateFile::from_qhom(q)).expect("certificate serializes")
}

pub fn read_certificate(text: &str, base: Option<&Path>, seed: u64) -> Result<QuantumHomomorphism, ToolError> {
    serde_json::from_str::<CertificateFile>(text)?.into_qhom(base, seed)
}
