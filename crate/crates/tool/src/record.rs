//! The JSON record every command emits.

use chromvec_core::identities::{IdentityCheck, Relation, SolveRecord, SuiteOutcome};
use chromvec_core::params::{OneHomReport, OneHomWitness};
use chromvec_core::quantum::{QuantumReport, QuantumWitness};
use chromvec_core::ParamResult;
use serde::{Deserialize, Serialize};

use crate::spec::GraphDescriptor;
use crate::Exit;

pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything needed to rerun a command with identical output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigSnapshot {
    pub tol: f64,
    pub gap_tol: f64,
    pub max_iter: usize,
    pub cap: usize,
    pub chromatic_cap: usize,
    pub seed: u64,
    /// Tolerance applied to identity, coloring or certificate checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterEntry {
    pub graph: String,
    pub parameter: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    /// Set when an exact search stopped at this limit without a coloring.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceeds_limit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<usize>>,
}

impl ParameterEntry {
    pub fn bare(graph: &str, parameter: &str, status: &str) -> Self {
        ParameterEntry {
            graph: graph.into(),
            parameter: parameter.into(),
            status: status.into(),
            value: None,
            lower: None,
            upper: None,
            gap: None,
            method: None,
            iterations: None,
            exceeds_limit: None,
            coloring: None,
        }
    }

    pub fn from_result(graph: &str, parameter: &str, status: &str, r: &ParamResult) -> Self {
        ParameterEntry {
            value: Some(r.value),
            lower: Some(r.lower),
            upper: Some(r.upper),
            gap: Some(r.gap),
            method: Some(r.method.name().into()),
            iterations: Some(r.iterations),
            ..Self::bare(graph, parameter, status)
        }
    }

    pub fn from_solve(s: &SolveRecord) -> Self {
        ParameterEntry {
            value: Some(0.5 * (s.lower + s.upper)),
            lower: Some(s.lower),
            upper: Some(s.upper),
            gap: Some(s.gap),
            method: Some(s.method.name().into()),
            iterations: Some(s.iterations),
            ..Self::bare("", &s.subject, "optimal")
        }
    }

    pub fn exact(graph: &str, parameter: &str, value: f64) -> Self {
        ParameterEntry {
            value: Some(value),
            method: Some("exact".into()),
            ..Self::bare(graph, parameter, "complete")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    /// `"equal"` or `"at-most"`.
    pub relation: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
}

impl CheckEntry {
    pub fn from_identity(c: &IdentityCheck, subject: Option<String>) -> Self {
        CheckEntry {
            name: c.name.clone(),
            relation: match c.relation {
                Relation::Equal => "equal",
                Relation::AtMost => "at-most",
            }
            .into(),
            lhs: c.lhs,
            rhs: c.rhs,
            residual: c.residual,
            tolerance: c.tolerance,
            pass: c.pass,
            subject,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkEntry {
    pub k: usize,
    /// Decimal; counts can exceed 64 bits.
    pub b: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessEntry {
    /// `"vertex"` or `"edge"`.
    pub kind: String,
    pub k: usize,
    pub at: Vec<usize>,
    pub expected: String,
    pub found: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneHomEntry {
    pub graph: String,
    pub is_one_homogeneous: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal_polynomial_degree: Option<usize>,
    pub constants: Vec<WalkEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessEntry>,
}

impl OneHomEntry {
    pub fn new(graph: &str, r: &OneHomReport) -> Self {
        let witness = r.failing_witness.as_ref().map(|w| {
            let message = w.to_string();
            match w {
                OneHomWitness::Vertex {
                    k,
                    vertex,
                    expected,
                    found,
                } => WitnessEntry {
                    kind: "vertex".into(),
                    k: *k,
                    at: vec![*vertex],
                    expected: expected.to_string(),
                    found: found.to_string(),
                    message,
                },
                OneHomWitness::Edge {
                    k,
                    edge,
                    expected,
                    found,
                } => WitnessEntry {
                    kind: "edge".into(),
                    k: *k,
                    at: vec![edge.0, edge.1],
                    expected: expected.to_string(),
                    found: found.to_string(),
                    message,
                },
            }
        });
        OneHomEntry {
            graph: graph.into(),
            is_one_homogeneous: r.is_one_homogeneous,
            minimal_polynomial_degree: r.minimal_polynomial_degree,
            constants: r
                .constants
                .iter()
                .map(|c| WalkEntry {
                    k: c.k,
                    b: c.b.to_string(),
                    c: c.c.as_ref().map(ToString::to_string),
                })
                .collect(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumEntry {
    pub d: usize,
    pub n_colors: usize,
    pub pass: bool,
    pub measurement_residual: f64,
    pub adjacency_residual: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Vertex named by a measurement witness.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_vertex: Option<usize>,
    /// Failed condition: `hermitian`, `idempotent`, `sum-to-identity`,
    /// `orthogonality` or `adjacency`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_condition: Option<String>,
}

impl QuantumEntry {
    pub fn new(d: usize, n_colors: usize, r: &QuantumReport, tolerance: f64) -> Self {
        let (witness, witness_vertex, witness_condition) = match &r.witness {
            None => (None, None, None),
            Some(QuantumWitness::Measurement {
                vertex,
                condition,
                residual,
            }) => (
                Some(format!("vertex {vertex}: {condition} violated by {residual:e}")),
                Some(*vertex),
                Some(condition.replace(' ', "-")),
            ),
            Some(QuantumWitness::Edge { edge, pair, residual }) => (
                Some(format!(
                    "edge ({}, {}): parts for non-adjacent colors ({}, {}) have product norm {residual:e}",
                    edge.0, edge.1, pair.0, pair.1
                )),
                None,
                Some("adjacency".into()),
            ),
        };
        QuantumEntry {
            d,
            n_colors,
            pass: r.pass,
            measurement_residual: r.measurement_residual,
            adjacency_residual: r.adjacency_residual,
            tolerance,
            witness,
            witness_vertex,
            witness_condition,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColoringEntry {
    pub k: f64,
    pub strict: bool,
    pub dim: usize,
    pub pass: bool,
    pub worst_residual: f64,
    pub norm_residual: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_edge: Option<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Unix seconds; not part of the determinism contract.
    pub timestamp: u64,
    pub config: ConfigSnapshot,
    pub graphs: Vec<GraphDescriptor>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<ParameterEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub onehom: Vec<OneHomEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantum: Option<QuantumEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringEntry>,
    pub pass: bool,
    pub exit_code: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunRecord {
    pub fn new(command: impl Into<String>, config: ConfigSnapshot) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        RunRecord {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            command: command.into(),
            timestamp,
            config,
            graphs: Vec::new(),
            parameters: Vec::new(),
            checks: Vec::new(),
            onehom: Vec::new(),
            quantum: None,
            coloring: None,
            pass: true,
            exit_code: Exit::Success as u8,
            error: None,
        }
    }

    /// Appends a suite's checks and solves, tagging both with `subject`.
    pub fn add_suite(&mut self, subject: &str, outcome: &SuiteOutcome) {
        for s in &outcome.solves {
            let mut e = ParameterEntry::from_solve(s);
            e.graph = subject.into();
            self.parameters.push(e);
        }
        self.checks.extend(
            outcome
                .checks
                .iter()
                .map(|c| CheckEntry::from_identity(c, Some(subject.into()))),
        );
    }

    /// Recomputes `pass` from the checks and sections, and the exit code
    /// unless an error already set one.
    pub fn finish(&mut self) {
        let quantum = self.quantum.as_ref().map_or(true, |q| q.pass);
        let coloring = self.coloring.as_ref().map_or(true, |c| c.pass);
        self.pass = self.error.is_none() && quantum && coloring && self.checks.iter().all(|c| c.pass);
        if self.exit_code == Exit::Success as u8 && !self.pass {
            self.exit_code = Exit::Validation as u8;
        }
    }

    /// Fails on any non-finite number.
    pub fn to_json(&self) -> Result<String, crate::ToolError> {
        if numbers(self).iter().any(|x| !x.is_finite()) {
            return Err(crate::ToolError::Validation(
                "record contains a non-finite number".into(),
            ));
        }
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn numbers(r: &RunRecord) -> Vec<f64> {
    let mut nums: Vec<f64> = vec![r.config.tol, r.config.gap_tol];
    nums.extend(r.config.check_tol);
    for p in &r.parameters {
        nums.extend([p.value, p.lower, p.upper, p.gap].into_iter().flatten());
    }
    for c in &r.checks {
        nums.extend([c.lhs, c.rhs, c.residual, c.tolerance]);
    }
    if let Some(q) = &r.quantum {
        nums.extend([q.measurement_residual, q.adjacency_residual, q.tolerance]);
    }
    if let Some(c) = &r.coloring {
        nums.extend([c.k, c.worst_residual, c.norm_residual, c.tolerance]);
    }
    nums
}
