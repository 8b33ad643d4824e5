use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::params::ParamResult;
use crate::sdp::Status;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone)]
pub enum Error {
    /// Input outside the domain of an operation (e.g. edgeless graph for a
    /// spectral bound, `k_target < k` for a lift).
    Domain(String),
    /// Shape mismatch between operands.
    Dimension { expected: usize, found: usize },
    /// Input exceeds a configured size limit.
    Capacity {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    /// Symmetric matrix failed the symmetry check on construction.
    NotSymmetric { row: usize, col: usize, asymmetry: f64 },
    /// Matrix has an eigenvalue below the allowed negative tolerance.
    NotPsd { min_eigenvalue: f64 },
    /// Iterative kernel did not converge.
    Numeric { what: &'static str, residual: f64 },
    /// Malformed SDP problem (overlapping constraint supports, bad indices...).
    Malformed(String),
    /// A constraint that a certificate or coloring must satisfy is violated.
    Infeasible { constraint: &'static str, residual: f64 },
    /// Vertex map is not a graph homomorphism; `edge` is the offending edge.
    NotHomomorphism { edge: (usize, usize) },
    /// SDP solve ended without an optimal status; the best iterate is attached.
    Solver { status: Status, partial: Box<ParamResult> },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Dimension { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Capacity { what, size, limit } => {
                write!(f, "{what} of size {size} exceeds the configured limit {limit}")
            }
            Error::NotSymmetric { row, col, asymmetry } => {
                write!(f, "matrix not symmetric at ({row}, {col}): asymmetry {asymmetry:e}")
            }
            Error::NotPsd { min_eigenvalue } => {
                write!(
                    f,
                    "matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})"
                )
            }
            Error::Numeric { what, residual } => {
                write!(f, "{what} did not converge (residual {residual:e})")
            }
            Error::Malformed(msg) => write!(f, "malformed problem: {msg}"),
            Error::Infeasible { constraint, residual } => {
                write!(f, "constraint `{constraint}` violated (residual {residual:e})")
            }
            Error::NotHomomorphism { edge: (u, v) } => {
                write!(f, "not a homomorphism: edge {u}-{v} is not mapped to an edge")
            }
            Error::Solver { status, partial } => write!(
                f,
                "SDP solver stopped with status {status:?} after {} iterations (gap {:e})",
                partial.iterations, partial.gap
            ),
        }
    }
}

impl core::error::Error for Error {}
