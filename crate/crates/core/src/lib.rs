//! Vector chromatic number, strict vector chromatic number (the Lovász theta
//! function of the complement) and quantum-coloring certificates for finite
//! simple graphs.
//!
//! The crate is `no_std` and only needs an allocator. Everything here is a
//! pure computation on in-memory values; file formats, the command-line tool
//! and randomized suites live in the `chromvec` companion crate.
//!
//! Module map:
//!
//! * [`graph`]: dense graphs, named families (including the orthogonality
//!   graphs Ω_n), complement, edge union and the five graph products.
//! * [`linalg`]: dense symmetric/Hermitian kernels (Jacobi eigensolver,
//!   PSD projection, Gram factorization, Kronecker and Schur products).
//! * [`sdp`]: a first-order operator-splitting SDP solver and the builders
//!   for the ϑ̄ and χ_vec programs in primal and dual form.
//! * [`params`]: certified parameter values, spectral formulas, the exact
//!   1-homogeneity test and exact chromatic number.
//! * [`coloring`]: construction and verification of (strict) vector colorings.
//! * [`quantum`]: projective-measurement certificates for quantum
//!   homomorphisms and their product constructions.
//! * [`identities`]: Sabidussi/Hedetniemi-type identity checks on graph pairs.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod coloring;
mod error;
pub mod graph;
pub mod identities;
pub mod linalg;
pub mod params;
pub mod quantum;
pub mod sdp;

pub use error::{Error, Result};
pub use graph::{Family, Graph, ProductKind};
pub use linalg::{ComplexMatrix, Matrix, Spectrum, SymMatrix};
pub use params::{Method, ParamResult};
pub use sdp::{SdpProblem, SdpSolution, SolverConfig, Status};
