//! On-disk formats: edge lists for graphs, JSON for vector colorings and
//! quantum certificates. Writers and readers roundtrip exactly.

pub mod certificate;
pub mod coloring;
pub mod edgelist;

pub use certificate::{read_certificate, write_certificate, CertificateFile, GraphRef};
pub use coloring::{read_coloring, write_coloring, ColoringFile};
pub use edgelist::{parse_edge_list, write_edge_list};
