//! Graph specs accepted wherever the CLI takes a graph.
//!
//! `complete:N`, `cycle:N`, `path:N`, `empty:N`, `omega:N`, `petersen` and
//! `random:N` name generated graphs; anything else is an edge-list file.

use std::path::{Path, PathBuf};

use chromvec_core::graph::{generate, Family};
use chromvec_core::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::corpus::erdos_renyi;
use crate::formats::parse_edge_list;
use crate::ToolError;

/// How a graph entered a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDescriptor {
    pub name: String,
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
}

impl GraphDescriptor {
    pub fn of(name: impl Into<String>, g: &Graph) -> Self {
        GraphDescriptor {
            name: name.into(),
            n: g.order(),
            m: g.edge_count(),
            sha256: None,
        }
    }
}

fn parse_size(spec: &str, text: &str) -> Result<usize, ToolError> {
    text.parse()
        .map_err(|_| ToolError::Usage(format!("graph spec `{spec}`: `{text}` is not a vertex count")))
}

/// Parses a named spec, or returns `None` when `spec` is not one.
pub fn named_graph(spec: &str, seed: u64) -> Result<Option<Graph>, ToolError> {
    if spec.eq_ignore_ascii_case("petersen") {
        return Ok(Some(generate(Family::Petersen, 10)?));
    }
    let Some((family, size)) = spec.split_once(':') else {
        return Ok(None);
    };
    if family.eq_ignore_ascii_case("random") {
        let n = parse_size(spec, size)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return Ok(Some(erdos_renyi(n, 0.5, &mut rng).with_label(format!("random:{n}"))));
    }
    match family.parse::<Family>() {
        Ok(f) => Ok(Some(generate(f, parse_size(spec, size)?)?)),
        Err(_) => Ok(None),
    }
}

/// Resolves a spec or an edge-list path (relative paths against `base`).
pub fn resolve_graph(spec: &str, base: Option<&Path>, seed: u64) -> Result<(Graph, GraphDescriptor), ToolError> {
    if let Some(g) = named_graph(spec, seed)? {
        let d = GraphDescriptor::of(spec, &g);
        return Ok((g, d));
    }
    let path = match base {
        Some(b) if Path::new(spec).is_relative() => b.join(spec),
        _ => PathBuf::from(spec),
    };
    let bytes = std::fs::read(&path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            ToolError::Usage(format!("`{spec}` is neither a graph spec nor a readable file"))
        } else {
            ToolError::io(&path, e)
        }
    })?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| ToolError::Validation(format!("{}: not UTF-8 text", path.display())))?;
    let g = parse_edge_list(&text).map_err(|e| match e {
        ToolError::Parse { line, message } => ToolError::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })?;
    let mut d = GraphDescriptor::of(spec, &g);
    d.sha256 = Some(hex::encode(Sha256::digest(&bytes)));
    Ok((g, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_specs() {
        assert_eq!(named_graph("cycle:5", 0).unwrap().unwrap().edge_count(), 5);
        assert_eq!(named_graph("Petersen", 0).unwrap().unwrap().order(), 10);
        assert_eq!(named_graph("omega:4", 0).unwrap().unwrap().order(), 16);
        assert!(named_graph("graph.txt", 0).unwrap().is_none());
        assert!(named_graph("cycle:x", 0).is_err());
        assert!(named_graph("omega:30", 0).is_err());
        let a = named_graph("random:8", 3).unwrap().unwrap();
        assert_eq!(a, named_graph("random:8", 3).unwrap().unwrap());
    }

    #[test]
    fn files_carry_a_hash() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("k2.txt"), "2 1\n0 1\n").unwrap();
        let (g, d) = resolve_graph("k2.txt", Some(dir.path()), 0).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(d.sha256.as_deref().map(str::len), Some(64));
        assert!(matches!(
            resolve_graph("missing.txt", Some(dir.path()), 0),
            Err(ToolError::Usage(_))
        ));
    }
}
