//! Vector coloring JSON: `{"k", "strict", "dim", "vectors"}` with one vector
//! per vertex in index order.

use chromvec_core::coloring::VectorColoring;
use serde::{Deserialize, Serialize};

use crate::ToolError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringFile {
    pub k: f64,
    pub strict: bool,
    pub dim: usize,
    pub vectors: Vec<Vec<f64>>,
}

impl From<&VectorColoring> for ColoringFile {
    fn from(c: &VectorColoring) -> Self {
        ColoringFile {
            k: c.k(),
            strict: c.is_strict(),
            dim: c.dim(),
            vectors: c.vectors().to_vec(),
        }
    }
}

impl ColoringFile {
    pub fn into_coloring(self) -> Result<VectorColoring, ToolError> {
        if let Some(v) = self.vectors.iter().find(|v| v.len() != self.dim) {
            return Err(ToolError::Validation(format!(
                "coloring declares dim {} but has a vector of length {}",
                self.dim,
                v.len()
            )));
        }
        Ok(VectorColoring::new(self.vectors, self.k, self.strict)?)
    }
}

pub fn write_coloring(c: &VectorColoring) -> String {
    serde_json::to_string_pretty(&ColoringFile::from(c)).expect("coloring serializes")
}

pub fn read_coloring(text: &str) -> Result<VectorColoring, ToolError> {
    serde_json::from_str::<ColoringFile>(text)?.into_coloring()
}
