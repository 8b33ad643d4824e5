use chromvec_core::Error as CoreError;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Exit {
    Success = 0,
    Usage = 1,
    Solver = 2,
    Validation = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    #[error("{0}")]
    Usage(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Validation(String),
}

impl ToolError {
    pub fn exit(&self) -> Exit {
        match self {
            ToolError::Usage(_) => Exit::Usage,
            ToolError::Core(CoreError::Domain(_) | CoreError::Capacity { .. }) => Exit::Usage,
            ToolError::Core(CoreError::Solver { .. } | CoreError::Numeric { .. }) => Exit::Solver,
            ToolError::Io { .. } => Exit::Usage,
            _ => Exit::Validation,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        ToolError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
