use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate constraint: the linear form is identically zero")]
    DegenerateConstraint,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unsupported fragment: {0}")]
    Unsupported(String),

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Caps on the exponential parts of the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_dim: usize,
    pub max_rows: usize,
    pub max_hyperplanes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: 6,
            max_rows: 40,
            max_hyperplanes: 14,
        }
    }
}

impl Limits {
    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if dim > self.max_dim {
            return Err(Error::Resource(format!(
                "ambient dimension {dim} exceeds the cap of {}",
                self.max_dim
            )));
        }
        Ok(())
    }

    pub fn check_rows(&self, rows: usize) -> Result<()> {
        if rows > self.max_rows {
            return Err(Error::Resource(format!(
                "{rows} constraints exceed the cap of {}",
                self.max_rows
            )));
        }
        Ok(())
    }

    pub fn check_hyperplanes(&self, count: usize) -> Result<()> {
        if count > self.max_hyperplanes {
            return Err(Error::Resource(format!(
                "{count} distinct hyperplanes exceed the cap of {}",
                self.max_hyperplanes
            )));
        }
        Ok(())
    }
}
