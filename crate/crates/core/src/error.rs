use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// One exemplar (or row) that made a dataset infeasible, with the offending
/// quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Offender {
    /// Zero-based position in the input.
    pub index: usize,
    pub label: String,
    pub value: f64,
}

impl fmt::Display for Offender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{} {} ({:e})", self.index + 1, self.label, self.value)
    }
}

struct OffenderList<'a>(&'a [Offender]);

impl fmt::Display for OffenderList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, o) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{o}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("data error: {0}")]
    Data(String),
    /// Input that is well formed but carries no information (all-zero
    /// counts, zero denominators).
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// The data cannot be represented by the requested construction.
    #[error("infeasible: {reason}: {}", OffenderList(.offenders))]
    Infeasible {
        reason: String,
        offenders: Vec<Offender>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Data,
    Degenerate,
    Infeasible,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Data(_) => ErrorKind::Data,
            Error::Degenerate(_) => ErrorKind::Degenerate,
            Error::Infeasible { .. } => ErrorKind::Infeasible,
        }
    }

    pub(crate) fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }
}
