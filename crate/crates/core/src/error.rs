use alloc::string::String;
use core::fmt;

use crate::embed::KuratowskiCertificate;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: unknown ids, duplicate edges, loops, bad rotations.
    InvalidArgument(String),
    /// A documented precondition of an operation does not hold.
    ContractViolation(String),
    /// The graph has no planar embedding.
    NonPlanar(KuratowskiCertificate),
    /// Fewer check nodes than the construction supports.
    UnsupportedSize { checks: usize, required: usize },
    /// The design rate lies outside the range an operation covers.
    UnsupportedRate(String),
    /// The code has dimension zero.
    TrivialCode,
    /// The dual girth is too small for complete 3-graphs on `p` nodes.
    Girth { girth: Option<usize>, required: usize, p: usize },
    /// A transform step cannot be applied to the current graph.
    InvalidStep(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::ContractViolation(msg) => write!(f, "contract violation: {msg}"),
            Error::NonPlanar(cert) => write!(
                f,
                "graph is not planar ({:?} subdivision on {} edges)",
                cert.kind,
                cert.edges.len()
            ),
            Error::UnsupportedSize { checks, required } => write!(
                f,
                "unsupported size: {checks} check nodes, at least {required} required"
            ),
            Error::UnsupportedRate(msg) => write!(f, "unsupported rate: {msg}"),
            Error::TrivialCode => write!(f, "trivial code: dimension is zero"),
            Error::Girth { girth, required, p } => match girth {
                Some(g) => write!(f, "dual girth {g} is below {required}, needed for p = {p}"),
                None => write!(f, "dual is acyclic, girth {required} needed for p = {p}"),
            },
            Error::InvalidStep(msg) => write!(f, "invalid step: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::Error::InvalidArgument(alloc::format!($($arg)*))
    };
}

macro_rules! contract {
    ($($arg:tt)*) => {
        $crate::Error::ContractViolation(alloc::format!($($arg)*))
    };
}

pub(crate) use contract;
pub(crate) use invalid;
