use thiserror::Error;

use crate::alliance::AllianceReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph has no edges")]
    NoEdges,
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParameters(String),
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("set universe {set} does not match graph order {graph}")]
    UniverseMismatch { set: usize, graph: usize },
    #[error("alliances are defined for nonempty sets only")]
    EmptySet,
    #[error("r = {r} outside admissible range [{lo}, {hi}]")]
    ROutOfRange { r: i64, lo: i64, hi: i64 },
    #[error("exact solvers refuse graphs with n = {n} > {limit} without an explicit override")]
    TooLarge { n: usize, limit: usize },
    #[error("search exceeded its deadline")]
    Timeout,
    #[error("oracle integrity failure: {0}")]
    OracleIntegrity(String),
    #[error("power iteration did not converge (best residual {residual:e})")]
    NonConvergence { residual: f64 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{bound} is inapplicable: {reason}")]
    Inapplicable { bound: &'static str, reason: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("gadget would have {size} vertices, budget is {budget}")]
    BudgetExceeded { size: usize, budget: usize },
    #[error("invalid source certificate: {0}")]
    InvalidCertificate(String),
    #[error("constructed set failed certification: {0:?}")]
    Uncertified(Box<AllianceReport>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
