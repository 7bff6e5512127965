use thiserror::Error;

/// Errors raised by relation algebra, complex construction and file parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("{side} labels: expected {expected}, found {found}")]
    LabelCount {
        side: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("label mismatch: {0}")]
    LabelMismatch(String),

    #[error("not a self-relation: source and target labels differ")]
    NotSelfRelation,

    #[error("relation does not converge: eventual period is {period}, R^inf needs period 1")]
    NotConvergent { period: usize },

    #[error("relation is not strongly connected")]
    NotStronglyConnected,

    #[error("relation has no cycle")]
    NoCycle,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("simplex must be nonempty")]
    EmptySimplex,

    #[error("complexes are built over different vertex universes")]
    UniverseMismatch,

    #[error("map is not defined on `{0}`")]
    IncompleteMap(String),

    #[error("map is not bijective")]
    NotBijective,

    #[error("hypothesis fails: Dom R ≠ X (no successor: {}){}", missing.join(", "), broken_suffix(*broken_at))]
    NotTotal {
        missing: Vec<String>,
        broken_at: Option<usize>,
    },

    #[error("hypothesis fails: Ima R ≠ X (no predecessor: {}){}", missing.join(", "), broken_suffix(*broken_at))]
    NotSurjective {
        missing: Vec<String>,
        broken_at: Option<usize>,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn broken_suffix(broken_at: Option<usize>) -> String {
    match broken_at {
        Some(i) => format!("; inclusion breaks between powers {} and {}", i, i + 1),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
