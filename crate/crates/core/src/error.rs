use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid token `{0}`: expected letters, digits or underscores")]
    InvalidToken(String),
    #[error("node id `{0}` contains the reserved separator `__`")]
    ReservedSeparator(String),
    #[error("color `{0}` must not begin with an underscore")]
    LeadingUnderscoreColor(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("duplicate color `{0}`")]
    DuplicateColor(String),
    #[error("duplicate edge `{0}` -> `{1}`")]
    DuplicateEdge(String, String),
    #[error("undeclared node `{0}`")]
    UnknownNode(String),
    #[error("undeclared color `{0}`")]
    UnknownColor(String),
    #[error("node `{0}` has an empty color set")]
    EmptyColorSet(String),
    #[error("probabilities must be given on all edges or on none")]
    PartialProbabilities,

    #[error("operation requires a single-colored model")]
    MultiColored,
    #[error("model has {nodes} nodes; the limit for this operation is {limit}")]
    TooLarge { nodes: usize, limit: usize },
    #[error("search space {colors}^{t_max} exceeds the limit of {limit} color sequences")]
    SearchTooLarge { colors: usize, t_max: usize, limit: u64 },
    #[error("hypothesis enumeration is unavailable after layers were dropped")]
    EnumerationUnavailable,

    #[error("model has no transition probabilities")]
    NoProbabilities,
    #[error("probability {prob} on edge `{from}` -> `{to}` is not in (0, 1]")]
    BadProbability { from: String, to: String, prob: f64 },
    #[error("probability given for `{0}` -> `{1}`, which is not an edge")]
    ProbabilityOnNonEdge(String, String),
    #[error("edge `{0}` -> `{1}` has no probability")]
    MissingProbability(String, String),
    #[error("outgoing probabilities of `{node}` sum to {sum}")]
    RowSum { node: String, sum: f64 },
    #[error("node set is not a recurrent class")]
    NotRecurrentClass,
    #[error("state `{from}` cannot reach `{target}`")]
    Unreachable { from: String, target: String },
    #[error("no node sequence is consistent with the observed colors")]
    NoConsistentPath,
    #[error("linear system is singular")]
    Singular,

    #[error("fit needs at least 3 usable rows, found {0}")]
    TooFewRows(usize),
    #[error("error probability does not decay with lag (slope {0})")]
    NoDecay(f64),
    #[error("invalid experiment configuration: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("{path}: {source}")]
    InFile { path: String, source: Box<Error> },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
