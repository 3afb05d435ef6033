use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("empty source")]
    EmptySource,
    #[error("empty vertex set")]
    EmptySet,
    #[error("depth undefined for the full vertex set")]
    DepthOfFullSet,
    #[error("infinite diameter: {0} and {1} are not mutually reachable")]
    InfiniteDiameter(usize, usize),
    #[error("infinite depth: vertex {0} cannot reach the complement")]
    InfiniteDepth(usize),
    #[error("graph is disconnected: {0}")]
    Disconnected(String),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("intransitive action: {0} orbits")]
    Intransitive(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid tube: {0}")]
    InvalidTube(String),
    #[error("invalid cyclic system: {0}")]
    InvalidCyclicSystem(String),
    #[error("not ring-like: {0}")]
    NotRingLike(String),
    #[error("invalid tree decomposition: {0}")]
    InvalidTreeDecomposition(String),
    #[error("not Eulerian: {0}")]
    NotEulerian(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("structural inconsistency: {0}")]
    Inconsistency(String),
    #[error("cut did not stabilize: {0}")]
    NotStabilized(String),
    #[error("frontier contamination: {0}")]
    Frontier(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Budget exhaustion is an inconclusive outcome rather than a bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExhausted(_) | Error::NotStabilized(_))
    }
}
