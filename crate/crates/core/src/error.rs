use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    IndexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("edge ({0}, {1}) is not in the graph")]
    MissingEdge(usize, usize),

    #[error("eigensolver did not reach residual target (residual {residual:e} after {sweeps} sweeps)")]
    NoConvergence { residual: f64, sweeps: usize },

    #[error("Perron vector entry {entry:e} at vertex {vertex} is not positive (disconnected input?)")]
    NotPositive { vertex: usize, entry: f64 },

    #[error("invalid Watts-Strogatz degree k={k} for n={n} (k must be even and < n)")]
    InvalidK { k: usize, n: usize },

    #[error("invalid Barabasi-Albert attachment m={m} for n={n} (need 1 <= m < n)")]
    InvalidM { m: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no simple connected non-bipartite instance after {0} attempts")]
    ExhaustedResampling(usize),

    #[error("exact max-cut enumeration limited to n <= {limit}, got n = {n}")]
    TooLarge { n: usize, limit: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("records misaligned: missing {method} for instance {instance} of model {model}")]
    MisalignedRecords {
        model: String,
        instance: usize,
        method: String,
    },

    #[error("edge list parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{model} instance {index}: {source}")]
    Sweep {
        model: String,
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerical pipeline rather than of the input.
    pub fn is_computational(&self) -> bool {
        match self {
            Error::NoConvergence { .. } | Error::NotPositive { .. } | Error::ExhaustedResampling(_) => true,
            Error::Sweep { source, .. } => source.is_computational(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
