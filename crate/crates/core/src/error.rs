use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("{r} is not a primitive root modulo {p}")]
    NotPrimitiveRoot { r: u64, p: u64 },
    #[error("group order {0} exceeds the supported maximum of {max}", max = crate::group::MAX_ORDER)]
    TooLarge(usize),
    #[error("no element with coordinates {0:?}")]
    UnknownElement(Vec<i64>),
    #[error("subgroup is not normal")]
    NotNormal,

    #[error("the identity cannot be a generator")]
    IdentityInS,
    #[error("generator {0} is listed twice")]
    DuplicateGenerator(usize),
    #[error("expected exactly two generators, got {0}")]
    NotTwoGenerated(usize),
    #[error("the Cayley digraph is not connected")]
    NotConnected,
    #[error("travel-pattern space of {0} candidates exceeds the limit of 2^24")]
    PatternLimit(u128),

    #[error("group is not abelian")]
    NotAbelian,
    #[error("elements do not generate the group")]
    NotGenerating,
    #[error("commutator subgroup is not contained in N = <a,b>")]
    CommutatorNotContained,
    #[error("label sequence is not a hamiltonian cycle in the coset digraph")]
    NotHamCycleInQuotient,
    #[error("the skewed generating set does not generate K")]
    SkewedSetNotGeneratingK,
    #[error("subgroup is not cyclic and normal")]
    NotCyclicNormal,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("arc {from} -> {to} is not in the digraph")]
    ArcNotInDigraph { from: usize, to: usize },
    #[error("construction produced an invalid certificate: {0}")]
    ConstructionFailed(String),

    #[error("malformed document: {0}")]
    Format(String),

    #[error("bad prime {0}: need p > 3 and p = 3 (mod 4)")]
    BadPrime(u64),
    #[error("condition ({clause}) failed: {detail}")]
    ConditionFailed { clause: &'static str, detail: String },
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionFailed(msg.into())
    }
}
