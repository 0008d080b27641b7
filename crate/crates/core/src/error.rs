use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Z_n requires n >= 2, got {0}")]
    ModulusTooSmall(usize),
    #[error("quotient by the whole ring")]
    QuotientByWholeRing,
    #[error("zero ring (1 = 0) is not allowed")]
    ZeroRing,
    #[error("ring axiom violated: {0}")]
    RingAxiom(String),
    #[error("module axiom violated: {0}")]
    ModuleAxiom(String),
    #[error("element {element} out of range for a structure of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("order {order} exceeds the cap of {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("submodule must be proper")]
    NotProper,
    #[error("ideal must be proper")]
    IdealNotProper,
    #[error("set {0} is not a submodule")]
    NotASubmodule(String),
    #[error("set {0} is not an ideal")]
    NotAnIdeal(String),
    #[error("empty subset of the ring")]
    EmptySubset,
    #[error("module is not a multiplication module")]
    NotMultiplication,
    #[error("structures are defined over different rings")]
    RingMismatch,
    #[error("I(+)N is not an ideal: IM is not contained in N")]
    IdealizationCondition,
    #[error("subset is not multiplicatively closed")]
    NotMultiplicativelyClosed,
    #[error("multiplicative set must contain 1 and avoid 0")]
    DegenerateMultiplicativeSet,
    #[error("submodule is not weakly J")]
    NotWeaklyJ,
    #[error("map is not a module homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("Jacobson radical algorithms disagree: maximal-ideal route {maximal}, unit route {units}")]
    JacobsonMismatch { maximal: String, units: String },
    #[error("structural fact failed after construction: {0}")]
    FactViolated(String),
    #[error("module needs {needed} generators, budget is {max}")]
    TooManyGenerators { needed: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}
