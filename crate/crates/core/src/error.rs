use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("multiplication table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(u32, u32, u32),
    #[error("not a group table: {0}")]
    InvalidTable(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("subgroup is not a p-group for p = {0}")]
    NotAPGroup(u32),
    #[error("element set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup of order {order} is not a Sylow {p}-subgroup (expected order {expected})")]
    NotSylow {
        p: u32,
        order: usize,
        expected: usize,
    },
    #[error("subgroup is not contained in the carrier of the fusion system")]
    ObjectOutsideS,
    #[error("morphism does not belong to the fusion system")]
    MorphismNotInF,
    #[error("morphism is not generated by essential and maximal automorphisms")]
    NotGenerated,
    #[error("fusion systems are carried on different groups")]
    CarrierMismatch,
    #[error("subgroup is not normal in the fusion system")]
    NotNormalInF,
    #[error("join of normal subgroups failed the normality check")]
    JoinNotNormal,
    #[error("subgroup is not centric")]
    NotCentric,
    #[error("model validation failed: {0}")]
    ModelValidationFailed(String),
    #[error("chain condition violated: {0}")]
    ChainConditionViolated(String),
    #[error("unsupported prime {0}")]
    UnsupportedPrime(u32),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("Sylow subgroup of the candidate group is not isomorphic to the carrier")]
    SylowMismatch,
    #[error("W chain left the sandwich A(S) <= W <= B(S) at step {0}")]
    SandwichViolated(usize),
    #[error("W chain did not grow at step {0} although normality failed")]
    ChainStalled(usize),
    #[error("operation requires a group-realized fusion system")]
    NotRealized,
    #[error("operation requires a nontrivial group")]
    TrivialGroup,
    #[error("{0} is not prime")]
    NotPrime(u32),
}
