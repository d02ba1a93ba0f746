use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dihedral group needs n >= 2 and 2n <= {max}, got n = {n}", max = crate::MAX_VERTICES)]
    InvalidOrder { n: usize },

    #[error("D_4 is the Klein four-group; the dihedral automorphism description needs n >= 3")]
    DegenerateDihedral,

    #[error("element {0} is not a valid element of D_{1}")]
    ElementOutOfRange(String, usize),

    #[error("cannot parse element `{0}`: expected r<i> or f<i>")]
    ElementSyntax(String),

    #[error("connection set contains the identity")]
    IdentityInConnectionSet,

    #[error("connection set is not closed under inverses: {0} is missing")]
    NotInverseClosed(String),

    #[error("{family}: {reason}")]
    InvalidFamilyParameter { family: &'static str, reason: String },

    #[error("graph is disconnected; unreached vertices {unreached:?}")]
    Disconnected { unreached: Vec<usize> },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("group is not transitive on the given set")]
    Intransitive,

    #[error("n = {0} is odd; the central rotation a^(n/2) does not exist")]
    OddOrder(usize),

    #[error("partition is not invariant: {0}")]
    NonInvariantPartition(String),

    #[error("automorphism search exceeded the node cap after {nodes} nodes")]
    NodeCapExceeded { nodes: u64 },

    #[error("{count} s-arcs exceed the configured cap of {cap}")]
    ArcCapExceeded { count: u128, cap: u128 },

    #[error("classification counterexample: {0}")]
    Counterexample(String),
}

impl Error {
    /// True for the errors raised by exhausting a configured resource cap.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::NodeCapExceeded { .. } | Error::ArcCapExceeded { .. })
    }
}
