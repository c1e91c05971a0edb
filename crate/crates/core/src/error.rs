use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("empty vertex label")]
    EmptyLabel,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("`{0}` is not a leaf")]
    NotALeaf(String),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(String, String),
    #[error("directed cycle: {}", .0.join(" -> "))]
    CycleDetected(Vec<String>),
    #[error("query set is empty")]
    EmptyQuery,

    #[error("ground set is empty")]
    EmptyGround,
    #[error("duplicate ground element `{0}`")]
    DuplicateElement(String),
    #[error("`{0}` is not an element of the ground set")]
    ElementNotInGround(String),
    #[error("set systems contain non-empty sets only")]
    EmptyMember,
    #[error("duplicate member {0}")]
    DuplicateMember(String),
    #[error("set family is empty")]
    EmptyFamily,
    #[error("parameter k = {k} is out of range (need k >= {min})")]
    InvalidK { k: usize, min: usize },

    #[error("transit table is not total: no value for {0}")]
    TableNotTotal(String),
    #[error("transit table argument {0} is not a non-empty set of at most k elements")]
    NotInDomain(String),
    #[error("transit table defines {0} twice")]
    DuplicateEntry(String),
    #[error("transit value R({0}) is empty")]
    EmptyTransitSet(String),
    #[error("no member of the set system contains {0}")]
    UncoveredTuple(String),
    #[error("lca({set}) is not defined: LCA = {lca}")]
    KlcaViolation { set: String, lca: String },
    #[error("leaf set has {leaves} elements, exhaustive bound is {bound}")]
    LeafSetTooLarge { leaves: usize, bound: usize },

    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("property {0} needs a parameter k")]
    MissingK(String),
    #[error("property {property} does not apply to {input}")]
    UnsupportedProperty {
        property: String,
        input: &'static str,
    },

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("requested {requested} members, only {available} non-empty subsets exist")]
    TooManyMembers { requested: u128, available: u128 },
    #[error("fixture {fixture} no longer reproduces its claim: {claim}")]
    FixtureAssertionFailed { fixture: String, claim: String },
}
