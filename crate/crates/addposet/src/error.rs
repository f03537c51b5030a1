use std::fmt;

use crate::gf2::BitVec;

/// Errors reported by fallible operations.
///
/// Length mismatches between vectors that are required to live in the same
/// ambient space are contract violations and panic instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An exhaustive operation was asked to enumerate a poset above the cap.
    TooLargeForExhaustive {
        dim: usize,
        cap: usize,
        op: &'static str,
    },
    /// A basis handed to `enumerate_span` was linearly dependent.
    DependentBasis,
    /// A construction required a nonzero vector and got zero.
    ZeroVector { what: &'static str },
    /// The vector is not a member of the required subspace.
    NotInSubspace { what: &'static str },
    /// A functional set has a nontrivial common kernel; `witness` is a
    /// nonzero vector killed by every functional.
    NontrivialKernel { witness: BitVec },
    /// A multiplication table is not idempotent at `x`.
    NotIdempotent { x: BitVec },
    /// A constructed relation failed the additive-poset axioms.
    AxiomViolation { axiom: &'static str },
    /// Zero cannot be a tile and has no atom decomposition.
    ZeroElement { op: &'static str },
    /// The element is not a tile.
    NotATile { element: BitVec },
    /// A chain was not strictly increasing at `index`.
    InvalidChain { index: usize, reason: &'static str },
    /// A vector sequence for the chain bijection failed at `index`.
    InvalidVectors { index: usize, reason: &'static str },
    /// An m-width query with `m` out of `1..=dim`.
    InvalidMWidth { m: usize, dim: usize },
    /// The poset is not plain, so complexity/embedding are undefined.
    NotPlain,
    /// The functional set is not separating.
    NotSeparating { reason: &'static str },
    /// An edge index does not exist in the graph.
    InvalidEdge { index: usize },
    /// An endpoint index does not exist in the graph.
    InvalidVertex { index: usize },
    /// An edge set is not a cycle; `cell` is an odd-incidence witness
    /// (for graphs: a vertex meeting an odd number of selected edges).
    NotACycle { cell: usize },
    /// A chain complex has `∂∂ ≠ 0` between the named degree and the one below.
    BoundarySquareNonzero { degree: usize },
    /// Matrix blocks of a chain complex have inconsistent shapes.
    BoundaryShape { degree: usize },
    /// A move referenced an operand missing from the current set.
    MissingOperand { operand: BitVec },
    /// A move was given identical operands.
    EqualOperands,
    /// A target functional set does not span the dual space.
    NotSpanning,
    /// Realization by a graph is impossible for this dimension.
    NotGraphRealizable { dim: usize },
    /// A parameter was outside its documented range.
    InvalidParameter { what: &'static str },
    /// The supplied maps do not form a graph inclusion.
    NotAnInclusion { reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TooLargeForExhaustive { dim, cap, op } => write!(
                f,
                "{op}: dimension {dim} is too large for exhaustive verification (cap {cap})"
            ),
            Error::DependentBasis => write!(f, "basis vectors are linearly dependent"),
            Error::ZeroVector { what } => write!(f, "{what} must be nonzero"),
            Error::NotInSubspace { what } => write!(f, "{what} is not in the required subspace"),
            Error::NontrivialKernel { witness } => write!(
                f,
                "functionals have a nontrivial common kernel: {witness} is killed by all of them"
            ),
            Error::NotIdempotent { x } => {
                write!(f, "multiplication table is not idempotent at {x}")
            }
            Error::AxiomViolation { axiom } => {
                write!(f, "constructed relation violates the {axiom} axiom")
            }
            Error::ZeroElement { op } => write!(f, "{op}: zero is rejected"),
            Error::NotATile { element } => write!(f, "{element} is not a tile"),
            Error::InvalidChain { index, reason } => {
                write!(f, "invalid chain at position {index}: {reason}")
            }
            Error::InvalidVectors { index, reason } => {
                write!(f, "invalid vector sequence at position {index}: {reason}")
            }
            Error::InvalidMWidth { m, dim } => {
                write!(f, "m-width requires 1 <= m <= dim, got m={m}, dim={dim}")
            }
            Error::NotPlain => write!(
                f,
                "poset is not plain: its order-preserving functionals are not separating"
            ),
            Error::NotSeparating { reason } => write!(f, "functional set is not separating: {reason}"),
            Error::InvalidEdge { index } => write!(f, "edge index {index} out of range"),
            Error::InvalidVertex { index } => write!(f, "vertex index {index} out of range"),
            Error::NotACycle { cell } => write!(
                f,
                "edge set is not a cycle: odd incidence at vertex/cell {cell}"
            ),
            Error::BoundarySquareNonzero { degree } => {
                write!(f, "boundary composition is nonzero between degrees {degree} and below")
            }
            Error::BoundaryShape { degree } => {
                write!(f, "boundary matrix shape mismatch at degree {degree}")
            }
            Error::MissingOperand { operand } => {
                write!(f, "move operand {operand} is not in the current set")
            }
            Error::EqualOperands => write!(f, "move operands must be distinct"),
            Error::NotSpanning => write!(f, "functional set does not span the dual space"),
            Error::NotGraphRealizable { dim } => write!(
                f,
                "no graph has a trivially ordered homological poset of dimension {dim} (only m <= 4 are realizable)"
            ),
            Error::InvalidParameter { what } => write!(f, "invalid parameter: {what}"),
            Error::NotAnInclusion { reason } => write!(f, "maps do not form a graph inclusion: {reason}"),
        }
    }
}

impl std::error::Error for Error {}
