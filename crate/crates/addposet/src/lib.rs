//! Additive posets over GF(2).
//!
//! An additive poset is a Z/2Z-vector space together with a partial order
//! satisfying two closure conditions: `b ≤ a` and `c ≤ a` imply `b+c ≤ a`,
//! and `a ≤ b` and `a ≤ c` imply `a ≤ a+b+c`. Zero is always the least
//! element. This crate provides:
//!
//! - exact bit-packed linear algebra over the two-element field ([`gf2`]),
//! - the [`AdditivePoset`] type with explicit and functional-backed order
//!   backends and every standard constructor ([`poset`]),
//! - structure theory: tails, independence, atoms, covers, tiles, Möbius
//!   expansion, chain/vector bijections ([`structure`]),
//! - numerical invariants: height, width, weight, dimension, m-width
//!   ([`invariants`]),
//! - plainness, separating functional sets, exact complexity, powerset
//!   embeddings ([`plainness`]),
//! - graphs, finite mod-2 chain complexes, and their homological additive
//!   posets, with geometric atom/tile recognition ([`homology`]),
//! - realization of plain posets as homological posets of chain complexes
//!   and of small trivially ordered posets as graphs ([`realization`]),
//! - deterministic seeded corpora and exhaustive multigraph enumeration
//!   for property scans ([`corpus`]).
//!
//! All values are immutable after construction and all operations are pure,
//! so everything is safe to share across threads.

pub mod corpus;
mod error;
pub mod gf2;
pub mod homology;
pub mod invariants;
pub mod plainness;
pub mod poset;
pub mod realization;
pub mod structure;

pub use error::Error;
pub use gf2::{BitMatrix, BitVec};
pub use homology::{ChainComplex, Graph, HomologyClass, HomologyPoset, Subgraph};
pub use invariants::InvariantReport;
pub use plainness::{PowersetEmbedding, SeparatingCertificate};
pub use poset::{AdditivePoset, AxiomReport, IsoOutcome};
pub use realization::{Move, MoveScript, Realization};
pub use structure::{ChainRecord, MobiusTable};

/// Largest dimension accepted by operations that enumerate all `2^dim`
/// elements of a poset (axiom scans, atoms, Möbius, width, ...). The
/// relation table of a dim-12 poset packs 2^24 bits = 2 MB; beyond that
/// only lazy functional-backed order queries stay meaningful.
pub const MAX_ENUM_DIM: usize = 12;

pub(crate) type Result<T> = std::result::Result<T, Error>;
