//! Exact enumeration of multiplex juggling sequences.
//!
//! Multiplex juggling lets a hand catch and rethrow up to `m` balls per
//! beat. A pattern is a walk in a state diagram whose vertices are
//! landing schedules `⟨a_1, a_2, …⟩` (how many balls land each future
//! beat) and whose edges shift the schedule down one slot and
//! redistribute the bottom balls. This crate counts those walks three
//! independent ways and derives the linear recurrences and rational
//! generating functions behind the counts:
//!
//! - [`state`]: states, the edge relation, and successor enumeration;
//! - [`diagram`]: the finite height-capped diagram and adjacency-power
//!   counting;
//! - [`oracle`]: brute-force bucket simulation and the selection-matrix
//!   counter, plus walk enumeration and first-return counts;
//! - [`transfer`]: integer partitions, the closed-form transfer-matrix
//!   coefficients, and the `x_γ(k)` recursion;
//! - [`series`]: characteristic polynomials, universal recurrences,
//!   generating functions, and the primitive transform;
//! - [`siteswap`]: multiplex siteswap notation: parse, validate,
//!   simulate, and the walk ↔ pattern correspondence.
//!
//! All arithmetic is exact: counts are big integers and polynomial
//! coefficients are signed big integers. Nothing here ever touches
//! floating point.
//!
//! ```
//! use multiplex_core::{periodic_sequence, State};
//!
//! let ground = State::parse("3", 3).unwrap();
//! let seq = periodic_sequence(&ground, 5).unwrap();
//! let terms: Vec<String> = seq.terms().iter().map(|t| t.to_string()).collect();
//! assert_eq!(terms, ["1", "4", "20", "112", "660"]);
//! ```

pub mod diagram;
pub mod error;
mod matrix;
pub mod oracle;
pub mod poly;
pub mod series;
pub mod siteswap;
pub mod state;
pub mod transfer;

pub use diagram::{HeightCappedDiagram, WalkCounts};
pub use error::{Error, Result};
pub use oracle::{
    count_first_return, count_walks_brute, enumerate_walks, SelectionMatrix, Walk,
    DEFAULT_WALK_LIMIT,
};
pub use poly::IntPolynomial;
pub use series::{
    char_poly, periodic_gf, periodic_sequence, primitive_sequence, CountSequence, LinearRecurrence,
    RationalGF, SequenceKind,
};
pub use siteswap::{SiteswapPattern, ValidityReport};
pub use state::{State, ThrowSet};
pub use transfer::{
    coefficient, count_walks_transfer, enumerate_block_fills, partitions_of, x_values, PartCounts,
    TransferMatrix,
};
