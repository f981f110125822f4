//! Computation in the based ring attached to the subregular cell of a
//! Coxeter group, using only word combinatorics on the hot path.
//!
//! The cell consists of the non-identity group elements with a unique
//! reduced word, so its basis elements can be manipulated as plain letter
//! sequences: products reduce to the truncated Clebsch-Gordan rule on
//! dihedral segments plus gluing. The crate also carries the structural
//! isomorphisms that describe the ring through the Coxeter graph (groupoid
//! algebras, matrix transport along odd edges, Verlinde algebras, free
//! fusion rings) and an independent Hecke-algebra oracle that recomputes
//! structure constants from Kazhdan-Lusztig polynomials on a bounded ball.

pub mod automaton;
pub mod diagram;
pub mod fusion;
pub mod groupoid;
pub mod hecke;
pub mod jring;
pub mod suites;
pub mod transport;
pub mod word;

pub use diagram::{CoxeterDiagram, DiagramError, DiagramParseError, Gen, Weight};
pub use jring::{unit_jc, JElement, JringError};
pub use word::{
    dihedral_segments, glue_all, glued_product, is_subregular, SubregularElement, Word, WordError,
};
