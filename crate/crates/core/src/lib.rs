//! Disjoint equal-length cycle packing in tournaments.
//!
//! The crate is organised bottom-up:
//!
//! * [`tournament`]: bit-matrix tournaments, vertex sets, cycles, paths and the TRN text format;
//! * [`classic`]: Rédei paths, Camion cycles and Moon's (vertex-)pancyclic construction;
//! * [`matching`]: maximum matchings and König covers on the arcs from one vertex set to another;
//! * [`surgery`]: cycle shrinking with degree control, vertex absorption and splice-and-trim;
//! * [`packer`]: greedy packing plus family-extension and tail-growth moves;
//! * [`oracle`]: exact enumeration, branch-and-bound maximum packing and counterexample search;
//! * [`gen`]: seeded generators, including planted instances for every packer move.

pub mod classic;
pub mod error;
pub mod gen;
pub mod matching;
pub mod oracle;
pub mod packer;
pub mod rng;
pub mod surgery;
pub mod tournament;

pub use error::{Error, Result};
pub use tournament::{Cycle, Path, Tournament, TournamentBuilder, VertexSet};
