//! Exact computation of Serre intersection multiplicities, Tor/Ext lengths,
//! Euler forms, Hilbert-Samuel multiplicities and Hochster theta over graded
//! polynomial rings and their quotients.

pub mod corpus;
pub mod dsl;
pub mod error;
pub mod field;
pub mod groebner;
pub mod homology;
pub mod module;
pub mod multiplicity;
pub mod resolution;
pub mod ring;
pub mod suite;

pub use error::{EngineError, Result};
