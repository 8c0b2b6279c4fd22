//! Exact super Koszul complexes and their duals, with strand-by-strand
//! homology and the Berezinian action of supermodule automorphisms.

pub mod berezinian;
pub mod coeff;
pub mod commands;
pub mod complex;
pub mod error;
pub mod homology;
pub mod sparse;
pub mod superalg;
pub mod verify;

pub use error::{Error, Result};
