//! Construction and machine verification of the `H_n` family of cyclically
//! 5-edge-connected snarks with resistance 2 and flow resistance `n`.
//!
//! The crate is organised bottom-up: [`semigraph`] holds the data model and
//! surgery, [`search`] the exact solver shared by [`coloring`] and [`flows`],
//! [`connectivity`] the cyclic cut machinery, [`constructions`] the gadgets
//! and the family itself, and [`verify`] the claim-by-claim harness.

pub mod coloring;
pub mod connectivity;
pub mod constructions;
pub mod error;
pub mod flows;
pub mod group;
pub mod io;
pub mod iso;
pub mod registry;
pub mod search;
pub mod semigraph;
pub mod verify;

#[doc(hidden)]
pub mod cli;

pub use error::{Error, Result};
pub use group::Elem;
pub use semigraph::{CutSpec, Ends, Link, LinkId, SemiGraph, Target, VertexId};
