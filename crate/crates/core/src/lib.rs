//! Finite lattice computations: validation and order queries, semidistributivity,
//! congruence lattices, element and antichain doubling, gluing a lattice into an
//! isolated interval, a catalog of named lattices with exhaustive enumeration,
//! and a verification harness that checks the constructions over small corpora.

pub mod catalog;
pub mod congruence;
pub mod doubling;
pub mod error;
pub mod format;
pub mod glue;
pub mod iso;
pub mod lattice;
pub mod sd;
pub mod verify;

pub use congruence::{all_congruences, is_simple, principal_congruence, quotient, ConLattice, Congruence, Partition};
pub use doubling::{double_antichain, double_element, DoubledLattice};
pub use error::{LatticeError, Result};
pub use glue::{glue, GlueContext, IsolatedInterval};
pub use iso::is_isomorphic;
pub use lattice::{ElementClassification, FiniteLattice};
pub use sd::{check_sd_direct, is_semidistributive, SdReport};
