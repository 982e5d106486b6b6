//! Design and evaluation of cyclic group codes: orbits of a unit vector under
//! a finite cyclic group of orthogonal matrices.
//!
//! The crate is organized bottom-up:
//!
//! - [`codes`]: generators in block-diagonal form, orbits, minimum distances
//!   and canonical forms up to isometry.
//! - [`simplex`] and [`ivp`]: the optimal initial vector of a fixed group as a
//!   linear program, solved with a dense dual simplex.
//! - [`bounds`]: the packing bound, target distance and candidate norm.
//! - [`search`]: the shell-constrained heuristic and the exhaustive baseline.
//! - [`lattice`]: the integer lattice attached to a generator and the torus
//!   map that carries it onto the code.
//! - [`metrics`]: efficiency-chart coordinates, reference codes, bound ratios.
//! - [`catalog`]: JSON-lines catalog of verified best codes.
//! - [`reference`]: published distances used for comparison.
//! - [`cli`]: the `sforge` command-line front end.

pub mod arith;
pub mod bounds;
pub mod catalog;
pub mod cli;
pub mod codes;
pub mod error;
pub mod ivp;
pub mod lattice;
pub mod metrics;
pub mod reference;
pub mod search;
pub mod simplex;

pub use bounds::{default_table, BoundInfo, CenterDensityTable};
pub use codes::{canonical_form, min_distance_direct, min_distance_orbit, orbit, CyclicGenerator, GroupCode};
pub use error::{Error, Result};
pub use ivp::{solve_ivp, IvpSolution};
pub use search::{exhaustive_search, heuristic_search, SearchConfig, SearchResult};
pub use catalog::{Catalog, CodeRecord, Method};
pub use lattice::{associated_lattice, AssociatedLattice, TorusMap};
