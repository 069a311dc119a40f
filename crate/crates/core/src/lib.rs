//! Induced disjoint paths and related induced-subgraph problems on AT-free
//! graphs, with exhaustive oracles and seeded generators for testing.

pub mod atfree;
pub mod error;
pub mod fuzz;
pub mod gen;
pub mod graph;
pub mod hardness;
pub mod idp;
pub mod instance;
pub mod io;
pub mod oracles;
pub mod par;
pub mod report;
pub mod solvers;
