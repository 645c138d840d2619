//! Exact computations with directed graph operads, graph complexes and the
//! convolution Lie algebras built from them.

pub mod checks;
pub mod conv;
pub mod dfgc;
pub mod error;
pub mod graphs;
pub mod hedgehog;
pub mod hoch;
pub mod linalg;
pub mod literal;
pub mod ocgen;
pub mod operads;
pub mod orbits;
pub mod polyvec;
pub mod rat;

pub use error::{Error, Result};
pub use graphs::{Color, DirGraph, Endpoint, GraphSum, Signature, SignedGraph};
pub use linalg::RatMatrix;
pub use rat::Q;
