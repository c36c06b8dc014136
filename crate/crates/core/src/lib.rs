//! Strong homotopy theory and simplicial Lusternik-Schnirelmann category for
//! finite simplicial complexes.
//!
//! The crate covers dominated vertices and strong collapses ([`strong`]),
//! simplicial maps and contiguity classes ([`contiguity`]), Z/2 first
//! homology ([`homology`]), covers by categorical or strongly collapsible
//! subcomplexes including an exact two-cover decision procedure
//! ([`category`]), a constraint search for pinched-sphere triangulations
//! ([`reconstruct`]) and an end-to-end check of a complex whose simplicial
//! and geometric simplicial categories differ ([`pipeline`]).

pub mod category;
pub mod certificate;
pub mod complex;
pub mod contiguity;
pub mod fixtures;
pub mod gf2;
pub mod homology;
pub mod pipeline;
pub mod reconstruct;
pub mod strong;

pub use complex::{ComplexError, FVector, Simplex, SimplicialComplex, Vertex};
pub use strong::{CollapseSequence, CollapseStep};
