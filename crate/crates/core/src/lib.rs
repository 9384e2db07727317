//! Steiner triple systems and their Ramsey-type parameters.
//!
//! The crate builds Steiner triple systems (Fano, AG(2,3), Bose, Skolem,
//! random), computes the independence number, the `k`-partite-hole number and
//! the monochromatic-component number `mc_r` with checkable certificates, and
//! provides the explicit edge colorings, bicolorings and component
//! decompositions that bound `mc_3` from both sides.

pub mod coloring;
pub mod colorings;
pub mod constructions;
pub mod hole;
pub mod random;
pub mod search;
pub mod system;
pub mod textfmt;
pub mod union_find;

pub use coloring::{
    largest_mono_component, mono_components, ComponentSet, EdgeColoring, LargestComponent,
};
pub use hole::{verify_hole, HoleCertificate};
pub use system::{
    validate_steiner, Construction, SteinerSystem, SystemError, Triple, TripleSystem, TripleType,
};
