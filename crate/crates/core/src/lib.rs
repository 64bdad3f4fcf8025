//! The algebra of lifetimes and homology over it.
//!
//! Points `(birth, death)` of a bounded rectangle form a complete Heyting
//! algebra under "is alive throughout" ordering. This crate provides that
//! algebra with exact rational coordinates ([`lifetime`]), its ideals,
//! filters and prime elements ([`order`]), the canonical sheaf over it
//! ([`sheaf`]), semi-simplicial sets whose simplices carry lifetimes
//! ([`complex`]), and their homology: Betti step functions over time and,
//! for filtrations, persistence pairs and diagrams ([`homology`]).
//!
//! Batch work (law checks, Betti sampling) is data-parallel through rayon
//! when the `parallel` feature is enabled; see [`exec::Strategy`].

pub mod complex;
pub mod exec;
pub mod homology;
pub mod laws;
pub mod lifetime;
pub mod order;
pub mod rational;
pub mod sample;
pub mod sheaf;
pub mod svg;

pub use complex::{ComplexError, SimplexEntry, StaticComplex, VariableComplex};
pub use exec::Strategy;
pub use homology::{FieldTag, HomologyError};
pub use lifetime::{AlgebraError, BarInterval, Bounds, Lifetime, Orientation};
pub use rational::Rational;
pub use sheaf::{Cover, CoverItem, SheafError};
