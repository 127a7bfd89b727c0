//! Homotopy and homology invariants of finite directed graphs.
//!
//! The weight filtration on the normalized nerve complex gives a spectral
//! sequence whose `E^r_{1,0}` terms are abelianizations of the `r`-fundamental
//! groups. This crate computes both sides exactly and checks them against
//! each other, together with glueing (Mayer-Vietoris) statements.

pub mod corpus;
pub mod error;
pub mod exec;
pub mod fundamental;
pub mod glueing;
pub mod graph;
pub mod linalg;
pub mod mpss;
pub mod nerve;

pub use error::{Error, Result};
