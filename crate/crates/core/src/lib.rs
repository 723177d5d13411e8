//! Exact finite-model verification for the line-based axioms of projective
//! 3-space.
//!
//! The pipeline: generate PG(3,q) ([`pg3`]) or parse any line-incidence
//! structure ([`report_io`]); reconstruct points and planes as flats
//! ([`flats`]); decide the axioms ([`axioms`]); classify triads and tetrads
//! and decide harmonicity ([`tetra`]); check duality ([`duality`]); and
//! emit a deterministic JSON report ([`verify`], [`report_io`]).

pub mod axioms;
pub mod duality;
pub mod flats;
pub mod gf;
pub mod incidence;
pub mod pg3;
pub mod report_io;
pub mod sampling;
pub mod tetra;
pub mod verify;

pub use flats::{Flat, FlatCatalog, FlatKind};
pub use gf::{FieldElement, PrimeField};
pub use incidence::{IncidenceStructure, LineSet};
