//! Exact computation with knot invariants derived from infinite cyclic covers.
//!
//! Everything here is exact: Laurent polynomials and matrices carry
//! arbitrary-precision integer coefficients, ideals in `Z[t]` are compared via
//! canonical generating sets, and no floating point appears anywhere.
//!
//! The crate is organised around the pipeline
//!
//! diagram / braid / DT code
//!     -> Wirtinger presentation      ([`group`], [`fox`])
//!     -> Alexander presentation      ([`alexander`])
//!     -> polynomial + ideal data     ([`poly`], [`ideal`], [`matrix`])
//!     -> embeddability screening     ([`screen`])
//!
//! with [`obstruction`] providing the homological side conditions used to rule
//! out embeddings of towers of covers.

pub mod alexander;
pub mod diagram;
pub mod fox;
pub mod group;
pub mod ideal;
pub mod matrix;
pub mod obstruction;
pub mod poly;
pub mod polymat;
pub mod screen;
pub mod table;

pub use alexander::{AlexanderPresentation, SeifertMatrix, WindingFamily};
pub use diagram::{BraidWord, PlanarDiagram};
pub use group::{AbelianizationMap, GroupPresentation, Word};
pub use ideal::IntIdealBasis;
pub use matrix::{IntMatrix, SmithForm};
pub use poly::LaurentPoly;
pub use screen::{IEVerdict, Status};
pub use table::{KnotExpression, KnotRecord};
