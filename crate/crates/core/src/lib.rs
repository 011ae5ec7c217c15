//! Exact computations around tangential base points on moduli of curves.
//!
//! The crate is `no_std` (it only needs `alloc`) and is organized bottom-up:
//!
//!  - [`scalars`]: exact coefficient fields (the rationals and prime fields),
//!    roots of unity and n-th roots of scalars.
//!  - [`puiseux`]: truncated multivariate Puiseux series with rational
//!    exponents, their ring operations, inverses of units and n-th roots by
//!    Newton iteration, and a small text grammar.
//!  - [`kummer`]: tame Kummer coverings of the formal disk and the
//!    enumeration of every homomorphism splitting them over the Puiseux ring.
//!  - [`graph`]: stable graphs given as half-edge sextuples, their
//!    isomorphisms, canonical forms and the enumeration of maximally
//!    degenerate graphs of a given genus and number of legs.
//!  - [`ribbon`]: cyclic orders on trivalent graphs, the signed action of
//!    graph automorphisms on the span of the edges, the Möbius chart
//!    normalization and the coordinates of a tangential base point.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;
pub mod graph;
pub mod kummer;
pub mod puiseux;
pub mod ribbon;
pub mod scalars;

pub use error::{Error, Result};
pub use graph::{GraphMorphism, GraphStats, StableGraph};
pub use kummer::{KummerData, Relation, SplitHom};
pub use puiseux::{PuiseuxSeries, Valuation};
pub use ribbon::{RibbonStructure, SignedEdgeMatrix, TangentialBasePoint};
pub use scalars::{Field, Scalar};
