//! Universal comeasuring bialgebras.
//!
//! Given an algebra `A` by structure constants, this crate writes down the
//! bialgebras `M1(A)`, `M(A)` and `M0(A)` that coact universally on `A`,
//! together with graded, R-matrix and braided variants, and checks every
//! axiom by exact linear algebra on bounded-degree slices of free algebras.

#![allow(clippy::needless_range_loop)]

pub mod braided;
pub mod comeasure;
pub mod graded;
pub mod linalg;
pub mod ncalg;
pub mod report;
pub mod rmat;
pub mod scalars;
