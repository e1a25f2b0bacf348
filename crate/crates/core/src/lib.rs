//! Exact point-scheme and line-scheme computations for quadratic algebras
//! on four generators.
//!
//! The crate is organised bottom-up: [`scalars`] provides exact coefficient
//! rings, [`multipoly`] sparse polynomials, [`polymat`] matrices, minors and
//! linear algebra, and [`groebner`] Buchberger's algorithm with Hilbert
//! data. On top of these, [`ncalg`] handles quadratic algebra presentations,
//! [`pointscheme`] and [`linescheme`] compute the two schemes, and
//! [`geometry`] verifies the component structure of the line scheme.

pub mod scalars;
pub mod multipoly;
pub mod polymat;
pub mod groebner;
pub mod ncalg;
pub mod towers;
pub mod golden;
pub mod pointscheme;
pub mod linescheme;
pub mod geometry;
