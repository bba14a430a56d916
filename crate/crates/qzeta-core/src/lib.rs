//! Exact calculator for motivic and topological zeta functions of
//! semi-quasihomogeneous hypersurface singularities and for stringy
//! E-functions of hypersurfaces, computed from embedded Q-resolution data
//! (weighted blow-ups and Newton-fan toric resolutions), together with an
//! independent finite-field counting oracle.
//!
//! All arithmetic is exact: big rationals for coefficients and exponents,
//! `u64` modular arithmetic for finite-field enumeration. No floating point
//! is used anywhere.

pub mod config;
pub mod count;
pub mod error;
pub mod fixtures;
pub mod groups;
pub mod poly;
pub mod rat;
pub mod stringy;
pub mod symb;
pub mod toric;
pub mod zeta;

pub use config::Config;
pub use error::{Error, Result};
