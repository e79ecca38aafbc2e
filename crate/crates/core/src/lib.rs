//! Exact jet-differential calculus over the rationals.
//!
//! Jet differentials, higher-order logarithmic connections and Wronskians, the explicit
//! chart of the logarithmic Demailly tower, Fermat-type determinant systems, and the
//! arithmetic of the effective degree bounds.

pub mod multipoly;
pub mod jetalg;
pub mod logconn;
pub mod tower;
pub mod fermat;
pub mod bounds;
pub mod suites;
