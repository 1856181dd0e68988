//! Exact computer algebra for the one-parameter Laurent family
//! `F(u, x) = u1 + … + un + x / (u1^w1 ⋯ un^wn)`.
//!
//! From a weight vector the engine builds the spectrum at infinity, the
//! Birkhoff normal form of the Brieskorn lattice in several bases, the flat
//! pairing, the canonical extensions at `x = 0`, the graded limit Frobenius
//! type structure, the canonical limit Frobenius manifold (when all weights
//! are 1) and the logarithmic structure, and checks every identity relating
//! them in exact arithmetic.

pub mod algebra;
pub mod check;
pub mod connection;
pub mod error;
pub mod family;
pub mod frobenius;
pub mod grid;
pub mod limits;
pub mod spectrum;

pub use check::{Check, CheckReport};
pub use connection::{Basis, ConnectionForm, Pairing};
pub use error::{Error, Result};
pub use spectrum::{Spectrum, Weights};
