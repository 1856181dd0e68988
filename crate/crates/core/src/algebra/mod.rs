//! Exact arithmetic: rationals, Laurent and multivariate polynomials, dense
//! matrices over them, characteristic polynomials and the linear algebra the
//! rest of the engine needs.

pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod mpoly;
pub mod poly;
pub mod ring;

pub use laurent::LaurentPoly;
pub use linalg::{
    adjoint, closure_rank, determinant, has_cyclic_vector, inverse, laurent_inverse,
    minimal_polynomial_degree, nilpotent_block_sizes, rank,
};
pub use matrix::{LaurentMatrix, Matrix, PolyMatrix, QMatrix, RationalExponentMatrix};
pub use mpoly::MPoly;
pub use poly::{char_poly, Poly, RatPoly};
pub use ring::{format_pq, int, parse_pq, rat, Rational, Ring};
