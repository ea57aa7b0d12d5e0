//! Exact arithmetic: big rationals, dense univariate polynomials over rings,
//! prime fields, factorization over the rationals, and small lattices.

pub mod factor;
pub mod fp;
pub mod intpoly;
pub mod lattice;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod ring;

pub use factor::{divides, factor_over_q, poly_gcd, rational_roots, Factorization};
pub use fp::{factor_mod_p, Fp, FpPoly};
pub use lattice::lattice_reduce_small;
pub use parse::parse_poly;
pub use poly::Poly;
pub use rational::{Rational, RationalPolynomial};
pub use ring::{Field, Ring};
