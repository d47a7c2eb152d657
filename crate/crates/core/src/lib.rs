//! Exact computation of sample points on real determinantal varieties.
//!
//! Given a linear matrix `A(x) = A0 + x1 A1 + ... + xn An` with rational
//! entries, [`realdet`] returns a finite set of points, encoded by rational
//! parametrizations, that meets every connected component of the real
//! hypersurface `det A(x) = 0`. Points are extracted with certified
//! rational enclosures and verified exactly against the determinant.

pub mod bounds;
pub mod error;
pub mod groebner;
pub mod io;
pub mod matrix;
pub mod numeric;
pub mod param;
pub mod poly;
pub mod solve;

pub use bounds::{b_bound, complexity_estimate, delta, delta_top, delta_truncated, DegreeBounds};
pub use error::{Error, Result};
pub use groebner::{
    dim_degree_via_slicing, groebner, groebner_in, is_trivial, rat_par, rat_par_modular, rat_par_with,
    self_check_stats, set_self_check, staircase_dimension, unit_ideal_modular, zero_dim_degree, GroebnerBasis,
};
pub use matrix::{random_pencil, LinearMatrix, PolySystem, RandomDraw, RatMatrix};
pub use numeric::{Rational, RationalInterval};
pub use param::{RationalParametrization, RealPointBox, SampleSet};
pub use poly::{MonomialOrder, MultiPoly, Ring, UniPoly};
pub use solve::{is_sing, is_sing_exact, lagrange_degree, singular_charts, realdet, realdet_rec, LevelReport, SolveConfig, SolveReport};
