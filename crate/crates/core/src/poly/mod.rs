//! Polynomial arithmetic: sparse multivariate, dense univariate, root isolation.

pub mod det;
pub mod monomial;
pub mod multi;
pub mod resultant;
pub mod roots;
pub mod uni;

pub use det::poly_det;
pub use monomial::{Monomial, MonomialOrder};
pub use multi::{partial_derivative, poly_arith, MultiPoly, PolyOp, Ring, Subst};
pub use resultant::resultant;
pub use roots::{real_root_count, refine_root, sturm_isolate, SturmChain};
pub use uni::{univ_gcd_squarefree, UniPoly};
