//! Exact arithmetic: Laurent polynomials over `Z`, rational functions,
//! cyclotomic polynomials and units of the localized ring, linear solving,
//! and high-precision complex evaluation.

pub mod complex;
pub mod cyclomono;
pub mod cyclotomic;
pub mod gcd;
pub mod laurent;
pub mod linsolve;
pub mod ratfn;

pub use complex::{eval_complex, BigComplex};
pub use cyclomono::CycloMonomial;
pub use cyclotomic::{cyclotomic, is_unit_in_R, is_unit_in_r_with_bound, UnitCertificate};
pub use laurent::LaurentPoly;
pub use linsolve::{determinant, solve_linear_system, Solution};
pub use ratfn::RationalFn;
