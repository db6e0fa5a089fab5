//! Generalized Cesàro summation along rays in the complex plane, and the
//! special functions that fall out of it: Hurwitz and Riemann zeta, the
//! Gamma function as a remainder product, and the functional equations and
//! invariance properties that tie them together.

pub mod asymptotics;
pub mod cesaro_core;
pub mod error;
pub mod extrapolation;
pub mod functional_equations;
pub mod invariance;
pub mod numeric;
pub mod quadrature;
pub mod remainder_ops;
pub mod special_functions;

pub use error::{CesaroError, NotSummable, Result};
pub use num_complex::Complex64;
