//! Numerics for the secondary zeta function G(s) = Σ_{γ>0} γ^{-s} over the
//! ordinates of the nontrivial zeros of the Riemann zeta function: analytic
//! continuation, Laurent data at s = 1, critical-line moments, and the
//! related Mellin-transform zeta functions over zeros.

// `if !(x > 0.0)` guards are written that way on purpose: they reject NaN
// along with out-of-range values. Reference constants keep guard digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod acceptance;
pub mod cli;
pub mod error;
pub mod g_function;
pub mod laurent;
pub mod moments;
pub mod numeric;
pub mod smooth_terms;
pub mod specfun;
pub mod superzeta;
pub mod zero_data;

pub use error::{Error, Result};
