//! Exact verification and search for hyperovals in `PG(2, 2^m)`.
//!
//! Points of the plane are modelled in `K = GF(q^2)`; a hyperoval through
//! the origin is `{u/g(u) : u in S} ∪ {0}` for a g-function `g: S -> F` on
//! the unit circle `S`. Several independent criteria decide whether such a
//! set is a hyperoval:
//!
//! * [`criteria::check_geometric`]: every line meets the set in 0 or 2 points.
//! * [`criteria::check_even_solution`] and [`criteria::check_bracket_power_sum`].
//! * [`criteria::check_power_sum`]: power sums over a small exponent set vanish.
//! * [`gpoly::check_coeff_criterion`]: coefficients of powers of `g` vanish.
//! * [`gram::check_gram_criterion`]: Gram matrix row sums vanish.
//!
//! [`criteria::verify_all`] runs them all and insists they agree.

pub mod criteria;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod gpoly;
pub mod gram;
pub mod io;
pub mod plane;
pub mod search;

pub use error::{Error, Result};
pub use field::{FElem, FieldCtx, KElem};
