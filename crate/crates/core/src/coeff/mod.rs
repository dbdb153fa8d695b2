//! Exact coefficient field: rational functions over Q in the commuting
//! variables `h, nu, zeta, M, j`.
//!
//! `h` is the Cartan variable; it is the only variable moved by
//! [`RatFunc::shift`]. The others are parameters of the module family and
//! of the recurrence solver.

mod gcd;
mod poly;
mod ratfunc;

pub use gcd::gcd;
pub use poly::{Monomial, Poly};
pub use ratfunc::{Degree, RatFunc};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Coefficient variables, in term-order significance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    H,
    Nu,
    Zeta,
    M,
    J,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::H, Var::Nu, Var::Zeta, Var::M, Var::J];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::H => "h",
            Var::Nu => "nu",
            Var::Zeta => "zeta",
            Var::M => "M",
            Var::J => "j",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// Convenience constructor for small exact rationals.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
