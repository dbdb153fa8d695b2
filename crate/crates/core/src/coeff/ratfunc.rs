use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::Poly;
use super::Var;
use crate::error::{Error, Result};

/// Degree functional: total degree of numerator minus that of the
/// denominator, `NegInfinity` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Reduced fraction of polynomials with a monic denominator.
///
/// Invariants: `den != 0`, `gcd(num, den) = 1`, leading coefficient of
/// `den` is 1, and zero is stored as `0/1`. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::with_monic_den(num, den)
    }

    fn with_monic_den(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn integer(n: i64) -> Self {
        Self::from_poly(Poly::integer(n))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    /// `h + c` for the Cartan variable.
    pub fn h_plus(c: i64) -> Self {
        Self::from_poly(Poly::linear(Var::H, BigRational::from_integer(c.into())))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// `h -> h + c`; the parameters are never shifted.
    pub fn shift(&self, c: &BigRational) -> Self {
        self.translate(Var::H, c)
    }

    /// `v -> v + c`. A translation fixes the top homogeneous part of each
    /// polynomial and is an automorphism, so the result stays reduced with
    /// a monic denominator.
    pub fn translate(&self, v: Var, c: &BigRational) -> Self {
        if c.is_zero() || !self.contains(v) {
            return self.clone();
        }
        RatFunc {
            num: self.num.translate(v, c),
            den: self.den.translate(v, c),
        }
    }

    pub fn degree(&self) -> Degree {
        match self.num.total_degree() {
            None => Degree::NegInfinity,
            Some(n) => {
                let d = self.den.total_degree().unwrap_or(0);
                Degree::Finite(n as i64 - d as i64)
            }
        }
    }

    /// Ratio of the leading coefficients of numerator and denominator under
    /// the fixed term order.
    pub fn symbol(&self) -> Result<BigRational> {
        let n = self.num.leading_coeff().ok_or(Error::SymbolOfZero)?;
        let d = self.den.leading_coeff().expect("nonzero denominator");
        Ok(n / d)
    }

    /// Simultaneous substitution of variables by rational functions.
    pub fn substitute(&self, assignments: &BTreeMap<Var, RatFunc>) -> Result<Self> {
        if assignments.is_empty() || !assignments.keys().any(|v| self.contains(*v)) {
            return Ok(self.clone());
        }
        let (nn, nd) = substitute_poly(&self.num, assignments);
        let (dn, dd) = substitute_poly(&self.den, assignments);
        if dn.is_zero() {
            return Err(Error::SingularSubstitution);
        }
        Ok(Self::reduce(&nn * &dd, &nd * &dn))
    }

    /// Substitutes a single variable.
    pub fn substitute_var(&self, v: Var, value: &RatFunc) -> Result<Self> {
        if self.contains(v) && self.is_change_of_variables(v, value) {
            let map = BTreeMap::from([(v, value.clone())]);
            let (num, _) = substitute_poly(&self.num, &map);
            let (den, _) = substitute_poly(&self.den, &map);
            return Ok(Self::with_monic_den(num, den));
        }
        let mut map = BTreeMap::new();
        map.insert(v, value.clone());
        self.substitute(&map)
    }
}

impl RatFunc {
    /// `v -> value` extends to a ring isomorphism on the variables of
    /// `self`: `value` is linear in some variable `u` absent from `self`.
    /// Such a substitution keeps numerator and denominator coprime.
    fn is_change_of_variables(&self, v: Var, value: &RatFunc) -> bool {
        if !value.is_polynomial() || value.num.total_degree() != Some(1) {
            return false;
        }
        Var::ALL
            .iter()
            .any(|&u| u != v && !self.contains(u) && value.num.degree_in(u) == 1)
    }
}

/// Returns `(N, D)` with `p(assignments) = N / D`, where `D` is the product
/// of the substituted denominators raised to the degrees of `p`.
fn substitute_poly(p: &Poly, assignments: &BTreeMap<Var, RatFunc>) -> (Poly, Poly) {
    struct Powers {
        var: Var,
        num: Vec<Poly>,
        den: Vec<Poly>,
        degree: usize,
    }
    let mut powers = Vec::new();
    let mut denominator = Poly::one();
    for (&var, value) in assignments {
        let degree = p.degree_in(var) as usize;
        if degree == 0 {
            continue;
        }
        let mut num = vec![Poly::one()];
        let mut den = vec![Poly::one()];
        for k in 1..=degree {
            num.push(&num[k - 1] * value.num());
            den.push(&den[k - 1] * value.den());
        }
        denominator = &denominator * &den[degree];
        powers.push(Powers {
            var,
            num,
            den,
            degree,
        });
    }
    let mut numerator = Poly::zero();
    for (m, c) in p.terms() {
        let mut rest = *m;
        let mut term = Poly::one();
        for pw in &powers {
            let e = m.exponent(pw.var) as usize;
            rest.0[pw.var.index()] = 0;
            term = &term * &pw.num[e];
            term = &term * &pw.den[pw.degree - e];
        }
        numerator = &numerator + &term.mul_monomial(&rest, c);
    }
    (numerator, denominator)
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// `num` when the denominator is 1, otherwise `(num)/(den)`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d); any common factor of the new
        // numerator and denominator divides g.
        let g = gcd(&self.den, &rhs.den);
        let b_g = self.den.div_exact(&g).expect("gcd divides");
        let d_g = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d_g) + &(&rhs.num * &b_g);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let den = &b_g * &rhs.den;
        if g.is_one() {
            return RatFunc::with_monic_den(num, den);
        }
        let k = gcd(&num, &g);
        if k.is_one() {
            RatFunc::with_monic_den(num, den)
        } else {
            RatFunc::with_monic_den(
                num.div_exact(&k).expect("gcd divides"),
                den.div_exact(&k).expect("gcd divides"),
            )
        }
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFunc::with_monic_den(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}
