//! Ore conditions for the denominators `h + k`.
//!
//! A weight-homogeneous `a` of weight `mu` satisfies
//! `a (h + k + mu) = (h + k) a`, so the product of `h + k + mu_j` over the
//! distinct weights of `a` is a right multiplier that every component
//! can absorb.

use std::collections::BTreeSet;

use num_rational::BigRational;

use crate::coeff::{Poly, RatFunc, Var};
use crate::error::Result;
use crate::ncalg::{push_left, NCElement};
use crate::rewrite::{Presentation, DEFAULT_MAX_STEPS};

/// The denominator `h + k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Denominator {
    pub k: i64,
}

impl Denominator {
    pub fn new(k: i64) -> Self {
        Denominator { k }
    }

    pub fn as_ratfunc(&self) -> RatFunc {
        RatFunc::h_plus(self.k)
    }

    fn poly(&self) -> Poly {
        Poly::linear(Var::H, BigRational::from_integer(self.k.into()))
    }
}

/// `a * s_tilde = s * a_tilde`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreWitness {
    /// Weights `mu_j` contributing a factor `h + k + mu_j`.
    pub weights: Vec<i64>,
    pub s_tilde: RatFunc,
    pub a_tilde: NCElement,
}

fn s_tilde_for(s: Denominator, weights: &BTreeSet<i64>) -> Poly {
    weights.iter().fold(Poly::one(), |acc, mu| {
        &acc * &Denominator::new(s.k + mu).poly()
    })
}

pub fn ore_right(p: &Presentation, a: &NCElement, s: Denominator) -> OreWitness {
    let alphabet = p.alphabet();
    let weights: BTreeSet<i64> = a.terms().map(|(w, _)| alphabet.word_weight(w)).collect();
    let s_tilde = RatFunc::from_poly(s_tilde_for(s, &weights));
    let divisor = s.poly();
    let a_tilde = NCElement::from_terms(a.terms().map(|(w, f)| {
        // moving s_tilde left across w leaves a polynomial with the factor h + k
        let moved = push_left(&s_tilde, w, alphabet);
        let quotient = moved
            .num()
            .div_exact(&divisor)
            .expect("h + k divides the shifted product");
        (w.clone(), f * &RatFunc::from_poly(quotient))
    }));
    OreWitness {
        weights: weights.into_iter().collect(),
        s_tilde,
        a_tilde,
    }
}

/// `normal_form(a s_tilde - s a_tilde)`; zero for a valid witness.
pub fn ore_residual(
    p: &Presentation,
    a: &NCElement,
    s: Denominator,
    witness: &OreWitness,
) -> Result<NCElement> {
    let left = p.concat(a, &NCElement::scalar(witness.s_tilde.clone()));
    let right = p.concat(&NCElement::scalar(s.as_ratfunc()), &witness.a_tilde);
    p.normal_form(&(&left - &right), DEFAULT_MAX_STEPS)
}

/// Torsion transfer: a witness with `a s_tilde = 0` when `s a = 0`.
/// Coefficients form a field, so `s a = 0` only for `a = 0`.
pub fn ore_vanishing(p: &Presentation, a: &NCElement, s: Denominator) -> Option<OreWitness> {
    let sa = p.concat(&NCElement::scalar(s.as_ratfunc()), a);
    if !sa.is_zero() {
        return None;
    }
    Some(ore_right(p, a, s))
}
