//! Seeded random elements for the property probes.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{Poly, RatFunc, Var};
use crate::ncalg::{Alphabet, NCElement, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    let mut n = rng.gen_range(-5i64..=5);
    if n == 0 {
        n = 1;
    }
    let d = rng.gen_range(1i64..=4);
    BigRational::new(n.into(), d.into())
}

/// Nonzero coefficient: a rational, `a + b*h`, or `(a + b*h)/(h + c)`.
pub fn random_coeff<R: Rng>(rng: &mut R) -> RatFunc {
    let kind = rng.gen_range(0..4);
    let linear = |rng: &mut R| {
        let mut p = Poly::constant(small_rational(rng));
        p = &p + &Poly::var(Var::H).scale(&small_rational(rng));
        RatFunc::from_poly(p)
    };
    match kind {
        0 => RatFunc::constant(small_rational(rng)),
        1 | 2 => linear(rng),
        _ => {
            let num = linear(rng);
            let c = rng.gen_range(1i64..=6);
            num.checked_div(&RatFunc::h_plus(c))
                .expect("h + c is nonzero")
        }
    }
}

pub fn random_word<R: Rng>(rng: &mut R, generators: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word((0..len).map(|_| rng.gen_range(0..generators)).collect())
}

/// Nonzero element with one to three terms of word length `<= max_len`.
/// Words are arbitrary, not necessarily ordered.
pub fn random_element<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_len: usize) -> NCElement {
    loop {
        let terms = rng.gen_range(1..=3);
        let e = NCElement::from_terms(
            (0..terms).map(|_| (random_word(rng, alphabet.len(), max_len), random_coeff(rng))),
        );
        if !e.is_zero() {
            return e;
        }
    }
}
