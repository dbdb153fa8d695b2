//! The diagonal reduction algebra DR(sl(2)).
//!
//! Generators `z- < t < z+` of h-weights -2, 0, 2. The ordering relations
//! are written with coefficients on the right,
//!
//! ```text
//! z+ t  = t z+ (h+4)/(h+2)
//! z+ z- = z- z+ h(h+3)/((h+1)(h+2)) - t^2 (1/h) + h
//! t z-  = z- t (h+2)/h
//! ```
//!
//! and are stored in left-coefficient form after the weight shift.
//!
//! Sign convention: `[h, z-] = -2 z-`. This is the sign under which `z-`
//! lowers the module index in the `V_M` family and `h -> 2E` is a
//! homomorphism; the printed `[h, z-] = 2 z-` is not consistent with
//! either.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::coeff::{Degree, RatFunc};
use crate::error::Result;
use crate::expr::{self, render};
use crate::ncalg::{Alphabet, Generator, NCElement, Weight, Word};
use crate::rewrite::{Presentation, RewriteRule, DEFAULT_MAX_STEPS};
use crate::sample;

pub const Z_MINUS: usize = 0;
pub const T: usize = 1;
pub const Z_PLUS: usize = 2;

pub const SIGN_CONVENTION: &str = "[h, z-] = -2 z- (z- has weight -2)";

const RULE_ZP_T: &str = "t * z+ * (h+4)/(h+2)";
const RULE_ZP_ZM: &str = "z- * z+ * h*(h+3)/((h+1)*(h+2)) - t^2 * 1/h + h";
const RULE_T_ZM: &str = "z- * t * (h+2)/h";
const CASIMIR_1: &str = "(h+2)*t";
const CASIMIR_2: &str = "z- * z+ * (h+3)/(h+2) + t^2/4 + h*(h+4)/4";

pub fn alphabet() -> Alphabet {
    Alphabet::new(vec![
        Generator::new("z-", -2),
        Generator::new("t", 0),
        Generator::new("z+", 2),
    ])
    .expect("valid generators")
}

#[derive(Clone, Debug)]
pub struct DrSl2 {
    presentation: Presentation,
    c1: NCElement,
    c2: NCElement,
}

pub fn build() -> DrSl2 {
    let alphabet = alphabet();
    let parse = |s: &str| expr::parse(s, &alphabet).expect("built-in formula parses");
    let rules = vec![
        RewriteRule::new((Z_PLUS, T), parse(RULE_ZP_T)),
        RewriteRule::new((Z_PLUS, Z_MINUS), parse(RULE_ZP_ZM)),
        RewriteRule::new((T, Z_MINUS), parse(RULE_T_ZM)),
    ];
    let c1 = parse(CASIMIR_1);
    let c2 = parse(CASIMIR_2);
    assert_eq!(c1.weight_of(&alphabet), Weight::Homogeneous(0));
    assert_eq!(c2.weight_of(&alphabet), Weight::Homogeneous(0));
    let presentation =
        Presentation::new(alphabet, rules).expect("DR(sl(2)) rules are complete and homogeneous");
    DrSl2 {
        presentation,
        c1,
        c2,
    }
}

impl DrSl2 {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.presentation.alphabet()
    }

    /// `C1 = (h+2) t`.
    pub fn c1(&self) -> &NCElement {
        &self.c1
    }

    /// `C2 = (h+3)/(h+2) z- z+ + t^2/4 + h(h+4)/4`.
    pub fn c2(&self) -> &NCElement {
        &self.c2
    }

    pub fn generator(&self, i: usize) -> NCElement {
        NCElement::generator(i)
    }

    pub fn parse(&self, src: &str) -> Result<NCElement> {
        Ok(expr::parse(src, self.alphabet())?)
    }

    pub fn render(&self, e: &NCElement) -> String {
        render(e, self.alphabet())
    }

    pub fn normal_form(&self, a: &NCElement) -> Result<NCElement> {
        self.presentation.normal_form(a, DEFAULT_MAX_STEPS)
    }

    pub fn multiply(&self, a: &NCElement, b: &NCElement) -> Result<NCElement> {
        self.presentation.multiply(a, b)
    }

    pub fn commutator(&self, a: &NCElement, b: &NCElement) -> Result<NCElement> {
        commutator(&self.presentation, a, b)
    }

    /// Commutators of both central elements with each generator, with a
    /// generic coefficient, and with each other.
    pub fn center_checks(&self) -> Result<Vec<(String, NCElement)>> {
        let generic = self.parse("(h^2 + nu*h + 1)/(h + zeta)")?;
        let mut out = Vec::new();
        for (cname, c) in [("C1", &self.c1), ("C2", &self.c2)] {
            for g in [Z_MINUS, T, Z_PLUS] {
                let name = format!("[{cname}, {}]", self.alphabet().name(g));
                out.push((name, self.commutator(c, &self.generator(g))?));
            }
            out.push((format!("[{cname}, f(h)]"), self.commutator(c, &generic)?));
        }
        out.push(("[C1, C2]".to_string(), self.commutator(&self.c1, &self.c2)?));
        Ok(out)
    }

    pub fn graded_symbol_check(&self) -> Vec<RuleSymbolCheck> {
        graded_symbol_check(&self.presentation)
    }

    /// Multiplies seeded random pairs of nonzero normal-form elements and
    /// records any pair whose product normalizes to zero.
    pub fn zero_divisor_probe(
        &self,
        seed: u64,
        trials: usize,
        max_deg: usize,
    ) -> Result<ZeroDivisorReport> {
        let mut rng = sample::rng(seed);
        let mut counterexamples = Vec::new();
        for _ in 0..trials {
            let a = self.random_normal_element(&mut rng, max_deg)?;
            let b = self.random_normal_element(&mut rng, max_deg)?;
            if self.multiply(&a, &b)?.is_zero() {
                counterexamples.push((self.render(&a), self.render(&b)));
            }
        }
        Ok(ZeroDivisorReport {
            seed,
            trials,
            max_deg,
            counterexamples,
        })
    }

    fn random_normal_element<R: rand::Rng>(
        &self,
        rng: &mut R,
        max_deg: usize,
    ) -> Result<NCElement> {
        loop {
            let e = self.normal_form(&sample::random_element(rng, self.alphabet(), max_deg))?;
            if !e.is_zero() {
                return Ok(e);
            }
        }
    }
}

/// `normal_form(a b - b a)`.
pub fn commutator(p: &Presentation, a: &NCElement, b: &NCElement) -> Result<NCElement> {
    let ab = p.concat(a, b);
    let ba = p.concat(b, a);
    p.normal_form(&(&ab - &ba), DEFAULT_MAX_STEPS)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroDivisorReport {
    pub seed: u64,
    pub trials: usize,
    pub max_deg: usize,
    pub counterexamples: Vec<(String, String)>,
}

impl ZeroDivisorReport {
    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Graded-commutativity data for one rule `I J -> ...`: the coefficient of
/// the swapped word `J I` must have degree 0 and symbol 1, and every other
/// quadratic coefficient must have negative degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSymbolCheck {
    pub lhs: String,
    pub swap_coeff: RatFunc,
    pub swap_degree: Degree,
    pub swap_symbol: Option<BigRational>,
    pub other_quadratic: Vec<(String, Degree)>,
    pub pass: bool,
}

pub fn graded_symbol_check(p: &Presentation) -> Vec<RuleSymbolCheck> {
    let alphabet = p.alphabet();
    p.rules()
        .map(|rule| {
            let (i, j) = rule.lhs;
            let swapped = Word(vec![j, i]);
            let swap_coeff = rule
                .rhs
                .coeff(&swapped)
                .cloned()
                .unwrap_or_else(RatFunc::zero);
            let swap_degree = swap_coeff.degree();
            let swap_symbol = swap_coeff.symbol().ok();
            let other_quadratic: Vec<_> = rule
                .rhs
                .terms()
                .filter(|(w, _)| w.len() == 2 && **w != swapped)
                .map(|(w, c)| (alphabet.render_word(w), c.degree()))
                .collect();
            let pass = swap_degree == Degree::Finite(0)
                && swap_symbol.as_ref().is_some_and(One::is_one)
                && other_quadratic.iter().all(|(_, d)| *d < Degree::Finite(0));
            RuleSymbolCheck {
                lhs: format!("{} {}", alphabet.name(i), alphabet.name(j)),
                swap_coeff,
                swap_degree,
                swap_symbol,
                other_quadratic,
                pass,
            }
        })
        .collect()
}
