//! Words and elements of a weight-graded algebra over the coefficient
//! field.
//!
//! Elements are stored as left combinations `sum f_w(h) * w`. The Cartan
//! variable `h` is not a generator: a generator `p` of weight `mu` obeys
//! `[h, p] = mu * p`, hence `p * f(h) = f(h - mu) * p`, and moving a
//! coefficient leftward across a word shifts `h` by minus the word's weight.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;

use crate::coeff::{RatFunc, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub weight: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, weight: i64) -> Self {
        Generator {
            name: name.into(),
            weight,
        }
    }
}

/// Generators listed in increasing order; index order is the total order
/// used for ordered (PBW) words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    generators: Vec<Generator>,
}

impl Alphabet {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !valid_generator_name(&g.name) {
                return Err(Error::InvalidAlphabet(format!(
                    "bad generator name {:?}",
                    g.name
                )));
            }
            if generators[..i].iter().any(|o| o.name == g.name) {
                return Err(Error::InvalidAlphabet(format!(
                    "duplicate generator {}",
                    g.name
                )));
            }
        }
        Ok(Alphabet { generators })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn name(&self, i: usize) -> &str {
        &self.generators[i].name
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.generators[i].weight
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn word_weight(&self, w: &Word) -> i64 {
        w.0.iter().map(|&i| self.weight(i)).sum()
    }

    /// Parses a whitespace- or `*`-separated list of generator names.
    pub fn word(&self, names: &str) -> Result<Word> {
        names
            .split(|c: char| c.is_whitespace() || c == '*')
            .filter(|s| !s.is_empty())
            .map(|s| {
                self.index_of(s)
                    .ok_or_else(|| Error::InvalidAlphabet(format!("unknown generator {s}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.0.iter()
            .map(|&i| self.name(i))
            .collect::<Vec<_>>()
            .join(" * ")
    }

    /// Heuristic form of the weight-compatibility assumption on the order:
    /// weights never decrease along the generator order.
    pub fn is_weight_compatible(&self) -> bool {
        self.generators
            .windows(2)
            .all(|p| p[0].weight <= p[1].weight)
    }
}

/// Generator names: an identifier, optionally followed by one `+` or `-`,
/// that is not a coefficient variable.
pub fn valid_generator_name(name: &str) -> bool {
    let core = name.strip_suffix(['+', '-']).unwrap_or(name);
    let mut chars = core.chars();
    let head_ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    head_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && Var::from_name(core).is_none()
        && Var::from_name(name).is_none()
}

/// A word in the generators, stored as generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Non-decreasing in the generator order.
    pub fn is_ordered(&self) -> bool {
        self.first_descent().is_none()
    }

    /// Position `i` of the leftmost pair with `w[i] > w[i+1]`.
    pub fn first_descent(&self) -> Option<usize> {
        self.0.windows(2).position(|p| p[0] > p[1])
    }

    pub fn last_descent(&self) -> Option<usize> {
        self.0.windows(2).rposition(|p| p[0] > p[1])
    }

    /// Display order: longer words first, then lexicographic.
    pub fn display_cmp(&self, other: &Word) -> std::cmp::Ordering {
        other.len().cmp(&self.len()).then_with(|| self.cmp(other))
    }
}

/// `f` moved to the left of `w`: `w * f = push_left(f, w) * w`.
pub fn push_left(f: &RatFunc, w: &Word, alphabet: &Alphabet) -> RatFunc {
    let weight = alphabet.word_weight(w);
    if weight == 0 {
        return f.clone();
    }
    f.shift(&BigRational::from_integer((-weight).into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Homogeneous(i64),
    Mixed,
}

/// Finite sum of left coefficients times words.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct NCElement {
    terms: BTreeMap<Word, RatFunc>,
}

impl NCElement {
    pub fn zero() -> Self {
        NCElement::default()
    }

    pub fn one() -> Self {
        NCElement::scalar(RatFunc::one())
    }

    pub fn scalar(f: RatFunc) -> Self {
        NCElement::monomial(f, Word::empty())
    }

    pub fn word(w: Word) -> Self {
        NCElement::monomial(RatFunc::one(), w)
    }

    pub fn generator(i: usize) -> Self {
        NCElement::word(Word::letter(i))
    }

    pub fn monomial(f: RatFunc, w: Word) -> Self {
        let mut e = NCElement::zero();
        e.add_term(w, f);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, RatFunc)>>(terms: I) -> Self {
        let mut e = NCElement::zero();
        for (w, f) in terms {
            e.add_term(w, f);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &f;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    /// Terms in display order (longest words first).
    pub fn display_terms(&self) -> Vec<(&Word, &RatFunc)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    pub fn coeff(&self, w: &Word) -> Option<&RatFunc> {
        self.terms.get(w)
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Word, RatFunc> {
        self.terms
    }

    /// The coefficient if every word is empty.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn is_ordered(&self) -> bool {
        self.terms.keys().all(Word::is_ordered)
    }

    pub fn scale_left(&self, f: &RatFunc) -> NCElement {
        NCElement::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f * c)))
    }

    /// Common weight of all words; zero counts as weight 0.
    pub fn weight_of(&self, alphabet: &Alphabet) -> Weight {
        let mut weights = self.terms.keys().map(|w| alphabet.word_weight(w));
        let first = match weights.next() {
            Some(w) => w,
            None => return Weight::Homogeneous(0),
        };
        if weights.all(|w| w == first) {
            Weight::Homogeneous(first)
        } else {
            Weight::Mixed
        }
    }

    /// Decomposition into weight-homogeneous components.
    pub fn weight_components(&self, alphabet: &Alphabet) -> BTreeMap<i64, NCElement> {
        let mut out: BTreeMap<i64, NCElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(alphabet.word_weight(w))
                .or_default()
                .add_term(w.clone(), c.clone());
        }
        out
    }
}

/// Raw product: words are concatenated and the right factor's coefficients
/// are pushed left across the left factor's words. No rewriting.
pub fn concat(a: &NCElement, b: &NCElement, alphabet: &Alphabet) -> NCElement {
    let mut out = NCElement::zero();
    for (u, f) in &a.terms {
        for (v, g) in &b.terms {
            let moved = push_left(g, u, alphabet);
            out.add_term(u.concat(v), f * &moved);
        }
    }
    out
}

impl fmt::Debug for NCElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("NCElement{")?;
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{:?}: {}", w.0, c)?;
        }
        f.write_str("}")
    }
}

impl<'a> Add<&'a NCElement> for &'a NCElement {
    type Output = NCElement;
    fn add(self, rhs: &'a NCElement) -> NCElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a NCElement> for &'a NCElement {
    type Output = NCElement;
    fn sub(self, rhs: &'a NCElement) -> NCElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &NCElement {
    type Output = NCElement;
    fn neg(self) -> NCElement {
        NCElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Add for NCElement {
    type Output = NCElement;
    fn add(self, rhs: NCElement) -> NCElement {
        &self + &rhs
    }
}

impl Sub for NCElement {
    type Output = NCElement;
    fn sub(self, rhs: NCElement) -> NCElement {
        &self - &rhs
    }
}
