//! Ordering-relation rewriting and the overlap (diamond lemma) check.
//!
//! A presentation has one rule per strictly decreasing generator pair
//! `I > J`, rewriting `I J` into a combination of ordered words of length
//! at most two. Since every left-hand side has length two, the only minimal
//! ambiguities are the overlaps `I J K` with `I > J > K`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::coeff::RatFunc;
use crate::error::{Error, Result};
use crate::expr::{self, render};
use crate::ncalg::{concat, push_left, Alphabet, Generator, NCElement, Word};

pub const DEFAULT_MAX_STEPS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    /// `(I, J)` with `I > J` in the generator order.
    pub lhs: (usize, usize),
    pub rhs: NCElement,
}

impl RewriteRule {
    pub fn new(lhs: (usize, usize), rhs: NCElement) -> Self {
        RewriteRule { lhs, rhs }
    }

    pub fn lhs_word(&self) -> Word {
        Word(vec![self.lhs.0, self.lhs.1])
    }

    fn validate(&self, alphabet: &Alphabet) -> Result<()> {
        let (i, j) = self.lhs;
        let lhs_name = || format!("{} {}", alphabet.name(i), alphabet.name(j));
        let bad = |reason: String| Error::InvalidRule {
            lhs: lhs_name(),
            reason,
        };
        if i >= alphabet.len() || j >= alphabet.len() {
            return Err(Error::InvalidRule {
                lhs: format!("{i} {j}"),
                reason: "generator index out of range".into(),
            });
        }
        if i <= j {
            return Err(bad("left-hand side is not a decreasing pair".into()));
        }
        let weight = alphabet.weight(i) + alphabet.weight(j);
        for (w, _) in self.rhs.terms() {
            if w.len() > 2 {
                return Err(bad(format!(
                    "word {} longer than two",
                    alphabet.render_word(w)
                )));
            }
            if w.letters().iter().any(|&g| g >= alphabet.len()) {
                return Err(bad("generator index out of range".into()));
            }
            if !w.is_ordered() {
                return Err(bad(format!(
                    "word {} is not ordered",
                    alphabet.render_word(w)
                )));
            }
            if alphabet.word_weight(w) != weight {
                return Err(bad(format!(
                    "word {} has weight {}, expected {}",
                    alphabet.render_word(w),
                    alphabet.word_weight(w),
                    weight
                )));
            }
        }
        Ok(())
    }
}

/// Redex selection for [`Presentation::normal_form_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost descent of the lexicographically first unordered word.
    #[default]
    Leftmost,
    /// Rightmost descent of the lexicographically last unordered word.
    Rightmost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    rules: BTreeMap<(usize, usize), RewriteRule>,
    weight_compatible: bool,
}

impl Presentation {
    /// Validates every rule and requires one rule per decreasing pair.
    pub fn new(alphabet: Alphabet, rules: Vec<RewriteRule>) -> Result<Self> {
        let p = Self::new_partial(alphabet, rules)?;
        p.ensure_complete()?;
        Ok(p)
    }

    /// Like [`Presentation::new`] but allows missing rules; rewriting a pair
    /// without a rule then fails with [`Error::IncompletePresentation`].
    pub fn new_partial(alphabet: Alphabet, rules: Vec<RewriteRule>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for r in rules {
            r.validate(&alphabet)?;
            if map.insert(r.lhs, r.clone()).is_some() {
                return Err(Error::InvalidRule {
                    lhs: format!("{} {}", alphabet.name(r.lhs.0), alphabet.name(r.lhs.1)),
                    reason: "duplicate rule".into(),
                });
            }
        }
        let weight_compatible = alphabet.is_weight_compatible();
        if !weight_compatible {
            log::warn!(
                "generator order is not compatible with weights; rewriting may not terminate"
            );
        }
        Ok(Presentation {
            alphabet,
            rules: map,
            weight_compatible,
        })
    }

    pub fn ensure_complete(&self) -> Result<()> {
        for i in 0..self.alphabet.len() {
            for j in 0..i {
                if !self.rules.contains_key(&(i, j)) {
                    return Err(self.missing(i, j));
                }
            }
        }
        Ok(())
    }

    fn missing(&self, i: usize, j: usize) -> Error {
        Error::IncompletePresentation(
            self.alphabet.name(i).to_string(),
            self.alphabet.name(j).to_string(),
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> impl Iterator<Item = &RewriteRule> {
        self.rules.values()
    }

    pub fn rule(&self, i: usize, j: usize) -> Option<&RewriteRule> {
        self.rules.get(&(i, j))
    }

    pub fn is_weight_compatible(&self) -> bool {
        self.weight_compatible
    }

    /// Copy with the right-hand side of one rule replaced.
    pub fn with_rule(&self, rule: RewriteRule) -> Result<Self> {
        rule.validate(&self.alphabet)?;
        let mut p = self.clone();
        p.rules.insert(rule.lhs, rule);
        Ok(p)
    }

    /// Raw concatenation, no rewriting.
    pub fn concat(&self, a: &NCElement, b: &NCElement) -> NCElement {
        concat(a, b, &self.alphabet)
    }

    /// Product in the algebra: concatenation followed by normal form.
    pub fn multiply(&self, a: &NCElement, b: &NCElement) -> Result<NCElement> {
        self.normal_form(&self.concat(a, b), DEFAULT_MAX_STEPS)
    }

    /// `c * P (I J) S` rewritten to `sum c * push_left(b, P) * P K S`.
    fn rewrite_at(&self, word: &Word, coeff: &RatFunc, pos: usize) -> Result<NCElement> {
        let letters = word.letters();
        let (i, j) = (letters[pos], letters[pos + 1]);
        let rule = self.rules.get(&(i, j)).ok_or_else(|| self.missing(i, j))?;
        let prefix = Word(letters[..pos].to_vec());
        let suffix = Word(letters[pos + 2..].to_vec());
        let mut out = NCElement::zero();
        for (w, b) in rule.rhs.terms() {
            let moved = push_left(b, &prefix, &self.alphabet);
            out.add_term(prefix.concat(w).concat(&suffix), coeff * &moved);
        }
        Ok(out)
    }

    /// One rewrite: the leftmost descent of the lexicographically first
    /// unordered word. Returns the new element and whether it changed.
    pub fn apply_once(&self, a: &NCElement) -> Result<(NCElement, bool)> {
        let target = a
            .terms()
            .find_map(|(w, c)| w.first_descent().map(|pos| (w.clone(), c.clone(), pos)));
        let Some((word, coeff, pos)) = target else {
            return Ok((a.clone(), false));
        };
        let replacement = self.rewrite_at(&word, &coeff, pos)?;
        let mut out = a.clone();
        out.add_term(word, -&coeff);
        Ok((&out + &replacement, true))
    }

    pub fn normal_form(&self, a: &NCElement, max_steps: usize) -> Result<NCElement> {
        self.normal_form_with(a, Strategy::Leftmost, max_steps)
    }

    /// Rewrites until every word is ordered. With [`Strategy::Leftmost`]
    /// this is exactly the fixed point of repeated [`Self::apply_once`].
    pub fn normal_form_with(
        &self,
        a: &NCElement,
        strategy: Strategy,
        max_steps: usize,
    ) -> Result<NCElement> {
        let mut done = NCElement::zero();
        let mut pending = NCElement::zero();
        for (w, c) in a.terms() {
            if w.is_ordered() {
                done.add_term(w.clone(), c.clone());
            } else {
                pending.add_term(w.clone(), c.clone());
            }
        }
        let mut pending = pending.into_terms();
        let mut steps = 0usize;
        loop {
            let next = match strategy {
                Strategy::Leftmost => pending.pop_first(),
                Strategy::Rightmost => pending.pop_last(),
            };
            let Some((word, coeff)) = next else {
                break;
            };
            if steps >= max_steps {
                return Err(Error::TerminationGuard(steps));
            }
            steps += 1;
            let pos = match strategy {
                Strategy::Leftmost => word.first_descent(),
                Strategy::Rightmost => word.last_descent(),
            }
            .expect("pending words are unordered");
            for (w, c) in self.rewrite_at(&word, &coeff, pos)?.into_terms() {
                if w.is_ordered() {
                    done.add_term(w, c);
                } else {
                    add_to(&mut pending, w, c);
                }
            }
        }
        Ok(done)
    }

    /// Resolves every overlap `I J K`, `I > J > K`, both ways.
    pub fn check_confluence(&self) -> Result<ConfluenceReport> {
        self.check_confluence_with(DEFAULT_MAX_STEPS)
    }

    pub fn check_confluence_with(&self, max_steps: usize) -> Result<ConfluenceReport> {
        self.ensure_complete()?;
        let n = self.alphabet.len();
        let mut triples = Vec::new();
        for i in (0..n).rev() {
            for j in (0..i).rev() {
                for k in (0..j).rev() {
                    let first = NCElement::generator(i);
                    let last = NCElement::generator(k);
                    let ij = &self.rules[&(i, j)].rhs;
                    let jk = &self.rules[&(j, k)].rhs;
                    let left_first = self.normal_form(&self.concat(ij, &last), max_steps)?;
                    let right_first = self.normal_form(&self.concat(&first, jk), max_steps)?;
                    let equal = left_first == right_first;
                    triples.push(TripleCheck {
                        triple: [i, j, k],
                        left_first,
                        right_first,
                        equal,
                    });
                }
            }
        }
        let overall = triples.iter().all(|t| t.equal);
        Ok(ConfluenceReport { triples, overall })
    }

    /// All ordered words of length at most `max_degree`, by length and then
    /// lexicographically.
    pub fn enumerate_basis(&self, max_degree: usize) -> Vec<Word> {
        let n = self.alphabet.len();
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_degree {
            let mut next = Vec::new();
            for w in &layer {
                let from = w.letters().last().copied().unwrap_or(0);
                for g in from..n {
                    let mut v = w.0.clone();
                    v.push(g);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Normal forms of all `n^degree` words of the given length, expressed
    /// over the ordered words of length at most `degree`, together with the
    /// normal forms of those ordered words themselves.
    pub fn transition(&self, degree: usize, max_steps: usize) -> Result<Transition> {
        let n = self.alphabet.len();
        let basis = self.enumerate_basis(degree);
        let mut words = Vec::new();
        let mut rows = Vec::new();
        let total = n.checked_pow(degree as u32).unwrap_or(0);
        for code in 0..total {
            let mut letters = Vec::with_capacity(degree);
            let mut c = code;
            for _ in 0..degree {
                letters.push(c % n);
                c /= n;
            }
            letters.reverse();
            let w = Word(letters);
            rows.push(self.normal_form(&NCElement::word(w.clone()), max_steps)?);
            words.push(w);
        }
        let basis_rows = basis
            .iter()
            .map(|w| self.normal_form(&NCElement::word(w.clone()), max_steps))
            .collect::<Result<Vec<_>>>()?;
        Ok(Transition {
            words,
            basis,
            rows,
            basis_rows,
        })
    }

    /// Declarative text form: `gen <name> <weight>` lines in order, then
    /// one `I J -> <expression>` line per rule.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g in self.alphabet.generators() {
            writeln!(s, "gen {} {}", g.name, g.weight).unwrap();
        }
        for i in (0..self.alphabet.len()).rev() {
            for j in (0..i).rev() {
                if let Some(r) = self.rules.get(&(i, j)) {
                    writeln!(
                        s,
                        "{} {} -> {}",
                        self.alphabet.name(i),
                        self.alphabet.name(j),
                        render(&r.rhs, &self.alphabet)
                    )
                    .unwrap();
                }
            }
        }
        s
    }

    /// Parses the text form. Blank lines and `#` comments are ignored; all
    /// `gen` lines must precede the rules.
    pub fn from_text(src: &str) -> Result<Self> {
        let mut generators = Vec::new();
        let mut rule_lines = Vec::new();
        for (n, raw) in src.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fmt_err = |msg: &str| Error::PresentationFormat {
                line: line_no,
                msg: msg.to_string(),
            };
            if let Some(rest) = line.strip_prefix("gen ") {
                if !rule_lines.is_empty() {
                    return Err(fmt_err("generator declared after rules"));
                }
                let mut parts = rest.split_whitespace();
                let (Some(name), Some(weight), None) = (parts.next(), parts.next(), parts.next())
                else {
                    return Err(fmt_err("expected `gen <name> <weight>`"));
                };
                let weight: i64 = weight.parse().map_err(|_| fmt_err("bad weight"))?;
                generators.push(Generator::new(name, weight));
            } else {
                rule_lines.push((line_no, line));
            }
        }
        let alphabet = Alphabet::new(generators)?;
        let mut rules = Vec::new();
        for (line_no, line) in rule_lines {
            let fmt_err = |msg: String| Error::PresentationFormat { line: line_no, msg };
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| fmt_err("expected `I J -> <expression>`".into()))?;
            let names: Vec<&str> = lhs.split_whitespace().collect();
            let [a, b] = names.as_slice() else {
                return Err(fmt_err("left-hand side must be two generators".into()));
            };
            let idx = |s: &str| {
                alphabet
                    .index_of(s)
                    .ok_or_else(|| fmt_err(format!("unknown generator {s}")))
            };
            let (i, j) = (idx(a)?, idx(b)?);
            let rhs = expr::parse(rhs.trim(), &alphabet)?;
            rules.push(RewriteRule::new((i, j), rhs));
        }
        Presentation::new(alphabet, rules)
    }
}

fn add_to(map: &mut BTreeMap<Word, RatFunc>, w: Word, c: RatFunc) {
    use std::collections::btree_map::Entry;
    match map.entry(w) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get() + &c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// Row `i` is the normal form of `words[i]` in the ordered basis;
/// `basis_rows[i]` is the normal form of `basis[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub words: Vec<Word>,
    pub basis: Vec<Word>,
    pub rows: Vec<NCElement>,
    pub basis_rows: Vec<NCElement>,
}

impl Transition {
    /// Every row is supported on `basis`.
    pub fn in_span(&self) -> bool {
        self.rows.iter().all(|r| {
            r.terms()
                .all(|(w, _)| self.basis.binary_search_by(|b| cmp_basis(b, w)).is_ok())
        })
    }

    /// Every ordered word normalizes to itself.
    pub fn basis_rows_are_identity(&self) -> bool {
        self.basis
            .iter()
            .zip(&self.basis_rows)
            .all(|(w, r)| *r == NCElement::word(w.clone()))
    }

    pub fn nonzero_entries(&self) -> usize {
        self.rows.iter().map(NCElement::len).sum()
    }
}

fn cmp_basis(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCheck {
    pub triple: [usize; 3],
    pub left_first: NCElement,
    pub right_first: NCElement,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub triples: Vec<TripleCheck>,
    pub overall: bool,
}

/// Serializable view of one overlap check.
#[derive(Clone, Debug, Serialize)]
pub struct TripleSummary {
    pub triple: [String; 3],
    pub left_first: String,
    pub right_first: String,
    pub equal: bool,
}

impl ConfluenceReport {
    pub fn summaries(&self, alphabet: &Alphabet) -> Vec<TripleSummary> {
        self.triples
            .iter()
            .map(|t| TripleSummary {
                triple: t.triple.map(|g| alphabet.name(g).to_string()),
                left_first: render(&t.left_first, alphabet),
                right_first: render(&t.right_first, alphabet),
                equal: t.equal,
            })
            .collect()
    }
}
