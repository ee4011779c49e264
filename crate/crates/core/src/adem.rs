//! Adem-relation normalizer, used as an independent oracle.
//!
//! A composition `P^{a_1} ... P^{a_n}` with arbitrary positive letters is
//! rewritten to a combination of admissible words by repeatedly replacing
//! the leftmost adjacent pair with `a < p b` via
//!
//! ```text
//! P^a P^b = sum_t (-1)^{a+t} binom((p-1)(b-t) - 1, a - p t) P^{a+b-t} P^t
//! ```
//!
//! with binomials mod p and `P^0` absorbed. Each rewrite strictly decreases
//! the moment `sum i * a_i`, so the process terminates. Confluence is not
//! assumed anywhere: agreement with the Milnor product is what
//! [`compare_with_milnor`] checks.

use std::collections::BTreeMap;
use std::fmt;

use crate::fp::{self, Prime};
use crate::milnor::{AdmissibleWord, MilnorElement};
use crate::seq::ExponentSeq;

/// A word `P^{a_1} ... P^{a_n}` with no admissibility constraint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompositionWord {
    letters: Vec<u32>,
    p: Prime,
}

impl CompositionWord {
    /// # Panics
    ///
    /// Panics if any letter is zero.
    pub fn new(letters: impl Into<Vec<u32>>, p: Prime) -> Self {
        let letters = letters.into();
        assert!(letters.iter().all(|&a| a >= 1), "letters must be positive");
        CompositionWord { letters, p }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn degree(&self) -> u64 {
        2 * (self.p.as_u64() - 1) * self.letters.iter().map(|&a| a as u64).sum::<u64>()
    }

    /// Milnor expansion of the composition, by iterated products.
    pub fn to_milnor(&self) -> MilnorElement {
        let mut acc = MilnorElement::unit(self.p);
        for &a in &self.letters {
            acc = acc.product(&MilnorElement::reduced_power(self.p, a));
        }
        acc
    }
}

impl fmt::Display for CompositionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        write!(f, "P{}", ExponentSeq::new(self.letters.clone()))
    }
}

// Replacements for one inadmissible pair, as (letters, coefficient).
fn adem_pair(a: u32, b: u32, p: Prime) -> Vec<(Vec<u32>, u32)> {
    debug_assert!((a as u64) < p.as_u64() * b as u64);
    let mut out = Vec::new();
    for t in 0..=a / p.get() {
        // t <= a/p < b, so the upper argument stays nonnegative.
        let top = (p.as_u64() - 1) * (b - t) as u64 - 1;
        let bottom = (a - p.get() * t) as u64;
        let c = fp::mul_mod(
            fp::sign_mod((a + t) as u64, p),
            fp::binom_mod(top, bottom, p),
            p,
        );
        if c == 0 {
            continue;
        }
        let letters = if t == 0 {
            vec![a + b]
        } else {
            vec![a + b - t, t]
        };
        out.push((letters, c));
    }
    out
}

fn leftmost_inadmissible(letters: &[u32], p: Prime) -> Option<usize> {
    letters
        .windows(2)
        .position(|w| (w[0] as u64) < p.as_u64() * w[1] as u64)
}

fn normalize_counting(w: &CompositionWord, steps: &mut u64) -> BTreeMap<AdmissibleWord, u32> {
    let p = w.p;
    let mut result: BTreeMap<AdmissibleWord, u32> = BTreeMap::new();
    let mut work: Vec<(Vec<u32>, u32)> = vec![(w.letters.clone(), 1)];
    while let Some((letters, coeff)) = work.pop() {
        match leftmost_inadmissible(&letters, p) {
            None => {
                let word = AdmissibleWord::new(ExponentSeq::new(letters), p)
                    .expect("letters with no inadmissible pair form an admissible word");
                let entry = result.entry(word).or_insert(0);
                *entry = fp::add_mod(*entry, coeff, p);
            }
            Some(i) => {
                *steps += 1;
                for (repl, c) in adem_pair(letters[i], letters[i + 1], p) {
                    let mut next = Vec::with_capacity(letters.len() + repl.len() - 2);
                    next.extend_from_slice(&letters[..i]);
                    next.extend_from_slice(&repl);
                    next.extend_from_slice(&letters[i + 2..]);
                    work.push((next, fp::mul_mod(coeff, c, p)));
                }
            }
        }
    }
    result.retain(|_, c| *c != 0);
    result
}

/// Admissible-basis expansion of a composition via Adem rewriting.
pub fn adem_normalize(w: &CompositionWord) -> BTreeMap<AdmissibleWord, u32> {
    let mut steps = 0;
    normalize_counting(w, &mut steps)
}

/// True iff the Adem route and the Milnor-product route agree on `w`.
pub fn compare_with_milnor(w: &CompositionWord) -> bool {
    let mut via_adem = MilnorElement::zero(w.p);
    for (word, c) in adem_normalize(w) {
        via_adem = via_adem.add(&word.to_milnor().scale(c));
    }
    via_adem == w.to_milnor()
}
