//! The action on polynomial algebras with degree-2 generators.
//!
//! `H^*(K(Z,2)^m; F_p)` is a polynomial ring on classes `i_1, ..., i_m` of
//! topological degree 2. On a single power the reduced powers act by
//! `P^k(i^a) = binom(a, k) i^{a + k(p-1)}`, and the Cartan formula extends
//! this across monomials. The action factors through the Bockstein quotient,
//! so it doubles as an independent check on the algebra side: see
//! [`chi_nontriviality_witness`] and the module-structure tests.
//!
//! Monomials are exponent vectors of fixed width (one slot per variable),
//! compared in left-lexicographic order; that order is local to this module.

use std::collections::BTreeMap;
use std::fmt;

use crate::fp::{self, Prime};
use crate::milnor::{milnor_to_admissible, AdmissibleWord, MilnorElement};
use crate::seq::{ex, greatest_in_upsilon_r};

/// Sparse polynomial in `i_1, ..., i_m` over F_p; keys are exponent vectors
/// of length `vars`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyClass {
    p: Prime,
    vars: usize,
    terms: BTreeMap<Vec<u32>, u32>,
}

impl PolyClass {
    pub fn zero(p: Prime, vars: usize) -> Self {
        PolyClass {
            p,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(p: Prime, exponents: Vec<u32>, coeff: u32) -> Self {
        let vars = exponents.len();
        let mut f = Self::zero(p, vars);
        f.add_term(exponents, coeff);
        f
    }

    /// `i_1 i_2 ... i_m`, the product of the fundamental classes.
    pub fn fundamental_product(p: Prime, m: usize) -> Self {
        Self::monomial(p, vec![1; m], 1)
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn vars(&self) -> usize {
        self.vars
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

    /// Term iteration in ascending left-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u32)> {
        self.terms.iter().map(|(m, &c)| (m.as_slice(), c))
    }

    pub fn coeff(&self, exponents: &[u32]) -> u32 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    /// Left-lexicographically greatest monomial, with its coefficient.
    pub fn leading_monomial(&self) -> Option<(&[u32], u32)> {
        self.terms
            .last_key_value()
            .map(|(m, &c)| (m.as_slice(), c))
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coeff: u32) {
        assert_eq!(exponents.len(), self.vars, "variable count mismatch");
        let c = coeff % self.p.get();
        if c == 0 {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let next = fp::add_mod(*o.get(), c, self.p);
                if next == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = next;
                }
            }
        }
    }

    pub fn add(&self, other: &PolyClass) -> PolyClass {
        assert_eq!(self.p, other.p, "prime mismatch");
        assert_eq!(self.vars, other.vars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.to_vec(), c);
        }
        out
    }

    pub fn scale(&self, c: u32) -> PolyClass {
        let mut out = PolyClass::zero(self.p, self.vars);
        for (m, a) in self.terms() {
            out.add_term(m.to_vec(), fp::mul_mod(a, c, self.p));
        }
        out
    }

    pub fn mul(&self, other: &PolyClass) -> PolyClass {
        assert_eq!(self.p, other.p, "prime mismatch");
        assert_eq!(self.vars, other.vars, "variable count mismatch");
        let mut out = PolyClass::zero(self.p, self.vars);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let exps: Vec<u32> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(exps, fp::mul_mod(ca, cb, self.p));
            }
        }
        out
    }

    /// Topological degree `2 sum a_k`; `None` for zero or mixed elements.
    pub fn degree(&self) -> Option<u64> {
        let mut degs = self
            .terms
            .keys()
            .map(|m| 2 * m.iter().map(|&a| a as u64).sum::<u64>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// `P^k` on this class, by the Cartan formula across variables.
    pub fn apply_pk(&self, k: u32) -> PolyClass {
        let mut out = PolyClass::zero(self.p, self.vars);
        for (m, c) in self.terms() {
            distribute_pk(self.p, k, m, c, &mut out);
        }
        out
    }
}

impl fmt::Display for PolyClass {
    /// Renders terms in descending left-lexicographic order, monomials as
    /// `i1^2*i2` with unit exponents and zero factors elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let constant = m.iter().all(|&a| a == 0);
            if *c != 1 || constant {
                write!(f, "{c}")?;
                if !constant {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (v, &a) in m.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "i{}", v + 1)?;
                if a > 1 {
                    write!(f, "^{a}")?;
                }
            }
        }
        Ok(())
    }
}

/// `P^k(i^a) = binom(a, k) i^{a + k(p-1)}` on a single degree-2 power.
pub fn pk_on_power(p: Prime, k: u32, a: u32) -> (u32, u32) {
    (
        fp::binom_mod(a as u64, k as u64, p),
        a + k * (p.get() - 1),
    )
}

// Distributes P^k over the variables of one monomial: all (k_1, ..., k_m)
// with sum k contribute prod binom(a_j, k_j) and raise each exponent by
// k_j (p-1). Summands with k_j > a_j vanish, so k_j is capped by a_j.
fn distribute_pk(p: Prime, k: u32, exps: &[u32], coeff: u32, acc: &mut PolyClass) {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        p: Prime,
        exps: &[u32],
        suffix_cap: &[u32],
        j: usize,
        rem: u32,
        coeff: u32,
        buf: &mut Vec<u32>,
        acc: &mut PolyClass,
    ) {
        if j == exps.len() {
            if rem == 0 {
                acc.add_term(buf.clone(), coeff);
            }
            return;
        }
        if rem > suffix_cap[j] {
            return; // not enough exponent left to absorb the operation
        }
        for kj in 0..=rem.min(exps[j]) {
            let c = fp::mul_mod(coeff, fp::binom_mod(exps[j] as u64, kj as u64, p), p);
            if c == 0 {
                continue;
            }
            buf.push(exps[j] + kj * (p.get() - 1));
            rec(p, exps, suffix_cap, j + 1, rem - kj, c, buf, acc);
            buf.pop();
        }
    }

    let mut suffix_cap = vec![0u32; exps.len() + 1];
    for j in (0..exps.len()).rev() {
        suffix_cap[j] = suffix_cap[j + 1].saturating_add(exps[j]);
    }
    let mut buf = Vec::with_capacity(exps.len());
    rec(p, exps, &suffix_cap, 0, k, coeff, &mut buf, acc);
}

/// Applies `P^{x_1} P^{x_2} ... P^{x_n}` to `f`, composing right to left.
pub fn apply_letters(letters: &[u32], f: &PolyClass) -> PolyClass {
    let mut out = f.clone();
    for &x in letters.iter().rev() {
        out = out.apply_pk(x);
    }
    out
}

/// Action of an admissible word.
pub fn apply_word(w: &AdmissibleWord, f: &PolyClass) -> PolyClass {
    assert_eq!(w.p(), f.p(), "prime mismatch");
    apply_letters(w.letters(), f)
}

/// Action of an arbitrary composition word.
pub fn apply_composition(w: &crate::adem::CompositionWord, f: &PolyClass) -> PolyClass {
    assert_eq!(w.p(), f.p(), "prime mismatch");
    apply_letters(w.letters(), f)
}

/// Action of a homogeneous algebra element, via its admissible expansion.
///
/// # Panics
///
/// Panics on mixed-degree input or mismatched primes.
pub fn apply_element(e: &MilnorElement, f: &PolyClass) -> PolyClass {
    assert_eq!(e.p(), f.p(), "prime mismatch");
    let mut out = PolyClass::zero(f.p(), f.vars());
    for (word, c) in milnor_to_admissible(e) {
        out = out.add(&apply_word(&word, f).scale(c));
    }
    out
}

/// Outcome of the antipode nontriviality computation for `(p, r)`.
pub struct NontrivialityWitness {
    /// `chi(P^r)` applied to `i_1 ... i_{ex(r)/2}`.
    pub result: PolyClass,
    /// The monomial that must appear: variables raised to `p^n, ..., p`
    /// following the greatest sequence of `Upsilon_r` read from the top.
    pub witness_monomial: Vec<u32>,
    pub ok: bool,
}

/// Applies `chi(P^r)` to the product of `ex(r)/2` fundamental classes and
/// checks that the result is nonzero and contains the expected witness
/// monomial.
pub fn chi_nontriviality_witness(p: Prime, r: u64) -> NontrivialityWitness {
    assert!(r >= 1, "r must be positive");
    let m = (ex(p, r) / 2) as usize;
    let f = PolyClass::fundamental_product(p, m);
    let result = apply_element(&crate::milnor::chi_pr(p, r), &f);
    let witness_monomial = witness_monomial(p, r);
    debug_assert_eq!(witness_monomial.len(), m);
    let ok = !result.is_zero() && result.coeff(&witness_monomial) != 0;
    NontrivialityWitness {
        result,
        witness_monomial,
        ok,
    }
}

// For the greatest sequence (x_1, ..., x_n) of Upsilon_r: x_n variables
// raised to p^n, then x_{n-1} variables to p^{n-1}, ..., x_1 variables to p.
fn witness_monomial(p: Prime, r: u64) -> Vec<u32> {
    let g = greatest_in_upsilon_r(p, r);
    let xs = g.entries();
    let mut out = Vec::new();
    for i in (1..=xs.len()).rev() {
        let power = p.get().pow(i as u32);
        for _ in 0..xs[i - 1] {
            out.push(power);
        }
    }
    out
}
