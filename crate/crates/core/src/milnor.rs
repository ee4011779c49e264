//! The even mod-p Steenrod algebra in the Milnor basis.
//!
//! Elements are sparse F_p-combinations of basis monomials dual to
//! `xi^J = xi_1^{x_1} xi_2^{x_2} ...` in the polynomial dual algebra, with
//! `dim xi_i = 2(p^i - 1)`. At p = 2 the generators are the squares of the
//! usual ones and `P^i` stands for `Sq^{2i}`, so the same formulas apply at
//! every prime.
//!
//! The product is Milnor's matrix sum: for monomials with exponents `r` and
//! `s`, sum over matrices `X = (x_{ij})` (indices from 0, the corner cell
//! unused) subject to
//!
//! ```text
//! row i >= 1:    r_i = sum_j p^j x_{ij}
//! column j >= 1: s_j = sum_i x_{ij}
//! ```
//!
//! Each matrix contributes the monomial with exponents `t_k = sum_{i+j=k}
//! x_{ij}` and coefficient the product over `k` of the multinomial
//! coefficients of the antidiagonals, reduced mod p.

use std::collections::BTreeMap;
use std::fmt;

use crate::fp::{self, Prime};
use crate::seq::{enumerate_upsilon_r, ExponentSeq, GammaSeq};
use crate::transition;

/// Basis monomial `(xi^J)*`, stored as the exponent sequence `J`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MilnorMonomial(ExponentSeq);

impl MilnorMonomial {
    pub fn new(exponents: ExponentSeq) -> Self {
        MilnorMonomial(exponents)
    }

    pub fn unit() -> Self {
        MilnorMonomial(ExponentSeq::zero())
    }

    pub fn exponents(&self) -> &ExponentSeq {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_zero()
    }

    /// Topological degree `sum 2 x_i (p^i - 1)`.
    pub fn degree(&self, p: Prime) -> u64 {
        let mut q = 1u64;
        let mut total = 0u64;
        for &x in self.0.entries() {
            q *= p.as_u64();
            total += 2 * x as u64 * (q - 1);
        }
        total
    }
}

impl fmt::Display for MilnorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            write!(f, "1")
        } else {
            write!(f, "xi{}", self.0)
        }
    }
}

/// Sparse F_p-linear combination of Milnor basis monomials.
///
/// Coefficients are canonical representatives in `1..p`; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MilnorElement {
    p: Prime,
    terms: BTreeMap<MilnorMonomial, u32>,
}

impl MilnorElement {
    pub fn zero(p: Prime) -> Self {
        MilnorElement {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(p: Prime) -> Self {
        Self::monomial(p, MilnorMonomial::unit(), 1)
    }

    pub fn monomial(p: Prime, m: MilnorMonomial, coeff: u32) -> Self {
        let mut el = Self::zero(p);
        el.add_term(m, coeff);
        el
    }

    /// `P^k`, the monomial with exponents `(k)`; `P^0` is the unit.
    pub fn reduced_power(p: Prime, k: u32) -> Self {
        Self::monomial(p, MilnorMonomial::new(ExponentSeq::new(vec![k])), 1)
    }

    pub fn p(&self) -> Prime {
        self.p
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

    /// Term iteration in ascending right-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&MilnorMonomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &MilnorMonomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Adds `coeff * m`, reducing mod p and pruning zeros.
    pub fn add_term(&mut self, m: MilnorMonomial, coeff: u32) {
        let c = coeff % self.p.get();
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
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

    pub fn add(&self, other: &MilnorElement) -> MilnorElement {
        assert_eq!(self.p, other.p, "prime mismatch");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u32) -> MilnorElement {
        let mut out = MilnorElement::zero(self.p);
        for (m, a) in self.terms() {
            out.add_term(m.clone(), fp::mul_mod(a, c, self.p));
        }
        out
    }

    pub fn neg(&self) -> MilnorElement {
        self.scale(self.p.get() - 1)
    }

    /// True for the zero element and for single-degree elements.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree(self.p));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Common degree of the terms; `None` for zero or mixed elements.
    pub fn degree(&self) -> Option<u64> {
        let mut degs = self.terms.keys().map(|m| m.degree(self.p));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Milnor matrix product, extended bilinearly.
    pub fn product(&self, other: &MilnorElement) -> MilnorElement {
        assert_eq!(self.p, other.p, "prime mismatch");
        let mut out = MilnorElement::zero(self.p);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let scale = fp::mul_mod(ca, cb, self.p);
                monomial_product_into(self.p, ma.exponents(), mb.exponents(), scale, &mut out);
            }
        }
        out
    }
}

impl fmt::Display for MilnorElement {
    /// Renders `c1*m1 + c2*m2 + ...` with terms in descending basis order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (m.is_unit(), *c) {
                (true, c) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{m}")?,
                (false, c) => write!(f, "{c}*{m}")?,
            }
        }
        Ok(())
    }
}

// Enumerates Milnor matrices for a monomial pair, accumulating the resulting
// terms into `acc`.
struct ProductEnum<'a> {
    p: Prime,
    a: &'a [u32],
    b: &'a [u32],
    powers: Vec<u64>, // p^0 ..= p^{len b}
    x: Vec<u64>,      // (la+1) x (lb+1), row-major
    rem_col: Vec<u64>,
    scale: u32,
    acc: &'a mut MilnorElement,
}

impl<'a> ProductEnum<'a> {
    fn cell(&mut self, i: usize, j: usize, v: u64) {
        let lb = self.b.len();
        self.x[i * (lb + 1) + j] = v;
    }

    fn get(&self, i: usize, j: usize) -> u64 {
        let lb = self.b.len();
        self.x[i * (lb + 1) + j]
    }

    fn rows(&mut self, i: usize) {
        if i > self.a.len() {
            self.finish();
        } else {
            self.cells(i, 1, self.a[i - 1] as u64);
        }
    }

    fn cells(&mut self, i: usize, j: usize, budget: u64) {
        if j > self.b.len() {
            self.cell(i, 0, budget);
            self.rows(i + 1);
            return;
        }
        let cap = (budget / self.powers[j]).min(self.rem_col[j - 1]);
        for v in 0..=cap {
            self.cell(i, j, v);
            self.rem_col[j - 1] -= v;
            self.cells(i, j + 1, budget - v * self.powers[j]);
            self.rem_col[j - 1] += v;
        }
        self.cell(i, j, 0);
    }

    fn finish(&mut self) {
        let (la, lb) = (self.a.len(), self.b.len());
        for j in 1..=lb {
            self.cell(0, j, self.rem_col[j - 1]);
        }
        let mut coeff = self.scale;
        let mut t = Vec::with_capacity(la + lb);
        let mut parts = Vec::new();
        for k in 1..=la + lb {
            parts.clear();
            let lo = k.saturating_sub(lb);
            let hi = k.min(la);
            for i in lo..=hi {
                parts.push(self.get(i, k - i));
            }
            coeff = fp::mul_mod(coeff, fp::multinomial_mod(&parts, self.p), self.p);
            if coeff == 0 {
                return;
            }
            let tk: u64 = parts.iter().sum();
            t.push(u32::try_from(tk).expect("exponent overflow"));
        }
        self.acc
            .add_term(MilnorMonomial::new(ExponentSeq::new(t)), coeff);
    }
}

fn monomial_product_into(
    p: Prime,
    a: &ExponentSeq,
    b: &ExponentSeq,
    scale: u32,
    acc: &mut MilnorElement,
) {
    if scale == 0 {
        return;
    }
    let (a, b) = (a.entries(), b.entries());
    let mut powers = Vec::with_capacity(b.len() + 1);
    let mut q = 1u64;
    for _ in 0..=b.len() {
        powers.push(q);
        q = q.saturating_mul(p.as_u64());
    }
    let mut en = ProductEnum {
        p,
        a,
        b,
        powers,
        x: vec![0; (a.len() + 1) * (b.len() + 1)],
        rem_col: b.iter().map(|&s| s as u64).collect(),
        scale,
        acc,
    };
    en.rows(1);
}

/// The antipode of `P^r`: `(-1)^r` times the sum of all basis monomials of
/// degree `2r(p-1)`, i.e. those with exponents in `Upsilon_r`.
pub fn chi_pr(p: Prime, r: u64) -> MilnorElement {
    let sign = fp::sign_mod(r, p);
    let mut out = MilnorElement::zero(p);
    for j in enumerate_upsilon_r(p, r) {
        out.add_term(MilnorMonomial::new(j), sign);
    }
    out
}

/// Independent antipode via the convolution recursion
/// `chi(P^r) = -sum_{i=1..r} P^i * chi(P^{r-i})`, `chi(P^0) = 1`.
pub fn chi_convolution_oracle(p: Prime, r: u64) -> MilnorElement {
    let mut table: Vec<MilnorElement> = vec![MilnorElement::unit(p)];
    for m in 1..=r {
        let mut acc = MilnorElement::zero(p);
        for i in 1..=m {
            let pi = MilnorElement::reduced_power(p, u32::try_from(i).expect("power overflow"));
            acc = acc.add(&pi.product(&table[(m - i) as usize]));
        }
        table.push(acc.neg());
    }
    table.pop().expect("table is nonempty")
}

/// An admissible word `P^{x_1} P^{x_2} ... P^{x_n}` of the Cartan–Serre
/// basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AdmissibleWord(GammaSeq);

impl AdmissibleWord {
    /// Returns `None` if the letters are not admissible (`x_i >= p x_{i+1}`).
    pub fn new(letters: ExponentSeq, p: Prime) -> Option<Self> {
        GammaSeq::new(letters, p).map(AdmissibleWord)
    }

    pub fn from_gamma_seq(word: GammaSeq) -> Self {
        AdmissibleWord(word)
    }

    pub fn identity(p: Prime) -> Self {
        AdmissibleWord(GammaSeq::new(ExponentSeq::zero(), p).expect("empty word is admissible"))
    }

    pub fn p(&self) -> Prime {
        self.0.p()
    }

    pub fn word(&self) -> &GammaSeq {
        &self.0
    }

    pub fn letters(&self) -> &[u32] {
        self.0.seq().entries()
    }

    /// Topological degree `2(p-1) sum x_i`.
    pub fn degree(&self) -> u64 {
        2 * (self.p().as_u64() - 1) * self.0.weight()
    }

    /// Excess `2 |gamma(I)|`, the least degree of a class the word can act
    /// on without vanishing.
    pub fn excess(&self) -> u64 {
        2 * self.0.gamma().sum()
    }

    /// Milnor-basis expansion of the product of the letters.
    pub fn to_milnor(&self) -> MilnorElement {
        let mut acc = MilnorElement::unit(self.p());
        for &x in self.letters() {
            acc = acc.product(&MilnorElement::reduced_power(self.p(), x));
        }
        acc
    }
}

impl fmt::Display for AdmissibleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters().is_empty() {
            write!(f, "1")
        } else {
            write!(f, "P{}", self.0)
        }
    }
}

/// `<xi^J, P^I>`: the coefficient of the monomial `xi^J` in the Milnor
/// expansion of the admissible word. Zero whenever the degrees differ.
pub fn pairing(j: &ExponentSeq, i: &AdmissibleWord) -> u32 {
    i.to_milnor().coeff(&MilnorMonomial::new(j.clone()))
}

/// Expands a homogeneous element in the admissible (Cartan–Serre) basis.
///
/// Solves against the triangular transition matrix of the element's degree;
/// see [`crate::transition`]. The zero element yields the empty expansion.
///
/// # Panics
///
/// Panics on mixed-degree input.
pub fn milnor_to_admissible(e: &MilnorElement) -> BTreeMap<AdmissibleWord, u32> {
    assert!(
        e.is_homogeneous(),
        "milnor_to_admissible requires a homogeneous element"
    );
    let mut out = BTreeMap::new();
    let Some(d) = e.degree() else {
        return out;
    };
    let p = e.p();
    let span = 2 * (p.as_u64() - 1);
    debug_assert_eq!(d % span, 0);
    let t = transition::transition(p, d / span);
    let dim = t.dim();

    // rhs in column order (descending basis order).
    let mut rhs = vec![0u32; dim];
    for (m, c) in e.terms() {
        let col = t
            .column_of(m)
            .expect("homogeneous term outside the degree basis");
        rhs[col] = c;
    }

    let mut coeffs = vec![0u32; dim];
    for b in 0..dim {
        let mut acc = rhs[b];
        for (row, &c) in coeffs.iter().enumerate().take(b) {
            if c != 0 {
                let m = t.entry(row, b);
                acc = fp::sub_mod(acc, fp::mul_mod(c, m, p), p);
            }
        }
        let diag = t.entry(b, b);
        coeffs[b] = fp::mul_mod(acc, fp::inv_mod(diag, p), p);
    }

    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            out.insert(t.words()[i].clone(), c);
        }
    }
    out
}
