//! Exponent-sequence combinatorics.
//!
//! Sequences here are finite lists of nonnegative integers understood to
//! continue with zeros; trailing zeros are stripped on construction so
//! equality is structural. Two families matter:
//!
//! * [`ExponentSeq`]: an arbitrary such sequence. `upsilon_weight` assigns
//!   to `(x_1, x_2, ...)` the number `sum x_k (1 + p + ... + p^{k-1})`, and
//!   `Upsilon_r` is the fibre of that weight: exactly the exponents of the
//!   Milnor monomials of topological degree `2r(p-1)`.
//! * [`GammaSeq`]: an admissible sequence, `x_i >= p * x_{i+1}` for all `i`.
//!   These index the admissible words `P^{x_1} P^{x_2} ...` of the
//!   Cartan–Serre basis.
//!
//! The map `gamma`, `(x_i) -> (x_i - p * x_{i+1})`, is an order-preserving
//! bijection from admissible sequences to all sequences (right-lexicographic
//! order on both sides) and restricts to a bijection between the admissible
//! sequences of entry-sum `r` and `Upsilon_r`.

use std::cmp::Ordering;
use std::fmt;

use crate::fp::Prime;

/// A finite sequence of nonnegative integers with the zero tail stripped.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExponentSeq(Vec<u32>);

impl ExponentSeq {
    pub fn new(entries: impl Into<Vec<u32>>) -> Self {
        let mut v = entries.into();
        while v.last() == Some(&0) {
            v.pop();
        }
        ExponentSeq(v)
    }

    pub fn zero() -> Self {
        ExponentSeq(Vec::new())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Entry at 1-based index `i`; zero beyond the stored length.
    pub fn entry(&self, i: usize) -> u32 {
        if i == 0 || i > self.0.len() {
            0
        } else {
            self.0[i - 1]
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of all entries.
    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    /// Right-lexicographic comparison: the highest index at which the two
    /// sequences differ decides.
    pub fn right_lex_cmp(&self, other: &ExponentSeq) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in (1..=n).rev() {
            match self.entry(i).cmp(&other.entry(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// The `r` for which this sequence lies in `Upsilon_r`:
    /// `sum x_k (1 + p + ... + p^{k-1})`.
    pub fn upsilon_weight(&self, p: Prime) -> u64 {
        let mut w = 1u64; // 1 + p + ... + p^{k-1}, starting at k = 1
        let mut total = 0u64;
        for &x in &self.0 {
            total += x as u64 * w;
            w = w * p.as_u64() + 1;
        }
        total
    }

    /// Inverse of [`GammaSeq::gamma`]: `y_i = x_i + p x_{i+1} + p^2 x_{i+2} + ...`.
    pub fn gamma_inv(&self, p: Prime) -> GammaSeq {
        let mut out = vec![0u64; self.0.len()];
        let mut acc = 0u64;
        for i in (0..self.0.len()).rev() {
            acc = acc * p.as_u64() + self.0[i] as u64;
            out[i] = acc;
        }
        let entries: Vec<u32> = out
            .into_iter()
            .map(|y| u32::try_from(y).expect("admissible entry overflows u32"))
            .collect();
        GammaSeq::new(ExponentSeq::new(entries), p).expect("gamma_inv output is admissible")
    }
}

impl PartialOrd for ExponentSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExponentSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.right_lex_cmp(other)
    }
}

impl fmt::Display for ExponentSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// An admissible sequence: `x_i >= p * x_{i+1}` for every `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GammaSeq {
    entries: ExponentSeq,
    p: Prime,
}

impl GammaSeq {
    /// Returns `None` if the admissibility constraint fails.
    pub fn new(entries: ExponentSeq, p: Prime) -> Option<Self> {
        let xs = entries.entries();
        for i in 0..xs.len() {
            let next = if i + 1 < xs.len() { xs[i + 1] } else { 0 };
            if (xs[i] as u64) < p.as_u64() * next as u64 {
                return None;
            }
        }
        Some(GammaSeq { entries, p })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn seq(&self) -> &ExponentSeq {
        &self.entries
    }

    /// `|I|`, the sum of the entries.
    pub fn weight(&self) -> u64 {
        self.entries.sum()
    }

    /// `(x_1 - p x_2, x_2 - p x_3, ...)`, nonnegative by admissibility.
    pub fn gamma(&self) -> ExponentSeq {
        let xs = self.entries.entries();
        let out: Vec<u32> = (0..xs.len())
            .map(|i| {
                let next = if i + 1 < xs.len() { xs[i + 1] } else { 0 };
                xs[i] - (p_mul(self.p, next))
            })
            .collect();
        ExponentSeq::new(out)
    }

    pub fn right_lex_cmp(&self, other: &GammaSeq) -> Ordering {
        self.entries.right_lex_cmp(&other.entries)
    }
}

fn p_mul(p: Prime, x: u32) -> u32 {
    (p.as_u64() * x as u64) as u32
}

impl PartialOrd for GammaSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GammaSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries
            .right_lex_cmp(&other.entries)
            .then_with(|| self.p.cmp(&other.p))
    }
}

impl fmt::Display for GammaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.entries.fmt(f)
    }
}

/// Free function form of [`ExponentSeq::right_lex_cmp`].
pub fn right_lex_cmp(a: &ExponentSeq, b: &ExponentSeq) -> Ordering {
    a.right_lex_cmp(b)
}

// 1 + p + ... + p^{k-1} for k = 1, 2, ... while the value stays <= r.
fn upsilon_part_weights(p: Prime, r: u64) -> Vec<u64> {
    let mut ws = Vec::new();
    let mut w = 1u64;
    while w <= r {
        ws.push(w);
        w = w * p.as_u64() + 1;
    }
    ws
}

/// All sequences of `Upsilon_r`, sorted descending in right-lexicographic
/// order (greatest first).
pub fn enumerate_upsilon_r(p: Prime, r: u64) -> Vec<ExponentSeq> {
    let ws = upsilon_part_weights(p, r);
    let mut out = Vec::new();
    let mut buf = vec![0u32; ws.len()];
    // Fill entries from the highest index down; index k uses weight ws[k-1].
    fn rec(ws: &[u64], k: usize, rem: u64, buf: &mut Vec<u32>, out: &mut Vec<ExponentSeq>) {
        if k == 0 {
            if rem == 0 {
                out.push(ExponentSeq::new(buf.clone()));
            }
            return;
        }
        let w = ws[k - 1];
        for x in 0..=(rem / w) {
            buf[k - 1] = x as u32;
            rec(ws, k - 1, rem - x * w, buf, out);
        }
        buf[k - 1] = 0;
    }
    rec(&ws, ws.len(), r, &mut buf, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// The right-lexicographic maximum of `Upsilon_r`, built directly.
///
/// Greedy from the highest part weight. Because consecutive part weights
/// satisfy `w_{k+1} = p w_k + 1`, the greedy digits never exceed `p`, and a
/// digit equal to `p` exhausts the remainder, forcing all lower entries to
/// zero. Those two properties characterize the greatest sequence, which also
/// has the minimal entry-sum in `Upsilon_r`.
pub fn greatest_in_upsilon_r(p: Prime, r: u64) -> ExponentSeq {
    let ws = upsilon_part_weights(p, r);
    let mut buf = vec![0u32; ws.len()];
    let mut rem = r;
    for k in (0..ws.len()).rev() {
        let x = rem / ws[k];
        rem -= x * ws[k];
        debug_assert!(x <= p.as_u64());
        buf[k] = x as u32;
    }
    debug_assert_eq!(rem, 0);
    ExponentSeq::new(buf)
}

/// The minimal excess over admissible words of entry-sum `r`:
/// `ex(r) = min 2|gamma(I)|`, attained at the greatest element.
pub fn ex(p: Prime, r: u64) -> u64 {
    2 * greatest_in_upsilon_r(p, r).sum()
}

/// `sum_{i>=1} floor((n-1) / (2 p^i))`.
pub fn count_k(p: Prime, n: u64) -> u64 {
    assert!(n >= 1, "dimension must be positive");
    let mut total = 0u64;
    let mut q = p.as_u64();
    while 2 * q < n {
        total += (n - 1) / (2 * q);
        match q.checked_mul(p.as_u64()) {
            Some(next) => q = next,
            None => break,
        }
    }
    total
}

/// The greatest `k` with `n > ex(k) + 2k(p-1)`, found by direct scan.
///
/// The inequality is downward closed in `k` (the excess recurrence moves by
/// `+2` or `-2(p-1)` per step), so the first failure ends the scan.
pub fn count_k_brute(p: Prime, n: u64) -> u64 {
    assert!(n >= 1, "dimension must be positive");
    let mut k = 0u64;
    while n > ex(p, k + 1) + 2 * (k + 1) * (p.as_u64() - 1) {
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    fn seq(xs: &[u32]) -> ExponentSeq {
        ExponentSeq::new(xs)
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        assert_eq!(seq(&[1, 0, 2, 0, 0]), seq(&[1, 0, 2]));
        assert_eq!(seq(&[0, 0]), ExponentSeq::zero());
        assert!(seq(&[0]).is_zero());
    }

    #[test]
    fn right_lex_examples() {
        // Highest differing index decides.
        assert_eq!(seq(&[1, 0, 1]).right_lex_cmp(&seq(&[3, 0, 0])), Ordering::Greater);
        assert_eq!(seq(&[2, 1]).right_lex_cmp(&seq(&[2, 1])), Ordering::Equal);
        assert_eq!(seq(&[0, 1]).right_lex_cmp(&seq(&[3])), Ordering::Greater);
        assert_eq!(seq(&[3]).right_lex_cmp(&seq(&[0, 1])), Ordering::Less);
    }

    #[test]
    fn gamma_examples() {
        let i = GammaSeq::new(seq(&[2, 1]), p(2)).unwrap();
        assert_eq!(i.gamma(), seq(&[0, 1]));

        let i = GammaSeq::new(ExponentSeq::zero(), p(5)).unwrap();
        assert_eq!(i.gamma(), ExponentSeq::zero());

        let i = GammaSeq::new(seq(&[4, 1]), p(3)).unwrap();
        assert_eq!(i.gamma(), seq(&[1, 1]));
    }

    #[test]
    fn gamma_rejects_inadmissible() {
        assert!(GammaSeq::new(seq(&[1, 1]), p(2)).is_none());
        assert!(GammaSeq::new(seq(&[3, 1]), p(5)).is_none());
        assert!(GammaSeq::new(seq(&[2, 1]), p(2)).is_some());
    }

    #[test]
    fn gamma_inv_examples() {
        assert_eq!(seq(&[0, 1]).gamma_inv(p(2)).seq(), &seq(&[2, 1]));
        assert_eq!(seq(&[7]).gamma_inv(p(13)).seq(), &seq(&[7]));
        assert_eq!(seq(&[1, 1]).gamma_inv(p(3)).seq(), &seq(&[4, 1]));
        assert_eq!(
            ExponentSeq::zero().gamma_inv(p(2)).seq(),
            &ExponentSeq::zero()
        );
    }

    #[test]
    fn upsilon_enumeration_examples() {
        assert_eq!(
            enumerate_upsilon_r(p(2), 3),
            vec![seq(&[0, 1]), seq(&[3])]
        );
        assert_eq!(enumerate_upsilon_r(p(7), 0), vec![ExponentSeq::zero()]);
        assert_eq!(
            enumerate_upsilon_r(p(3), 5),
            vec![seq(&[1, 1]), seq(&[5])]
        );
    }

    #[test]
    fn upsilon_membership_and_order() {
        for pr in [2u32, 3, 5, 7] {
            let pp = p(pr);
            for r in 0..=25u64 {
                let all = enumerate_upsilon_r(pp, r);
                for j in &all {
                    assert_eq!(j.upsilon_weight(pp), r);
                }
                for w in all.windows(2) {
                    assert_eq!(w[0].right_lex_cmp(&w[1]), Ordering::Greater);
                }
            }
        }
    }

    #[test]
    fn greatest_examples() {
        assert_eq!(greatest_in_upsilon_r(p(2), 3), seq(&[0, 1]));
        assert_eq!(greatest_in_upsilon_r(p(3), 1), seq(&[1]));
        assert_eq!(greatest_in_upsilon_r(p(3), 5), seq(&[1, 1]));
        assert_eq!(greatest_in_upsilon_r(p(5), 0), ExponentSeq::zero());
    }

    #[test]
    fn greatest_matches_enumeration_and_lemma_conditions() {
        for pr in [2u32, 3, 5] {
            let pp = p(pr);
            for r in 0..=30u64 {
                let all = enumerate_upsilon_r(pp, r);
                let g = greatest_in_upsilon_r(pp, r);
                assert_eq!(Some(&g), all.first(), "p={pr}, r={r}");

                // Entries bounded by p; an entry equal to p forces zeros below.
                let xs = g.entries();
                for (i, &x) in xs.iter().enumerate() {
                    assert!(x <= pr);
                    if x == pr {
                        assert!(xs[..i].iter().all(|&y| y == 0), "p={pr}, r={r}");
                    }
                }

                // Minimal entry-sum over the whole fibre.
                for j in &all {
                    assert!(g.sum() <= j.sum(), "p={pr}, r={r}, j={j}");
                }
            }
        }
    }

    #[test]
    fn ex_examples_and_recurrence() {
        assert_eq!(ex(p(2), 1), 2);
        assert_eq!(ex(p(5), 1), 2);
        assert_eq!(ex(p(2), 2), 4);
        assert_eq!(ex(p(2), 3), 2);
        assert_eq!(ex(p(3), 5), 4);
        assert_eq!(ex(p(3), 0), 0);

        for pr in [2u32, 3, 5] {
            let pp = p(pr);
            for r in 1..=30u64 {
                let diff = ex(pp, r) as i64 - ex(pp, r - 1) as i64;
                assert!(
                    diff == 2 || diff == -2 * (pr as i64 - 1),
                    "p={pr}, r={r}, diff={diff}"
                );
            }
        }
    }

    #[test]
    fn ex_is_min_over_the_fibre() {
        for pr in [2u32, 3, 5] {
            let pp = p(pr);
            for r in 0..=20u64 {
                let min = enumerate_upsilon_r(pp, r)
                    .iter()
                    .map(|j| 2 * j.sum())
                    .min()
                    .unwrap();
                assert_eq!(ex(pp, r), min, "p={pr}, r={r}");
            }
        }
    }

    #[test]
    fn count_k_examples() {
        assert_eq!(count_k(p(2), 7), 1);
        assert_eq!(count_k(p(2), 3), 0);
        assert_eq!(count_k(p(3), 25), 5);
        assert_eq!(count_k_brute(p(2), 7), 1);
        assert_eq!(count_k_brute(p(2), 3), 0);
        assert_eq!(count_k_brute(p(3), 25), 5);
    }

    #[test]
    fn count_k_closed_form_matches_scan() {
        for pr in [2u32, 3, 5, 7] {
            let pp = p(pr);
            for n in 1..=300u64 {
                assert_eq!(count_k(pp, n), count_k_brute(pp, n), "p={pr}, n={n}");
            }
        }
    }

    fn arb_seq() -> impl Strategy<Value = ExponentSeq> {
        prop::collection::vec(0u32..6, 0..6).prop_map(ExponentSeq::new)
    }

    fn arb_prime() -> impl Strategy<Value = Prime> {
        prop::sample::select(vec![2u32, 3, 5, 7]).prop_map(|v| Prime::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn gamma_round_trip(j in arb_seq(), pp in arb_prime()) {
            let i = j.gamma_inv(pp);
            prop_assert_eq!(i.gamma(), j.clone());
            // And the admissible weight equals the upsilon weight.
            prop_assert_eq!(i.weight(), j.upsilon_weight(pp));
        }

        #[test]
        fn gamma_preserves_order(a in arb_seq(), b in arb_seq(), pp in arb_prime()) {
            let ia = a.gamma_inv(pp);
            let ib = b.gamma_inv(pp);
            prop_assert_eq!(ia.right_lex_cmp(&ib), a.right_lex_cmp(&b));
        }

        #[test]
        fn right_lex_is_total_and_antisymmetric(a in arb_seq(), b in arb_seq()) {
            match a.right_lex_cmp(&b) {
                Ordering::Equal => prop_assert_eq!(&a, &b),
                ord => prop_assert_eq!(b.right_lex_cmp(&a), ord.reverse()),
            }
        }
    }
}
