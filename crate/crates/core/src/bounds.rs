//! Bounds and exact values for the realization numbers `k_U(n)`, `k_SO(n)`.
//!
//! For every dimension `n` and prime `p`,
//!
//! ```text
//! sum_{i>=1} [(n-1)/(2p^i)]  <=  nu_p(k_U(n))  <=  [(n-3)/(2(p-1))]
//! ```
//!
//! so `k_U(n)` is bounded below by `[(n-1)/2]!` (the lower exponents
//! assemble to a factorial by Legendre's formula) and above by the product
//! of the upper prime powers; `k_SO(n)` is the maximal odd divisor of
//! `k_U(n)`. The lower bound is exact per prime while `n < 2p^2 + 2p`,
//! which pins `k_U(n)` for `n < 12` and `k_SO(n)` for `n < 24`; at `n = 24`
//! the odd part is one of two candidates and the choice is left open.
//!
//! All values are exact big integers.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::fp::Prime;
use crate::seq;

/// `sum_{i>=1} floor((n-1) / (2 p^i))`, the lower bound for `nu_p(k_U(n))`.
pub fn nu_lower(p: Prime, n: u64) -> u64 {
    seq::count_k(p, n)
}

/// `floor((n-3) / (2(p-1)))`, the upper bound for `nu_p(k_U(n))`; zero for
/// `n < 3`.
pub fn nu_upper(p: Prime, n: u64) -> u64 {
    assert!(n >= 1, "dimension must be positive");
    if n < 3 {
        0
    } else {
        (n - 3) / (2 * (p.as_u64() - 1))
    }
}

pub fn factorial(m: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=m {
        acc *= k;
    }
    acc
}

/// The maximal odd divisor.
pub fn odd_part(x: &BigUint) -> BigUint {
    match x.trailing_zeros() {
        Some(z) => x >> z,
        None => x.clone(), // zero
    }
}

fn primes_up_to(limit: u64) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = usize::try_from(limit).expect("sieve limit overflows usize");
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for q in 2..=limit {
        if composite[q] {
            continue;
        }
        out.push(q as u32);
        let mut m = q * q;
        while m <= limit {
            composite[m] = true;
            m += q;
        }
    }
    out
}

// Primes that can contribute a positive exponent to either bound: both
// nu_lower(p, n) and nu_upper(p, n) vanish once 2p > n - 1.
fn contributing_primes(n: u64) -> Vec<u32> {
    if n < 2 {
        Vec::new()
    } else {
        primes_up_to((n - 1) / 2)
    }
}

/// `( [(n-1)/2]! , prod_p p^{nu_upper(p,n)} )`. The lower value divides the
/// upper one.
pub fn ku_bounds(n: u64) -> (BigUint, BigUint) {
    assert!(n >= 1, "dimension must be positive");
    let lower = factorial((n - 1) / 2);
    let mut upper = BigUint::one();
    for q in contributing_primes(n) {
        let p = Prime::new(q).expect("sieve yields primes");
        let e = nu_upper(p, n);
        upper *= BigUint::from(q).pow(u32::try_from(e).expect("exponent overflow"));
    }
    (lower, upper)
}

/// Odd parts of [`ku_bounds`].
pub fn kso_bounds(n: u64) -> (BigUint, BigUint) {
    let (lower, upper) = ku_bounds(n);
    (odd_part(&lower), odd_part(&upper))
}

/// The superseded uniform bounds `prod_p p^{[(n-1)/(2(p-1))]}` and its odd
/// part, kept for comparison output.
pub fn superseded_bounds(n: u64) -> (BigUint, BigUint) {
    assert!(n >= 1, "dimension must be positive");
    let mut ku = BigUint::one();
    if n >= 2 {
        for q in primes_up_to(n.div_ceil(2)) {
            let e = (n - 1) / (2 * (q as u64 - 1));
            ku *= BigUint::from(q).pow(u32::try_from(e).expect("exponent overflow"));
        }
    }
    let kso = odd_part(&ku);
    (ku, kso)
}

/// Exact value of `k_SO(n)` when known; at `n = 24` two candidates remain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum KsoExact {
    Value(BigUint),
    EitherOf(BigUint, BigUint),
}

impl fmt::Display for KsoExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KsoExact::Value(v) => write!(f, "{v}"),
            KsoExact::EitherOf(a, b) => write!(f, "{a} or {b}"),
        }
    }
}

/// Valuation window for one prime.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimeValuation {
    pub p: u32,
    pub lower: u64,
    pub upper: u64,
    /// `Some(nu_p)` when the lower bound is known to be exact
    /// (`n < 2p^2 + 2p`).
    pub exact: Option<u64>,
}

/// Everything known about dimension `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundReport {
    pub n: u64,
    pub per_prime: Vec<PrimeValuation>,
    pub ku_lower: BigUint,
    pub ku_upper: BigUint,
    pub kso_lower: BigUint,
    pub kso_upper: BigUint,
    pub ku_exact: Option<BigUint>,
    pub kso_exact: Option<KsoExact>,
    /// `(k^s_U(n), k^s_SO(n))` when requested.
    pub superseded: Option<(BigUint, BigUint)>,
}

pub fn report(n: u64, with_superseded: bool) -> BoundReport {
    assert!(n >= 1, "dimension must be positive");
    let per_prime = contributing_primes(n)
        .into_iter()
        .map(|q| {
            let p = Prime::new(q).expect("sieve yields primes");
            let lower = nu_lower(p, n);
            let exact_window = n < 2 * (q as u64) * (q as u64) + 2 * q as u64;
            PrimeValuation {
                p: q,
                lower,
                upper: nu_upper(p, n),
                exact: exact_window.then_some(lower),
            }
        })
        .collect();
    let (ku_lower, ku_upper) = ku_bounds(n);
    let (kso_lower, kso_upper) = kso_bounds(n);
    let ku_exact = (n < 12).then(|| ku_lower.clone());
    let kso_exact = if n < 24 {
        Some(KsoExact::Value(kso_lower.clone()))
    } else if n == 24 {
        Some(KsoExact::EitherOf(
            BigUint::from(155_925u32),
            BigUint::from(467_775u32),
        ))
    } else {
        None
    };
    BoundReport {
        n,
        per_prime,
        ku_lower,
        ku_upper,
        kso_lower,
        kso_upper,
        ku_exact,
        kso_exact,
        superseded: with_superseded.then(|| superseded_bounds(n)),
    }
}

/// `(n, k_SO(n))` for `n = 1..=23`, where the value is exact.
pub fn kso_table() -> Vec<(u64, BigUint)> {
    (1..=23)
        .map(|n| (n, odd_part(&factorial((n - 1) / 2))))
        .collect()
}
