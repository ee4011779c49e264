//! Prime moduli and binomial arithmetic mod p.
//!
//! Coefficients throughout the crate are canonical representatives in
//! `0..p`. Binomial and multinomial coefficients are reduced with Lucas'
//! theorem, so no big-integer arithmetic is needed on the algebra side.

use std::fmt;

/// A validated prime modulus.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Prime(u32);

impl Prime {
    /// Returns `None` unless `p` is prime.
    pub fn new(p: u32) -> Option<Prime> {
        if p < 2 {
            return None;
        }
        let mut d = 2u64;
        while d * d <= p as u64 {
            if (p as u64).is_multiple_of(d) {
                return None;
            }
            d += 1;
        }
        Some(Prime(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_u64(self) -> u64 {
        self.0 as u64
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn add_mod(a: u32, b: u32, p: Prime) -> u32 {
    ((a as u64 + b as u64) % p.as_u64()) as u32
}

pub fn sub_mod(a: u32, b: u32, p: Prime) -> u32 {
    ((a as u64 + p.as_u64() - b as u64 % p.as_u64()) % p.as_u64()) as u32
}

pub fn mul_mod(a: u32, b: u32, p: Prime) -> u32 {
    ((a as u64 * b as u64) % p.as_u64()) as u32
}

pub fn neg_mod(a: u32, p: Prime) -> u32 {
    sub_mod(0, a, p)
}

/// `(-1)^r` as a canonical representative.
pub fn sign_mod(r: u64, p: Prime) -> u32 {
    if r.is_multiple_of(2) {
        1
    } else {
        p.get() - 1
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse mod p (Fermat). `a` must be nonzero mod p.
pub fn inv_mod(a: u32, p: Prime) -> u32 {
    debug_assert!(!a.is_multiple_of(p.get()));
    pow_mod(a as u64, p.as_u64() - 2, p.as_u64()) as u32
}

// binom(n, k) mod p for n, k < p.
fn binom_digit(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * pow_mod(den, p - 2, p) % p
}

/// `binom(n, k) mod p` by Lucas' theorem. Zero when `k > n`.
pub fn binom_mod(n: u64, k: u64, p: Prime) -> u32 {
    if k > n {
        return 0;
    }
    let m = p.as_u64();
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % m, k % m);
        if kd > nd {
            return 0;
        }
        acc = acc * binom_digit(nd, kd, m) % m;
        n /= m;
        k /= m;
    }
    acc as u32
}

/// Multinomial coefficient `(sum parts)! / prod parts!` mod p.
pub fn multinomial_mod(parts: &[u64], p: Prime) -> u32 {
    let mut acc = 1u32;
    let mut total = 0u64;
    for &part in parts {
        total += part;
        acc = mul_mod(acc, binom_mod(total, part, p), p);
        if acc == 0 {
            return 0;
        }
    }
    acc
}
