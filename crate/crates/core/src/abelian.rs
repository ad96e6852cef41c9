//! First homology and the `p`-primary counts built on abelian invariants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::Presentation;
use crate::smith::abelian_invariants;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p-adic valuation needs a positive integer, got {0}")]
    NonPositive(BigInt),
}

/// The prime field `𝔽_p`, identified by its characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField(u64);

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(PrimeField(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn p(self) -> u64 {
        self.0
    }

    pub fn divides(self, n: &BigInt) -> bool {
        n.is_multiple_of(&BigInt::from(self.0))
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = FieldError;

    fn try_from(p: u64) -> Result<Self, FieldError> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(k: PrimeField) -> u64 {
        k.0
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest `v` with `pᵛ | n`.
pub fn padic_valuation(n: &BigInt, k: PrimeField) -> Result<u32, FieldError> {
    if !n.is_positive() {
        return Err(FieldError::NonPositive(n.clone()));
    }
    let p = BigInt::from(k.p());
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Ok(v);
        }
        n = q;
        v += 1;
    }
}

/// Abelian invariants of `H₁(G)`; zeros stand for copies of `ℤ`.
pub fn first_homology(p: &Presentation) -> Vec<BigInt> {
    abelian_invariants(p)
}

/// `dim H₁(G; 𝔽_p)`: invariants divisible by `p`, each `ℤ` included.
pub fn first_homology_mod_p(p: &Presentation, k: PrimeField) -> usize {
    count_mod_p(&first_homology(p), k)
}

/// `dim Tor(H₁(G), 𝔽_p)`: nonzero invariants divisible by `p`.
pub fn tor_dimension(p: &Presentation, k: PrimeField) -> usize {
    tor_from_invariants(&first_homology(p), k)
}

/// `e` such that `pᵉ` is the order of the `p`-primary part of `H₁(G)`.
pub fn prime_primary_rank(p: &Presentation, k: PrimeField) -> u32 {
    prime_rank_from_invariants(&first_homology(p), k)
}

pub fn count_mod_p(invariants: &[BigInt], k: PrimeField) -> usize {
    invariants.iter().filter(|x| k.divides(x)).count()
}

pub fn tor_from_invariants(invariants: &[BigInt], k: PrimeField) -> usize {
    invariants.iter().filter(|x| !x.is_zero() && k.divides(x)).count()
}

pub fn prime_rank_from_invariants(invariants: &[BigInt], k: PrimeField) -> u32 {
    invariants
        .iter()
        .filter(|x| !x.is_zero() && k.divides(x))
        .map(|x| padic_valuation(x, k).expect("abelian invariants are nonnegative"))
        .sum()
}
