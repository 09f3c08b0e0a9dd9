//! Exact arithmetic: rationals, the Gauss-sum quadratic extension, and the
//! number-theoretic helpers the rest of the crate leans on.

mod factor;
mod quad;

pub use factor::{
    divisors, euler_phi, ext_gcd, factorize, is_prime, is_squarefree, jacobi, mod_inverse,
    mu_plus, mult_functions, nu, prime_divisors, valuation, Factorization, MultFunctions,
};
pub use quad::QuadExt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// `B₂(⟨x⟩) = ⟨x⟩² − ⟨x⟩ + 1/6`.
pub fn bernoulli2(x: &Rational) -> Rational {
    let y = frac(x);
    &y * &y - &y + rat(1, 6)
}

/// The sawtooth `((x))`: zero on integers, `x − ⌊x⌋ − 1/2` otherwise.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        Rational::zero()
    } else {
        frac(x) - rat(1, 2)
    }
}

/// Generator of the fractional ideal `uℤ + vℤ`, taken non-negative.
pub fn rational_gcd(u: &Rational, v: &Rational) -> Rational {
    let num = (u.numer() * v.denom()).gcd(&(v.numer() * u.denom()));
    Rational::new(num, u.denom() * v.denom())
}

/// Order of `(uℤ + vℤ)/vℤ`, i.e. `|v| / gcd(|u|, |v|)`.
pub fn lattice_quotient_order(u: &Rational, v: &Rational) -> Result<BigInt> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroGenerator);
    }
    let q = v.abs() / rational_gcd(u, v);
    debug_assert!(q.is_integer());
    Ok(q.to_integer())
}

/// `(−1)^k` for a possibly negative exponent.
pub fn neg_one_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// 2-adic valuation of a nonzero rational; `None` for zero.
pub fn v2(q: &Rational) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let two = BigInt::from(2);
    let count = |n: &BigInt| {
        let mut n = n.abs();
        let mut v = 0i64;
        while (&n % &two).is_zero() {
            n /= &two;
            v += 1;
        }
        v
    };
    Some(count(q.numer()) - count(q.denom()))
}

/// True when every prime factor of `n` (nonzero) lies in `allowed`.
pub fn is_unit_away_from(n: &BigInt, allowed: &[u64]) -> bool {
    let mut n = n.abs();
    if n.is_zero() {
        return false;
    }
    for &p in allowed {
        let p = BigInt::from(p);
        while (&n % &p).is_zero() {
            n /= &p;
        }
    }
    n.is_one()
}
