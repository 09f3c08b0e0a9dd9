//! Integer factorization and the multiplicative functions built on it.
//!
//! Trial division handles the small primes; the remainder goes through a
//! deterministic Miller-Rabin test and Brent's variant of Pollard rho, which
//! covers the whole `u64` range.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime factorization `n = ∏ p^e` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    /// Multiplies the factors back together.
    pub fn value(&self) -> u128 {
        self.0
            .iter()
            .map(|&(p, e)| (p as u128).pow(e))
            .product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }

    /// `ν(n) = Σ v_p(n)`.
    pub fn nu(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL_PRIMES {
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

fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1usize;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..r.min(128).min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Factors `n ≥ 1`; `factorize(1)` is the empty factorization.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize expects n >= 1");
    let mut primes = Vec::new();
    let mut m = n;
    for p in 2..=1000u64 {
        if p * p > m {
            break;
        }
        while m % p == 0 {
            primes.push(p);
            m /= p;
        }
    }
    split_into(m, &mut primes);
    primes.sort_unstable();
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match pairs.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => pairs.push((p, 1)),
        }
    }
    Factorization(pairs)
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factorize(n).is_squarefree()
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).primes().collect()
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in factorize(n).pairs() {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0 && p > 1);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// The multiplicative-function toolbox.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultFunctions {
    /// Euler's totient.
    pub phi: u64,
    /// Number of prime factors counted with multiplicity.
    pub nu: u32,
    /// `∏_{p | n} (p + 1)`.
    pub mu_plus: u128,
    /// `∏_{p | n} (p² − 1)`.
    pub varpi: u128,
}

pub fn mult_functions(n: u64) -> MultFunctions {
    let fac = factorize(n);
    let mut phi = 1u64;
    let mut mu_plus = 1u128;
    let mut varpi = 1u128;
    for &(p, e) in fac.pairs() {
        phi *= (p - 1) * p.pow(e - 1);
        mu_plus *= p as u128 + 1;
        varpi *= (p as u128) * (p as u128) - 1;
    }
    MultFunctions {
        phi,
        nu: fac.nu(),
        mu_plus,
        varpi,
    }
}

pub fn euler_phi(n: u64) -> u64 {
    mult_functions(n).phi
}

/// `∏_{p | n} (p + 1)`, written μ in the Eisenstein formulas.
pub fn mu_plus(n: u64) -> u64 {
    prime_divisors(n).iter().map(|p| p + 1).product()
}

pub fn nu(n: u64) -> u32 {
    factorize(n).nu()
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> Result<i8> {
    if n % 2 == 0 {
        return Err(Error::EvenModulus(n));
    }
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Bezout coefficients: returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    (old_r as i64, old_s as i64, old_t as i64)
}

/// Inverse of `a` modulo `m ≥ 1`, if it exists. Result lies in `[0, m)`.
pub fn mod_inverse(a: i64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a.rem_euclid(m as i64), m as i64);
    (g == 1).then(|| x.rem_euclid(m as i64) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::strategy::Strategy;

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).pairs().is_empty());
        assert_eq!(factorize(12).pairs(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(105).pairs(), &[(3, 1), (5, 1), (7, 1)]);
    }

    #[test]
    fn factorize_large() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let q = 4_294_967_279u64;
        assert_eq!(factorize(p * q).pairs(), &[(q, 1), (p, 1)]);
        assert_eq!(factorize(u64::MAX).value(), u64::MAX as u128);
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn mult_function_examples() {
        let m = mult_functions(6);
        assert_eq!((m.phi, m.nu, m.mu_plus, m.varpi), (2, 2, 12, 24));
        let m = mult_functions(1);
        assert_eq!((m.phi, m.nu, m.mu_plus, m.varpi), (1, 0, 1, 1));
        for p in [2u64, 3, 13, 101] {
            let m = mult_functions(p);
            assert_eq!(
                (m.phi, m.nu, m.mu_plus, m.varpi),
                (p - 1, 1, p as u128 + 1, (p * p - 1) as u128)
            );
        }
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(6), vec![1, 2, 3, 6]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(2, 3).unwrap(), -1);
        assert_eq!(jacobi(17, 1).unwrap(), 1);
        assert_eq!(jacobi(1, 9).unwrap(), 1);
        assert_eq!(jacobi(3, 9).unwrap(), 0);
        assert_eq!(jacobi(-1, 7).unwrap(), -1);
        assert_eq!(jacobi(5, 4), Err(Error::EvenModulus(4)));
    }

    #[test]
    fn sieve_agreement_up_to_1e5() {
        const N: usize = 100_000;
        // smallest-prime-factor sieve as an independent route
        let mut spf = vec![0u64; N + 1];
        for i in 2..=N {
            if spf[i] == 0 {
                let mut j = i;
                while j <= N {
                    if spf[j] == 0 {
                        spf[j] = i as u64;
                    }
                    j += i;
                }
            }
        }
        for n in 1..=N as u64 {
            let fac = factorize(n);
            assert_eq!(fac.value(), n as u128);
            let (mut m, mut phi, mut mu, mut varpi) = (n, 1u64, 1u128, 1u128);
            while m > 1 {
                let p = spf[m as usize];
                let mut pk = 1;
                while m % p == 0 {
                    m /= p;
                    pk *= p;
                }
                phi *= pk / p * (p - 1);
                mu *= p as u128 + 1;
                varpi *= (p * p - 1) as u128;
            }
            let got = mult_functions(n);
            assert_eq!((got.phi, got.mu_plus, got.varpi), (phi, mu, varpi), "n={n}");
        }
    }

    #[test]
    fn ext_gcd_and_inverse() {
        let (g, x, y) = ext_gcd(240, 46);
        assert_eq!(g, 2);
        assert_eq!(240 * x + 46 * y, 2);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(-3, 7), Some(2));
        assert_eq!(mod_inverse(2, 4), None);
    }

    proptest::proptest! {
        #[test]
        fn jacobi_reciprocity(m in (0u64..50_000).prop_map(|k| 2 * k + 1),
                              n in (0u64..50_000).prop_map(|k| 2 * k + 1)) {
            proptest::prop_assume!(m.gcd(&n) == 1);
            let lhs = jacobi(m as i64, n).unwrap() * jacobi(n as i64, m).unwrap();
            let rhs = if ((m - 1) / 2 * ((n - 1) / 2)) % 2 == 0 { 1 } else { -1 };
            proptest::prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn jacobi_multiplicative(a in -500i64..500, b in -500i64..500,
                                 n in (0u64..2000).prop_map(|k| 2 * k + 1)) {
            let lhs = jacobi(a * b, n).unwrap();
            proptest::prop_assert_eq!(lhs, jacobi(a, n).unwrap() * jacobi(b, n).unwrap());
        }
    }
}
