//! Twisted L-series of `E_{M,L,ψ}`: the Euler-product identity as a check on
//! Dirichlet coefficients, and the closed-form special value `Λ`.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{eis_qexp, EisIndex};
use crate::arith::{self, int, rat, QuadExt, Rational};
use crate::characters::QuadraticCharacter;
use crate::error::{Error, Mismatch, Result};

fn twist_character(idx: &EisIndex, chi: &QuadraticCharacter) -> Result<QuadraticCharacter> {
    if chi.conductor().gcd(&idx.shape.d) != 1 {
        return Err(Error::NotCoprime(chi.conductor() as i64, idx.shape.d));
    }
    idx.psi.product(chi)
}

/// Dirichlet convolution of two coefficient vectors indexed from 1.
fn convolve(a: &[i128], b: &[i128]) -> Vec<i128> {
    let n = a.len() - 1;
    let mut out = vec![0i128; n + 1];
    for i in 1..=n {
        if a[i] == 0 {
            continue;
        }
        for j in 1..=n / i {
            out[i * j] += a[i] * b[j];
        }
    }
    out
}

/// Checks, coefficient by coefficient up to `n_max`, that
/// `Σ a_n(E)χ(n)n^{-s} = ∏_{p | M/f}(1 − χψ(p)p^{1−s}) ∏_{p | L/f}(1 − χψ(p)p^{−s})
/// · L(χψ, s − 1)·L(χψ, s)`.
pub fn lseries_factorization_check(
    idx: &EisIndex,
    chi: &QuadraticCharacter,
    n_max: usize,
) -> Result<Result<(), Mismatch>> {
    let xp = twist_character(idx, chi)?;
    let series = eis_qexp(idx, n_max)?;
    let mut lhs = vec![0i128; n_max + 1];
    for (n, slot) in lhs.iter_mut().enumerate().skip(1) {
        let a = series.coeff(n);
        if !a.is_rational() || !a.rat.is_integer() {
            return Err(Error::Unsupported(format!(
                "coefficient a_{n} = {a} is not a rational integer"
            )));
        }
        let a = a.rat.to_integer().to_i128().expect("coefficient fits i128");
        *slot = a * chi.value(n as i64) as i128;
    }
    let val = |n: usize| xp.value(n as i64) as i128;
    let l_shift: Vec<i128> = (0..=n_max).map(|n| if n == 0 { 0 } else { val(n) * n as i128 }).collect();
    let l_plain: Vec<i128> = (0..=n_max).map(|n| if n == 0 { 0 } else { val(n) }).collect();
    let mut rhs = convolve(&l_shift, &l_plain);
    let f = idx.f();
    let factors = arith::prime_divisors(idx.m / f)
        .into_iter()
        .map(|p| (p, val(p as usize) * p as i128))
        .chain(
            arith::prime_divisors(idx.l / f)
                .into_iter()
                .map(|p| (p, val(p as usize))),
        );
    for (p, c) in factors {
        let mut euler = vec![0i128; n_max + 1];
        euler[1] = 1;
        if (p as usize) <= n_max {
            euler[p as usize] = -c;
        }
        rhs = convolve(&euler, &rhs);
    }
    for n in 1..=n_max {
        if lhs[n] != rhs[n] {
            return Ok(Err(Mismatch {
                prime: Some(chi.conductor()),
                n: n as u64,
                expected: rhs[n].to_string(),
                found: lhs[n].to_string(),
            }));
        }
    }
    Ok(Ok(()))
}

/// `Λ(E_{M,L,ψ}, χ, 1)`: zero for even `χψ`, otherwise
/// `−(χ(−f)ψ(f_χ)g(ψ)/(2f))·∏_{p | M/f}(1 − χψ(p))·∏_{p | L/f}(1 − χψ(p)/p)·B²_{1,χψ}`.
pub fn lambda_value(idx: &EisIndex, chi: &QuadraticCharacter) -> Result<QuadExt> {
    let xp = twist_character(idx, chi)?;
    let disc = idx.disc();
    if xp.parity() == 1 {
        return Ok(QuadExt::zero(disc));
    }
    let f = idx.f();
    let b1 = xp.gen_bernoulli_b1()?;
    let mut value: Rational = int(-1)
        * int(chi.value(-(f as i64)) as i64)
        * int(idx.psi.value(chi.conductor() as i64) as i64)
        / int(2 * f as i64);
    for p in arith::prime_divisors(idx.m / f) {
        value *= int(1 - xp.value(p as i64) as i64);
    }
    for p in arith::prime_divisors(idx.l / f) {
        value *= int(1) - rat(xp.value(p as i64) as i64, p as i64);
    }
    value *= &b1 * &b1;
    if value.is_zero() {
        return Ok(QuadExt::zero(disc));
    }
    Ok(QuadExt::gen(disc).scale(&value))
}
