use serde::{Deserialize, Serialize};

use super::EisIndex;
use crate::arith::{self, QuadExt};
use crate::error::{Mismatch, Result};
use crate::qseries::{self, QExpansion};

/// `E_{M,L,ψ} = [L/f]⁻_ψ ∘ [M/f]⁺_ψ (E_ψ)`, tagged with level `DC`.
pub fn eis_qexp(idx: &EisIndex, t: usize) -> Result<QExpansion> {
    let f = idx.f();
    let mut s = qseries::e_psi_qexp(&idx.psi, t);
    for p in arith::prime_divisors(idx.m / f) {
        s = qseries::bracket_plus(&s, p, &idx.psi)?;
    }
    for p in arith::prime_divisors(idx.l / f) {
        s = qseries::bracket_minus(&s, p, &idx.psi)?;
    }
    s.promote(idx.shape.level())
}

/// `a_n = σ_{M,L}(n)·ψ(n)` for `n ≥ 1`; the constant term is copied from
/// the operator construction, which the closed form does not describe.
pub fn closed_form_qexp(idx: &EisIndex, t: usize, a0: QuadExt) -> Result<QExpansion> {
    let disc = idx.disc();
    let (d, f) = (idx.shape.d, idx.f());
    let mut coeffs = Vec::with_capacity(t + 1);
    coeffs.push(a0);
    for n in 1..=t as u64 {
        let sigma = qseries::sigma_ml(idx.m, idx.l, d, f, n) as i64;
        coeffs.push(QuadExt::from_int(sigma * idx.psi.value(n as i64) as i64, disc));
    }
    QExpansion::new(coeffs, idx.shape.level())
}

/// Hecke eigenvalue of `E_{M,L,ψ}` at a prime `ℓ`.
pub fn eigenvalue(idx: &EisIndex, ell: u64) -> QuadExt {
    let disc = idx.disc();
    let psi = idx.psi.value(ell as i64) as i64;
    let g = idx.ml_gcd();
    let ell_i = ell as i64;
    let v = if idx.shape.d % ell != 0 {
        psi * (1 + ell_i)
    } else if g % ell == 0 {
        0
    } else if (idx.m / g) % ell == 0 {
        psi
    } else {
        debug_assert_eq!((idx.l / g) % ell, 0);
        ell_i * psi
    };
    QuadExt::from_int(v, disc)
}

/// Checks `T_ℓ E = λ_ℓ E` up to `q^T` for every listed prime.
pub fn verify_eigenform(idx: &EisIndex, t: usize, primes: &[u64]) -> Result<Result<(), Mismatch>> {
    let top = primes.iter().copied().max().unwrap_or(1) as usize;
    let series = eis_qexp(idx, top * t)?;
    Ok(check_eigen_series(idx, &series, t, primes))
}

/// The comparison step of [`verify_eigenform`] on a precomputed series.
pub fn check_eigen_series(
    idx: &EisIndex,
    series: &QExpansion,
    t: usize,
    primes: &[u64],
) -> Result<(), Mismatch> {
    for &ell in primes {
        let lambda = eigenvalue(idx, ell);
        let image = qseries::hecke(series, ell, t).map_err(|e| Mismatch {
            prime: Some(ell),
            n: 0,
            expected: "a series of sufficient truncation".into(),
            found: e.to_string(),
        })?;
        for n in 0..=t {
            let want = &series.coeffs()[n] * &lambda;
            if image.coeffs()[n] != want {
                return Err(Mismatch {
                    prime: Some(ell),
                    n: n as u64,
                    expected: want.to_string(),
                    found: image.coeffs()[n].to_string(),
                });
            }
        }
    }
    Ok(())
}

/// The generators `T_ℓ − λ_ℓ` of the Eisenstein ideal, as `(ℓ, λ_ℓ)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenSystem(pub Vec<(u64, QuadExt)>);

pub fn ideal_generators(idx: &EisIndex, primes: &[u64]) -> EigenSystem {
    EigenSystem(primes.iter().map(|&p| (p, eigenvalue(idx, p))).collect())
}
