//! Residue and period lattices, and the orders of cuspidal subgroups.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::EisIndex;
use crate::arith::{self, int, QuadExt, Rational};
use crate::cusps::LevelShape;
use crate::error::{Error, Result};

/// `φ(D/f)·μ(L/f)·gcd(D/M, C)`, the integer shared by the lattice formulas.
fn lattice_integer(idx: &EisIndex) -> u64 {
    let f = idx.f();
    arith::euler_phi(idx.shape.d / f)
        * arith::mu_plus(idx.l / f)
        * (idx.shape.d / idx.m).gcd(&idx.shape.c)
}

/// Generator of the residue lattice: `n_ψ·φ(D/f)·μ(L/f)·gcd(D/M, C)/(L/f)`
/// for `Γ₀(DC)`, times `f` for `Γ₁(DC)`.
pub fn r_lattice(idx: &EisIndex, gamma_one: bool) -> QuadExt {
    let f = idx.f();
    let mut scale = int(lattice_integer(idx) as i64) / int((idx.l / f) as i64);
    if gamma_one {
        scale *= int(f as i64);
    }
    idx.psi.n_psi().scale(&scale)
}

/// Generators `(g(ψ)/L, 𝓡_{Γ₁})` of the `Γ₁` period lattice.
pub fn period_lattice_g1(idx: &EisIndex) -> (QuadExt, QuadExt) {
    let g = QuadExt::gen(idx.disc()).scale(&arith::rat(1, idx.l as i64));
    (g, r_lattice(idx, true))
}

/// A group order known away from a finite set of primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalOrder {
    pub order: BigInt,
    /// Primes at which `order` is not asserted.
    pub inverted: Vec<u64>,
}

impl CuspidalOrder {
    /// `order` with every inverted prime (and any extra ones) removed.
    pub fn away_from(&self, extra: &[u64]) -> BigInt {
        strip_primes(&self.order, self.inverted.iter().chain(extra))
    }
}

/// `n` with every power of each listed prime divided out.
pub fn strip_primes<'a>(n: &BigInt, primes: impl IntoIterator<Item = &'a u64>) -> BigInt {
    let mut n = n.clone();
    for &p in primes {
        let p = BigInt::from(p);
        while (&n % &p) == BigInt::from(0) {
            n /= &p;
        }
    }
    n
}

/// Order of `(uℤ + vℤ)/vℤ` with `u = g/(f·n_ψ)` and
/// `v = φ(D/f)·μ(L/f)·gcd(D/M, C)`; exact away from `2^δ·(M, L)`.
pub fn cuspidal_order(idx: &EisIndex) -> Result<CuspidalOrder> {
    let f = idx.f();
    let n = idx.psi.n_psi();
    let u = QuadExt::gen(idx.disc()).checked_div(&n.scale_int(f as i64))?;
    debug_assert!(u.is_rational());
    let v = Rational::from_integer(BigInt::from(lattice_integer(idx)));
    let order = arith::lattice_quotient_order(&u.rat, &v)?;
    let g = idx.ml_gcd();
    let mut inverted = arith::prime_divisors(g);
    if g == 1 {
        inverted.insert(0, 2);
    }
    inverted.sort_unstable();
    inverted.dedup();
    Ok(CuspidalOrder { order, inverted })
}

/// The order `N_{M,L}` of the cuspidal group of `E_{M,L}` (trivial ψ):
/// `(p − 1)/gcd(12, p − 1)` at prime level, otherwise
/// `φ(D)·μ(L)·gcd(D/M, C) / gcd(24, φ(D)·μ(L)·gcd(D/M, C))` for odd `D`.
pub fn order_nml(m: u64, l: u64, shape: &LevelShape) -> Result<u64> {
    let n = shape.level();
    if !crate::cusps::is_valid_ml(m, l, shape) || m == 1 {
        return Err(Error::InvalidIndex {
            m,
            l,
            f: 1,
            reason: "need M != 1, M, L | D and D | ML | DC",
        });
    }
    if arith::is_prime(n) {
        return Ok((n - 1) / (n - 1).gcd(&12));
    }
    if shape.d % 2 == 0 {
        return Err(Error::Unsupported(
            "the general order formula assumes D odd".into(),
        ));
    }
    let v = arith::euler_phi(shape.d) * arith::mu_plus(l) * (shape.d / m).gcd(&shape.c);
    Ok(v / v.gcd(&24))
}
