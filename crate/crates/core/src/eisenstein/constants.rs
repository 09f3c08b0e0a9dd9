//! Constant terms of `E_{M,L,ψ}` at every cusp, by closed form and by the
//! operator recursion down to level `f²`.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::EisIndex;
use crate::arith::{self, int, neg_one_pow, rat, QuadExt, Rational};
use crate::characters::QuadraticCharacter;
use crate::cusps::{enumerate_cusps, locate_cusp, rep_to_cusp, Cusp, CuspRep, LevelShape};
use crate::error::{Error, Result};

/// One value per cusp representative, in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantTermTable {
    pub index: EisIndex,
    pub entries: Vec<(CuspRep, QuadExt)>,
}

impl ConstantTermTable {
    pub fn total(&self) -> QuadExt {
        self.entries
            .iter()
            .fold(QuadExt::zero(self.index.disc()), |acc, (_, v)| &acc + v)
    }
}

/// Closed-form constant term at `[r·s²·t·x / DC]`.
pub fn constant_term(idx: &EisIndex, rep: &CuspRep) -> Result<QuadExt> {
    rep.validate(&idx.shape)?;
    let disc = idx.disc();
    let CuspRep { r, s, t, x } = *rep;
    let (d, c, f) = (idx.shape.d, idx.shape.c, idx.f());
    let g = idx.ml_gcd();
    if s.gcd(&f) != 1 || (s * t) % g != 0 || (r * s) % (d / idx.m) != 0 {
        return Ok(QuadExt::zero(disc));
    }
    let sign = neg_one_pow(arith::nu(d / (f * r * s)) as i64);
    // ψ(DC/(f·r·s²·t·x)) as a rational argument
    let arg = Rational::new(
        BigInt::from(d * c),
        BigInt::from(f) * BigInt::from(r * s * s * t) * BigInt::from(x),
    );
    let chi = idx.psi.eval(&arg)?;
    let mut crstx = int(sign * chi as i64) / int((r * s) as i64);
    for p in arith::prime_divisors(s.gcd(&(g / f))) {
        crstx *= int(1) - rat(1, p as i64);
    }
    let lf = idx.l / f;
    let scale = int(arith::euler_phi(d / f) as i64) * int(arith::mu_plus(lf) as i64) / int(lf as i64);
    Ok(idx.psi.n_psi().scale(&(scale * crstx)))
}

/// Constant term by peeling one operator `[p]±` at a time.
///
/// `a₀(g|[p]⁺; a/c) = a₀(g; a/c) − κ·a₀(g; pa/c)` with `κ = pψ(p)` when
/// `p | c` and `ψ(p)/p` otherwise (`ψ(p)` and `ψ(p)/p²` for `[p]⁻`); the
/// widths of the two points account for the powers of `p`. At level `f²`
/// the value is `ψ(x)·n_ψ` at the cusps with `(s, t) = (1, f)`, else 0.
pub fn constant_term_oracle(idx: &EisIndex, rep: &CuspRep) -> Result<QuadExt> {
    rep.validate(&idx.shape)?;
    let f = idx.f();
    let mut ops: Vec<(bool, u64)> = arith::prime_divisors(idx.m / f)
        .into_iter()
        .map(|p| (true, p))
        .collect();
    ops.extend(arith::prime_divisors(idx.l / f).into_iter().map(|p| (false, p)));
    let base = LevelShape::new(f, f)?;
    let cusp = rep_to_cusp(rep, &idx.shape);
    Ok(oracle_rec(&idx.psi, &base, &ops, cusp))
}

fn oracle_rec(psi: &QuadraticCharacter, base: &LevelShape, ops: &[(bool, u64)], cusp: Cusp) -> QuadExt {
    let Some((&(plus, p), rest)) = ops.split_last() else {
        let low = locate_cusp(&cusp, base);
        if low.s == 1 && low.t == base.d {
            return psi.n_psi().scale_int(psi.value(low.x as i64) as i64);
        }
        return QuadExt::zero(psi.gauss_disc());
    };
    let pi = p as i64;
    let chi = psi.value(pi) as i64;
    let divides = cusp.c % pi == 0;
    let moved = if divides {
        Cusp::new(cusp.a, cusp.c / pi)
    } else {
        Cusp::new(cusp.a * pi, cusp.c)
    };
    let kappa = match (plus, divides) {
        (true, true) => int(pi * chi),
        (true, false) => rat(chi, pi),
        (false, true) => int(chi),
        (false, false) => rat(chi, pi * pi),
    };
    let here = oracle_rec(psi, base, rest, cusp);
    let there = oracle_rec(psi, base, rest, moved);
    &here - &there.scale(&kappa)
}

pub fn constant_term_table(idx: &EisIndex) -> Result<ConstantTermTable> {
    let entries = enumerate_cusps(&idx.shape)
        .into_par_iter()
        .map(|rep| constant_term(idx, &rep).map(|v| (rep, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConstantTermTable {
        index: *idx,
        entries,
    })
}

/// Entries `width(x)·a₀(E; x)`: the residue divisor, of total degree zero.
pub fn delta_divisor(idx: &EisIndex) -> Result<ConstantTermTable> {
    let mut table = constant_term_table(idx)?;
    for (rep, v) in table.entries.iter_mut() {
        *v = v.scale_int(rep.width() as i64);
    }
    Ok(table)
}

/// Whether every nonzero `width·a₀` of `E_{D,D}` (trivial ψ, `C = D`) is a
/// unit in `ℤ[1/(6·D·ϖ(D))]`.
pub fn edd_unit_check(shape: &LevelShape) -> Result<bool> {
    if shape.c != shape.d {
        return Err(Error::InvalidShape {
            d: shape.d,
            c: shape.c,
            reason: "E_{D,D} lives on C = D",
        });
    }
    let d = shape.d;
    if d == 1 {
        return Err(Error::InvalidIndex {
            m: 1,
            l: 1,
            f: 1,
            reason: "M must differ from 1",
        });
    }
    let idx = EisIndex::new(*shape, d, d, QuadraticCharacter::trivial())?;
    let varpi = arith::mult_functions(d).varpi;
    let mut allowed = vec![2u64, 3];
    allowed.extend(arith::prime_divisors(d));
    let mut v = varpi;
    for p in 2..=((varpi as f64).sqrt() as u128 + 1) {
        while v % p == 0 {
            allowed.push(p as u64);
            v /= p;
        }
    }
    if v > 1 {
        allowed.push(v as u64);
    }
    let table = delta_divisor(&idx)?;
    Ok(table.entries.iter().all(|(_, val)| {
        val.is_zero()
            || (arith::is_unit_away_from(val.rat.numer(), &allowed)
                && arith::is_unit_away_from(val.rat.denom(), &allowed))
    }))
}

/// `Σ width·a₀` reduced to a rational multiple of `n_ψ`, used by the lattice
/// cross-check.
#[cfg(test)]
pub(crate) fn delta_over_npsi(idx: &EisIndex) -> Result<Vec<Rational>> {
    let n = idx.psi.n_psi();
    delta_divisor(idx)?
        .entries
        .into_iter()
        .map(|(_, v)| {
            let q = v.checked_div(&n)?;
            debug_assert!(q.is_rational());
            Ok(q.rat)
        })
        .collect()
}
