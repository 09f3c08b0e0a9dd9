//! Truncated q-expansions with exact coefficients, and the level-raising
//! operators used to build the Eisenstein eigenbasis.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{self, int, valuation, QuadExt, Rational};
use crate::characters::QuadraticCharacter;
use crate::error::{Error, Result};

/// `Σ_{n ≤ T} a_n qⁿ` on `Γ₀(level)`, coefficients in one `QuadExt` context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExpansion {
    coeffs: Vec<QuadExt>,
    level: u64,
    disc: i64,
}

impl QExpansion {
    pub fn new(coeffs: Vec<QuadExt>, level: u64) -> Result<Self> {
        assert!(!coeffs.is_empty(), "a series needs a constant term");
        let disc = coeffs[0].disc;
        if let Some(bad) = coeffs.iter().find(|c| c.disc != disc) {
            return Err(Error::DiscMismatch {
                left: disc,
                right: bad.disc,
            });
        }
        Ok(Self {
            coeffs,
            level,
            disc,
        })
    }

    pub fn zero(level: u64, truncation: usize, disc: i64) -> Self {
        Self {
            coeffs: vec![QuadExt::zero(disc); truncation + 1],
            level,
            disc,
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &QuadExt {
        &self.coeffs[n]
    }

    /// Overwrites one coefficient; used by harness self-tests.
    pub fn set_coeff(&mut self, n: usize, value: QuadExt) -> Result<()> {
        if value.disc != self.disc {
            return Err(Error::DiscMismatch {
                left: self.disc,
                right: value.disc,
            });
        }
        self.coeffs[n] = value;
        Ok(())
    }

    /// Views the same series at a multiple of its level.
    pub fn promote(&self, level: u64) -> Result<Self> {
        if level % self.level != 0 {
            return Err(Error::InvalidDivisor(self.level));
        }
        Ok(Self {
            level,
            ..self.clone()
        })
    }

    pub fn truncate(&self, t: usize) -> Self {
        let t = t.min(self.truncation());
        Self {
            coeffs: self.coeffs[..=t].to_vec(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &QuadExt) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            level: self.level,
            truncation: self.truncation(),
            disc: self.disc,
            coeffs: self.coeffs.iter().map(QuadExt::parts).collect(),
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<Self> {
        let parse = |s: &str| -> Result<num_bigint::BigInt> {
            s.parse()
                .map_err(|_| Error::Io(format!("bad integer {s:?} in series")))
        };
        let mut coeffs = Vec::with_capacity(j.coeffs.len());
        for [rn, rd, irn, ird] in &j.coeffs {
            let r = Rational::new(parse(rn)?, parse(rd)?);
            let i = Rational::new(parse(irn)?, parse(ird)?);
            coeffs.push(QuadExt::new(r, i, j.disc));
        }
        if coeffs.len() != j.truncation + 1 {
            return Err(Error::Io("series length disagrees with truncation".into()));
        }
        Self::new(coeffs, j.level)
    }
}

/// Wire form: `{level, truncation, disc, coeffs: [[rat_num, rat_den, irr_num, irr_den], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub level: u64,
    pub truncation: usize,
    pub disc: i64,
    pub coeffs: Vec<[String; 4]>,
}

/// `σ_ψ(n) = Σ_{d | n} d·ψ(d)·ψ(n/d)`.
pub fn sigma_psi(psi: &QuadraticCharacter, n: u64) -> Rational {
    int(sigma_psi_int(psi, n))
}

fn sigma_psi_int(psi: &QuadraticCharacter, n: u64) -> i64 {
    arith::divisors(n)
        .into_iter()
        .map(|d| d as i64 * psi.value(d as i64) as i64 * psi.value((n / d) as i64) as i64)
        .sum()
}

/// Sum of the divisors of `n` prime to `D/f`.
pub fn sigma_df(d_big: u64, f: u64, n: u64) -> u64 {
    let m = d_big / f;
    arith::divisors(n).into_iter().filter(|d| d.gcd(&m) == 1).sum()
}

/// `σ_{M,L}(n)`: zero unless `n` is prime to `(M, L)`, otherwise
/// `σ_{D/f}(n)·∏_{ℓ | D/M} ℓ^{v_ℓ(n)}`.
pub fn sigma_ml(m: u64, l: u64, d_big: u64, f: u64, n: u64) -> u64 {
    if n.gcd(&m.gcd(&l)) > 1 {
        return 0;
    }
    let mut out = sigma_df(d_big, f, n);
    for ell in arith::prime_divisors(d_big / m) {
        out *= ell.pow(valuation(n, ell));
    }
    out
}

/// `E_ψ` on `Γ₀(f²)`: `a₀ = −1/24` for trivial ψ (else 0), `a_n = σ_ψ(n)`.
pub fn e_psi_qexp(psi: &QuadraticCharacter, t: usize) -> QExpansion {
    let disc = psi.gauss_disc();
    let mut coeffs = Vec::with_capacity(t + 1);
    coeffs.push(if psi.is_trivial() {
        QuadExt::from_rational(arith::rat(-1, 24), disc)
    } else {
        QuadExt::zero(disc)
    });
    for n in 1..=t as u64 {
        coeffs.push(QuadExt::from_int(sigma_psi_int(psi, n), disc));
    }
    let f = psi.conductor();
    QExpansion {
        coeffs,
        level: f * f,
        disc,
    }
}

/// `g ↦ p·g(pz)`: the coefficient at `pn` becomes `p·a_n`.
pub fn v_operator(s: &QExpansion, p: u64) -> QExpansion {
    let t = s.truncation();
    let mut out = QExpansion::zero(s.level * p, t, s.disc);
    let p = p as usize;
    for n in 0..=t / p {
        out.coeffs[n * p] = s.coeffs[n].scale_int(p as i64);
    }
    out
}

fn bracket(s: &QExpansion, p: u64, psi: &QuadraticCharacter, weight: i64) -> Result<QExpansion> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if psi.conductor() % p == 0 {
        return Err(Error::PrimeDividesConductor(p));
    }
    let c = weight * psi.value(p as i64) as i64;
    let pu = p as usize;
    let coeffs = s
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, a)| {
            if n % pu == 0 {
                a - &s.coeffs[n / pu].scale_int(c)
            } else {
                a.clone()
            }
        })
        .collect();
    Ok(QExpansion {
        coeffs,
        level: s.level * p,
        disc: s.disc,
    })
}

/// `[p]⁺_ψ g = g(z) − p·ψ(p)·g(pz)`.
pub fn bracket_plus(s: &QExpansion, p: u64, psi: &QuadraticCharacter) -> Result<QExpansion> {
    bracket(s, p, psi, p as i64)
}

/// `[p]⁻_ψ g = g(z) − ψ(p)·g(pz)`.
pub fn bracket_minus(s: &QExpansion, p: u64, psi: &QuadraticCharacter) -> Result<QExpansion> {
    bracket(s, p, psi, 1)
}

/// `T_ℓ` truncated to `t_out`; requires input truncation `≥ ℓ·t_out`.
pub fn hecke(s: &QExpansion, ell: u64, t_out: usize) -> Result<QExpansion> {
    if !arith::is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    let l = ell as usize;
    let needed = l * t_out;
    if s.truncation() < needed {
        return Err(Error::InsufficientTruncation {
            needed,
            available: s.truncation(),
        });
    }
    let good = s.level % ell != 0;
    let coeffs = (0..=t_out)
        .map(|n| {
            let mut a = s.coeffs[n * l].clone();
            if good && n % l == 0 {
                a = &a + &s.coeffs[n / l].scale_int(ell as i64);
            }
            a
        })
        .collect();
    Ok(QExpansion {
        coeffs,
        level: s.level,
        disc: s.disc,
    })
}

/// `T_ℓ` at the largest output truncation the input supports.
pub fn hecke_max(s: &QExpansion, ell: u64) -> Result<QExpansion> {
    hecke(s, ell, s.truncation() / ell as usize)
}
