//! Dedekind sums, the Rademacher function `Φ`, and the period cocycle `ξ`
//! of `E_{M,D/M}` on `Γ₀(DC)`.
//!
//! Everything here is exact except [`numeric_period`], which exists only to
//! cross-check `ξ/24` against a truncated integral of the q-expansion.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{self, int, neg_one_pow, Rational};
use crate::characters::QuadraticCharacter;
use crate::cusps::LevelShape;
use crate::eisenstein::{eis_qexp, EisIndex};
use crate::error::{Error, Result};
use crate::qseries;

/// An integer matrix `(a b; c d)` of determinant one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GammaElement {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::BadDeterminant(det));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: 1, b: 0, c: 0, d: 1 }
    }

    /// `(1 b; 0 1)`.
    pub fn translation(b: i64) -> Self {
        Self { a: 1, b, c: 0, d: 1 }
    }

    /// `(0 −1; 1 0)`.
    pub fn inversion() -> Self {
        Self { a: 0, b: -1, c: 1, d: 0 }
    }

    /// Builds the matrix and checks it lies in `Γ₀(level)`.
    pub fn in_level(a: i64, b: i64, c: i64, d: i64, level: u64) -> Result<Self> {
        let g = Self::new(a, b, c, d)?;
        g.check_level(level)?;
        Ok(g)
    }

    pub fn is_in_gamma0(&self, level: u64) -> bool {
        self.c.rem_euclid(level as i64) == 0
    }

    pub fn check_level(&self, level: u64) -> Result<()> {
        if self.is_in_gamma0(level) {
            Ok(())
        } else {
            Err(Error::NotInGamma0 {
                a: self.a,
                b: self.b,
                c: self.c,
                d: self.d,
                level,
            })
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    /// Matrix product, failing if an entry leaves `i64`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        let entry = |x: i64, y: i64, z: i64, w: i64| {
            let v = x as i128 * y as i128 + z as i128 * w as i128;
            i64::try_from(v).map_err(|_| Error::Unsupported("matrix entry overflows i64".into()))
        };
        Ok(Self {
            a: entry(self.a, o.a, self.b, o.c)?,
            b: entry(self.a, o.b, self.b, o.d)?,
            c: entry(self.c, o.a, self.d, o.c)?,
            d: entry(self.c, o.b, self.d, o.d)?,
        })
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Parses `a,b,c,d`.
impl FromStr for GammaElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Unsupported(format!("bad matrix '{s}': {e}")))?;
        match parts[..] {
            [a, b, c, d] => Self::new(a, b, c, d),
            _ => Err(Error::Unsupported(format!(
                "matrix '{s}' needs four comma-separated entries"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DedekindMode {
    Brute,
    Fast,
}

impl FromStr for DedekindMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Self::Brute),
            "fast" => Ok(Self::Fast),
            _ => Err(Error::Unsupported(format!("unknown mode '{s}'"))),
        }
    }
}

/// `s(h, k) = Σ_{μ=1}^{k} ((hμ/k))((μ/k))`.
pub fn dedekind_sum(h: i64, k: u64, mode: DedekindMode) -> Result<Rational> {
    if k == 0 || h.unsigned_abs().gcd(&k) != 1 {
        return Err(Error::NotCoprime(h, k));
    }
    Ok(match mode {
        DedekindMode::Brute => dedekind_brute(h, k),
        DedekindMode::Fast => dedekind_fast(h, k),
    })
}

// ((x/k)) = (2(x mod k) − k)/(2k) away from multiples of k, so the sum is
// Σ (2(hμ mod k) − k)(2μ − k) / (4k²) with μ running over 1..k−1.
fn dedekind_brute(h: i64, k: u64) -> Rational {
    let k = k as i128;
    let h = (h as i128).rem_euclid(k);
    let mut num = 0i128;
    for mu in 1..k {
        num += (2 * (h * mu % k) - k) * (2 * mu - k);
    }
    Rational::new(BigInt::from(num), BigInt::from(4 * k * k))
}

// s(h,k) + s(k,h) = −1/4 + (h/k + 1/(hk) + k/h)/12 for coprime h, k ≥ 1,
// applied after reducing h mod k; sign flips at each step.
fn dedekind_fast(h: i64, k: u64) -> Rational {
    let mut h = (h as i128).rem_euclid(k as i128);
    let mut k = k as i128;
    let mut acc = Rational::zero();
    let mut sign = 1i64;
    while k > 1 {
        debug_assert!(h > 0);
        let hk = BigInt::from(h) * BigInt::from(k);
        // (h² + 1 + k²)/(12hk) − 1/4
        let term = Rational::new(BigInt::from(h * h + 1 + k * k), hk * 12) - arith::rat(1, 4);
        acc += term * int(sign);
        sign = -sign;
        (h, k) = (k % h, h);
    }
    acc
}

/// `s(h,k) + s(k,h) = −1/4 + (h/k + 1/(hk) + k/h)/12`, both sides by brute force.
pub fn reciprocity_check(h: i64, k: i64) -> Result<bool> {
    if h < 1 || k < 1 {
        return Err(Error::Unsupported("reciprocity needs h, k >= 1".into()));
    }
    let lhs = dedekind_sum(h, k as u64, DedekindMode::Brute)?
        + dedekind_sum(k, h as u64, DedekindMode::Brute)?;
    let (h, k) = (int(h), int(k));
    let rhs = arith::rat(-1, 4) + (&h / &k + int(1) / (&h * &k) + &k / &h) / int(12);
    Ok(lhs == rhs)
}

/// For odd `k`: `12k·s(h,k)` is an integer congruent to `k + 1 − 2(h/k)` mod 8.
pub fn congruence_check(h: i64, k: u64) -> Result<bool> {
    if k % 2 == 0 {
        return Err(Error::EvenModulus(k));
    }
    let s = dedekind_sum(h, k, DedekindMode::Brute)? * int(12 * k as i64);
    if !s.is_integer() {
        return Ok(false);
    }
    let lhs = s.to_integer();
    let rhs = BigInt::from(k as i64 + 1 - 2 * arith::jacobi(h, k)? as i64);
    Ok((lhs - rhs).mod_floor(&BigInt::from(8)).is_zero())
}

/// `Φ(a b; c d) = b/d` if `c = 0`, else `(a + d)/c − 12·sgn(c)·s(d, |c|)`.
pub fn rademacher_phi(g: &GammaElement) -> Rational {
    if g.c == 0 {
        return arith::rat(g.b, g.d);
    }
    let s = dedekind_sum(g.d, g.c.unsigned_abs(), DedekindMode::Fast)
        .expect("det 1 makes c, d coprime");
    arith::rat(g.a + g.d, g.c) - s * int(12 * g.c.signum())
}

fn check_xi_args(m: u64, shape: &LevelShape, g: &GammaElement) -> Result<EisIndex> {
    if m == 0 || shape.d % m != 0 {
        return Err(Error::InvalidDivisor(m));
    }
    g.check_level(shape.level())?;
    EisIndex::new(*shape, m, shape.d / m, QuadraticCharacter::trivial())
}

/// `ξ(γ) = Σ_{r | D} (−1)^{ν(r)−1}·Φ(a, rb; c/r, d)/gcd(r, D/M)`, the period
/// of `E_{M,D/M}` along `γ` scaled by 24.
pub fn xi(m: u64, shape: &LevelShape, g: &GammaElement) -> Result<Rational> {
    check_xi_args(m, shape, g)?;
    let l = shape.d / m;
    let mut total = Rational::zero();
    for r in arith::divisors(shape.d) {
        let ri = r as i64;
        assert_eq!(g.c % ri, 0, "r | D | c for γ in Γ₀(DC)");
        let b = g.b.checked_mul(ri).ok_or_else(|| Error::Unsupported("rb overflows i64".into()))?;
        let phi = rademacher_phi(&GammaElement {
            a: g.a,
            b,
            c: g.c / ri,
            d: g.d,
        });
        let sign = neg_one_pow(arith::nu(r) as i64 - 1);
        total += phi * arith::rat(sign, r.gcd(&l) as i64);
    }
    Ok(total)
}

/// `ξ(γ₁γ₂) = ξ(γ₁) + ξ(γ₂)`.
pub fn xi_homomorphism_check(
    m: u64,
    shape: &LevelShape,
    g1: &GammaElement,
    g2: &GammaElement,
) -> Result<bool> {
    let lhs = xi(m, shape, &g1.mul(g2)?)?;
    Ok(lhs == xi(m, shape, g1)? + xi(m, shape, g2)?)
}

/// 2-adic statements about `ξ` for odd `D` with at least two prime factors.
///
/// Always: `ξ` has odd denominator. For `M = D`: `ξ = (b/d)(−1)^{ν(D)−1}φ(D)`
/// when `c = 0`; `ξ ≡ (−1)^{ν(D)−1}((a+d−1)/c)φ(D)` mod 8 when `c` is odd
/// (with `c > 0`); and `v₂(ξ) ≥ min(3, v₂(φ(D)))`, which is
/// `ξ ∈ 24ℤ₂ + φ(D)ℤ₂`. For `M ≠ D`: `ξ = 0` when `c = 0`, otherwise
/// `v₂(ξ) ≥ 3`.
pub fn two_part_check(m: u64, shape: &LevelShape, g: &GammaElement) -> Result<bool> {
    if shape.d % 2 == 0 {
        return Err(Error::EvenModulus(shape.d));
    }
    if arith::nu(shape.d) < 2 {
        return Err(Error::InvalidShape {
            d: shape.d,
            c: shape.c,
            reason: "two-part analysis needs at least two primes in D",
        });
    }
    let x = xi(m, shape, g)?;
    let v = arith::v2(&x);
    if v.is_some_and(|v| v < 0) {
        return Ok(false);
    }
    let at_least = |k: i64| v.is_none_or(|v| v >= k);
    if m != shape.d {
        return Ok(if g.c == 0 { x.is_zero() } else { at_least(3) });
    }
    let phi = arith::euler_phi(shape.d) as i64;
    let sign = neg_one_pow(arith::nu(shape.d) as i64 - 1);
    let phi_v = phi.trailing_zeros() as i64;
    if !at_least(phi_v.min(3)) {
        return Ok(false);
    }
    if g.c == 0 {
        return Ok(x == arith::rat(g.b * g.d * sign * phi, 1));
    }
    if g.c % 2 != 0 {
        let h = if g.c > 0 { *g } else { g.neg() };
        let pattern = arith::rat(h.a + h.d - 1, h.c) * int(sign * phi);
        let diff = x - pattern;
        return Ok(arith::v2(&diff).is_none_or(|v| v >= 3));
    }
    Ok(true)
}

/// Numerically integrates `E_{M,D/M}` from `z₀ = (−d+i)/c` to `γz₀ = (a+i)/c`
/// using the first `terms` coefficients; compare with `ξ(γ)/24`.
pub fn numeric_period(
    m: u64,
    shape: &LevelShape,
    g: &GammaElement,
    terms: usize,
) -> Result<Complex64> {
    let idx = check_xi_args(m, shape, g)?;
    if g.c == 0 {
        return Err(Error::Convergence(
            "c = 0 has no finite base point; use the exact formula".into(),
        ));
    }
    let h = if g.c > 0 { *g } else { g.neg() };
    let c = h.c as f64;
    // |q| = e^{−2π/c} at both endpoints; the tail past `terms` is bounded by
    // roughly terms·e^{−2π·terms/c}.
    let decay = 2.0 * std::f64::consts::PI * terms as f64 / c;
    if decay < 40.0 {
        return Err(Error::Convergence(format!(
            "{terms} terms are too few for |c| = {}; need about {}",
            h.c,
            (40.0 * c / (2.0 * std::f64::consts::PI)).ceil()
        )));
    }
    let z0 = Complex64::new(-h.d as f64, 1.0) / c;
    let z1 = Complex64::new(h.a as f64, 1.0) / c;
    let a0 = eis_qexp(&idx, 1)?.coeff(0).rat.to_f64().expect("finite a0");
    let mut total = (z1 - z0) * a0;
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let (step0, step1) = ((two_pi_i * z0).exp(), (two_pi_i * z1).exp());
    let (mut q0, mut q1) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
    for n in 1..=terms as u64 {
        q0 *= step0;
        q1 *= step1;
        let an = qseries::sigma_ml(idx.m, idx.l, shape.d, 1, n);
        if an != 0 {
            total += (q1 - q0) * (an as f64) / (two_pi_i * n as f64);
        }
    }
    Ok(total)
}

/// A random element of `Γ₀(n)` with bottom row `(c, d)`, `n | c`, and
/// entries of size at most about `height`.
pub fn random_gamma0<R: Rng + ?Sized>(n: u64, height: u64, rng: &mut R) -> GammaElement {
    let n = n.max(1) as i64;
    let h = height.max(n as u64) as i64;
    loop {
        let c = n * rng.random_range(-(h / n)..=h / n);
        if c == 0 {
            let d = if rng.random_bool(0.5) { 1 } else { -1 };
            let b = rng.random_range(-h..=h);
            return GammaElement { a: d, b, c, d };
        }
        let d = rng.random_range(-h..=h);
        if c.unsigned_abs().gcd(&d.unsigned_abs()) != 1 {
            continue;
        }
        // a·d − b·c = 1
        let (_, a, b) = arith::ext_gcd(d, -c);
        return GammaElement { a, b, c, d };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn shape(d: u64, c: u64) -> LevelShape {
        LevelShape::new(d, c).unwrap()
    }

    fn both(h: i64, k: u64) -> Rational {
        let b = dedekind_sum(h, k, DedekindMode::Brute).unwrap();
        assert_eq!(b, dedekind_sum(h, k, DedekindMode::Fast).unwrap(), "s({h},{k})");
        b
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(both(1, 3), rat(1, 18));
        assert_eq!(both(1, 2), rat(0, 1));
        for h in [-7, 0, 1, 5] {
            assert_eq!(both(h, 1), rat(0, 1));
        }
        // s(1,k) = (k−1)(k−2)/(12k)
        for k in 2..60 {
            assert_eq!(both(1, k as u64), rat((k - 1) * (k - 2), 12 * k));
        }
        assert!(dedekind_sum(2, 4, DedekindMode::Fast).is_err());
        assert!(dedekind_sum(3, 0, DedekindMode::Brute).is_err());
    }

    #[test]
    fn reciprocity_and_congruence_examples() {
        assert!(reciprocity_check(1, 3).unwrap());
        assert!(reciprocity_check(1, 1).unwrap());
        assert!(reciprocity_check(5, 7).unwrap());
        assert!(congruence_check(1, 3).unwrap());
        assert_eq!(dedekind_sum(1, 3, DedekindMode::Brute).unwrap() * int(36), int(2));
        assert!(congruence_check(1, 1).unwrap());
        assert!(congruence_check(2, 5).unwrap());
        assert!(matches!(congruence_check(1, 4), Err(Error::EvenModulus(4))));
    }

    #[test]
    fn phi_examples() {
        for b in [-3, 0, 1, 7] {
            assert_eq!(rademacher_phi(&GammaElement::translation(b)), int(b));
        }
        assert_eq!(rademacher_phi(&GammaElement::inversion()), int(0));
        for n in 1..40 {
            let g = GammaElement::new(1, 0, n, 1).unwrap();
            let s = dedekind_sum(1, n as u64, DedekindMode::Brute).unwrap();
            assert_eq!(rademacher_phi(&g), rat(2, n) - s * int(12));
        }
    }

    fn sgn(x: i64) -> i64 {
        x.signum()
    }

    proptest! {
        #[test]
        fn brute_matches_fast(k in 1u64..3000, h in -5000i64..5000) {
            prop_assume!(h.unsigned_abs().gcd(&k) == 1);
            let b = dedekind_sum(h, k, DedekindMode::Brute).unwrap();
            prop_assert_eq!(&b, &dedekind_sum(h, k, DedekindMode::Fast).unwrap());
            prop_assert_eq!(&-b.clone(), &dedekind_sum(-h, k, DedekindMode::Brute).unwrap());
            prop_assert_eq!(&b, &dedekind_sum(h + k as i64, k, DedekindMode::Brute).unwrap());
            prop_assert!((b * int(6 * k as i64)).is_integer());
        }

        #[test]
        fn reciprocity_and_congruence_hold(h in 1i64..500, k in 1i64..500) {
            prop_assume!(h.gcd(&k) == 1);
            prop_assert!(reciprocity_check(h, k).unwrap());
            if k % 2 == 1 {
                prop_assert!(congruence_check(h, k as u64).unwrap());
            }
        }

        // Φ(AB) = Φ(A) + Φ(B) − 3·sgn(c_A c_B c_AB) on SL₂(ℤ)
        #[test]
        fn phi_cocycle(s1 in 0u64..1000, s2 in 0u64..1000) {
            let g1 = random_gamma0(1, 40, &mut ChaCha8Rng::seed_from_u64(s1));
            let g2 = random_gamma0(1, 40, &mut ChaCha8Rng::seed_from_u64(s2 + 5000));
            let p = g1.mul(&g2).unwrap();
            let lhs = rademacher_phi(&p);
            let rhs = rademacher_phi(&g1) + rademacher_phi(&g2) - int(3 * sgn(g1.c * g2.c * p.c));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn xi_examples() {
        let t = GammaElement::translation(1);
        assert_eq!(xi(6, &shape(6, 1), &t).unwrap(), int(-2));
        for m in [2, 3] {
            assert_eq!(xi(m, &shape(6, 1), &t).unwrap(), int(0));
        }
        assert_eq!(xi(6, &shape(6, 1), &GammaElement::identity()).unwrap(), int(0));
        let t2 = GammaElement::translation(2);
        assert_eq!(xi(6, &shape(6, 1), &t2).unwrap(), xi(6, &shape(6, 1), &t).unwrap() * int(2));
        let outside = GammaElement::new(1, 0, 3, 1).unwrap();
        assert!(matches!(xi(6, &shape(6, 1), &outside), Err(Error::NotInGamma0 { .. })));
        assert!(xi(4, &shape(6, 1), &t).is_err());
        assert!(xi(1, &shape(6, 1), &t).is_err());
    }

    #[test]
    fn xi_is_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for sh in [shape(6, 1), shape(15, 1), shape(21, 1), shape(33, 1), shape(3, 3)] {
            for m in arith::divisors(sh.d).into_iter().filter(|&m| m > 1) {
                for _ in 0..60 {
                    let g1 = random_gamma0(sh.level(), 40 * sh.level(), &mut rng);
                    let g2 = random_gamma0(sh.level(), 40 * sh.level(), &mut rng);
                    assert!(xi_homomorphism_check(m, &sh, &g1, &g2).unwrap(), "{sh} M={m} {g1} {g2}");
                    assert!(xi_homomorphism_check(m, &sh, &g1, &GammaElement::identity()).unwrap());
                }
            }
        }
    }

    #[test]
    fn two_part_examples() {
        let s15 = shape(15, 1);
        for b in [-3, 1, 4] {
            let g = GammaElement::translation(b);
            assert_eq!(xi(15, &s15, &g).unwrap(), int(-8 * b));
            assert!(two_part_check(15, &s15, &g).unwrap());
            assert_eq!(xi(3, &s15, &g).unwrap(), int(0));
            assert!(two_part_check(3, &s15, &g).unwrap());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut odd = 0;
        while odd < 50 {
            let g = random_gamma0(15, 900, &mut rng);
            if g.c % 2 != 0 {
                odd += 1;
                let v = xi(3, &s15, &g).unwrap();
                assert!(arith::v2(&v).is_none_or(|v| v >= 3), "{g}");
            }
            for m in [3, 5, 15] {
                assert!(two_part_check(m, &s15, &g).unwrap(), "M={m} {g}");
            }
        }
        assert!(matches!(
            two_part_check(6, &shape(6, 1), &GammaElement::identity()),
            Err(Error::EvenModulus(6))
        ));
        assert!(two_part_check(5, &shape(5, 5), &GammaElement::identity()).is_err());
    }

    #[test]
    fn numeric_period_examples() {
        let sh = shape(6, 1);
        let g = GammaElement::new(1, 0, 6, 1).unwrap();
        let z = numeric_period(6, &sh, &g, 2000).unwrap();
        let exact = xi(6, &sh, &g).unwrap() / int(24);
        assert!((z.re - exact.to_f64().unwrap()).abs() < 1e-6, "{z} vs {exact}");
        assert!(z.im.abs() < 1e-6);
        assert!(matches!(
            numeric_period(6, &sh, &GammaElement::translation(1), 2000),
            Err(Error::Convergence(_))
        ));
        assert!(numeric_period(6, &sh, &GammaElement::new(1, 0, 600, 1).unwrap(), 100).is_err());
    }

    #[test]
    fn numeric_period_agrees_with_xi() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for sh in [shape(6, 1), shape(3, 3), shape(15, 1), shape(5, 1), shape(2, 1)] {
            for m in arith::divisors(sh.d).into_iter().filter(|&m| m > 1) {
                let mut done = 0;
                while done < 4 {
                    let g = random_gamma0(sh.level(), 30, &mut rng);
                    if g.c == 0 {
                        continue;
                    }
                    done += 1;
                    let z = numeric_period(m, &sh, &g, 2000).unwrap();
                    let exact = (xi(m, &sh, &g).unwrap() / int(24)).to_f64().unwrap();
                    assert!((z - Complex64::new(exact, 0.0)).norm() < 1e-6, "{sh} M={m} {g}: {z} vs {exact}");
                }
            }
        }
    }

    #[test]
    fn random_gamma0_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [1u64, 6, 15, 33] {
            for _ in 0..200 {
                let g = random_gamma0(n, 5 * n, &mut rng);
                assert!(GammaElement::new(g.a, g.b, g.c, g.d).is_ok());
                assert!(g.is_in_gamma0(n));
            }
            for _ in 0..50 {
                let g = random_gamma0(n, n, &mut rng);
                assert!([0, n as i64, -(n as i64)].contains(&g.c));
            }
        }
        let a = random_gamma0(15, 10_000, &mut ChaCha8Rng::seed_from_u64(1));
        let b = random_gamma0(15, 10_000, &mut ChaCha8Rng::seed_from_u64(2));
        assert_ne!(a, b);
    }

    #[test]
    fn matrix_parsing() {
        let g: GammaElement = "1, 2, 3, 7".parse().unwrap();
        assert_eq!(g, GammaElement::new(1, 2, 3, 7).unwrap());
        assert!("1,2,3".parse::<GammaElement>().is_err());
        assert!("1,1,1,1".parse::<GammaElement>().is_err());
        assert_eq!(g.mul(&g.inverse()).unwrap(), GammaElement::identity());
    }
}
