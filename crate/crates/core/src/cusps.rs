//! Cusps of `X₀(DC)` in `(r, s, t, x)` coordinates.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{self, ext_gcd};
use crate::error::{Error, Result};

/// Level `N = D·C` with `D` squarefree and `C | D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LevelShape {
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "C")]
    pub c: u64,
}

impl LevelShape {
    pub fn new(d: u64, c: u64) -> Result<Self> {
        let bad = |reason| Err(Error::InvalidShape { d, c, reason });
        if d == 0 || c == 0 {
            return bad("D and C must be positive");
        }
        if !arith::is_squarefree(d) {
            return bad("D must be squarefree");
        }
        if d % c != 0 {
            return bad("C must divide D");
        }
        Ok(Self { d, c })
    }

    pub fn level(&self) -> u64 {
        self.d * self.c
    }

    /// `D/C`, the part of the level appearing to the first power.
    pub fn d_over_c(&self) -> u64 {
        self.d / self.c
    }

    /// Every valid shape with `D·C ≤ max_level`, ordered by level then `D`.
    pub fn all_up_to(max_level: u64) -> Vec<Self> {
        let mut out = Vec::new();
        for n in 1..=max_level {
            for d in arith::divisors(n) {
                let c = n / d;
                if let Ok(s) = Self::new(d, c) {
                    out.push(s);
                }
            }
        }
        out
    }
}

impl fmt::Display for LevelShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D={},C={}", self.d, self.c)
    }
}

/// The point `[r·s²·t·x / DC]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CuspRep {
    pub r: u64,
    pub s: u64,
    pub t: u64,
    pub x: u64,
}

impl CuspRep {
    pub fn new(r: u64, s: u64, t: u64, x: u64) -> Self {
        Self { r, s, t, x }
    }

    pub fn validate(&self, shape: &LevelShape) -> Result<()> {
        let Self { r, s, t, x } = *self;
        let ok = r >= 1
            && s >= 1
            && t >= 1
            && x >= 1
            && shape.d_over_c() % r == 0
            && shape.c % s == 0
            && shape.c % t == 0
            && s.gcd(&t) == 1
            && x.gcd(&shape.d) == 1;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidCusp((r, s, t, x)))
        }
    }

    /// `r·s²`, the ramification index of `X₀(DC) → X(1)` here.
    pub fn width(&self) -> u64 {
        self.r * self.s * self.s
    }
}

impl fmt::Display for CuspRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.r, self.s, self.t, self.x)
    }
}

/// A point `a/c` of `ℙ¹(ℚ)` in lowest terms with `c ≥ 0`; `1/0` is `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cusp {
    pub a: i64,
    pub c: i64,
}

impl Cusp {
    pub fn new(a: i64, c: i64) -> Self {
        assert!(a != 0 || c != 0, "0/0 is not a cusp");
        let g = a.gcd(&c);
        let (mut a, mut c) = (a / g, c / g);
        if c < 0 || (c == 0 && a < 0) {
            a = -a;
            c = -c;
        }
        Self { a, c }
    }

    pub fn infinity() -> Self {
        Self { a: 1, c: 0 }
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c == 0 {
            write!(f, "oo")
        } else {
            write!(f, "{}/{}", self.a, self.c)
        }
    }
}

/// Smallest positive integer `≡ x (mod t)` that is prime to `D`.
pub fn canonical_x(x: i64, t: u64, d: u64) -> u64 {
    let mut y = x.rem_euclid(t as i64) as u64;
    if y == 0 {
        y = t;
    }
    while y.gcd(&d) != 1 {
        y += t;
    }
    y
}

/// All cusp representatives, ordered by `r`, then `t`, then `s`, then `x`.
pub fn enumerate_cusps(shape: &LevelShape) -> Vec<CuspRep> {
    let mut out = Vec::new();
    let c_divs = arith::divisors(shape.c);
    for r in arith::divisors(shape.d_over_c()) {
        for &t in &c_divs {
            for &s in &c_divs {
                if s.gcd(&t) != 1 {
                    continue;
                }
                for a in 1..=t {
                    if a.gcd(&t) == 1 {
                        out.push(CuspRep::new(r, s, t, canonical_x(a as i64, t, shape.d)));
                    }
                }
            }
        }
    }
    out
}

/// `Σ_{d | N} φ(gcd(d, N/d))`.
pub fn cusp_count(n: u64) -> u64 {
    arith::divisors(n)
        .into_iter()
        .map(|d| arith::euler_phi(d.gcd(&(n / d))))
        .sum()
}

/// `[SL₂(ℤ) : Γ₀(N)] = N·∏_{p | N}(1 + 1/p)`.
pub fn gamma0_index(n: u64) -> u64 {
    let ps = arith::prime_divisors(n);
    let mut idx = n;
    for p in ps {
        idx = idx / p * (p + 1);
    }
    idx
}

/// `x / (DC/(r·s²·t))`, already in lowest terms since `x` is prime to `D`.
pub fn rep_to_cusp(rep: &CuspRep, shape: &LevelShape) -> Cusp {
    let den = shape.level() / (rep.r * rep.s * rep.s * rep.t);
    Cusp::new(rep.x as i64, den as i64)
}

/// Γ₀(N)-equivalence of two cusps.
///
/// With `g = gcd(c, N)`, two cusps match iff they share `g` and
/// `(c₁/g)·a₁ ≡ (c₂/g)·a₂ (mod gcd(g, N/g))`.
pub fn cusp_equiv(u: &Cusp, v: &Cusp, n: u64) -> bool {
    let (u, v) = (Cusp::new(u.a, u.c), Cusp::new(v.a, v.c));
    let n = n as i128;
    let g1 = (u.c as i128).gcd(&n);
    let g2 = (v.c as i128).gcd(&n);
    if g1 != g2 {
        return false;
    }
    let m = g1.gcd(&(n / g1));
    let lhs = (u.c as i128 / g1) * u.a as i128;
    let rhs = (v.c as i128 / g2) * v.a as i128;
    (lhs - rhs).rem_euclid(m) == 0
}

/// Exhaustive double-coset computation, independent of [`cusp_equiv`].
///
/// The cusp `a/c = g(∞)` with `g = (a b; c d) ∈ SL₂(ℤ)` sits in the double
/// coset `Γ₀(N)·g·Γ_∞`. Left cosets of Γ₀(N) are bottom rows `(c : d)` up to
/// units of `ℤ/N`, and `Γ_∞` acts by `d ↦ d + k·c`; the minimum over that
/// finite orbit is a complete invariant.
pub fn cusp_class_brute(u: &Cusp, n: u64) -> (u64, u64) {
    let u = Cusp::new(u.a, u.c);
    // a·d − b·c = 1
    let (_, d, _) = ext_gcd(u.a, u.c);
    let n_i = n as i128;
    let c = (u.c as i128).rem_euclid(n_i);
    let d = (d as i128).rem_euclid(n_i);
    let mut best = (u64::MAX, u64::MAX);
    for unit in 0..n_i.max(1) {
        if unit.gcd(&n_i) != 1 && n > 1 {
            continue;
        }
        for k in 0..n_i.max(1) {
            let cc = (unit * c).rem_euclid(n_i) as u64;
            let dd = (unit * (d + k * c)).rem_euclid(n_i) as u64;
            best = best.min((cc, dd));
        }
    }
    best
}

/// Classical width `N / gcd(c², N)`.
pub fn classical_width(cusp: &Cusp, n: u64) -> u64 {
    let c = cusp.c.unsigned_abs() as u128;
    let g = (c * c).gcd(&(n as u128));
    n / g as u64
}

/// The representative of the class of `cusp` on `X₀(DC)`.
pub fn locate_cusp(cusp: &Cusp, shape: &LevelShape) -> CuspRep {
    let cusp = Cusp::new(cusp.a, cusp.c);
    let n = shape.level();
    let g = (cusp.c.unsigned_abs()).gcd(&n);
    let d = n / g;
    let r = d.gcd(&shape.d_over_c());
    let rest = d / r;
    let s: u64 = arith::prime_divisors(shape.c)
        .into_iter()
        .filter(|p| rest % (p * p) == 0)
        .product();
    let t = rest / (s * s);
    let x = ((cusp.c.unsigned_abs() / g) as i128 * cusp.a as i128).rem_euclid(t as i128);
    CuspRep::new(r, s, t, canonical_x(x as i64, t, shape.d))
}

/// `{(r, s, t, α·x)}` for `α ∈ (ℤ/t)ˣ`, in increasing `α`.
pub fn galois_orbit(rep: &CuspRep, shape: &LevelShape) -> Vec<CuspRep> {
    (1..=rep.t)
        .filter(|a| a.gcd(&rep.t) == 1)
        .map(|a| {
            let x = (a as u128 * rep.x as u128 % rep.t as u128) as i64;
            CuspRep::new(rep.r, rep.s, rep.t, canonical_x(x, rep.t, shape.d))
        })
        .collect()
}

fn isqrt_exact(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    debug_assert_eq!(r * r, n, "{n} is not a square");
    r
}

/// The `C = D` bijection `d | D² ↦ (M, L)`.
fn square_case_to_ml(d: u64, dd: u64) -> (u64, u64) {
    let sq = dd * dd;
    let g = d.gcd(&(sq / d));
    (isqrt_exact(d * g), isqrt_exact(sq / d * g))
}

fn square_case_to_divisor(m: u64, l: u64) -> u64 {
    let g = m.gcd(&l);
    (m / g) * (m / g) * g
}

/// Whether `(M, L)` is an admissible pair: `M, L | D` and `D | ML | DC`.
pub fn is_valid_ml(m: u64, l: u64, shape: &LevelShape) -> bool {
    m >= 1
        && l >= 1
        && shape.d % m == 0
        && shape.d % l == 0
        && (m * l) % shape.d == 0
        && shape.level() % (m * l) == 0
}

/// `d | DC ↦ (M, L)`; `d = 1` goes to `(1, D)`.
pub fn divisor_to_ml(d: u64, shape: &LevelShape) -> Result<(u64, u64)> {
    if d == 0 || shape.level() % d != 0 {
        return Err(Error::InvalidDivisor(d));
    }
    let dc = shape.d_over_c();
    let d0 = d.gcd(&dc);
    let (m, l) = square_case_to_ml(d / d0, shape.c);
    Ok((d0 * m, (dc / d0) * l))
}

pub fn ml_to_divisor(m: u64, l: u64, shape: &LevelShape) -> Result<u64> {
    if !is_valid_ml(m, l, shape) {
        return Err(Error::InvalidIndex {
            m,
            l,
            f: 1,
            reason: "need M, L | D and D | ML | DC",
        });
    }
    let d0 = m.gcd(&shape.d_over_c());
    Ok(d0 * square_case_to_divisor(m.gcd(&shape.c), l.gcd(&shape.c)))
}

/// One step of cusp lowering along a prime `p | D`: returns the coordinates
/// of a Γ₀-equivalent point on the lower level and that level's shape.
pub fn lower_cusp(rep: &CuspRep, shape: &LevelShape, p: u64) -> Result<(CuspRep, LevelShape)> {
    if shape.d % p != 0 || !arith::is_prime(p) {
        return Err(Error::InvalidDivisor(p));
    }
    let CuspRep { r, s, t, x } = *rep;
    let (lowered, d2, c2) = if r % p == 0 {
        ((r / p, s, t, x), shape.d / p, shape.c)
    } else if s % p == 0 {
        ((r, s / p, t, x), shape.d / p, shape.c / p)
    } else if t % p == 0 {
        ((r, s, t / p, p * x), shape.d / p, shape.c / p)
    } else if shape.d_over_c() % p == 0 {
        ((r, s, t, p * x), shape.d / p, shape.c)
    } else {
        ((r, s, t, p * p * x), shape.d / p, shape.c / p)
    };
    let low = LevelShape::new(d2, c2)?;
    let (r, s, t, x) = lowered;
    Ok((CuspRep::new(r, s, t, canonical_x(x as i64, t, low.d)), low))
}
