//! Quadratic Dirichlet characters of odd squarefree conductor.
//!
//! The Gauss sum never appears numerically: it is the generator `g` of a
//! [`QuadExt`] context with `g² = ψ(−1)·f`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, int, jacobi, QuadExt, Rational};
use crate::error::{Error, Result};

/// The primitive quadratic character `n ↦ (n/f)`; `f = 1` is the trivial one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadraticCharacter {
    conductor: u64,
    parity: i8,
}

impl QuadraticCharacter {
    pub fn new(f: u64) -> Result<Self> {
        if f == 0 || f % 2 == 0 || !arith::is_squarefree(f) {
            return Err(Error::InvalidConductor(f));
        }
        let parity = if f % 4 == 1 { 1 } else { -1 };
        Ok(Self {
            conductor: f,
            parity,
        })
    }

    pub fn trivial() -> Self {
        Self {
            conductor: 1,
            parity: 1,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `ψ(−1)`.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn is_trivial(&self) -> bool {
        self.conductor == 1
    }

    /// `ψ(n)` on integers; the trivial character is 1 everywhere, even at 0.
    pub fn value(&self, n: i64) -> i8 {
        if self.conductor == 1 {
            return 1;
        }
        jacobi(n, self.conductor).expect("odd conductor")
    }

    pub fn value_big(&self, n: &BigInt) -> i8 {
        if self.conductor == 1 {
            return 1;
        }
        let r = n.mod_floor(&BigInt::from(self.conductor)).to_i64().unwrap();
        self.value(r)
    }

    /// Multiplicative extension to rationals. Integers may give 0; a proper
    /// fraction whose numerator or denominator meets the conductor is an error.
    pub fn eval(&self, q: &Rational) -> Result<i8> {
        if self.conductor == 1 {
            return Ok(1);
        }
        if q.is_integer() {
            return Ok(self.value_big(q.numer()));
        }
        let f = BigInt::from(self.conductor);
        if !q.numer().gcd(&f).is_one() || !q.denom().gcd(&f).is_one() {
            return Err(Error::CharacterUndefined {
                conductor: self.conductor,
                value: q.to_string(),
            });
        }
        Ok(self.value_big(q.numer()) * self.value_big(q.denom()))
    }

    /// `g(ψ)² = ψ(−1)·f`.
    pub fn gauss_disc(&self) -> i64 {
        self.parity as i64 * self.conductor as i64
    }

    /// `ψ·χ` for a character of coprime conductor.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.conductor.gcd(&other.conductor) != 1 {
            return Err(Error::NotCoprime(
                self.conductor as i64,
                other.conductor,
            ));
        }
        Self::new(self.conductor * other.conductor)
    }

    /// `n_ψ = −(f/(4g))·Σ_{a,b} ψ(a)ψ(b)B₂((a+b)/f)`, memoized per conductor.
    pub fn n_psi(&self) -> QuadExt {
        static MEMO: OnceLock<RwLock<HashMap<u64, QuadExt>>> = OnceLock::new();
        let memo = MEMO.get_or_init(Default::default);
        if let Some(v) = memo.read().unwrap().get(&self.conductor) {
            return v.clone();
        }
        let f = self.conductor as i64;
        let disc = self.gauss_disc();
        let s = self.double_bernoulli_sum();
        // −(f/4)·S/g = −(f/4)·S·g/disc
        let coeff = -(int(f) / int(4)) * s;
        let v = if f == 1 {
            QuadExt::from_rational(coeff, 1)
        } else {
            QuadExt::new(Rational::zero(), coeff / int(disc), disc)
        };
        memo.write().unwrap().insert(self.conductor, v.clone());
        v
    }

    /// `S = Σ_{a,b mod f} ψ(a)ψ(b)B₂((a+b)/f)`, grouped by `c = a + b mod f`.
    pub fn double_bernoulli_sum(&self) -> Rational {
        let f = self.conductor as i64;
        let vals: Vec<i64> = (0..f).map(|a| self.value(a) as i64).collect();
        let mut total = BigInt::zero();
        for c in 0..f {
            let j: i64 = (0..f)
                .map(|a| vals[a as usize] * vals[(c - a).rem_euclid(f) as usize])
                .sum();
            total += BigInt::from(j) * BigInt::from(6 * c * c - 6 * c * f + f * f);
        }
        Rational::new(total, BigInt::from(6 * f * f))
    }

    /// `B_{1,ψ} = (1/f)·Σ_{a=1}^{f} ψ(a)·a`.
    pub fn gen_bernoulli_b1(&self) -> Result<Rational> {
        if self.is_trivial() {
            return Err(Error::TrivialCharacter);
        }
        let f = self.conductor as i64;
        let s: i64 = (1..=f).map(|a| self.value(a) as i64 * a).sum();
        Ok(arith::rat(s, f))
    }
}

/// Free-function form of [`QuadraticCharacter::new`].
pub fn quad_char(f: u64) -> Result<QuadraticCharacter> {
    QuadraticCharacter::new(f)
}

pub fn gen_bernoulli_b1(chi: &QuadraticCharacter) -> Result<Rational> {
    chi.gen_bernoulli_b1()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn brute_double_sum(psi: &QuadraticCharacter) -> Rational {
        let f = psi.conductor() as i64;
        let mut s = Rational::zero();
        for a in 0..f {
            for b in 0..f {
                let w = psi.value(a) * psi.value(b);
                if w != 0 {
                    s += int(w as i64) * arith::bernoulli2(&rat(a + b, f));
                }
            }
        }
        s
    }

    #[test]
    fn construction() {
        assert!(quad_char(1).unwrap().is_trivial());
        assert_eq!(quad_char(2), Err(Error::InvalidConductor(2)));
        assert_eq!(quad_char(9), Err(Error::InvalidConductor(9)));
        assert_eq!(quad_char(0), Err(Error::InvalidConductor(0)));
        let p3 = quad_char(3).unwrap();
        assert_eq!((p3.value(2), p3.value(3)), (-1, 0));
        assert_eq!(quad_char(15).unwrap().value(2), 1);
    }

    #[test]
    fn eval_examples() {
        let one = QuadraticCharacter::trivial();
        assert_eq!(one.eval(&rat(7, 5)).unwrap(), 1);
        assert_eq!(one.value(0), 1);
        let p3 = quad_char(3).unwrap();
        assert_eq!(p3.eval(&int(2)).unwrap(), -1);
        assert_eq!(p3.eval(&rat(4, 5)).unwrap(), -1);
        assert_eq!(p3.eval(&int(6)).unwrap(), 0);
        assert!(p3.eval(&rat(3, 5)).is_err());
        assert!(p3.eval(&rat(2, 3)).is_err());
    }

    #[test]
    fn gauss_disc_examples() {
        assert_eq!(quad_char(1).unwrap().gauss_disc(), 1);
        assert_eq!(quad_char(3).unwrap().gauss_disc(), -3);
        assert_eq!(quad_char(5).unwrap().gauss_disc(), 5);
    }

    #[test]
    fn n_psi_examples() {
        assert_eq!(
            QuadraticCharacter::trivial().n_psi(),
            QuadExt::from_rational(rat(-1, 24), 1)
        );
        let p3 = quad_char(3).unwrap();
        assert_eq!(p3.double_bernoulli_sum(), rat(-4, 9));
        assert_eq!(p3.n_psi(), QuadExt::new(int(0), rat(-1, 9), -3));
        // g/(f·n_ψ) = 1/(3·(−1/9)) = −3
        let u = QuadExt::gen(-3)
            .checked_div(&p3.n_psi().scale_int(3))
            .unwrap();
        assert_eq!(u, QuadExt::from_int(-3, -3));
    }

    #[test]
    fn n_psi_rational_ratio_up_to_200() {
        for f in (1..=200u64).filter(|f| f % 2 == 1 && arith::is_squarefree(*f)) {
            let psi = quad_char(f).unwrap();
            let s = psi.double_bernoulli_sum();
            assert_eq!(s, brute_double_sum(&psi), "f={f}");
            let n = psi.n_psi();
            let disc = psi.gauss_disc();
            let ng = &n * &QuadExt::gen(disc);
            assert!(ng.is_rational());
            let u = QuadExt::gen(disc)
                .checked_div(&n.scale_int(f as i64))
                .unwrap();
            assert!(u.is_rational() && !u.is_zero(), "f={f}");
            if f > 1 {
                let expect = int(-4 * psi.parity() as i64) / (int(f as i64) * s);
                assert_eq!(u.rat, expect, "f={f}");
            }
        }
    }

    #[test]
    fn b1_examples() {
        assert_eq!(quad_char(3).unwrap().gen_bernoulli_b1().unwrap(), rat(-1, 3));
        assert_eq!(quad_char(5).unwrap().gen_bernoulli_b1().unwrap(), int(0));
        assert_eq!(quad_char(7).unwrap().gen_bernoulli_b1().unwrap(), int(-1));
        assert_eq!(
            QuadraticCharacter::trivial().gen_bernoulli_b1(),
            Err(Error::TrivialCharacter)
        );
    }

    proptest::proptest! {
        #[test]
        fn multiplicative_periodic_parity(
            f in proptest::sample::select(vec![1u64, 3, 5, 7, 15, 21, 35, 105, 165, 195]),
            m in -2000i64..2000, n in -2000i64..2000)
        {
            let psi = quad_char(f).unwrap();
            if f > 1 {
                proptest::prop_assert_eq!(psi.value(m * n), psi.value(m) * psi.value(n));
            }
            proptest::prop_assert_eq!(psi.value(m + f as i64), psi.value(m));
            proptest::prop_assert_eq!(psi.value(-1), psi.parity());
        }
    }
}
