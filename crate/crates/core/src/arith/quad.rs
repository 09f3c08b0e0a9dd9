use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// `rat + irr·g` with `g² = disc`.
///
/// With `disc = 1` the generator is rational and `irr` is folded into
/// `rat`, so equality is structural in every context.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadExt {
    pub rat: Rational,
    pub irr: Rational,
    pub disc: i64,
}

impl QuadExt {
    pub fn new(rat: Rational, irr: Rational, disc: i64) -> Self {
        assert!(disc != 0, "QuadExt needs a nonzero discriminant");
        if disc == 1 {
            return Self {
                rat: rat + irr,
                irr: Rational::zero(),
                disc,
            };
        }
        Self { rat, irr, disc }
    }

    pub fn from_rational(q: Rational, disc: i64) -> Self {
        Self::new(q, Rational::zero(), disc)
    }

    pub fn from_int(n: i64, disc: i64) -> Self {
        Self::from_rational(super::int(n), disc)
    }

    pub fn zero(disc: i64) -> Self {
        Self::from_int(0, disc)
    }

    pub fn one(disc: i64) -> Self {
        Self::from_int(1, disc)
    }

    /// The generator `g` itself.
    pub fn gen(disc: i64) -> Self {
        Self::new(Rational::zero(), Rational::one(), disc)
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    /// `rat − irr·g`.
    pub fn conj(&self) -> Self {
        Self::new(self.rat.clone(), -self.irr.clone(), self.disc)
    }

    /// `rat² − irr²·disc`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - &self.irr * &self.irr * super::int(self.disc)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.disc == other.disc {
            Ok(())
        } else {
            Err(Error::DiscMismatch {
                left: self.disc,
                right: other.disc,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(
            &self.rat + &other.rat,
            &self.irr + &other.irr,
            self.disc,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(
            &self.rat - &other.rat,
            &self.irr - &other.irr,
            self.disc,
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = super::int(self.disc);
        Ok(Self::new(
            &self.rat * &other.rat + &self.irr * &other.irr * d,
            &self.rat * &other.irr + &self.irr * &other.rat,
            self.disc,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        // disc is never a rational square here, so norm 0 means other = 0
        let n = other.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self.checked_mul(&other.conj())?;
        Ok(Self::new(num.rat / &n, num.irr / &n, self.disc))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(&self.rat * q, &self.irr * q, self.disc)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&super::int(n))
    }

    /// `[rat_num, rat_den, irr_num, irr_den]` as decimal strings.
    pub fn parts(&self) -> [String; 4] {
        [
            self.rat.numer().to_string(),
            self.rat.denom().to_string(),
            self.irr.numer().to_string(),
            self.irr.denom().to_string(),
        ]
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.irr.is_zero()) {
            (_, true) => write!(f, "{}", self.rat),
            (true, false) => write!(f, "({})*g", self.irr),
            (false, false) => write!(f, "{} + ({})*g", self.rat, self.irr),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$checked(rhs).expect("QuadExt operands from different contexts")
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-self.rat, -self.irr, self.disc)
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -self.clone()
    }
}
