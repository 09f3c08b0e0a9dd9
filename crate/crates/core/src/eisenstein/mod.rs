//! The Eisenstein eigenbasis `E_{M,L,ψ}` on `Γ₀(DC)` and everything built
//! from its constant terms.

mod basis;
mod constants;
mod lattices;
mod lseries;

pub use basis::{
    check_eigen_series, closed_form_qexp, eigenvalue, eis_qexp, ideal_generators, verify_eigenform,
    EigenSystem,
};
pub use constants::{
    constant_term, constant_term_oracle, constant_term_table, delta_divisor, edd_unit_check,
    ConstantTermTable,
};
pub use lattices::{
    cuspidal_order, order_nml, period_lattice_g1, r_lattice, strip_primes, CuspidalOrder,
};
pub use lseries::{lambda_value, lseries_factorization_check};

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::characters::QuadraticCharacter;
use crate::cusps::{is_valid_ml, LevelShape};
use crate::error::{Error, Result};

/// A triple `(M, L, ψ)` of the index set, tied to the level it lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EisIndex {
    pub shape: LevelShape,
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "L")]
    pub l: u64,
    pub psi: QuadraticCharacter,
}

impl EisIndex {
    pub fn new(shape: LevelShape, m: u64, l: u64, psi: QuadraticCharacter) -> Result<Self> {
        let f = psi.conductor();
        let bad = |reason| Err(Error::InvalidIndex { m, l, f, reason });
        if m == 1 {
            return bad("M must differ from 1");
        }
        if !is_valid_ml(m, l, &shape) {
            return bad("need M, L | D and D | ML | DC");
        }
        if m.gcd(&l) % f != 0 {
            return bad("conductor must divide gcd(M, L)");
        }
        Ok(Self { shape, m, l, psi })
    }

    pub fn f(&self) -> u64 {
        self.psi.conductor()
    }

    /// `gcd(M, L)`.
    pub fn ml_gcd(&self) -> u64 {
        self.m.gcd(&self.l)
    }

    pub fn disc(&self) -> i64 {
        self.psi.gauss_disc()
    }
}

impl fmt::Display for EisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(M={},L={},f={})@{}", self.m, self.l, self.f(), self.shape)
    }
}

/// Admissible `(M, L)` pairs with `M ≠ 1`, in increasing `(M, L)` order.
pub fn h_pairs(shape: &LevelShape) -> Vec<(u64, u64)> {
    let divs = arith::divisors(shape.d);
    let mut out = Vec::new();
    for &m in &divs {
        for &l in &divs {
            if m != 1 && is_valid_ml(m, l, shape) {
                out.push((m, l));
            }
        }
    }
    out
}

/// `#H(DC)` counting every Dirichlet character mod `gcd(M, L)`.
pub fn count_h(shape: &LevelShape) -> u64 {
    h_pairs(shape)
        .into_iter()
        .map(|(m, l)| arith::euler_phi(m.gcd(&l)))
        .sum()
}

/// The quadratic part of the index set: for every pair, the trivial
/// character and the quadratic character of each odd squarefree conductor
/// `f > 1` dividing `gcd(M, L)`.
pub fn enumerate_h(shape: &LevelShape) -> Vec<EisIndex> {
    let mut out = Vec::new();
    for (m, l) in h_pairs(shape) {
        for f in arith::divisors(m.gcd(&l)) {
            if f % 2 == 1 {
                let psi = QuadraticCharacter::new(f).expect("odd divisor of squarefree D");
                out.push(EisIndex::new(*shape, m, l, psi).expect("pair already validated"));
            }
        }
    }
    out
}

/// `Σ_{1 < d | N} φ(gcd(d, N/d))`, the dimension of the Eisenstein space.
pub fn eisenstein_dimension(n: u64) -> u64 {
    arith::divisors(n)
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| arith::euler_phi(d.gcd(&(n / d))))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::quad_char;

    fn shape(d: u64, c: u64) -> LevelShape {
        LevelShape::new(d, c).unwrap()
    }

    fn triples(v: &[EisIndex]) -> Vec<(u64, u64, u64)> {
        v.iter().map(|i| (i.m, i.l, i.f())).collect()
    }

    #[test]
    fn enumerate_examples() {
        let s6 = shape(6, 1);
        assert_eq!(
            triples(&enumerate_h(&s6)),
            vec![(2, 3, 1), (3, 2, 1), (6, 1, 1)]
        );
        assert_eq!(count_h(&s6), 3);
        for p in [2u64, 3, 5, 7, 11] {
            assert_eq!(count_h(&shape(p, p)), p);
        }
        assert_eq!(
            triples(&enumerate_h(&shape(3, 3))),
            vec![(3, 1, 1), (3, 3, 1), (3, 3, 3)]
        );
    }

    #[test]
    fn index_validation() {
        let s = shape(3, 3);
        let p3 = quad_char(3).unwrap();
        assert!(EisIndex::new(s, 1, 3, QuadraticCharacter::trivial()).is_err());
        assert!(EisIndex::new(s, 3, 1, p3).is_err());
        assert!(EisIndex::new(shape(6, 1), 2, 2, QuadraticCharacter::trivial()).is_err());
        assert!(EisIndex::new(s, 3, 3, p3).is_ok());
    }

    #[test]
    fn count_matches_dimension_up_to_2000() {
        for sh in LevelShape::all_up_to(2000) {
            assert_eq!(count_h(&sh), eisenstein_dimension(sh.level()), "{sh}");
        }
    }
}
