//! Exact arithmetic for weight-2 Eisenstein series on `Γ₀(DC)`: the
//! eigenbasis `E_{M,L,ψ}`, cusps and constant terms, orders of quadratic
//! cuspidal subgroups, and the Dedekind-sum period calculus.

pub mod arith;
pub mod characters;
pub mod cusps;
pub mod eisenstein;
pub mod error;
pub mod periods;
pub mod qseries;
pub mod report;

pub use arith::{QuadExt, Rational};
pub use characters::QuadraticCharacter;
pub use cusps::{Cusp, CuspRep, LevelShape};
pub use eisenstein::{ConstantTermTable, CuspidalOrder, EigenSystem, EisIndex};
pub use error::{Error, Mismatch, Result};
pub use periods::{DedekindMode, GammaElement};
pub use qseries::QExpansion;
pub use report::{ResultRecord, SweepSpec};
