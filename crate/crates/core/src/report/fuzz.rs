//! Randomized suites over the Dedekind-sum and period calculus. Trial `i`
//! draws from its own ChaCha stream, so results do not depend on the
//! thread count.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cusps::LevelShape;
use crate::error::{Error, Result};
use crate::periods::{
    congruence_check, dedekind_sum, random_gamma0, reciprocity_check, two_part_check,
    xi_homomorphism_check, DedekindMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FuzzSuite {
    /// Reciprocity, plus brute = fast on both sums involved.
    Reciprocity,
    Congruence,
    XiHom,
    TwoPart,
}

impl FuzzSuite {
    pub const ALL: [FuzzSuite; 4] = [Self::Reciprocity, Self::Congruence, Self::XiHom, Self::TwoPart];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Reciprocity => "reciprocity",
            Self::Congruence => "congruence",
            Self::XiHom => "xi-hom",
            Self::TwoPart => "two-part",
        }
    }

    /// Shapes used when none are given.
    pub fn default_shapes(&self) -> Vec<LevelShape> {
        match self {
            Self::Reciprocity | Self::Congruence => Vec::new(),
            Self::XiHom => [6, 15, 21, 33]
                .into_iter()
                .map(|d| LevelShape::new(d, 1).expect("squarefree"))
                .collect(),
            Self::TwoPart => LevelShape::all_up_to(105)
                .into_iter()
                .filter(|s| s.d % 2 == 1 && arith::nu(s.d) >= 2)
                .collect(),
        }
    }
}

impl fmt::Display for FuzzSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FuzzSuite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown fuzz suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub suite: FuzzSuite,
    pub seed: u64,
    pub trials: u64,
    pub failure_count: u64,
    /// The first few failing cases.
    pub failures: Vec<String>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

const KEPT_FAILURES: usize = 10;
const DEDEKIND_MAX: i64 = 10_000;

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn coprime_pair(rng: &mut ChaCha8Rng, odd_k: bool) -> (i64, i64) {
    loop {
        let h = rng.random_range(1..=DEDEKIND_MAX);
        let mut k = rng.random_range(1..=DEDEKIND_MAX);
        if odd_k && k % 2 == 0 {
            k -= 1;
        }
        if h.gcd(&k) == 1 {
            return (h, k);
        }
    }
}

// Ok(None) on pass, Ok(Some(description)) on failure.
fn trial(suite: FuzzSuite, shapes: &[LevelShape], seed: u64, i: u64) -> Result<Option<String>> {
    let mut rng = trial_rng(seed, i);
    match suite {
        FuzzSuite::Reciprocity => {
            let (h, k) = coprime_pair(&mut rng, false);
            for (x, y) in [(h, k), (k, h)] {
                let b = dedekind_sum(x, y as u64, DedekindMode::Brute)?;
                let f = dedekind_sum(x, y as u64, DedekindMode::Fast)?;
                if b != f {
                    return Ok(Some(format!("s({x},{y}): brute {b} != fast {f}")));
                }
            }
            Ok((!reciprocity_check(h, k)?).then(|| format!("reciprocity fails at ({h},{k})")))
        }
        FuzzSuite::Congruence => {
            let (h, k) = coprime_pair(&mut rng, true);
            Ok((!congruence_check(h, k as u64)?).then(|| format!("congruence fails at ({h},{k})")))
        }
        FuzzSuite::XiHom | FuzzSuite::TwoPart => {
            for shape in shapes {
                let n = shape.level();
                for m in arith::divisors(shape.d).into_iter().filter(|&m| m > 1) {
                    let g1 = random_gamma0(n, 50 * n, &mut rng);
                    let ok = if suite == FuzzSuite::XiHom {
                        let g2 = random_gamma0(n, 50 * n, &mut rng);
                        xi_homomorphism_check(m, shape, &g1, &g2)?
                    } else {
                        two_part_check(m, shape, &g1)?
                    };
                    if !ok {
                        return Ok(Some(format!("{suite} fails at {shape}, M={m}, {g1}")));
                    }
                }
            }
            Ok(None)
        }
    }
}

/// Runs `n` trials. For the matrix suites every trial visits every shape and
/// every `M`, so `n` counts elements (or pairs) per `(shape, M)`.
pub fn run_fuzz(suite: FuzzSuite, n: u64, seed: u64, shapes: &[LevelShape]) -> Result<FuzzReport> {
    let default;
    let shapes = if shapes.is_empty() {
        default = suite.default_shapes();
        &default[..]
    } else {
        shapes
    };
    let outcomes = (0..n)
        .into_par_iter()
        .map(|i| trial(suite, shapes, seed, i))
        .collect::<Result<Vec<_>>>()?;
    let failed: Vec<String> = outcomes.into_iter().flatten().collect();
    Ok(FuzzReport {
        suite,
        seed,
        trials: n,
        failure_count: failed.len() as u64,
        failures: failed.into_iter().take(KEPT_FAILURES).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_and_are_reproducible() {
        for suite in FuzzSuite::ALL {
            let shapes = match suite {
                FuzzSuite::TwoPart => vec![LevelShape::new(15, 1).unwrap()],
                _ => Vec::new(),
            };
            let a = run_fuzz(suite, 40, 9, &shapes).unwrap();
            assert!(a.passed(), "{a:?}");
            assert_eq!(a, run_fuzz(suite, 40, 9, &shapes).unwrap());
        }
    }

    #[test]
    fn names_roundtrip() {
        for s in FuzzSuite::ALL {
            assert_eq!(s.name().parse::<FuzzSuite>().unwrap(), s);
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", s.name()));
        }
        assert!("nope".parse::<FuzzSuite>().is_err());
    }

    #[test]
    fn two_part_rejects_even_shapes() {
        assert!(run_fuzz(FuzzSuite::TwoPart, 2, 1, &[LevelShape::new(6, 1).unwrap()]).is_err());
    }
}
