//! Seeded random Laurent polynomials for the randomized identity checks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::laurent::{int, ExpVec, LaurentPoly, VarSet};

pub const DEFAULT_SEED: u64 = 20_070_501;

#[derive(Clone, Debug)]
pub struct RandomPolySpec {
    pub max_terms: usize,
    pub exponents: (i32, i32),
    pub coefficients: (i64, i64),
}

impl Default for RandomPolySpec {
    fn default() -> Self {
        RandomPolySpec {
            max_terms: 8,
            exponents: (-3, 3),
            coefficients: (-5, 5),
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random polynomial in the variables of `block` (other exponents stay zero).
/// Between 1 and `max_terms` terms are drawn; colliding or zero terms may
/// leave fewer.
pub fn random_laurent(
    rng: &mut impl Rng,
    vars: &Arc<VarSet>,
    block: &[usize],
    spec: &RandomPolySpec,
) -> LaurentPoly {
    let count = rng.gen_range(1..=spec.max_terms);
    let unit = vars.unit();
    let terms: Vec<(ExpVec, _)> = (0..count)
        .map(|_| {
            let mut e = ExpVec::from_elem(0, vars.len());
            for &i in block {
                e[i] = unit * rng.gen_range(spec.exponents.0..=spec.exponents.1);
            }
            (
                e,
                int(rng.gen_range(spec.coefficients.0..=spec.coefficients.1)),
            )
        })
        .collect();
    LaurentPoly::from_terms(vars, terms)
}
