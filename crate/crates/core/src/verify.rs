//! Randomized and exhaustive identity checks, and a dispatcher over every
//! identity the library can verify.

use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::characters::{
    character, character_via_divided_differences, schur_oracle, weyl_denominator, DenominatorForm,
    Partition,
};
use crate::divdiff::{apply, apply_word, Block, DividedDifference};
use crate::error::{domain, Error, Result};
use crate::exec::Exec;
use crate::kernels::{
    lemma2_check, lemma4_check, lemma5_check, prop3_check, symmetric_corollaries, theorem6_check,
};
use crate::keypoly::{key_varset, path_independence_violation};
use crate::laurent::{int, ExpVec, LaurentPoly, VarSet};
use crate::random::{random_laurent, seeded_rng, RandomPolySpec, DEFAULT_SEED};
use crate::report::VerificationReport;
use crate::scalarprod::{
    adjointness_check, dominant_pairing_check, orthogonality_check, support_check,
};
use crate::weylgroup::{
    alternating_sum_apply, apply_generator, factored_alternating_sum, generators, Generator,
    GroupType,
};

fn operator(ty: GroupType, n: usize, g: Generator, hatted: bool) -> Result<DividedDifference> {
    DividedDifference::for_generator(ty, n, g, hatted)
}

fn random_pairs(
    ty: GroupType,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<(Block, Vec<LaurentPoly>)> {
    let vars = key_varset(ty, n);
    let block = Block::x(&vars)?;
    let mut rng = seeded_rng(seed);
    let spec = RandomPolySpec::default();
    let polys = (0..trials)
        .map(|_| random_laurent(&mut rng, &vars, &block.vars, &spec))
        .collect();
    Ok((block, polys))
}

/// `π π = π` and `π̂ π̂ = -π̂` for every generator operator, on random inputs.
pub fn lemma1_check(
    ty: GroupType,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let (block, polys) = random_pairs(ty, n, trials, seed)?;
    let gens = generators(ty, n);
    let found = Exec::default().try_map(&polys, |f| {
        for &g in &gens {
            for hatted in [false, true] {
                let op = operator(ty, n, g, hatted)?;
                let once = apply(op, &block, f)?;
                let twice = apply(op, &block, &once)?;
                let expect = if hatted { -&once } else { once };
                if twice != expect {
                    return Ok::<_, Error>(Some(json!({ "operator": op.to_string(), "f": f })));
                }
            }
        }
        Ok(None)
    })?;
    let ce = found.into_iter().flatten().next();
    Ok(VerificationReport::new(
        format!("lemma1:{ty}"),
        n,
        trials as u32,
        ce,
    ))
}

/// Order of `g h` acting on signed permutations.
pub fn coxeter_order(g: Generator, h: Generator, n: usize) -> usize {
    let start: Vec<i32> = (1..=n as i32).collect();
    let mut v = start.clone();
    for k in 1.. {
        apply_generator(g, &mut v);
        apply_generator(h, &mut v);
        if v == start {
            return k;
        }
    }
    unreachable!()
}

/// Braid relations `(π_g π_h)^{m/2}⋯ = (π_h π_g)^{m/2}⋯` between every pair
/// of generator operators, with `m` the order of `g h`; both families. For
/// type D, key polynomials are additionally checked to be independent of the
/// raising path over indices of weight at most 3.
pub fn braid_check(
    ty: GroupType,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let (block, polys) = random_pairs(ty, n, trials, seed)?;
    let gens = generators(ty, n);
    let mut relations = Vec::new();
    for (a, &g) in gens.iter().enumerate() {
        for &h in &gens[a + 1..] {
            let m = coxeter_order(g, h, n);
            for hatted in [false, true] {
                let (pg, ph) = (operator(ty, n, g, hatted)?, operator(ty, n, h, hatted)?);
                let left: Vec<_> = (0..m).map(|k| if k % 2 == 0 { pg } else { ph }).collect();
                let right: Vec<_> = (0..m).map(|k| if k % 2 == 0 { ph } else { pg }).collect();
                relations.push((left, right));
            }
        }
    }
    let found = Exec::default().try_map(&polys, |f| {
        for (left, right) in &relations {
            if apply_word(left, &block, f)? != apply_word(right, &block, f)? {
                let word = |w: &[DividedDifference]| {
                    w.iter()
                        .map(|o| o.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                return Ok::<_, Error>(Some(
                    json!({ "left": word(left), "right": word(right), "f": f }),
                ));
            }
        }
        Ok(None)
    })?;
    let mut ce = found.into_iter().flatten().next();
    if ce.is_none() && ty == GroupType::D {
        for hatted in [false, true] {
            if let Some((idx, g)) = path_independence_violation(ty, n, 3, hatted)? {
                ce = Some(json!({ "index": idx.to_string(), "generator": g.to_string() }));
                break;
            }
        }
    }
    Ok(VerificationReport::new(
        format!("braid:{ty}"),
        n,
        trials as u32,
        ce,
    ))
}

/// Factored alternating sums against direct group sums on every monomial
/// `x^v` with `|v_i| ≤ window`.
pub fn alternating_sum_check(ty: GroupType, n: usize, window: i32) -> Result<VerificationReport> {
    if ty == GroupType::A {
        return domain("the factored alternating sums concern the types B, C, BC and D");
    }
    let vars = VarSet::standard(n, false, false);
    let block: Vec<usize> = (0..n).collect();
    let mut exps: Vec<ExpVec> = vec![ExpVec::new()];
    for _ in 0..n {
        exps = exps
            .into_iter()
            .flat_map(|e| {
                (-window..=window).map(move |a| {
                    let mut e = e.clone();
                    e.push(a);
                    e
                })
            })
            .collect();
    }
    let found = Exec::default().try_map(&exps, |e| {
        let f = LaurentPoly::monomial(&vars, e.clone(), int(1));
        let direct = alternating_sum_apply(ty, &block, &f)?;
        let factored = factored_alternating_sum(ty, &block, &f)?;
        Ok::<_, Error>((direct != factored).then(|| json!({ "monomial": e.to_vec() })))
    })?;
    let ce = found.into_iter().flatten().next();
    Ok(VerificationReport::new(
        format!("eq4-5:{ty}"),
        n,
        window as u32,
        ce,
    ))
}

/// Weyl denominators: alternating sum over the group against the product.
pub fn denominator_check(ty: GroupType, n: usize) -> Result<VerificationReport> {
    let sum = weyl_denominator(ty, n, DenominatorForm::Sum)?;
    let product = weyl_denominator(ty, n, DenominatorForm::Product)?;
    let ce = (sum != product)
        .then(|| json!({ "sum": sum.numerator.pretty(), "product": product.numerator.pretty() }));
    Ok(VerificationReport::new(format!("eq6-9:{ty}"), n, 0, ce))
}

/// Characters as quotients of alternating sums against the maximal divided
/// difference applied to `x^λ`, for `|λ| ≤ max_size`; in type A also against
/// the tableau oracle up to `oracle_size`.
pub fn characters_check(
    ty: GroupType,
    n: usize,
    max_size: u32,
    oracle_size: u32,
) -> Result<VerificationReport> {
    let mut lambdas: Vec<Partition> = Partition::all_up_to(n, max_size);
    if ty == GroupType::D {
        lambdas.retain(|l| l.length() < n);
    }
    let found = Exec::default().try_map(&lambdas, |l| {
        let direct = character(ty, l, n)?;
        let via = character_via_divided_differences(ty, l, n)?;
        Ok::<_, Error>(
            (direct != via)
                .then(|| json!({ "lambda": l.to_string(), "route": "divided differences" })),
        )
    })?;
    let mut ce = found.into_iter().flatten().next();
    if ce.is_none() && ty == GroupType::A {
        for l in Partition::all_up_to(n, oracle_size) {
            if schur_oracle(&l, n)? != character(ty, &l, n)? {
                ce = Some(json!({ "lambda": l.to_string(), "route": "tableaux" }));
                break;
            }
        }
    }
    Ok(VerificationReport::new(
        format!("eq10-13:{ty}"),
        n,
        max_size,
        ce,
    ))
}

/// Every identity the library checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    Lemma1,
    Braid,
    AlternatingSums,
    Denominators,
    Characters,
    Prop3,
    Lemma2,
    Lemma4,
    Lemma5,
    Theorem6,
    Corollaries,
    Theorem8,
    Theorem15,
    Lemma10,
    Corollary12,
}

impl Identity {
    pub const ALL: [Identity; 15] = [
        Identity::Lemma1,
        Identity::Braid,
        Identity::AlternatingSums,
        Identity::Denominators,
        Identity::Characters,
        Identity::Prop3,
        Identity::Lemma2,
        Identity::Lemma4,
        Identity::Lemma5,
        Identity::Theorem6,
        Identity::Corollaries,
        Identity::Theorem8,
        Identity::Theorem15,
        Identity::Lemma10,
        Identity::Corollary12,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Lemma1 => "lemma1",
            Identity::Braid => "braid",
            Identity::AlternatingSums => "eq4-5",
            Identity::Denominators => "eq6-9",
            Identity::Characters => "eq10-13",
            Identity::Prop3 => "prop3",
            Identity::Lemma2 => "lemma2",
            Identity::Lemma4 => "lemma4",
            Identity::Lemma5 => "lemma5",
            Identity::Theorem6 => "theorem6",
            Identity::Corollaries => "eq1-3",
            Identity::Theorem8 => "theorem8",
            Identity::Theorem15 => "theorem15",
            Identity::Lemma10 => "lemma10",
            Identity::Corollary12 => "corollary12",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

/// Parameters of a verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub ty: GroupType,
    pub n: usize,
    pub maxdeg: u32,
    pub bound: u32,
    pub seed: u64,
    pub trials: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            ty: GroupType::A,
            n: 2,
            maxdeg: 4,
            bound: 3,
            seed: DEFAULT_SEED,
            trials: 100,
        }
    }
}

/// Runs one identity. `maxdeg` drives the series checks and the character
/// sizes; `bound` drives the index and monomial windows.
pub fn verify(identity: Identity, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let VerifyConfig {
        ty,
        n,
        maxdeg,
        bound,
        seed,
        trials,
    } = cfg.clone();
    if n == 0 {
        return domain("n must be at least 1");
    }
    match identity {
        Identity::Lemma1 => lemma1_check(ty, n, trials, seed),
        Identity::Braid => braid_check(ty, n, trials, seed),
        Identity::AlternatingSums => alternating_sum_check(ty, n, bound as i32),
        Identity::Denominators => denominator_check(ty, n),
        Identity::Characters => characters_check(ty, n, maxdeg, maxdeg),
        Identity::Prop3 => prop3_check(n, maxdeg),
        Identity::Lemma2 => lemma2_check(n, maxdeg),
        Identity::Lemma4 => lemma4_check(n, maxdeg),
        Identity::Lemma5 => lemma5_check(n, maxdeg),
        Identity::Theorem6 => theorem6_check(ty, n, maxdeg),
        Identity::Corollaries => symmetric_corollaries(n, maxdeg),
        Identity::Theorem8 => adjointness_check(ty, n, trials, seed),
        Identity::Theorem15 => orthogonality_check(ty, n, bound),
        Identity::Lemma10 => support_check(ty, n, bound as i32),
        Identity::Corollary12 => dominant_pairing_check(ty, n, bound as i32),
    }
}
