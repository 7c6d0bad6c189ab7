//! The acceptance suite: every identity at its stated rank, degree and window,
//! one summary line per criterion.

use std::time::{Duration, Instant};

use keykernels::kernels::{
    lemma2_check, lemma4_check, lemma5_check, prop3_check, symmetric_corollaries, theorem6_check,
};
use keykernels::random::DEFAULT_SEED;
use keykernels::report::VerificationReport;
use keykernels::scalarprod::{
    adjointness_check, dominant_pairing_check, orthogonality_check, support_check,
};
use keykernels::verify::{
    alternating_sum_check, braid_check, characters_check, denominator_check, lemma1_check,
};
use keykernels::{GroupType, Result};

use GroupType::*;

const ALL: [GroupType; 5] = [A, B, C, D, BC];

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Result<Vec<VerificationReport>>,
}

fn each<T: Copy>(
    items: &[T],
    f: impl Fn(T) -> Result<VerificationReport>,
) -> Result<Vec<VerificationReport>> {
    items.iter().map(|&t| f(t)).collect()
}

fn grid(
    types: &[GroupType],
    ranks: &[usize],
    f: impl Fn(GroupType, usize) -> Result<VerificationReport>,
) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for &ty in types {
        for &n in ranks {
            out.push(f(ty, n)?);
        }
    }
    Ok(out)
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "idempotence of both operator families",
            budget: Duration::from_secs(10),
            run: || {
                grid(&ALL, &[2, 3], |ty, n| {
                    lemma1_check(ty, n, 100, DEFAULT_SEED)
                })
            },
        },
        Criterion {
            id: 2,
            name: "braid relations and type-D path independence",
            budget: Duration::from_secs(30),
            run: || {
                let mut out = grid(&ALL, &[3], |ty, n| braid_check(ty, n, 100, DEFAULT_SEED))?;
                out.push(braid_check(D, 4, 100, DEFAULT_SEED)?);
                Ok(out)
            },
        },
        Criterion {
            id: 3,
            name: "Weyl denominators, sum against product",
            budget: Duration::from_secs(30),
            run: || grid(&ALL, &[1, 2, 3, 4], denominator_check),
        },
        Criterion {
            id: 4,
            name: "factored alternating sums on monomials",
            budget: Duration::from_secs(60),
            run: || {
                grid(&[B, C, BC, D], &[2, 3], |ty, n| {
                    alternating_sum_check(ty, n, 2)
                })
            },
        },
        Criterion {
            id: 5,
            name: "characters through the maximal divided difference",
            budget: Duration::from_secs(60),
            run: || {
                grid(&[A, B, C, D], &[2, 3], |ty, n| {
                    characters_check(ty, n, 4, 6)
                })
            },
        },
        Criterion {
            id: 6,
            name: "type-A kernel from the dominant kernel, direct and factored",
            budget: Duration::from_secs(120),
            run: || {
                let mut out = each(&[2, 3], |n| prop3_check(n, 5))?;
                out.extend(each(&[2, 3], |n| lemma2_check(n, 5))?);
                Ok(out)
            },
        },
        Criterion {
            id: 7,
            name: "BC and D kernels from the type-A kernel",
            budget: Duration::from_secs(120),
            run: || {
                let mut out = each(&[2, 3], |n| lemma4_check(n, 4))?;
                out.extend(each(&[2, 3], |n| lemma5_check(n, 4))?);
                Ok(out)
            },
        },
        Criterion {
            id: 8,
            name: "kernels as sums of products of key polynomials",
            budget: Duration::from_secs(300),
            run: || grid(&[A, BC, D], &[2, 3], |ty, n| theorem6_check(ty, n, 5)),
        },
        Criterion {
            id: 9,
            name: "symmetric Cauchy and Littlewood corollaries",
            budget: Duration::from_secs(120),
            run: || Ok(vec![symmetric_corollaries(2, 4)?]),
        },
        Criterion {
            id: 10,
            name: "adjointness of divided differences",
            budget: Duration::from_secs(120),
            run: || {
                grid(&ALL, &[2, 3], |ty, n| {
                    adjointness_check(ty, n, 100, DEFAULT_SEED)
                })
            },
        },
        Criterion {
            id: 11,
            name: "Gram matrices are delta patterns",
            budget: Duration::from_secs(600),
            run: || grid(&ALL, &[2, 3], |ty, n| orthogonality_check(ty, n, 4)),
        },
        Criterion {
            id: 12,
            name: "support and unitriangularity on monomial windows",
            budget: Duration::from_secs(120),
            run: || {
                let mut out = grid(&ALL, &[2], |ty, n| support_check(ty, n, 3))?;
                out.extend(grid(&ALL, &[2], |ty, n| dominant_pairing_check(ty, n, 3))?);
                Ok(out)
            },
        },
    ]
}

fn main() {
    let mut failures = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match &outcome {
            Ok(reports) => {
                let failed: Vec<&VerificationReport> =
                    reports.iter().filter(|r| !r.passed()).collect();
                let detail = match failed.first() {
                    None => format!("{} checks", reports.len()),
                    Some(r) => format!(
                        "{} of {} checks failed, first {} n={}: {}",
                        failed.len(),
                        reports.len(),
                        r.identity,
                        r.n,
                        r.counterexample
                            .as_ref()
                            .map(|v| v.to_string())
                            .unwrap_or_default()
                    ),
                };
                (failed.is_empty(), detail)
            }
            Err(e) => (false, format!("error: {e}")),
        };
        let in_budget = elapsed <= c.budget;
        let status = if ok && in_budget { "PASS" } else { "FAIL" };
        println!(
            "[{status}] criterion {:>2}: {} ({detail}; {:.2}s of {}s)",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        if status == "FAIL" {
            failures.push(c.id);
        }
    }
    if failures.is_empty() {
        println!("acceptance: all {} criteria passed", criteria().len());
    } else {
        eprintln!("acceptance: failed criteria {failures:?}");
        std::process::exit(1);
    }
}
