//! Weyl denominators and the characters of the classical groups.
//!
//! Characters are computed as the quotient of two alternating sums over the
//! Weyl group, by exact division. Type B works on the half-integer lattice
//! (exponent unit 2) and is brought back to integer exponents afterwards.

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result};
use crate::keypoly::key_via_word;
use crate::laurent::{int, ExpVec, LaurentPoly, VarSet};
use crate::weylgroup::{enumerate_group, max_element_word, GroupType, VectorZ};

/// A partition `λ_1 ≥ λ_2 ≥ ⋯ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("{parts:?} is not weakly decreasing"));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.iter().take_while(|&&p| p > 0).count()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The parts as a vector of length `n`, padded with zeros.
    pub fn padded(&self, n: usize) -> Result<VectorZ> {
        if self.length() > n {
            return domain(format!("partition {self} has more than {n} parts"));
        }
        let mut v: VectorZ = self.0.iter().take(n).map(|&p| p as i32).collect();
        v.resize(n, 0);
        Ok(v)
    }

    /// All partitions of size `≤ max_size` with at most `n` parts, each padded to length `n`.
    pub fn all_up_to(n: usize, max_size: u32) -> Vec<Partition> {
        fn rec(n: usize, remaining: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if cur.len() == n {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in 0..=remaining.min(cap) {
                cur.push(p);
                rec(n, remaining - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, max_size, max_size, &mut Vec::new(), &mut out);
        out.sort_by_key(|p| p.size());
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The half-sum of positive roots, in units of `1/unit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoVector {
    pub ty: GroupType,
    pub entries: VectorZ,
    pub unit: u8,
}

pub fn rho(ty: GroupType, n: usize) -> RhoVector {
    let n = n as i32;
    let (entries, unit) = match ty {
        GroupType::A | GroupType::D => ((0..n).rev().collect(), 1),
        GroupType::B => ((0..n).rev().map(|k| 2 * k + 1).collect(), 2),
        GroupType::C | GroupType::BC => ((1..=n).rev().collect(), 1),
    };
    RhoVector { ty, entries, unit }
}

/// Variables used for type `ty`: `x1..xn` (unit 2 for B), plus `beta` for BC.
pub fn character_varset(ty: GroupType, n: usize) -> Arc<VarSet> {
    let base = VarSet::standard(n, false, ty == GroupType::BC);
    if ty == GroupType::B {
        base.with_unit(2).expect("unit 2 is valid")
    } else {
        base
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenominatorForm {
    Sum,
    Product,
}

/// A denominator `numerator · ∏ inverse_factors^{-1}`; only type BC has
/// inverse factors (`1 + β x_i`).
#[derive(Clone, Debug, PartialEq)]
pub struct Denominator {
    pub numerator: LaurentPoly,
    pub inverse_factors: Vec<LaurentPoly>,
}

/// `Σ_w (-1)^{ℓ(w)} x^{v w}` over the group of type `ty`.
pub fn alternating_orbit_sum(ty: GroupType, vars: &Arc<VarSet>, v: &[i32]) -> Result<LaurentPoly> {
    let group = enumerate_group(ty, v.len())?;
    let terms = group.iter().map(|w| {
        let mut e: ExpVec = w.act(v).into_iter().collect();
        e.resize(vars.len(), 0);
        let sign = if w.length() % 2 == 0 { 1 } else { -1 };
        (e, int(sign))
    });
    Ok(LaurentPoly::from_terms(vars, terms))
}

pub fn weyl_denominator(ty: GroupType, n: usize, form: DenominatorForm) -> Result<Denominator> {
    if n == 0 {
        return domain("rank must be positive");
    }
    let vars = character_varset(ty, n);
    let numerator = match form {
        DenominatorForm::Sum => {
            let r = rho(ty, n);
            alternating_orbit_sum(
                if ty == GroupType::BC {
                    GroupType::C
                } else {
                    ty
                },
                &vars,
                &r.entries,
            )?
        }
        DenominatorForm::Product => denominator_product(ty, &vars, n),
    };
    let inverse_factors = if ty == GroupType::BC {
        let beta = vars.len() - 1;
        (0..n)
            .map(|i| &LaurentPoly::one(&vars) + &mono(&vars, &[(i, 1), (beta, 1)], 1))
            .collect()
    } else {
        Vec::new()
    };
    Ok(Denominator {
        numerator,
        inverse_factors,
    })
}

/// Monomial `c · ∏ x_i^{e_i}` with exponents given in whole units.
fn mono(vars: &Arc<VarSet>, exps: &[(usize, i32)], c: i64) -> LaurentPoly {
    let mut e = ExpVec::from_elem(0, vars.len());
    for &(i, k) in exps {
        e[i] += k * vars.unit();
    }
    LaurentPoly::monomial(vars, e, int(c))
}

fn denominator_product(ty: GroupType, vars: &Arc<VarSet>, n: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one(vars);
    for i in 0..n {
        match ty {
            GroupType::B => {
                let mut half = ExpVec::from_elem(0, vars.len());
                half[i] = 1;
                let pos = LaurentPoly::monomial(vars, half.clone(), int(1));
                half[i] = -1;
                acc = &acc * &(&pos - &LaurentPoly::monomial(vars, half, int(1)));
            }
            GroupType::C | GroupType::BC => {
                acc = &acc * &(&mono(vars, &[(i, 1)], 1) - &mono(vars, &[(i, -1)], 1))
            }
            GroupType::A | GroupType::D => {}
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            acc = &acc * &(&mono(vars, &[(i, 1)], 1) - &mono(vars, &[(j, 1)], 1));
            if ty != GroupType::A {
                acc = &acc * &(&LaurentPoly::one(vars) - &mono(vars, &[(i, -1), (j, -1)], 1));
            }
        }
    }
    acc
}

fn check_partition(ty: GroupType, lambda: &Partition, n: usize) -> Result<VectorZ> {
    if ty == GroupType::BC {
        return domain("characters are defined for the types A, B, C and D");
    }
    if ty == GroupType::D && (n < 2 || lambda.length() >= n) {
        return domain(format!(
            "type-D character needs n ≥ 2 and fewer than n parts, got {lambda} at n = {n}"
        ));
    }
    lambda.padded(n)
}

/// The character `s_λ`, `Sp_λ`, `O_λ` of type A, C, B or D, as the quotient of
/// alternating sums.
pub fn character(ty: GroupType, lambda: &Partition, n: usize) -> Result<LaurentPoly> {
    let v = check_partition(ty, lambda, n)?;
    let vars = character_varset(ty, n);
    let r = rho(ty, n);
    let shifted: VectorZ = v
        .iter()
        .zip(&r.entries)
        .map(|(l, p)| l * r.unit as i32 + p)
        .collect();
    let num = alternating_orbit_sum(ty, &vars, &shifted)?;
    let den = alternating_orbit_sum(ty, &vars, &r.entries)?;
    num.div_exact(&den)?.to_unit(1)
}

/// The same character as the image of `x^λ` under the maximal divided difference.
pub fn character_via_divided_differences(
    ty: GroupType,
    lambda: &Partition,
    n: usize,
) -> Result<LaurentPoly> {
    let v = check_partition(ty, lambda, n)?;
    key_via_word(ty, &v, &max_element_word(ty, n)?, false)
}

/// Schur polynomial `s_λ(x_1..x_n)` as a sum over semistandard tableaux.
pub fn schur_oracle(lambda: &Partition, n: usize) -> Result<LaurentPoly> {
    let vars = VarSet::standard(n, false, false);
    let shape: Vec<usize> = lambda.padded(n)?.iter().map(|&p| p as usize).collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut terms = Vec::new();
    fill(&cells, 0, n, &mut grid, &mut terms, vars.len());
    Ok(LaurentPoly::from_terms(&vars, terms))
}

fn fill(
    cells: &[(usize, usize)],
    k: usize,
    n: usize,
    grid: &mut [Vec<usize>],
    out: &mut Vec<(ExpVec, crate::laurent::Coeff)>,
    len: usize,
) {
    if k == cells.len() {
        let mut e = ExpVec::from_elem(0, len);
        for &entry in grid.iter().flatten() {
            e[entry - 1] += 1;
        }
        out.push((e, int(1)));
        return;
    }
    let (r, c) = cells[k];
    let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
    let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
    for val in lo_row.max(lo_col)..=n {
        grid[r][c] = val;
        fill(cells, k + 1, n, grid, out, len);
    }
    grid[r][c] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divdiff::Block;
    use crate::weylgroup::{act_poly, generators, GroupType::*};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn xs(n: usize) -> (Arc<VarSet>, Vec<LaurentPoly>) {
        let vars = VarSet::standard(n, false, false);
        let v = (0..n).map(|i| LaurentPoly::var_at(&vars, i)).collect();
        (vars, v)
    }

    #[test]
    fn denominator_examples() {
        let (vars, x) = xs(2);
        let d = weyl_denominator(A, 2, DenominatorForm::Sum).unwrap();
        assert_eq!(d.numerator, &x[0] - &x[1]);
        let inv12 = LaurentPoly::one(&vars).div_exact(&(&x[0] * &x[1])).unwrap();
        let d = weyl_denominator(D, 2, DenominatorForm::Sum).unwrap();
        assert_eq!(
            d.numerator,
            &(&x[0] - &x[1]) * &(&LaurentPoly::one(&vars) - &inv12)
        );
        let (vars1, x1) = xs(1);
        let d = weyl_denominator(C, 1, DenominatorForm::Sum).unwrap();
        assert_eq!(
            d.numerator,
            &x1[0] - &LaurentPoly::one(&vars1).div_exact(&x1[0]).unwrap()
        );
    }

    #[test]
    fn sum_equals_product() {
        for ty in GroupType::ALL {
            for n in 1..=4 {
                let s = weyl_denominator(ty, n, DenominatorForm::Sum).unwrap();
                let q = weyl_denominator(ty, n, DenominatorForm::Product).unwrap();
                assert_eq!(s, q, "{ty} n={n}");
            }
        }
        assert_eq!(
            weyl_denominator(BC, 2, DenominatorForm::Sum)
                .unwrap()
                .inverse_factors
                .len(),
            2
        );
    }

    #[test]
    fn character_examples() {
        let (vars, x) = xs(2);
        assert_eq!(character(A, &p(&[1, 0]), 2).unwrap(), &x[0] + &x[1]);
        let (vars1, x1) = xs(1);
        let inv = LaurentPoly::one(&vars1).div_exact(&x1[0]).unwrap();
        assert_eq!(character(C, &p(&[1]), 1).unwrap(), &x1[0] + &inv);
        assert_eq!(
            character(B, &p(&[1]), 1).unwrap(),
            &(&x1[0] + &LaurentPoly::one(&vars1)) + &inv
        );
        assert!(character(D, &p(&[1, 1]), 2).is_err());
        assert!(character(A, &p(&[1, 1, 1]), 2).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        let _ = vars;
    }

    #[test]
    fn schur_examples() {
        let (_, x) = xs(2);
        assert_eq!(schur_oracle(&p(&[1, 1]), 2).unwrap(), &x[0] * &x[1]);
        let expect = &(&(&x[0] * &x[0]) + &(&x[0] * &x[1])) + &(&x[1] * &x[1]);
        assert_eq!(schur_oracle(&p(&[2]), 2).unwrap(), expect);
    }

    #[test]
    fn schur_matches_character() {
        for n in 1..=3 {
            for lambda in Partition::all_up_to(n, 6) {
                assert_eq!(
                    schur_oracle(&lambda, n).unwrap(),
                    character(A, &lambda, n).unwrap(),
                    "{lambda}"
                );
            }
        }
    }

    #[test]
    fn divided_difference_route() {
        for ty in [A, B, C, D] {
            for n in 2..=3 {
                for lambda in Partition::all_up_to(n, 3) {
                    if ty == D && lambda.length() >= n {
                        continue;
                    }
                    let direct = character(ty, &lambda, n).unwrap();
                    let via = character_via_divided_differences(ty, &lambda, n).unwrap();
                    assert_eq!(direct, via, "{ty} {lambda}");
                }
            }
        }
    }

    #[test]
    fn characters_are_invariant() {
        for ty in [B, C, D] {
            let n = 3;
            let (vars, _) = xs(n);
            let block: Vec<usize> = (0..n).collect();
            for lambda in Partition::all_up_to(n, 2) {
                if ty == D && lambda.length() >= n {
                    continue;
                }
                let ch = character(ty, &lambda, n).unwrap();
                assert_eq!(ch.vars(), &vars);
                for g in generators(ty, n) {
                    assert_eq!(
                        act_poly(ty, g, &block, &ch).unwrap(),
                        ch,
                        "{ty} {lambda} {g}"
                    );
                }
            }
        }
    }

    #[test]
    fn odd_symplectic_specialization_is_invariant() {
        let n = 2;
        let vars = VarSet::standard(n, false, true);
        let minus_one = LaurentPoly::constant(&vars, int(-1));
        let block = Block::x(&vars).unwrap();
        for lambda in Partition::all_up_to(n, 3) {
            let v = lambda.padded(n).unwrap();
            let k = key_via_word(BC, &v, &max_element_word(BC, n).unwrap(), false).unwrap();
            let spec = k.substitute("beta", &minus_one).unwrap();
            for g in generators(C, n) {
                assert_eq!(
                    act_poly(C, g, &block.vars, &spec).unwrap(),
                    spec,
                    "{lambda} {g}"
                );
            }
        }
    }
}
