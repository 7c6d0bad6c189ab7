//! Isobaric divided differences (Demazure operators) and their hatted
//! counterparts `π̂ = π − 1`.
//!
//! Operators act on the right and only touch the variables of a [`Block`]:
//!
//! ```text
//! f π_i    = (x_i f − x_{i+1} f^{s_i}) / (x_i − x_{i+1})          i < n
//! f π_n^C  = (x_n f − x_n^{-1} f^{s_n}) / (x_n − x_n^{-1})
//! f π_n^B  = (x_n f − f^{s_n}) / (x_n − 1)
//! f π_n^BC = ((x_n + β) f − (x_n^{-1} + β) f^{s_n}) / (x_n − x_n^{-1})
//! f π_n^D  = (f − x_{n-1}^{-1} x_n^{-1} f^{τ_n}) / (1 − x_{n-1}^{-1} x_n^{-1})
//! ```
//!
//! Every quotient is computed by exact Laurent division, which is verified by
//! re-multiplication in debug builds.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::laurent::{LaurentPoly, VarSet};
use crate::weylgroup::{act_poly_unchecked, Generator, GroupType};

/// The variables an operator acts on: `vars[k]` is the index of `x_{k+1}`
/// (or `y_{k+1}`) in the polynomial's variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vars: Vec<usize>,
    pub beta: Option<usize>,
}

impl Block {
    /// Collects `{prefix}1, {prefix}2, ...` from the variable set, plus `beta` if present.
    pub fn named(vars: &VarSet, prefix: &str) -> Result<Block> {
        let idx: Vec<usize> = (1..)
            .map_while(|i| vars.index_of(&format!("{prefix}{i}")))
            .collect();
        if idx.is_empty() {
            return domain(format!(
                "no variables named {prefix}1, {prefix}2, ... in [{}]",
                vars.names().join(",")
            ));
        }
        Ok(Block {
            vars: idx,
            beta: vars.index_of("beta"),
        })
    }

    pub fn x(vars: &VarSet) -> Result<Block> {
        Block::named(vars, "x")
    }

    pub fn y(vars: &VarSet) -> Result<Block> {
        Block::named(vars, "y")
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    /// The first `k` variables of the block.
    pub fn prefix(&self, k: usize) -> Block {
        Block {
            vars: self.vars[..k].to_vec(),
            beta: self.beta,
        }
    }
}

/// Which variable block an operator word acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockName {
    X,
    Y,
}

impl BlockName {
    pub fn resolve(self, vars: &VarSet) -> Result<Block> {
        match self {
            BlockName::X => Block::x(vars),
            BlockName::Y => Block::y(vars),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LastKind {
    B,
    C,
    BC,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    /// `π_i`, `1 ≤ i < n`.
    Pi(usize),
    /// The exceptional operator at the last node.
    Last(LastKind),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DividedDifference {
    pub kind: OpKind,
    pub hatted: bool,
}

impl DividedDifference {
    pub fn pi(i: usize) -> Self {
        DividedDifference {
            kind: OpKind::Pi(i),
            hatted: false,
        }
    }

    pub fn pi_hat(i: usize) -> Self {
        DividedDifference {
            kind: OpKind::Pi(i),
            hatted: true,
        }
    }

    pub fn last(kind: LastKind) -> Self {
        DividedDifference {
            kind: OpKind::Last(kind),
            hatted: false,
        }
    }

    pub fn last_hat(kind: LastKind) -> Self {
        DividedDifference {
            kind: OpKind::Last(kind),
            hatted: true,
        }
    }

    pub fn hat(self) -> Self {
        DividedDifference {
            hatted: true,
            ..self
        }
    }

    /// The operator attached to a simple generator of `ty` at rank `n`.
    pub fn for_generator(ty: GroupType, n: usize, g: Generator, hatted: bool) -> Result<Self> {
        let kind = match (ty, g) {
            (_, Generator::S(i)) if i >= 1 && i < n => OpKind::Pi(i),
            (GroupType::B, Generator::S(i)) if i == n => OpKind::Last(LastKind::B),
            (GroupType::C, Generator::S(i)) if i == n => OpKind::Last(LastKind::C),
            (GroupType::BC, Generator::S(i)) if i == n => OpKind::Last(LastKind::BC),
            (GroupType::D, Generator::Tau(i)) if i == n && n >= 2 => OpKind::Last(LastKind::D),
            _ => {
                return domain(format!(
                    "no divided difference for generator {g} in type {ty} at rank {n}"
                ))
            }
        };
        Ok(DividedDifference { kind, hatted })
    }

    /// The exceptional operator of a type, if it has one.
    pub fn last_for(ty: GroupType) -> Option<LastKind> {
        match ty {
            GroupType::A => None,
            GroupType::B => Some(LastKind::B),
            GroupType::C => Some(LastKind::C),
            GroupType::BC => Some(LastKind::BC),
            GroupType::D => Some(LastKind::D),
        }
    }
}

impl fmt::Display for DividedDifference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hat = if self.hatted { "hat" } else { "" };
        match self.kind {
            OpKind::Pi(i) => write!(f, "pi{hat}{i}"),
            OpKind::Last(k) => write!(f, "pi{hat}{k:?}"),
        }
    }
}

impl FromStr for DividedDifference {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad operator {s:?}"));
        let rest = s.strip_prefix("pi").ok_or_else(bad)?;
        let (hatted, rest) = match rest.strip_prefix("hat") {
            Some(r) => (true, r),
            None => (false, rest),
        };
        let kind = match rest {
            "B" => OpKind::Last(LastKind::B),
            "C" => OpKind::Last(LastKind::C),
            "BC" => OpKind::Last(LastKind::BC),
            "D" => OpKind::Last(LastKind::D),
            digits => OpKind::Pi(digits.parse().map_err(|_| bad())?),
        };
        Ok(DividedDifference { kind, hatted })
    }
}

/// An operator word on one block, serialized as e.g. `"y:pi1 pi2 piD"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockWord {
    pub block: BlockName,
    pub ops: Vec<DividedDifference>,
}

impl fmt::Display for BlockWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.block {
            BlockName::X => "x",
            BlockName::Y => "y",
        };
        let ops: Vec<String> = self.ops.iter().map(|o| o.to_string()).collect();
        write!(f, "{prefix}:{}", ops.join(" "))
    }
}

impl FromStr for BlockWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (prefix, ops) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing block prefix in {s:?}")))?;
        let block = match prefix.trim() {
            "x" => BlockName::X,
            "y" => BlockName::Y,
            other => return Err(Error::Parse(format!("unknown block {other:?}"))),
        };
        let ops = ops
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_>>()?;
        Ok(BlockWord { block, ops })
    }
}

fn monomial_power(vars: &Arc<VarSet>, idx: usize, power: i32) -> LaurentPoly {
    let mut e = crate::laurent::ExpVec::from_elem(0, vars.len());
    e[idx] = power * vars.unit();
    LaurentPoly::monomial(vars, e, crate::laurent::int(1))
}

/// `f·op` on the given block.
pub fn apply(op: DividedDifference, block: &Block, f: &LaurentPoly) -> Result<LaurentPoly> {
    let n = block.n();
    let vars = f.vars();
    let var = |k: usize, p: i32| monomial_power(vars, block.vars[k], p);
    let one = LaurentPoly::one(vars);
    let (image, numerator, denominator) = match op.kind {
        OpKind::Pi(i) => {
            if i == 0 || i >= n {
                return domain(format!("π_{i} needs 1 ≤ i < n = {n}"));
            }
            let image = act_poly_unchecked(Generator::S(i), &block.vars, f);
            let (xi, xj) = (var(i - 1, 1), var(i, 1));
            let num = &(&xi * f) - &(&xj * &image);
            (image, num, &xi - &xj)
        }
        OpKind::Last(kind) => {
            if n == 0 {
                return domain("empty block");
            }
            let last = n - 1;
            match kind {
                LastKind::D => {
                    if n < 2 {
                        return domain("π_n^D needs n ≥ 2");
                    }
                    let image = act_poly_unchecked(Generator::Tau(n), &block.vars, f);
                    let m = &var(last - 1, -1) * &var(last, -1);
                    let num = f - &(&m * &image);
                    (image, num, &one - &m)
                }
                _ => {
                    let image = act_poly_unchecked(Generator::S(n), &block.vars, f);
                    let (xn, xn_inv) = (var(last, 1), var(last, -1));
                    match kind {
                        LastKind::C => (
                            image.clone(),
                            &(&xn * f) - &(&xn_inv * &image),
                            &xn - &xn_inv,
                        ),
                        LastKind::B => (image.clone(), &(&xn * f) - &image, &xn - &one),
                        LastKind::BC => {
                            let beta_idx = block.beta.ok_or_else(|| {
                                Error::Domain("π_n^BC needs a beta variable".into())
                            })?;
                            let beta = LaurentPoly::var_at(vars, beta_idx);
                            let num = &(&(&xn + &beta) * f) - &(&(&xn_inv + &beta) * &image);
                            (image, num, &xn - &xn_inv)
                        }
                        LastKind::D => unreachable!(),
                    }
                }
            }
        }
    };
    // Invariant inputs are fixed by every π.
    let q = if &image == f {
        f.clone()
    } else {
        numerator.div_exact(&denominator)?
    };
    Ok(if op.hatted { &q - f } else { q })
}

/// Left-to-right composition: `f·op_1·op_2⋯`.
pub fn apply_word(
    ops: &[DividedDifference],
    block: &Block,
    f: &LaurentPoly,
) -> Result<LaurentPoly> {
    ops.iter()
        .try_fold(f.clone(), |acc, &op| apply(op, block, &acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{int, VarSet};
    use crate::random::{random_laurent, seeded_rng, RandomPolySpec};
    use crate::weylgroup::max_element_word;

    fn setup(n: usize, with_beta: bool) -> (Arc<VarSet>, Block) {
        let vars = VarSet::standard(n, false, with_beta);
        let block = Block::x(&vars).unwrap();
        (vars, block)
    }

    #[test]
    fn small_examples() {
        let (vars, block) = setup(2, false);
        let x1 = LaurentPoly::var_at(&vars, 0);
        let x2 = LaurentPoly::var_at(&vars, 1);
        let one = LaurentPoly::one(&vars);
        assert_eq!(
            apply(DividedDifference::pi(1), &block, &x1).unwrap(),
            &x1 + &x2
        );
        assert_eq!(apply(DividedDifference::pi(1), &block, &one).unwrap(), one);
        assert!(apply(DividedDifference::pi_hat(1), &block, &one)
            .unwrap()
            .is_zero());
        let word: Vec<_> = max_element_word(GroupType::A, 2)
            .unwrap()
            .into_iter()
            .map(|g| DividedDifference::for_generator(GroupType::A, 2, g, false).unwrap())
            .collect();
        assert_eq!(apply_word(&word, &block, &x1).unwrap(), &x1 + &x2);
    }

    #[test]
    fn bad_operators_are_rejected() {
        let (vars, block) = setup(2, false);
        let x1 = LaurentPoly::var_at(&vars, 0);
        assert!(apply(DividedDifference::pi(2), &block, &x1).is_err());
        assert!(apply(DividedDifference::last(LastKind::BC), &block, &x1).is_err());
        let (vars1, block1) = setup(1, false);
        assert!(apply(
            DividedDifference::last(LastKind::D),
            &block1,
            &LaurentPoly::var_at(&vars1, 0)
        )
        .is_err());
        assert!(DividedDifference::for_generator(GroupType::A, 2, Generator::S(2), false).is_err());
    }

    #[test]
    fn operator_words_round_trip() {
        let w: BlockWord = "y:pi1 pihat2 piD pihatBC".parse().unwrap();
        assert_eq!(w.block, BlockName::Y);
        assert_eq!(w.ops[1], DividedDifference::pi_hat(2));
        assert_eq!(w.ops[3], DividedDifference::last_hat(LastKind::BC));
        assert_eq!(w.to_string(), "y:pi1 pihat2 piD pihatBC");
        assert!("z:pi1".parse::<BlockWord>().is_err());
        assert!("x:pj1".parse::<BlockWord>().is_err());
    }

    fn all_ops(n: usize) -> Vec<DividedDifference> {
        let mut ops: Vec<_> = (1..n).map(DividedDifference::pi).collect();
        ops.extend(
            [LastKind::B, LastKind::C, LastKind::BC, LastKind::D].map(DividedDifference::last),
        );
        ops
    }

    #[test]
    fn quadratic_relations() {
        let spec = RandomPolySpec::default();
        let mut rng = seeded_rng(1);
        for n in [2, 3] {
            let (vars, block) = setup(n, true);
            for op in all_ops(n) {
                for _ in 0..20 {
                    let f = random_laurent(&mut rng, &vars, &block.vars, &spec);
                    let once = apply(op, &block, &f).unwrap();
                    assert_eq!(apply(op, &block, &once).unwrap(), once, "{op} on {f}");
                    let hat = op.hat();
                    let h1 = apply(hat, &block, &f).unwrap();
                    assert_eq!(apply(hat, &block, &h1).unwrap(), -&h1, "{hat} on {f}");
                }
            }
        }
    }

    #[test]
    fn commutes_with_invariant_factors() {
        let spec = RandomPolySpec::default();
        let mut rng = seeded_rng(2);
        let (vars, block) = setup(3, true);
        let x = |i| LaurentPoly::var_at(&vars, i);
        let one = LaurentPoly::one(&vars);
        // s_1-invariant, s_3-invariant and τ_3-invariant multipliers.
        let g1 = &(&x(0) * &x(1)) + &(&x(0) + &x(1)) * &x(2);
        let g3 = &(&x(2) + &one.div_exact(&x(2)).unwrap()) * &x(0);
        let gd = &(&x(1) * &x(2)) + &one.div_exact(&(&x(1) * &x(2))).unwrap();
        for _ in 0..20 {
            let f = random_laurent(&mut rng, &vars, &block.vars, &spec);
            for (op, g) in [
                (DividedDifference::pi(1), &g1),
                (DividedDifference::last(LastKind::C), &g3),
                (DividedDifference::last(LastKind::BC), &g3),
                (DividedDifference::last(LastKind::D), &gd),
            ] {
                for op in [op, op.hat()] {
                    let lhs = apply(op, &block, &(g * &f)).unwrap();
                    let rhs = g * &apply(op, &block, &f).unwrap();
                    assert_eq!(lhs, rhs, "{op}");
                }
            }
        }
    }

    #[test]
    fn beta_specializations() {
        let spec = RandomPolySpec::default();
        let mut rng = seeded_rng(3);
        let (vars, block) = setup(2, true);
        let (plain, plain_block) = setup(2, false);
        for _ in 0..30 {
            let f = random_laurent(&mut rng, &vars, &block.vars, &spec);
            let g = f.embed(&plain).unwrap();
            let bc = apply(DividedDifference::last(LastKind::BC), &block, &f).unwrap();
            for (value, kind) in [(0, LastKind::C), (1, LastKind::B)] {
                let at = bc
                    .substitute("beta", &LaurentPoly::constant(&vars, int(value)))
                    .unwrap();
                let expect = apply(DividedDifference::last(kind), &plain_block, &g).unwrap();
                assert_eq!(at.embed(&plain).unwrap(), expect);
            }
        }
    }

    /// Geometric series Σ_{k ≤ order} (a·m)^k with `a` at index `a_idx`.
    fn geometric(vars: &Arc<VarSet>, m: &LaurentPoly, a_idx: usize, order: u32) -> LaurentPoly {
        let am = &LaurentPoly::var_at(vars, a_idx) * m;
        (0..=order).map(|k| am.pow(k)).sum()
    }

    #[test]
    fn elementary_kernel_identities() {
        // Spare variables a, b; n = 3 so that both π_1 and π_2 are exercised.
        let vars = VarSet::new(["x1", "x2", "x3", "a", "b", "beta"], 1).unwrap();
        let block = Block::x(&vars).unwrap();
        let v = |name: &str| LaurentPoly::var(&vars, name).unwrap();
        let one = LaurentPoly::one(&vars);
        let inv = |p: &LaurentPoly| one.div_exact(p).unwrap();
        let (a, b, beta) = (v("a"), v("b"), v("beta"));
        let a_idx = 3;
        let order = 6;
        let trunc = |p: &LaurentPoly| p.truncate_by_degree(&[a_idx], order as i64);
        for i in 1..3 {
            let xi = v(&format!("x{i}"));
            let xj = v(&format!("x{}", i + 1));
            let pi = DividedDifference::pi(i);
            let gi = geometric(&vars, &xi, a_idx, order);
            let gj = geometric(&vars, &xj, a_idx, order);
            // (1 − a x_i)^{-1} π_i = (1 − a x_i)^{-1} (1 − a x_{i+1})^{-1}
            assert_eq!(apply(pi, &block, &gi).unwrap(), trunc(&(&gi * &gj)));
            // (1 − a x_i)^{-1} π̂_i = a x_{i+1} (1 − a x_i)^{-1} (1 − a x_{i+1})^{-1}
            assert_eq!(
                apply(pi.hat(), &block, &gi).unwrap(),
                trunc(&(&(&a * &xj) * &(&gi * &gj)))
            );
            // (1 − a x_{i+1}) π_i = (1 − a / x_i) π_i = 1
            assert_eq!(apply(pi, &block, &(&one - &(&a * &xj))).unwrap(), one);
            assert_eq!(apply(pi, &block, &(&one - &(&a * &inv(&xi)))).unwrap(), one);
            // (1 − a x_{i+1})(1 − b / x_i) π_i = 1 − ab
            let f = &(&one - &(&a * &xj)) * &(&one - &(&b * &inv(&xi)));
            assert_eq!(apply(pi, &block, &f).unwrap(), &one - &(&a * &b));
        }
        let (x2, x3) = (v("x2"), v("x3"));
        // (1 − b / x_n) π_n^BC = 1 + βb
        let f = &one - &(&b * &inv(&x3));
        assert_eq!(
            apply(DividedDifference::last(LastKind::BC), &block, &f).unwrap(),
            &one + &(&beta * &b)
        );
        // (1 − b / x_{n−1})(1 − b / x_n) π_n^D = 1 − b²
        let f = &(&one - &(&b * &inv(&x2))) * &(&one - &(&b * &inv(&x3)));
        assert_eq!(
            apply(DividedDifference::last(LastKind::D), &block, &f).unwrap(),
            &one - &(&b * &b)
        );
    }
}
