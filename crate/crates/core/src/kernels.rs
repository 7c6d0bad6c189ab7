//! Truncated expansions of the non-symmetric Cauchy kernels and the operator
//! pipelines that relate them to key polynomials.
//!
//! Every kernel is a product of geometric factors `(1 - m)^{-1}`, with `m` a
//! monomial of positive degree in `x`, and polynomial numerators. Expansions
//! are graded by total `x`-degree only; `y` exponents stay exact. All
//! operators used here (divided differences in `x` or in `y`, multiplication by
//! `x`-homogeneous factors) respect that grading, so every identity can be
//! checked slice by slice.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::characters::{character, schur_oracle, Partition};
use crate::divdiff::{apply_word, Block, BlockName, DividedDifference, LastKind, OpKind};
use crate::error::{domain, Result};
use crate::exec::Exec;
use crate::keypoly::{enumerate_indices, key, IndexConstraint, KeyIndex};
use crate::laurent::{coeff_to_string, int, ExpVec, LaurentPoly, VarSet};
use crate::report::VerificationReport;
use crate::weylgroup::{enumerate_group, max_element_word, GroupType};

/// Variables of a kernel: `x1..xn, y1..yn`, plus `beta` when requested.
pub fn kernel_varset(n: usize, with_beta: bool) -> Arc<VarSet> {
    VarSet::standard(n, true, with_beta)
}

/// A series truncated at total `x`-degree `maxdeg`; `slices[d]` holds the
/// terms of `x`-degree exactly `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    vars: Arc<VarSet>,
    x: Vec<usize>,
    slices: Vec<LaurentPoly>,
}

/// First disagreement between two series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMismatch {
    pub slice: usize,
    pub exponent: Vec<i32>,
    pub left: String,
    pub right: String,
}

impl SeriesMismatch {
    pub fn to_json(&self, vars: &VarSet) -> Value {
        json!({
            "slice": self.slice,
            "vars": vars.names(),
            "exponent": self.exponent,
            "left": self.left,
            "right": self.right,
        })
    }
}

impl TruncatedSeries {
    /// The constant series `1`.
    pub fn one(vars: &Arc<VarSet>, maxdeg: u32) -> Result<Self> {
        Self::from_poly(&LaurentPoly::one(vars), maxdeg)
    }

    /// Splits a polynomial by `x`-degree, dropping terms of degree above
    /// `maxdeg`. Terms of negative `x`-degree are rejected.
    pub fn from_poly(p: &LaurentPoly, maxdeg: u32) -> Result<Self> {
        let vars = p.vars().clone();
        let x = Block::x(&vars)?.vars;
        let mut buckets: Vec<Vec<(ExpVec, _)>> = vec![Vec::new(); maxdeg as usize + 1];
        for (e, c) in p.terms() {
            let d = LaurentPoly::degree_of(e, &x);
            if d < 0 {
                return domain(format!("term of negative x-degree {d} in a series"));
            }
            if let Some(b) = buckets.get_mut(d as usize) {
                b.push((e.clone(), c.clone()));
            }
        }
        let slices = buckets
            .into_iter()
            .map(|t| LaurentPoly::from_terms(&vars, t))
            .collect();
        Ok(TruncatedSeries { vars, x, slices })
    }

    fn with_slices(&self, slices: Vec<LaurentPoly>) -> Self {
        TruncatedSeries {
            vars: self.vars.clone(),
            x: self.x.clone(),
            slices,
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn maxdeg(&self) -> u32 {
        (self.slices.len() - 1) as u32
    }

    pub fn slices(&self) -> &[LaurentPoly] {
        &self.slices
    }

    pub fn slice(&self, d: usize) -> &LaurentPoly {
        &self.slices[d]
    }

    /// Sum of all slices.
    pub fn to_poly(&self) -> LaurentPoly {
        self.slices
            .iter()
            .fold(LaurentPoly::zero(&self.vars), |acc, s| &acc + s)
    }

    fn x_degree(&self, e: &[i32]) -> i32 {
        LaurentPoly::degree_of(e, &self.x)
    }

    /// Multiplies by `(1 - m)^{-1}` for a monomial `m` of positive `x`-degree.
    pub fn mul_geometric(&self, m: &[i32]) -> Result<Self> {
        let k = self.x_degree(m);
        if k <= 0 {
            return domain("geometric factor needs positive x-degree");
        }
        let k = k as usize;
        let one = int(1);
        let mut out: Vec<LaurentPoly> = Vec::with_capacity(self.slices.len());
        for d in 0..self.slices.len() {
            let s = if d >= k {
                &self.slices[d] + &out[d - k].mul_monomial(m, &one)
            } else {
                self.slices[d].clone()
            };
            out.push(s);
        }
        Ok(self.with_slices(out))
    }

    /// Multiplies by a polynomial whose terms have nonnegative `x`-degree.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Result<Self> {
        self.mul(&TruncatedSeries::from_poly(
            &p.embed(&self.vars)?,
            self.maxdeg(),
        )?)
    }

    /// Cauchy product, truncated at the smaller `maxdeg`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let top = self.slices.len().min(other.slices.len());
        let mut out = Vec::with_capacity(top);
        for d in 0..top {
            let mut acc = LaurentPoly::zero(&self.vars);
            for j in 0..=d {
                if self.slices[j].is_zero() || other.slices[d - j].is_zero() {
                    continue;
                }
                acc = &acc + &self.slices[j].checked_mul(&other.slices[d - j])?;
            }
            out.push(acc);
        }
        Ok(self.with_slices(out))
    }

    /// Applies `f` to each slice. `f` must preserve `x`-degree.
    pub fn map_slices<F>(&self, exec: Exec, f: F) -> Result<Self>
    where
        F: Fn(&LaurentPoly) -> Result<LaurentPoly> + Sync + Send,
    {
        Ok(self.with_slices(exec.try_map(&self.slices, f)?))
    }

    /// Applies an operator word on the `x` or `y` block to every slice.
    pub fn apply_word(
        &self,
        exec: Exec,
        block: &Block,
        word: &[DividedDifference],
    ) -> Result<Self> {
        self.map_slices(exec, |s| apply_word(word, block, s))
    }

    /// Sets the variable at `idx` to zero.
    pub fn set_zero(&self, idx: usize) -> Self {
        self.with_slices(
            self.slices
                .iter()
                .map(|s| s.filter_terms(|e, _| e[idx] == 0))
                .collect(),
        )
    }

    pub fn substitute(&self, var: &str, value: &LaurentPoly) -> Result<Self> {
        let slices = self
            .slices
            .iter()
            .map(|s| s.substitute(var, value))
            .collect::<Result<Vec<_>>>()?;
        TruncatedSeries::from_poly(&self.with_slices(slices).to_poly(), self.maxdeg())
    }

    /// Re-expresses every slice over `target` (matching variables by name).
    pub fn embed(&self, target: &Arc<VarSet>) -> Result<Self> {
        let slices = self
            .slices
            .iter()
            .map(|s| s.embed(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries {
            vars: target.clone(),
            x: Block::x(target)?.vars,
            slices,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let slices = self
            .slices
            .iter()
            .zip(&other.slices)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.with_slices(slices))
    }

    /// First slice and exponent where the series differ, if any.
    pub fn first_mismatch(&self, other: &Self) -> Option<SeriesMismatch> {
        if self.slices.len() != other.slices.len() {
            return Some(SeriesMismatch {
                slice: self.slices.len().min(other.slices.len()),
                exponent: Vec::new(),
                left: format!("maxdeg {}", self.maxdeg()),
                right: format!("maxdeg {}", other.maxdeg()),
            });
        }
        for (d, (a, b)) in self.slices.iter().zip(&other.slices).enumerate() {
            if a == b {
                continue;
            }
            let diff = a.checked_sub(b).ok()?;
            let (e, _) = diff.terms().first()?;
            return Some(SeriesMismatch {
                slice: d,
                exponent: e.to_vec(),
                left: coeff_to_string(&a.coeff(e)),
                right: coeff_to_string(&b.coeff(e)),
            });
        }
        None
    }

    fn compare(&self, other: &Self) -> Option<Value> {
        self.first_mismatch(other).map(|m| m.to_json(&self.vars))
    }
}

/// Which kernel to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelKind {
    /// `∏_{i+j ≤ n+1} (1 - x_i y_j)^{-1}`.
    A,
    /// `∏_{i+j ≤ n} (1 - x_i y_j)^{-1}`, over the same `n`-variable alphabets.
    AShort,
    B,
    C,
    D,
    /// Carries `beta` as a variable.
    BC,
    /// `∏_{i,j} (1 - x_i y_j)^{-1}`.
    SymmetricA,
    /// `∏_{i<j} (1 - x_i x_j) / ∏_{i,j} (1 - x_i y_j)(1 - x_i / y_j)`.
    SymmetricC,
    /// As [`SymmetricC`](Self::SymmetricC) with `i ≤ j` in the numerator.
    SymmetricD,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub n: usize,
}

impl KernelSpec {
    pub fn new(kind: KernelKind, n: usize) -> Self {
        KernelSpec { kind, n }
    }

    /// The non-symmetric kernel of a type.
    pub fn for_type(ty: GroupType, n: usize) -> Self {
        let kind = match ty {
            GroupType::A => KernelKind::A,
            GroupType::B => KernelKind::B,
            GroupType::C => KernelKind::C,
            GroupType::D => KernelKind::D,
            GroupType::BC => KernelKind::BC,
        };
        KernelSpec { kind, n }
    }

    pub fn varset(&self) -> Arc<VarSet> {
        kernel_varset(self.n, self.kind == KernelKind::BC)
    }

    /// Geometric denominators (as exponent vectors) and polynomial numerators.
    fn factors(&self, vars: &Arc<VarSet>) -> (Vec<ExpVec>, Vec<LaurentPoly>) {
        use KernelKind::*;
        let n = self.n;
        let len = vars.len();
        let (x, y) = (|i: usize| i, |j: usize| n + j);
        let mono = |pairs: &[(usize, i32)]| {
            let mut e = ExpVec::from_elem(0, len);
            for &(i, k) in pairs {
                e[i] += k;
            }
            e
        };
        let one = LaurentPoly::one(vars);
        let poly =
            |pairs: &[(usize, i32)], c: i64| LaurentPoly::monomial(vars, mono(pairs), int(c));
        let mut geo = Vec::new();
        let mut num = Vec::new();
        let xy_bound = match self.kind {
            A => Some(n + 1),
            AShort => Some(n),
            _ => None,
        };
        for i in 0..n {
            for j in 0..n {
                if xy_bound.is_none_or(|b| i + j + 2 <= b) {
                    geo.push(mono(&[(x(i), 1), (y(j), 1)]));
                }
            }
        }
        match self.kind {
            A | AShort | SymmetricA => {}
            B | C | D | BC | SymmetricC | SymmetricD => {
                let symmetric = matches!(self.kind, SymmetricC | SymmetricD);
                for i in 0..n {
                    for j in 0..n {
                        if symmetric || i <= j {
                            geo.push(mono(&[(x(i), 1), (y(j), -1)]));
                        }
                    }
                }
                let diagonal = matches!(self.kind, D | SymmetricD);
                for i in 0..n {
                    for j in i..n {
                        if i < j || diagonal {
                            num.push(&one - &poly(&[(x(i), 1), (x(j), 1)], 1));
                        }
                    }
                }
                if self.kind == B {
                    num.extend((0..n).map(|i| &one + &poly(&[(x(i), 1)], 1)));
                }
                if self.kind == BC {
                    let beta = 2 * n;
                    num.extend((0..n).map(|i| &one + &poly(&[(x(i), 1), (beta, 1)], 1)));
                }
            }
        }
        (geo, num)
    }
}

/// Expansion of a kernel up to total `x`-degree `maxdeg`.
pub fn kernel_series(spec: KernelSpec, maxdeg: u32) -> Result<TruncatedSeries> {
    if spec.n == 0 {
        return domain("rank must be positive");
    }
    let vars = spec.varset();
    let (geo, num) = spec.factors(&vars);
    let mut s = TruncatedSeries::one(&vars, maxdeg)?;
    for m in &geo {
        s = s.mul_geometric(m)?;
    }
    for p in &num {
        s = s.mul_poly(p)?;
    }
    Ok(s)
}

/// `∏_{k=1}^n (1 - x_1⋯x_k y_1⋯y_k)^{-1}`, the generating function of the
/// dominant monomials `x^λ y^λ`.
pub fn dominant_series(n: usize, maxdeg: u32) -> Result<TruncatedSeries> {
    let vars = kernel_varset(n, false);
    let mut s = TruncatedSeries::one(&vars, maxdeg)?;
    for k in 1..=n {
        let mut e = ExpVec::from_elem(0, vars.len());
        for i in 0..k {
            e[i] = 1;
            e[n + i] = 1;
        }
        s = s.mul_geometric(&e)?;
    }
    Ok(s)
}

/// Applies an operator word on the `y` block to every slice.
pub fn apply_y_operator_series(
    s: &TruncatedSeries,
    word: &[DividedDifference],
) -> Result<TruncatedSeries> {
    s.apply_word(Exec::default(), &Block::y(s.vars())?, word)
}

/// Product `π̂^x_{u} π^y_{w}` of an `x`-word and a `y`-word (they commute).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedWord {
    pub x: Vec<DividedDifference>,
    pub y: Vec<DividedDifference>,
}

impl MixedWord {
    pub fn apply(&self, exec: Exec, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        let (bx, by) = (Block::x(s.vars())?, Block::y(s.vars())?);
        s.map_slices(exec, |p| {
            apply_word(&self.y, &by, &apply_word(&self.x, &bx, p)?)
        })
    }
}

impl fmt::Display for MixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .x
            .iter()
            .map(|op| format!("{op}^x"))
            .chain(self.y.iter().map(|op| format!("{op}^y")))
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// A formal sum of mixed words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSum(pub Vec<MixedWord>);

impl OperatorSum {
    pub fn apply(&self, exec: Exec, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        let images = exec.try_map(&self.0, |w| w.apply(Exec::Sequential, s))?;
        let zero = s.map_slices(Exec::Sequential, |p| Ok(LaurentPoly::zero(p.vars())))?;
        images.iter().try_fold(zero, |acc, t| acc.add(t))
    }
}

impl fmt::Display for OperatorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `Ξ_n = Σ_{σ∈S_n} π̂^x_σ π^y_{σω}`, in direct form and as the product of the
/// partial sums `Σ_{i=0}^{k-1} π̂^x_{[k-1:i]} π^y_{[k-1:k-1-i]}`, `k = 2..n`.
#[derive(Clone, Debug)]
pub struct XiOperator {
    pub n: usize,
    pub direct: OperatorSum,
    pub factors: Vec<OperatorSum>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiForm {
    Direct,
    Factored,
}

/// `π_{[k:i]} = π_k π_{k-1} ⋯ π_{k-i+1}`.
fn descending(k: usize, i: usize, hatted: bool) -> Vec<DividedDifference> {
    (0..i)
        .map(|t| DividedDifference {
            kind: OpKind::Pi(k - t),
            hatted,
        })
        .collect()
}

pub fn xi_operator(n: usize) -> Result<XiOperator> {
    if n == 0 {
        return domain("Ξ_n needs n ≥ 1");
    }
    let group = enumerate_group(GroupType::A, n)?;
    let word_of = |image: &[i32]| {
        group
            .iter()
            .find(|g| g.image == image)
            .map(|g| g.word.clone())
    };
    let to_ops = |word: &[crate::weylgroup::Generator], hatted: bool| {
        word.iter()
            .map(|&g| DividedDifference::for_generator(GroupType::A, n, g, hatted))
            .collect::<Result<Vec<_>>>()
    };
    let mut direct = Vec::with_capacity(group.len());
    for sigma in &group {
        let reversed: Vec<i32> = sigma.image.iter().rev().copied().collect();
        let complement = word_of(&reversed).expect("reversal stays in the group");
        direct.push(MixedWord {
            x: to_ops(&sigma.word, true)?,
            y: to_ops(&complement, false)?,
        });
    }
    let factors = (2..=n)
        .map(|k| {
            OperatorSum(
                (0..k)
                    .map(|i| MixedWord {
                        x: descending(k - 1, i, true),
                        y: descending(k - 1, k - 1 - i, false),
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(XiOperator {
        n,
        direct: OperatorSum(direct),
        factors,
    })
}

impl XiOperator {
    pub fn apply(&self, exec: Exec, form: XiForm, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        match form {
            XiForm::Direct => self.direct.apply(exec, s),
            XiForm::Factored => self
                .factors
                .iter()
                .try_fold(s.clone(), |acc, f| f.apply(exec, &acc)),
        }
    }
}

/// `Φ^{BC} = ∏_{k=1}^n (π_n^{BC} π_{n-1} ⋯ π_k)` or
/// `Φ_n^D = (Φ_{n-1}^D)^+ π_1 ⋯ π_{n-1} π_n^D`, as operator words on `y`.
pub fn phi_words(ty: GroupType, n: usize) -> Result<Vec<DividedDifference>> {
    match ty {
        GroupType::BC => {
            if n == 0 {
                return domain("Φ^BC needs n ≥ 1");
            }
            let mut word = Vec::new();
            for k in 1..=n {
                word.push(DividedDifference::last(LastKind::BC));
                word.extend((k..n).rev().map(DividedDifference::pi));
            }
            Ok(word)
        }
        GroupType::D => {
            if n < 2 {
                return domain("Φ^D needs n ≥ 2");
            }
            let mut word = vec![
                DividedDifference::pi(1),
                DividedDifference::last(LastKind::D),
            ];
            for m in 3..=n {
                let mut next: Vec<DividedDifference> = word
                    .iter()
                    .map(|op| match op.kind {
                        OpKind::Pi(i) => DividedDifference {
                            kind: OpKind::Pi(i + 1),
                            ..*op
                        },
                        OpKind::Last(_) => *op,
                    })
                    .collect();
                next.extend((1..m).map(DividedDifference::pi));
                next.push(DividedDifference::last(LastKind::D));
                word = next;
            }
            Ok(word)
        }
        _ => domain(format!("Φ is defined for the types BC and D, not {ty}")),
    }
}

/// Moves a polynomial over `x1..xn[,beta]` into the kernel variables, sending
/// `x_i` to `x_i` or to `y_i`.
fn into_kernel_vars(p: &LaurentPoly, vars: &Arc<VarSet>, block: BlockName) -> Result<LaurentPoly> {
    match block {
        BlockName::X => p.embed(vars),
        BlockName::Y => p.rename_into(vars, |name| match name.strip_prefix('x') {
            Some(rest) => format!("y{rest}"),
            None => name.to_string(),
        }),
    }
}

/// `Σ K̂_v(x) K_{vω}(y)` (A), `Σ K̂_v(x) K^{BC}_{-v}(y)` (BC) or
/// `Σ_{v_n = 0} K̂_v(x) K^D_{-v}(y)` (D), over `v ∈ ℕ^n` with `|v| ≤ maxdeg`.
pub fn theorem6_rhs(ty: GroupType, n: usize, maxdeg: u32) -> Result<TruncatedSeries> {
    theorem6_rhs_with(Exec::default(), ty, n, maxdeg)
}

pub fn theorem6_rhs_with(
    exec: Exec,
    ty: GroupType,
    n: usize,
    maxdeg: u32,
) -> Result<TruncatedSeries> {
    let constraint = match ty {
        GroupType::A | GroupType::BC => IndexConstraint::Natural,
        GroupType::D => IndexConstraint::NaturalLastZero,
        _ => {
            return domain(format!(
                "the key expansion is stated for A, BC and D, not {ty}"
            ))
        }
    };
    if ty == GroupType::D && n < 2 {
        return domain("type D needs n ≥ 2");
    }
    let vars = kernel_varset(n, ty == GroupType::BC);
    let indices = enumerate_indices(ty, n, maxdeg, constraint);
    let terms = exec.try_map(&indices, |idx| {
        let hat = key(&idx.with_hat(true))?;
        let w: Vec<i32> = match ty {
            GroupType::A => idx.v.iter().rev().copied().collect(),
            _ => idx.v.iter().map(|a| -a).collect(),
        };
        let k = key(&KeyIndex::new(ty, w, false)?)?;
        let product = into_kernel_vars(&hat, &vars, BlockName::X)?
            .checked_mul(&into_kernel_vars(&k, &vars, BlockName::Y)?)?;
        Ok::<_, crate::Error>((idx.v.iter().sum::<i32>() as usize, product))
    })?;
    let mut slices = vec![LaurentPoly::zero(&vars); maxdeg as usize + 1];
    for (d, p) in terms {
        slices[d] = &slices[d] + &p;
    }
    Ok(TruncatedSeries {
        x: Block::x(&vars)?.vars,
        vars,
        slices,
    })
}

fn last_x(vars: &VarSet, n: usize) -> Result<usize> {
    vars.require(&format!("x{n}"))
}

/// Both sides of the key expansion of the kernel of type `ty`; for type D
/// `x_n` is set to zero on both sides.
pub fn theorem6_sides(
    ty: GroupType,
    n: usize,
    maxdeg: u32,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let lhs = kernel_series(KernelSpec::for_type(ty, n), maxdeg)?;
    let rhs = theorem6_rhs(ty, n, maxdeg)?;
    if ty == GroupType::D {
        let xn = last_x(lhs.vars(), n)?;
        Ok((lhs.set_zero(xn), rhs.set_zero(xn)))
    } else {
        Ok((lhs, rhs))
    }
}

pub fn theorem6_check(ty: GroupType, n: usize, maxdeg: u32) -> Result<VerificationReport> {
    let (lhs, rhs) = theorem6_sides(ty, n, maxdeg)?;
    Ok(VerificationReport::new(
        format!("theorem6:{ty}"),
        n,
        maxdeg,
        lhs.compare(&rhs),
    ))
}

/// Generating function of dominant monomials, pushed through `Ξ_n`, against
/// the type-A kernel; both forms of `Ξ_n` are checked.
pub fn prop3_check(n: usize, maxdeg: u32) -> Result<VerificationReport> {
    let xi = xi_operator(n)?;
    let dom = dominant_series(n, maxdeg)?;
    let target = kernel_series(KernelSpec::new(KernelKind::A, n), maxdeg)?;
    let mut ce = None;
    for form in [XiForm::Direct, XiForm::Factored] {
        let image = xi.apply(Exec::default(), form, &dom)?;
        if let Some(m) = image.compare(&target) {
            ce = Some(json!({ "form": format!("{form:?}").to_lowercase(), "mismatch": m }));
            break;
        }
    }
    Ok(VerificationReport::new("prop3", n, maxdeg, ce))
}

/// Direct and factored `Ξ_n` agree on the dominant series.
pub fn lemma2_check(n: usize, maxdeg: u32) -> Result<VerificationReport> {
    let xi = xi_operator(n)?;
    let dom = dominant_series(n, maxdeg)?;
    let direct = xi.apply(Exec::default(), XiForm::Direct, &dom)?;
    let factored = xi.apply(Exec::default(), XiForm::Factored, &dom)?;
    Ok(VerificationReport::new(
        "lemma2",
        n,
        maxdeg,
        direct.compare(&factored),
    ))
}

/// `Ω^A Φ^{BC} = Ω^{BC}` with `beta` symbolic.
pub fn lemma4_check(n: usize, maxdeg: u32) -> Result<VerificationReport> {
    let target = kernel_series(KernelSpec::new(KernelKind::BC, n), maxdeg)?;
    let start = kernel_series(KernelSpec::new(KernelKind::A, n), maxdeg)?.embed(target.vars())?;
    let image = apply_y_operator_series(&start, &phi_words(GroupType::BC, n)?)?;
    Ok(VerificationReport::new(
        "lemma4",
        n,
        maxdeg,
        image.compare(&target),
    ))
}

/// `Ω^A_{n-1} Φ_n^D = Ω^D`, compared with `x_n = 0` (the left side does not
/// involve `x_n`).
pub fn lemma5_check(n: usize, maxdeg: u32) -> Result<VerificationReport> {
    let start = kernel_series(KernelSpec::new(KernelKind::AShort, n), maxdeg)?;
    let image = apply_y_operator_series(&start, &phi_words(GroupType::D, n)?)?;
    let target = kernel_series(KernelSpec::new(KernelKind::D, n), maxdeg)?;
    let xn = last_x(target.vars(), n)?;
    Ok(VerificationReport::new(
        "lemma5",
        n,
        maxdeg,
        image.compare(&target.set_zero(xn)),
    ))
}

/// The maximal type-A divided difference on `x_1..x_k`.
fn pi_omega(k: usize) -> Result<Vec<DividedDifference>> {
    max_element_word(GroupType::A, k)?
        .into_iter()
        .map(|g| DividedDifference::for_generator(GroupType::A, k, g, false))
        .collect()
}

fn apply_pi_omega(s: &TruncatedSeries, k: usize) -> Result<TruncatedSeries> {
    let block = Block::x(s.vars())?.prefix(k);
    s.apply_word(Exec::default(), &block, &pi_omega(k)?)
}

/// `Σ_λ s_λ(x_1..x_k) χ_λ(y)` over partitions with at most `k` parts and
/// `|λ| ≤ maxdeg`, where `χ` is the character of type `ty` in `n` variables.
fn character_sum(
    vars: &Arc<VarSet>,
    ty: GroupType,
    k: usize,
    n: usize,
    maxdeg: u32,
) -> Result<TruncatedSeries> {
    let mut total = LaurentPoly::zero(vars);
    for lambda in Partition::all_up_to(k, maxdeg) {
        let mut parts = lambda.parts().to_vec();
        parts.resize(n, 0);
        let wide = Partition::new(parts)?;
        let sx = into_kernel_vars(&schur_oracle(&lambda, k)?, vars, BlockName::X)?;
        let chi = into_kernel_vars(&character(ty, &wide, n)?, vars, BlockName::Y)?;
        total = &total + &(&sx * &chi);
    }
    TruncatedSeries::from_poly(&total, maxdeg)
}

/// `π_ω^x` applied to both sides of the key expansions, against the symmetric
/// kernels and their character expansions; plus `K̂_v π_ω = 0` for
/// non-dominant `v` and `K̂_λ π_ω = s_λ`.
pub fn symmetric_corollaries(n: usize, maxdeg: u32) -> Result<VerificationReport> {
    let ce = corollary_counterexample(n, maxdeg)?;
    Ok(VerificationReport::new("eq1-3", n, maxdeg, ce))
}

fn corollary_counterexample(n: usize, maxdeg: u32) -> Result<Option<Value>> {
    let tagged = |case: &str, m: Option<Value>| m.map(|m| json!({ "case": case, "mismatch": m }));

    // Cauchy
    let vars = kernel_varset(n, false);
    let full = kernel_series(KernelSpec::new(KernelKind::SymmetricA, n), maxdeg)?;
    let chars = character_sum(&vars, GroupType::A, n, n, maxdeg)?;
    let lhs = apply_pi_omega(
        &kernel_series(KernelSpec::new(KernelKind::A, n), maxdeg)?,
        n,
    )?;
    let rhs = apply_pi_omega(&theorem6_rhs(GroupType::A, n, maxdeg)?, n)?;
    for (case, a, b) in [
        ("A:kernel", &lhs, &full),
        ("A:characters", &full, &chars),
        ("A:keys", &rhs, &chars),
    ] {
        if let Some(m) = tagged(case, a.compare(b)) {
            return Ok(Some(m));
        }
    }

    // Symplectic, through the interpolating kernel at beta = 0
    let full = kernel_series(KernelSpec::new(KernelKind::SymmetricC, n), maxdeg)?;
    let chars = character_sum(&vars, GroupType::C, n, n, maxdeg)?;
    let bc = kernel_varset(n, true);
    let zero = LaurentPoly::zero(&bc);
    let lhs = apply_pi_omega(
        &kernel_series(KernelSpec::new(KernelKind::BC, n), maxdeg)?,
        n,
    )?;
    let rhs = apply_pi_omega(&theorem6_rhs(GroupType::BC, n, maxdeg)?, n)?;
    let beta_factor = (0..n).fold(LaurentPoly::one(&bc), |acc, i| {
        let mut e = ExpVec::from_elem(0, bc.len());
        e[i] = 1;
        e[2 * n] = 1;
        &acc * &(&LaurentPoly::one(&bc) + &LaurentPoly::monomial(&bc, e, int(1)))
    });
    let full_beta = full.embed(&bc)?.mul_poly(&beta_factor)?;
    if let Some(m) = tagged("BC:kernel", lhs.compare(&full_beta)) {
        return Ok(Some(m));
    }
    let at_zero = |s: &TruncatedSeries| s.substitute("beta", &zero).and_then(|t| t.embed(&vars));
    for (case, a, b) in [
        ("C:kernel", &at_zero(&lhs)?, &full),
        ("C:characters", &full, &chars),
        ("C:keys", &at_zero(&rhs)?, &chars),
    ] {
        if let Some(m) = tagged(case, a.compare(b)) {
            return Ok(Some(m));
        }
    }

    // Orthogonal, with x_n = 0
    if n >= 2 {
        let xn = last_x(&vars, n)?;
        let full = kernel_series(KernelSpec::new(KernelKind::SymmetricD, n), maxdeg)?.set_zero(xn);
        let chars = character_sum(&vars, GroupType::D, n - 1, n, maxdeg)?;
        let lhs = apply_pi_omega(
            &kernel_series(KernelSpec::new(KernelKind::D, n), maxdeg)?.set_zero(xn),
            n - 1,
        )?;
        let rhs = apply_pi_omega(&theorem6_rhs(GroupType::D, n, maxdeg)?.set_zero(xn), n - 1)?;
        for (case, a, b) in [
            ("D:kernel", &lhs, &full),
            ("D:characters", &full, &chars),
            ("D:keys", &rhs, &chars),
        ] {
            if let Some(m) = tagged(case, a.compare(b)) {
                return Ok(Some(m));
            }
        }
    }

    // Only dominant hatted keys survive the maximal divided difference.
    let word = pi_omega(n)?;
    for idx in enumerate_indices(GroupType::A, n, maxdeg.min(3), IndexConstraint::Natural) {
        let hat = key(&idx.with_hat(true))?;
        let image = apply_word(&word, &Block::x(hat.vars())?, &hat)?;
        let dominant = idx.v.windows(2).all(|w| w[0] >= w[1]);
        let expect = if dominant {
            schur_oracle(
                &Partition::new(idx.v.iter().map(|&a| a as u32).collect())?,
                n,
            )?
        } else {
            LaurentPoly::zero(hat.vars())
        };
        if image != expect {
            return Ok(Some(
                json!({ "case": "annihilation", "index": idx.to_string(), "image": image.pretty() }),
            ));
        }
    }
    Ok(None)
}
