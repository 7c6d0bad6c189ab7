//! Constant-term scalar products, dominance order, and the adjointness and
//! orthogonality checks built on them.
//!
//! For the types B, C, D the product is `CT(f g x^ρ Δ)`; type BC adds the
//! factors `(1 + β x_i)^{-1}`, expanded as series in `β x_i`; type A pairs
//! `f(x_1..x_n)` with `g(x_n^{-1}..x_1^{-1})` against `∏_{i<j} (1 - x_i/x_j)`.
//! Values are returned as polynomials over the single variable `beta`
//! (constants for every type but BC).
//!
//! The constant term of `x^ρ Δ` is the sign `(-1)^{ℓ(w_0)}` of the longest
//! element, which is `(-1)^n` for B, C and BC. Products of those types are
//! multiplied by that sign so that `(1, 1) = 1` at every rank.

use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::{rho, weyl_denominator, DenominatorForm};
use crate::divdiff::{apply, Block, DividedDifference};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::keypoly::{enumerate_indices, key, key_varset, IndexConstraint, KeyIndex};
use crate::laurent::{coeff_to_string, int, ExpVec, LaurentPoly, VarSet};
use crate::random::{random_laurent, seeded_rng, RandomPolySpec};
use crate::report::VerificationReport;
use crate::weylgroup::{generators, GroupType, VectorZ};

/// `u ≤ v` in dominance order: every partial sum of `u` is at most the
/// corresponding partial sum of `v`.
pub fn dominance_leq(u: &[i32], v: &[i32]) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::Domain(format!(
            "dominance comparison of lengths {} and {}",
            u.len(),
            v.len()
        )));
    }
    let (mut su, mut sv) = (0i64, 0i64);
    for (a, b) in u.iter().zip(v) {
        su += *a as i64;
        sv += *b as i64;
        if su > sv {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The variable set scalar values live in.
pub fn value_varset() -> Arc<VarSet> {
    VarSet::new(["beta"], 1).expect("valid variable set")
}

/// `g` with `x_i ↦ x_{n+1-i}^{-1}`.
pub fn reverse_inverse(g: &LaurentPoly, x: &[usize]) -> LaurentPoly {
    g.map_exponents(|e| {
        let mut out = ExpVec::from_slice(e);
        for (k, &i) in x.iter().enumerate() {
            out[i] = -e[x[x.len() - 1 - k]];
        }
        out
    })
}

/// `g` prepared for pairing: `CT(f g W) = Σ_a f_a · h_{-a}`.
#[derive(Clone, Debug)]
pub struct Prepared {
    by_x: FxHashMap<ExpVec, LaurentPoly>,
}

/// The scalar product of one type and rank.
#[derive(Clone, Debug)]
pub struct ScalarProduct {
    ty: GroupType,
    n: usize,
    vars: Arc<VarSet>,
    x: Vec<usize>,
    weight: LaurentPoly,
    sign: i64,
}

impl ScalarProduct {
    pub fn new(ty: GroupType, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("rank must be positive".into()));
        }
        let vars = key_varset(ty, n);
        let x = Block::x(&vars)?.vars;
        let mono = |pairs: &[(usize, i32)]| {
            let mut e = ExpVec::from_elem(0, vars.len());
            for &(i, k) in pairs {
                e[i] += k;
            }
            LaurentPoly::monomial(&vars, e, int(1))
        };
        let one = LaurentPoly::one(&vars);
        let weight = match ty {
            GroupType::A => {
                let mut w = one.clone();
                for i in 0..n {
                    for j in i + 1..n {
                        w = &w * &(&one - &mono(&[(i, 1), (j, -1)]));
                    }
                }
                w
            }
            GroupType::B => {
                let mut w = one.clone();
                for i in 0..n {
                    w = &w
                        * &(&mono(&[(i, (n - 1 - i) as i32 + 1)])
                            - &mono(&[(i, (n - 1 - i) as i32)]));
                }
                for i in 0..n {
                    for j in i + 1..n {
                        w = &w * &(&mono(&[(i, 1)]) - &mono(&[(j, 1)]));
                        w = &w * &(&one - &mono(&[(i, -1), (j, -1)]));
                    }
                }
                w
            }
            GroupType::C | GroupType::D | GroupType::BC => {
                let den = weyl_denominator(ty, n, DenominatorForm::Product)?.numerator;
                let r = rho(ty, n);
                let mut e = ExpVec::from_elem(0, vars.len());
                e[..n].copy_from_slice(&r.entries);
                den.mul_monomial(&e, &int(1))
            }
        };
        let sign = match ty {
            GroupType::B | GroupType::C | GroupType::BC if n % 2 == 1 => -1,
            _ => 1,
        };
        Ok(ScalarProduct {
            ty,
            n,
            vars,
            x,
            weight,
            sign,
        })
    }

    pub fn ty(&self) -> GroupType {
        self.ty
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Variables the arguments live over (`x1..xn`, plus `beta` for BC).
    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    /// The polynomial part of the weight (`x^ρ Δ^C` for BC, without the
    /// `β`-denominators), before the sign normalization.
    pub fn weight(&self) -> &LaurentPoly {
        &self.weight
    }

    /// Normalizing sign applied to every constant term.
    pub fn sign(&self) -> i64 {
        self.sign
    }

    fn lift(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        if f.vars() == &self.vars {
            Ok(f.clone())
        } else {
            f.embed(&self.vars)
        }
    }

    /// Per-variable exponent ranges of `f` over the `x` block.
    pub fn x_ranges(&self, f: &LaurentPoly) -> Vec<(i32, i32)> {
        self.x
            .iter()
            .map(|&i| f.exponent_range(i).unwrap_or((0, 0)))
            .collect()
    }

    /// Prepares `g` for pairing against any `f` whose `x`-exponents lie in
    /// `ranges` (inclusive, per variable). Only BC depends on the ranges, to
    /// size the `β`-expansion and to prune.
    pub fn prepare(&self, g: &LaurentPoly, ranges: &[(i32, i32)]) -> Result<Prepared> {
        let g = self.lift(g)?;
        let h = match self.ty {
            GroupType::A => reverse_inverse(&g, &self.x).checked_mul(&self.weight)?,
            GroupType::BC => {
                let mut h = g.checked_mul(&self.weight)?;
                let beta = self.vars.len() - 1;
                for (k, &i) in self.x.iter().enumerate() {
                    let (lo, hi) = ranges[k];
                    // A term x_i^e of h can only pair with f when -hi ≤ e + j ≤ -lo.
                    let (hmin, _) = h.exponent_range(i).unwrap_or((0, 0));
                    let order = (-lo - hmin).max(0);
                    let mut series = Vec::with_capacity(order as usize + 1);
                    for j in 0..=order {
                        let mut e = ExpVec::from_elem(0, self.vars.len());
                        e[i] = j;
                        e[beta] = j;
                        series.push((e, int(if j % 2 == 0 { 1 } else { -1 })));
                    }
                    let geo = LaurentPoly::from_terms(&self.vars, series);
                    h = h
                        .checked_mul(&geo)?
                        .filter_terms(|e, _| e[i] >= -hi && e[i] <= -lo);
                }
                h
            }
            _ => g.checked_mul(&self.weight)?,
        };
        let by_x = h.split_by(&self.x);
        Ok(Prepared { by_x })
    }

    /// `CT` of `f` against a prepared argument.
    pub fn pair(&self, f: &LaurentPoly, h: &Prepared) -> Result<LaurentPoly> {
        let f = self.lift(f)?;
        let out = value_varset();
        let mut acc = LaurentPoly::zero(&out);
        for (a, fa) in f.split_by(&self.x) {
            let neg: ExpVec = a.iter().map(|e| -e).collect();
            if let Some(hb) = h.by_x.get(&neg) {
                acc = &acc + &(&self.to_value(&fa)? * &self.to_value(hb)?);
            }
        }
        Ok(acc.scale(&int(self.sign)))
    }

    /// A polynomial free of `x` as a value over `beta`.
    fn to_value(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        let out = value_varset();
        let beta = self.vars.index_of("beta");
        let terms = p.terms().iter().map(|(e, c)| {
            let b = beta.map_or(0, |i| e[i]);
            (ExpVec::from_slice(&[b]), c.clone())
        });
        Ok(LaurentPoly::from_terms(&out, terms))
    }

    /// `(f, g)` of this type.
    pub fn scalar(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
        let f = self.lift(f)?;
        let h = self.prepare(g, &self.x_ranges(&f))?;
        self.pair(&f, &h)
    }
}

/// `(f, g)^ty`, with `n` read off the `x` variables of `f`.
pub fn scalar(ty: GroupType, f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
    let n = Block::x(f.vars())?.n();
    ScalarProduct::new(ty, n)?.scalar(f, g)
}

/// Constant term of `f · ∏_i (1 + β x_i)^{-1}` in `x`, where the series are
/// summed in closed form: every term `c x^e β^b` with all `e_i ≤ 0`
/// contributes `c (-1)^{|e|} β^{b - |e|}`.
pub fn bc_constant_term(f: &LaurentPoly) -> Result<LaurentPoly> {
    let x = Block::x(f.vars())?.vars;
    let beta = f.vars().require("beta")?;
    let out = value_varset();
    let terms = f
        .terms()
        .iter()
        .filter(|(e, _)| x.iter().all(|&i| e[i] <= 0))
        .map(|(e, c)| {
            let depth: i32 = x.iter().map(|&i| -e[i]).sum();
            let sign = if depth % 2 == 0 {
                c.clone()
            } else {
                -c.clone()
            };
            (ExpVec::from_slice(&[e[beta] + depth]), sign)
        });
    Ok(LaurentPoly::from_terms(&out, terms))
}

/// Gram matrix `(K_v, K̂_u)` over an index window. Entries excluded by the
/// type-D odd-rank restriction are `None`.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub ty: GroupType,
    pub n: usize,
    pub bound: u32,
    pub rows: Vec<KeyIndex>,
    pub cols: Vec<KeyIndex>,
    pub entries: Vec<Vec<Option<LaurentPoly>>>,
}

/// Index `u` paired with `v`: `-v` for the types other than A; for A the
/// reversed vector `vω`.
pub fn dual_index(ty: GroupType, v: &[i32]) -> VectorZ {
    match ty {
        GroupType::A => v.iter().rev().copied().collect(),
        _ => v.iter().map(|a| -a).collect(),
    }
}

fn restricted(ty: GroupType, n: usize, v: &[i32], u: &[i32]) -> bool {
    ty == GroupType::D && n % 2 == 1 && !v.contains(&0) && !u.contains(&0)
}

pub fn orthogonality_matrix(ty: GroupType, n: usize, bound: u32) -> Result<GramMatrix> {
    orthogonality_matrix_with(Exec::default(), ty, n, bound)
}

pub fn orthogonality_matrix_with(
    exec: Exec,
    ty: GroupType,
    n: usize,
    bound: u32,
) -> Result<GramMatrix> {
    let sp = ScalarProduct::new(ty, n)?;
    let constraint = if ty == GroupType::A {
        IndexConstraint::Natural
    } else {
        IndexConstraint::Any
    };
    let indices = enumerate_indices(ty, n, bound, constraint);
    let rows: Vec<KeyIndex> = indices.clone();
    let cols: Vec<KeyIndex> = indices.iter().map(|i| i.with_hat(true)).collect();
    let row_polys = exec.try_map(&rows, key)?;
    let mut ranges = vec![(0, 0); n];
    for p in &row_polys {
        for (slot, r) in ranges.iter_mut().zip(sp.x_ranges(p)) {
            *slot = (slot.0.min(r.0), slot.1.max(r.1));
        }
    }
    let entries = exec.try_map(&cols, |u| {
        let h = sp.prepare(&*key(u)?, &ranges)?;
        rows.iter()
            .zip(&row_polys)
            .map(|(v, kv)| {
                if restricted(ty, n, &v.v, &u.v) {
                    Ok(None)
                } else {
                    sp.pair(kv, &h).map(Some)
                }
            })
            .collect::<Result<Vec<_>>>()
    })?;
    // entries were computed column-major
    let entries = (0..rows.len())
        .map(|r| entries.iter().map(|col| col[r].clone()).collect())
        .collect();
    Ok(GramMatrix {
        ty,
        n,
        bound,
        rows,
        cols,
        entries,
    })
}

#[derive(Serialize)]
struct GramJson<'a> {
    #[serde(rename = "type")]
    ty: String,
    n: usize,
    bound: u32,
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<Vec<Option<&'a LaurentPoly>>>,
}

impl GramMatrix {
    /// First entry that differs from the delta pattern, if any.
    pub fn first_violation(&self) -> Option<Value> {
        for (r, v) in self.rows.iter().enumerate() {
            let dual = dual_index(self.ty, &v.v);
            for (c, u) in self.cols.iter().enumerate() {
                let Some(value) = &self.entries[r][c] else {
                    continue;
                };
                let expect_one = u.v == dual;
                let ok = if expect_one {
                    value.is_one()
                } else {
                    value.is_zero()
                };
                if !ok {
                    return Some(json!({
                        "row": v.to_string(),
                        "col": u.to_string(),
                        "value": value.pretty(),
                        "expected": if expect_one { "1" } else { "0" },
                    }));
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> Value {
        let g = GramJson {
            ty: self.ty.to_string(),
            n: self.n,
            bound: self.bound,
            rows: self.rows.iter().map(|i| i.to_string()).collect(),
            cols: self.cols.iter().map(|i| i.to_string()).collect(),
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.as_ref()).collect())
                .collect(),
        };
        serde_json::to_value(g).expect("serializable")
    }
}

pub fn orthogonality_check(ty: GroupType, n: usize, bound: u32) -> Result<VerificationReport> {
    let gram = orthogonality_matrix(ty, n, bound)?;
    Ok(VerificationReport::new(
        format!("theorem15:{ty}"),
        n,
        bound,
        gram.first_violation(),
    ))
}

fn ops_for(ty: GroupType, n: usize) -> Result<Vec<DividedDifference>> {
    generators(ty, n)
        .into_iter()
        .map(|g| DividedDifference::for_generator(ty, n, g, false))
        .collect()
}

/// The adjoint partner of an operator: itself, except `π_i ↔ π_{n-i}` in type A.
fn partner(ty: GroupType, n: usize, op: DividedDifference) -> DividedDifference {
    match (ty, op.kind) {
        (GroupType::A, crate::divdiff::OpKind::Pi(i)) => DividedDifference {
            kind: crate::divdiff::OpKind::Pi(n - i),
            ..op
        },
        _ => op,
    }
}

/// `(f op, g) = (f, g op')` on seeded random pairs, for every generator
/// operator and its hatted form.
pub fn adjointness_check(
    ty: GroupType,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let sp = ScalarProduct::new(ty, n)?;
    let block = Block::x(sp.vars())?;
    let spec = RandomPolySpec::default();
    let mut rng = seeded_rng(seed);
    let mut pairs = Vec::with_capacity(trials);
    for _ in 0..trials {
        let f = random_laurent(&mut rng, sp.vars(), &block.vars, &spec);
        let g = random_laurent(&mut rng, sp.vars(), &block.vars, &spec);
        pairs.push((f, g));
    }
    let mut ops = Vec::new();
    for op in ops_for(ty, n)? {
        ops.push(op);
        ops.push(op.hat());
    }
    let failures = Exec::default().try_map(&pairs, |(f, g)| {
        for &op in &ops {
            let left = sp.scalar(&apply(op, &block, f)?, g)?;
            let right = sp.scalar(f, &apply(partner(ty, n, op), &block, g)?)?;
            if left != right {
                return Ok::<_, Error>(Some(json!({
                    "operator": op.to_string(),
                    "f": f,
                    "g": g,
                    "left": left.pretty(),
                    "right": right.pretty(),
                })));
            }
        }
        Ok(None)
    })?;
    let ce = failures.into_iter().flatten().next();
    Ok(VerificationReport::new(
        format!("theorem8:{ty}"),
        n,
        trials as u32,
        ce,
    ))
}

/// All vectors of `ℤ^n` (or `ℕ^n`) with entries bounded by `window` in
/// absolute value.
fn window_vectors(n: usize, window: i32, natural: bool) -> Vec<VectorZ> {
    let lo = if natural { 0 } else { -window };
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=window).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

fn monomial(vars: &Arc<VarSet>, v: &[i32]) -> LaurentPoly {
    let mut e = ExpVec::from_slice(v);
    e.resize(vars.len(), 0);
    LaurentPoly::monomial(vars, e, int(1))
}

/// Support condition on monomial pairs: a nonzero `(x^v, x^u)` forces
/// `v ≤ -u` (types other than A) or `v ≤ uω` with `|v| = |u|` (type A).
pub fn support_check(ty: GroupType, n: usize, window: i32) -> Result<VerificationReport> {
    let sp = ScalarProduct::new(ty, n)?;
    let vectors = window_vectors(n, window, ty == GroupType::A);
    let ranges = vec![(-window, window); n];
    let failures = Exec::default().try_map(&vectors, |u| {
        let h = sp.prepare(&monomial(sp.vars(), u), &ranges)?;
        let dual = dual_index(ty, u);
        for v in &vectors {
            let value = sp.pair(&monomial(sp.vars(), v), &h)?;
            if value.is_zero() {
                continue;
            }
            let ok = dominance_leq(v, &dual)?
                && (ty != GroupType::A || v.iter().sum::<i32>() == u.iter().sum::<i32>());
            if !ok {
                return Ok::<_, Error>(Some(json!({ "v": v, "u": u, "value": value.pretty() })));
            }
        }
        Ok(None)
    })?;
    let ce = failures.into_iter().flatten().next();
    Ok(VerificationReport::new(
        format!("lemma10:{ty}"),
        n,
        window as u32,
        ce,
    ))
}

/// Unitriangularity against dominant monomials: `(K_v, x^λ)` vanishes unless
/// `v = -λ` (or `λω` in type A), where it equals 1.
pub fn dominant_pairing_check(ty: GroupType, n: usize, window: i32) -> Result<VerificationReport> {
    let sp = ScalarProduct::new(ty, n)?;
    let natural = ty == GroupType::A;
    let vs: Vec<KeyIndex> = window_vectors(n, window, natural)
        .into_iter()
        .filter_map(|v| KeyIndex::new(ty, v, false).ok())
        .collect();
    let keys = Exec::default().try_map(&vs, key)?;
    let mut ranges = vec![(0, 0); n];
    for p in &keys {
        for (slot, r) in ranges.iter_mut().zip(sp.x_ranges(p)) {
            *slot = (slot.0.min(r.0), slot.1.max(r.1));
        }
    }
    let lambdas: Vec<VectorZ> = window_vectors(n, window, true)
        .into_iter()
        .filter(|l| l.windows(2).all(|w| w[0] >= w[1]))
        .filter(|l| !(ty == GroupType::D && n % 2 == 1 && !l.contains(&0)))
        .collect();
    for lambda in &lambdas {
        let h = sp.prepare(&monomial(sp.vars(), lambda), &ranges)?;
        let dual = dual_index(ty, lambda);
        for (idx, k) in vs.iter().zip(&keys) {
            let value = sp.pair(k, &h)?;
            let expect_one = idx.v == dual;
            let ok = if expect_one {
                value.is_one()
            } else {
                value.is_zero()
            };
            if !ok {
                let ce = json!({ "v": idx.v, "lambda": lambda, "value": value.pretty() });
                return Ok(VerificationReport::new(
                    format!("corollary12:{ty}"),
                    n,
                    window as u32,
                    Some(ce),
                ));
            }
        }
    }
    Ok(VerificationReport::new(
        format!("corollary12:{ty}"),
        n,
        window as u32,
        None,
    ))
}

/// Renders a scalar value for reports.
pub fn value_string(v: &LaurentPoly) -> String {
    if v.is_zero() {
        return "0/1".to_string();
    }
    if let Some((e, c)) = v.as_monomial() {
        if e.iter().all(|&x| x == 0) {
            return coeff_to_string(c);
        }
    }
    v.pretty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::character_varset;
    use crate::weylgroup::GroupType::*;
    use proptest::prelude::*;

    fn k(s: &str) -> LaurentPoly {
        (*key(&s.parse().unwrap()).unwrap()).clone()
    }

    fn constant(c: i64) -> LaurentPoly {
        LaurentPoly::constant(&value_varset(), int(c))
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&[1, 1], &[2, 0]).unwrap());
        assert!(!dominance_leq(&[2, 0], &[1, 1]).unwrap());
        assert!(dominance_leq(&[1], &[1, 0]).is_err());
    }

    proptest! {
        #[test]
        fn dominance_is_reflexive(v in proptest::collection::vec(-5i32..5, 1..5)) {
            prop_assert!(dominance_leq(&v, &v).unwrap());
        }
    }

    #[test]
    fn small_products() {
        let vars = key_varset(D, 2);
        let one = LaurentPoly::one(&vars);
        assert_eq!(scalar(D, &one, &one).unwrap(), constant(1));
        // type A pairs K_v with the hatted key of the reversed index
        assert_eq!(
            scalar(A, &k("A:0,1"), &k("A:1,0:hat")).unwrap(),
            constant(1)
        );
        assert_eq!(
            scalar(A, &k("A:0,1"), &k("A:0,1:hat")).unwrap(),
            constant(0)
        );
        assert_eq!(
            scalar(A, &k("A:1,0"), &k("A:0,1:hat")).unwrap(),
            constant(1)
        );
        assert_eq!(scalar(C, &k("C:-1"), &k("C:1:hat")).unwrap(), constant(1));
        assert_eq!(scalar(C, &k("C:1"), &k("C:1:hat")).unwrap(), constant(0));
    }

    #[test]
    fn unnormalized_weight_has_longest_element_sign() {
        for ty in [B, C, BC, D] {
            for n in 1..=3 {
                if ty == D && n == 1 {
                    continue;
                }
                let sp = ScalarProduct::new(ty, n).unwrap();
                let x = Block::x(sp.vars()).unwrap().vars;
                let ct = sp.weight().constant_term(&x);
                let expect = if ty != D && n % 2 == 1 { -1 } else { 1 };
                assert_eq!(
                    ct,
                    LaurentPoly::constant(sp.vars(), int(expect)),
                    "{ty} n={n}"
                );
                assert_eq!(
                    sp.scalar(&LaurentPoly::one(sp.vars()), &LaurentPoly::one(sp.vars()))
                        .unwrap(),
                    constant(1)
                );
            }
        }
    }

    #[test]
    fn b_weight_matches_half_integer_lattice() {
        for n in 1..=3 {
            let half = weyl_denominator(B, n, DenominatorForm::Product)
                .unwrap()
                .numerator;
            let r = rho(B, n);
            let mut e = ExpVec::from_slice(&r.entries);
            e.resize(half.vars().len(), 0);
            let lifted = half.mul_monomial(&e, &int(1)).to_unit(1).unwrap();
            let sp = ScalarProduct::new(B, n).unwrap();
            assert_eq!(&lifted, sp.weight(), "n={n}");
            assert_eq!(character_varset(B, n).unit(), 2);
        }
    }

    #[test]
    fn bc_expansion_matches_closed_form() {
        let sp = ScalarProduct::new(BC, 2).unwrap();
        let block = Block::x(sp.vars()).unwrap().vars;
        let mut rng = seeded_rng(7);
        for _ in 0..50 {
            let f = random_laurent(&mut rng, sp.vars(), &block, &RandomPolySpec::default());
            let g = random_laurent(&mut rng, sp.vars(), &block, &RandomPolySpec::default());
            let direct = bc_constant_term(&(&(&f * &g) * sp.weight())).unwrap();
            assert_eq!(sp.scalar(&f, &g).unwrap(), direct.scale(&int(sp.sign())));
        }
    }

    #[test]
    fn bc_specializes_to_b_and_c() {
        let n = 2;
        let bc = ScalarProduct::new(BC, n).unwrap();
        let plain = key_varset(B, n);
        let block = Block::x(&plain).unwrap().vars;
        let mut rng = seeded_rng(11);
        for _ in 0..30 {
            let f = random_laurent(&mut rng, &plain, &block, &RandomPolySpec::default());
            let g = random_laurent(&mut rng, &plain, &block, &RandomPolySpec::default());
            let value = bc.scalar(&f, &g).unwrap();
            for (beta, ty) in [(0, C), (1, B)] {
                let at = value.substitute("beta", &constant(beta)).unwrap();
                assert_eq!(at, scalar(ty, &f, &g).unwrap(), "{ty}");
            }
        }
    }

    #[test]
    fn gram_examples() {
        let g = orthogonality_matrix(A, 2, 1).unwrap();
        let labels: Vec<String> = g.rows.iter().map(|r| r.to_string()).collect();
        assert_eq!(labels, ["A:0,0", "A:1,0", "A:0,1"]);
        assert_eq!(g.first_violation(), None);
        for ty in [C, BC, B] {
            let g = orthogonality_matrix(ty, 1, 1).unwrap();
            assert_eq!(g.first_violation(), None, "{ty}");
        }
    }

    #[test]
    fn adjointness_small() {
        for ty in GroupType::ALL {
            let r = adjointness_check(ty, 2, 20, 3).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let vars = key_varset(C, 2);
        let one = LaurentPoly::one(&vars);
        let sp = ScalarProduct::new(C, 2).unwrap();
        let block = Block::x(&vars).unwrap();
        for op in ops_for(C, 2).unwrap() {
            let left = sp.scalar(&apply(op, &block, &one).unwrap(), &one).unwrap();
            assert_eq!(left, sp.scalar(&one, &one).unwrap());
        }
    }

    #[test]
    fn support_and_unitriangularity_small() {
        for ty in [A, C, D] {
            assert!(support_check(ty, 2, 2).unwrap().passed(), "{ty}");
            assert!(dominant_pairing_check(ty, 2, 2).unwrap().passed(), "{ty}");
        }
    }
}
