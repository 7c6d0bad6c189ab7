//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! A [`LaurentPoly`] is a finite map from exponent vectors to nonzero
//! rationals, stored as a vector sorted by the lexicographic order of the
//! exponents. Every polynomial carries the [`VarSet`] it lives over; binary
//! operations between polynomials over different variable sets fail with
//! [`Error::VarSetMismatch`] (the `std::ops` impls panic instead).
//!
//! Exponents are stored in units of `1 / unit`, so a variable set with
//! `unit == 2` can hold half-integer powers such as `x^(1/2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{domain, Error, Result};

pub type Coeff = BigRational;
pub type ExpVec = SmallVec<[i32; 8]>;

/// Integer coefficient.
pub fn int(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

/// Rational coefficient `num / den`.
pub fn ratio(num: i64, den: i64) -> Coeff {
    Coeff::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a coefficient as `num/den` with a positive denominator.
pub fn coeff_to_string(c: &Coeff) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_coeff(s: &str) -> Result<Coeff> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Coeff::new(n, d)
        }
        None => Coeff::from_integer(
            s.parse()
                .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?,
        ),
    };
    Ok(parsed)
}

/// Ordered list of distinct variable names plus the exponent lattice step.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
    unit: u8,
}

impl VarSet {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        unit: u8,
    ) -> Result<Arc<VarSet>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if unit != 1 && unit != 2 {
            return domain(format!("exponent unit must be 1 or 2, got {unit}"));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return domain(format!("duplicate variable {a}"));
            }
        }
        Ok(Arc::new(VarSet { names, unit }))
    }

    /// `x1..xn`, then `y1..yn` when `with_y`, then `beta` when `with_beta`.
    pub fn standard(n: usize, with_y: bool, with_beta: bool) -> Arc<VarSet> {
        let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        if with_y {
            names.extend((1..=n).map(|i| format!("y{i}")));
        }
        if with_beta {
            names.push("beta".into());
        }
        Arc::new(VarSet { names, unit: 1 })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> i32 {
        self.unit as i32
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| {
            Error::Domain(format!(
                "unknown variable {name} in [{}]",
                self.names.join(",")
            ))
        })
    }

    pub fn with_unit(&self, unit: u8) -> Result<Arc<VarSet>> {
        VarSet::new(self.names.clone(), unit)
    }

    fn describe(&self) -> String {
        format!("{}; unit {}", self.names.join(","), self.unit)
    }
}

fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn mismatch(a: &VarSet, b: &VarSet) -> Error {
    Error::VarSetMismatch {
        left: a.describe(),
        right: b.describe(),
    }
}

#[derive(Clone, Debug)]
pub struct LaurentPoly {
    vars: Arc<VarSet>,
    terms: Vec<(ExpVec, Coeff)>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Coeff) -> Self {
        let zero_exp: ExpVec = SmallVec::from_elem(0, vars.len());
        Self::monomial(vars, zero_exp, c)
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, Coeff::one())
    }

    /// `c * x^exps` with `exps` in stored (unit) coordinates.
    pub fn monomial(vars: &Arc<VarSet>, exps: ExpVec, c: Coeff) -> Self {
        assert_eq!(
            exps.len(),
            vars.len(),
            "exponent vector length must match the variable set"
        );
        if c.is_zero() {
            return Self::zero(vars);
        }
        LaurentPoly {
            vars: vars.clone(),
            terms: vec![(exps, c)],
        }
    }

    /// The variable at index `idx` to the first (whole) power.
    pub fn var_at(vars: &Arc<VarSet>, idx: usize) -> Self {
        let mut e: ExpVec = SmallVec::from_elem(0, vars.len());
        e[idx] = vars.unit();
        Self::monomial(vars, e, Coeff::one())
    }

    pub fn var(vars: &Arc<VarSet>, name: &str) -> Result<Self> {
        Ok(Self::var_at(vars, vars.require(name)?))
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(
        vars: &Arc<VarSet>,
        terms: impl IntoIterator<Item = (ExpVec, Coeff)>,
    ) -> Self {
        let mut acc: FxHashMap<ExpVec, Coeff> = FxHashMap::default();
        for (e, c) in terms {
            assert_eq!(
                e.len(),
                vars.len(),
                "exponent vector length must match the variable set"
            );
            match acc.get_mut(&e) {
                Some(slot) => *slot += c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Self::from_map(vars, acc)
    }

    fn from_map(vars: &Arc<VarSet>, acc: FxHashMap<ExpVec, Coeff>) -> Self {
        let mut terms: Vec<(ExpVec, Coeff)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    fn from_sorted(vars: &Arc<VarSet>, terms: Vec<(ExpVec, Coeff)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> &[(ExpVec, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(ExpVec, Coeff)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn coeff(&self, exps: &[i32]) -> Coeff {
        match self.terms.binary_search_by(|(e, _)| e.as_slice().cmp(exps)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Coeff::zero(),
        }
    }

    /// The single term if this is a monomial.
    pub fn as_monomial(&self) -> Option<(&ExpVec, &Coeff)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((e, c)),
            _ => None,
        }
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&ExpVec, &Coeff)> {
        self.terms.last().map(|(e, c)| (e, c))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(mismatch(&self.vars, &other.vars))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let (e, c) = &b[j];
                    out.push((e.clone(), if negate { -c } else { c.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::from_sorted(&self.vars, out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        if let Some((e, c)) = other.as_monomial() {
            return Ok(self.mul_monomial(e, c));
        }
        if let Some((e, c)) = self.as_monomial() {
            return Ok(other.mul_monomial(e, c));
        }
        let mut acc: FxHashMap<ExpVec, Coeff> = FxHashMap::with_capacity_and_hasher(
            self.len() * other.len() / 2 + 1,
            Default::default(),
        );
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: ExpVec = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                match acc.get_mut(&e) {
                    Some(slot) => *slot += c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        Ok(Self::from_map(&self.vars, acc))
    }

    /// Multiplies by `c * x^exps`; shifting preserves the term order.
    pub fn mul_monomial(&self, exps: &[i32], c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| (e.iter().zip(exps).map(|(x, y)| x + y).collect(), k * c))
            .collect();
        Self::from_sorted(&self.vars, terms)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect();
        Self::from_sorted(&self.vars, terms)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Applies an exponent map to every term (e.g. a group action) and re-canonicalizes.
    pub fn map_exponents(&self, f: impl Fn(&[i32]) -> ExpVec) -> Self {
        Self::from_terms(
            &self.vars,
            self.terms.iter().map(|(e, c)| (f(e), c.clone())),
        )
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&[i32], &Coeff) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, c)| keep(e, c))
            .cloned()
            .collect();
        Self::from_sorted(&self.vars, terms)
    }

    /// Sum of the stored exponents over `vars` (in stored units).
    pub fn degree_of(exps: &[i32], vars: &[usize]) -> i32 {
        vars.iter().map(|&i| exps[i]).sum()
    }

    /// Minimum and maximum stored exponent of variable `idx`, or `None` for zero.
    pub fn exponent_range(&self, idx: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.iter().map(|(e, _)| e[idx]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// Ring homomorphism extending `var ↦ value`.
    ///
    /// Negative powers of `var` are only allowed when `value` is an invertible
    /// monomial. On a unit-2 variable set only whole powers of `var` can be
    /// substituted.
    pub fn substitute(&self, var: &str, value: &LaurentPoly) -> Result<Self> {
        self.check(value)?;
        let idx = self.vars.require(var)?;
        let unit = self.vars.unit();
        if self.terms.iter().any(|(e, _)| e[idx] % unit != 0) {
            return domain(format!("cannot substitute for fractional powers of {var}"));
        }
        if let Some((m, c)) = value.as_monomial() {
            let c_inv = c.recip();
            let out = self.terms.iter().map(|(e, k)| {
                let p = e[idx] / unit;
                let mut ne = e.clone();
                ne[idx] = 0;
                for (slot, me) in ne.iter_mut().zip(m) {
                    *slot += p * me;
                }
                let factor = if p >= 0 {
                    pow_coeff(c, p as u32)
                } else {
                    pow_coeff(&c_inv, (-p) as u32)
                };
                (ne, k * factor)
            });
            return Ok(Self::from_terms(&self.vars, out));
        }
        if self.terms.iter().any(|(e, _)| e[idx] < 0) {
            let what = if value.is_zero() {
                "zero".to_string()
            } else {
                "a non-monomial".to_string()
            };
            return domain(format!(
                "cannot substitute {what} into a negative power of {var}"
            ));
        }
        // Group terms by their power of `var`, then evaluate as a polynomial in `value`.
        let mut by_power: BTreeMap<i32, Vec<(ExpVec, Coeff)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[idx] = 0;
            by_power
                .entry(e[idx] / unit)
                .or_default()
                .push((ne, c.clone()));
        }
        let mut out = Self::zero(&self.vars);
        let mut power = Self::one(&self.vars);
        let mut current = 0;
        for (p, terms) in by_power {
            while current < p {
                power = &power * value;
                current += 1;
            }
            out = &out + &(&Self::from_terms(&self.vars, terms) * &power);
        }
        Ok(out)
    }

    /// Sum of the terms whose exponents vanish on every variable in `vars`.
    /// The result stays over the same variable set.
    pub fn constant_term(&self, vars: &[usize]) -> Self {
        self.filter_terms(|e, _| vars.iter().all(|&i| e[i] == 0))
    }

    /// Keeps the terms whose total degree over `vars` is at most `maxdeg`.
    pub fn truncate_by_degree(&self, vars: &[usize], maxdeg: i64) -> Self {
        let bound = maxdeg.saturating_mul(self.vars.unit() as i64);
        self.filter_terms(|e, _| (Self::degree_of(e, vars) as i64) <= bound)
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    /// Variables missing from `target` must not occur.
    pub fn embed(&self, target: &Arc<VarSet>) -> Result<Self> {
        self.rename_into(target, |n| n.to_string())
    }

    /// Like [`embed`](Self::embed) but renames each source variable through `rename` first.
    pub fn rename_into(
        &self,
        target: &Arc<VarSet>,
        rename: impl Fn(&str) -> String,
    ) -> Result<Self> {
        if self.vars.unit != target.unit {
            return Err(mismatch(&self.vars, target));
        }
        let map: Vec<Option<usize>> = self
            .vars
            .names
            .iter()
            .map(|n| target.index_of(&rename(n)))
            .collect();
        for (i, slot) in map.iter().enumerate() {
            if slot.is_none() && self.terms.iter().any(|(e, _)| e[i] != 0) {
                return domain(format!(
                    "variable {} has no counterpart in [{}]",
                    self.vars.names[i],
                    target.names.join(",")
                ));
            }
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne: ExpVec = SmallVec::from_elem(0, target.len());
            for (i, slot) in map.iter().enumerate() {
                if let Some(j) = slot {
                    ne[*j] += e[i];
                }
            }
            (ne, c.clone())
        });
        Ok(Self::from_terms(target, terms))
    }

    /// Moves to a variable set with exponent unit `unit` (2 → 1 requires even exponents).
    pub fn to_unit(&self, unit: u8) -> Result<Self> {
        let target = self.vars.with_unit(unit)?;
        let from = self.vars.unit();
        let to = unit as i32;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut ne = ExpVec::with_capacity(e.len());
            for &x in e {
                if (x * to) % from != 0 {
                    return domain("exponent not representable on the target lattice");
                }
                ne.push(x * to / from);
            }
            terms.push((ne, c.clone()));
        }
        Ok(Self::from_sorted(&target, terms))
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Runs lexicographic long division; every quotient term must fall in the
    /// box given by the per-variable exponent ranges of dividend and divisor,
    /// otherwise the division is inexact. In debug builds the quotient is
    /// re-multiplied and compared against the dividend.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        if let Some((e, c)) = divisor.as_monomial() {
            let neg: ExpVec = e.iter().map(|x| -x).collect();
            return Ok(self.mul_monomial(&neg, &c.recip()));
        }
        let nv = self.vars.len();
        let mut lo: ExpVec = SmallVec::from_elem(0, nv);
        let mut hi: ExpVec = SmallVec::from_elem(0, nv);
        for i in 0..nv {
            let (a_lo, a_hi) = self.exponent_range(i).unwrap();
            let (d_lo, d_hi) = divisor.exponent_range(i).unwrap();
            lo[i] = a_lo - d_lo;
            hi[i] = a_hi - d_hi;
        }
        let (lead_e, lead_c) = divisor.terms.last().unwrap();
        let rest = &divisor.terms[..divisor.terms.len() - 1];
        let mut rem: BTreeMap<ExpVec, Coeff> = self.terms.iter().cloned().collect();
        let mut quotient: Vec<(ExpVec, Coeff)> = Vec::new();
        while let Some((e, c)) = rem.pop_last() {
            let qe: ExpVec = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if qe
                .iter()
                .zip(lo.iter().zip(&hi))
                .any(|(x, (l, h))| x < l || x > h)
            {
                return Err(Error::InexactDivision(format!(
                    "remainder term {:?} leaves the quotient box",
                    e.as_slice()
                )));
            }
            let qc = &c / lead_c;
            for (de, dc) in rest {
                let te: ExpVec = qe.iter().zip(de).map(|(a, b)| a + b).collect();
                let delta = &qc * dc;
                let cancelled = {
                    let entry = rem.entry(te.clone()).or_insert_with(Coeff::zero);
                    *entry -= delta;
                    entry.is_zero()
                };
                if cancelled {
                    rem.remove(&te);
                }
            }
            quotient.push((qe, qc));
        }
        quotient.reverse();
        let q = Self::from_sorted(&self.vars, quotient);
        if cfg!(debug_assertions) && &(&q * divisor) != self {
            return Err(Error::InexactDivision(
                "re-multiplication check failed".into(),
            ));
        }
        Ok(q)
    }

    /// Splits into `(exponents on vars) → remaining polynomial` with the
    /// selected exponents zeroed in the remainder.
    pub fn split_by(&self, vars: &[usize]) -> FxHashMap<ExpVec, LaurentPoly> {
        let mut parts: FxHashMap<ExpVec, Vec<(ExpVec, Coeff)>> = FxHashMap::default();
        for (e, c) in &self.terms {
            let key: ExpVec = vars.iter().map(|&i| e[i]).collect();
            let mut rest = e.clone();
            for &i in vars {
                rest[i] = 0;
            }
            parts.entry(key).or_default().push((rest, c.clone()));
        }
        // Terms keep their relative order after zeroing a fixed set of
        // coordinates only up to ties, so re-canonicalize.
        parts
            .into_iter()
            .map(|(k, t)| (k, Self::from_terms(&self.vars, t)))
            .collect()
    }

    /// Human-readable rendering, higher total degree first, `x1` before `x2`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let unit = self.vars.unit();
        let mut order: Vec<&(ExpVec, Coeff)> = self.terms.iter().collect();
        order.sort_by(|a, b| {
            let da: i32 = a.0.iter().sum();
            let db: i32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(&a.0))
        });
        let mut out = String::new();
        for (k, (e, c)) in order.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    let name = &self.vars.names[i];
                    let p = if x % unit == 0 {
                        (x / unit).to_string()
                    } else {
                        format!("({x}/{unit})")
                    };
                    if p == "1" {
                        name.clone()
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            let sign = match (k, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out.push_str(sign);
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

pub(crate) fn pow_coeff(c: &Coeff, k: u32) -> Coeff {
    num_traits::pow(c.clone(), k as usize)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b> $tr<&'b LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &'b LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &'b LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        LaurentPoly::from_sorted(&self.vars, terms)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    /// Panics on an empty iterator; there is no variable set to attach zero to.
    fn sum<I: Iterator<Item = LaurentPoly>>(mut iter: I) -> Self {
        let first = iter.next().expect("sum of an empty polynomial iterator");
        iter.fold(first, |acc, p| &acc + &p)
    }
}

/// Wire format: `{"vars": [...], "unit": 1|2, "terms": [[[e1,...], "num/den"], ...]}`.
#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    unit: u8,
    terms: Vec<(Vec<i32>, String)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.vars.names.clone(),
            unit: self.vars.unit,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.to_vec(), coeff_to_string(c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        let vars = VarSet::new(raw.vars, raw.unit).map_err(D::Error::custom)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (e, c) in raw.terms {
            if e.len() != vars.len() {
                return Err(D::Error::custom(
                    "exponent vector length does not match vars",
                ));
            }
            terms.push((
                ExpVec::from_vec(e),
                parse_coeff(&c).map_err(D::Error::custom)?,
            ));
        }
        Ok(LaurentPoly::from_terms(&vars, terms))
    }
}
