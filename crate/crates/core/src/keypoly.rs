//! Key polynomials `K_v` and `K̂_v` for the types A, B, C, D and BC.
//!
//! Both families start from the dominant monomial `x^λ` and follow a chain of
//! raising steps `v → v·g`, applying `π_g` (resp. `π̂_g`) at each step. A step
//! is raising when
//!
//! * `s_i`, `i < n`: `v_i > v_{i+1}`,
//! * `s_n` (B, C, BC): `v_n > 0`,
//! * `τ_n` (D): `ℓ(vτ_n) > ℓ(v)`, with `ℓ` the orbit length of [`crate::weylgroup`].
//!
//! The chain used for computation is the breadth-first raising tree with
//! generators tried in the order `s_1, …, s_{n-1}, s_n/τ_n`. Keys indexed by
//! `v ∈ ℕ^n` never use the exceptional generator and are shared between types.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock, RwLock};

use crate::divdiff::{apply, apply_word, Block, DividedDifference};
use crate::error::{domain, Error, Result};
use crate::laurent::{int, ExpVec, LaurentPoly, VarSet};
use crate::weylgroup::{
    apply_generator, dominant, generators, length_vector, Family, Generator, GroupType, VectorZ,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KeyIndex {
    pub ty: GroupType,
    pub v: VectorZ,
    pub hatted: bool,
}

impl KeyIndex {
    /// Validates the index: type A needs `v ∈ ℕ^n`, type D needs `v` in the
    /// D-orbit of its dominant representative.
    pub fn new(ty: GroupType, v: VectorZ, hatted: bool) -> Result<Self> {
        if v.is_empty() {
            return domain("key index must be nonempty");
        }
        if ty == GroupType::A && v.iter().any(|&x| x < 0) {
            return domain(format!("type-A key index {v:?} must be nonnegative"));
        }
        length_vector(ty, &v)?;
        Ok(KeyIndex { ty, v, hatted })
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn with_hat(&self, hatted: bool) -> Self {
        KeyIndex {
            hatted,
            ..self.clone()
        }
    }

    fn is_natural(&self) -> bool {
        self.v.iter().all(|&x| x >= 0)
    }
}

impl fmt::Display for KeyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.v.iter().map(|x| x.to_string()).collect();
        write!(f, "{}:{}", self.ty, entries.join(","))?;
        if self.hatted {
            f.write_str(":hat")?;
        }
        Ok(())
    }
}

/// Parses `"type:v1,...,vn[:hat]"`.
impl FromStr for KeyIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let (ty, v, hatted) = match parts.as_slice() {
            [ty, v] => (ty, v, false),
            [ty, v, "hat"] => (ty, v, true),
            _ => {
                return Err(Error::Parse(format!(
                    "expected type:v1,...,vn[:hat], got {s:?}"
                )))
            }
        };
        let ty: GroupType = ty.parse()?;
        let v = v
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad entry {x:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        KeyIndex::new(ty, v, hatted)
    }
}

/// Variables key polynomials live over: `x1..xn`, plus `beta` for type BC.
pub fn key_varset(ty: GroupType, n: usize) -> Arc<VarSet> {
    VarSet::standard(n, false, ty == GroupType::BC)
}

/// Whether `v → v·g` is a raising step for `ty`.
pub fn is_raising(ty: GroupType, g: Generator, v: &[i32]) -> Result<bool> {
    let n = v.len();
    Ok(match g {
        Generator::S(i) if i < n => v[i - 1] > v[i],
        Generator::S(_) => v[n - 1] > 0,
        Generator::Tau(_) => {
            let mut w = v.to_vec();
            apply_generator(g, &mut w);
            length_vector(ty, &w)? > length_vector(ty, v)?
        }
    })
}

/// Breadth-first raising tree from a dominant vector: parent pointer and
/// generator for every vector of the orbit.
#[derive(Debug)]
pub struct RaisingTree {
    pub root: VectorZ,
    pub parent: HashMap<VectorZ, (VectorZ, Generator)>,
}

impl RaisingTree {
    pub fn build(ty: GroupType, root: &[i32]) -> Result<Self> {
        let gens = generators(ty, root.len());
        let mut parent = HashMap::new();
        let mut queue = VecDeque::from([root.to_vec()]);
        while let Some(u) = queue.pop_front() {
            for &g in &gens {
                if !is_raising(ty, g, &u)? {
                    continue;
                }
                let mut w = u.clone();
                apply_generator(g, &mut w);
                if w.as_slice() != root && !parent.contains_key(&w) {
                    parent.insert(w.clone(), (u.clone(), g));
                    queue.push_back(w);
                }
            }
        }
        Ok(RaisingTree {
            root: root.to_vec(),
            parent,
        })
    }

    /// Generators leading from the root to `v`.
    pub fn path_to(&self, v: &[i32]) -> Option<Vec<Generator>> {
        let mut path = Vec::new();
        let mut cur = v.to_vec();
        while cur != self.root {
            let (p, g) = self.parent.get(&cur)?;
            path.push(*g);
            cur = p.clone();
        }
        path.reverse();
        Some(path)
    }
}

type CacheKey = (GroupType, VectorZ, bool);

/// Memo table for key polynomials; safe to share between threads.
///
/// Lookups take a read lock; a missing entry is computed outside the lock and
/// inserted once (a concurrent duplicate computation yields the same value).
#[derive(Default)]
pub struct KeyCache {
    keys: RwLock<HashMap<CacheKey, Arc<LaurentPoly>>>,
    trees: RwLock<HashMap<(Family, VectorZ), Arc<RaisingTree>>>,
}

static GLOBAL: LazyLock<KeyCache> = LazyLock::new(KeyCache::default);

impl KeyCache {
    pub fn global() -> &'static KeyCache {
        &GLOBAL
    }

    fn tree(&self, ty: GroupType, root: &[i32]) -> Result<Arc<RaisingTree>> {
        let k = (ty.family(), root.to_vec());
        if let Some(t) = self.trees.read().unwrap().get(&k) {
            return Ok(t.clone());
        }
        let t = Arc::new(RaisingTree::build(ty, root)?);
        Ok(self.trees.write().unwrap().entry(k).or_insert(t).clone())
    }

    /// `K_v` or `K̂_v`, over [`key_varset`] of the index's type.
    pub fn key(&self, idx: &KeyIndex) -> Result<Arc<LaurentPoly>> {
        let shared = idx.ty != GroupType::A && idx.is_natural();
        let norm = if shared {
            KeyIndex {
                ty: GroupType::A,
                ..idx.clone()
            }
        } else {
            idx.clone()
        };
        let poly = self.key_normalized(&norm)?;
        if shared && idx.ty == GroupType::BC {
            Ok(Arc::new(poly.embed(&key_varset(GroupType::BC, idx.n()))?))
        } else {
            Ok(poly)
        }
    }

    fn key_normalized(&self, idx: &KeyIndex) -> Result<Arc<LaurentPoly>> {
        let ck = (idx.ty, idx.v.clone(), idx.hatted);
        if let Some(p) = self.keys.read().unwrap().get(&ck) {
            return Ok(p.clone());
        }
        let n = idx.n();
        let root = dominant(idx.ty, &idx.v);
        let vars = key_varset(idx.ty, n);
        let poly = if idx.v == root {
            LaurentPoly::monomial(&vars, padded(&root, vars.len()), int(1))
        } else {
            let tree = self.tree(idx.ty, &root)?;
            let (parent, g) =
                tree.parent.get(&idx.v).cloned().ok_or_else(|| {
                    Error::Domain(format!("{idx} is not reachable from {root:?}"))
                })?;
            let prev = self.key_normalized(&KeyIndex {
                v: parent,
                ..idx.clone()
            })?;
            let op = DividedDifference::for_generator(idx.ty, n, g, idx.hatted)?;
            apply(op, &Block::x(&vars)?, &prev)?
        };
        let poly = Arc::new(poly);
        Ok(self.keys.write().unwrap().entry(ck).or_insert(poly).clone())
    }

    pub fn len(&self) -> usize {
        self.keys.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `K_v` / `K̂_v` from the shared global cache.
pub fn key(idx: &KeyIndex) -> Result<Arc<LaurentPoly>> {
    KeyCache::global().key(idx)
}

/// Image of `x^λ` under the operators attached to `word` (no raising check).
pub fn key_via_word(
    ty: GroupType,
    lambda: &[i32],
    word: &[Generator],
    hatted: bool,
) -> Result<LaurentPoly> {
    let n = lambda.len();
    let vars = key_varset(ty, n);
    let ops = word
        .iter()
        .map(|&g| DividedDifference::for_generator(ty, n, g, hatted))
        .collect::<Result<Vec<_>>>()?;
    let start = LaurentPoly::monomial(&vars, padded(lambda, vars.len()), int(1));
    apply_word(&ops, &Block::x(&vars)?, &start)
}

fn padded(v: &[i32], len: usize) -> ExpVec {
    let mut e: ExpVec = v.iter().copied().collect();
    e.resize(len, 0);
    e
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexConstraint {
    /// Every index valid for the type.
    Any,
    /// `v ∈ ℕ^n`.
    Natural,
    /// `v ∈ ℕ^n` with `v_n = 0`.
    NaturalLastZero,
}

/// All valid indices with `Σ|v_i| ≤ degree_bound`, ordered by that weight and
/// then lexicographically decreasing.
pub fn enumerate_indices(
    ty: GroupType,
    n: usize,
    degree_bound: u32,
    constraint: IndexConstraint,
) -> Vec<KeyIndex> {
    let bound = degree_bound as i32;
    let natural = ty == GroupType::A || constraint != IndexConstraint::Any;
    let mut out = Vec::new();
    for weight in 0..=bound {
        let mut batch = Vec::new();
        let mut cur = vec![0i32; n];
        vectors_of_weight(&mut cur, 0, weight, natural, &mut batch);
        batch.sort_unstable_by(|a, b| b.cmp(a));
        for v in batch {
            if constraint == IndexConstraint::NaturalLastZero && v[n - 1] != 0 {
                continue;
            }
            if let Ok(idx) = KeyIndex::new(ty, v, false) {
                out.push(idx);
            }
        }
    }
    out
}

fn vectors_of_weight(
    cur: &mut Vec<i32>,
    pos: usize,
    remaining: i32,
    natural: bool,
    out: &mut Vec<VectorZ>,
) {
    if pos == cur.len() {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for a in 0..=remaining {
        let signs: &[i32] = if natural || a == 0 { &[1] } else { &[1, -1] };
        for &s in signs {
            cur[pos] = s * a;
            vectors_of_weight(cur, pos + 1, remaining - a, natural, out);
        }
    }
    cur[pos] = 0;
}

/// First raising edge `u → u·g` (over indices in the window) where
/// `K_u·π_g ≠ K_{u·g}`; `None` when every edge is consistent. Because the
/// cached keys follow one fixed raising tree, this certifies that every
/// raising path computes the same polynomial.
pub fn path_independence_violation(
    ty: GroupType,
    n: usize,
    degree_bound: u32,
    hatted: bool,
) -> Result<Option<(KeyIndex, Generator)>> {
    let cache = KeyCache::global();
    let vars = key_varset(ty, n);
    let block = Block::x(&vars)?;
    for idx in enumerate_indices(ty, n, degree_bound, IndexConstraint::Any) {
        let idx = idx.with_hat(hatted);
        let base = cache.key(&idx)?;
        for g in generators(ty, n) {
            if !is_raising(ty, g, &idx.v)? {
                continue;
            }
            let mut w = idx.v.clone();
            apply_generator(g, &mut w);
            let op = DividedDifference::for_generator(ty, n, g, hatted)?;
            let stepped = apply(op, &block, &base)?;
            let target = cache.key(&KeyIndex {
                v: w,
                ..idx.clone()
            })?;
            if stepped != *target {
                return Ok(Some((idx, g)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalarprod::dominance_leq;
    use crate::weylgroup::GroupType::*;

    fn k(s: &str) -> LaurentPoly {
        (*key(&s.parse().unwrap()).unwrap()).clone()
    }

    fn x(n: usize, i: usize, ty: GroupType) -> LaurentPoly {
        LaurentPoly::var_at(&key_varset(ty, n), i)
    }

    #[test]
    fn small_keys() {
        assert_eq!(k("A:2,1"), &(&x(2, 0, A) * &x(2, 0, A)) * &x(2, 1, A));
        assert_eq!(k("A:0,1"), &x(2, 0, A) + &x(2, 1, A));
        assert_eq!(k("A:0,1:hat"), x(2, 1, A));
        let x1 = x(1, 0, C);
        assert_eq!(
            k("C:-1"),
            &x1 + &LaurentPoly::one(x1.vars()).div_exact(&x1).unwrap()
        );
    }

    #[test]
    fn index_parsing() {
        let idx: KeyIndex = "BC:1,-2:hat".parse().unwrap();
        assert_eq!((idx.ty, idx.v.clone(), idx.hatted), (BC, vec![1, -2], true));
        assert_eq!(idx.to_string(), "BC:1,-2:hat");
        assert!("A:1,-1".parse::<KeyIndex>().is_err());
        assert!("D:1,-2".parse::<KeyIndex>().is_err());
        assert!("D:0,-2".parse::<KeyIndex>().is_ok());
        assert!("Q:1".parse::<KeyIndex>().is_err());
        assert!("A:1,x".parse::<KeyIndex>().is_err());
    }

    #[test]
    fn natural_keys_coincide_across_types() {
        for v in ["0,2,1", "1,0,2", "0,0,3"] {
            let a = k(&format!("A:{v}"));
            for ty in ["B", "C", "D"] {
                assert_eq!(k(&format!("{ty}:{v}")), a);
            }
            let bc = k(&format!("BC:{v}"));
            assert_eq!(bc.embed(a.vars()).unwrap(), a);
        }
    }

    #[test]
    fn enumeration() {
        let e = enumerate_indices(A, 2, 1, IndexConstraint::Natural);
        let vs: Vec<_> = e.iter().map(|i| i.v.clone()).collect();
        assert_eq!(vs, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let e = enumerate_indices(D, 2, 2, IndexConstraint::NaturalLastZero);
        let vs: Vec<_> = e.iter().map(|i| i.v.clone()).collect();
        assert_eq!(vs, vec![vec![0, 0], vec![1, 0], vec![2, 0]]);
        // stars and bars
        for n in 1..=4usize {
            for d in 0..=5u32 {
                let count = enumerate_indices(A, n, d, IndexConstraint::Natural).len();
                let expect = (1..=n as u64).fold(1u64, |acc, i| acc * (d as u64 + i) / i);
                assert_eq!(count as u64, expect);
            }
        }
        // type D at odd rank drops the parity-obstructed vectors
        let d3 = enumerate_indices(D, 3, 3, IndexConstraint::Any);
        assert!(d3.iter().all(|i| length_vector(D, &i.v).is_ok()));
        assert!(!d3.iter().any(|i| i.v == vec![1, 1, -1]));
    }

    #[test]
    fn path_independence_small() {
        for (ty, n) in [(A, 3), (C, 2), (B, 2), (BC, 2), (D, 3)] {
            for hatted in [false, true] {
                assert_eq!(
                    path_independence_violation(ty, n, 3, hatted).unwrap(),
                    None,
                    "{ty} {n}"
                );
            }
        }
    }

    #[test]
    fn tau_raising_matches_sign_criterion() {
        for idx in enumerate_indices(D, 3, 4, IndexConstraint::Any) {
            let v = &idx.v;
            assert_eq!(
                is_raising(D, Generator::Tau(3), v).unwrap(),
                v[1] + v[2] > 0,
                "{v:?}"
            );
        }
    }

    #[test]
    fn triangular_and_homogeneous() {
        for ty in [A, B, C, D, BC] {
            let constraint = if ty == A {
                IndexConstraint::Natural
            } else {
                IndexConstraint::Any
            };
            for idx in enumerate_indices(ty, 2, 3, constraint) {
                for hatted in [false, true] {
                    let p = key(&idx.with_hat(hatted)).unwrap();
                    let n = idx.n();
                    let mut lead: ExpVec = idx.v.iter().copied().collect();
                    if ty == BC {
                        lead.push(0);
                    }
                    assert_eq!(p.coeff(&lead), int(1), "{idx} hat={hatted}");
                    for (e, _) in p.terms() {
                        let u = &e[..n];
                        if ty == A || hatted {
                            continue;
                        }
                        assert!(
                            u == idx.v.as_slice() || dominance_leq(&idx.v, u).unwrap(),
                            "{idx}: {u:?}"
                        );
                    }
                    if idx.v.iter().all(|&a| a >= 0) {
                        let deg: i32 = idx.v.iter().sum();
                        assert!(p
                            .terms()
                            .iter()
                            .all(|(e, _)| e[..n].iter().sum::<i32>() == deg));
                    }
                }
            }
        }
    }

    #[test]
    fn pi_stability() {
        let vars = key_varset(A, 3);
        let block = Block::x(&vars).unwrap();
        for idx in enumerate_indices(A, 3, 3, IndexConstraint::Natural) {
            let base = key(&idx).unwrap();
            for i in 1..3 {
                let got = apply(DividedDifference::pi(i), &block, &base).unwrap();
                let v = &idx.v;
                if v[i - 1] > v[i] {
                    let mut w = v.clone();
                    w.swap(i - 1, i);
                    assert_eq!(got, *key(&KeyIndex::new(A, w, false).unwrap()).unwrap());
                } else if v[i - 1] == v[i] {
                    assert_eq!(got, *base);
                }
            }
        }
    }
}
