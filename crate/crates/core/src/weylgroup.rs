//! Weyl groups of types A, B/C and D as signed permutations.
//!
//! Operators act on the right. A vector `v ∈ ℤ^n` is acted on by
//!
//! * `s_i` (`i < n`): swap entries `i` and `i + 1`,
//! * `s_n` (types B, C, BC): negate entry `n`,
//! * `τ_n` (type D): `(v_{n-1}, v_n) ↦ (-v_n, -v_{n-1})`,
//! * `θ_i`: negate entry `i` (not a simple generator; used by the
//!   factorized alternating sums).
//!
//! The same actions apply to Laurent monomials through their exponent
//! vectors. A group element is identified with the image of `[1, 2, ..., n]`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock, RwLock};

use crate::error::{domain, Error, Result};
use crate::laurent::{int, ratio, ExpVec, LaurentPoly};

/// Integer vector indexing exponents, keys and dominance comparisons.
pub type VectorZ = Vec<i32>;

/// Enumerating a group larger than `|B_n|` at this rank is refused.
pub const DEFAULT_ENUMERATION_CAP: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupType {
    A,
    B,
    C,
    D,
    BC,
}

impl GroupType {
    pub const ALL: [GroupType; 5] = [
        GroupType::A,
        GroupType::B,
        GroupType::C,
        GroupType::D,
        GroupType::BC,
    ];

    /// B, C and BC share one group; they only differ at the operator level.
    pub fn family(self) -> Family {
        match self {
            GroupType::A => Family::A,
            GroupType::B | GroupType::C | GroupType::BC => Family::B,
            GroupType::D => Family::D,
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupType::A => "A",
            GroupType::B => "B",
            GroupType::C => "C",
            GroupType::D => "D",
            GroupType::BC => "BC",
        };
        f.write_str(s)
    }
}

impl FromStr for GroupType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(GroupType::A),
            "B" => Ok(GroupType::B),
            "C" => Ok(GroupType::C),
            "D" => Ok(GroupType::D),
            "BC" => Ok(GroupType::BC),
            other => Err(Error::Parse(format!("unknown group type {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    D,
}

/// Simple generator, 1-based: `S(i)` is `s_i` (with `S(n)` the sign change of
/// types B/C), `Tau(n)` is `τ_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    S(usize),
    Tau(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::S(i) => write!(f, "s{i}"),
            Generator::Tau(n) => write!(f, "t{n}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad generator {s:?}"));
        let (head, idx) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let idx: usize = idx.parse().map_err(|_| bad())?;
        match head {
            "s" => Ok(Generator::S(idx)),
            "t" => Ok(Generator::Tau(idx)),
            _ => Err(bad()),
        }
    }
}

pub fn format_word(word: &[Generator]) -> String {
    word.iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_word(s: &str) -> Result<Vec<Generator>> {
    s.split_whitespace().map(str::parse).collect()
}

/// Simple generators of the type at rank `n`, in the fixed order `s_1 < ⋯ < s_n / τ_n`.
pub fn generators(ty: GroupType, n: usize) -> Vec<Generator> {
    let mut gens: Vec<Generator> = (1..n).map(Generator::S).collect();
    match ty.family() {
        Family::A => {}
        Family::B => gens.push(Generator::S(n)),
        Family::D if n >= 2 => gens.push(Generator::Tau(n)),
        Family::D => {}
    }
    gens
}

pub fn check_generator(ty: GroupType, n: usize, g: Generator) -> Result<()> {
    if generators(ty, n).contains(&g) {
        Ok(())
    } else {
        domain(format!(
            "generator {g} is not available in type {ty} at rank {n}"
        ))
    }
}

/// Applies a generator in place, without validating it against a type.
pub fn apply_generator(g: Generator, v: &mut [i32]) {
    let n = v.len();
    match g {
        Generator::S(i) if i < n => v.swap(i - 1, i),
        Generator::S(_) => v[n - 1] = -v[n - 1],
        Generator::Tau(_) => {
            let (a, b) = (v[n - 2], v[n - 1]);
            v[n - 2] = -b;
            v[n - 1] = -a;
        }
    }
}

pub fn act_vector(ty: GroupType, g: Generator, v: &[i32]) -> Result<VectorZ> {
    check_generator(ty, v.len(), g)?;
    let mut out = v.to_vec();
    apply_generator(g, &mut out);
    Ok(out)
}

pub fn apply_word_vector(word: &[Generator], v: &[i32]) -> VectorZ {
    let mut out = v.to_vec();
    for &g in word {
        apply_generator(g, &mut out);
    }
    out
}

/// `θ_i` (1-based) on a vector.
pub fn theta_vector(i: usize, v: &[i32]) -> VectorZ {
    let mut out = v.to_vec();
    out[i - 1] = -out[i - 1];
    out
}

/// Lifts a vector map on the block coordinates to a map on full exponent vectors.
fn on_block(block: &[usize], e: &[i32], f: impl Fn(&mut [i32])) -> ExpVec {
    let mut sub: Vec<i32> = block.iter().map(|&i| e[i]).collect();
    f(&mut sub);
    let mut out = ExpVec::from_slice(e);
    for (&i, x) in block.iter().zip(sub) {
        out[i] = x;
    }
    out
}

/// Monomial action `x^v ↦ x^{v·g}` on the variables listed in `block`.
pub fn act_poly(
    ty: GroupType,
    g: Generator,
    block: &[usize],
    f: &LaurentPoly,
) -> Result<LaurentPoly> {
    check_generator(ty, block.len(), g)?;
    Ok(f.map_exponents(|e| on_block(block, e, |v| apply_generator(g, v))))
}

pub(crate) fn act_poly_unchecked(g: Generator, block: &[usize], f: &LaurentPoly) -> LaurentPoly {
    f.map_exponents(|e| on_block(block, e, |v| apply_generator(g, v)))
}

pub fn theta_poly(i: usize, block: &[usize], f: &LaurentPoly) -> LaurentPoly {
    f.map_exponents(|e| on_block(block, e, |v| v[i - 1] = -v[i - 1]))
}

/// Element of a classical Weyl group: image of `[1..n]` and a word producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub image: VectorZ,
    pub word: Vec<Generator>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement {
            image: (1..=n as i32).collect(),
            word: Vec::new(),
        }
    }

    pub fn from_word(n: usize, word: Vec<Generator>) -> Self {
        let image = apply_word_vector(&word, &(1..=n as i32).collect::<Vec<_>>());
        GroupElement { image, word }
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `v·w`: entry `j` is `sign(image_j) · v_{|image_j|}`.
    pub fn act(&self, v: &[i32]) -> VectorZ {
        self.image
            .iter()
            .map(|&e| e.signum() * v[(e.unsigned_abs() - 1) as usize])
            .collect()
    }

    pub fn act_poly(&self, block: &[usize], f: &LaurentPoly) -> LaurentPoly {
        f.map_exponents(|e| {
            on_block(block, e, |v| {
                let w = self.act(v);
                v.copy_from_slice(&w);
            })
        })
    }
}

/// All elements of the group by breadth-first search from the identity; each
/// word is reduced, so `word.len()` is the Coxeter length.
pub fn enumerate_group(ty: GroupType, n: usize) -> Result<Vec<GroupElement>> {
    enumerate_group_capped(ty, n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_group_capped(ty: GroupType, n: usize, cap: usize) -> Result<Vec<GroupElement>> {
    if n > cap {
        return Err(Error::Resource(format!(
            "group enumeration for rank {n} exceeds the cap {cap}"
        )));
    }
    if n == 0 {
        return domain("rank must be positive");
    }
    let gens = generators(ty, n);
    let start = GroupElement::identity(n);
    let mut seen: HashMap<VectorZ, usize> = HashMap::from([(start.image.clone(), 0)]);
    let mut out = vec![start];
    let mut head = 0;
    while head < out.len() {
        for &g in &gens {
            let mut img = out[head].image.clone();
            apply_generator(g, &mut img);
            if !seen.contains_key(&img) {
                let mut word = out[head].word.clone();
                word.push(g);
                seen.insert(img.clone(), out.len());
                out.push(GroupElement { image: img, word });
            }
        }
        head += 1;
    }
    Ok(out)
}

/// Decreasing reordering of `v` (type A) or of `|v|` (other types).
pub fn dominant(ty: GroupType, v: &[i32]) -> VectorZ {
    let mut out: VectorZ = match ty.family() {
        Family::A => v.to_vec(),
        _ => v.iter().map(|x| x.abs()).collect(),
    };
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

type LengthTable = HashMap<VectorZ, usize>;
type LengthTables = HashMap<(Family, VectorZ), Arc<LengthTable>>;

static LENGTHS: LazyLock<RwLock<LengthTables>> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// Distances from `lambda` to every vector of its orbit (memoized).
pub fn orbit_lengths(ty: GroupType, lambda: &[i32]) -> Arc<LengthTable> {
    let key = (ty.family(), lambda.to_vec());
    if let Some(t) = LENGTHS.read().unwrap().get(&key) {
        return t.clone();
    }
    let gens = generators(ty, lambda.len());
    let mut dist: LengthTable = HashMap::from([(lambda.to_vec(), 0)]);
    let mut queue = VecDeque::from([lambda.to_vec()]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for &g in &gens {
            let mut w = u.clone();
            apply_generator(g, &mut w);
            if !dist.contains_key(&w) {
                dist.insert(w.clone(), d + 1);
                queue.push_back(w);
            }
        }
    }
    let table = Arc::new(dist);
    LENGTHS.write().unwrap().entry(key).or_insert(table).clone()
}

/// Minimal number of generators carrying `v` to its dominant representative.
pub fn length_vector(ty: GroupType, v: &[i32]) -> Result<usize> {
    if v.is_empty() {
        return domain("empty vector");
    }
    let lambda = dominant(ty, v);
    match orbit_lengths(ty, &lambda).get(v) {
        Some(&d) => Ok(d),
        None => domain(format!(
            "{v:?} is not in the type-{ty} orbit of {lambda:?} (odd number of sign changes, no zero entry)"
        )),
    }
}

/// The displayed reduced decomposition of the longest element.
pub fn max_element_word(ty: GroupType, n: usize) -> Result<Vec<Generator>> {
    use Generator::{Tau, S};
    let mut word = Vec::new();
    match ty.family() {
        Family::A => {
            for k in 1..n {
                word.extend((1..=k).rev().map(S));
            }
        }
        Family::B => {
            for k in 1..=n {
                let low = n - k + 1;
                word.extend((low..n).map(S));
                word.push(S(n));
                word.extend((low..n).rev().map(S));
            }
        }
        Family::D => {
            if n < 2 {
                return domain("type D needs rank at least 2");
            }
            for j in (1..n).rev() {
                word.extend((j..n).map(S));
                word.push(Tau(n));
                word.extend((j..n - 1).rev().map(S));
            }
        }
    }
    Ok(word)
}

/// `Σ_w (-1)^{ℓ(w)} f^w` by explicit enumeration of the group.
pub fn alternating_sum_apply(
    ty: GroupType,
    block: &[usize],
    f: &LaurentPoly,
) -> Result<LaurentPoly> {
    let group = enumerate_group(ty, block.len())?;
    let terms = group.iter().flat_map(|w| {
        let sign = if w.length() % 2 == 0 { int(1) } else { int(-1) };
        w.act_poly(block, f)
            .into_terms()
            .into_iter()
            .map(move |(e, c)| (e, c * &sign))
    });
    Ok(LaurentPoly::from_terms(f.vars(), terms))
}

/// The factorized alternating sums: `(1-θ_1)⋯(1-θ_n) Σ_{σ∈S_n} (-1)^{ℓ(σ)} σ`
/// for B/C, and the half-sum of the `(1-θ)` and `(1+θ)` products for D.
pub fn factored_alternating_sum(
    ty: GroupType,
    block: &[usize],
    f: &LaurentPoly,
) -> Result<LaurentPoly> {
    let theta_product = |sign: i64| {
        let mut acc = f.clone();
        for i in 1..=block.len() {
            let flipped = theta_poly(i, block, &acc).scale(&int(sign));
            acc = &acc + &flipped;
        }
        acc
    };
    let theta_part = match ty.family() {
        Family::A => return alternating_sum_apply(GroupType::A, block, f),
        Family::B => theta_product(-1),
        Family::D => (&theta_product(-1) + &theta_product(1)).scale(&ratio(1, 2)),
    };
    alternating_sum_apply(GroupType::A, block, &theta_part)
}
