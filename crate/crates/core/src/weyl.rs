//! Parameters (μ, ν), signed-permutation Weyl actions of types B and D, and
//! conjugacy search.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;


use crate::error::{Error, Result};
use crate::scalar::{HalfInt, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Spin(2n, ℂ)
    D,
    /// Spin(2n+1, ℂ)
    B,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::D => "D",
            Family::B => "B",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "D" | "d" => Ok(Family::D),
            "B" | "b" => Ok(Family::B),
            other => Err(Error::Malformed(format!("unknown group family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupTag {
    pub family: Family,
    pub rank: usize,
}

impl GroupTag {
    pub fn new(family: Family, rank: usize) -> Self {
        GroupTag { family, rank }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A parameter (μ, ν) with μ = λ_L − λ_R and ν = λ_L + λ_R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenuineParam {
    pub group: GroupTag,
    pub mu: Vec<HalfInt>,
    pub nu: Vec<Q>,
}

impl GenuineParam {
    pub fn new(family: Family, mu: Vec<HalfInt>, nu: Vec<Q>) -> Result<Self> {
        if mu.len() != nu.len() {
            return Err(Error::Dimension {
                expected: mu.len(),
                got: nu.len(),
            });
        }
        Ok(GenuineParam {
            group: GroupTag::new(family, mu.len()),
            mu,
            nu,
        })
    }

    /// Every μ-coordinate lies in ℤ + ½.
    pub fn is_genuine(&self) -> bool {
        self.mu.iter().all(|m| m.is_strict_half())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanglandsPair {
    pub lambda_l: Vec<Q>,
    pub lambda_r: Vec<Q>,
}

pub fn to_langlands(p: &GenuineParam) -> LanglandsPair {
    let two = Q::from_integer(2);
    let (lambda_l, lambda_r) = p
        .mu
        .iter()
        .zip(&p.nu)
        .map(|(m, v)| ((m.to_q() + v) / two, (v - m.to_q()) / two))
        .unzip();
    LanglandsPair { lambda_l, lambda_r }
}

pub fn from_langlands(family: Family, lp: &LanglandsPair) -> Result<GenuineParam> {
    if lp.lambda_l.len() != lp.lambda_r.len() {
        return Err(Error::Dimension {
            expected: lp.lambda_l.len(),
            got: lp.lambda_r.len(),
        });
    }
    let mut mu = Vec::with_capacity(lp.lambda_l.len());
    let mut nu = Vec::with_capacity(lp.lambda_l.len());
    for (l, r) in lp.lambda_l.iter().zip(&lp.lambda_r) {
        let m = HalfInt::from_q(l - r)
            .ok_or_else(|| Error::Malformed(format!("λ_L − λ_R = {} is not in ½ℤ", l - r)))?;
        mu.push(m);
        nu.push(l + r);
    }
    GenuineParam::new(family, mu, nu)
}

pub fn hermitian_dual(p: &GenuineParam) -> GenuineParam {
    GenuineParam {
        group: p.group,
        mu: p.mu.clone(),
        nu: p.nu.iter().map(|v| -v).collect(),
    }
}

/// Half the sum of positive roots.
pub fn rho(group: GroupTag) -> Vec<HalfInt> {
    let n = group.rank as i64;
    match group.family {
        Family::D => (0..n).rev().map(HalfInt::from_int).collect(),
        Family::B => (0..n).rev().map(|k| HalfInt::from_doubled(2 * k + 1)).collect(),
    }
}

/// Signed permutation: coordinate `j` is sent to position `perm[j]`, and the
/// entry landing at position `i` is multiplied by `signs[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn from_parts(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: signs.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Malformed("not a permutation".into()));
            }
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::Malformed("signs must be ±1".into()));
        }
        Ok(WeylElement { perm, signs })
    }

    /// The diagram automorphism of D_n flipping the last coordinate. It is a
    /// signed permutation but not an element of W(D_n).
    pub fn outer_automorphism(n: usize) -> Self {
        let mut w = WeylElement::identity(n);
        if n > 0 {
            w.signs[n - 1] = -1;
        }
        w
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn flips(&self) -> usize {
        self.signs.iter().filter(|s| **s < 0).count()
    }

    pub fn is_in_weyl_group(&self, family: Family) -> bool {
        match family {
            Family::B => true,
            Family::D => self.flips().is_multiple_of(2),
        }
    }

    pub fn is_permutation(&self) -> bool {
        self.flips() == 0
    }

    pub fn apply<T: Clone + Neg<Output = T>>(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: v.len(),
            });
        }
        let mut out: Vec<Option<T>> = vec![None; v.len()];
        for (j, x) in v.iter().enumerate() {
            let i = self.perm[j];
            out[i] = Some(if self.signs[i] < 0 { -x.clone() } else { x.clone() });
        }
        Ok(out.into_iter().map(|x| x.expect("perm is a bijection")).collect())
    }

    pub fn apply_param(&self, p: &GenuineParam) -> Result<GenuineParam> {
        Ok(GenuineParam {
            group: p.group,
            mu: self.apply(&p.mu)?,
            nu: self.apply(&p.nu)?,
        })
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement> {
        if self.len() != other.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: other.len(),
            });
        }
        let inv = invert_perm(&self.perm);
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let signs = (0..self.len())
            .map(|k| self.signs[k] * other.signs[inv[k]])
            .collect();
        Ok(WeylElement { perm, signs })
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            perm: invert_perm(&self.perm),
            signs: self.perm.iter().map(|&i| self.signs[i]).collect(),
        }
    }
}

fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (j, &i) in p.iter().enumerate() {
        inv[i] = j;
    }
    inv
}

#[derive(Debug, Clone)]
pub struct Dominantized {
    pub param: GenuineParam,
    /// Conjugates the input (after the outer automorphism, if flagged) to `param`.
    pub element: WeylElement,
    /// Set when D needed an odd number of flips; the flip on the last
    /// coordinate is then done by the outer automorphism.
    pub outer: bool,
}

/// Make μ non-negative and non-increasing. Ties in |μ| keep input order.
pub fn dominantize(p: &GenuineParam) -> Dominantized {
    let n = p.mu.len();
    let mut flip: Vec<bool> = p.mu.iter().map(|m| m.doubled() < 0).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| p.mu[b].abs().cmp(&p.mu[a].abs()));
    let mut perm = vec![0; n];
    for (pos, &j) in order.iter().enumerate() {
        perm[j] = pos;
    }

    let mut outer = false;
    let mut outer_coord = None;
    if p.group.family == Family::D && flip.iter().filter(|f| **f).count() % 2 == 1 {
        // a zero μ-coordinate absorbs the parity; otherwise the last
        // negative coordinate is flipped by the outer automorphism
        if let Some(z) = (0..n).rev().find(|&j| p.mu[j].doubled() == 0) {
            flip[z] = true;
        } else {
            outer = true;
            outer_coord = order.iter().rev().copied().find(|&j| flip[j]);
        }
    }

    let mut signs = vec![1i8; n];
    for j in 0..n {
        if flip[j] && Some(j) != outer_coord {
            signs[perm[j]] = -1;
        }
    }
    let element = WeylElement { perm, signs };
    let mut source = p.clone();
    if let Some(c) = outer_coord {
        source.mu[c] = -source.mu[c];
        source.nu[c] = -source.nu[c];
    }
    let param = element.apply_param(&source).expect("lengths agree");
    Dominantized {
        param,
        element,
        outer,
    }
}

/// Coordinate pair (μ_i, ν_i); the Weyl group acts on these simultaneously.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Coord(HalfInt, Q);

impl Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord(-self.0, -self.1)
    }
}

/// Some `w` in W(family) with `w·src = tgt`, if any.
pub fn find_signed_matching<K>(family: Family, src: &[K], tgt: &[K]) -> Option<WeylElement>
where
    K: Ord + Clone + Neg<Output = K>,
{
    let n = src.len();
    if tgt.len() != n {
        return None;
    }
    let canon = |v: &K| {
        let m = -v.clone();
        if m > *v {
            (m, false)
        } else {
            (v.clone(), true)
        }
    };
    // key -> (plus sources, minus sources); zero vectors land in plus
    let mut pools: BTreeMap<K, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (j, v) in src.iter().enumerate() {
        let (key, plus) = canon(v);
        let e = pools.entry(key).or_default();
        if plus {
            e.0.push(j);
        } else {
            e.1.push(j);
        }
    }
    let mut perm = vec![usize::MAX; n];
    let mut signs = vec![1i8; n];
    let mut free_slot = None;
    for (i, t) in tgt.iter().enumerate() {
        let (key, plus) = canon(t);
        let self_neg = -key.clone() == key;
        let pool = pools.get_mut(&key)?;
        let (same, other) = if plus {
            (&mut pool.0, &mut pool.1)
        } else {
            (&mut pool.1, &mut pool.0)
        };
        if let Some(j) = same.pop() {
            perm[j] = i;
        } else {
            let j = other.pop()?;
            perm[j] = i;
            signs[i] = -1;
        }
        if self_neg {
            free_slot = Some(i);
        }
    }
    if pools.values().any(|(a, b)| !a.is_empty() || !b.is_empty()) {
        return None;
    }
    let w = WeylElement { perm, signs };
    if family == Family::D && !w.is_in_weyl_group(family) {
        let i = free_slot?;
        let mut w = w;
        w.signs[i] = -w.signs[i];
        return Some(w);
    }
    Some(w)
}

/// Some `w` with `w·(μ₁, ν₁) = (μ₂, ν₂)`.
pub fn find_conjugator(p1: &GenuineParam, p2: &GenuineParam) -> Option<WeylElement> {
    if p1.group != p2.group {
        return None;
    }
    let a: Vec<Coord> = p1.mu.iter().zip(&p1.nu).map(|(m, v)| Coord(*m, *v)).collect();
    let b: Vec<Coord> = p2.mu.iter().zip(&p2.nu).map(|(m, v)| Coord(*m, *v)).collect();
    find_signed_matching(p1.group.family, &a, &b)
}

pub fn is_conjugate(p1: &GenuineParam, p2: &GenuineParam) -> bool {
    find_conjugator(p1, p2).is_some()
}

/// Some `w` with `wμ = μ` and `wν = −ν`.
pub fn hermitian_witness(p: &GenuineParam) -> Option<WeylElement> {
    find_conjugator(p, &hermitian_dual(p))
}

/// Weyl conjugacy of two single vectors.
pub fn vectors_conjugate(family: Family, a: &[Q], b: &[Q]) -> bool {
    find_signed_matching(family, a, b).is_some()
}
