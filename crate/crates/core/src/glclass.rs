//! Pseudo-spherical GL(n, ℂ) pieces: chain decomposition of ν, pairing of
//! chains with their negatives, and Stein complementary series.

use std::collections::BTreeMap;

use num::Signed;

use crate::error::{Error, Result};
use crate::scalar::{residue_class, Q};

/// A strictly decreasing run whose gaps are even positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub values: Vec<Q>,
    /// det/|det| twist exponent sign carried by the block.
    pub sign: i8,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// All gaps equal to 2.
    pub fn is_string(&self) -> bool {
        self.values.windows(2).all(|w| w[0] - w[1] == Q::from_integer(2))
    }

    pub fn center(&self) -> Q {
        (self.values[0] + self.values[self.values.len() - 1]) / Q::from_integer(2)
    }

    pub fn negated(&self) -> Vec<Q> {
        self.values.iter().rev().map(|v| -v).collect()
    }

    pub fn is_self_dual(&self) -> bool {
        self.negated() == self.values
    }
}

fn counts(nu: &[Q]) -> BTreeMap<Q, usize> {
    let mut m = BTreeMap::new();
    for v in nu {
        *m.entry(*v).or_insert(0) += 1;
    }
    m
}

/// Greedy chain extraction. Each round takes the longest chain available;
/// ties go to the larger top value. The longest chain available is the set
/// of distinct values of one residue class mod 2.
pub fn decompose_chains(nu: &[Q]) -> Vec<Vec<Q>> {
    let mut left = counts(nu);
    let mut out = Vec::new();
    while !left.is_empty() {
        let mut classes: BTreeMap<Q, Vec<Q>> = BTreeMap::new();
        for v in left.keys().rev() {
            classes.entry(residue_class(*v)).or_default().push(*v);
        }
        let best = classes
            .into_values()
            .max_by(|a, b| a.len().cmp(&b.len()).then(a[0].cmp(&b[0])).then(a.cmp(b)))
            .expect("nonempty");
        for v in &best {
            let c = left.get_mut(v).expect("present");
            *c -= 1;
            if *c == 0 {
                left.remove(v);
            }
        }
        out.push(best);
    }
    out
}

/// (a−1+t, a−3+t, …, −a+1+t)
pub fn comp_nu(a: usize, t: Q) -> Vec<Q> {
    let a = a as i64;
    (0..a).map(|k| Q::from_integer(a - 1 - 2 * k) + t).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlFactor {
    /// Character of GL(a): a centered gap-2 string.
    TrivialString { a: usize, twist: i8 },
    /// Ind(comp(a, t) ⊗ its dual) with |t| < 1.
    SteinPair { a: usize, t: Q, twist: i8 },
}

impl GlFactor {
    pub fn size(&self) -> usize {
        match self {
            GlFactor::TrivialString { a, .. } => *a,
            GlFactor::SteinPair { a, .. } => 2 * a,
        }
    }
}

/// K-type shift (1^ones, 0, …, 0, (−1)^ones) on a block of `block_len`
/// coordinates, relative to the block's lowest K-type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlWitness {
    pub ones: usize,
    pub block_len: usize,
}

impl GlWitness {
    pub fn shift(&self) -> Vec<i64> {
        let mut s = vec![0; self.block_len];
        for k in 0..self.ones.min(self.block_len / 2) {
            s[k] = 1;
            s[self.block_len - 1 - k] = -1;
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlFailure {
    /// Some chain has a gap larger than 2.
    WideGap,
    /// A Stein pair with |t| ≥ 1.
    ShiftTooLarge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlStatus {
    UnitaryFactors,
    NonUnitary(GlFailure),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlVerdict {
    pub status: GlStatus,
    pub factors: Vec<GlFactor>,
    pub witness: Option<GlWitness>,
}

impl GlVerdict {
    pub fn is_unitary(&self) -> bool {
        self.status == GlStatus::UnitaryFactors
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteinStatus {
    Unitary,
    /// Indefinite at the shift with this many ±1 entries.
    NonUnitary { ones: usize },
    /// Integer |t|: ν_{a,t} ∪ −ν_{a,t} regroups into other chains.
    Reducible,
}

pub fn stein_pair_status(a: usize, t: Q) -> SteinStatus {
    let t = t.abs();
    if t < Q::from_integer(1) {
        SteinStatus::Unitary
    } else if t.is_integer() {
        SteinStatus::Reducible
    } else {
        let q = t.floor().to_integer() as usize;
        let ones = if q <= a { a - q + 1 } else { 1 };
        SteinStatus::NonUnitary { ones }
    }
}

fn is_symmetric(nu: &[Q]) -> bool {
    let mut a = nu.to_vec();
    let mut b: Vec<Q> = nu.iter().map(|v| -v).collect();
    a.sort();
    b.sort();
    a == b
}

fn note(slot: &mut Option<(GlFailure, usize)>, f: GlFailure, ones: usize) {
    if slot.is_none() {
        *slot = Some((f, ones));
    }
}

/// Spherical GL block with a single twist sign.
fn classify_signed(nu: &[Q], sign: i8, block_len: usize) -> Result<GlVerdict> {
    if !is_symmetric(nu) {
        return Err(Error::NotHermitian);
    }
    let chains: Vec<Chain> = decompose_chains(nu)
        .into_iter()
        .map(|values| Chain { values, sign })
        .collect();
    let mut used = vec![false; chains.len()];
    let mut factors = Vec::new();
    let mut failure: Option<(GlFailure, usize)> = None;
    for i in 0..chains.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let c = &chains[i];
        if c.is_self_dual() {
            if c.is_string() {
                factors.push(GlFactor::TrivialString {
                    a: c.len(),
                    twist: sign,
                });
            } else {
                note(&mut failure, GlFailure::WideGap, 1);
            }
            continue;
        }
        let dual = c.negated();
        let j = (i + 1..chains.len())
            .find(|&j| !used[j] && chains[j].values == dual)
            .ok_or(Error::NotHermitian)?;
        used[j] = true;
        if !c.is_string() {
            note(&mut failure, GlFailure::WideGap, 1);
            continue;
        }
        let t = c.center().abs();
        match stein_pair_status(c.len(), t) {
            SteinStatus::Unitary => factors.push(GlFactor::SteinPair {
                a: c.len(),
                t,
                twist: sign,
            }),
            SteinStatus::NonUnitary { ones } => note(&mut failure, GlFailure::ShiftTooLarge, ones),
            // a layered decomposition never pairs chains of one residue class
            SteinStatus::Reducible => return Err(Error::NotHermitian),
        }
    }
    Ok(match failure {
        None => GlVerdict {
            status: GlStatus::UnitaryFactors,
            factors,
            witness: None,
        },
        Some((f, ones)) => GlVerdict {
            status: GlStatus::NonUnitary(f),
            factors,
            witness: Some(GlWitness { ones, block_len }),
        },
    })
}

/// Spherical (or uniformly twisted) GL(n) parameter.
pub fn classify_gl(nu: &[Q]) -> Result<GlVerdict> {
    classify_signed(nu, 1, nu.len())
}

/// Block whose coordinates carry individual twist signs; each sign group is
/// classified on its own and the results are merged.
pub fn classify_gl_genuine_block(entries: &[(Q, i8)]) -> Result<GlVerdict> {
    let mut factors = Vec::new();
    let mut first_failure = None;
    for sign in [1i8, -1] {
        let nu: Vec<Q> = entries.iter().filter(|e| e.1 == sign).map(|e| e.0).collect();
        if nu.is_empty() {
            continue;
        }
        let v = classify_signed(&nu, sign, entries.len())?;
        if first_failure.is_none() && !v.is_unitary() {
            first_failure = Some((v.status, v.witness));
        }
        factors.extend(v.factors);
    }
    Ok(match first_failure {
        None => GlVerdict {
            status: GlStatus::UnitaryFactors,
            factors,
            witness: None,
        },
        Some((status, witness)) => GlVerdict {
            status,
            factors,
            witness,
        },
    })
}
