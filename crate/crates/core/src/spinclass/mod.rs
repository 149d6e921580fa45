//! End-to-end classification of genuine parameters: μ-blocks, residue
//! classes of ν, string pairs, certificates and witnesses.

pub mod pairs;

use std::collections::BTreeMap;
use std::fmt;

use num::Signed;

use crate::error::{Error, Result};
use crate::glclass::{classify_gl, classify_gl_genuine_block, GlFactor, GlStatus};
use crate::rewriter::{normalize_to_base, NormalizedBase};
use crate::scalar::{fmt_q, half, residue_class, HalfInt, Q};
use crate::weyl::{dominantize, hermitian_witness, to_langlands, Family, GenuineParam, LanglandsPair};

pub use pairs::{
    build_certificate, decompose_alpha_beta, enumerate_pairs, extract_pairs, extract_pairs_b,
    extract_pairs_d, peel_equalities, unitarity_test, SteinFactor, StringPairs, Unitarity,
    UnitaryCertificate, Violation,
};

/// η(q) in rank `rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinRelevantKType {
    pub family: Family,
    pub rank: usize,
    pub q: usize,
    pub weight: Vec<HalfInt>,
}

impl fmt::Display for SpinRelevantKType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "η({})", self.q)
    }
}

/// D: (3/2 ×q, ½ ×(R−q−1), (−1)^q/2), and (3/2 ×(R−1), (−1)^R·3/2) at q = R.
/// B: (3/2 ×q, ½ ×(R−q)).
pub fn eta(family: Family, rank: usize, q: usize) -> Result<SpinRelevantKType> {
    if q > rank || (family == Family::D && rank == 0) {
        return Err(Error::Precondition(format!("η({q}) needs q ≤ rank {rank}")));
    }
    let three = HalfInt::from_doubled(3);
    let mut weight = Vec::with_capacity(rank);
    match family {
        Family::D if q == rank => {
            weight.extend(std::iter::repeat_n(three, rank - 1));
            weight.push(if rank.is_multiple_of(2) { three } else { -three });
        }
        Family::D => {
            weight.extend(std::iter::repeat_n(three, q));
            weight.extend(std::iter::repeat_n(HalfInt::HALF, rank - q - 1));
            weight.push(if q.is_multiple_of(2) { HalfInt::HALF } else { -HalfInt::HALF });
        }
        Family::B => {
            weight.extend(std::iter::repeat_n(three, q));
            weight.extend(std::iter::repeat_n(HalfInt::HALF, rank - q));
        }
    }
    Ok(SpinRelevantKType {
        family,
        rank,
        q,
        weight,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    NotGenuine,
    NotHermitian,
    Unitary,
    NonUnitary,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::NotGenuine => "not genuine",
            Status::NotHermitian => "not Hermitian",
            Status::Unitary => "unitary",
            Status::NonUnitary => "non-unitary",
        })
    }
}

/// A K-type on which the Hermitian form is indefinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Lowest K-type of the μ-block r shifted by (1 ×ones, 0, …, −1 ×ones).
    BottomLayer {
        r: i64,
        ones: usize,
        weight: Vec<HalfInt>,
    },
    /// η(q) on the μ = ½ block, preceded by the other μ-coordinates.
    SpinRelevant {
        ktype: SpinRelevantKType,
        weight: Vec<HalfInt>,
    },
}

impl Witness {
    pub fn weight(&self) -> &[HalfInt] {
        match self {
            Witness::BottomLayer { weight, .. } | Witness::SpinRelevant { weight, .. } => weight,
        }
    }

    pub fn eta_index(&self) -> Option<usize> {
        match self {
            Witness::SpinRelevant { ktype, .. } => Some(ktype.q),
            Witness::BottomLayer { .. } => None,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::BottomLayer { r, ones, .. } => write!(f, "block r={r} shifted by {ones}"),
            Witness::SpinRelevant { ktype, .. } => write!(f, "{ktype}"),
        }
    }
}

/// Where non-unitarity was detected first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    /// A pseudo-spherical GL block with μ-coordinates r − ½.
    GlBlock { r: i64, status: GlStatus },
    /// The residue classes ±t, ±(1 − t) of the μ = ½ block.
    Classes { t: Q, status: GlStatus },
    /// The ½-class is not a union of admissible strings.
    MalformedStrings(String),
    /// The string pairs violate the inequality at this column.
    Inequality { index: usize, kind: Violation },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::GlBlock { r, status } => write!(f, "GL block r={r}: {status:?}"),
            Reason::Classes { t, status } => write!(f, "classes ±{}: {status:?}", fmt_q(t)),
            Reason::MalformedStrings(m) => write!(f, "½-class: {m}"),
            Reason::Inequality { index, kind } => write!(f, "column {index}: {kind}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFactors {
    /// μ-coordinates of the block are r − ½.
    pub r: i64,
    pub factors: Vec<GlFactor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub gl: Vec<BlockFactors>,
    pub pairs: Option<StringPairs>,
    pub half: Option<UnitaryCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Option<Certificate>,
    pub witness: Option<Witness>,
    pub reason: Option<Reason>,
    /// String pairs of the ½-class, when they could be formed.
    pub pairs: Option<StringPairs>,
    /// Rewriting transcript for an inequality violation.
    pub reduction: Option<NormalizedBase>,
}

impl Verdict {
    fn bare(status: Status) -> Self {
        Verdict {
            status,
            certificate: None,
            witness: None,
            reason: None,
            pairs: None,
            reduction: None,
        }
    }

    pub fn is_unitary(&self) -> bool {
        self.status == Status::Unitary
    }

    /// Unitary with a strict core and nothing else: the Brega (type D) or
    /// unipotent (type B) representations.
    pub fn is_strict(&self) -> bool {
        self.certificate.as_ref().is_some_and(|c| {
            c.gl.iter().all(|b| b.factors.is_empty())
                && c.half.as_ref().is_some_and(|h| h.stein.is_empty() && h.core.is_some())
        })
    }
}

/// ν grouped by the class t ∈ (−1, 1] with ν_i − t ∈ 2ℤ.
pub fn partition_nt(nu: &[Q]) -> BTreeMap<Q, Vec<Q>> {
    let mut out: BTreeMap<Q, Vec<Q>> = BTreeMap::new();
    for v in nu {
        out.entry(residue_class(*v)).or_default().push(*v);
    }
    out
}

/// η(q) pinned by an unpadded base block, in the rank 2n of the pairs.
pub fn witness(p: &StringPairs, nb: &NormalizedBase) -> Option<SpinRelevantKType> {
    if !nb.steps.is_empty() {
        return None;
    }
    let q = nb.base?.witness_index(p.family()) as usize;
    eta(p.family(), 2 * p.n(), q).ok()
}

/// μ = ½ ×2n and ν = (N descending, −N descending) for the ½-class N.
pub fn pairs_to_param(p: &StringPairs) -> GenuineParam {
    let n_half = p.to_multiset();
    let mut nu: Vec<Q> = n_half.iter().map(|v| v.to_q()).collect();
    let mut neg: Vec<Q> = n_half.iter().map(|v| -v.to_q()).collect();
    neg.sort_by(|a, b| b.cmp(a));
    nu.extend(neg);
    let mu = vec![HalfInt::HALF; nu.len()];
    GenuineParam::new(p.family(), mu, nu).expect("lengths agree")
}

fn check_dims(p: &GenuineParam) -> Result<()> {
    for len in [p.mu.len(), p.nu.len()] {
        if len != p.group.rank {
            return Err(Error::Dimension {
                expected: p.group.rank,
                got: len,
            });
        }
    }
    Ok(())
}

struct Failure {
    reason: Reason,
    witness: Option<Witness>,
    pairs: Option<StringPairs>,
    reduction: Option<NormalizedBase>,
}

/// The μ = ½ block: t-classes, then the ½-class.
struct HalfBlock {
    gl: Vec<GlFactor>,
    pairs: Option<StringPairs>,
    half: Option<UnitaryCertificate>,
    reduction: Option<NormalizedBase>,
}

fn group_key(t: Q) -> Option<Q> {
    let a = t.abs();
    let h = half();
    if a == h {
        None
    } else if a < h {
        Some(a)
    } else {
        Some(Q::from_integer(1) - a)
    }
}

fn half_block(
    family: Family,
    nu: &[Q],
    prefix: &[HalfInt],
) -> Result<std::result::Result<HalfBlock, Failure>> {
    let m1 = nu.len();
    let mk = |q: usize| -> Result<Witness> {
        let ktype = eta(family, m1, q)?;
        let mut weight = prefix.to_vec();
        weight.extend(&ktype.weight);
        Ok(Witness::SpinRelevant { ktype, weight })
    };

    let mut groups: BTreeMap<Q, Vec<(Q, i8)>> = BTreeMap::new();
    let mut n_half = Vec::new();
    for (t, vals) in partition_nt(nu) {
        match group_key(t) {
            None => {
                if t == half() {
                    n_half.extend(vals.iter().map(|v| HalfInt::from_q(*v).expect("½ mod 2")));
                }
            }
            Some(key) => {
                let sign = if t.abs() < half() { 1 } else { -1 };
                groups.entry(key).or_default().extend(vals.iter().map(|v| (*v, sign)));
            }
        }
    }

    let mut gl = Vec::new();
    for (key, entries) in &groups {
        let v = classify_gl_genuine_block(entries)?;
        if !v.is_unitary() {
            let ones = v.witness.as_ref().map_or(1, |w| w.ones);
            let f = Failure {
                reason: Reason::Classes {
                    t: *key,
                    status: v.status,
                },
                witness: Some(mk(ones)?),
                pairs: None,
                reduction: None,
            };
            return Ok(Err(f));
        }
        gl.extend(v.factors);
    }

    if n_half.is_empty() {
        return Ok(Ok(HalfBlock {
            gl,
            pairs: None,
            half: None,
            reduction: None,
        }));
    }
    let p = match extract_pairs(family, &n_half) {
        Ok(p) => p,
        Err(Error::Malformed(m)) => {
            let f = Failure {
                reason: Reason::MalformedStrings(m),
                witness: Some(mk(1)?),
                pairs: None,
                reduction: None,
            };
            return Ok(Err(f));
        }
        Err(e) => return Err(e),
    };
    match unitarity_test(&p) {
        Unitarity::Satisfied { .. } => Ok(Ok(HalfBlock {
            gl,
            half: Some(build_certificate(&p)?),
            pairs: Some(p),
            reduction: None,
        })),
        Unitarity::Violated { index, kind } => {
            let nb = normalize_to_base(&p)?;
            let w = match witness(&p, &nb) {
                Some(k) => Some(mk(k.q)?),
                None => None,
            };
            let f = Failure {
                reason: Reason::Inequality { index, kind },
                witness: w,
                pairs: Some(p),
                reduction: Some(nb),
            };
            Ok(Err(f))
        }
    }
}

pub fn classify(p: &GenuineParam) -> Result<Verdict> {
    check_dims(p)?;
    if !p.is_genuine() {
        return Ok(Verdict::bare(Status::NotGenuine));
    }
    let dom = dominantize(p).param;
    if hermitian_witness(&dom).is_none() {
        return Ok(Verdict::bare(Status::NotHermitian));
    }
    let family = dom.group.family;

    // μ is non-increasing, so blocks are contiguous and come in descending r
    let mut blocks: Vec<(i64, std::ops::Range<usize>)> = Vec::new();
    for (i, m) in dom.mu.iter().enumerate() {
        let r = (m.doubled() + 1) / 2;
        match blocks.last_mut() {
            Some((last, range)) if *last == r => range.end = i + 1,
            _ => blocks.push((r, i..i + 1)),
        }
    }

    let mut gl_certs = Vec::new();
    let mut half_range = None;
    for (r, range) in &blocks {
        if *r == 1 {
            half_range = Some(range.clone());
            continue;
        }
        let v = match classify_gl(&dom.nu[range.clone()]) {
            Ok(v) => v,
            Err(Error::NotHermitian) => return Ok(Verdict::bare(Status::NotHermitian)),
            Err(e) => return Err(e),
        };
        if !v.is_unitary() {
            let ones = v.witness.as_ref().map_or(1, |w| w.ones);
            let mut weight = dom.mu.clone();
            let len = range.len();
            for k in 0..ones.min(len / 2) {
                weight[range.start + k] = weight[range.start + k] + HalfInt::from_int(1);
                weight[range.end - 1 - k] = weight[range.end - 1 - k] - HalfInt::from_int(1);
            }
            weight.sort_by(|a, b| b.cmp(a));
            let mut out = Verdict::bare(Status::NonUnitary);
            out.reason = Some(Reason::GlBlock { r: *r, status: v.status });
            out.witness = Some(Witness::BottomLayer { r: *r, ones, weight });
            return Ok(out);
        }
        gl_certs.push(BlockFactors { r: *r, factors: v.factors });
    }

    let mut pairs = None;
    let mut half_cert = None;
    if let Some(range) = half_range {
        let prefix = &dom.mu[..range.start];
        match half_block(family, &dom.nu[range.clone()], prefix) {
            Err(Error::NotHermitian) => return Ok(Verdict::bare(Status::NotHermitian)),
            Err(e) => return Err(e),
            Ok(Err(f)) => {
                let mut out = Verdict::bare(Status::NonUnitary);
                out.reason = Some(f.reason);
                out.witness = f.witness;
                out.pairs = f.pairs;
                out.reduction = f.reduction;
                return Ok(out);
            }
            Ok(Ok(hb)) => {
                if !hb.gl.is_empty() {
                    gl_certs.push(BlockFactors { r: 1, factors: hb.gl });
                }
                debug_assert!(hb.reduction.is_none());
                pairs = hb.pairs;
                half_cert = hb.half;
            }
        }
    }
    let mut out = Verdict::bare(Status::Unitary);
    out.pairs = pairs.clone();
    out.certificate = Some(Certificate {
        gl: gl_certs,
        pairs,
        half: half_cert,
    });
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub pairs: StringPairs,
    pub langlands: LanglandsPair,
    pub verdict: Verdict,
    pub strict: bool,
}

/// One row per string-pair array of size n, in enumeration order.
pub fn table(family: Family, n: u32) -> Result<Vec<TableRow>> {
    enumerate_pairs(family, n)
        .into_iter()
        .map(|pairs| {
            let param = pairs_to_param(&pairs);
            let verdict = classify(&param)?;
            Ok(TableRow {
                strict: unitarity_test(&pairs) == (Unitarity::Satisfied { strict: true }),
                langlands: to_langlands(&param),
                pairs,
                verdict,
            })
        })
        .collect()
}
