//! Two-row string pairs (x; y) encoding the ½-class of ν.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::orbits::{attach_orbit, OrbitColumns};
use crate::scalar::HalfInt;
use crate::weyl::Family;

/// Columns (x_i; y_i), both rows non-increasing, no (0; 0) column.
/// Column i stands for the string 2x_i − 3/2, …, ½ − 2y_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StringPairs {
    family: Family,
    x: Vec<u32>,
    y: Vec<u32>,
}

impl StringPairs {
    pub fn new(family: Family, x: Vec<u32>, y: Vec<u32>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Dimension {
                expected: x.len(),
                got: y.len(),
            });
        }
        if x.windows(2).any(|w| w[0] < w[1]) || y.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Malformed("rows must be non-increasing".into()));
        }
        if x.iter().zip(&y).any(|(a, b)| *a == 0 && *b == 0) {
            return Err(Error::Malformed("empty column".into()));
        }
        if family == Family::D && x.contains(&0) {
            return Err(Error::Malformed("x entries must be positive in type D".into()));
        }
        Ok(StringPairs { family, x, y })
    }

    pub fn from_columns(family: Family, cols: &[(u32, u32)]) -> Result<Self> {
        let (x, y) = cols.iter().copied().unzip();
        StringPairs::new(family, x, y)
    }

    /// Parse `"x1,x2,..;y1,y2,.."`. A missing y row means all zeros; short y
    /// rows are padded with zeros.
    pub fn parse(family: Family, s: &str) -> Result<Self> {
        let (xs, ys) = s.split_once(';').unwrap_or((s, ""));
        let row = |r: &str| -> Result<Vec<u32>> {
            r.split([',', ' '])
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Malformed(format!("bad entry {t:?}")))
                })
                .collect()
        };
        let mut x = row(xs)?;
        let mut y = row(ys)?;
        let k = x.len().max(y.len());
        x.resize(k, 0);
        y.resize(k, 0);
        StringPairs::new(family, x, y)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn x(&self) -> &[u32] {
        &self.x
    }

    pub fn y(&self) -> &[u32] {
        &self.y
    }

    pub fn k(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn columns(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.x.iter().copied().zip(self.y.iter().copied())
    }

    /// Σ(x_i + y_i), the size of the ½-class.
    pub fn n(&self) -> usize {
        self.columns().map(|(a, b)| (a + b) as usize).sum()
    }

    /// The ½-class multiset, sorted descending.
    pub fn to_multiset(&self) -> Vec<HalfInt> {
        let mut v: Vec<HalfInt> = self
            .columns()
            .flat_map(|(a, b)| (-(b as i64)..a as i64).map(|m| HalfInt::from_doubled(1 + 4 * m)))
            .collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    }
}

impl fmt::Display for StringPairs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[u32]| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "({};{})", row(&self.x), row(&self.y))
    }
}

/// Multiplicity of ½ + 2m, keyed by m.
fn profile(n_half: &[HalfInt]) -> Result<BTreeMap<i64, u32>> {
    let mut c = BTreeMap::new();
    for v in n_half {
        let d = v.doubled();
        if (d - 1).rem_euclid(4) != 0 {
            return Err(Error::Malformed(format!("{v} is not ½ mod 2")));
        }
        *c.entry((d - 1).div_euclid(4)).or_insert(0) += 1;
    }
    Ok(c)
}

fn layers(family: Family, n_half: &[HalfInt]) -> Result<(Vec<u32>, Vec<u32>)> {
    let c = profile(n_half)?;
    let at = |m: i64| c.get(&m).copied().unwrap_or(0);
    let top = c.keys().next_back().copied().unwrap_or(0).max(0);
    let bottom = c.keys().next().copied().unwrap_or(0).min(-1);
    for m in 0..top {
        if at(m) < at(m + 1) {
            return Err(Error::Malformed(format!(
                "{} occurs more often than {}",
                HalfInt::from_doubled(4 * m + 5),
                HalfInt::from_doubled(4 * m + 1)
            )));
        }
    }
    for m in (bottom + 1..=-1).rev() {
        if at(m) < at(m - 1) {
            return Err(Error::Malformed(format!(
                "{} occurs more often than {}",
                HalfInt::from_doubled(4 * m - 3),
                HalfInt::from_doubled(4 * m + 1)
            )));
        }
    }
    if family == Family::D && at(-1) > at(0) {
        return Err(Error::Malformed(
            "a string lies entirely below ½ (type D strings must contain ½)".into(),
        ));
    }
    let k = at(0).max(at(-1));
    let x = (1..=k)
        .map(|i| (0..=top).filter(|&m| at(m) >= i).count() as u32)
        .collect();
    let y = (1..=k)
        .map(|i| (bottom..=-1).filter(|&m| at(m) >= i).count() as u32)
        .collect();
    Ok((x, y))
}

/// Type D: the ½-class must be a union of gap-2 strings through ½.
pub fn extract_pairs_d(n_half: &[HalfInt]) -> Result<StringPairs> {
    let (x, y) = layers(Family::D, n_half)?;
    StringPairs::new(Family::D, x, y)
}

/// Type B: strings through −3/2 (possibly stopping at −3/2) or ending at ½.
pub fn extract_pairs_b(n_half: &[HalfInt]) -> Result<StringPairs> {
    let (x, y) = layers(Family::B, n_half)?;
    StringPairs::new(Family::B, x, y)
}

pub fn extract_pairs(family: Family, n_half: &[HalfInt]) -> Result<StringPairs> {
    match family {
        Family::D => extract_pairs_d(n_half),
        Family::B => extract_pairs_b(n_half),
    }
}

/// Repeatedly removes the longest ascending gap-2 run through −3/2 (the β's);
/// what is left, ascending, is α.
pub fn decompose_alpha_beta(n_half: &[HalfInt]) -> (Vec<HalfInt>, Vec<Vec<HalfInt>>) {
    let mut left: BTreeMap<i64, u32> = BTreeMap::new();
    for v in n_half {
        *left.entry(v.doubled()).or_insert(0) += 1;
    }
    let has = |m: &BTreeMap<i64, u32>, d: i64| m.get(&d).is_some_and(|c| *c > 0);
    let mut betas = Vec::new();
    while has(&left, -3) {
        let mut lo = -3;
        while has(&left, lo - 4) {
            lo -= 4;
        }
        let mut hi = -3;
        while has(&left, hi + 4) {
            hi += 4;
        }
        let run: Vec<HalfInt> = (0..=(hi - lo) / 4)
            .map(|k| HalfInt::from_doubled(lo + 4 * k))
            .collect();
        for v in &run {
            *left.get_mut(&v.doubled()).expect("present") -= 1;
        }
        betas.push(run);
    }
    let alpha = left
        .into_iter()
        .flat_map(|(d, c)| std::iter::repeat_n(HalfInt::from_doubled(d), c as usize))
        .collect();
    (alpha, betas)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// D: x_i < y_i
    XBelowY,
    /// D: y_i + 1 < x_{i+1}
    GapBeforeNextX,
    /// B: y_i + 1 < x_i
    XAboveYPlusOne,
    /// B: x_i < y_{i+1}
    XBelowNextY,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::XBelowY => "x_i < y_i",
            Violation::GapBeforeNextX => "y_i + 1 < x_(i+1)",
            Violation::XAboveYPlusOne => "y_i + 1 < x_i",
            Violation::XBelowNextY => "x_i < y_(i+1)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unitarity {
    Satisfied { strict: bool },
    /// `index` is 1-based: the column where the leftmost violation starts.
    Violated { index: usize, kind: Violation },
}

impl Unitarity {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, Unitarity::Satisfied { .. })
    }
}

/// D: x_i ≥ y_i and y_i + 1 ≥ x_{i+1}. B: y_i + 1 ≥ x_i and x_i ≥ y_{i+1}.
pub fn unitarity_test(p: &StringPairs) -> Unitarity {
    let (x, y) = (p.x(), p.y());
    let k = p.k();
    let mut strict = true;
    for i in 0..k {
        match p.family() {
            Family::D => {
                if x[i] < y[i] {
                    return Unitarity::Violated {
                        index: i + 1,
                        kind: Violation::XBelowY,
                    };
                }
                strict &= x[i] > y[i];
                if i + 1 < k {
                    if y[i] + 1 < x[i + 1] {
                        return Unitarity::Violated {
                            index: i + 1,
                            kind: Violation::GapBeforeNextX,
                        };
                    }
                    strict &= y[i] >= x[i + 1];
                }
            }
            Family::B => {
                if y[i] + 1 < x[i] {
                    return Unitarity::Violated {
                        index: i + 1,
                        kind: Violation::XAboveYPlusOne,
                    };
                }
                strict &= y[i] >= x[i];
                if i + 1 < k {
                    if x[i] < y[i + 1] {
                        return Unitarity::Violated {
                            index: i + 1,
                            kind: Violation::XBelowNextY,
                        };
                    }
                    strict &= x[i] > y[i + 1];
                }
            }
        }
    }
    Unitarity::Satisfied { strict }
}

/// Ind(comp_{1/2}(len, ½) ⊗ its dual), consuming the string (x; y).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SteinFactor {
    pub len: u32,
    pub x: u32,
    pub y: u32,
}

impl SteinFactor {
    pub fn gl_rank(&self) -> u32 {
        2 * self.len
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitaryCertificate {
    pub stein: Vec<SteinFactor>,
    pub core: Option<StringPairs>,
    pub orbit: Option<OrbitColumns>,
}

/// Peel equalities leftmost first; returns the factors and the strict core.
pub fn peel_equalities(p: &StringPairs) -> Result<(Vec<SteinFactor>, Option<StringPairs>)> {
    if !unitarity_test(p).is_satisfied() {
        return Err(Error::Precondition(format!("{p} violates the unitarity inequalities")));
    }
    let fam = p.family();
    let mut x = p.x().to_vec();
    let mut y = p.y().to_vec();
    let mut stein = Vec::new();
    'outer: loop {
        for i in 0..x.len() {
            let whole = match fam {
                Family::D => x[i] == y[i],
                Family::B => y[i] + 1 == x[i],
            };
            if whole {
                stein.push(SteinFactor {
                    len: x[i] + y[i],
                    x: x[i],
                    y: y[i],
                });
                x.remove(i);
                y.remove(i);
                continue 'outer;
            }
            if i + 1 < x.len() {
                let (xi, yi) = match fam {
                    Family::D => (i + 1, i),
                    Family::B => (i, i + 1),
                };
                let hit = match fam {
                    Family::D => y[i] + 1 == x[i + 1],
                    Family::B => x[i] == y[i + 1],
                };
                if hit {
                    stein.push(SteinFactor {
                        len: x[xi] + y[yi],
                        x: x[xi],
                        y: y[yi],
                    });
                    x.remove(xi);
                    y.remove(yi);
                    continue 'outer;
                }
            }
        }
        break;
    }
    let core = if x.is_empty() {
        None
    } else {
        Some(StringPairs::new(fam, x, y)?)
    };
    Ok((stein, core))
}

pub fn build_certificate(p: &StringPairs) -> Result<UnitaryCertificate> {
    let (stein, core) = peel_equalities(p)?;
    let orbit = core.as_ref().map(attach_orbit).transpose()?;
    Ok(UnitaryCertificate { stein, core, orbit })
}

fn partitions(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for f in (1..=n.min(max)).rev() {
        prefix.push(f);
        partitions(n - f, f, prefix, out);
        prefix.pop();
    }
}

fn all_partitions(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every string-pair array of size n, each once. Ordered by the x row
/// (lexicographically descending), then by the y row ascending.
pub fn enumerate_pairs(family: Family, n: u32) -> Vec<StringPairs> {
    let mut found: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    for sx in 0..=n {
        for xp in all_partitions(sx) {
            for yp in all_partitions(n - sx) {
                let ok = match family {
                    Family::D => !xp.is_empty() && yp.len() <= xp.len(),
                    Family::B => !(xp.is_empty() && yp.is_empty()),
                };
                if ok {
                    found.push((xp.clone(), yp));
                }
            }
        }
    }
    found.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    found
        .into_iter()
        .map(|(mut x, mut y)| {
            let k = x.len().max(y.len());
            x.resize(k, 0);
            y.resize(k, 0);
            StringPairs::new(family, x, y).expect("enumerated pairs are valid")
        })
        .collect()
}
