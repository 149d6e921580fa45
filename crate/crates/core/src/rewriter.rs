//! Rewriting violated string pairs by inducing from Stein complementary
//! series until one base block remains, surrounded by Stein-shaped columns.
//!
//! Everything runs on type-D style integer rows (X; Y). Type B pairs (x; y)
//! are handled through X = y, Y = x − 1, which maps the B inequalities onto
//! the D ones.

use crate::error::{Error, Result};
use crate::spinclass::pairs::{peel_equalities, unitarity_test, StringPairs};
use crate::weyl::Family;

const MAX_STEPS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionStep {
    /// Inserted column, in the family's own coordinates.
    pub column: (u32, u32),
    /// Arrow label: the inserted column's entry u in D coordinates (u; v).
    pub label: u32,
    pub before: StringPairs,
    pub after: StringPairs,
}

impl InductionStep {
    /// Growth of Σ(x + y).
    pub fn size(&self) -> u32 {
        self.column.0 + self.column.1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseCase {
    CaseI { a: u32, b: u32 },
    CaseII { c: u32, d: u32, e: u32, f: u32 },
}

impl BaseCase {
    /// Index q of the spin-relevant K-type η(q) where the form is indefinite.
    pub fn witness_index(&self, family: Family) -> u32 {
        match (family, *self) {
            (Family::D, BaseCase::CaseI { a, .. }) => 2 * a + 1,
            (Family::D, BaseCase::CaseII { e, .. }) => 2 * e + 2,
            (Family::B, BaseCase::CaseI { b, .. }) => 2 * b + 2,
            (Family::B, BaseCase::CaseII { c, .. }) => 2 * c + 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedBase {
    pub steps: Vec<InductionStep>,
    /// Stein-shaped columns outside the base (peeled factors when unitary).
    pub stein_columns: Vec<(u32, u32)>,
    pub base: Option<BaseCase>,
    /// 0-based column where the base block starts in `final_pairs`.
    pub base_column: Option<usize>,
    pub final_pairs: StringPairs,
}

impl NormalizedBase {
    pub fn labels(&self) -> Vec<u32> {
        self.steps.iter().map(|s| s.label).collect()
    }

    /// η index pinned by the base, valid in the rank of `final_pairs`.
    pub fn enlarged_witness(&self) -> Option<u32> {
        self.base.map(|b| b.witness_index(self.final_pairs.family()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Rows {
    family: Family,
    x: Vec<i64>,
    y: Vec<i64>,
}

impl Rows {
    fn from_pairs(p: &StringPairs) -> Rows {
        let (x, y) = match p.family() {
            Family::D => (
                p.x().iter().map(|v| *v as i64).collect(),
                p.y().iter().map(|v| *v as i64).collect(),
            ),
            Family::B => (
                p.y().iter().map(|v| *v as i64).collect(),
                p.x().iter().map(|v| *v as i64 - 1).collect(),
            ),
        };
        Rows {
            family: p.family(),
            x,
            y,
        }
    }

    fn to_pairs(&self) -> StringPairs {
        let u = |v: &i64| u32::try_from(*v).expect("rows stay non-negative");
        let (x, y) = match self.family {
            Family::D => (self.x.iter().map(u).collect(), self.y.iter().map(u).collect()),
            Family::B => (
                self.y.iter().map(|v| u(&(v + 1))).collect(),
                self.x.iter().map(u).collect(),
            ),
        };
        StringPairs::new(self.family, x, y).expect("rewriting keeps pairs valid")
    }

    fn column(&self, i: usize) -> (u32, u32) {
        let (a, b) = (self.x[i], self.y[i]);
        family_column(self.family, a, b)
    }

    fn k(&self) -> usize {
        self.x.len()
    }

    fn stein(&self, i: usize) -> bool {
        matches!(self.x[i] - self.y[i], 0 | 1)
    }

    fn insert(&mut self, u: i64, v: i64) {
        self.x.push(u);
        self.y.push(v);
        self.x.sort_by(|a, b| b.cmp(a));
        self.y.sort_by(|a, b| b.cmp(a));
        // (0; −1) is the empty type B column
        while self.x.last() == Some(&0) && self.y.last() == Some(&-1) {
            self.x.pop();
            self.y.pop();
        }
    }

    /// Leftmost violation: column type (X_i < Y_i) or gap type (Y_i + 1 < X_{i+1}).
    fn first_violation(&self) -> Option<Base> {
        for i in 0..self.k() {
            if self.x[i] < self.y[i] {
                return Some(Base::Column(i));
            }
            if i + 1 < self.k() && self.y[i] + 1 < self.x[i + 1] {
                return Some(Base::Gap(i));
            }
        }
        None
    }

    /// Every column Stein-shaped except one column-type base or one gap-type
    /// base pair.
    fn padded(&self) -> Option<Base> {
        let ns: Vec<usize> = (0..self.k()).filter(|&i| !self.stein(i)).collect();
        if ns.len() == 1 && self.x[ns[0]] < self.y[ns[0]] {
            return Some(Base::Column(ns[0]));
        }
        // all-Stein rows have no gaps, so an empty `ns` never matches
        (0..self.k().saturating_sub(1)).find_map(|i| {
            let ok = self.y[i] + 1 < self.x[i + 1] && ns.iter().all(|j| *j == i || *j == i + 1);
            ok.then_some(Base::Gap(i))
        })
    }

    fn base_case(&self, b: Base) -> BaseCase {
        let u = |v: i64| v as u32;
        match (self.family, b) {
            (Family::D, Base::Column(i)) => BaseCase::CaseI {
                a: u(self.x[i]),
                b: u(self.y[i]),
            },
            (Family::D, Base::Gap(i)) => BaseCase::CaseII {
                c: u(self.x[i]),
                d: u(self.x[i + 1]),
                e: u(self.y[i]),
                f: u(self.y[i + 1]),
            },
            (Family::B, Base::Column(i)) => BaseCase::CaseI {
                a: u(self.y[i] + 1),
                b: u(self.x[i]),
            },
            (Family::B, Base::Gap(i)) => BaseCase::CaseII {
                c: u(self.y[i] + 1),
                d: u(self.y[i + 1] + 1),
                e: u(self.x[i]),
                f: u(self.x[i + 1]),
            },
        }
    }
}

fn family_column(family: Family, u: i64, v: i64) -> (u32, u32) {
    match family {
        Family::D => (u as u32, v as u32),
        Family::B => ((v + 1) as u32, u as u32),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Base {
    Column(usize),
    Gap(usize),
}

impl Base {
    fn covers(&self, j: usize) -> bool {
        match *self {
            Base::Column(i) => j == i,
            Base::Gap(i) => j == i || j == i + 1,
        }
    }
}

fn step(rows: &mut Rows, u: i64, v: i64, steps: &mut Vec<InductionStep>) {
    let before = rows.to_pairs();
    rows.insert(u, v);
    steps.push(InductionStep {
        column: family_column(rows.family, u, v),
        label: u as u32,
        before,
        after: rows.to_pairs(),
    });
}

fn d_only(p: &StringPairs) -> Result<()> {
    if p.family() != Family::D {
        return Err(Error::Precondition("this padding reads pairs in type D".into()));
    }
    Ok(())
}

/// Columns with x_i ≤ y_i: insert (x_m + 1; x_m) at the first column with
/// x_m < y_m until every column has x = y.
pub fn pad_case_a(p: &StringPairs) -> Result<(Vec<InductionStep>, StringPairs)> {
    d_only(p)?;
    if p.columns().any(|(x, y)| x > y) {
        return Err(Error::Precondition(format!("{p} has a column with x > y")));
    }
    let mut rows = Rows::from_pairs(p);
    let mut steps = Vec::new();
    while let Some(m) = (0..rows.k()).find(|&i| rows.x[i] < rows.y[i]) {
        let a = rows.x[m];
        step(&mut rows, a + 1, a, &mut steps);
        if steps.len() > MAX_STEPS {
            return Err(Error::Precondition("padding did not terminate".into()));
        }
    }
    Ok((steps, rows.to_pairs()))
}

/// Columns with x_i > y_i: fill gaps y_i + 1 < x_{i+1} with (y_i+1; y_i+1)
/// and wide columns x_i − y_i ≥ 2 with (x_i−1; x_i−1) until every column
/// is (c; c − 1).
pub fn pad_case_b(p: &StringPairs) -> Result<(Vec<InductionStep>, StringPairs)> {
    d_only(p)?;
    if p.columns().any(|(x, y)| x <= y) {
        return Err(Error::Precondition(format!("{p} has a column with x ≤ y")));
    }
    let mut rows = Rows::from_pairs(p);
    let mut steps = Vec::new();
    loop {
        let mut act = None;
        for i in 0..rows.k() {
            if i + 1 < rows.k() && rows.y[i] + 1 < rows.x[i + 1] {
                act = Some(rows.y[i] + 1);
                break;
            }
            if rows.x[i] - rows.y[i] >= 2 {
                act = Some(rows.x[i] - 1);
                break;
            }
        }
        let Some(u) = act else { break };
        step(&mut rows, u, u, &mut steps);
        if steps.len() > MAX_STEPS {
            return Err(Error::Precondition("padding did not terminate".into()));
        }
    }
    Ok((steps, rows.to_pairs()))
}

/// Normalize onto a single base block. The base is the leftmost violation;
/// each round inserts one Stein column repairing the leftmost non-base
/// defect, and the base is re-read after every insertion.
pub fn normalize_to_base(p: &StringPairs) -> Result<NormalizedBase> {
    if unitarity_test(p).is_satisfied() {
        let (stein, _) = peel_equalities(p)?;
        return Ok(NormalizedBase {
            steps: Vec::new(),
            stein_columns: stein.iter().map(|s| (s.x, s.y)).collect(),
            base: None,
            base_column: None,
            final_pairs: p.clone(),
        });
    }
    let mut rows = Rows::from_pairs(p);
    let mut steps = Vec::new();
    loop {
        if let Some(b) = rows.padded() {
            let stein_columns = (0..rows.k())
                .filter(|j| !b.covers(*j))
                .map(|j| rows.column(j))
                .collect();
            let start = match b {
                Base::Column(i) | Base::Gap(i) => i,
            };
            return Ok(NormalizedBase {
                steps,
                stein_columns,
                base: Some(rows.base_case(b)),
                base_column: Some(start),
                final_pairs: rows.to_pairs(),
            });
        }
        let base = rows.first_violation().expect("violated pairs stay violated");
        let mut act = None;
        for j in 0..rows.k() {
            if base.covers(j) {
                continue;
            }
            let (xj, yj) = (rows.x[j], rows.y[j]);
            if xj < yj {
                act = Some((xj + 1, xj));
            } else if j + 1 < rows.k() && !base.covers(j + 1) && yj + 1 < rows.x[j + 1] {
                act = Some((yj + 1, yj + 1));
            } else if xj - yj >= 2 {
                act = Some((xj - 1, xj - 1));
            }
            if act.is_some() {
                break;
            }
        }
        let (u, v) = act.ok_or_else(|| {
            Error::Precondition(format!("no padding rule applies to {}", rows.to_pairs()))
        })?;
        step(&mut rows, u, v, &mut steps);
        if steps.len() > MAX_STEPS {
            return Err(Error::Precondition("normalization did not terminate".into()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(cols: &[(u32, u32)]) -> StringPairs {
        StringPairs::from_columns(Family::D, cols).unwrap()
    }

    #[test]
    fn case_b_padding_chain() {
        let (steps, fin) = pad_case_b(&d(&[(5, 2), (4, 2), (4, 0)])).unwrap();
        assert_eq!(steps.iter().map(|s| s.label).collect::<Vec<_>>(), vec![3, 4, 3, 3, 2, 1]);
        assert_eq!(fin.x(), &[5, 4, 4, 4, 3, 3, 3, 2, 1]);
        assert_eq!(fin.y(), &[4, 3, 3, 3, 2, 2, 2, 1, 0]);
        for s in &steps {
            assert_eq!(s.after.n(), s.before.n() + s.size() as usize);
        }

        let (steps, fin) = pad_case_b(&d(&[(2, 1)])).unwrap();
        assert!(steps.is_empty());
        assert_eq!(fin, d(&[(2, 1)]));

        let (steps, fin) = pad_case_b(&d(&[(3, 0)])).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(fin, d(&[(3, 2), (2, 1), (1, 0)]));
    }

    #[test]
    fn case_a_padding() {
        let (steps, fin) = pad_case_a(&d(&[(1, 2)])).unwrap();
        assert_eq!(steps[0].column, (2, 1));
        assert!(fin.columns().all(|(x, y)| x == y));

        let (steps, _) = pad_case_a(&d(&[(1, 1)])).unwrap();
        assert!(steps.is_empty());

        let (steps, fin) = pad_case_a(&d(&[(1, 3)])).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(fin, d(&[(3, 3), (2, 2), (1, 1)]));
        assert_eq!(fin.y()[0], 3);

        assert!(pad_case_a(&d(&[(2, 1)])).is_err());
    }

    #[test]
    fn normalize_examples() {
        let nb = normalize_to_base(&d(&[(1, 2), (1, 0)])).unwrap();
        assert_eq!(nb.base, Some(BaseCase::CaseI { a: 1, b: 2 }));
        assert_eq!(nb.stein_columns, vec![(1, 0)]);
        assert!(nb.steps.is_empty());

        let nb = normalize_to_base(&d(&[(2, 0), (2, 0)])).unwrap();
        assert_eq!(
            nb.base,
            Some(BaseCase::CaseII {
                c: 2,
                d: 2,
                e: 0,
                f: 0
            })
        );

        let b = StringPairs::from_columns(Family::B, &[(0, 1), (0, 1)]).unwrap();
        let nb = normalize_to_base(&b).unwrap();
        assert_eq!(
            nb.base,
            Some(BaseCase::CaseII {
                c: 0,
                d: 0,
                e: 1,
                f: 1
            })
        );
    }

    #[test]
    fn satisfied_pairs_have_no_base() {
        let nb = normalize_to_base(&d(&[(3, 0), (1, 0)])).unwrap();
        assert_eq!(nb.base, None);
        assert_eq!(nb.stein_columns, vec![(1, 0)]);
    }
}
