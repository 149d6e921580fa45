//! Rank-one intertwining scalars, injectivity predicates for block moves of
//! (μ, ν) coordinates, and a replay of move scripts.

use std::fmt;
use std::ops::Range;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rewriter::BaseCase;
use crate::scalar::{fmt_q, HalfInt, Q};
use crate::spinclass::pairs::StringPairs;
use crate::weyl::Family;

/// ν-coordinate with the sign of its μ-coordinate (ν^ε).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedEntry {
    pub value: HalfInt,
    pub sign: i8,
}

impl SignedEntry {
    pub fn new(value: HalfInt, sign: i8) -> Self {
        SignedEntry { value, sign }
    }

    /// (v^ε) ↦ ((−v)^{−ε})
    pub fn bar(self) -> Self {
        SignedEntry {
            value: -self.value,
            sign: -self.sign,
        }
    }
}

impl fmt::Display for SignedEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, if self.sign > 0 { "+" } else { "-" })
    }
}

/// ⟨μ, α⟩ = 0: (2 − p)/(2 + p) on the antisymmetric part.
pub fn simple_scalar_case1(p: Q) -> Result<Q> {
    let two = Q::from_integer(2);
    if p == -two {
        return Err(Error::Pole(fmt_q(&p)));
    }
    Ok((two - p) / (two + p))
}

/// ⟨μ, α⟩ ≠ 0: (−3 + p)/(3 + p) on four-dimensional pieces, 1 otherwise.
pub fn simple_scalar_case2(p: Q, dim4: bool) -> Result<Q> {
    if !dim4 {
        return Ok(Q::one());
    }
    let three = Q::from_integer(3);
    if p == -three {
        return Err(Error::Pole(fmt_q(&p)));
    }
    Ok((p - three) / (p + three))
}

fn offset(opposite: bool) -> i64 {
    if opposite {
        3
    } else {
        2
    }
}

/// Scalar for moving x leftwards past the ascending string ν₁ < … < ν_p:
/// (−c + ν₁ − x)/(c + ν_p − x), c = 2 for equal signs and 3 otherwise.
pub fn gl_move_scalar(chain: &[Q], x: Q, opposite: bool) -> Result<Q> {
    let (first, last) = match (chain.first(), chain.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => return Err(Error::Precondition("empty string".into())),
    };
    let c = Q::from_integer(offset(opposite));
    let den = c + last - x;
    if den.is_zero() {
        return Err(Error::Pole(fmt_q(&x)));
    }
    Ok((-c + first - x) / den)
}

fn string_sign(chain: &[SignedEntry]) -> Option<i8> {
    let s = chain.first()?.sign;
    let ok = chain.iter().all(|e| e.sign == s)
        && chain
            .windows(2)
            .all(|w| w[1].value.doubled() - w[0].value.doubled() == 4);
    ok.then_some(s)
}

/// ξ ≠ ν₁ − c and ξ ≠ ν_p + c.
pub fn pass_left_ok(chain: &[SignedEntry], xi: SignedEntry) -> bool {
    let (Some(first), Some(last)) = (chain.first(), chain.last()) else {
        return true;
    };
    let c = HalfInt::from_int(offset(xi.sign != first.sign));
    xi.value != first.value - c && xi.value != last.value + c
}

/// Every ξ_l ≠ ν_p + c.
pub fn sort_ok(prefix: &[SignedEntry], chain: &[SignedEntry]) -> bool {
    let Some(last) = chain.last() else {
        return true;
    };
    prefix.iter().all(|xi| {
        let c = HalfInt::from_int(offset(xi.sign != last.sign));
        xi.value != last.value + c
    })
}

/// The short-root operator is an isomorphism on spin-relevant K-types
/// unless a = ±3/2.
pub fn short_root_ok(a: HalfInt) -> bool {
    a.abs() != HalfInt::from_doubled(3)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockMove {
    /// Move the entry at `xi` (just right of `chain`) to `chain.start`,
    /// reading it through the conjugate GL when `bar` is set.
    PassLeft {
        chain: Range<usize>,
        xi: usize,
        bar: bool,
    },
    /// Merge a non-decreasing `prefix` with the string right after it into
    /// ascending order.
    SortMerge {
        prefix: Range<usize>,
        chain: Range<usize>,
    },
    /// Negate and reverse a block, flipping signs.
    BarGl { block: Range<usize> },
    /// (a^ε) ↦ (−a^{−ε}) in type B.
    ShortRootFlip { index: usize },
}

impl fmt::Display for BlockMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockMove::PassLeft { chain, xi, bar } => write!(
                f,
                "pass-left {xi} over {}..{}{}",
                chain.start,
                chain.end,
                if *bar { " (bar)" } else { "" }
            ),
            BlockMove::SortMerge { prefix, chain } => write!(
                f,
                "merge {}..{} with {}..{}",
                prefix.start, prefix.end, chain.start, chain.end
            ),
            BlockMove::BarGl { block } => write!(f, "bar {}..{}", block.start, block.end),
            BlockMove::ShortRootFlip { index } => write!(f, "short-root {index}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepReport {
    pub mv: BlockMove,
    pub well_defined: bool,
    pub injective: bool,
    /// The exact scalar, for single-entry moves past a string.
    pub scalar: Option<Q>,
    pub reason: String,
    /// Coordinates after the move.
    pub state: Vec<SignedEntry>,
}

impl StepReport {
    pub fn ok(&self) -> bool {
        self.well_defined && self.injective
    }
}

fn check_range(r: &Range<usize>, len: usize) -> Result<()> {
    if r.start > r.end || r.end > len {
        return Err(Error::Script(format!("range {}..{} out of bounds", r.start, r.end)));
    }
    Ok(())
}

fn run_move(state: &mut Vec<SignedEntry>, mv: &BlockMove) -> Result<(bool, bool, Option<Q>, String)> {
    let len = state.len();
    match mv {
        BlockMove::PassLeft { chain, xi, bar } => {
            check_range(chain, len)?;
            if *xi != chain.end || *xi >= len || chain.is_empty() {
                return Err(Error::Script(format!(
                    "entry {xi} is not just right of {}..{}",
                    chain.start, chain.end
                )));
            }
            let entries = state[chain.clone()].to_vec();
            let mut x = state[*xi];
            if *bar {
                x = x.bar();
            }
            let out = match string_sign(&entries) {
                None => (false, false, None, "operand is not a gap-2 string of one sign".into()),
                Some(s) => {
                    let opposite = s != x.sign;
                    let vals: Vec<Q> = entries.iter().map(|e| e.value.to_q()).collect();
                    let scalar = gl_move_scalar(&vals, x.value.to_q(), opposite).ok();
                    let c = HalfInt::from_int(offset(opposite));
                    let wd = x.value != entries[entries.len() - 1].value + c;
                    let inj = x.value != entries[0].value - c;
                    let reason = match (wd, inj) {
                        (true, true) => format!("string move, {} signs", if opposite { "opposite" } else { "equal" }),
                        (false, _) => format!("{x} hits the pole at ν_p + {}", offset(opposite)),
                        (true, false) => format!("{x} hits the kernel at ν_1 − {}", offset(opposite)),
                    };
                    (wd, inj, scalar, reason)
                }
            };
            state.remove(*xi);
            state.insert(chain.start, x);
            Ok(out)
        }
        BlockMove::SortMerge { prefix, chain } => {
            check_range(prefix, len)?;
            check_range(chain, len)?;
            if prefix.end != chain.start {
                return Err(Error::Script("merge operands are not adjacent".into()));
            }
            let pre = &state[prefix.clone()];
            let ch = &state[chain.clone()];
            let out = if pre.windows(2).any(|w| w[0].value > w[1].value) {
                (false, false, None, "prefix is not non-decreasing".into())
            } else if !ch.is_empty() && string_sign(ch).is_none() {
                (false, false, None, "operand is not a gap-2 string of one sign".into())
            } else if sort_ok(pre, ch) {
                (true, true, None, "merge into ascending order".into())
            } else {
                (true, false, None, "a prefix entry equals ν_p + c".into())
            };
            state[prefix.start..chain.end].sort_by_key(|e| e.value);
            Ok(out)
        }
        BlockMove::BarGl { block } => {
            check_range(block, len)?;
            let entries = state[block.clone()].to_vec();
            let mut out = (true, true, None, "conjugate GL block".to_string());
            'pairs: for i in 0..entries.len() {
                for j in i + 1..entries.len() {
                    let p = entries[i].value + entries[j].value;
                    let c = HalfInt::from_int(if entries[i].sign == entries[j].sign { 3 } else { 2 });
                    if p == -c {
                        out = (false, false, None, format!("pole: {} + {} = {}", entries[i], entries[j], p));
                        break 'pairs;
                    }
                    if p == c {
                        out = (true, false, None, format!("no implemented predicate: {} + {} = {}", entries[i], entries[j], p));
                        break 'pairs;
                    }
                }
            }
            let flipped: Vec<SignedEntry> = entries.iter().rev().map(|e| e.bar()).collect();
            state.splice(block.clone(), flipped);
            Ok(out)
        }
        BlockMove::ShortRootFlip { index } => {
            if *index >= len {
                return Err(Error::Script(format!("index {index} out of bounds")));
            }
            let a = state[*index];
            let ok = short_root_ok(a.value);
            state[*index] = a.bar();
            let reason = if ok {
                "short root".to_string()
            } else {
                format!("no implemented predicate: short root at {}", a.value)
            };
            Ok((true, ok, None, reason))
        }
    }
}

/// Apply moves in order and check each one. Later moves are still applied
/// after a failing step.
pub fn verify_chain(moves: &[BlockMove], start: &[SignedEntry]) -> Result<Vec<StepReport>> {
    let mut state = start.to_vec();
    let mut out = Vec::with_capacity(moves.len());
    for mv in moves {
        let (well_defined, injective, scalar, reason) = run_move(&mut state, mv)?;
        out.push(StepReport {
            mv: mv.clone(),
            well_defined,
            injective,
            scalar,
            reason,
            state: state.clone(),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub name: String,
    pub start: Vec<SignedEntry>,
    pub moves: Vec<BlockMove>,
}

impl Script {
    pub fn run(&self) -> Result<Vec<StepReport>> {
        verify_chain(&self.moves, &self.start)
    }
}

/// Ascending string from doubled `lo` to doubled `hi`, step 2.
fn string(lo: i64, hi: i64, sign: i8) -> Vec<SignedEntry> {
    (0..=(hi - lo) / 4)
        .map(|k| SignedEntry::new(HalfInt::from_doubled(lo + 4 * k), sign))
        .collect()
}

/// Leftmost index of the one-signed gap-2 run ending just before `end`,
/// keeping values ≥ `lo`.
fn run_start(state: &[SignedEntry], end: usize, lo: HalfInt) -> usize {
    let sign = state[end - 1].sign;
    let mut s = end - 1;
    while s > 0
        && state[s - 1].sign == sign
        && state[s - 1].value >= lo
        && state[s].value.doubled() - state[s - 1].value.doubled() == 4
    {
        s -= 1;
    }
    s
}

/// Base case I in type D, (a; b): the operator out of the string picture
/// and its Hermitian dual.
pub fn case_one_d(a: u32, b: u32) -> Vec<Script> {
    let (a, b) = (a as i64, b as i64);
    let start = string(1 - 4 * b, 4 * a - 3, 1);
    let mut state = start.clone();
    let mut moves = Vec::new();
    for k in 1..a {
        let u = 4 * a - 3 - 4 * (k - 1);
        let xi = state.len() - 1;
        debug_assert_eq!(state[xi].value.doubled(), u);
        let lo = HalfInt::from_doubled((2 - u).max(1 - 4 * b));
        let s = run_start(&state, xi, lo);
        let mv = BlockMove::PassLeft {
            chain: s..xi,
            xi,
            bar: true,
        };
        run_move(&mut state, &mv).expect("well-formed script");
        moves.push(mv);
    }
    let omega = Script {
        name: format!("case I ({a};{b})"),
        start,
        moves,
    };

    let dual_start = string(3 - 4 * a, 4 * b - 1, 1);
    let split = a as usize;
    let mut dual_moves = Vec::new();
    if b > 0 {
        let end = dual_start.len();
        dual_moves.push(BlockMove::BarGl { block: split..end });
        dual_moves.push(BlockMove::SortMerge {
            prefix: 0..split,
            chain: split..end,
        });
    }
    let dual = Script {
        name: format!("case I ({a};{b}) dual"),
        start: dual_start,
        moves: dual_moves,
    };
    vec![omega, dual]
}

/// Base case II in type D, (c d; e f).
pub fn case_two_d(c: u32, d: u32, e: u32, f: u32) -> Script {
    let (c, d, e, f) = (c as i64, d as i64, e as i64, f as i64);
    let big = string(1 - 4 * e, 4 * d - 3, 1);
    let low = if f > 0 { string(1 - 4 * f, -3, 1) } else { Vec::new() };
    let neg = if c > 0 { string(3 - 4 * c, -1, -1) } else { Vec::new() };
    let width = big.len();
    let mut start = big;
    start.extend(&low);
    start.extend(&neg);
    let mut moves = Vec::new();
    for j in 0..low.len() {
        moves.push(BlockMove::PassLeft {
            chain: j..j + width,
            xi: j + width,
            bar: false,
        });
    }
    let upper = low.len() + e as usize;
    if d > 0 {
        moves.push(BlockMove::BarGl {
            block: upper..upper + d as usize,
        });
    }
    Script {
        name: format!("case II ({c} {d};{e} {f})"),
        start,
        moves,
    }
}

/// Base case I in type B, (a; b) with a > b + 1.
pub fn case_one_b(a: u32, b: u32) -> Script {
    let (a, b) = (a as i64, b as i64);
    let start = string(1 - 4 * b, 4 * a - 3, 1);
    let mut moves: Vec<BlockMove> = (0..start.len())
        .rev()
        .filter(|&i| start[i].value.doubled() >= 9)
        .map(|index| BlockMove::ShortRootFlip { index })
        .collect();
    if let Some(h) = start.iter().position(|e| e.value == HalfInt::HALF) {
        if h + 1 < start.len() {
            moves.push(BlockMove::BarGl { block: h..h + 2 });
        }
    }
    Script {
        name: format!("case I ({a};{b}) type B"),
        start,
        moves,
    }
}

/// Base case II in type B, (c d; e f) with f > c.
pub fn case_two_b(c: u32, d: u32, e: u32, f: u32) -> Script {
    let (c, d, e, f) = (c as i64, d as i64, e as i64, f as i64);
    let mut start = string(1 - 4 * e, 4 * c - 3, 1);
    let second = string(1 - 4 * f, 4 * d - 3, 1);
    let offset = start.len();
    start.extend(&second);
    let moves = second
        .iter()
        .position(|x| x.value == HalfInt::from_doubled(-3))
        .map(|i| vec![BlockMove::ShortRootFlip { index: offset + i }])
        .unwrap_or_default();
    Script {
        name: format!("case II ({c} {d};{e} {f}) type B"),
        start,
        moves,
    }
}

/// Padding by a Stein column (s; t) in type D: the rest (anti-dominant)
/// passes left over the string, then the upper half of the string crosses
/// to the conjugate side and the pieces are merged.
pub fn padding_d(s: u32, t: u32, rest: &StringPairs) -> Script {
    let (s, t) = (s as i64, t as i64);
    let chain = string(1 - 4 * t, 4 * s - 3, 1);
    let mut gamma: Vec<SignedEntry> = rest
        .to_multiset()
        .into_iter()
        .map(|v| SignedEntry::new(-v.abs(), if v.doubled() > 0 { -1 } else { 1 }))
        .collect();
    gamma.sort_by_key(|e| e.value);
    let width = chain.len();
    let mut start = chain;
    start.extend(&gamma);
    let mut state = start.clone();
    let mut moves = Vec::new();
    for j in 0..gamma.len() {
        let mv = BlockMove::PassLeft {
            chain: j..j + width,
            xi: j + width,
            bar: false,
        };
        run_move(&mut state, &mv).expect("well-formed script");
        moves.push(mv);
    }
    let front = gamma.len();
    for k in 0..s as usize {
        let lo = front + k;
        let xi = front + width - 1;
        if xi <= lo {
            break;
        }
        let mv = BlockMove::PassLeft {
            chain: lo..xi,
            xi,
            bar: true,
        };
        run_move(&mut state, &mv).expect("well-formed script");
        moves.push(mv);
    }
    let moved = (s as usize).min(width.saturating_sub(1));
    if moved > 0 && front + moved < front + width {
        moves.push(BlockMove::SortMerge {
            prefix: front..front + moved,
            chain: front + moved..front + width,
        });
    }
    Script {
        name: format!("padding ({s};{t})"),
        start,
        moves,
    }
}

/// Scripts for a normalized base block.
pub fn scripts_for_base(family: Family, base: BaseCase) -> Vec<Script> {
    match (family, base) {
        (Family::D, BaseCase::CaseI { a, b }) => case_one_d(a, b),
        (Family::D, BaseCase::CaseII { c, d, e, f }) => vec![case_two_d(c, d, e, f)],
        (Family::B, BaseCase::CaseI { a, b }) => vec![case_one_b(a, b)],
        (Family::B, BaseCase::CaseII { c, d, e, f }) => vec![case_two_b(c, d, e, f)],
    }
}

/// Rank-two root data acting on ℚ^dim: simple roots with their coroots.
#[derive(Debug, Clone)]
pub struct RankTwo {
    pub dim: usize,
    pub simple: [(Vec<Q>, Vec<Q>); 2],
}

fn qv(v: &[i64]) -> Vec<Q> {
    v.iter().map(|x| Q::from_integer(*x)).collect()
}

/// A₂ in ℚ³.
pub fn a2() -> RankTwo {
    RankTwo {
        dim: 3,
        simple: [(qv(&[1, -1, 0]), qv(&[1, -1, 0])), (qv(&[0, 1, -1]), qv(&[0, 1, -1]))],
    }
}

/// B₂ in ℚ²; the short root e₂ has coroot 2e₂.
pub fn b2() -> RankTwo {
    RankTwo {
        dim: 2,
        simple: [(qv(&[1, -1]), qv(&[1, -1])), (qv(&[0, 1]), qv(&[0, 2]))],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordRep {
    /// The reflection representation on ℚ^dim.
    Reflection,
    /// The sign character.
    Sign,
}

pub type Matrix = Vec<Vec<Q>>;

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn reflection(root: &[Q], coroot: &[Q]) -> Matrix {
    let n = root.len();
    let mut m = identity(n);
    for i in 0..n {
        for j in 0..n {
            m[i][j] -= root[i] * coroot[j];
        }
    }
    m
}

fn apply_mat(m: &Matrix, v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Product of φ_s(ν) = P₊ + c(⟨α̌_s, ν⟩)P₋ along `word` (applied left to
/// right), with ν moved by each reflection.
pub fn word_operator(sys: &RankTwo, rep: WordRep, word: &[usize], nu: &[Q]) -> Result<Matrix> {
    if nu.len() != sys.dim {
        return Err(Error::Dimension {
            expected: sys.dim,
            got: nu.len(),
        });
    }
    let size = match rep {
        WordRep::Reflection => sys.dim,
        WordRep::Sign => 1,
    };
    let half = Q::new(1, 2);
    let mut nu = nu.to_vec();
    let mut acc = identity(size);
    for &s in word {
        let (root, coroot) = sys
            .simple
            .get(s)
            .ok_or_else(|| Error::Script(format!("no simple reflection {s}")))?;
        let p: Q = coroot.iter().zip(&nu).map(|(a, b)| a * b).sum();
        let c = simple_scalar_case1(p)?;
        let sm = match rep {
            WordRep::Reflection => reflection(root, coroot),
            WordRep::Sign => vec![vec![-Q::one()]],
        };
        let id = identity(size);
        let phi: Matrix = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| half * (id[i][j] + sm[i][j]) + c * half * (id[i][j] - sm[i][j]))
                    .collect()
            })
            .collect();
        acc = mat_mul(&phi, &acc);
        nu = apply_mat(&reflection(root, coroot), &nu);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn e(d: i64, s: i8) -> SignedEntry {
        SignedEntry::new(HalfInt::from_doubled(d), s)
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(simple_scalar_case1(q(0, 1)).unwrap(), q(1, 1));
        assert_eq!(simple_scalar_case1(q(2, 1)).unwrap(), q(0, 1));
        assert_eq!(simple_scalar_case1(q(4, 1)).unwrap(), q(-1, 3));
        assert!(simple_scalar_case1(q(-2, 1)).is_err());
        assert_eq!(simple_scalar_case2(q(7, 2), false).unwrap(), q(1, 1));
        assert_eq!(simple_scalar_case2(q(3, 1), true).unwrap(), q(0, 1));
        assert_eq!(simple_scalar_case2(q(0, 1), true).unwrap(), q(-1, 1));
        assert!(simple_scalar_case2(q(-3, 1), true).is_err());
    }

    #[test]
    fn gl_move_examples() {
        assert_eq!(gl_move_scalar(&[q(-3, 2), q(1, 2)], q(9, 2), false).unwrap(), q(4, 1));
        assert_eq!(gl_move_scalar(&[q(1, 2), q(5, 2)], q(-3, 2), false).unwrap(), q(0, 1));
        assert!(matches!(gl_move_scalar(&[q(1, 2)], q(7, 2), true), Err(Error::Pole(_))));
    }

    #[test]
    fn predicate_examples() {
        let ch = [e(-3, 1), e(1, 1)];
        assert!(pass_left_ok(&ch, e(-5, -1)));
        assert!(!pass_left_ok(&ch, e(-7, 1)));
        assert!(!pass_left_ok(&[e(1, 1)], e(7, -1)));
        assert!(short_root_ok(HalfInt::HALF));
        assert!(!short_root_ok(HalfInt::from_doubled(3)));
        assert!(!short_root_ok(HalfInt::from_doubled(-3)));
    }

    #[test]
    fn case_one_scripts() {
        for s in case_one_d(2, 4) {
            assert!(s.run().unwrap().iter().all(StepReport::ok), "{}", s.name);
        }
        let reports = case_one_d(4, 2)[0].run().unwrap();
        assert!(!reports[0].ok());
        assert!(reports[0].reason.contains("kernel"));
    }

    #[test]
    fn empty_script() {
        assert!(verify_chain(&[], &[e(1, 1)]).unwrap().is_empty());
    }

    #[test]
    fn malformed_ranges() {
        let mv = BlockMove::PassLeft {
            chain: 0..1,
            xi: 2,
            bar: false,
        };
        assert!(matches!(verify_chain(&[mv], &[e(1, 1), e(5, 1), e(9, 1)]), Err(Error::Script(_))));
        let mv = BlockMove::BarGl { block: 0..4 };
        assert!(verify_chain(&[mv], &[e(1, 1)]).is_err());
    }
}
