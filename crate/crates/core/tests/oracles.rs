//! Independent brute-force oracles checked against the library.

use itertools::Itertools;
use num::{One, Zero};
use proptest::prelude::*;

use spinrep::glclass::{classify_gl, comp_nu, decompose_chains, GlFactor};
use spinrep::orbits::{attach_orbit, codim_identity_holds, nilcone_dim, orbit_dim, special_orbit, OrbitColumns};
use spinrep::rewriter::{pad_case_a, pad_case_b};
use spinrep::scalar::residue_class;
use spinrep::spinclass::pairs::{
    enumerate_pairs, extract_pairs, peel_equalities, unitarity_test, Unitarity, Violation,
};
use spinrep::weyl::{dominantize, find_conjugator, hermitian_dual, hermitian_witness, WeylElement};
use spinrep::{Family, GenuineParam, HalfInt, StringPairs, Q};

fn group(family: Family, n: usize) -> Vec<WeylElement> {
    let mut out = Vec::new();
    for perm in (0..n).permutations(n) {
        for mask in 0..(1u32 << n) {
            let signs: Vec<i8> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let w = WeylElement::from_parts(perm.clone(), signs).unwrap();
            if family == Family::B || w.flips().is_multiple_of(2) {
                out.push(w);
            }
        }
    }
    out
}

fn brute_conjugate(g: &[WeylElement], a: &GenuineParam, b: &GenuineParam) -> bool {
    g.iter().any(|w| w.apply_param(a).unwrap() == *b)
}

#[test]
fn weyl_group_orders() {
    assert_eq!(group(Family::D, 4).len(), 192);
    assert_eq!(group(Family::B, 4).len(), 384);
    assert_eq!(group(Family::D, 2).len(), 4);
}

fn small_param(family: Family, n: usize) -> impl Strategy<Value = GenuineParam> {
    (
        prop::collection::vec(prop::sample::select(vec![-3i64, -1, 1, 3]), n),
        prop::collection::vec(-4i64..=4, n),
    )
        .prop_map(move |(mu, nu)| {
            GenuineParam::new(
                family,
                mu.into_iter().map(HalfInt::from_doubled).collect(),
                nu.into_iter().map(|v| Q::new(v, 2)).collect(),
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hermitian_witness_matches_search_d(p in small_param(Family::D, 4)) {
        let g = group(Family::D, 4);
        let dual = hermitian_dual(&p);
        let found = hermitian_witness(&p);
        prop_assert_eq!(found.is_some(), brute_conjugate(&g, &p, &dual));
        if let Some(w) = found {
            prop_assert!(w.is_in_weyl_group(Family::D));
            prop_assert_eq!(w.apply_param(&p).unwrap(), dual);
        }
    }

    #[test]
    fn hermitian_witness_matches_search_b(p in small_param(Family::B, 4)) {
        let g = group(Family::B, 4);
        let dual = hermitian_dual(&p);
        prop_assert_eq!(hermitian_witness(&p).is_some(), brute_conjugate(&g, &p, &dual));
    }

    #[test]
    fn conjugator_matches_search(a in small_param(Family::D, 3), w in 0usize..24) {
        let g = group(Family::D, 3);
        let b = g[w].apply_param(&a).unwrap();
        let found = find_conjugator(&a, &b).expect("conjugate by construction");
        prop_assert!(found.is_in_weyl_group(Family::D));
        prop_assert_eq!(found.apply_param(&a).unwrap(), b);
    }

    #[test]
    fn dominantize_preserves_absolute_values(p in small_param(Family::D, 4)) {
        let d = dominantize(&p);
        let abs = |v: &[HalfInt]| v.iter().map(|x| x.abs()).sorted().collect::<Vec<_>>();
        prop_assert_eq!(abs(&p.mu), abs(&d.param.mu));
        prop_assert!(d.param.mu.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(d.param.mu.iter().all(|m| m.doubled() > 0));
        prop_assert!(d.element.is_in_weyl_group(Family::D));
        // either conjugate to the input, or to its image under the diagram flip
        let g = group(Family::D, 4);
        let target = if d.outer {
            WeylElement::outer_automorphism(4).apply_param(&p).unwrap()
        } else {
            p.clone()
        };
        prop_assert!(brute_conjugate(&g, &target, &d.param));
    }
}

#[test]
fn dominantize_outer_example() {
    let p = GenuineParam::new(
        Family::D,
        vec![HalfInt::HALF, -HalfInt::HALF],
        vec![Q::from_integer(1), Q::from_integer(2)],
    )
    .unwrap();
    let d = dominantize(&p);
    assert!(d.outer);
    assert_eq!(d.param.mu, vec![HalfInt::HALF; 2]);
    assert_eq!(d.param.nu, vec![Q::from_integer(1), Q::from_integer(-2)]);
}

/// Longest strictly decreasing subsequence of one residue class, by subsets.
fn longest_chain(nu: &[Q]) -> usize {
    let mut sorted = nu.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let n = sorted.len();
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let pick: Vec<Q> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| sorted[i]).collect();
        let ok = pick.windows(2).all(|w| w[0] > w[1])
            && pick.iter().all(|v| residue_class(*v) == residue_class(pick[0]));
        if ok {
            best = best.max(pick.len());
        }
    }
    best
}

#[test]
fn chain_example() {
    let nu: Vec<Q> = [9, 5, 5, 1, 1, -3, -7].iter().map(|v| Q::new(*v, 2)).collect();
    let chains = decompose_chains(&nu);
    assert_eq!(chains.len(), 2);
    assert_eq!(chains[0].len(), longest_chain(&nu));
    assert_eq!(chains[1], vec![Q::new(5, 2), Q::new(1, 2)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn chains_partition_and_are_longest(raw in prop::collection::vec(-6i64..=6, 1..10)) {
        let nu: Vec<Q> = raw.iter().map(|v| Q::new(*v, 2)).collect();
        let chains = decompose_chains(&nu);
        let mut all: Vec<Q> = chains.iter().flatten().copied().collect();
        all.sort();
        let mut want = nu.clone();
        want.sort();
        prop_assert_eq!(all, want);
        prop_assert_eq!(chains[0].len(), longest_chain(&nu));
    }
}

/// Greedy reading of the ½-class: maximal gap-2 runs through ½, then (type
/// B) through −3/2.
fn greedy_pairs(family: Family, values: &[HalfInt]) -> Option<StringPairs> {
    let mut left: Vec<i64> = values.iter().map(|v| v.doubled()).collect();
    let take = |left: &mut Vec<i64>, d: i64| -> bool {
        match left.iter().position(|x| *x == d) {
            Some(i) => {
                left.remove(i);
                true
            }
            None => false,
        }
    };
    let mut cols = Vec::new();
    loop {
        let seed = if left.contains(&1) {
            1
        } else if family == Family::B && left.contains(&-3) {
            -3
        } else {
            break;
        };
        take(&mut left, seed);
        let (mut x, mut y) = if seed == 1 { (1u32, 0u32) } else { (0, 1) };
        let mut up = seed + 4;
        while take(&mut left, up) {
            up += 4;
            x += 1;
        }
        let mut down = seed - 4;
        while take(&mut left, down) {
            down -= 4;
            y += 1;
        }
        cols.push((x, y));
    }
    if !left.is_empty() {
        return None;
    }
    cols.sort_by(|a, b| b.cmp(a));
    StringPairs::from_columns(family, &cols).ok()
}

#[test]
fn extraction_matches_greedy_on_all_pairs() {
    for family in [Family::D, Family::B] {
        for n in 1..=8 {
            for p in enumerate_pairs(family, n) {
                let m = p.to_multiset();
                assert_eq!(extract_pairs(family, &m).unwrap(), p);
                assert_eq!(greedy_pairs(family, &m).unwrap(), p);
            }
        }
    }
}

#[test]
fn extraction_examples() {
    let h = |v: &[i64]| v.iter().map(|d| HalfInt::from_doubled(*d)).collect::<Vec<_>>();
    let cases = [
        (Family::D, h(&[9, 5, 1, -3, -7, 5, 1]), vec![(3, 2), (2, 0)]),
        (Family::D, h(&[5, 1, -3, -7, -11, -15]), vec![(2, 4)]),
        (Family::D, h(&[13, 9, 5, 1]), vec![(4, 0)]),
        (Family::B, h(&[5, 1, -3]), vec![(2, 1)]),
        (Family::B, h(&[-3, -7]), vec![(0, 2)]),
    ];
    for (family, values, cols) in cases {
        let want = StringPairs::from_columns(family, &cols).unwrap();
        assert_eq!(extract_pairs(family, &values).unwrap(), want);
        assert_eq!(greedy_pairs(family, &values).unwrap(), want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn extraction_agrees_with_greedy(
        family in prop::sample::select(vec![Family::D, Family::B]),
        raw in prop::collection::vec(-3i64..=3, 1..9),
    ) {
        let values: Vec<HalfInt> = raw.iter().map(|m| HalfInt::from_doubled(1 + 4 * m)).collect();
        let greedy = greedy_pairs(family, &values)
            .filter(|p| {
                let mut a = p.to_multiset();
                let mut b = values.clone();
                a.sort();
                b.sort();
                a == b
            });
        match extract_pairs(family, &values) {
            Ok(p) => prop_assert_eq!(Some(p), greedy),
            Err(_) => prop_assert!(greedy.is_none()),
        }
    }
}

/// Direct reading of the inequalities.
fn unitarity_oracle(p: &StringPairs) -> (bool, bool, Option<usize>) {
    let x: Vec<i64> = p.x().iter().map(|v| *v as i64).collect();
    let y: Vec<i64> = p.y().iter().map(|v| *v as i64).collect();
    let k = x.len();
    let mut ok = true;
    let mut strict = true;
    let mut first = None;
    for i in 0..k {
        let next_x = x.get(i + 1).copied();
        let next_y = y.get(i + 1).copied();
        let (a, b) = match p.family() {
            Family::D => ((x[i], y[i]), next_x.map(|nx| (y[i] + 1, nx))),
            Family::B => ((y[i] + 1, x[i]), next_y.map(|ny| (x[i], ny))),
        };
        let mut bad = a.0 < a.1;
        strict &= a.0 > a.1;
        if let Some((l, r)) = b {
            bad |= l < r;
            strict &= l > r;
        }
        if bad && first.is_none() {
            first = Some(i + 1);
        }
        ok &= !bad;
    }
    (ok, ok && strict, first)
}

#[test]
fn unitarity_matches_oracle() {
    for family in [Family::D, Family::B] {
        for n in 1..=7 {
            for p in enumerate_pairs(family, n) {
                let (ok, strict, first) = unitarity_oracle(&p);
                match unitarity_test(&p) {
                    Unitarity::Satisfied { strict: s } => {
                        assert!(ok, "{p}");
                        assert_eq!(s, strict, "{p}");
                    }
                    Unitarity::Violated { index, .. } => {
                        assert!(!ok, "{p}");
                        assert_eq!(Some(index), first, "{p}");
                    }
                }
            }
        }
    }
    let b = StringPairs::from_columns(Family::B, &[(2, 0)]).unwrap();
    assert_eq!(
        unitarity_test(&b),
        Unitarity::Violated {
            index: 1,
            kind: Violation::XAboveYPlusOne
        }
    );
}

#[test]
fn peeling_examples() {
    let d = |cols: &[(u32, u32)]| StringPairs::from_columns(Family::D, cols).unwrap();
    let (stein, core) = peel_equalities(&d(&[(3, 0), (1, 0)])).unwrap();
    assert_eq!(stein.iter().map(|s| s.len).collect::<Vec<_>>(), vec![1]);
    assert_eq!(core, Some(d(&[(3, 0)])));
    let (stein, core) = peel_equalities(&d(&[(2, 2)])).unwrap();
    assert_eq!(stein.iter().map(|s| s.len).collect::<Vec<_>>(), vec![4]);
    assert_eq!(core, None);
    let (stein, core) = peel_equalities(&d(&[(1, 1), (1, 1)])).unwrap();
    assert_eq!(stein.iter().map(|s| s.len).collect::<Vec<_>>(), vec![2, 2]);
    assert_eq!(core, None);
}

/// Stein pair accepted iff the direct condition |t| < 1 holds.
#[test]
fn stein_examples() {
    let t = Q::new(1, 2);
    assert_eq!(comp_nu(2, t), vec![Q::new(3, 2), Q::new(-1, 2)]);
    assert_eq!(comp_nu(3, -t), vec![Q::new(3, 2), Q::new(-1, 2), Q::new(-5, 2)]);
    let mut nu = comp_nu(2, t);
    nu.extend(comp_nu(2, t).iter().map(|v| -v));
    let v = classify_gl(&nu).unwrap();
    assert!(v.is_unitary());
    assert_eq!(v.factors, vec![GlFactor::SteinPair { a: 2, t, twist: 1 }]);
    let q = Q::new(1, 4);
    let v = classify_gl(&[q, -q]).unwrap();
    assert_eq!(v.factors, vec![GlFactor::SteinPair { a: 1, t: q, twist: 1 }]);
}

// Orbit dimensions from an explicit nilpotent in so(S): rank of ad X.

type Mat = Vec<Vec<Q>>;

/// Nilpotent X and symmetric form S (S² = 1) with XᵀS + SX = 0 and Jordan
/// type `rows` (even rows must come in pairs).
fn nilpotent(rows: &[u32]) -> (Mat, Mat) {
    let n: usize = rows.iter().map(|r| *r as usize).sum();
    let mut x = vec![vec![Q::zero(); n]; n];
    let mut s = vec![vec![Q::zero(); n]; n];
    let sign = |i: usize| if i.is_multiple_of(2) { Q::one() } else { -Q::one() };
    let mut at = 0;
    let mut i = 0;
    while i < rows.len() {
        let k = rows[i] as usize;
        let chain = |x: &mut Mat, base: usize| {
            for j in 0..k - 1 {
                x[base + j + 1][base + j] = Q::one();
            }
        };
        if k % 2 == 1 {
            chain(&mut x, at);
            for a in 0..k {
                s[at + a][at + k - 1 - a] = sign(a + 1);
            }
            at += k;
            i += 1;
        } else {
            assert_eq!(rows[i + 1] as usize, k);
            chain(&mut x, at);
            chain(&mut x, at + k);
            for a in 0..k {
                let b = k - 1 - a;
                s[at + a][at + k + b] = sign(a + 1);
                s[at + k + b][at + a] = sign(a + 1);
            }
            at += 2 * k;
            i += 2;
        }
    }
    (x, s)
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c];
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c] / pivot;
                let (top, rest) = m.split_at_mut(i.max(r));
                let (src, dst) = if i > r { (&top[r], &mut rest[0]) } else { (&rest[0], &mut top[i]) };
                for (d, s) in dst[c..].iter_mut().zip(&src[c..]) {
                    *d -= *s * f;
                }
            }
        }
        r += 1;
    }
    r
}

fn orbit_dim_by_rank(rows: &[u32]) -> usize {
    let (x, s) = nilpotent(rows);
    let n = x.len();
    let xt: Mat = (0..n).map(|i| (0..n).map(|j| x[j][i]).collect()).collect();
    assert_eq!(mul(&xt, &s), mul(&s, &x).iter().map(|r| r.iter().map(|v| -v).collect()).collect::<Mat>());
    // basis S·(E_ij − E_ji), image [X, Y] flattened
    let mut image = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut a = vec![vec![Q::zero(); n]; n];
            a[i][j] = Q::one();
            a[j][i] = -Q::one();
            let y = mul(&s, &a);
            let xy = mul(&x, &y);
            let yx = mul(&y, &x);
            image.push((0..n).flat_map(|r| (0..n).map(move |c| (r, c))).map(|(r, c)| xy[r][c] - yx[r][c]).collect());
        }
    }
    rank(image)
}

fn rows_sorted(o: &OrbitColumns) -> Vec<u32> {
    o.rows()
}

#[test]
fn orbit_dims_match_linear_algebra() {
    for (cols, ambient, want) in [(vec![6, 5, 1], 12, 36), (vec![4, 3, 3, 2], 12, 48), (vec![4, 2], 6, 6)] {
        let o = OrbitColumns::new(cols, ambient).unwrap();
        assert!(o.is_orthogonal());
        assert_eq!(orbit_dim(&o), want);
        assert_eq!(orbit_dim_by_rank(&rows_sorted(&o)) as i64, want);
    }
    // the principal nilpotent of so(N) has dim N(N−1)/2 − ⌊N/2⌋
    for n in [2u32, 5, 6, 7] {
        let principal: Vec<u32> = if n % 2 == 1 { vec![n] } else { vec![n - 1, 1] };
        assert_eq!(orbit_dim_by_rank(&principal) as i64, nilcone_dim(n));
    }
}

fn strict_cores(family: Family, max_n: u32) -> Vec<StringPairs> {
    (1..=max_n)
        .flat_map(|n| enumerate_pairs(family, n))
        .filter(|p| unitarity_test(p) == Unitarity::Satisfied { strict: true })
        .collect()
}

#[test]
fn attached_orbits_match_linear_algebra() {
    for family in [Family::D, Family::B] {
        for p in strict_cores(family, 4) {
            let o = attach_orbit(&p).unwrap();
            assert!(o.is_orthogonal(), "{p}");
            assert_eq!(orbit_dim(&o), orbit_dim_by_rank(&o.rows()) as i64, "{p}");
        }
    }
    for p in strict_cores(Family::D, 3) {
        let small = special_orbit(&p).unwrap();
        assert_eq!(orbit_dim(&small), orbit_dim_by_rank(&small.rows()) as i64, "{p}");
        let big = attach_orbit(&p).unwrap();
        let lhs = nilcone_dim(big.ambient) - orbit_dim_by_rank(&big.rows()) as i64;
        let rhs = 2 * (nilcone_dim(small.ambient) - orbit_dim_by_rank(&small.rows()) as i64);
        assert_eq!(codim_identity_holds(&p).unwrap(), lhs == rhs, "{p}");
    }
}

#[test]
fn padding_decreases_imbalance() {
    for n in 1..=7 {
        for p in enumerate_pairs(Family::D, n) {
            if p.columns().all(|(x, y)| x <= y) {
                let (steps, out) = pad_case_a(&p).unwrap();
                let imbalance = |q: &StringPairs| -> i64 {
                    q.columns().map(|(x, y)| y as i64 - x as i64).sum()
                };
                for s in &steps {
                    assert!(imbalance(&s.after) < imbalance(&s.before), "{p}");
                    assert_eq!(s.after.n(), s.before.n() + s.size() as usize);
                }
                assert!(out.columns().all(|(x, y)| x == y), "{p}");
            }
            if p.columns().all(|(x, y)| x > y) {
                let (_, out) = pad_case_b(&p).unwrap();
                assert!(out.columns().all(|(x, y)| x == y + 1), "{p}");
            }
        }
    }
    let (steps, _) = pad_case_a(&StringPairs::parse(Family::D, "1;2").unwrap()).unwrap();
    assert_eq!(steps[0].column, (2, 1));
    let (steps, out) = pad_case_a(&StringPairs::parse(Family::D, "1;3").unwrap()).unwrap();
    assert!(!steps.is_empty());
    assert_eq!(out.y()[0], 3);
    assert!(pad_case_a(&StringPairs::parse(Family::D, "1;1").unwrap()).unwrap().0.is_empty());
    assert!(pad_case_b(&StringPairs::parse(Family::D, "2;1").unwrap()).unwrap().0.is_empty());
    let (_, out) = pad_case_b(&StringPairs::parse(Family::D, "3;0").unwrap()).unwrap();
    assert_eq!(out, StringPairs::parse(Family::D, "3 2 1;2 1 0").unwrap());
}
