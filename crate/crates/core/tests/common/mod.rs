#![allow(dead_code)]

use proptest::prelude::*;

use spinrep::spinclass::pairs::enumerate_pairs;
use spinrep::spinclass::pairs_to_param;
use spinrep::weyl::WeylElement;
use spinrep::{Family, GenuineParam, HalfInt, Q};

pub fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(vec![Family::D, Family::B])
}

fn small_q() -> impl Strategy<Value = Q> {
    prop_oneof![
        (-8i64..=8).prop_map(|n| Q::new(n, 2)),
        (-12i64..=12).prop_map(|n| Q::new(n, 4)),
        (-9i64..=9).prop_map(|n| Q::new(n, 3)),
    ]
}

fn mu_value() -> impl Strategy<Value = HalfInt> {
    prop::sample::select(vec![1i64, 1, 1, 3, 3, 5]).prop_map(HalfInt::from_doubled)
}

/// Coordinates (μ, ν), (μ, −ν) in pairs plus a few (μ, 0): Hermitian by
/// construction.
fn symmetric(family: Family, max_rank: usize) -> impl Strategy<Value = GenuineParam> {
    (
        prop::collection::vec((mu_value(), small_q()), 0..=max_rank / 2),
        prop::collection::vec(mu_value(), 0..=1),
    )
        .prop_filter("nonempty", |(p, z)| !p.is_empty() || !z.is_empty())
        .prop_map(move |(pairs, zeros)| {
            let mut mu = Vec::new();
            let mut nu = Vec::new();
            for (m, v) in pairs {
                mu.extend([m, m]);
                nu.extend([v, -v]);
            }
            for m in zeros {
                mu.push(m);
                nu.push(Q::from_integer(0));
            }
            GenuineParam::new(family, mu, nu).unwrap()
        })
}

/// Parameters built from string pairs, with an optional extra GL block.
fn from_pairs(family: Family, max_rank: usize) -> impl Strategy<Value = GenuineParam> {
    let n_max = (max_rank / 2).max(1) as u32;
    let all: Vec<GenuineParam> = (1..=n_max)
        .flat_map(|n| enumerate_pairs(family, n))
        .map(|p| pairs_to_param(&p))
        .collect();
    prop::sample::select(all)
}

/// Mostly Hermitian parameters of rank ≤ `max_rank`.
pub fn hermitian_param(max_rank: usize) -> impl Strategy<Value = GenuineParam> {
    family().prop_flat_map(move |f| prop_oneof![symmetric(f, max_rank), from_pairs(f, max_rank)])
}

/// Arbitrary genuine parameters, rarely Hermitian.
pub fn any_param(max_rank: usize) -> impl Strategy<Value = GenuineParam> {
    (family(), 1..=max_rank).prop_flat_map(|(f, n)| {
        (
            prop::collection::vec(prop::sample::select(vec![-3i64, -1, 1, 3]), n),
            prop::collection::vec(-4i64..=4, n),
        )
            .prop_map(move |(mu, nu)| {
                GenuineParam::new(
                    f,
                    mu.into_iter().map(HalfInt::from_doubled).collect(),
                    nu.into_iter().map(|v| Q::new(v, 2)).collect(),
                )
                .unwrap()
            })
    })
}

pub fn weyl_element(family: Family, n: usize) -> impl Strategy<Value = WeylElement> {
    (
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        prop::collection::vec(prop::bool::ANY, n),
    )
        .prop_map(move |(perm, flips)| {
            let mut signs: Vec<i8> = flips.iter().map(|f| if *f { -1 } else { 1 }).collect();
            if family == Family::D && n > 0 && signs.iter().filter(|s| **s < 0).count() % 2 == 1 {
                signs[n - 1] = -signs[n - 1];
            }
            WeylElement::from_parts(perm, signs).unwrap()
        })
}

/// A parameter together with a Weyl conjugate of it.
pub fn conjugate_pair(max_rank: usize) -> impl Strategy<Value = (GenuineParam, GenuineParam)> {
    hermitian_param(max_rank).prop_flat_map(|p| {
        let w = weyl_element(p.group.family, p.group.rank);
        (Just(p), w).prop_map(|(p, w)| {
            let q = w.apply_param(&p).unwrap();
            (p, q)
        })
    })
}
