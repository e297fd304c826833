#![allow(dead_code)]

use formcalc::form::MultiIndex;
use formcalc::scalar::rational;
use formcalc::{Form, GaussianRational, WirtingerPolynomial};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scalar(r: &mut impl Rng) -> GaussianRational {
    let re = rational(r.gen_range(-4..=4), r.gen_range(1..=3));
    let im = if r.gen_bool(0.4) {
        rational(r.gen_range(-3..=3), r.gen_range(1..=2))
    } else {
        rational(0, 1)
    };
    GaussianRational::new(re, im)
}

fn nonzero_scalar(r: &mut impl Rng) -> GaussianRational {
    loop {
        let s = scalar(r);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random polynomial of total degree at most `max_deg`; only the variables
/// allowed by `allow(slot)` appear (slots `0..n` are `z`, `n..2n` are `zb`).
pub fn poly_in(
    r: &mut impl Rng,
    n: usize,
    max_deg: u32,
    max_terms: usize,
    allow: impl Fn(usize) -> bool,
) -> WirtingerPolynomial {
    let slots: Vec<usize> = (0..2 * n).filter(|&s| allow(s)).collect();
    let k = r.gen_range(1..=max_terms);
    let terms = (0..k).map(|_| {
        let mut e = vec![0u32; 2 * n];
        let deg = r.gen_range(0..=max_deg);
        for _ in 0..deg {
            if slots.is_empty() {
                break;
            }
            e[slots[r.gen_range(0..slots.len())]] += 1;
        }
        (e, nonzero_scalar(r))
    });
    WirtingerPolynomial::from_terms(n, terms.collect::<Vec<_>>()).unwrap()
}

pub fn poly(r: &mut impl Rng, n: usize, max_deg: u32, max_terms: usize) -> WirtingerPolynomial {
    poly_in(r, n, max_deg, max_terms, |_| true)
}

pub fn subset(r: &mut impl Rng, n: usize, k: usize) -> MultiIndex {
    let all = MultiIndex::all_of_size(n, k);
    all[r.gen_range(0..all.len())].clone()
}

/// Random homogeneous `(p,q)`-form.
pub fn form_pq(r: &mut impl Rng, n: usize, p: usize, q: usize, max_deg: u32, max_terms: usize) -> Form {
    let mut out = Form::zero(n);
    for _ in 0..r.gen_range(1..=max_terms) {
        let (a, b) = (subset(r, n, p), subset(r, n, q));
        let c = poly(r, n, max_deg, 2);
        out = out.add(&Form::monomial(n, a.as_slice(), b.as_slice(), c).unwrap());
    }
    out
}

/// Random form of total degree `k`, mixing bidegrees.
pub fn form_of_degree(r: &mut impl Rng, n: usize, k: usize, max_deg: u32, max_terms: usize) -> Form {
    let mut out = Form::zero(n);
    for _ in 0..r.gen_range(1..=max_terms) {
        let lo = k.saturating_sub(n);
        let p = r.gen_range(lo..=k.min(n));
        out = out.add(&form_pq(r, n, p, k - p, max_deg, 1));
    }
    out
}

/// Random form with terms of any degree.
pub fn form(r: &mut impl Rng, n: usize, max_deg: u32, max_terms: usize) -> Form {
    let mut out = Form::zero(n);
    for _ in 0..r.gen_range(1..=max_terms) {
        let k = r.gen_range(0..=2 * n);
        out = out.add(&form_of_degree(r, n, k, max_deg, 1));
    }
    out
}

pub fn arb_seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

pub fn arb_dim() -> impl Strategy<Value = usize> {
    1usize..=4
}
