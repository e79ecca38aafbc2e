#![allow(dead_code)]

use logjet::multipoly::{Monomial, Poly, Rat, Var};
use proptest::prelude::*;

pub fn coords(n: u32) -> Vec<Var> {
    (1..=n).map(|i| Var::base(&format!("z{i}"))).collect()
}

pub fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

pub fn nonzero_rat() -> impl Strategy<Value = Rat> {
    rat_strategy().prop_filter("nonzero", |r| *r != Rat::from_integer(0.into()))
}

/// Polynomials in `vars` with at most `terms` terms and exponents up to `max_exp`.
pub fn poly_in(vars: Vec<Var>, terms: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
    let width = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_exp, width), rat_strategy()), 0..=terms).prop_map(
        move |ts| Poly::from_terms(ts.into_iter().map(|(e, c)| (Monomial::from_pairs(vars.iter().copied().zip(e)), c))),
    )
}

pub fn nonzero_poly_in(vars: Vec<Var>, terms: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
    poly_in(vars, terms, max_exp).prop_filter("nonzero", |p| !p.is_zero())
}

/// Base coordinates together with their jets up to order `k`.
pub fn with_jets(vars: &[Var], k: u32) -> Vec<Var> {
    vars.iter().flat_map(|v| (0..=k).map(move |j| v.derived(j))).collect()
}
