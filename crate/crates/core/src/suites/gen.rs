//! Random instances for the verification suites. Every generator draws only from the
//! supplied RNG, so an instance is fixed by `(seed, stream)`.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fermat::FermatFamily;
use crate::jetalg::{CurveJet, Reparam};
use crate::multipoly::{Monomial, MultiIndex, Poly, Rat, Var};
use crate::tower::GammaParams;

/// The RNG for instance `index` of check `check`.
pub fn instance_rng(seed: u64, check: u32, index: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((u64::from(check) << 32) | u64::from(index));
    rng
}

/// `p / q` with `|p| <= 5`, `1 <= q <= 3`.
pub fn small_rat<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into())
}

pub fn nonzero_rat<R: Rng>(rng: &mut R) -> Rat {
    loop {
        let r = small_rat(rng);
        if r != Rat::from_integer(0.into()) {
            return r;
        }
    }
}

/// `z1, ..., zn`.
pub fn coords(n: u32) -> Vec<Var> {
    (1..=n).map(|i| Var::base(&format!("z{i}"))).collect()
}

fn random_monomial<R: Rng>(rng: &mut R, vars: &[Var], max_deg: u32) -> Monomial {
    let deg = rng.gen_range(0..=max_deg);
    let mut m = Monomial::one();
    for _ in 0..deg {
        if vars.is_empty() {
            break;
        }
        let v = vars[rng.gen_range(0..vars.len())];
        m = m.mul(&Monomial::var(v));
    }
    m
}

/// Up to `max_terms` random terms of degree at most `max_deg`; may be zero.
pub fn poly<R: Rng>(rng: &mut R, vars: &[Var], max_deg: u32, max_terms: usize) -> Poly {
    let terms = rng.gen_range(1..=max_terms);
    let mut p = Poly::zero();
    for _ in 0..terms {
        let m = random_monomial(rng, vars, max_deg);
        p = &p + &Poly::monomial(m, small_rat(rng));
    }
    p
}

pub fn nonzero_poly<R: Rng>(rng: &mut R, vars: &[Var], max_deg: u32, max_terms: usize) -> Poly {
    loop {
        let p = poly(rng, vars, max_deg, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A non-constant polynomial: the divisor of a log pair.
pub fn sigma<R: Rng>(rng: &mut R, vars: &[Var], max_deg: u32) -> Poly {
    loop {
        let p = poly(rng, vars, max_deg, 3);
        if !p.is_constant() {
            return p;
        }
    }
}

/// A polynomial in the coordinates and their jets up to order `k`.
pub fn jet_poly<R: Rng>(rng: &mut R, vars: &[Var], k: u32, max_deg: u32, max_terms: usize) -> Poly {
    let mut all = Vec::new();
    for v in vars {
        for j in 0..=k {
            all.push(v.derived(j));
        }
    }
    poly(rng, &all, max_deg, max_terms)
}

/// An isobaric polynomial of weight `m` in the jets `D1..Dk` with polynomial coefficients in the base.
pub fn isobaric<R: Rng>(rng: &mut R, vars: &[Var], k: u32, m: u32, terms: usize) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..terms {
        let mut left = m;
        let mut mono = Monomial::one();
        while left > 0 {
            let j = rng.gen_range(1..=left.min(k));
            let v = vars[rng.gen_range(0..vars.len())];
            mono = mono.mul(&Monomial::var(v.derived(j)));
            left -= j;
        }
        let coeff = poly(rng, vars, 1, 2);
        p = &p + &(&coeff * &Poly::monomial(mono, Rat::from_integer(1.into())));
    }
    p
}

pub fn curve_jet<R: Rng>(rng: &mut R, vars: &[Var], k: u32) -> CurveJet {
    CurveJet::from_pairs(k, vars.iter().map(|v| (*v, (0..=k).map(|_| small_rat(rng)).collect()))).expect("shape")
}

pub fn reparam<R: Rng>(rng: &mut R, k: u32) -> Reparam {
    let mut c = vec![nonzero_rat(rng)];
    c.extend((1..k).map(|_| small_rat(rng)));
    Reparam::new(c).expect("a1 is nonzero")
}

pub fn gamma_params<R: Rng>(rng: &mut R, n: u32, k: u32) -> GammaParams {
    GammaParams {
        z: (0..n).map(|_| small_rat(rng)).collect(),
        w: (1..n).map(|_| (0..k).map(|_| small_rat(rng)).collect()).collect(),
    }
}

/// A Fermat family with `n <= 2`, `delta <= 2`, `r <= 4`, `k <= 3`, `eps <= 3`.
pub fn fermat_family<R: Rng>(rng: &mut R) -> FermatFamily {
    let n = rng.gen_range(1..=2);
    let extra = rng.gen_bool(0.3);
    let big_n = if extra { n + 1 } else { n };
    let delta = rng.gen_range(1..=2);
    let r = rng.gen_range(1..=4);
    let k = rng.gen_range(1..=3);
    let eps = rng.gen_range(0..=3);
    fermat_family_with(rng, n, big_n, delta, eps, r, k)
}

/// A family with the given shape; `tau` is the affine chart plus, when `N > n`, shifted coordinates `z_i + c`.
pub fn fermat_family_with<R: Rng>(rng: &mut R, n: u32, big_n: u32, delta: u32, eps: u32, r: u32, k: u32) -> FermatFamily {
    let vars = coords(n);
    let mut tau = FermatFamily::affine_tau(n);
    while tau.len() < big_n as usize + 1 {
        let v = vars[rng.gen_range(0..vars.len())];
        tau.push(&Poly::var(v) + &Poly::constant(nonzero_rat(rng)));
    }
    let mut a = BTreeMap::new();
    for idx in MultiIndex::all_of_weight(big_n as usize + 1, delta) {
        if rng.gen_bool(0.75) {
            let p = poly(rng, &vars, eps, 3);
            if !p.is_zero() {
                a.insert(idx, p);
            }
        }
    }
    if a.is_empty() {
        let idx = MultiIndex::all_of_weight(big_n as usize + 1, delta).remove(0);
        a.insert(idx, Poly::one());
    }
    FermatFamily::new(n, big_n, delta, eps, r, k, tau, a).expect("generated family is valid")
}
