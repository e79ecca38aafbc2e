//! Randomized identity suites. Each check draws its instances from `(seed, check id, index)`,
//! runs them in parallel, and reports counts in a fixed order.

pub mod gen;

use std::fmt;

use num_traits::{One, Pow, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::fermat::{
    cramer_identity_check, nabla_factor, plucker_factorization_defect, rank_probe, system_decomposition_defect,
    graph_perturbation, system_residual_with, FermatError, RankSample, TotalChart,
};
use crate::jetalg::{invariance_defect, JetPoly, Weight};
use crate::logconn::{
    dlog, nabla, non_log_defect, restrict, restrict_pair, verify_leibniz, wronskian_abs, wronskian_log, LogPair,
};
use crate::multipoly::{monomials_up_to, MultiIndex, Poly, Rat, RatFunc, Var};
use crate::tower::{nabla_chart, omega_chart, omega_consistency_defect, verify_chart_identity, DivisorMode, TowerChart};

/// Default seed when neither a flag nor `LOGJET_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_190_501;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Jetalg,
    Logconn,
    Tower,
    Fermat,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        match s {
            "jetalg" => Ok(Suite::Jetalg),
            "logconn" => Ok(Suite::Logconn),
            "tower" => Ok(Suite::Tower),
            "fermat" => Ok(Suite::Fermat),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Size {
    Small,
    Medium,
}

/// Instance counts per check.
#[derive(Debug, Clone, Copy)]
pub struct Counts {
    pub jet_identities: u32,
    pub vanishing: u32,
    pub leibniz: u32,
    pub non_log: u32,
    pub covariance: u32,
    pub wronskian_shape: u32,
    pub chart_draws: u32,
    pub omega: u32,
    pub families: u32,
    pub plucker: u32,
    pub rank: u32,
}

impl Size {
    pub fn counts(self) -> Counts {
        match self {
            Size::Small => Counts {
                jet_identities: 30,
                vanishing: 40,
                leibniz: 40,
                non_log: 20,
                covariance: 20,
                wronskian_shape: 20,
                chart_draws: 3,
                omega: 20,
                families: 8,
                plucker: 4,
                rank: 4,
            },
            Size::Medium => Counts {
                jet_identities: 200,
                vanishing: 200,
                leibniz: 200,
                non_log: 100,
                covariance: 100,
                wronskian_shape: 100,
                chart_draws: 50,
                omega: 100,
                families: 50,
                plucker: 20,
                rank: 10,
            },
        }
    }
}

/// Deliberate defects for negative controls.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Faults {
    /// Runs the connection recursion with `+` in place of `-`.
    pub corrupt_nabla: bool,
    /// Substitutes `t := F + z1` instead of `t := F`.
    pub perturb_graph: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: u32,
    pub total: u32,
    /// The first few failing instances.
    pub failures: Vec<String>,
}

impl CheckResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "ok" } else { "FAILED" };
        write!(f, "{:<36} {:>6}/{:<6} {}", self.name, self.passed, self.total, status)
    }
}

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs `count` instances of a check in parallel; results keep index order.
pub fn run_check<F>(name: &'static str, id: u32, seed: u64, count: u32, f: F) -> CheckResult
where
    F: Fn(&mut ChaCha8Rng) -> Outcome + Sync,
{
    let outcomes: Vec<Outcome> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = gen::instance_rng(seed, id, i);
            f(&mut rng).map_err(|e| format!("#{i}: {e}"))
        })
        .collect();
    let passed = outcomes.iter().filter(|o| o.is_ok()).count() as u32;
    let failures = outcomes.into_iter().filter_map(Result::err).take(5).collect();
    CheckResult { name, passed, total: count, failures }
}

fn err_str<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---- jetalg ----

pub fn derivation_leibniz(seed: u64, count: u32) -> CheckResult {
    run_check("jetalg.derivation_leibniz", 1, seed, count, |rng| {
        let vars = gen::coords(rng.gen_range(1..=3));
        let p = JetPoly::from_poly(gen::jet_poly(rng, &vars, 2, 3, 4));
        let q = JetPoly::from_poly(gen::jet_poly(rng, &vars, 2, 3, 4));
        let lhs = (&p * &q).total_derive();
        let rhs = &(&p.total_derive() * &q) + &(&p * &q.total_derive());
        ensure(lhs == rhs, || format!("d({p} * {q})"))
    })
}

pub fn derivation_weight(seed: u64, count: u32) -> CheckResult {
    run_check("jetalg.derivation_weight", 2, seed, count, |rng| {
        let vars = gen::coords(rng.gen_range(1..=3));
        let m = rng.gen_range(1..=4);
        let p = JetPoly::from_poly(gen::isobaric(rng, &vars, 3, m, 3));
        ensure(p.weight() == Weight::Isobaric(m) || p.is_zero(), || format!("{p} is not of weight {m}"))?;
        let d = p.total_derive();
        ensure(d.is_zero() || d.weight() == Weight::Isobaric(m + 1), || format!("d({p}) = {d}"))
    })
}

pub fn rescale_equivariance(seed: u64, count: u32) -> CheckResult {
    run_check("jetalg.rescale_equivariance", 3, seed, count, |rng| {
        let vars = gen::coords(rng.gen_range(1..=3));
        let m = rng.gen_range(1..=4);
        let p = JetPoly::from_poly(gen::isobaric(rng, &vars, 3, m, 3));
        let f = gen::curve_jet(rng, &vars, 3);
        let lambda = gen::nonzero_rat(rng);
        let lhs = p.pullback(&f.rescale(&lambda)).map_err(err_str)?;
        let rhs = p.pullback(&f).map_err(err_str)? * Pow::pow(&lambda, m);
        ensure(lhs == rhs, || format!("{p} at lambda = {lambda}"))
    })
}

pub fn right_action(seed: u64, count: u32) -> CheckResult {
    run_check("jetalg.right_action", 4, seed, count, |rng| {
        let vars = gen::coords(rng.gen_range(1..=3));
        let k = rng.gen_range(1..=4);
        let f = gen::curve_jet(rng, &vars, k);
        let (phi, psi) = (gen::reparam(rng, k), gen::reparam(rng, k));
        let lhs = f.reparametrize(&phi).and_then(|g| g.reparametrize(&psi)).map_err(err_str)?;
        let rhs = f.reparametrize(&phi.compose(&psi)).map_err(err_str)?;
        ensure(lhs == rhs, || "f o (phi o psi) differs from (f o phi) o psi".into())
    })
}

/// `W_abs(s_0..s_k)` picks up `phi'(0)^(k(k+1)/2)` under reparametrization.
pub fn wronskian_covariance(seed: u64, count: u32) -> CheckResult {
    run_check("jetalg.wronskian_covariance", 5, seed, count, |rng| {
        let vars = gen::coords(rng.gen_range(1..=2));
        let k = rng.gen_range(1..=3u32);
        let sections: Vec<Poly> = (0..=k).map(|_| gen::nonzero_poly(rng, &vars, 3, 3)).collect();
        let w = wronskian_abs(&sections);
        let samples: Vec<_> = (0..2).map(|_| (gen::curve_jet(rng, &vars, k), gen::reparam(rng, k))).collect();
        let defects = invariance_defect(&w, k * (k + 1) / 2, &samples).map_err(err_str)?;
        ensure(defects.iter().all(Zero::is_zero), || format!("W_abs of {} sections", k + 1))
    })
}

/// `d^2 z1` is not invariant: its defect is `z1'(0) phi''(0)`, nonzero on the drawn samples.
pub fn non_invariant_detected(seed: u64, count: u32) -> CheckResult {
    run_check("jetalg.non_invariant_detected", 6, seed, count, |rng| {
        let z1 = Var::base("z1");
        let k = rng.gen_range(2..=4);
        let mut f = gen::curve_jet(rng, &[z1], k);
        let mut d = f.derivatives(&z1).expect("z1").to_vec();
        d[1] = gen::nonzero_rat(rng);
        f = crate::jetalg::CurveJet::from_pairs(k, [(z1, d)]).map_err(err_str)?;
        let mut c = gen::reparam(rng, k).coeffs().to_vec();
        c[1] = gen::nonzero_rat(rng);
        let phi = crate::jetalg::Reparam::new(c).map_err(err_str)?;
        let p = JetPoly::from_poly(Poly::var(z1.derived(2)));
        let defect = invariance_defect(&p, 2, &[(f, phi)]).map_err(err_str)?;
        ensure(!defect[0].is_zero(), || "d^2 z1 passed the invariance test".into())
    })
}

// ---- logconn ----

/// `nabla^k s` by the recursion only, with the sign flipped when the fault is active.
fn suite_nabla(k: u32, s: &Poly, pair: &LogPair, faults: Faults) -> Result<JetPoly, String> {
    if !faults.corrupt_nabla {
        return nabla(k, s, pair).map(|n| n.into_body()).map_err(err_str);
    }
    let dl = dlog(pair);
    let mut cur = JetPoly::from_poly(s.clone());
    for _ in 0..k {
        cur = &cur.total_derive() + &(&cur * &dl);
    }
    Ok(cur)
}

pub fn tautological_vanishing(seed: u64, count: u32, faults: Faults) -> CheckResult {
    run_check("logconn.tautological_vanishing", 10, seed, count, move |rng| {
        let vars = gen::coords(rng.gen_range(1..=3));
        let k = rng.gen_range(1..=4);
        let sigma = gen::sigma(rng, &vars, 3);
        let pair = LogPair::new(vars, sigma.clone()).map_err(err_str)?;
        let v = suite_nabla(k, &sigma, &pair, faults)?;
        ensure(v.is_zero(), || format!("nabla^{k}({sigma}) = {v}"))
    })
}

pub fn leibniz(seed: u64, count: u32) -> CheckResult {
    run_check("logconn.leibniz", 11, seed, count, |rng| {
        let vars = gen::coords(rng.gen_range(1..=3));
        let k = rng.gen_range(1..=4);
        let sigma = gen::sigma(rng, &vars, 2);
        let s = gen::nonzero_poly(rng, &vars, 3, 3);
        let pair = LogPair::new(vars, sigma.clone()).map_err(err_str)?;
        let d = verify_leibniz(k, &s, &pair).map_err(err_str)?;
        ensure(d.is_zero(), || format!("k = {k}, s = {s}, sigma = {sigma}"))
    })
}

pub fn non_log_lemma(seed: u64, count: u32) -> CheckResult {
    run_check("logconn.non_log_lemma", 12, seed, count, |rng| {
        let vars = gen::coords(rng.gen_range(1..=3));
        let k = rng.gen_range(1..=3);
        let sigma = gen::sigma(rng, &vars, 2);
        let gs: Vec<Poly> = (0..k).map(|_| gen::nonzero_poly(rng, &vars, 2, 3)).collect();
        let pair = LogPair::new(vars, sigma.clone()).map_err(err_str)?;
        let d = non_log_defect(&gs, &pair).map_err(err_str)?;
        ensure(d.is_zero(), || format!("sigma = {sigma}, k = {k}"))
    })
}

pub fn restriction(seed: u64, count: u32) -> CheckResult {
    run_check("logconn.restriction", 13, seed, count, |rng| {
        let vars = gen::coords(rng.gen_range(2..=3));
        let k = rng.gen_range(1..=2);
        let last = *vars.last().expect("n >= 2");
        let mut sigma = gen::sigma(rng, &vars, 2);
        while crate::logconn::restrict_poly(&sigma, &last).is_constant() {
            sigma = gen::sigma(rng, &vars, 2);
        }
        let gs: Vec<Poly> = (0..k).map(|_| gen::nonzero_poly(rng, &vars, 2, 3)).collect();
        let pair = LogPair::new(vars, sigma.clone()).map_err(err_str)?;
        let lhs = restrict(&wronskian_log(&gs, &pair).map_err(err_str)?, &last).map_err(err_str)?;
        let rpair = restrict_pair(&pair, &last).map_err(err_str)?;
        let rgs: Vec<Poly> = gs.iter().map(|g| crate::logconn::restrict_poly(g, &last)).collect();
        let rhs = wronskian_log(&rgs, &rpair).map_err(err_str)?;
        ensure(lhs == rhs, || format!("sigma = {sigma}"))
    })
}

pub fn wronskian_shape(seed: u64, count: u32) -> CheckResult {
    run_check("logconn.wronskian_alternating_linear", 14, seed, count, |rng| {
        let vars = gen::coords(rng.gen_range(1..=2));
        let k = rng.gen_range(2..=3usize);
        let sigma = gen::sigma(rng, &vars, 2);
        let pair = LogPair::new(vars.clone(), sigma).map_err(err_str)?;
        let gs: Vec<Poly> = (0..k).map(|_| gen::nonzero_poly(rng, &vars, 2, 3)).collect();
        let w = |s: &[Poly]| wronskian_log(s, &pair).map(|w| w.into_body()).map_err(err_str);
        let base = w(&gs)?;
        let mut swapped = gs.clone();
        swapped.swap(0, 1);
        ensure(w(&swapped)? == -&base, || "swap did not negate".into())?;
        let extra = gen::nonzero_poly(rng, &vars, 2, 3);
        let (a, b) = (gen::small_rat(rng), gen::small_rat(rng));
        let mut mixed = gs.clone();
        mixed[0] = &gs[0].scale(&a) + &extra.scale(&b);
        let mut other = gs.clone();
        other[0] = extra;
        let rhs = &base.scale(&a) + &w(&other)?.scale(&b);
        ensure(w(&mixed)? == rhs, || "not linear in the first section".into())
    })
}

// ---- tower ----

/// Every monomial of degree <= 3 in `n <= 3` variables, every `1 <= j <= k <= 4`, `draws` parameter draws each.
pub fn chart_identity(seed: u64, draws: u32) -> CheckResult {
    let mut cases = Vec::new();
    for n in 1..=3u32 {
        for m in monomials_up_to(&gen::coords(n), 3) {
            for k in 1..=4u32 {
                for j in 1..=k {
                    cases.push((n, Poly::monomial(m.clone(), Rat::one()), j, k));
                }
            }
        }
    }
    let total = cases.len() as u32 * draws;
    let outcomes: Vec<Outcome> = cases
        .par_iter()
        .enumerate()
        .flat_map_iter(|(c, (n, f, j, k))| {
            (0..draws).map(move |d| {
                let mut rng = gen::instance_rng(seed, 20, c as u32 * 1000 + d);
                let params = gen::gamma_params(&mut rng, *n, *k);
                let defect = verify_chart_identity(f, *j, &params).map_err(err_str)?;
                ensure(defect.is_zero(), || format!("f = {f}, j = {j}, k = {k}, n = {n}"))
            })
        })
        .collect();
    let passed = outcomes.iter().filter(|o| o.is_ok()).count() as u32;
    let failures = outcomes.into_iter().filter_map(Result::err).take(5).collect();
    CheckResult { name: "tower.chart_identity", passed, total, failures }
}

pub fn omega_consistency(seed: u64, count: u32) -> CheckResult {
    run_check("tower.omega_consistency", 21, seed, count, |rng| {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        let vars = gen::coords(n);
        let ss: Vec<Poly> = (0..k).map(|_| gen::nonzero_poly(rng, &vars, 3, 3)).collect();
        let params = gen::gamma_params(rng, n, k);
        let d = omega_consistency_defect(&ss, &params).map_err(err_str)?;
        ensure(d.is_zero(), || format!("n = {n}, k = {k}"))
    })
}

pub fn omega_alternating(seed: u64, count: u32) -> CheckResult {
    run_check("tower.omega_alternating", 22, seed, count, |rng| {
        let n = rng.gen_range(2..=3);
        let k = rng.gen_range(2..=3usize);
        let chart = TowerChart::new(n, k as u32, DivisorMode::AwayFromD).map_err(err_str)?;
        let vars = gen::coords(n);
        let ss: Vec<Poly> = (0..k).map(|_| gen::nonzero_poly(rng, &vars, 2, 3)).collect();
        let base = omega_chart(&ss, &chart).map_err(err_str)?;
        let mut sw = ss.clone();
        sw.swap(0, k - 1);
        ensure(omega_chart(&sw, &chart).map_err(err_str)? == -&base, || "swap did not negate".into())?;
        let mut dup = ss.clone();
        dup[1] = dup[0].clone();
        ensure(omega_chart(&dup, &chart).map_err(err_str)?.is_zero(), || "repeated section".into())
    })
}

pub fn level_discipline(seed: u64, count: u32) -> CheckResult {
    run_check("tower.level_discipline", 23, seed, count, |rng| {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=4);
        let chart = TowerChart::new(n, k, DivisorMode::AwayFromD).map_err(err_str)?;
        let f = gen::nonzero_poly(rng, &gen::coords(n), 3, 4);
        for j in 0..=k {
            let g = nabla_chart(j, &f, &chart).map_err(err_str)?;
            ensure(g.is_polynomial(), || format!("nabla^{j} {f} has a denominator"))?;
            for v in g.vars() {
                let (_, level) = chart.locate(&v).ok_or_else(|| format!("{v} is not a chart coordinate"))?;
                ensure(level <= j, || format!("nabla^{j} {f} uses {v}"))?;
            }
        }
        Ok(())
    })
}

// ---- fermat ----

pub fn fermat_system(seed: u64, count: u32, faults: Faults) -> CheckResult {
    run_check("fermat.factorization_and_system", 30, seed, count, move |rng| {
        let fam = gen::fermat_family(rng);
        let chart = TotalChart::for_family(&fam);
        let shift = if faults.perturb_graph { graph_perturbation(&fam) } else { Poly::zero() };
        for j in 1..=fam.k {
            for (idx, a) in &fam.a {
                nabla_factor(j, idx, a, &fam, &chart).map_err(err_str)?;
            }
            let res = system_residual_with(&fam, j, &chart, &shift).map_err(err_str)?;
            ensure(res.is_zero(), || format!("residual at j = {j} for\n{}", fam.to_toml()))?;
            let dec = system_decomposition_defect(&fam, j, &chart).map_err(err_str)?;
            ensure(dec.is_zero(), || format!("decomposition at j = {j}"))?;
        }
        Ok(())
    })
}

fn distinct_indices<R: Rng>(rng: &mut R, all: &[MultiIndex], k: usize) -> Vec<MultiIndex> {
    let mut pool = all.to_vec();
    let mut out = Vec::new();
    for _ in 0..k {
        out.push(pool.remove(rng.gen_range(0..pool.len())));
    }
    out
}

pub fn plucker_cramer(seed: u64, count: u32) -> CheckResult {
    run_check("fermat.plucker_cramer", 31, seed, count, |rng| {
        let k = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=2);
        let (eps, r) = (rng.gen_range(0..=2), rng.gen_range(1..=3));
        let fam = gen::fermat_family_with(rng, n, n + 1, 1, eps, r, k);
        let chart = TotalChart::for_family(&fam);
        let indices = distinct_indices(rng, &fam.indices(), k as usize);
        let d = plucker_factorization_defect(&indices, &fam, &chart).map_err(err_str)?;
        ensure(d.is_zero(), || "factorization defect".into())?;
        for _ in 0..10 {
            let frame: Vec<Poly> = (0..k).map(|_| gen::nonzero_poly(rng, &gen::coords(n), 2, 3)).collect();
            match cramer_identity_check(&frame, &indices, &fam, &chart) {
                Ok(defect) => return ensure(defect.is_zero(), || "cramer defect".into()),
                Err(FermatError::SingularFrame) => continue,
                Err(e) => return Err(e.to_string()),
            }
        }
        Err("no nonsingular frame found".into())
    })
}

pub fn rank_claim(seed: u64, count: u32) -> CheckResult {
    run_check("fermat.rank_probe", 32, seed, count, |rng| {
        let n = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=3);
        let eps = rng.gen_range(k..=k + 1);
        let (delta, r) = (rng.gen_range(1..=2), rng.gen_range(1..=3));
        let fam = gen::fermat_family_with(rng, n, n + 1, delta, eps, r, k);
        let chart = TotalChart::for_family(&fam);
        let mut vars = vec![chart.t()];
        vars.extend(chart.z_vars());
        for _ in 0..20 {
            let jet = gen::curve_jet(rng, &vars, k);
            if jet.value(&chart.t()).is_none_or(|t| t.is_zero()) {
                continue;
            }
            let frame: Vec<Poly> = (0..k).map(|_| gen::nonzero_poly(rng, &chart.z_vars(), 2, 3)).collect();
            match rank_probe(&fam, &chart, &RankSample { jet, frame }) {
                Ok(rep) => {
                    return ensure(rep.is_full(), || format!("rank {} < {} for\n{}", rep.rank, rep.expected, fam.to_toml()))
                }
                Err(FermatError::SingularFrame) => continue,
                Err(e) => return Err(e.to_string()),
            }
        }
        Err("no nonsingular sample found".into())
    })
}

/// Runs a suite; results come back in a fixed order.
pub fn run_suite(suite: Suite, seed: u64, size: Size, faults: Faults) -> Vec<CheckResult> {
    let c = size.counts();
    let mut out = Vec::new();
    if matches!(suite, Suite::Jetalg | Suite::All) {
        out.push(derivation_leibniz(seed, c.jet_identities));
        out.push(derivation_weight(seed, c.jet_identities));
        out.push(rescale_equivariance(seed, c.jet_identities));
        out.push(right_action(seed, c.jet_identities));
        out.push(wronskian_covariance(seed, c.covariance));
        out.push(non_invariant_detected(seed, c.jet_identities));
    }
    if matches!(suite, Suite::Logconn | Suite::All) {
        out.push(tautological_vanishing(seed, c.vanishing, faults));
        out.push(leibniz(seed, c.leibniz));
        out.push(non_log_lemma(seed, c.non_log));
        out.push(restriction(seed, c.non_log));
        out.push(wronskian_shape(seed, c.wronskian_shape));
    }
    if matches!(suite, Suite::Tower | Suite::All) {
        out.push(chart_identity(seed, c.chart_draws));
        out.push(omega_consistency(seed, c.omega));
        out.push(omega_alternating(seed, c.omega));
        out.push(level_discipline(seed, c.omega));
    }
    if matches!(suite, Suite::Fermat | Suite::All) {
        out.push(fermat_system(seed, c.families, faults));
        out.push(plucker_cramer(seed, c.plucker));
        out.push(rank_claim(seed, c.rank));
    }
    out
}

/// Sum of `tau^{rI}`-weighted quotients, exposed for callers that print systems.
pub fn tau_weighted(fam: &crate::fermat::FermatFamily, idx: &MultiIndex, q: &JetPoly) -> JetPoly {
    q.mul_ratfunc(&RatFunc::from_poly(fam.tau_power(idx, fam.r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        for r in run_suite(Suite::All, 7, Size::Small, Faults::default()) {
            assert!(r.ok(), "{r}: {:?}", r.failures);
        }
    }

    #[test]
    fn faults_are_caught() {
        let bad = tautological_vanishing(3, 10, Faults { corrupt_nabla: true, perturb_graph: false });
        assert!(bad.passed < bad.total);
        let bad = fermat_system(3, 3, Faults { corrupt_nabla: false, perturb_graph: true });
        assert_eq!(bad.passed, 0);
    }

    #[test]
    fn deterministic() {
        let a = run_suite(Suite::Logconn, 11, Size::Small, Faults::default());
        let b = run_suite(Suite::Logconn, 11, Size::Small, Faults::default());
        assert_eq!(a, b);
    }
}
