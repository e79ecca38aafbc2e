//! Fermat-type families in the total-space chart `(t, z1, ..., zn)` with divisor `t = 0`.

mod family;
mod probe;

pub use family::FermatFamily;
pub use probe::{nabla_value_along, rank_probe, RankReport, RankSample};

use std::collections::HashMap;

use thiserror::Error;

use crate::jetalg::{JetError, JetPoly};
use crate::logconn::{d_poly_n, nabla_checked_sequence, wronskian_log, LogError, LogJetPoly, LogPair};
use crate::multipoly::{determinant, solve_cramer, MultiIndex, Poly, PolyError, RatFunc, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FermatError {
    #[error("invalid family: {0}")]
    Invalid(String),
    #[error("family file: {0}")]
    Format(String),
    #[error("nabla^{j} of the term for I = {index} is not divisible by tau^(rI)")]
    NotDivisible { index: MultiIndex, j: u32 },
    #[error("frame is singular: det of its nabla matrix vanishes")]
    SingularFrame,
    #[error("the graph substitution t := F divides by zero (F vanishes identically)")]
    ZeroFamily,
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Log(#[from] LogError),
}

/// The chart `(t, z1, ..., zn)` of the total space, with `sigma = t`.
#[derive(Clone, Debug)]
pub struct TotalChart {
    n: u32,
    pair: LogPair,
}

impl TotalChart {
    pub fn new(n: u32) -> TotalChart {
        let mut vars = vec![Var::base("t")];
        vars.extend((1..=n).map(|i| Var::base(&format!("z{i}"))));
        let pair = LogPair::new(vars, Poly::var(Var::base("t"))).expect("t is nonzero");
        TotalChart { n, pair }
    }

    pub fn for_family(fam: &FermatFamily) -> TotalChart {
        TotalChart::new(fam.n)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> Var {
        Var::base("t")
    }

    /// `z1, ..., zn`.
    pub fn z_vars(&self) -> Vec<Var> {
        self.pair.vars()[1..].to_vec()
    }

    pub fn pair(&self) -> &LogPair {
        &self.pair
    }
}

/// `F(a) = sum_I a_I tau^{(r+k) I}`.
pub fn build_f(fam: &FermatFamily) -> Poly {
    fam.a.iter().fold(Poly::zero(), |acc, (idx, a)| &acc + &(a * &fam.tau_power(idx, fam.r + fam.k)))
}

/// `s_I = a_I tau^{(r+k) I}`.
pub fn section(fam: &FermatFamily, idx: &MultiIndex, a: &Poly) -> Poly {
    a * &fam.tau_power(idx, fam.r + fam.k)
}

fn divide_numerator(j: &JetPoly, divisor: &Poly) -> Result<JetPoly, PolyError> {
    let body = j.body();
    let num = body.numerator().exact_divide(divisor)?;
    let r = RatFunc::with_factors(num, body.factors().to_vec())?;
    Ok(JetPoly::from_ratfunc(r).expect("denominator unchanged").with_order(j.order()))
}

/// `nabla^1 s / divisor, ..., nabla^j s / divisor` in the chart, each division exact.
pub fn nabla_quotients(j: u32, s: &Poly, divisor: &Poly, chart: &TotalChart) -> Result<Vec<JetPoly>, FermatError> {
    let seq = nabla_checked_sequence(j, s, &chart.pair)?;
    seq.iter()
        .enumerate()
        .skip(1)
        .map(|(p, q)| {
            divide_numerator(q, divisor).map_err(|e| match e {
                PolyError::NotDivisible => FermatError::NotDivisible { index: MultiIndex(vec![]), j: p as u32 },
                other => other.into(),
            })
        })
        .collect()
}

/// `nabla_I^1(a), ..., nabla_I^k(a)`: the column of the alpha matrix for the index `I`.
pub fn alpha_column(idx: &MultiIndex, a: &Poly, fam: &FermatFamily, chart: &TotalChart) -> Result<Vec<JetPoly>, FermatError> {
    alpha_column_to(fam.k, idx, a, fam, chart)
}

fn alpha_column_to(
    j: u32,
    idx: &MultiIndex,
    a: &Poly,
    fam: &FermatFamily,
    chart: &TotalChart,
) -> Result<Vec<JetPoly>, FermatError> {
    let s = section(fam, idx, a);
    nabla_quotients(j, &s, &fam.tau_power(idx, fam.r), chart).map_err(|e| match e {
        FermatError::NotDivisible { j, .. } => FermatError::NotDivisible { index: idx.clone(), j },
        other => other,
    })
}

/// `nabla_I^j(a_I)`: `nabla^j(a_I tau^{(r+k)I})` divided exactly by `tau^{rI}`.
pub fn nabla_factor(
    j: u32,
    idx: &MultiIndex,
    a: &Poly,
    fam: &FermatFamily,
    chart: &TotalChart,
) -> Result<LogJetPoly, FermatError> {
    if j == 0 || j > fam.k {
        return Err(FermatError::Shape(format!("order {j} is outside 1..={}", fam.k)));
    }
    let col = alpha_column_to(j, idx, a, fam, chart)?;
    Ok(LogJetPoly::new(chart.pair.sigma().clone(), col.into_iter().last().expect("j >= 1")))
}

/// `nabla^j(t - F)` pulled back to the graph `t := F + shift`; zero when `shift = 0`, see [`graph_perturbation`] for the converse.
pub fn system_residual_with(fam: &FermatFamily, j: u32, chart: &TotalChart, shift: &Poly) -> Result<JetPoly, FermatError> {
    let f = build_f(fam);
    let t = chart.t();
    let s = &Poly::var(t) - &f;
    let nab = crate::logconn::nabla(j, &s, &chart.pair)?;
    let graph = &f + shift;
    let mut map = HashMap::new();
    for p in 0..=j {
        map.insert(t.derived(p), RatFunc::from_poly(d_poly_n(&graph, p)));
    }
    let r = nab.body().substitute(&map).map_err(|e| match e {
        PolyError::DivisionByZero => FermatError::ZeroFamily,
        other => other.into(),
    })?;
    Ok(JetPoly::from_ratfunc(r)?)
}

/// A graph shift the residual always detects: on `t := F + h` the residual is `-t d^j(F / (F + h))`,
/// which vanishes for every `j` exactly when `h` is proportional to `F`. Uses `z1`, or `1` when `F` is a multiple of `z1`.
pub fn graph_perturbation(fam: &FermatFamily) -> Poly {
    let z1 = Poly::var(Var::base("z1"));
    let f = build_f(fam);
    let proportional = f.terms().count() == 1 && f.terms().all(|(m, _)| z1.terms().any(|(zm, _)| zm == m));
    if proportional {
        Poly::one()
    } else {
        z1
    }
}

/// `nabla^j(t - F)` on the graph `t := F`.
pub fn system_residual(fam: &FermatFamily, j: u32, chart: &TotalChart) -> Result<JetPoly, FermatError> {
    system_residual_with(fam, j, chart, &Poly::zero())
}

/// `nabla^j(t - F) + sum_I tau^{rI} nabla_I^j(a_I)` before any substitution.
pub fn system_decomposition_defect(fam: &FermatFamily, j: u32, chart: &TotalChart) -> Result<JetPoly, FermatError> {
    let s = &Poly::var(chart.t()) - &build_f(fam);
    let lhs = crate::logconn::nabla(j, &s, &chart.pair)?.into_body();
    let mut sum = JetPoly::zero();
    for (idx, a) in &fam.a {
        let q = nabla_factor(j, idx, a, fam, chart)?.into_body();
        sum = &sum + &q.mul_ratfunc(&RatFunc::from_poly(fam.tau_power(idx, fam.r)));
    }
    Ok(&lhs + &sum)
}

fn check_index_count(indices: &[MultiIndex], fam: &FermatFamily) -> Result<(), FermatError> {
    if indices.len() != fam.k as usize {
        return Err(FermatError::Shape(format!("expected {} indices, got {}", fam.k, indices.len())));
    }
    Ok(())
}

fn alpha_matrix(indices: &[MultiIndex], fam: &FermatFamily, chart: &TotalChart) -> Result<Vec<Vec<RatFunc>>, FermatError> {
    let cols = indices
        .iter()
        .map(|i| alpha_column(i, &fam.coefficient(i), fam, chart))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((0..fam.k as usize).map(|j| cols.iter().map(|c| c[j].body().clone()).collect()).collect())
}

/// `det(nabla_{I_q}^j(a_{I_q}))`, `1 <= j, q <= k`.
pub fn plucker_omega(indices: &[MultiIndex], fam: &FermatFamily, chart: &TotalChart) -> Result<LogJetPoly, FermatError> {
    check_index_count(indices, fam)?;
    let det = determinant(&alpha_matrix(indices, fam, chart)?);
    let body = JetPoly::from_ratfunc(det)?.with_order(fam.k);
    Ok(LogJetPoly::new(chart.pair.sigma().clone(), body))
}

/// `tau^{r(I_1 + ... + I_k)} * plucker_omega - W_log(s_{I_1}, ..., s_{I_k})`.
pub fn plucker_factorization_defect(
    indices: &[MultiIndex],
    fam: &FermatFamily,
    chart: &TotalChart,
) -> Result<JetPoly, FermatError> {
    let omega = plucker_omega(indices, fam, chart)?.into_body();
    let total = indices.iter().fold(MultiIndex(vec![]), |acc, i| acc.add(i));
    let lhs = omega.mul_ratfunc(&RatFunc::from_poly(fam.tau_power(&total, fam.r)));
    let sections: Vec<Poly> = indices.iter().map(|i| section(fam, i, &fam.coefficient(i))).collect();
    let w = wronskian_log(&sections, &chart.pair)?.into_body();
    Ok(&lhs - &w)
}

/// The matrix `G = (nabla^j b_i)`, rows `j = 1..k`, columns `i`.
pub fn frame_matrix(frame: &[Poly], chart: &TotalChart) -> Result<Vec<Vec<RatFunc>>, FermatError> {
    let k = frame.len() as u32;
    let cols = frame
        .iter()
        .map(|b| nabla_checked_sequence(k, b, &chart.pair))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((1..=k as usize).map(|j| cols.iter().map(|c| c[j].body().clone()).collect()).collect())
}

/// `l^1_I(a), ..., l^k_I(a)` solving `G l = (nabla_I^1(a), ..., nabla_I^k(a))`.
pub fn ell_solve(
    frame: &[Poly],
    idx: &MultiIndex,
    a: &Poly,
    fam: &FermatFamily,
    chart: &TotalChart,
) -> Result<Vec<RatFunc>, FermatError> {
    if frame.len() != fam.k as usize {
        return Err(FermatError::Shape(format!("frame needs {} sections, got {}", fam.k, frame.len())));
    }
    let g = frame_matrix(frame, chart)?;
    let rhs: Vec<RatFunc> = alpha_column(idx, a, fam, chart)?.iter().map(|j| j.body().clone()).collect();
    solve_cramer(&g, &rhs).ok_or(FermatError::SingularFrame)
}

/// `det(l^p_{I_q}(a_{I_q})) - plucker_omega / W_log(b_1, ..., b_k)`.
pub fn cramer_identity_check(
    frame: &[Poly],
    indices: &[MultiIndex],
    fam: &FermatFamily,
    chart: &TotalChart,
) -> Result<RatFunc, FermatError> {
    check_index_count(indices, fam)?;
    let cols = indices
        .iter()
        .map(|i| ell_solve(frame, i, &fam.coefficient(i), fam, chart))
        .collect::<Result<Vec<_>, _>>()?;
    let ell: Vec<Vec<RatFunc>> = (0..fam.k as usize).map(|p| cols.iter().map(|c| c[p].clone()).collect()).collect();
    let lhs = determinant(&ell);
    let num = plucker_omega(indices, fam, chart)?.into_body();
    let den = wronskian_log(frame, &chart.pair)?.into_body();
    let ratio = num.body().checked_div(den.body()).map_err(|_| FermatError::SingularFrame)?;
    Ok(&lhs - &ratio)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::multipoly::{parse_poly, parse_ratfunc, rat};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn j(s: &str) -> JetPoly {
        JetPoly::from_ratfunc(parse_ratfunc(s).unwrap()).unwrap()
    }

    fn idx(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[allow(clippy::too_many_arguments)]
    fn family(n: u32, big_n: u32, delta: u32, eps: u32, r: u32, k: u32, tau: &[&str], a: &[(&[u32], &str)]) -> FermatFamily {
        let tau = tau.iter().map(|s| p(s)).collect();
        let a: BTreeMap<_, _> = a.iter().map(|(i, s)| (idx(i), p(s))).collect();
        FermatFamily::new(n, big_n, delta, eps, r, k, tau, a).unwrap()
    }

    fn two_term(k: u32) -> FermatFamily {
        family(1, 1, 1, 2, 3, k, &["1", "z1"], &[(&[1, 0], "1"), (&[0, 1], "z1 - 2")])
    }

    #[test]
    fn build_f_examples() {
        let fam = family(1, 1, 1, 0, 1, 2, &["1", "z1"], &[(&[1, 0], "1"), (&[0, 1], "1")]);
        assert_eq!(build_f(&fam), p("1 + z1^3"));
        let one = family(2, 2, 2, 0, 1, 1, &["1", "z1", "z2"], &[(&[0, 1, 1], "5")]);
        assert_eq!(build_f(&one), p("5*z1^2*z2^2"));
        let zero = family(1, 1, 1, 0, 1, 1, &["1", "z1"], &[]);
        assert!(build_f(&zero).is_zero());
    }

    #[test]
    fn quotient_by_tau_power() {
        let chart = TotalChart::new(1);
        let q = nabla_quotients(1, &p("z1^3"), &p("z1^2"), &chart).unwrap();
        assert_eq!(q[0], j("3*D1z1 - z1*D1t/t"));
        let err = nabla_quotients(1, &p("z1^3"), &p("z1^3"), &chart).unwrap_err();
        assert!(matches!(err, FermatError::NotDivisible { j: 1, .. }));
        let scaled = nabla_quotients(1, &p("7*z1^3"), &p("z1^2"), &chart).unwrap();
        assert_eq!(scaled[0], q[0].scale(&rat(7)));
    }

    #[test]
    fn nabla_factor_divides() {
        let fam = two_term(3);
        let chart = TotalChart::for_family(&fam);
        for jj in 1..=3 {
            let q = nabla_factor(jj, &idx(&[0, 1]), &p("z1 - 2"), &fam, &chart).unwrap();
            let back = q.body().mul_ratfunc(&RatFunc::from_poly(p("z1^3")));
            let direct = crate::logconn::nabla(jj, &p("(z1 - 2)*z1^6"), chart.pair()).unwrap();
            assert_eq!(&back, direct.body());
        }
        assert!(nabla_factor(4, &idx(&[0, 1]), &p("1"), &fam, &chart).is_err());
    }

    #[test]
    fn residuals() {
        let fam = two_term(2);
        let chart = TotalChart::for_family(&fam);
        for jj in 1..=2 {
            assert!(system_residual(&fam, jj, &chart).unwrap().is_zero());
            assert!(system_decomposition_defect(&fam, jj, &chart).unwrap().is_zero());
            assert!(!system_residual_with(&fam, jj, &chart, &p("z1")).unwrap().is_zero());
        }
        let single = family(1, 1, 1, 1, 2, 1, &["1", "z1"], &[(&[0, 1], "z1 + 1")]);
        assert!(system_residual(&single, 1, &chart).unwrap().is_zero());
        let zero = family(1, 1, 1, 0, 1, 1, &["1", "z1"], &[]);
        assert!(matches!(system_residual(&zero, 1, &chart), Err(FermatError::ZeroFamily)));
    }

    #[test]
    fn shift_proportional_to_f_is_invisible() {
        let fam = family(1, 2, 1, 2, 4, 3, &["1", "z1", "z1 - 2"], &[(&[1, 0, 0], "-7/3*z1")]);
        let chart = TotalChart::for_family(&fam);
        assert_eq!(graph_perturbation(&fam), p("1"));
        for jj in 1..=3 {
            assert!(system_residual_with(&fam, jj, &chart, &p("z1")).unwrap().is_zero());
            assert!(!system_residual_with(&fam, jj, &chart, &graph_perturbation(&fam)).unwrap().is_zero());
        }
        assert_eq!(graph_perturbation(&two_term(2)), p("z1"));
    }

    #[test]
    fn plucker_examples() {
        let fam = family(1, 1, 1, 2, 3, 2, &["1", "z1"], &[(&[1, 0], "z1 + 3"), (&[0, 1], "z1^2 - 1")]);
        let chart = TotalChart::for_family(&fam);
        let (i0, i1) = (idx(&[1, 0]), idx(&[0, 1]));
        assert!(plucker_omega(&[i0.clone(), i0.clone()], &fam, &chart).unwrap().is_zero());
        let w = plucker_omega(&[i0.clone(), i1.clone()], &fam, &chart).unwrap();
        let w_swapped = plucker_omega(&[i1.clone(), i0.clone()], &fam, &chart).unwrap();
        assert!(!w.is_zero());
        assert_eq!(w.body(), &-w_swapped.body());
        assert!(plucker_factorization_defect(&[i0, i1], &fam, &chart).unwrap().is_zero());
    }

    #[test]
    fn ell_examples() {
        let chart = TotalChart::new(1);
        let fam1 = two_term(1);
        let l = ell_solve(&[p("z1")], &idx(&[0, 1]), &p("z1 - 2"), &fam1, &chart).unwrap();
        let num = nabla_factor(1, &idx(&[0, 1]), &p("z1 - 2"), &fam1, &chart).unwrap();
        let den = crate::logconn::nabla(1, &p("z1"), chart.pair()).unwrap();
        assert_eq!(l[0], num.body().body().checked_div(den.body().body()).unwrap());
        assert!(matches!(ell_solve(&[p("3*t")], &idx(&[0, 1]), &p("1"), &fam1, &chart), Err(FermatError::SingularFrame)));

        let fam2 = two_term(2);
        let frame = [p("1"), p("z1")];
        let l = ell_solve(&frame, &idx(&[1, 0]), &p("1"), &fam2, &chart).unwrap();
        let g = frame_matrix(&frame, &chart).unwrap();
        let rhs = alpha_column(&idx(&[1, 0]), &p("1"), &fam2, &chart).unwrap();
        for (row, want) in g.iter().zip(&rhs) {
            let got = row.iter().zip(&l).fold(RatFunc::zero(), |acc, (gij, li)| &acc + &(gij * li));
            assert_eq!(&got, want.body());
        }
    }

    #[test]
    fn cramer_identity() {
        let fam = family(1, 1, 1, 2, 3, 2, &["1", "z1"], &[(&[1, 0], "z1 + 3"), (&[0, 1], "z1^2 - 1")]);
        let chart = TotalChart::for_family(&fam);
        let d = cramer_identity_check(&[p("1"), p("z1")], &[idx(&[1, 0]), idx(&[0, 1])], &fam, &chart).unwrap();
        assert!(d.is_zero());
        let fam1 = two_term(1);
        let d = cramer_identity_check(&[p("z1 + 1")], &[idx(&[0, 1])], &fam1, &chart).unwrap();
        assert!(d.is_zero());
    }
}
