//! Higher-order logarithmic connections `nabla^k s = sigma d^k(s / sigma)`, absolute and
//! logarithmic Wronskians, and the conversion between `d^j z / z` and `d^j log z`.

mod basis;

pub use basis::{log_basis_coeffs, Direction};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::jetalg::{JetError, JetPoly};
use crate::multipoly::{determinant, Poly, PolyError, RatFunc, Rat, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogError {
    #[error("closed form and recursion for nabla^{0} disagree")]
    InternalMismatch(u32),
    #[error("restriction is not transverse: sigma vanishes identically on the hyperplane")]
    NonTransverse,
    #[error("sigma must not be the zero polynomial")]
    ZeroSigma,
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// A chart with a divisor `D = (sigma = 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogPair {
    vars: Vec<Var>,
    sigma: Poly,
}

impl LogPair {
    pub fn new(vars: Vec<Var>, sigma: Poly) -> Result<LogPair, LogError> {
        if sigma.is_zero() {
            return Err(LogError::ZeroSigma);
        }
        Ok(LogPair { vars, sigma })
    }

    /// Ambient variables taken from `sigma` itself.
    pub fn from_sigma(sigma: Poly) -> Result<LogPair, LogError> {
        let vars = sigma.vars().into_iter().collect();
        LogPair::new(vars, sigma)
    }

    pub fn sigma(&self) -> &Poly {
        &self.sigma
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// A constant sigma: the divisor is empty.
    pub fn is_unit(&self) -> bool {
        self.sigma.is_constant()
    }
}

/// A jet differential with poles along `sigma = 0`.
#[derive(Clone)]
pub struct LogJetPoly {
    sigma: Poly,
    body: JetPoly,
}

impl LogJetPoly {
    pub fn new(sigma: Poly, body: JetPoly) -> LogJetPoly {
        LogJetPoly { sigma, body }
    }

    pub fn body(&self) -> &JetPoly {
        &self.body
    }

    pub fn into_body(self) -> JetPoly {
        self.body
    }

    pub fn sigma(&self) -> &Poly {
        &self.sigma
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Whether `sigma^m * self` has polynomial coefficients.
    pub fn sigma_power_clears(&self, m: u32) -> bool {
        self.body.body().mul_poly(&self.sigma.pow(m)).to_poly().is_some()
    }
}

impl PartialEq for LogJetPoly {
    fn eq(&self, other: &LogJetPoly) -> bool {
        self.body == other.body
    }
}

impl fmt::Display for LogJetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.body, f)
    }
}

impl fmt::Debug for LogJetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogJetPoly[sigma = {}]({})", self.sigma, self.body)
    }
}

/// `d` on a polynomial in base and jet variables.
pub fn d_poly(p: &Poly) -> Poly {
    p.apply_derivation(|v| Some(Poly::var(v.derived(1))))
}

/// `d^k` on a polynomial.
pub fn d_poly_n(p: &Poly, k: u32) -> Poly {
    (0..k).fold(p.clone(), |acc, _| d_poly(&acc))
}

/// `sigma d^k(s / sigma)`.
pub fn nabla_closed_form(k: u32, s: &Poly, pair: &LogPair) -> JetPoly {
    let quotient = RatFunc::from_poly(s.clone()).div_poly_pow(&pair.sigma, 1).expect("sigma is nonzero");
    let jet = JetPoly::from_ratfunc(quotient).expect("base denominator");
    jet.total_derive_n(k).mul_ratfunc(&RatFunc::from_poly(pair.sigma.clone()))
}

/// `nabla^k` by `nabla^j s = d nabla^{j-1} s - nabla^{j-1} s * d sigma / sigma`.
pub fn nabla_recursive(k: u32, s: &Poly, pair: &LogPair) -> JetPoly {
    let log_d_sigma = dlog(pair);
    let mut cur = JetPoly::from_poly(s.clone());
    for _ in 0..k {
        cur = &cur.total_derive() - &(&cur * &log_d_sigma);
    }
    cur.with_order(k)
}

/// `d sigma / sigma`.
pub fn dlog(pair: &LogPair) -> JetPoly {
    let r = RatFunc::from_poly(d_poly(&pair.sigma)).div_poly_pow(&pair.sigma, 1).expect("sigma is nonzero");
    JetPoly::from_ratfunc(r).expect("base denominator")
}

/// `nabla^k s`, computed by both the closed form and the recursion, which must agree.
pub fn nabla(k: u32, s: &Poly, pair: &LogPair) -> Result<LogJetPoly, LogError> {
    let seq = nabla_checked_sequence(k, s, pair)?;
    let last = seq.into_iter().last().expect("nonempty");
    Ok(LogJetPoly::new(pair.sigma.clone(), last))
}

/// `nabla^0 s, ..., nabla^k s`, each order cross-checked against the closed form.
pub fn nabla_checked_sequence(k: u32, s: &Poly, pair: &LogPair) -> Result<Vec<JetPoly>, LogError> {
    let seq = nabla_sequence(k, s, pair);
    let sigma = RatFunc::from_poly(pair.sigma.clone());
    let quotient = RatFunc::from_poly(s.clone()).div_poly_pow(&pair.sigma, 1).expect("sigma is nonzero");
    let mut q = JetPoly::from_ratfunc(quotient).expect("base denominator");
    for (j, rec) in seq.iter().enumerate() {
        if j > 0 {
            q = q.total_derive();
        }
        if !rec.same_as(&q.mul_ratfunc(&sigma)) {
            return Err(LogError::InternalMismatch(j as u32));
        }
    }
    Ok(seq)
}

/// `nabla^0 s, ..., nabla^k s` by the recursion alone.
pub fn nabla_sequence(k: u32, s: &Poly, pair: &LogPair) -> Vec<JetPoly> {
    let log_d_sigma = dlog(pair);
    let mut out = vec![JetPoly::from_poly(s.clone())];
    for _ in 0..k {
        let cur = out.last().expect("nonempty");
        let next = &cur.total_derive() - &(cur * &log_d_sigma);
        out.push(next);
    }
    out
}

/// `d^k s - sum_i C(k, i) nabla^i s * d^{k-i} sigma / sigma`; identically zero.
pub fn verify_leibniz(k: u32, s: &Poly, pair: &LogPair) -> Result<JetPoly, LogError> {
    let lhs = JetPoly::from_poly(d_poly_n(s, k));
    let mut rhs = JetPoly::zero();
    let mut dsigma = pair.sigma.clone();
    let mut dsig_pows = vec![dsigma.clone()];
    for _ in 0..k {
        dsigma = d_poly(&dsigma);
        dsig_pows.push(dsigma.clone());
    }
    let mut binom = Rat::from_integer(1.into());
    let seq = nabla_checked_sequence(k, s, pair)?;
    for (i, nab) in (0..=k).zip(seq) {
        let factor = RatFunc::from_poly(dsig_pows[(k - i) as usize].clone())
            .div_poly_pow(&pair.sigma, 1)
            .expect("sigma is nonzero");
        rhs = &rhs + &nab.mul_ratfunc(&factor).scale(&binom);
        binom = binom * Rat::from_integer((k - i).into()) / Rat::from_integer((i + 1).into());
    }
    Ok(&lhs - &rhs)
}

/// `det(d^j s_i)`, `0 <= j <= k`, for `k + 1` sections.
pub fn wronskian_abs(sections: &[Poly]) -> JetPoly {
    let k = sections.len().saturating_sub(1) as u32;
    let mut cols: Vec<Vec<Poly>> = Vec::with_capacity(sections.len());
    for s in sections {
        let mut col = vec![s.clone()];
        for _ in 0..k {
            let next = d_poly(col.last().expect("nonempty"));
            col.push(next);
        }
        cols.push(col);
    }
    let rows: Vec<Vec<Poly>> = (0..=k as usize).map(|j| cols.iter().map(|c| c[j].clone()).collect()).collect();
    JetPoly::from_poly(determinant(&rows)).with_order(k)
}

/// `det(nabla^j s_i)`, `1 <= j <= k`, for `k` sections.
pub fn wronskian_log(sections: &[Poly], pair: &LogPair) -> Result<LogJetPoly, LogError> {
    let k = sections.len() as u32;
    let mut cols = Vec::with_capacity(sections.len());
    for s in sections {
        cols.push(nabla_checked_sequence(k, s, pair)?);
    }
    let rows: Vec<Vec<RatFunc>> =
        (1..=k as usize).map(|j| cols.iter().map(|c: &Vec<JetPoly>| c[j].body().clone()).collect()).collect();
    let det = JetPoly::from_ratfunc(determinant(&rows)).expect("base denominators").with_order(k);
    Ok(LogJetPoly::new(pair.sigma.clone(), det))
}

/// `sigma * W_D(g_1..g_k) - W_abs(sigma, g_1..g_k)`; identically zero.
pub fn non_log_defect(sections: &[Poly], pair: &LogPair) -> Result<JetPoly, LogError> {
    let log = wronskian_log(sections, pair)?.into_body().mul_ratfunc(&RatFunc::from_poly(pair.sigma.clone()));
    let mut all = vec![pair.sigma.clone()];
    all.extend(sections.iter().cloned());
    Ok(&log - &wronskian_abs(&all))
}

/// Sets `var` and all of its jet variables to zero.
pub fn restrict(p: &LogJetPoly, var: &Var) -> Result<LogJetPoly, LogError> {
    let sigma = restrict_poly(&p.sigma, var);
    if sigma.is_zero() {
        return Err(LogError::NonTransverse);
    }
    let mut map = HashMap::new();
    let body = p.body.body();
    let mut vars = body.numerator().vars();
    for (f, _) in body.factors() {
        vars.extend(f.vars());
    }
    for v in vars.into_iter().filter(|v| v.coord() == *var) {
        map.insert(v, RatFunc::zero());
    }
    let r = body.substitute(&map).map_err(|e| match e {
        PolyError::DivisionByZero => LogError::NonTransverse,
        other => LogError::Jet(JetError::Shape(other.to_string())),
    })?;
    let jet = JetPoly::from_ratfunc(r)?.with_order(p.body.order());
    Ok(LogJetPoly::new(sigma, jet))
}

/// A polynomial with `var` and its jets set to zero.
pub fn restrict_poly(p: &Poly, var: &Var) -> Poly {
    let map: HashMap<Var, Poly> = p.vars().into_iter().filter(|v| v.coord() == *var).map(|v| (v, Poly::zero())).collect();
    p.substitute_poly(&map)
}

/// The pair restricted to `var = 0`.
pub fn restrict_pair(pair: &LogPair, var: &Var) -> Result<LogPair, LogError> {
    let sigma = restrict_poly(&pair.sigma, var);
    if sigma.is_zero() {
        return Err(LogError::NonTransverse);
    }
    LogPair::new(pair.vars.iter().filter(|v| *v != var).copied().collect(), sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{parse_poly, parse_ratfunc};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn j(s: &str) -> JetPoly {
        JetPoly::from_ratfunc(parse_ratfunc(s).unwrap()).unwrap()
    }

    fn pair(s: &str) -> LogPair {
        LogPair::from_sigma(p(s)).unwrap()
    }

    #[test]
    fn nabla_annihilates_sigma() {
        for sigma in ["z", "z1*z2 + 1", "z1^2 - z2^3 + z3"] {
            let pr = pair(sigma);
            for k in 1..=3 {
                assert!(nabla(k, pr.sigma(), &pr).unwrap().is_zero(), "{sigma} k={k}");
            }
        }
    }

    #[test]
    fn nabla_examples() {
        let unit = LogPair::new(vec![Var::base("z")], p("1")).unwrap();
        assert!(unit.is_unit());
        assert_eq!(nabla(2, &p("z^3"), &unit).unwrap().into_body(), j("3*z^2*D2z + 6*z*D1z^2"));
        let pr = pair("z");
        assert_eq!(nabla(1, &p("1"), &pr).unwrap().into_body(), j("-D1z/z"));
        assert_eq!(nabla(0, &p("z + 4"), &pr).unwrap().into_body(), j("z + 4"));
        assert_eq!(LogPair::from_sigma(Poly::zero()), Err(LogError::ZeroSigma));
    }

    #[test]
    fn leibniz_examples() {
        let pr = pair("z");
        assert!(verify_leibniz(1, &p("z^2"), &pr).unwrap().is_zero());
        assert!(verify_leibniz(3, &p("z"), &pr).unwrap().is_zero());
        let pr = pair("z1 + z2^2");
        assert!(verify_leibniz(3, &p("z1*z2 - 2"), &pr).unwrap().is_zero());
    }

    #[test]
    fn absolute_wronskians() {
        assert_eq!(wronskian_abs(&[p("1"), p("z")]), j("D1z"));
        assert_eq!(wronskian_abs(&[p("1"), p("z"), p("z^2")]), j("2*D1z^3"));
        assert_eq!(wronskian_abs(&[p("z"), p("1")]), j("-D1z"));
        assert_eq!(wronskian_abs(&[p("1"), p("z1"), p("z1^2")]).to_string(), "2*D1z1^3");
    }

    #[test]
    fn log_wronskians() {
        let pr = pair("z");
        assert!(wronskian_log(&[p("z")], &pr).unwrap().is_zero());
        assert_eq!(wronskian_log(&[p("1")], &pr).unwrap().into_body(), j("-D1z/z"));
        let lhs = wronskian_log(&[p("1")], &pr).unwrap().into_body().mul_ratfunc(&RatFunc::from_poly(p("z")));
        assert_eq!(lhs, wronskian_abs(&[p("z"), p("1")]));
        let pr = pair("z1^2 + z2");
        assert!(non_log_defect(&[p("z1"), p("z2^2 - 1")], &pr).unwrap().is_zero());
    }

    #[test]
    fn pole_order() {
        let pr = pair("z1 + z2");
        let nab = nabla(3, &p("z1^2"), &pr).unwrap();
        assert!(nab.sigma_power_clears(3));
        let pr = pair("z");
        assert!(!nabla(2, &p("1"), &pr).unwrap().sigma_power_clears(1));
    }

    #[test]
    fn restriction() {
        let pr = LogPair::new(vec![Var::base("z1"), Var::base("z2")], p("z1")).unwrap();
        let z2 = Var::base("z2");
        let w = wronskian_log(&[p("z1 + z2")], &pr).unwrap();
        let lhs = restrict(&w, &z2).unwrap();
        let rpair = restrict_pair(&pr, &z2).unwrap();
        let rhs = wronskian_log(&[p("z1")], &rpair).unwrap();
        assert_eq!(lhs, rhs);
        let free = wronskian_log(&[p("z1^2")], &pr).unwrap();
        assert_eq!(restrict(&free, &z2).unwrap(), free);
        let bad = LogPair::new(vec![Var::base("z1"), z2], p("z2")).unwrap();
        let w = wronskian_log(&[p("z1")], &bad).unwrap();
        assert!(matches!(restrict(&w, &z2), Err(LogError::NonTransverse)));
    }
}
