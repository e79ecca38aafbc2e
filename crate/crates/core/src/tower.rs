//! The explicit regular chart of the logarithmic Demailly tower.
//!
//! Chart coordinates are `z1..zn` and, for `i < n` and `1 <= j <= k`, the level-`j`
//! coordinate `z<i>_<j>` standing for `z_i^(j)`. The chart direction is `z_n`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::jetalg::{CurveJet, JetError, JetPoly};
use crate::logconn::{d_poly_n, wronskian_log, LogError, LogPair};
use crate::multipoly::{determinant, Poly, PolyError, RatFunc, Rat, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("{var} has level {level}, but xi_{p} only accepts levels below {p}")]
    LevelViolation { p: u32, var: Var, level: u32 },
    #[error("{0} is not a coordinate of this chart")]
    UnknownCoordinate(Var),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Log(#[from] LogError),
}

/// Trivialization of the divisor on the chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisorMode {
    /// `sigma_U = 1`.
    AwayFromD,
    /// `sigma_U = z1`.
    Adapted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerChart {
    n: u32,
    k: u32,
    mode: DivisorMode,
}

impl TowerChart {
    pub fn new(n: u32, k: u32, mode: DivisorMode) -> Result<TowerChart, TowerError> {
        if n == 0 {
            return Err(TowerError::Shape("base dimension must be positive".into()));
        }
        Ok(TowerChart { n, k, mode })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn mode(&self) -> DivisorMode {
        self.mode
    }

    /// `z_i`, `1 <= i <= n`.
    pub fn base(&self, i: u32) -> Var {
        Var::base(&format!("z{i}"))
    }

    /// `z_i^(j)`; level 0 is `z_i` itself.
    pub fn level(&self, i: u32, j: u32) -> Var {
        if j == 0 {
            self.base(i)
        } else {
            Var::base(&format!("z{i}_{j}"))
        }
    }

    /// All chart coordinates: `n + (n - 1) k` of them.
    pub fn coordinates(&self) -> Vec<Var> {
        let mut out: Vec<Var> = (1..=self.n).map(|i| self.base(i)).collect();
        for i in 1..self.n {
            for j in 1..=self.k {
                out.push(self.level(i, j));
            }
        }
        out
    }

    /// `(i, j)` for the coordinate `z_i^(j)`.
    pub fn locate(&self, v: &Var) -> Option<(u32, u32)> {
        if !v.is_base() {
            return None;
        }
        let rest = v.name().strip_prefix('z')?;
        let (i, j) = match rest.split_once('_') {
            Some((i, j)) => (parse_index(i)?, parse_index(j)?),
            None => (parse_index(rest)?, 0),
        };
        let ok = (1..=self.n).contains(&i) && (j == 0 || (i < self.n && j <= self.k));
        ok.then_some((i, j))
    }

    fn sigma(&self) -> Poly {
        match self.mode {
            DivisorMode::AwayFromD => Poly::one(),
            DivisorMode::Adapted => Poly::var(self.base(1)),
        }
    }

    /// Values of the chart coordinates at `(w, z)`.
    pub fn point(&self, params: &GammaParams) -> Result<HashMap<Var, Rat>, TowerError> {
        params.check(self.n, self.k)?;
        let mut out = HashMap::new();
        for i in 1..=self.n {
            out.insert(self.base(i), params.z[i as usize - 1].clone());
        }
        for i in 1..self.n {
            for j in 1..=self.k {
                out.insert(self.level(i, j), params.w[i as usize - 1][j as usize - 1].clone());
            }
        }
        Ok(out)
    }

    /// A chart function evaluated at `(w, z)`.
    pub fn evaluate(&self, g: &RatFunc, params: &GammaParams) -> Result<Rat, TowerError> {
        let point = self.point(params)?;
        Ok(g.evaluate(|v| point.get(v).cloned())?)
    }
}

fn parse_index(s: &str) -> Option<u32> {
    if s.is_empty() || s.starts_with('0') || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Base point `z` and jet parameters `w_i^(j)` (`w[i-1][j-1]`) of the curve family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaParams {
    pub z: Vec<Rat>,
    pub w: Vec<Vec<Rat>>,
}

impl GammaParams {
    fn check(&self, n: u32, k: u32) -> Result<(), TowerError> {
        if self.z.len() != n as usize || self.w.len() != n as usize - 1 || self.w.iter().any(|r| r.len() != k as usize) {
            return Err(TowerError::Shape(format!("gamma parameters do not match n = {n}, k = {k}")));
        }
        Ok(())
    }

    pub fn n(&self) -> u32 {
        self.z.len() as u32
    }

    pub fn k(&self) -> u32 {
        self.w.first().map_or(0, |r| r.len() as u32)
    }
}

/// `xi_p(g)`, where `xi_p = d/dz_n + sum_i z_i^(1) d/dz_i + sum_{j<p} sum_i z_i^(j+1) d/dz_i^(j)`.
pub fn xi_apply(p: u32, g: &RatFunc, chart: &TowerChart) -> Result<RatFunc, TowerError> {
    if p == 0 || p > chart.k {
        return Err(TowerError::Shape(format!("xi_{p} is outside 1..={}", chart.k)));
    }
    for v in g.vars() {
        let (_, level) = chart.locate(&v).ok_or(TowerError::UnknownCoordinate(v))?;
        if level >= p {
            return Err(TowerError::LevelViolation { p, var: v, level });
        }
    }
    let n = chart.n;
    Ok(g.apply_derivation(|v| {
        let (i, j) = chart.locate(v)?;
        if i == n {
            Some(Poly::one())
        } else {
            Some(Poly::var(chart.level(i, j + 1)))
        }
    }))
}

/// `nabla_U^0 f, ..., nabla_U^j f`.
pub fn nabla_chart_sequence(j: u32, f: &Poly, chart: &TowerChart) -> Result<Vec<RatFunc>, TowerError> {
    if j > chart.k {
        return Err(TowerError::Shape(format!("order {j} exceeds tower height {}", chart.k)));
    }
    let sigma = RatFunc::from_poly(chart.sigma());
    let mut out = vec![RatFunc::from_poly(f.clone())];
    for p in 1..=j {
        let cur = out.last().expect("nonempty");
        let mut next = xi_apply(p, cur, chart)?;
        if chart.mode == DivisorMode::Adapted {
            let dlog = xi_apply(p, &sigma, chart)?.div_poly_pow(sigma.numerator(), 1)?;
            next = (&next - &(cur * &dlog)).cancel_factors();
        }
        out.push(next);
    }
    Ok(out)
}

/// `nabla_U^j f` on the chart.
pub fn nabla_chart(j: u32, f: &Poly, chart: &TowerChart) -> Result<RatFunc, TowerError> {
    Ok(nabla_chart_sequence(j, f, chart)?.pop().expect("nonempty"))
}

/// The k-jet at `t = 0` of `gamma^i(t) = z_i + sum_j w_i^(j) t^j / j!`, `gamma^n(t) = z_n + t`.
pub fn gamma_curve(params: &GammaParams, k: u32) -> Result<CurveJet, TowerError> {
    let n = params.n();
    if n == 0 {
        return Err(TowerError::Shape("empty base point".into()));
    }
    params.check(n, k)?;
    let chart = TowerChart::new(n, k, DivisorMode::AwayFromD)?;
    let mut pairs = Vec::new();
    for i in 1..n {
        let mut d = vec![params.z[i as usize - 1].clone()];
        d.extend(params.w[i as usize - 1].iter().cloned());
        pairs.push((chart.base(i), d));
    }
    let mut last = vec![Rat::zero(); k as usize + 1];
    last[0] = params.z[n as usize - 1].clone();
    if k >= 1 {
        last[1] = Rat::one();
    }
    pairs.push((chart.base(n), last));
    Ok(CurveJet::from_pairs(k, pairs)?)
}

/// `d^j f(j_k gamma) - nabla_U^j f (w, z)` in the chart away from `D`.
pub fn verify_chart_identity(f: &Poly, j: u32, params: &GammaParams) -> Result<Rat, TowerError> {
    // With n = 1 there are no jet parameters and any order is available.
    let k = if params.n() == 1 { j } else { params.k() };
    if k < j {
        return Err(TowerError::Shape(format!("order {j} needs jet parameters up to order {j}")));
    }
    let chart = TowerChart::new(params.n(), k, DivisorMode::AwayFromD)?;
    let jet = gamma_curve(params, k)?;
    let lhs = JetPoly::from_poly(d_poly_n(f, j)).pullback(&jet)?;
    let rhs = chart.evaluate(&nabla_chart(j, f, &chart)?, params)?;
    Ok(lhs - rhs)
}

/// `det(nabla_U^j s_i)`, `1 <= j <= k`, for `k` sections.
pub fn omega_chart(sections: &[Poly], chart: &TowerChart) -> Result<RatFunc, TowerError> {
    let k = sections.len() as u32;
    let cols: Vec<Vec<RatFunc>> =
        sections.iter().map(|s| nabla_chart_sequence(k, s, chart)).collect::<Result<_, _>>()?;
    let rows: Vec<Vec<RatFunc>> = (1..=k as usize).map(|j| cols.iter().map(|c| c[j].clone()).collect()).collect();
    Ok(determinant(&rows))
}

/// The pullback of `W_D(s_1..s_k)` along `gamma` minus `omega_U(s_1..s_k)(w, z)`, with `sigma = 1`.
pub fn omega_consistency_defect(sections: &[Poly], params: &GammaParams) -> Result<Rat, TowerError> {
    let k = sections.len() as u32;
    let chart = TowerChart::new(params.n(), k, DivisorMode::AwayFromD)?;
    let omega = chart.evaluate(&omega_chart(sections, &chart)?, params)?;
    let pair = LogPair::new(chart.coordinates()[..params.n() as usize].to_vec(), Poly::one())?;
    let w = wronskian_log(sections, &pair)?;
    let pulled = w.body().pullback(&gamma_curve(params, k)?)?;
    Ok(pulled - omega)
}

/// Coefficients of `Gamma_2, ..., Gamma_k`: `k, k + (k-1), ..., k + (k-1) + ... + 2`.
pub fn gamma_weights(k: u32) -> Result<Vec<u64>, TowerError> {
    if k < 2 {
        return Err(TowerError::Shape("gamma weights need k >= 2".into()));
    }
    let mut acc = 0u64;
    Ok((0..k - 1)
        .map(|i| {
            acc += u64::from(k - i);
            acc
        })
        .collect())
}
