//! Effective degree bounds, the inequalities behind them, and the dimension counts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::multipoly::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("n = {0} is out of range: the bounds need n >= 2")]
    DimensionTooSmall(u32),
    #[error("m = {0} admits no decomposition m = eps + (r + k) delta meeting the r-inequality")]
    TooSmall(BigInt),
}

/// Canonical parameters for dimension `n`: `k = n + 1`, `delta = n^2 + 3n + 1`, `k' = k(k+1)/2`, `N = k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundParams {
    pub n: u32,
    pub k: u32,
    pub delta: u32,
    pub k_prime: u32,
    pub big_n: u32,
}

pub fn params_for(n: u32) -> Result<BoundParams, BoundsError> {
    if n < 2 {
        return Err(BoundsError::DimensionTooSmall(n));
    }
    let k = n + 1;
    Ok(BoundParams { n, k, delta: (k + 1) * n + k, k_prime: k * (k + 1) / 2, big_n: k })
}

fn big(x: u32) -> BigInt {
    BigInt::from(x)
}

/// `delta^(k-1)`.
fn delta_pow(p: &BoundParams) -> BigInt {
    Pow::pow(big(p.delta), p.k - 1)
}

/// `(n+2)^(n+3) (n+1)^(n+3)`.
pub fn kobayashi_bound(n: u32) -> Result<BigInt, BoundsError> {
    params_for(n)?;
    Ok(Pow::pow(big(n + 2) * big(n + 1), n + 3))
}

/// `(n^2 + 3n + 1)^(n+3)`, the other stated form of the bound.
pub fn alternative_bound(n: u32) -> Result<BigInt, BoundsError> {
    let p = params_for(n)?;
    Ok(Pow::pow(big(p.delta), n + 3))
}

/// `k(k + delta - 1 + k delta) < (delta + 1)^2`.
pub fn basic_inequality(n: u32) -> Result<bool, BoundsError> {
    let p = params_for(n)?;
    let (k, d) = (u64::from(p.k), u64::from(p.delta));
    Ok(k * (k + d - 1 + k * d) < (d + 1) * (d + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `r > delta^(k-1) k (eps + k delta)`.
    Kobayashi,
    /// `r > delta^(k-1) k' + delta^(k-1) k (eps + k delta)`.
    Smt,
}

/// `m = eps + (r + k) delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub m: BigInt,
    pub epsilon: u32,
    pub r: BigInt,
}

/// The strict lower bound the mode imposes on `r`.
pub fn r_floor(p: &BoundParams, epsilon: u32, mode: Mode) -> BigInt {
    let dp = delta_pow(p);
    let core = &dp * big(p.k) * (big(epsilon) + big(p.k) * big(p.delta));
    match mode {
        Mode::Kobayashi => core,
        Mode::Smt => core + dp * big(p.k_prime),
    }
}

/// Checks a decomposition against every constraint by reconstruction.
pub fn decomposition_holds(p: &BoundParams, d: &Decomposition, mode: Mode) -> bool {
    let recon = big(d.epsilon) + (&d.r + big(p.k)) * big(p.delta);
    recon == d.m && (p.k..p.k + p.delta).contains(&d.epsilon) && d.r > r_floor(p, d.epsilon, mode)
}

/// Scans the `delta` admissible values of `eps`; exactly one matches `m` modulo `delta`.
pub fn decompose_degree(m: &BigInt, n: u32, mode: Mode) -> Result<Decomposition, BoundsError> {
    let p = params_for(n)?;
    let delta = big(p.delta);
    for eps in p.k..p.k + p.delta {
        let rest = m - big(eps);
        let (q, rem) = rest.div_rem(&delta);
        if !rem.is_zero() {
            continue;
        }
        let r = q - big(p.k);
        if r > r_floor(&p, eps, mode) {
            return Ok(Decomposition { m: m.clone(), epsilon: eps, r });
        }
        break;
    }
    Err(BoundsError::TooSmall(m.clone()))
}

/// `r_0`: `delta^(k-1)(delta+1)^2`, or `delta^(k-1)(delta+1)(delta+3/2)` in smt mode.
pub fn r_zero(n: u32, mode: Mode) -> Result<Rat, BoundsError> {
    let p = params_for(n)?;
    let dp = Rat::from_integer(delta_pow(&p));
    let d1 = Rat::from_integer(big(p.delta + 1));
    Ok(match mode {
        Mode::Kobayashi => dp * &d1 * &d1,
        Mode::Smt => dp * d1 * (Rat::from_integer(big(p.delta)) + Rat::new(3.into(), 2.into())),
    })
}

/// `ceil((r_0 + k) delta + 2 delta)`, from which on every `m` decomposes.
pub fn threshold(n: u32, mode: Mode) -> Result<BigInt, BoundsError> {
    let p = params_for(n)?;
    let delta = Rat::from_integer(big(p.delta));
    let t = (r_zero(n, mode)? + Rat::from_integer(big(p.k))) * &delta + delta * Rat::from_integer(2.into());
    Ok(t.ceil().to_integer())
}

/// `delta^(k-1) k' / (r - delta^(k-1) k (eps + k delta))` for the smt decomposition of `m`.
pub fn smt_ratio(n: u32, m: &BigInt) -> Result<Rat, BoundsError> {
    let p = params_for(n)?;
    let d = decompose_degree(m, n, Mode::Smt)?;
    let num = delta_pow(&p) * big(p.k_prime);
    let den = &d.r - r_floor(&p, d.epsilon, Mode::Kobayashi);
    Ok(Rat::new(num, den))
}

/// The dimension counts with `N = k = n + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionAudit {
    /// `(k+1) n + 1`.
    pub lifted_dim: u64,
    pub delta_plus_one: u64,
    /// `(k+1) n + 1 + (k-1) - (delta+1)`; must be negative.
    pub margin: i64,
    /// `binom(N - n + delta, delta)`; must be at least `delta + 1`.
    pub index_lower_bound: u64,
    pub lifted_below_codim: bool,
    pub margin_negative: bool,
    pub index_bound_holds: bool,
}

impl DimensionAudit {
    pub fn passes(&self) -> bool {
        self.lifted_below_codim && self.margin_negative && self.index_bound_holds
    }
}

fn binom(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let v = (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1));
    u64::try_from(v).expect("binomial fits in u64")
}

pub fn dimension_audit(n: u32) -> Result<DimensionAudit, BoundsError> {
    let p = params_for(n)?;
    let (n64, k, d) = (u64::from(p.n), u64::from(p.k), u64::from(p.delta));
    let lifted = (k + 1) * n64 + 1;
    let margin = (lifted + k - 1) as i64 - (d + 1) as i64;
    let index_lower = binom(u64::from(p.big_n) - n64 + d, d);
    Ok(DimensionAudit {
        lifted_dim: lifted,
        delta_plus_one: d + 1,
        margin,
        index_lower_bound: index_lower,
        lifted_below_codim: lifted < d + 1,
        margin_negative: margin < 0,
        index_bound_holds: index_lower > d,
    })
}

/// How the `j`-th term of the orbifold exponent is weighted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbifoldReading {
    /// `sum_j alpha_j^1 min(j, m)`.
    Unweighted,
    /// `sum_j j alpha_j^1 min(j, m)`.
    Weighted,
}

/// `alpha[j-1] = alpha_j`, each a vector indexed by coordinate; returns `(lhs, rhs)` of
/// `ceil(E / m) <= ceil(N / m)` with `N = sum_j j |alpha_j|`.
pub fn orbifold_sides(alpha: &[Vec<u32>], m: u32, reading: OrbifoldReading) -> (u64, u64) {
    assert!(m >= 1, "multiplicity must be positive");
    let m64 = u64::from(m);
    let mut e = 0u64;
    let mut big_n = 0u64;
    for (i, a) in alpha.iter().enumerate() {
        let j = i as u64 + 1;
        let first = u64::from(a.first().copied().unwrap_or(0));
        let w = match reading {
            OrbifoldReading::Unweighted => 1,
            OrbifoldReading::Weighted => j,
        };
        e += w * first * j.min(m64);
        big_n += j * a.iter().map(|&x| u64::from(x)).sum::<u64>();
    }
    (e.div_ceil(m64), big_n.div_ceil(m64))
}

/// The orbifold ceiling inequality in the reading under which it holds.
pub fn orbifold_ceiling_check(alpha: &[Vec<u32>], m: u32) -> bool {
    let (l, r) = orbifold_sides(alpha, m, OrbifoldReading::Unweighted);
    l <= r
}

/// Every `(alpha_j^1, |alpha_j|)` profile with `j <= k`, `N <= max_n`; a profile stands for `alpha_j = (a, s - a)`.
pub fn orbifold_profiles(k: u32, max_n: u32) -> Vec<Vec<Vec<u32>>> {
    fn rec(j: u32, k: u32, budget: u32, cur: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if j > k {
            out.push(cur.clone());
            return;
        }
        for s in 0..=budget / j {
            for a in 0..=s {
                cur.push(vec![a, s - a]);
                rec(j + 1, k, budget - j * s, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(1, k, max_n, &mut Vec::new(), &mut out);
    out
}

/// One row of the bound table; integers are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub n: u32,
    pub k: u32,
    pub delta: u32,
    pub k_prime: u32,
    pub kobayashi_bound: String,
    pub alternative_bound: String,
    /// `n^2 + 3n + 1 < (n+1)(n+2)`, hence the alternative bound is the smaller one.
    pub alternative_is_smaller: bool,
    pub r0_kobayashi: String,
    pub r0_smt: String,
    pub threshold_kobayashi: String,
    pub threshold_smt: String,
    pub threshold_kobayashi_below_bound: bool,
    pub threshold_smt_below_bound: bool,
    pub threshold_kobayashi_below_alternative: bool,
    pub basic_inequality: bool,
    pub dimension_audit: DimensionAudit,
    pub decomposition_at_bound: Option<(u32, String)>,
    pub smt_ratio_at_bound: Option<String>,
    pub smt_ratio_below_one: bool,
    /// `bound / (e^3 n^(2n+6))`, informational.
    pub asymptotic_ratio: String,
}

impl BoundRow {
    /// Every asserted flag; the alternative-bound comparisons are reported only.
    pub fn passes(&self) -> bool {
        self.alternative_is_smaller
            && self.threshold_kobayashi_below_bound
            && self.threshold_smt_below_bound
            && self.basic_inequality
            && self.dimension_audit.passes()
            && self.decomposition_at_bound.is_some()
            && self.smt_ratio_below_one
    }
}

fn asymptotic_ratio(n: u32, bound: &BigInt) -> String {
    // log of a big integer via its bit length keeps this finite for every n.
    let bits = bound.bits();
    let shift = bits.saturating_sub(64);
    let top = (bound >> shift).to_f64().unwrap_or(f64::MAX);
    let ln_bound = top.ln() + shift as f64 * std::f64::consts::LN_2;
    let ln = ln_bound - 3.0 - f64::from(2 * n + 6) * f64::from(n).ln();
    format!("{:.6}", ln.exp())
}

pub fn bound_row(n: u32) -> Result<BoundRow, BoundsError> {
    let p = params_for(n)?;
    let bound = kobayashi_bound(n)?;
    let alt = alternative_bound(n)?;
    let tk = threshold(n, Mode::Kobayashi)?;
    let ts = threshold(n, Mode::Smt)?;
    let dec = decompose_degree(&bound, n, Mode::Kobayashi).ok();
    let ratio = smt_ratio(n, &bound).ok();
    Ok(BoundRow {
        n,
        k: p.k,
        delta: p.delta,
        k_prime: p.k_prime,
        kobayashi_bound: bound.to_string(),
        alternative_bound: alt.to_string(),
        alternative_is_smaller: u64::from(p.delta) < u64::from(n + 1) * u64::from(n + 2),
        r0_kobayashi: r_zero(n, Mode::Kobayashi)?.to_string(),
        r0_smt: r_zero(n, Mode::Smt)?.to_string(),
        threshold_kobayashi: tk.to_string(),
        threshold_smt: ts.to_string(),
        threshold_kobayashi_below_bound: tk < bound,
        threshold_smt_below_bound: ts < bound,
        threshold_kobayashi_below_alternative: tk < alt,
        basic_inequality: basic_inequality(n)?,
        dimension_audit: dimension_audit(n)?,
        decomposition_at_bound: dec.map(|d| (d.epsilon, d.r.to_string())),
        smt_ratio_below_one: ratio.as_ref().is_some_and(|r| r.numer().abs() < r.denom().abs()),
        smt_ratio_at_bound: ratio.map(|r| r.to_string()),
        asymptotic_ratio: asymptotic_ratio(n, &bound),
    })
}

/// Rows for `n_from..=n_to`.
pub fn bounds_table(n_from: u32, n_to: u32) -> Result<Vec<BoundRow>, BoundsError> {
    (n_from..=n_to).map(bound_row).collect()
}

/// `m` values in `[from, from + count)` that fail to decompose.
pub fn threshold_sweep(n: u32, mode: Mode, from: &BigInt, count: u32) -> Result<Vec<BigInt>, BoundsError> {
    params_for(n)?;
    let mut failures = Vec::new();
    let mut m = from.clone();
    for _ in 0..count {
        if decompose_degree(&m, n, mode).is_err() {
            failures.push(m.clone());
        }
        m += BigInt::one();
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_parameters() {
        let p = params_for(2).unwrap();
        assert_eq!((p.k, p.delta, p.k_prime), (3, 11, 6));
        let p = params_for(3).unwrap();
        assert_eq!((p.k, p.delta, p.k_prime), (4, 19, 10));
        assert_eq!(params_for(1), Err(BoundsError::DimensionTooSmall(1)));
    }

    #[test]
    fn kobayashi_values() {
        assert_eq!(kobayashi_bound(2).unwrap(), BigInt::from(248832));
        assert_eq!(kobayashi_bound(3).unwrap(), BigInt::from(64_000_000));
        for n in 2..12 {
            assert!(kobayashi_bound(n).unwrap() < kobayashi_bound(n + 1).unwrap());
        }
        assert_eq!(alternative_bound(2).unwrap(), BigInt::from(161051));
    }

    #[test]
    fn basic_inequality_values() {
        // 138 < 144 and 392 < 400
        assert!(basic_inequality(2).unwrap());
        assert!(basic_inequality(3).unwrap());
    }

    #[test]
    fn decompositions() {
        let m = kobayashi_bound(2).unwrap();
        let p = params_for(2).unwrap();
        let d = decompose_degree(&m, 2, Mode::Kobayashi).unwrap();
        assert!(decomposition_holds(&p, &d, Mode::Kobayashi));
        // 248832 = 11 * 22620 + 12, so eps = 12 and r = 22620 - 3
        assert_eq!((d.epsilon, d.r.clone()), (12, BigInt::from(22617)));
        let tiny = BigInt::from(p.k + (p.k + 1) * p.delta);
        assert!(matches!(decompose_degree(&tiny, 2, Mode::Kobayashi), Err(BoundsError::TooSmall(_))));
    }

    #[test]
    fn thresholds() {
        assert_eq!(r_zero(2, Mode::Kobayashi).unwrap(), Rat::from_integer(17424.into()));
        assert_eq!(threshold(2, Mode::Kobayashi).unwrap(), BigInt::from(191719));
        // r0 = 121 * 12 * 25/2 = 18150; (18150 + 3) * 11 + 22
        assert_eq!(threshold(2, Mode::Smt).unwrap(), BigInt::from(199705));
        assert!(threshold(2, Mode::Kobayashi).unwrap() > alternative_bound(2).unwrap());
    }

    #[test]
    fn smt_ratio_examples() {
        let m = kobayashi_bound(2).unwrap();
        let r = smt_ratio(2, &m).unwrap();
        assert!(r < Rat::one());
        let t = threshold(2, Mode::Smt).unwrap();
        assert!(smt_ratio(2, &t).unwrap() < Rat::one());
        let later = smt_ratio(2, &(&t + BigInt::from(11 * 40))).unwrap();
        assert!(later < smt_ratio(2, &t).unwrap());
    }

    #[test]
    fn dimension_counts() {
        let a = dimension_audit(2).unwrap();
        assert_eq!((a.lifted_dim, a.delta_plus_one, a.margin), (9, 12, -1));
        assert_eq!(a.index_lower_bound, 12);
        assert!(a.passes());
    }

    #[test]
    fn orbifold_examples() {
        assert!(orbifold_ceiling_check(&[vec![1]], 2));
        assert_eq!(orbifold_sides(&[vec![1]], 2, OrbifoldReading::Unweighted), (1, 1));
        assert!(orbifold_ceiling_check(&[vec![0, 3], vec![0, 1]], 5));
        // The weighted reading already fails here: ceil(2*1*2/2) = 2 > ceil(2/2) = 1.
        let alpha = [vec![0], vec![1]];
        assert_eq!(orbifold_sides(&alpha, 2, OrbifoldReading::Weighted), (2, 1));
        assert!(orbifold_ceiling_check(&alpha, 2));
    }

    #[test]
    fn profile_enumeration() {
        // k = 1, N <= 2: s in 0..=2, a in 0..=s
        assert_eq!(orbifold_profiles(1, 2).len(), 6);
        for prof in orbifold_profiles(3, 6) {
            let n: u32 = prof.iter().enumerate().map(|(i, a)| (i as u32 + 1) * (a[0] + a[1])).sum();
            assert!(n <= 6);
        }
    }

    #[test]
    fn table_row_for_two() {
        let row = bound_row(2).unwrap();
        assert_eq!(row.kobayashi_bound, "248832");
        assert_eq!(row.threshold_kobayashi, "191719");
        assert!(row.threshold_kobayashi_below_bound);
        assert!(!row.threshold_kobayashi_below_alternative);
        assert!(row.passes());
    }
}
