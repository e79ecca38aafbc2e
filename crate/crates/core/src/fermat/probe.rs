use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{FermatError, FermatFamily, TotalChart};
use crate::jetalg::{factorial, CurveJet, JetError, Series};
use crate::multipoly::{determinant, monomials_up_to, rank, solve_cramer, MultiIndex, Poly, Rat, Var};

/// A curve jet in the total chart together with a frame `b_1..b_k`.
#[derive(Clone, Debug)]
pub struct RankSample {
    pub jet: CurveJet,
    pub frame: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub expected: usize,
    /// The indices `I` with `tau^I(y) != 0`.
    pub support: Vec<MultiIndex>,
}

impl RankReport {
    pub fn is_full(&self) -> bool {
        self.rank == self.expected
    }
}

fn series_add(a: &Series, b: &Series) -> Series {
    Series(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
}

fn poly_series(p: &Poly, map: &HashMap<Var, Series>, k: usize) -> Result<Series, JetError> {
    let mut powers: HashMap<(Var, u32), Series> = HashMap::new();
    let mut out = Series::zero(k);
    for (m, c) in p.terms() {
        let mut acc = Series::zero(k);
        acc.0[0] = c.clone();
        for (v, e) in m.iter() {
            let base = map.get(v).ok_or(JetError::MissingCoordinate(*v))?;
            let pw = powers.entry((*v, e)).or_insert_with(|| (0..e).fold(unit(k), |s, _| s.mul(base)));
            acc = acc.mul(pw);
        }
        out = series_add(&out, &acc);
    }
    Ok(out)
}

fn unit(k: usize) -> Series {
    let mut s = Series::zero(k);
    s.0[0] = Rat::one();
    s
}

/// `(nabla^1 s)(j_k f), ..., (nabla^k s)(j_k f)` with `sigma = t`, via `t(0) * (s o f / t o f)^(j)(0)`.
pub fn nabla_value_along(s: &Poly, k: u32, jet: &CurveJet, chart: &TotalChart) -> Result<Vec<Rat>, FermatError> {
    if jet.order() < k {
        return Err(JetError::OrderTooHigh { needed: k, have: jet.order() }.into());
    }
    let ku = k as usize;
    let map: HashMap<Var, Series> =
        jet.coords().iter().map(|(v, d)| (*v, Series::from_derivatives(&d[..=ku]))).collect();
    let t = map.get(&chart.t()).ok_or(JetError::MissingCoordinate(chart.t()))?;
    if t.0[0].is_zero() {
        return Err(JetError::PoleAtBasepoint.into());
    }
    let q = poly_series(s, &map, ku)?.mul(&t.inverse());
    Ok((1..=ku).map(|j| &t.0[0] * &q.0[j] * Rat::from_integer(factorial(j as u32))).collect())
}

/// Exact rank of `a -> (l^p_I(a_I))` at the sample, restricted to the `I` with `tau^I(y) != 0`.
pub fn rank_probe(fam: &FermatFamily, chart: &TotalChart, sample: &RankSample) -> Result<RankReport, FermatError> {
    let k = fam.k;
    if sample.frame.len() != k as usize {
        return Err(FermatError::Shape(format!("frame needs {k} sections, got {}", sample.frame.len())));
    }
    let g_cols = sample
        .frame
        .iter()
        .map(|b| nabla_value_along(b, k, &sample.jet, chart))
        .collect::<Result<Vec<_>, _>>()?;
    let g: Vec<Vec<Rat>> = (0..k as usize).map(|j| g_cols.iter().map(|c| c[j].clone()).collect()).collect();
    if determinant(&g).is_zero() {
        return Err(FermatError::SingularFrame);
    }
    let y = |v: &Var| sample.jet.value(v);
    let mut support = Vec::new();
    for idx in fam.indices() {
        if !fam.tau_power(&idx, 1).evaluate(y)?.is_zero() {
            support.push(idx);
        }
    }
    let basis = monomials_up_to(&chart.z_vars(), fam.epsilon);
    let rows = k as usize * support.len();
    let mut columns: Vec<Vec<Rat>> = Vec::new();
    for (b, idx) in support.iter().enumerate() {
        let scale = fam.tau_power(idx, fam.r).evaluate(y)?;
        let lifted = fam.tau_power(idx, fam.r + fam.k);
        for m in &basis {
            let s = &Poly::monomial(m.clone(), Rat::one()) * &lifted;
            let v: Vec<Rat> = nabla_value_along(&s, k, &sample.jet, chart)?.into_iter().map(|x| x / &scale).collect();
            let ell = solve_cramer(&g, &v).ok_or(FermatError::SingularFrame)?;
            let mut col = vec![Rat::zero(); rows];
            for (p, x) in ell.into_iter().enumerate() {
                col[b * k as usize + p] = x;
            }
            columns.push(col);
        }
    }
    let matrix: Vec<Vec<Rat>> = (0..rows).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let r = if rows == 0 { 0 } else { rank(&matrix) };
    Ok(RankReport { rank: r, expected: rows, support })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::jetalg::JetPoly;
    use crate::logconn::nabla;
    use crate::multipoly::{parse_poly, rat};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn jet(k: u32, t: &[i64], z: &[&[i64]]) -> CurveJet {
        let mut pairs = vec![(Var::base("t"), t.iter().map(|&x| rat(x)).collect())];
        for (i, d) in z.iter().enumerate() {
            pairs.push((Var::base(&format!("z{}", i + 1)), d.iter().map(|&x| rat(x)).collect()));
        }
        CurveJet::from_pairs(k, pairs).unwrap()
    }

    fn fixture() -> FermatFamily {
        let tau = vec![p("1"), p("z1"), p("z1 + 2")];
        let a: BTreeMap<_, _> = [(MultiIndex(vec![1, 0, 0]), p("1")), (MultiIndex(vec![0, 1, 0]), p("z1^2 - 1"))].into();
        FermatFamily::new(1, 2, 1, 2, 3, 2, tau, a).unwrap()
    }

    #[test]
    fn series_values_match_symbolic_pullbacks() {
        let chart = TotalChart::new(2);
        let f = jet(3, &[2, -1, 3, 1], &[&[1, 2, 0, -1], &[-1, 1, 1, 5]]);
        for s in ["z1^3*z2 - 2*z2", "t*z1 + 1", "7"] {
            let vals = nabla_value_along(&p(s), 3, &f, &chart).unwrap();
            for (j, v) in vals.iter().enumerate() {
                let sym: JetPoly = nabla(j as u32 + 1, &p(s), chart.pair()).unwrap().into_body();
                assert_eq!(&sym.pullback(&f).unwrap(), v, "{s} at order {}", j + 1);
            }
        }
        let on_divisor = jet(1, &[0, 1], &[&[1, 1], &[0, 0]]);
        assert!(nabla_value_along(&p("z1"), 1, &on_divisor, &chart).is_err());
    }

    #[test]
    fn full_rank_at_generic_point() {
        let fam = fixture();
        let chart = TotalChart::for_family(&fam);
        let sample = RankSample { jet: jet(2, &[2, 1, 0], &[&[1, 3, 2]]), frame: vec![p("1"), p("z1")] };
        let rep = rank_probe(&fam, &chart, &sample).unwrap();
        assert_eq!(rep.support.len(), 3);
        assert_eq!(rep.expected, 6);
        assert_eq!(rep.rank, 6);
    }

    #[test]
    fn support_shrinks_where_tau_vanishes() {
        let fam = fixture();
        let chart = TotalChart::for_family(&fam);
        let sample = RankSample { jet: jet(2, &[3, 0, 1], &[&[0, 1, 2]]), frame: vec![p("1"), p("z1")] };
        let rep = rank_probe(&fam, &chart, &sample).unwrap();
        assert_eq!(rep.support, vec![MultiIndex(vec![1, 0, 0]), MultiIndex(vec![0, 0, 1])]);
        assert_eq!((rep.rank, rep.expected), (4, 4));
    }

    #[test]
    fn singular_frame_is_reported() {
        let fam = fixture();
        let chart = TotalChart::for_family(&fam);
        let sample = RankSample { jet: jet(2, &[1, 1, 0], &[&[1, 1, 0]]), frame: vec![p("1"), p("2")] };
        assert!(matches!(rank_probe(&fam, &chart, &sample), Err(FermatError::SingularFrame)));
    }
}
