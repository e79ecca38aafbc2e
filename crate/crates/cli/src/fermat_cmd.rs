use std::path::Path;

use clap::ValueEnum;
use itertools::Itertools;
use num_traits::Zero;

use logjet::fermat::{
    cramer_identity_check, graph_perturbation, nabla_factor, plucker_factorization_defect, rank_probe, system_decomposition_defect,
    system_residual_with, FermatError, FermatFamily, RankSample, TotalChart,
};
use logjet::multipoly::{MultiIndex, Poly, Var};
use logjet::suites::gen;

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Factor,
    System,
    Plucker,
    Rank,
    All,
}

/// Index subsets tried by the Plücker and Cramer checks.
const MAX_SUBSETS: usize = 20;
const RANK_SAMPLES: u32 = 5;
const ATTEMPTS: u32 = 20;

struct Report {
    ok: bool,
}

impl Report {
    fn line(&mut self, name: &str, passed: usize, total: usize, note: &str) {
        let status = if passed == total { "ok" } else { "FAILED" };
        self.ok &= passed == total;
        emit!("{name:<8} {passed:>4}/{total:<4} {status}{note}");
    }
}

fn defect(e: FermatError) -> Result<bool, Failure> {
    match e {
        FermatError::NotDivisible { .. } | FermatError::ZeroFamily => {
            emit!("    {e}");
            Ok(false)
        }
        other => Err(Failure::usage(other)),
    }
}

fn check_factor(fam: &FermatFamily, chart: &TotalChart, rep: &mut Report) -> Result<(), Failure> {
    let (mut passed, mut total) = (0, 0);
    for j in 1..=fam.k {
        for (idx, a) in &fam.a {
            total += 1;
            match nabla_factor(j, idx, a, fam, chart) {
                Ok(_) => passed += 1,
                Err(e) => {
                    defect(e)?;
                }
            }
        }
    }
    rep.line("factor", passed, total, "");
    Ok(())
}

fn check_system(fam: &FermatFamily, chart: &TotalChart, shift: &Poly, rep: &mut Report) -> Result<(), Failure> {
    let mut passed = 0;
    for j in 1..=fam.k {
        let residual = match system_residual_with(fam, j, chart, shift) {
            Ok(r) => r.is_zero(),
            Err(e) => defect(e)?,
        };
        let decomposition = match system_decomposition_defect(fam, j, chart) {
            Ok(d) => d.is_zero(),
            Err(e) => defect(e)?,
        };
        if residual && decomposition {
            passed += 1;
        } else {
            emit!("    order {j}: residual zero {residual}, decomposition zero {decomposition}");
        }
    }
    rep.line("system", passed, fam.k as usize, "");
    Ok(())
}

fn subsets(fam: &FermatFamily) -> Vec<Vec<MultiIndex>> {
    // Indices with a nonzero coefficient first, so small budgets still see live columns.
    let mut all = fam.indices();
    all.sort_by_key(|i| fam.coefficient(i).is_zero());
    all.into_iter().combinations(fam.k as usize).take(MAX_SUBSETS).collect()
}

fn check_plucker(fam: &FermatFamily, chart: &TotalChart, seed: u64, rep: &mut Report) -> Result<(), Failure> {
    let z = chart.z_vars();
    let sets = subsets(fam);
    let (mut passed, mut skipped) = (0, 0);
    for (i, set) in sets.iter().enumerate() {
        let factor_ok = plucker_factorization_defect(set, fam, chart).map_err(Failure::usage)?.is_zero();
        let mut rng = gen::instance_rng(seed, 200, i as u32);
        let mut cramer = None;
        for _ in 0..ATTEMPTS {
            let frame: Vec<Poly> = (0..fam.k).map(|_| gen::nonzero_poly(&mut rng, &z, 2, 3)).collect();
            match cramer_identity_check(&frame, set, fam, chart) {
                Ok(d) => {
                    cramer = Some(d.is_zero());
                    break;
                }
                Err(FermatError::SingularFrame) => continue,
                Err(e) => return Err(Failure::usage(e)),
            }
        }
        if cramer.is_none() {
            skipped += 1;
        }
        if factor_ok && cramer != Some(false) {
            passed += 1;
        } else {
            let names = set.iter().map(ToString::to_string).join(" ");
            emit!("    {names}: factorization {factor_ok}, cramer {cramer:?}");
        }
    }
    let note = if skipped > 0 { format!(" ({skipped} without a nonsingular frame)") } else { String::new() };
    rep.line("plucker", passed, sets.len(), &note);
    Ok(())
}

fn check_rank(fam: &FermatFamily, chart: &TotalChart, seed: u64, rep: &mut Report) -> Result<(), Failure> {
    if fam.epsilon < fam.k {
        emit!("rank     skipped (needs epsilon >= k)");
        return Ok(());
    }
    let t = chart.t();
    let z = chart.z_vars();
    let vars: Vec<Var> = std::iter::once(t).chain(z.iter().copied()).collect();
    let mut passed = 0;
    for i in 0..RANK_SAMPLES {
        let mut rng = gen::instance_rng(seed, 300, i);
        let mut outcome = None;
        for _ in 0..ATTEMPTS {
            let jet = gen::curve_jet(&mut rng, &vars, fam.k);
            if jet.value(&t).is_none_or(|v| v.is_zero()) {
                continue;
            }
            let frame: Vec<Poly> = (0..fam.k).map(|_| gen::nonzero_poly(&mut rng, &z, 2, 3)).collect();
            match rank_probe(fam, chart, &RankSample { jet, frame }) {
                Ok(r) => {
                    outcome = Some(r);
                    break;
                }
                Err(FermatError::SingularFrame) => continue,
                Err(e) => return Err(Failure::usage(e)),
            }
        }
        match outcome {
            Some(r) if r.is_full() => passed += 1,
            Some(r) => emit!("    sample {i}: rank {} < {}", r.rank, r.expected),
            None => emit!("    sample {i}: no nonsingular sample found"),
        }
    }
    rep.line("rank", passed, RANK_SAMPLES as usize, "");
    Ok(())
}

pub fn run(file: &Path, checks: CheckArg, seed: u64, perturb_graph: bool) -> Result<(), Failure> {
    let src = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let fam = FermatFamily::from_toml(&src).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let chart = TotalChart::for_family(&fam);
    emit_raw!("{}", fam.to_toml());
    emit!("---");
    let mut rep = Report { ok: true };
    let want = |c: CheckArg| checks == c || checks == CheckArg::All;
    if want(CheckArg::Factor) {
        check_factor(&fam, &chart, &mut rep)?;
    }
    if want(CheckArg::System) {
        let shift = if perturb_graph { graph_perturbation(&fam) } else { Poly::zero() };
        check_system(&fam, &chart, &shift, &mut rep)?;
    }
    if want(CheckArg::Plucker) {
        check_plucker(&fam, &chart, seed, &mut rep)?;
    }
    if want(CheckArg::Rank) {
        check_rank(&fam, &chart, seed, &mut rep)?;
    }
    if rep.ok {
        Ok(())
    } else {
        Err(Failure::Defect)
    }
}
