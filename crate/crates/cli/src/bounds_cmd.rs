use clap::ValueEnum;

use logjet::bounds::{bounds_table, BoundRow};

use crate::Failure;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

fn print_text(rows: &[BoundRow]) {
    for r in rows {
        let a = &r.dimension_audit;
        emit!("n = {}: k = {}, delta = {}, k' = {}", r.n, r.k, r.delta, r.k_prime);
        emit!("  bound (n+1)^(n+5) (n+2)^(n+3) ... {}", r.kobayashi_bound);
        emit!("  alternative bound ............... {}", r.alternative_bound);
        emit!("  r0 / threshold .................. {} / {}", r.r0_kobayashi, r.threshold_kobayashi);
        emit!("  r0 / threshold (smt) ............ {} / {}", r.r0_smt, r.threshold_smt);
        match &r.decomposition_at_bound {
            Some((eps, rr)) => emit!("  decomposition at bound .......... epsilon = {eps}, r = {rr}"),
            None => emit!("  decomposition at bound .......... NONE"),
        }
        emit!("  smt ratio at bound .............. {}", r.smt_ratio_at_bound.as_deref().unwrap_or("undefined"));
        emit!(
            "  dimension audit ................. lifted {} vs {}, margin {}, index bound {}",
            a.lifted_dim, a.delta_plus_one, a.margin, a.index_lower_bound
        );
        emit!("  asymptotic ratio ................ {}", r.asymptotic_ratio);
        emit!(
            "  checks: basic inequality {}, audit {}, thresholds below bound {}, smt ratio < 1 {}",
            yes(r.basic_inequality),
            yes(a.passes()),
            yes(r.threshold_kobayashi_below_bound && r.threshold_smt_below_bound),
            yes(r.smt_ratio_below_one)
        );
        emit!("  threshold below alternative bound {}", if r.threshold_kobayashi_below_alternative { "yes" } else { "no" });
    }
}

pub fn run(from: u32, to: u32, format: Format) -> Result<(), Failure> {
    if from < 2 || from > to {
        return Err(Failure::Usage(format!("need 2 <= from <= to, got {from}..{to}")));
    }
    let rows = bounds_table(from, to).map_err(Failure::usage)?;
    match format {
        Format::Text => print_text(&rows),
        Format::Json => emit!("{}", serde_json::to_string_pretty(&rows).map_err(Failure::usage)?),
    }
    if rows.iter().all(BoundRow::passes) {
        Ok(())
    } else {
        Err(Failure::Defect)
    }
}
