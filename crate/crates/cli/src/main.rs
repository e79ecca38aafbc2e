use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use logjet::logconn::{nabla, wronskian_abs, wronskian_log, LogPair};
use logjet::multipoly::{parse_poly, parse_poly_list, Poly, Var};
use logjet::suites::{self, Faults, Size, Suite};
use logjet::tower::{nabla_chart, DivisorMode, TowerChart};

/// `println!` that ignores a closed stdout, so piping into `head` is not an error.
macro_rules! emit {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! emit_raw {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

mod bounds_cmd;
mod fermat_cmd;

/// Exact jet differentials, logarithmic connections and Wronskians over the rationals.
#[derive(Parser, Debug)]
#[command(name = "logjet", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the randomized exact-identity suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Defaults to LOGJET_SEED, then to 20190501.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = SizeArg::Small)]
        size: SizeArg,
        #[arg(long, hide = true)]
        corrupt_nabla: bool,
        #[arg(long, hide = true)]
        perturb_graph: bool,
    },
    /// Print the Wronskian of the sections: absolute, or logarithmic along `sigma` with `--log`.
    Wronskian {
        /// Comma-separated polynomials.
        #[arg(long)]
        sections: String,
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        log: bool,
    },
    /// Print nabla^j of a section for the pair (coordinates, sigma).
    Nabla {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        section: String,
        #[arg(long, default_value_t = 1)]
        order: u32,
        /// Print every order from 0 up to `--order`.
        #[arg(long)]
        all: bool,
    },
    /// Print nabla^j f in the tower chart `(z, z{i}_{j})` of dimension n and height k.
    Tower {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        f: String,
        /// A single order; all of 0..=k when omitted.
        #[arg(long)]
        order: Option<u32>,
        /// Use the chart adapted to the divisor z1 = 0.
        #[arg(long)]
        adapted: bool,
    },
    /// Check the determinant system of a Fermat family file.
    Fermat {
        file: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = fermat_cmd::CheckArg::All)]
        checks: fermat_cmd::CheckArg,
        /// Seeds the rank-probe samples and frames; defaults as for `verify`.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, hide = true)]
        perturb_graph: bool,
    },
    /// Degree bounds and their arithmetic checks for a range of dimensions.
    Bounds {
        #[arg(long, default_value_t = 2)]
        from: u32,
        #[arg(long, default_value_t = 5)]
        to: u32,
        #[arg(long, value_enum, default_value_t = bounds_cmd::Format::Text)]
        format: bounds_cmd::Format,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Jetalg,
    Logconn,
    Tower,
    Fermat,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SizeArg {
    Small,
    Medium,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or unreadable input; exit 2.
    Usage(String),
    /// A checked identity failed; exit 1.
    Defect,
}

impl Failure {
    pub fn usage(e: impl std::fmt::Display) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("LOGJET_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("LOGJET_SEED is not an integer: {v:?}"))),
        Err(_) => Ok(suites::DEFAULT_SEED),
    }
}

fn parse(label: &str, src: &str) -> Result<Poly, Failure> {
    parse_poly(src).map_err(|e| Failure::Usage(format!("{label}: {e}")))
}

fn ambient(polys: &[&Poly]) -> Vec<Var> {
    let set: BTreeSet<Var> = polys.iter().flat_map(|p| p.vars()).collect();
    set.into_iter().collect()
}

fn run_verify(suite: SuiteArg, seed: Option<u64>, size: SizeArg, faults: Faults) -> Result<(), Failure> {
    let seed = resolve_seed(seed)?;
    let suite = match suite {
        SuiteArg::Jetalg => Suite::Jetalg,
        SuiteArg::Logconn => Suite::Logconn,
        SuiteArg::Tower => Suite::Tower,
        SuiteArg::Fermat => Suite::Fermat,
        SuiteArg::All => Suite::All,
    };
    let size = match size {
        SizeArg::Small => Size::Small,
        SizeArg::Medium => Size::Medium,
    };
    emit!("seed {seed}");
    let results = suites::run_suite(suite, seed, size, faults);
    let mut ok = true;
    for r in &results {
        emit!("{r}");
        for f in &r.failures {
            emit!("    {}", f.replace('\n', "\n    "));
        }
        ok &= r.ok();
    }
    let passed = results.iter().filter(|r| r.ok()).count();
    emit!("{passed}/{} checks passed", results.len());
    if ok {
        Ok(())
    } else {
        Err(Failure::Defect)
    }
}

fn run_wronskian(sections: &str, sigma: Option<&str>, log: bool) -> Result<(), Failure> {
    let sections = parse_poly_list(sections).map_err(|e| Failure::Usage(format!("sections: {e}")))?;
    if sections.is_empty() {
        return Err(Failure::Usage("at least one section is required".into()));
    }
    if !log {
        if sigma.is_some() {
            eprintln!("note: --sigma is ignored without --log");
        }
        emit!("{}", wronskian_abs(&sections));
        return Ok(());
    }
    let sigma = parse("sigma", sigma.ok_or_else(|| Failure::Usage("--log needs --sigma".into()))?)?;
    let mut all: Vec<&Poly> = sections.iter().collect();
    all.push(&sigma);
    let pair = LogPair::new(ambient(&all), sigma).map_err(Failure::usage)?;
    let w = wronskian_log(&sections, &pair).map_err(Failure::usage)?;
    emit!("{}", w.body().body().cancel_factors());
    Ok(())
}

fn run_nabla(sigma: &str, section: &str, order: u32, all: bool) -> Result<(), Failure> {
    let sigma = parse("sigma", sigma)?;
    let s = parse("section", section)?;
    let pair = LogPair::new(ambient(&[&sigma, &s]), sigma).map_err(Failure::usage)?;
    let orders = if all { 0..=order } else { order..=order };
    for j in orders {
        let v = nabla(j, &s, &pair).map_err(Failure::usage)?.body().body().cancel_factors();
        if all {
            emit!("{j}: {v}");
        } else {
            emit!("{v}");
        }
    }
    Ok(())
}

fn run_tower(n: u32, k: u32, f: &str, order: Option<u32>, adapted: bool) -> Result<(), Failure> {
    let mode = if adapted { DivisorMode::Adapted } else { DivisorMode::AwayFromD };
    let chart = TowerChart::new(n, k, mode).map_err(Failure::usage)?;
    let f = parse("f", f)?;
    let orders = match order {
        Some(j) if j > k => return Err(Failure::Usage(format!("order {j} exceeds the tower height {k}"))),
        Some(j) => j..=j,
        None => 0..=k,
    };
    for j in orders {
        let v = nabla_chart(j, &f, &chart).map_err(Failure::usage)?;
        if order.is_some() {
            emit!("{v}");
        } else {
            emit!("{j}: {v}");
        }
    }
    Ok(())
}

fn dispatch(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Verify { suite, seed, size, corrupt_nabla, perturb_graph } => {
            run_verify(suite, seed, size, Faults { corrupt_nabla, perturb_graph })
        }
        Command::Wronskian { sections, sigma, log } => run_wronskian(&sections, sigma.as_deref(), log),
        Command::Nabla { sigma, section, order, all } => run_nabla(&sigma, &section, order, all),
        Command::Tower { n, k, f, order, adapted } => run_tower(n, k, &f, order, adapted),
        Command::Fermat { file, checks, seed, perturb_graph } => {
            let seed = resolve_seed(seed)?;
            fermat_cmd::run(&file, checks, seed, perturb_graph)
        }
        Command::Bounds { from, to, format } => bounds_cmd::run(from, to, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Defect) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
