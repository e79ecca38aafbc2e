//! One PASS/FAIL line per acceptance criterion. Every identity is exact (zero tolerance);
//! time limits are checked where one is stated.

use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::One;

use logjet::bounds::{
    basic_inequality, dimension_audit, kobayashi_bound, orbifold_ceiling_check, orbifold_profiles, params_for, smt_ratio,
    threshold, threshold_sweep, Mode,
};
use logjet::multipoly::Rat;
use logjet::suites::{self, CheckResult, Faults};

const SEED: u64 = suites::DEFAULT_SEED;

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_check(r: &CheckResult, min: u32) -> Outcome {
    let mut detail = format!("{}/{} exact", r.passed, r.total);
    if let Some(f) = r.failures.first() {
        detail.push_str(&format!("; first failure {f}"));
    }
    Outcome { pass: r.ok() && r.total >= min, detail }
}

fn criterion(id: u32, title: &str, limit: Option<Duration>, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = run();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let pass = out.pass && in_time;
    let budget = limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs()));
    println!(
        "{} criterion {id:>2}: {title}: {} in {:.2}s{budget}",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64()
    );
    pass
}

fn bound_arithmetic() -> Outcome {
    let mut notes = Vec::new();
    let p = params_for(2).unwrap();
    let params_ok = (p.k, p.delta, p.k_prime) == (3, 11, 6);
    notes.push(format!("params(2) = ({}, {}, {})", p.k, p.delta, p.k_prime));
    let bound_ok = kobayashi_bound(2).unwrap().to_string() == "248832";
    let basic_ok = (2..=30).all(|n| basic_inequality(n).unwrap());
    let audit_ok = (2..=20).all(|n| dimension_audit(n).unwrap().passes());
    let mut sweep_failures = 0;
    for n in [2, 3] {
        for mode in [Mode::Kobayashi, Mode::Smt] {
            sweep_failures += threshold_sweep(n, mode, &threshold(n, mode).unwrap(), 500).unwrap().len();
        }
    }
    let ratio_ok = [2, 3].iter().all(|&n| smt_ratio(n, &kobayashi_bound(n).unwrap()).unwrap() < Rat::one());
    let (mut cases, mut orbifold_failures) = (0u64, 0u64);
    for k in 1..=4 {
        for alpha in orbifold_profiles(k, 12) {
            for m in 1..=12 {
                cases += 1;
                if !orbifold_ceiling_check(&alpha, m) {
                    orbifold_failures += 1;
                }
            }
        }
    }
    notes.push(format!("bound(2) ok {bound_ok}, basic 2..30 {basic_ok}, audit 2..20 {audit_ok}"));
    notes.push(format!("sweep failures {sweep_failures}, smt ratio < 1 {ratio_ok}"));
    notes.push(format!("orbifold {}/{cases}", cases - orbifold_failures));
    Outcome {
        pass: params_ok && bound_ok && basic_ok && audit_ok && sweep_failures == 0 && ratio_ok && orbifold_failures == 0,
        detail: notes.join(", "),
    }
}

fn negative_controls() -> Outcome {
    let corrupted = Command::new(env!("CARGO_BIN_EXE_logjet"))
        .args(["verify", "--suite", "logconn", "--seed", &SEED.to_string(), "--size", "medium", "--corrupt-nabla"])
        .output()
        .expect("binary runs");
    let corrupted_exit = corrupted.status.code();
    let perturbed = suites::fermat_system(SEED, 50, Faults { corrupt_nabla: false, perturb_graph: true });
    let perturbed_cli = Command::new(env!("CARGO_BIN_EXE_logjet"))
        .args(["fermat", concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/example_family.toml"), "--checks", "system"])
        .arg("--perturb-graph")
        .output()
        .expect("binary runs")
        .status
        .code();
    let d2 = suites::non_invariant_detected(SEED, 200);
    Outcome {
        pass: corrupted_exit == Some(1) && perturbed.passed == 0 && perturbed_cli == Some(1) && d2.ok(),
        detail: format!(
            "corrupted nabla exit {corrupted_exit:?}, perturbed graph caught {}/{} (cli exit {perturbed_cli:?}), d2 z1 flagged {}/{}",
            perturbed.total - perturbed.passed,
            perturbed.total,
            d2.passed,
            d2.total
        ),
    }
}

#[test]
fn acceptance() {
    let s = |secs| Some(Duration::from_secs(secs));
    let results = [
        criterion(1, "tautological vanishing", s(30), || from_check(&suites::tautological_vanishing(SEED, 200, Faults::default()), 200)),
        criterion(2, "Leibniz identity", s(30), || from_check(&suites::leibniz(SEED, 200), 200)),
        criterion(3, "non-log lemma", s(60), || from_check(&suites::non_log_lemma(SEED, 100), 100)),
        criterion(4, "Wronskian reparametrization covariance", None, || {
            from_check(&suites::wronskian_covariance(SEED, 100), 100)
        }),
        criterion(5, "tower chart identity", None, || from_check(&suites::chart_identity(SEED, 50), 17_000)),
        criterion(6, "factorization and tautological system", s(300), || {
            from_check(&suites::fermat_system(SEED, 50, Faults::default()), 50)
        }),
        criterion(7, "Plücker factorization and Cramer identity", None, || {
            from_check(&suites::plucker_cramer(SEED, 20), 20)
        }),
        criterion(8, "rank claim", None, || from_check(&suites::rank_claim(SEED, 10), 10)),
        criterion(9, "bound arithmetic", s(120), bound_arithmetic),
        criterion(10, "negative controls", None, negative_controls),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria pass", results.len());
    assert_eq!(passed, results.len());
}
