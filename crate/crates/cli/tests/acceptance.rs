//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each, and
//! exits nonzero if any fails.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use renorm_cli::{fit_convergence_rate, run_convergence_sweep, SweepConfig};
use renorm_core::{
    class_multiplicity, coarse_grain, enumerate_level, expm_2x2, expm_limit, omega_image,
    schrodinger_residual, successors, template_binomial, template_bruteforce, template_closedform,
    template_recurrence, Algorithm, Error, GaussianInt, Matrix2c, ModelConfig, QubitTerm, Word,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn cfg(k: u32) -> ModelConfig {
    ModelConfig::with_default_init(k).unwrap()
}

/// Independent oracle: nested enumeration of every appended suffix with
/// machine-integer complex accumulation. Shares no code with the library.
fn oracle_template(k: u32, level: u32) -> ((i64, i64), (i64, i64), u64) {
    let base = u64::from(k) + 1;
    let mut sums = [(0i64, 0i64); 2];
    let mut words = 0;
    for n in 0..base.pow(level) {
        let mut digits = n;
        let mut marks = 0u32;
        for _ in 0..level {
            if digits % base == u64::from(k) {
                marks += 1;
            }
            digits /= base;
        }
        // (-i)^marks
        let amp = [(1, 0), (0, -1), (-1, 0), (0, 1)][(marks % 4) as usize];
        let slot = &mut sums[(marks % 2) as usize];
        slot.0 += amp.0;
        slot.1 += amp.1;
        words += 1;
    }
    (sums[0], sums[1], words)
}

fn same(z: &GaussianInt, (re, im): (i64, i64)) -> bool {
    *z == GaussianInt::new(re, im)
}

fn ac1_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for k in 1..=4u32 {
        let c = cfg(k);
        for level in 0..=6u64 {
            let brute = template_bruteforce(&c, level).map_err(|e| e.to_string())?;
            let rec = template_recurrence(k, level, QubitTerm::ZERO);
            let closed = template_closedform(k, level, QubitTerm::ZERO);
            let binom = template_binomial(k, level, QubitTerm::ZERO).map_err(|e| e.to_string())?;
            ensure(brute == rec && rec == closed && closed == binom, || {
                format!("mismatch at K={k} k={level}: {brute} / {rec} / {closed} / {binom}")
            })?;
            let (c0, c1, _) = oracle_template(k, level as u32);
            ensure(same(brute.c0(), c0) && same(brute.c1(), c1), || {
                format!("oracle disagrees at K={k} k={level}")
            })?;
            cases += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    // four routes, pairwise-equal, per case
    ensure(cases * 4 >= 112, || format!("only {cases} cases"))?;
    Ok(format!(
        "{cases} (K,k) cases x 4 algorithms, {:?}",
        start.elapsed()
    ))
}

fn ac2_norm_identity() -> Outcome {
    let start = Instant::now();
    for k in [2u32, 10, 50] {
        let base = BigInt::from(k * k + 1);
        for level in 0..=100u64 {
            let t = template_closedform(k, level, QubitTerm::ZERO);
            ensure(t.norm_sqr() == base.pow(level as u32), || {
                format!("norm identity fails at K={k} k={level}")
            })?;
        }
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("303 cases exact, {:?}", start.elapsed()))
}

fn ac3_fixed_points() -> Outcome {
    for (k, expect_c0, expect_c1, words) in
        [(2u32, (3, 0), (0, -4), 9u64), (3, (8, 0), (0, -6), 16)]
    {
        let (c0, c1, n) = oracle_template(k, 2);
        ensure(n == words && c0 == expect_c0 && c1 == expect_c1, || {
            format!("oracle enumeration at K={k} gave {c0:?}, {c1:?} over {n} words")
        })?;
        let level = enumerate_level(&cfg(k), 2).map_err(|e| e.to_string())?;
        ensure(level.len() as u64 == words, || "level size".into())?;
        let brute = template_bruteforce(&cfg(k), 2).map_err(|e| e.to_string())?;
        let closed = template_closedform(k, 2, QubitTerm::ZERO);
        ensure(
            same(brute.c0(), expect_c0) && same(brute.c1(), expect_c1),
            || format!("bruteforce at K={k}: {brute}"),
        )?;
        ensure(closed == brute, || {
            format!("closed form at K={k}: {closed}")
        })?;
    }
    Ok("T_2(K=2) = (3, -4i), T_2(K=3) = (8, -6i)".into())
}

fn ac4_convergence() -> Outcome {
    let start = Instant::now();
    let sweep = SweepConfig::new(
        vec![1.0],
        vec![25, 50, 100, 200, 400],
        Algorithm::ClosedForm,
    )
    .map_err(|e| e.to_string())?;
    let records = run_convergence_sweep(&sweep).map_err(|e| e.to_string())?;
    let slope = fit_convergence_rate(&records).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(
        records.windows(2).all(|w| w[1].err_l2 < w[0].err_l2),
        || {
            format!(
                "err_l2 not strictly decreasing: {:?}",
                records.iter().map(|r| r.err_l2).collect::<Vec<_>>()
            )
        },
    )?;
    ensure((-1.2..=-0.8).contains(&slope), || format!("slope {slope}"))?;
    let last = records.last().unwrap().err_l2;
    ensure(last < 0.01, || format!("err_l2 at K=400 is {last}"))?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "slope {slope:.4}, err(K=400) = {last:.3e}, {elapsed:?}"
    ))
}

fn sorted(mut v: Vec<QubitTerm>) -> Vec<QubitTerm> {
    v.sort();
    v
}

fn ac5_commuting_square() -> Outcome {
    let start = Instant::now();
    let mut checked = 0u64;
    for k in 1..=3u32 {
        let c = cfg(k);
        let alphabet = u64::from(k) + 1;
        for len in 1..=4u32 {
            for n in 0..alphabet.pow(len) {
                let indices: Vec<u32> = (0..len)
                    .map(|p| (n / alphabet.pow(len - 1 - p) % alphabet) as u32)
                    .collect();
                let w = Word::from_indices(&indices, k).map_err(|e| e.to_string())?;
                let image: Vec<QubitTerm> = successors(&w, &c)
                    .iter()
                    .map(|s| coarse_grain(s, k))
                    .collect();
                let rules = omega_image(&coarse_grain(&w, k), k);
                ensure(sorted(image) == sorted(rules), || {
                    format!("square fails at {w}, K={k}")
                })?;
                checked += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("{checked} words, {:?}", start.elapsed()))
}

fn ac6_expm_limit() -> Outcome {
    let m = Matrix2c::pauli_x().scale(Complex64::new(0.0, -1.0));
    let exact = expm_2x2(&m);
    let errs: Vec<f64> = [1_000u64, 2_000, 4_000, 8_000]
        .iter()
        .map(|&n| expm_limit(&m, n).max_abs_diff(&exact))
        .collect();
    let ratios: Vec<f64> = errs.windows(2).map(|w| w[1] / w[0]).collect();
    ensure(ratios.iter().all(|r| (0.4..=0.6).contains(r)), || {
        format!("ratios {ratios:?}")
    })?;
    Ok(format!(
        "ratios {:?}",
        ratios.iter().map(|r| format!("{r:.4}")).collect::<Vec<_>>()
    ))
}

fn ac7_residual() -> Outcome {
    let mut ratios = Vec::new();
    for t in [0.0, 0.7, PI] {
        let r = schrodinger_residual(t, 1e-2) / schrodinger_residual(t, 2.5e-3);
        ensure((8.0..=32.0).contains(&r), || format!("t={t}: ratio {r}"))?;
        ratios.push(format!("{r:.3}"));
    }
    Ok(format!("ratios {ratios:?}"))
}

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_renorm"))
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(bin())
        .args(args)
        .output()
        .expect("spawn renorm");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn ac8_cli_contract() -> Outcome {
    let dir = std::env::temp_dir().join(format!("renorm-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let csv_path = dir.join("out.csv");
    let csv = csv_path.to_str().unwrap();

    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["graph", "--K", "2", "--depth", "3"], 0),
        (
            vec!["graph", "--K", "2", "--depth", "3", "--renormalized"],
            0,
        ),
        (
            vec!["template", "--K", "2", "--k", "2", "--algo", "closedform"],
            0,
        ),
        (vec!["wave", "--t", "0"], 0),
        (
            vec![
                "converge",
                "--t-list",
                "1",
                "--K-list",
                "25,50,100",
                "--algo",
                "closedform",
                "--out",
                csv,
            ],
            0,
        ),
        (vec!["expm-check", "--t", "1", "--n-list", "1000,2000"], 0),
        (vec!["template", "--K", "2", "--k", "2", "--nope"], 1),
        (
            vec![
                "template",
                "--K",
                "100",
                "--k",
                "100000",
                "--algo",
                "bruteforce",
            ],
            2,
        ),
        (
            vec![
                "converge",
                "--t-list",
                "1",
                "--K-list",
                "2,3,4",
                "--out",
                "/nonexistent-dir/o.csv",
            ],
            3,
        ),
    ];
    for (args, code) in &cases {
        let (first_code, first) = cli(args);
        ensure(first_code == *code, || {
            format!("{args:?} exited {first_code}, expected {code}")
        })?;
        let (_, second) = cli(args);
        ensure(first == second, || {
            format!("{args:?} output not byte-stable")
        })?;
    }

    let (_, tpl) = cli(&["template", "--K", "2", "--k", "2", "--algo", "closedform"]);
    ensure(
        tpl == b"{\"K\":2,\"k\":2,\"c0\":[\"3\",\"0\"],\"c1\":[\"0\",\"-4\"]}\n",
        || format!("template output {:?}", String::from_utf8_lossy(&tpl)),
    )?;
    let (_, wave) = cli(&["wave", "--t", "0"]);
    ensure(wave == b"{\"t\":0,\"c0\":[1,0],\"c1\":[0,0]}\n", || {
        format!("wave output {:?}", String::from_utf8_lossy(&wave))
    })?;

    let text = std::fs::read_to_string(&csv_path).map_err(|e| e.to_string())?;
    let first_run = text.clone();
    cli(&cases[4].0);
    let second_run = std::fs::read_to_string(&csv_path).map_err(|e| e.to_string())?;
    ensure(first_run == second_run, || "CSV not byte-stable".into())?;
    let lines: Vec<&str> = text.lines().collect();
    ensure(
        lines.first() == Some(&"K,t,k,err_l2,norm_defect,algo"),
        || format!("header {:?}", lines.first()),
    )?;
    ensure(lines.len() == 4, || format!("{} CSV lines", lines.len()))?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!(
        "{} invocations, exit codes and bytes stable",
        cases.len()
    ))
}

fn ac9_performance() -> Outcome {
    let start = Instant::now();
    let t = template_closedform(100, 100_000, QubitTerm::ZERO);
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    ensure(t.c0().re().bits() > 600_000, || {
        "unexpectedly small result".into()
    })?;
    let refusal = template_bruteforce(&cfg(100), 100_000);
    ensure(matches!(refusal, Err(Error::CapExceeded { .. })), || {
        format!("brute force did not refuse: {:?}", refusal.map(|_| ()))
    })?;
    // the multiplicity route is exact too but linear in k; spot-check one class
    let m1 = class_multiplicity(100, 100_000, 1).map_err(|e| e.to_string())?;
    ensure(
        m1 == num_bigint::BigUint::from(100_000u32) * num_bigint::BigUint::from(100u32).pow(99_999),
        || "class multiplicity".into(),
    )?;
    Ok(format!(
        "closed form K=100 k=1e5 in {elapsed:?} ({} bits); bruteforce refused",
        t.c0().re().bits()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1 exact oracle equivalence", ac1_oracle_equivalence),
        ("AC2 norm identity", ac2_norm_identity),
        ("AC3 derived fixed points", ac3_fixed_points),
        ("AC4 convergence to exact solution", ac4_convergence),
        ("AC5 renormalization commuting square", ac5_commuting_square),
        ("AC6 matrix-exponential limit", ac6_expm_limit),
        ("AC7 Schrodinger residual", ac7_residual),
        ("AC8 CLI contract", ac8_cli_contract),
        ("AC9 performance contrast", ac9_performance),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
