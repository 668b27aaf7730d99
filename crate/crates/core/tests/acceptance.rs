//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use strikesim::equilibrium::{fixed_point_iterate, solve_equilibrium};
use strikesim::io::{self, dataset};
use strikesim::model::{total_rate, Model, ModelParameters, SimulationConfig, State};
use strikesim::scenario::{
    apply_mask, derived_eigenvalues, eigenvalues_match, expected_eigenvalues, BuiltinScenario,
    EIGENVALUE_MATCH_TOL,
};
use strikesim::simulator::{restricted_analytic, simulate, RestrictedSolution};
use strikesim::stability::{self, jacobian, jacobian_fd, Verdict};

const SEED: u64 = 0x5EED;
const DRAWS: usize = 1000;
const THEOREMS: [BuiltinScenario; 3] = [
    BuiltinScenario::Theorem21,
    BuiltinScenario::Theorem22,
    BuiltinScenario::Theorem23,
];

/// Every rate uniform on [0, 1], `d` uniform on [0.01, 1].
fn draw(rng: &mut ChaCha8Rng) -> ModelParameters {
    let mut v = [0.0; 13];
    for x in v.iter_mut() {
        *x = rng.gen_range(0.0..=1.0);
    }
    v[9] = rng.gen_range(0.01..=1.0);
    ModelParameters::from_array(v)
}

fn draws(stream: u64) -> Vec<ModelParameters> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    rng.set_stream(stream);
    (0..DRAWS).map(|_| draw(&mut rng)).collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

// 1. Every strike scenario is locally asymptotically stable.
fn theorem_suite() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for (i, b) in THEOREMS.into_iter().enumerate() {
        let mut failures = 0;
        for p in draws(1 + i as u64) {
            let masked = apply_mask(&p, &b.mask()).unwrap();
            let r = stability::analyze(&masked).unwrap();
            if r.verdict != Verdict::AsymptoticallyStable || !r.routh_hurwitz_stable {
                failures += 1;
            }
        }
        pass &= failures == 0;
        details.push(format!("{b}: {failures}/{DRAWS} failures"));
    }
    outcome(pass, details.join("; "))
}

// 2. Computed eigenvalues against the stated closed forms.
fn closed_forms() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for (i, b) in THEOREMS.into_iter().enumerate() {
        let mut stated_misses = 0;
        let mut derived_misses = 0;
        let mut checked = 0;
        for mut p in draws(1 + i as u64) {
            if b == BuiltinScenario::Theorem21 {
                // Stated list applies where the written and derived Jacobians agree.
                p.alpha_sp = 0.0;
            }
            checked += 1;
            let masked = apply_mask(&p, &b.mask()).unwrap();
            let eig = stability::analyze(&masked).unwrap().eigenvalues;
            let stated = expected_eigenvalues(b.name(), &p).unwrap();
            if !eigenvalues_match(&eig, &stated, EIGENVALUE_MATCH_TOL) {
                stated_misses += 1;
            }
            let derived = derived_eigenvalues(b.name(), &p).unwrap();
            if !eigenvalues_match(&eig, &derived, EIGENVALUE_MATCH_TOL) {
                derived_misses += 1;
            }
        }
        pass &= stated_misses == 0;
        let subcase = if b == BuiltinScenario::Theorem21 {
            " (alpha_sp = 0)"
        } else {
            ""
        };
        details.push(format!(
            "{b}{subcase}: stated forms miss {stated_misses}/{checked}, derived forms miss {derived_misses}/{checked}"
        ));
    }
    // The THEOREM_2_3 stated list omits alpha_fp; report the sub-case where it applies.
    let mut sub_misses = 0;
    for p in draws(3) {
        let p = ModelParameters { alpha_fp: 0.0, ..p };
        let masked = apply_mask(&p, &BuiltinScenario::Theorem23.mask()).unwrap();
        let eig = stability::analyze(&masked).unwrap().eigenvalues;
        if !eigenvalues_match(
            &eig,
            &expected_eigenvalues("THEOREM_2_3", &p).unwrap(),
            EIGENVALUE_MATCH_TOL,
        ) {
            sub_misses += 1;
        }
    }
    details.push(format!(
        "THEOREM_2_3 (alpha_fp = 0): stated forms miss {sub_misses}/{DRAWS}"
    ));
    outcome(pass, details.join("; "))
}

// 3. Analytic Jacobian against central differences.
fn jacobian_oracle() -> Outcome {
    let mut worst = 0.0f64;
    for p in draws(10) {
        let an = jacobian(&p).unwrap().0;
        let fd = jacobian_fd(&p, &State::ZERO, 1e-6).unwrap();
        for i in 0..3 {
            for k in 0..3 {
                let err = if an[i][k] == 0.0 {
                    if fd[i][k] == 0.0 {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                } else {
                    ((fd[i][k] - an[i][k]) / an[i][k]).abs()
                };
                worst = worst.max(err);
            }
        }
    }
    outcome(
        worst <= 1e-6,
        format!("max relative error {worst:.3e} (limit 1e-6)"),
    )
}

// 4. Direct solve, fixed-point oracle and long-run simulation agree.
fn equilibrium_agreement() -> Outcome {
    let mut max_residual = 0.0f64;
    let mut max_oracle_gap = 0.0f64;
    let mut max_sim_gap = 0.0f64;
    let mut sim_failures = 0;
    let mut stable = 0;
    for p in draws(20) {
        let eq = solve_equilibrium(&p).unwrap();
        let s = eq.state.unwrap();
        max_residual = max_residual.max(eq.residual.unwrap());
        let oracle = fixed_point_iterate(&p, State::ZERO, 1e-12, 10_000_000).unwrap();
        max_oracle_gap = max_oracle_gap.max(s.distance(&oracle));

        if stability::analyze(&p).unwrap().verdict == Verdict::AsymptoticallyStable {
            stable += 1;
            let traj = simulate(&p, &SimulationConfig::new(100.0, 500.0, 0.01)).unwrap();
            let gap = traj.last().1.distance(&s);
            max_sim_gap = max_sim_gap.max(gap);
            if gap > 1e-4 {
                sim_failures += 1;
            }
        }
    }
    let pass = max_residual <= 1e-9 && max_oracle_gap <= 1e-8 && sim_failures == 0;
    outcome(
        pass,
        format!(
            "max residual {max_residual:.3e} (limit 1e-9), max oracle gap {max_oracle_gap:.3e} (limit 1e-8), \
             t=500 gap max {max_sim_gap:.3e} with {sim_failures}/{stable} stable draws over 1e-4"
        ),
    )
}

// 5. RK4 against the single-compartment closed form.
fn restricted_reproduction() -> Outcome {
    let (lambda_cap, d, u0) = (10.0, 0.1, 60.0);
    let params = apply_mask(
        &ModelParameters {
            lambda_cap_f: lambda_cap,
            d,
            ..ModelParameters::uniform(0.5)
        },
        &BuiltinScenario::MovementRestricted.mask(),
    )
    .unwrap();
    let sol = RestrictedSolution::new(lambda_cap, d, u0).unwrap();

    let max_err = |dt: f64, t_end: f64| -> f64 {
        let traj = simulate(&params, &SimulationConfig::new(u0, t_end, dt)).unwrap();
        traj.samples
            .iter()
            .map(|(t, s)| (s.u_f - restricted_analytic(&sol, *t)).abs())
            .fold(0.0, f64::max)
    };

    let err_fine = max_err(0.01, 50.0);
    let at_200 = simulate(&params, &SimulationConfig::new(u0, 200.0, 0.01))
        .unwrap()
        .last()
        .1
        .u_f;
    let tail_numeric = (at_200 - sol.asymptote).abs();
    let tail_analytic = (restricted_analytic(&sol, 200.0) - sol.asymptote).abs();
    let ratio = max_err(1.0, 50.0) / max_err(0.5, 50.0);

    let pass = err_fine <= 1e-6
        && tail_numeric < 1e-7
        && tail_analytic < 1e-7
        && (12.0..=20.0).contains(&ratio);
    outcome(
        pass,
        format!(
            "dt=0.01 max error {err_fine:.3e} (limit 1e-6); |U(200) - Λ/d| RK4 {tail_numeric:.3e}, \
             closed form {tail_analytic:.3e} (limit 1e-7); step-halving ratio {ratio:.2} (accept [12, 20])"
        ),
    )
}

// 6. Constant term of the characteristic polynomial under THEOREM_2_2.
fn constant_term_identity() -> Outcome {
    let mut worst = 0.0f64;
    for p in draws(30) {
        let m = apply_mask(&p, &BuiltinScenario::Theorem22.mask()).unwrap();
        let c0 = stability::characteristic_coefficients(&jacobian(&m).unwrap()).c0;
        let product = (m.d + m.lambda_p) * (m.d + m.alpha_sp + m.lambda_s) * (m.d + m.alpha_fs);
        worst = worst.max(((c0 - product) / product).abs());
    }
    outcome(
        worst <= 1e-12,
        format!("max relative error {worst:.3e} (limit 1e-12)"),
    )
}

// 7. Movement terms cancel in the total.
fn conservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    rng.set_stream(40);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let p = draw(&mut rng);
        let s = State::new(
            rng.gen_range(0.0..100.0),
            rng.gen_range(0.0..100.0),
            rng.gen_range(0.0..100.0),
        );
        let total = total_rate(&p, &s).unwrap();
        let sum: f64 = Model::new(p).unwrap().rhs(&s).iter().sum();
        worst = worst.max((sum - total).abs() / (1.0 + total.abs()));
    }
    outcome(
        worst <= 1e-12,
        format!("max |sum(rhs) - total| / (1 + |total|) = {worst:.3e} (limit 1e-12)"),
    )
}

// 8. Bundled strike dataset.
fn table1() -> Outcome {
    match dataset::load_table1(dataset::BUNDLED_TABLE1) {
        Ok(records) => {
            let t = dataset::totals(&records);
            outcome(
                records.len() == 12 && t.private_universities == 111 && t.strike_days == 1323,
                format!(
                    "{} records, totals {} / {}",
                    records.len(),
                    t.private_universities,
                    t.strike_days
                ),
            )
        }
        Err(e) => {
            let rows = dataset::parse_strike_records(dataset::BUNDLED_TABLE1).unwrap();
            let t = dataset::totals(&rows);
            outcome(
                false,
                format!(
                    "{e}; {} rows parsed with totals {} / {} (first eleven periods sum to {} strike days)",
                    rows.len(),
                    t.private_universities,
                    t.strike_days,
                    dataset::totals(&rows[..11]).strike_days
                ),
            )
        }
    }
}

// 9. CLI golden report and lossless trajectory CSV.
fn cli_golden() -> Outcome {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let config = golden.join("theorem_2_3.conf");
    let expected = std::fs::read(golden.join("theorem_2_3.json")).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_strikesim"))
        .args(["scenario", "--config"])
        .arg(&config)
        .args(["--name", "THEOREM_2_3", "--json"])
        .output()
        .unwrap();
    let report_ok = out.status.success() && out.stdout == expected;

    let tmp = std::env::temp_dir().join(format!("strikesim-acceptance-{}.csv", std::process::id()));
    let status = Command::new(env!("CARGO_BIN_EXE_strikesim"))
        .args(["simulate", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&tmp)
        .status()
        .unwrap();
    let cfg = io::parse_config(&std::fs::read_to_string(&config).unwrap()).unwrap();
    let traj = simulate(&cfg.params, &cfg.simulation).unwrap();
    let csv = std::fs::read_to_string(&tmp).unwrap_or_default();
    let _ = std::fs::remove_file(&tmp);
    let back = io::read_trajectory_csv(&csv).unwrap_or_default();
    let csv_ok = status.success()
        && back.len() == traj.samples.len()
        && back.iter().zip(&traj.samples).all(|(a, b)| {
            a.0.to_bits() == b.0.to_bits()
                && a.1
                    .to_array()
                    .iter()
                    .zip(b.1.to_array())
                    .all(|(x, y)| x.to_bits() == y.to_bits())
        })
        && io::write_trajectory_csv(&traj, NonZeroUsize::MIN) == csv;

    outcome(
        report_ok && csv_ok,
        format!(
            "scenario report {}; trajectory CSV ({} rows) {}",
            if report_ok {
                "matches golden byte-for-byte"
            } else {
                "differs from golden"
            },
            back.len(),
            if csv_ok {
                "round-trips bit-exactly"
            } else {
                "does not round-trip"
            }
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "1 strike scenarios are asymptotically stable",
            theorem_suite,
        ),
        ("2 eigenvalues match the stated closed forms", closed_forms),
        (
            "3 analytic Jacobian matches finite differences",
            jacobian_oracle,
        ),
        (
            "4 equilibrium solve, oracle and simulation agree",
            equilibrium_agreement,
        ),
        (
            "5 RK4 reproduces the restricted closed form",
            restricted_reproduction,
        ),
        (
            "6 constant term equals the THEOREM_2_2 product",
            constant_term_identity,
        ),
        ("7 movement terms cancel in the total rate", conservation),
        (
            "8 bundled dataset has 12 periods, totals 111 / 1323",
            table1,
        ),
        ("9 CLI golden report and CSV round-trip", cli_golden),
    ];

    let start = Instant::now();
    let mut failed = 0;
    for (name, check) in criteria {
        let t0 = Instant::now();
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "[{}] criterion {name}: {} ({:.2}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t0.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
