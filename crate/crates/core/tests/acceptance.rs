//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints one PASS/FAIL line; the process fails if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use delegation_lobbying::cli::commands::{cmd_hypotheses, VerifyReport};
use delegation_lobbying::cli::config::RunConfig;
use delegation_lobbying::legislative::{
    expected_utility_congress, expected_utility_group, optimal_choice, optimal_discretion_foc,
    optimal_legislation, BranchLabel,
};
use delegation_lobbying::model::{
    best_response_effort, enacted_outcome, equilibrium_effort, outcome_tilde, unconstrained_proposal,
    LegislativeChoice, ModelParams, Param, Regime, RegimeInterpretation,
};
use delegation_lobbying::oracle::{
    numeric_best_effort, numeric_best_proposal, numeric_expected_utilities, numeric_optimal_legislation,
    simulate_paths, SearchBox,
};
use delegation_lobbying::statics::{
    default_axis, discretion_surface, figure_panels, sample_grid, sample_params, GridRegion, Verdict,
};

const MODE: RegimeInterpretation = RegimeInterpretation::FinalPolicyBand;

const STAGE_TOL: f64 = 1e-6;
const STAGE_POINTS: usize = 500;
const STAGE_BUDGET: Duration = Duration::from_secs(10);

const INVARIANCE_TOL: f64 = 1e-12;
const INVARIANCE_POINTS: usize = 40;
const INVARIANCE_DRAWS: usize = 10_000;

const CAPTURE_POINTS: usize = 1_000;

const EU_TOL: f64 = 1e-9;
const EU_DRAWS: usize = 1_000;

const STATUS_QUO_TOL: f64 = 1e-4;
const LEGISLATION_POINTS: usize = 200;
const DISCRETION_TOL: f64 = 1e-3;
const LAMBDA_ONE_POINTS: usize = 50;
const BENCHMARK_D: f64 = 0.64645;

const HYPOTHESES_GRID: usize = 500;
const NUMERIC_VIOLATION_RATE: f64 = 0.01;

const SURFACE_STEPS: usize = 50;
const SURFACE_BUDGET: Duration = Duration::from_secs(300);

const PRINTED_LAMBDA0_D: f64 = 0.5;
const ORACLE_LAMBDA0_D: f64 = 0.6464;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

fn stage_game() -> Outcome {
    let mut rng = rng(1);
    let start = Instant::now();
    let (mut worst_effort, mut worst_proposal) = (0.0f64, 0.0f64);
    for _ in 0..STAGE_POINTS {
        let params = sample_params(&mut rng);
        let r = params.shock_bound;
        let (p_a, w) = (rng.random_range(-3.0..=3.0), rng.random_range(-r..=r));
        worst_effort =
            worst_effort.max((best_response_effort(p_a, w, &params) - numeric_best_effort(p_a, w, &params)).abs());
        let w = rng.random_range(-r..=r);
        worst_proposal = worst_proposal
            .max((unconstrained_proposal(w, &params) - numeric_best_proposal(w, &params, None, MODE)).abs());
    }
    let elapsed = start.elapsed();
    outcome(
        worst_effort <= STAGE_TOL && worst_proposal <= STAGE_TOL && elapsed < STAGE_BUDGET,
        format!(
            "{STAGE_POINTS} points: worst effort {worst_effort:.2e}, worst proposal {worst_proposal:.2e}, {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn outcome_invariance() -> Outcome {
    let mut rng = rng(2);
    let (mut worst, mut interior_draws, mut points) = (0.0f64, 0usize, 0usize);
    while points < INVARIANCE_POINTS {
        let params = sample_params(&mut rng);
        let choice = optimal_legislation(&params).choice;
        let sample = simulate_paths(&params, &choice, rng.random(), INVARIANCE_DRAWS, MODE).unwrap();
        let x = outcome_tilde(&params);
        let interior: Vec<f64> = sample
            .outcomes
            .iter()
            .filter(|o| o.regime == Regime::Interior)
            .map(|o| o.outcome)
            .collect();
        if interior.is_empty() {
            continue;
        }
        points += 1;
        interior_draws += interior.len();
        worst = interior.iter().fold(worst, |m, o| m.max((o - x).abs()));
    }
    outcome(
        worst <= INVARIANCE_TOL,
        format!("{points} points x {INVARIANCE_DRAWS} draws ({interior_draws} interior): worst {worst:.2e}"),
    )
}

fn capture() -> Outcome {
    let grid = sample_grid(3, CAPTURE_POINTS, GridRegion::Capture);
    let mut rng = rng(3);
    let mut extra: Vec<ModelParams> = (0..CAPTURE_POINTS).map(|_| sample_params(&mut rng)).collect();
    extra.retain(|p| p.is_captured());
    let all: Vec<ModelParams> = grid.iter().map(|g| g.params).chain(extra).collect();
    let mut bad = 0;
    for p in &all {
        assert!(p.beta >= 2.0 * p.alpha * p.agency_ideal);
        let w = rng.random_range(-p.shock_bound..=p.shock_bound);
        let stage = enacted_outcome(w, &LegislativeChoice::new(0.0, 2.0 * p.shock_bound).unwrap(), p, MODE).unwrap();
        if equilibrium_effort(p) != 0.0 || outcome_tilde(p) != 0.0 || stage.effort != 0.0 {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{} captured points, {bad} with nonzero effort or outcome", all.len()))
}

fn expected_utilities() -> Outcome {
    let mut rng = rng(4);
    let mut worst = 0.0f64;
    for _ in 0..EU_DRAWS {
        let params = sample_params(&mut rng);
        let r = params.shock_bound;
        let choice = LegislativeChoice::new(rng.random_range(-r..=r), rng.random_range(0.0..=r)).unwrap();
        let numeric = numeric_expected_utilities(&choice, &params, MODE);
        worst = worst
            .max((expected_utility_congress(&choice, &params) - numeric.eu_congress_policy).abs())
            .max((expected_utility_group(&choice, &params) - numeric.eu_group).abs());
    }
    outcome(worst <= EU_TOL, format!("{EU_DRAWS} draws: worst {worst:.2e}"))
}

/// Parameter points whose closed-form statute keeps both thresholds strictly
/// inside the support, with the numeric argmax over the default box.
fn interior_optima(seed: u64, count: usize) -> Vec<(ModelParams, LegislativeChoice, LegislativeChoice)> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let params = sample_params(&mut rng);
        let (closed, interior, branch) = optimal_choice(&params);
        if !(interior && branch == BranchLabel::ClosedFormFoc) {
            continue;
        }
        let found = numeric_optimal_legislation(&params, &SearchBox::for_params(&params), MODE).choice;
        out.push((params, closed, found));
    }
    out
}

fn status_quo(sample: &[(ModelParams, LegislativeChoice, LegislativeChoice)]) -> Outcome {
    let worst = sample
        .iter()
        .map(|(p, _, found)| (found.status_quo - p.lambda_weight * p.congress_ideal).abs())
        .fold(0.0, f64::max);
    outcome(worst <= STATUS_QUO_TOL, format!("{} interior optima: worst |p0 - lambda x_C| {worst:.2e}", sample.len()))
}

fn discretion(sample: &[(ModelParams, LegislativeChoice, LegislativeChoice)]) -> Outcome {
    let worst_foc = sample
        .iter()
        .map(|(p, _, found)| (found.discretion - optimal_discretion_foc(p)).abs())
        .fold(0.0, f64::max);

    // lambda = 1 on non-captured points: d = R - |x_A - x_C - beta/(2 alpha)|.
    let mut rng = rng(6);
    let (mut worst_branch, mut n) = (0.0f64, 0);
    while n < LAMBDA_ONE_POINTS {
        let params = sample_params(&mut rng).with(Param::Lambda, 1.0);
        if !params.is_interior() {
            continue;
        }
        let (_, interior, branch) = optimal_choice(&params);
        if !(interior && branch == BranchLabel::ClosedFormFoc) {
            continue;
        }
        let printed = params.shock_bound - (params.agency_ideal - params.congress_ideal - params.lobbying_pressure()).abs();
        let found = numeric_optimal_legislation(&params, &SearchBox::for_params(&params), MODE).choice;
        worst_branch = worst_branch
            .max((found.discretion - printed).abs())
            .max((optimal_discretion_foc(&params) - printed).abs());
        n += 1;
    }

    let benchmark = ModelParams::new(1.0, 0.0, 0.0, 1.0, 0.5, 0.25).unwrap();
    let numeric = numeric_optimal_legislation(&benchmark, &SearchBox::for_params(&benchmark), MODE)
        .choice
        .discretion;
    let reduced = |d: f64| -(1.0 - d).powi(3) / 3.0 - 0.125 * d;
    let hand_optimum = 1.0 - 0.125f64.sqrt();
    let hand_ok = reduced(hand_optimum) >= reduced(hand_optimum - 1e-4) && reduced(hand_optimum) >= reduced(hand_optimum + 1e-4);
    let bench_dev = (numeric - BENCHMARK_D).abs().max((optimal_discretion_foc(&benchmark) - BENCHMARK_D).abs());

    outcome(
        worst_foc <= DISCRETION_TOL && worst_branch <= DISCRETION_TOL && bench_dev <= DISCRETION_TOL && hand_ok,
        format!(
            "FOC worst {worst_foc:.2e} on {} points; lambda = 1 branch worst {worst_branch:.2e} on {n} points; benchmark d* = {numeric:.6}",
            sample.len()
        ),
    )
}

fn hypotheses() -> Outcome {
    let (config, _) = RunConfig::from_entries(&[]).unwrap();
    let report = cmd_hypotheses(&config, HYPOTHESES_GRID, GridRegion::All).unwrap();
    let mut problems = Vec::new();
    for r in &report.reports {
        let h = &r.hypothesis;
        let allowed = if h.is_numeric() {
            (NUMERIC_VIOLATION_RATE * r.applicable as f64).floor() as usize
        } else {
            0
        };
        if r.verdict != Verdict::Pass || r.violations.len() > allowed || r.satisfied + r.violations.len() != r.applicable {
            problems.push(format!("{:?} `{}`: {:?}", h.id, h.clause, r.verdict));
        }
    }
    let logged: usize = report.reports.iter().map(|r| r.violations.len()).sum();
    outcome(
        problems.is_empty() && !report.failed,
        if problems.is_empty() {
            format!("{} clauses pass on {HYPOTHESES_GRID} points; {logged} logged violations", report.reports.len())
        } else {
            problems.join("; ")
        },
    )
}

fn surfaces() -> Outcome {
    let start = Instant::now();
    let axis = default_axis();
    assert_eq!(axis.steps, SURFACE_STEPS);
    let half = 0.5 * (axis.lo + axis.hi);
    let mut shapes_ok = true;
    let mut panel_a_min = (f64::NAN, f64::NAN, f64::NAN);
    for (i, (_, base)) in figure_panels().iter().enumerate() {
        let s = discretion_surface(base, axis, axis);
        shapes_ok &= s.values.len() == SURFACE_STEPS
            && s.values.iter().all(|row| row.len() == SURFACE_STEPS && row.iter().all(|v| v.is_finite()));
        if i == 0 {
            panel_a_min = s.argmin();
        }
    }
    let elapsed = start.elapsed();
    let (x_a, x_c, v) = panel_a_min;
    outcome(
        shapes_ok && elapsed < SURFACE_BUDGET && x_a <= half && x_c <= half,
        format!(
            "3 panels of {SURFACE_STEPS}x{SURFACE_STEPS} in {:.1}s; panel (a) minimum {v:.3e} at x_A = {x_a}, x_C = {x_c}",
            elapsed.as_secs_f64()
        ),
    )
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_delegation-lobbying"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn discrepancy_report() -> Outcome {
    let default = binary(&["verify"]);
    let strict = binary(&["verify", "--strict"]);
    let report: VerifyReport = match serde_json::from_slice(&default.stdout) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("unreadable verify output: {e}")),
    };
    let row = report.discrepancies.iter().find(|d| d.name == "extreme_lambda0_discretion");
    let Some(row) = row else {
        return outcome(false, "no lambda = 0 discrepancy row".into());
    };
    let values_ok = row.params.lambda_weight == 0.0
        && row.params.agency_ideal == 0.25
        && row.printed_value == PRINTED_LAMBDA0_D
        && (row.oracle_value - ORACLE_LAMBDA0_D).abs() <= DISCRETION_TOL
        && row.flagged;
    let codes = (default.status.code(), strict.status.code());
    outcome(
        values_ok && codes.0 == Some(0) && codes.1.is_some_and(|c| c != 0),
        format!(
            "printed {} vs oracle {:.6}; exit status default {:?}, strict {:?}",
            row.printed_value, row.oracle_value, codes.0, codes.1
        ),
    )
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 9] = [
        &["solve"],
        &["--format", "csv", "solve"],
        &["--mode", "proposal-band", "--set", "coarse_points=41", "solve"],
        &["--set", "draws=500", "simulate"],
        &["--format", "csv", "simulate", "--omega", "-0.3"],
        &["--format", "csv", "sweep", "--param", "beta", "--from", "0", "--to", "3", "--steps", "7"],
        &["sweep", "--surface", "--param", "agency_ideal", "--from", "0.1", "--to", "1", "--steps", "5",
          "--param2", "congress_ideal", "--from2", "0.1", "--to2", "1", "--steps2", "5"],
        &["--format", "csv", "verify", "--sample", "20"],
        &["--format", "csv", "hypotheses", "--grid", "100"],
    ];
    let mut differing = Vec::new();
    for args in runs {
        let (a, b) = (binary(args), binary(args));
        if a.stdout != b.stdout || a.status.code() != b.status.code() || a.stdout.is_empty() {
            differing.push(args.join(" "));
        }
    }
    outcome(
        differing.is_empty(),
        if differing.is_empty() {
            format!("{} invocations byte-identical across two runs", runs.len())
        } else {
            format!("differing: {}", differing.join(" | "))
        },
    )
}

fn main() -> ExitCode {
    let legislation = interior_optima(5, LEGISLATION_POINTS);
    let criteria: [Criterion; 10] = [
        ("stage-game closed forms", Box::new(stage_game)),
        ("interior outcome invariance", Box::new(outcome_invariance)),
        ("capture threshold", Box::new(capture)),
        ("expected-utility identity", Box::new(expected_utilities)),
        ("optimal status quo", Box::new(|| status_quo(&legislation))),
        ("optimal discretion", Box::new(|| discretion(&legislation))),
        ("comparative-statics suite", Box::new(hypotheses)),
        ("discretion surfaces", Box::new(surfaces)),
        ("discrepancy reporting", Box::new(discrepancy_report)),
        ("determinism", Box::new(determinism)),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        all &= o.pass;
        println!("criterion {:>2} {}: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
