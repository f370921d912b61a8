//! The five subcommands as functions from configuration to typed reports.

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use super::config::{ConfigError, RunConfig};
use super::format::{label, Cell, Report, Table};
use crate::legislative::{
    discretion_from_shortfall, discretion_shortfall_sq, discretion_shortfall_sq_as_printed,
    expected_utility_congress, expected_utility_group, optimal_choice, optimal_discretion_foc,
    optimal_discretion_printed_extremes, optimal_legislation, BranchLabel,
};
use crate::model::{
    ally_ideal, best_response_effort, conflict_gap, enacted_outcome, equilibrium_effort, outcome_tilde,
    regime_thresholds, unconstrained_proposal, LegislativeChoice, ModelParams, Param, RegimeInterpretation,
    RegimeThresholds, StageOutcome, Validation,
};
use crate::oracle::{
    derive_seed, numeric_best_effort, numeric_best_proposal, numeric_expected_utilities,
    numeric_optimal_legislation, simulate_paths, SampleMean, SearchBox,
};
use crate::statics::{
    builtin_hypotheses, discretion_surface, evaluate_hypothesis, sample_grid, sample_params, AxisRange,
    ClauseKind, FdSettings, GridRegion, SignReport, Surface, Verdict,
};

// ---------------------------------------------------------------- solve

/// Everything the solver reports for one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub params: ModelParams,
    pub mode: RegimeInterpretation,
    pub outcome_tilde: f64,
    pub equilibrium_effort: f64,
    pub ally_ideal: f64,
    pub conflict_gap: f64,
    pub status_quo: f64,
    pub discretion: f64,
    pub branch_label: BranchLabel,
    pub interior: bool,
    pub omega_low: f64,
    pub omega_high: f64,
    pub eu_congress_policy: f64,
    pub eu_group: f64,
    pub joint_value: f64,
    pub contribution: f64,
    pub contribution_defined: bool,
    /// `(d - R)^2`, the quantity plotted over ideal points.
    pub discretion_gap_sq: f64,
}

const SOLVE_COLUMNS: [&str; 22] = [
    "alpha",
    "beta",
    "lambda",
    "shock_bound",
    "congress_ideal",
    "agency_ideal",
    "mode",
    "outcome_tilde",
    "equilibrium_effort",
    "ally_ideal",
    "conflict_gap",
    "status_quo",
    "discretion",
    "branch_label",
    "interior",
    "omega_low",
    "omega_high",
    "eu_congress_policy",
    "eu_group",
    "joint_value",
    "contribution",
    "discretion_gap_sq",
];

impl SolveRecord {
    fn cells(&self) -> Vec<Cell> {
        let p = &self.params;
        vec![
            p.alpha.into(),
            p.beta.into(),
            p.lambda_weight.into(),
            p.shock_bound.into(),
            p.congress_ideal.into(),
            p.agency_ideal.into(),
            self.mode.to_string().into(),
            self.outcome_tilde.into(),
            self.equilibrium_effort.into(),
            self.ally_ideal.into(),
            self.conflict_gap.into(),
            self.status_quo.into(),
            self.discretion.into(),
            label(&self.branch_label).into(),
            self.interior.into(),
            self.omega_low.into(),
            self.omega_high.into(),
            self.eu_congress_policy.into(),
            self.eu_group.into(),
            self.joint_value.into(),
            self.contribution_defined.then_some(self.contribution).into(),
            self.discretion_gap_sq.into(),
        ]
    }
}

impl Report for SolveRecord {
    fn table(&self) -> Table {
        let mut t = Table::new(SOLVE_COLUMNS);
        t.push(self.cells());
        t
    }
}

/// Shocks bounding the regime where the agency's free choice stands.
fn mode_thresholds(choice: &LegislativeChoice, params: &ModelParams, mode: RegimeInterpretation) -> RegimeThresholds {
    match mode {
        RegimeInterpretation::FinalPolicyBand => regime_thresholds(choice, params),
        RegimeInterpretation::ProposalBand => {
            let drive = (1.0 + params.alpha) / params.alpha * outcome_tilde(params);
            RegimeThresholds {
                omega_low: drive - choice.status_quo - choice.discretion,
                omega_high: drive - choice.status_quo + choice.discretion,
            }
        }
    }
}

/// Solves the legislative stage. Under the final-policy band the closed forms
/// are used (with their own numeric fallback); under the proposal band there
/// is no closed form and the numeric oracle is run on `search`.
pub fn solve(params: &ModelParams, mode: RegimeInterpretation, search: &SearchBox) -> SolveRecord {
    let (choice, interior, branch_label, welfare, contribution, defined) = match mode {
        RegimeInterpretation::FinalPolicyBand => {
            let l = optimal_legislation(params);
            let defined = params.lambda_weight < 1.0;
            (l.choice, l.interior, l.branch_label, l.welfare, l.welfare.contribution, defined)
        }
        RegimeInterpretation::ProposalBand => {
            let l = numeric_optimal_legislation(params, search, mode);
            let lam = params.lambda_weight;
            let (m, defined) = if lam >= 1.0 {
                (0.0, false)
            } else if lam == 0.0 {
                (0.0, true)
            } else {
                let policy_only = params.with(Param::Lambda, 1.0);
                let unilateral = numeric_optimal_legislation(&policy_only, search, mode).choice;
                let gain = numeric_expected_utilities(&unilateral, params, mode).eu_congress_policy
                    - l.welfare.eu_congress_policy;
                ((lam / (1.0 - lam) * gain).max(0.0), true)
            };
            (l.choice, l.interior, l.branch_label, l.welfare, m, defined)
        }
    };
    let t = mode_thresholds(&choice, params, mode);
    SolveRecord {
        params: *params,
        mode,
        outcome_tilde: outcome_tilde(params),
        equilibrium_effort: equilibrium_effort(params),
        ally_ideal: ally_ideal(params),
        conflict_gap: conflict_gap(params),
        status_quo: choice.status_quo,
        discretion: choice.discretion,
        branch_label,
        interior,
        omega_low: t.omega_low,
        omega_high: t.omega_high,
        eu_congress_policy: welfare.eu_congress_policy,
        eu_group: welfare.eu_group,
        joint_value: welfare.joint_value,
        contribution,
        contribution_defined: defined,
        discretion_gap_sq: (choice.discretion - params.shock_bound).powi(2),
    }
}

pub fn cmd_solve(config: &RunConfig) -> SolveRecord {
    solve(&config.params, config.mode, &config.search)
}

// ------------------------------------------------------------- simulate

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub outcome: SampleMean,
    pub effort: SampleMean,
    pub payoff_congress_policy: SampleMean,
    pub payoff_group: SampleMean,
    /// Expected values the sample means estimate.
    pub expected_congress_policy: f64,
    pub expected_group: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub params: ModelParams,
    pub mode: RegimeInterpretation,
    pub choice: LegislativeChoice,
    /// Seed of the shock stream (derived from the configured seed); absent
    /// for a single given shock.
    pub seed: Option<u64>,
    pub draws: usize,
    pub outcomes: Vec<StageOutcome>,
    pub summary: Option<SimulationSummary>,
}

const OUTCOME_COLUMNS: [&str; 11] = [
    "draw",
    "shock",
    "regime",
    "proposal",
    "effort",
    "enacted_policy",
    "outcome",
    "lobby_cost",
    "payoff_congress_policy",
    "payoff_group",
    "payoff_agency",
];

impl Report for SimulateReport {
    fn table(&self) -> Table {
        let mut t = Table::new(OUTCOME_COLUMNS);
        for (i, o) in self.outcomes.iter().enumerate() {
            t.push(vec![
                i.into(),
                o.shock.into(),
                label(&o.regime).into(),
                o.proposal.into(),
                o.effort.into(),
                o.enacted_policy.into(),
                o.outcome.into(),
                o.lobby_cost.into(),
                o.payoff_congress_policy.into(),
                o.payoff_group.into(),
                o.payoff_agency.into(),
            ]);
        }
        if self.summary.is_some() {
            let mean = |f: fn(&StageOutcome) -> f64| -> Cell {
                let v: Vec<f64> = self.outcomes.iter().map(f).collect();
                SampleMean::of(&v).mean.into()
            };
            t.push(vec![
                "mean".into(),
                mean(|o| o.shock),
                Cell::Empty,
                mean(|o| o.proposal),
                mean(|o| o.effort),
                mean(|o| o.enacted_policy),
                mean(|o| o.outcome),
                mean(|o| o.lobby_cost),
                mean(|o| o.payoff_congress_policy),
                mean(|o| o.payoff_group),
                mean(|o| o.payoff_agency),
            ]);
        }
        t
    }
}

/// Plays the continuation game at the solved legislation, either for one
/// given shock or for `config.draws` simulated shocks.
pub fn cmd_simulate(config: &RunConfig, omega: Option<f64>) -> Result<SimulateReport, ConfigError> {
    let params = &config.params;
    let solved = cmd_solve(config);
    let choice = LegislativeChoice {
        status_quo: solved.status_quo,
        discretion: solved.discretion,
    };
    if let Some(w) = omega {
        let outcome = enacted_outcome(w, &choice, params, config.mode)?;
        return Ok(SimulateReport {
            params: *params,
            mode: config.mode,
            choice,
            seed: None,
            draws: 1,
            outcomes: vec![outcome],
            summary: None,
        });
    }
    let seed = derive_seed(config.seed, "simulate");
    let sample = simulate_paths(params, &choice, seed, config.draws, config.mode)?;
    let summary = SimulationSummary {
        outcome: sample.mean_of(|o| o.outcome),
        effort: sample.mean_of(|o| o.effort),
        payoff_congress_policy: sample.mean_of(|o| o.payoff_congress_policy),
        payoff_group: sample.mean_of(|o| o.payoff_group),
        expected_congress_policy: solved.eu_congress_policy,
        expected_group: solved.eu_group,
    };
    Ok(SimulateReport {
        params: *params,
        mode: config.mode,
        choice,
        seed: Some(seed),
        draws: sample.draws,
        outcomes: sample.outcomes,
        summary: Some(summary),
    })
}

// ---------------------------------------------------------------- sweep

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub parameter: Param,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl SweepAxis {
    pub fn new(parameter: Param, from: f64, to: f64, steps: usize) -> Result<Self, ConfigError> {
        let range = AxisRange::new(from, to, steps).map_err(|reason| ConfigError::Value {
            key: parameter.name().to_string(),
            reason,
        })?;
        Ok(Self {
            parameter,
            from: range.lo,
            to: range.hi,
            steps: range.steps,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        AxisRange {
            lo: self.from,
            hi: self.to,
            steps: self.steps,
        }
        .values()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub first: SweepAxis,
    pub second: Option<SweepAxis>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub spec: SweepSpec,
    /// Row-major: the second axis varies fastest.
    pub rows: Vec<SolveRecord>,
}

impl Report for SweepReport {
    fn table(&self) -> Table {
        let mut t = Table::new(SOLVE_COLUMNS);
        for row in &self.rows {
            t.push(row.cells());
        }
        t
    }
}

fn checked_point(params: ModelParams, validation: Validation) -> Result<ModelParams, ConfigError> {
    params.validate(validation)?;
    Ok(params)
}

pub fn cmd_sweep(config: &RunConfig, spec: &SweepSpec) -> Result<SweepReport, ConfigError> {
    if let Some(second) = spec.second {
        if second.parameter == spec.first.parameter {
            return Err(ConfigError::Usage(format!(
                "a 2-D sweep needs two different parameters, got `{}` twice",
                second.parameter
            )));
        }
    }
    let mut rows = Vec::new();
    for a in spec.first.values() {
        let base = config.params.with(spec.first.parameter, a);
        match spec.second {
            None => rows.push(checked_point(base, config.validation)?),
            Some(second) => {
                for b in second.values() {
                    rows.push(checked_point(base.with(second.parameter, b), config.validation)?);
                }
            }
        }
    }
    let rows = rows
        .iter()
        .map(|p| solve(p, config.mode, &search_for(config, p)))
        .collect();
    Ok(SweepReport { spec: *spec, rows })
}

/// The configured search box, re-derived for a swept parameter point when the
/// config did not pin it.
fn search_for(config: &RunConfig, params: &ModelParams) -> SearchBox {
    if config.search == SearchBox::for_params(&config.params) {
        SearchBox::for_params(params)
    } else {
        config.search
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub params: ModelParams,
    pub surface: Surface,
}

impl Report for SurfaceReport {
    /// Matrix layout: first column `agency_ideal`, one column per Congress
    /// ideal point.
    fn table(&self) -> Table {
        let mut columns = vec!["agency_ideal".to_string()];
        columns.extend(self.surface.congress_ideal.iter().map(|c| format!("congress_ideal={}", super::format::g9(*c))));
        let mut t = Table::new(columns);
        for (a, row) in self.surface.agency_ideal.iter().zip(&self.surface.values) {
            let mut cells = vec![Cell::Num(*a)];
            cells.extend(row.iter().map(|v| Cell::Num(*v)));
            t.push(cells);
        }
        t
    }
}

/// `(d^L - R)^2` over an `(agency_ideal, congress_ideal)` grid.
pub fn cmd_surface(config: &RunConfig, spec: &SweepSpec) -> Result<SurfaceReport, ConfigError> {
    let Some(second) = spec.second else {
        return Err(ConfigError::Usage("--surface needs --param2".into()));
    };
    let (agency, congress) = match (spec.first.parameter, second.parameter) {
        (Param::AgencyIdeal, Param::CongressIdeal) => (spec.first, second),
        (Param::CongressIdeal, Param::AgencyIdeal) => (second, spec.first),
        _ => {
            return Err(ConfigError::Usage(
                "--surface sweeps agency_ideal against congress_ideal".into(),
            ))
        }
    };
    if config.mode != RegimeInterpretation::FinalPolicyBand {
        return Err(ConfigError::Usage("--surface supports mode final-policy-band only".into()));
    }
    for (axis, field) in [(agency, "agency_ideal"), (congress, "congress_ideal")] {
        if config.validation == Validation::Strict && axis.from.min(axis.to) <= 0.0 {
            return Err(ConfigError::Value {
                key: field.into(),
                reason: "surface axes must be positive under strict validation".into(),
            });
        }
    }
    let range = |a: SweepAxis| AxisRange {
        lo: a.from,
        hi: a.to,
        steps: a.steps,
    };
    Ok(SurfaceReport {
        params: config.params,
        surface: discretion_surface(&config.params, range(agency), range(congress)),
    })
}

// --------------------------------------------------------------- verify

/// One oracle-versus-closed-form comparison over the sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub tolerance: f64,
    pub evaluated: usize,
    pub passed: usize,
    pub failed: usize,
    pub worst_deviation: f64,
}

impl CheckRow {
    fn new(name: &str, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            tolerance,
            evaluated: 0,
            passed: 0,
            failed: 0,
            worst_deviation: 0.0,
        }
    }

    fn record(&mut self, deviation: f64) {
        self.evaluated += 1;
        self.worst_deviation = self.worst_deviation.max(deviation);
        if deviation <= self.tolerance {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

/// A point where a printed formula and the derived one disagree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyRow {
    pub name: String,
    pub description: String,
    pub params: ModelParams,
    pub printed_value: f64,
    pub derived_value: f64,
    pub oracle_value: f64,
    /// The printed value misses the oracle by more than `tolerance`.
    pub flagged: bool,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub sample_size: usize,
    pub strict: bool,
    pub checks: Vec<CheckRow>,
    pub discrepancies: Vec<DiscrepancyRow>,
    /// Any check failed, or (under `strict`) any discrepancy is flagged.
    pub failed: bool,
}

impl Report for VerifyReport {
    fn table(&self) -> Table {
        let mut t = Table::new([
            "section",
            "name",
            "tolerance",
            "evaluated",
            "passed",
            "failed",
            "worst_deviation",
            "printed_value",
            "derived_value",
            "oracle_value",
            "flagged",
        ]);
        for c in &self.checks {
            t.push(vec![
                "check".into(),
                c.name.as_str().into(),
                c.tolerance.into(),
                c.evaluated.into(),
                c.passed.into(),
                c.failed.into(),
                c.worst_deviation.into(),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
            ]);
        }
        for d in &self.discrepancies {
            t.push(vec![
                "discrepancy".into(),
                d.name.as_str().into(),
                d.tolerance.into(),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                d.printed_value.into(),
                d.derived_value.into(),
                d.oracle_value.into(),
                d.flagged.into(),
            ]);
        }
        t
    }
}

/// Benchmark for the money-motivated extreme: linear loss in `d` from the
/// group's cost plus a cubic policy loss.
pub const EXTREME_BENCHMARK: ModelParams = ModelParams {
    alpha: 1.0,
    beta: 0.0,
    lambda_weight: 0.0,
    shock_bound: 1.0,
    congress_ideal: 0.5,
    agency_ideal: 0.25,
};

/// Interior point where the printed shortfall's cross term changes `d`.
pub const SHORTFALL_BENCHMARK: ModelParams = ModelParams {
    alpha: 1.0,
    beta: 1.0,
    lambda_weight: 0.5,
    shock_bound: 1.0,
    congress_ideal: 0.5,
    agency_ideal: 1.0,
};

fn random_choice<R: Rng>(rng: &mut R, r: f64) -> LegislativeChoice {
    LegislativeChoice {
        status_quo: rng.random_range(-r..=r),
        discretion: rng.random_range(0.0..=r),
    }
}

/// Runs every oracle-versus-closed-form comparison on `sample_size` seeded
/// parameter points, plus the two printed-formula discrepancies.
pub fn cmd_verify(config: &RunConfig, sample_size: usize, strict: bool) -> Result<VerifyReport, ConfigError> {
    if sample_size == 0 {
        return Err(ConfigError::Usage("--sample must be at least 1".into()));
    }
    let seed = derive_seed(config.seed, "verify");
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mode = RegimeInterpretation::FinalPolicyBand;

    let mut effort = CheckRow::new("best_response_effort", 1e-6);
    let mut proposal = CheckRow::new("unconstrained_proposal", 1e-6);
    let mut invariance = CheckRow::new("interior_outcome_invariance", 1e-12);
    let mut capture = CheckRow::new("capture_no_lobbying", 0.0);
    let mut eu_c = CheckRow::new("expected_utility_congress", 1e-9);
    let mut eu_i = CheckRow::new("expected_utility_group", 1e-9);
    let mut status_quo = CheckRow::new("optimal_status_quo", 1e-4);
    let mut discretion = CheckRow::new("optimal_discretion", 1e-3);
    let mut contribution = CheckRow::new("contribution_nonnegative", 0.0);

    for _ in 0..sample_size {
        let params = sample_params(&mut rng);
        let r = params.shock_bound;

        let (p_a, w) = (rng.random_range(-3.0..=3.0), rng.random_range(-r..=r));
        effort.record((best_response_effort(p_a, w, &params) - numeric_best_effort(p_a, w, &params)).abs());

        let w = rng.random_range(-r..=r);
        proposal.record((unconstrained_proposal(w, &params) - numeric_best_proposal(w, &params, None, mode)).abs());

        let choice = random_choice(&mut rng, r);
        let t = regime_thresholds(&choice, &params);
        let (lo, hi) = (t.omega_low.max(-r), t.omega_high.min(r));
        let u: f64 = rng.random();
        if lo <= hi {
            let w = lo + u * (hi - lo);
            let x = enacted_outcome(w, &choice, &params, mode)?.outcome;
            invariance.record((x - outcome_tilde(&params)).abs());
        }

        let captured = ModelParams {
            beta: 2.0 * params.alpha * params.agency_ideal + rng.random_range(0.0..=5.0),
            ..params
        };
        capture.record(equilibrium_effort(&captured).abs().max(outcome_tilde(&captured).abs()));

        let choice = random_choice(&mut rng, r);
        let numeric = numeric_expected_utilities(&choice, &params, mode);
        eu_c.record((expected_utility_congress(&choice, &params) - numeric.eu_congress_policy).abs());
        eu_i.record((expected_utility_group(&choice, &params) - numeric.eu_group).abs());

        let (closed, interior, branch) = optimal_choice(&params);
        if interior && branch == BranchLabel::ClosedFormFoc {
            let found = numeric_optimal_legislation(&params, &SearchBox::for_params(&params), mode).choice;
            status_quo.record((found.status_quo - closed.status_quo).abs());
            discretion.record((found.discretion - closed.discretion).abs());
        }

        contribution.record((-optimal_legislation(&params).welfare.contribution).max(0.0));
    }

    let oracle_d = |p: &ModelParams| numeric_optimal_legislation(p, &SearchBox::for_params(p), mode).choice.discretion;
    let tol = 1e-3;
    let mut benchmark = CheckRow::new("benchmark_discretion", tol);
    let extreme_oracle = oracle_d(&EXTREME_BENCHMARK);
    let extreme_derived = optimal_discretion_foc(&EXTREME_BENCHMARK);
    benchmark.record((extreme_derived - extreme_oracle).abs());
    let shortfall_oracle = oracle_d(&SHORTFALL_BENCHMARK);
    let shortfall_derived = optimal_discretion_foc(&SHORTFALL_BENCHMARK);
    benchmark.record((shortfall_derived - shortfall_oracle).abs());

    let extreme_printed = optimal_discretion_printed_extremes(&EXTREME_BENCHMARK)?;
    let shortfall_printed = discretion_from_shortfall(
        discretion_shortfall_sq_as_printed(&SHORTFALL_BENCHMARK),
        SHORTFALL_BENCHMARK.shock_bound,
    );
    debug_assert_eq!(
        shortfall_derived,
        discretion_from_shortfall(discretion_shortfall_sq(&SHORTFALL_BENCHMARK), SHORTFALL_BENCHMARK.shock_bound)
    );
    let discrepancies = vec![
        DiscrepancyRow {
            name: "extreme_lambda0_discretion".into(),
            description: "printed lambda = 0 rule R - ((1+alpha)/alpha)|x~| versus first-order condition R - sqrt((1+alpha)/alpha)|x~|".into(),
            params: EXTREME_BENCHMARK,
            printed_value: extreme_printed,
            derived_value: extreme_derived,
            oracle_value: extreme_oracle,
            flagged: (extreme_printed - extreme_oracle).abs() > tol,
            tolerance: tol,
        },
        DiscrepancyRow {
            name: "shortfall_cross_term".into(),
            description: "printed shortfall cross term +lambda(lambda x_C^2 + 2 x_C x~) versus derived -2 lambda x_C x~ + lambda^2 x_C^2".into(),
            params: SHORTFALL_BENCHMARK,
            printed_value: shortfall_printed,
            derived_value: shortfall_derived,
            oracle_value: shortfall_oracle,
            flagged: (shortfall_printed - shortfall_oracle).abs() > tol,
            tolerance: tol,
        },
    ];

    let checks = vec![
        effort,
        proposal,
        invariance,
        capture,
        eu_c,
        eu_i,
        status_quo,
        discretion,
        contribution,
        benchmark,
    ];
    let failed = checks.iter().any(|c| c.failed > 0) || (strict && discrepancies.iter().any(|d| d.flagged));
    Ok(VerifyReport {
        seed,
        sample_size,
        strict,
        checks,
        discrepancies,
        failed,
    })
}

// ----------------------------------------------------------- hypotheses

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesesReport {
    pub seed: u64,
    pub grid_size: usize,
    pub region: GridRegion,
    pub reports: Vec<SignReport>,
    /// Some clause reported `fail`.
    pub failed: bool,
}

const POINT_COLUMNS: [&str; 10] = [
    "alpha",
    "beta",
    "lambda",
    "shock_bound",
    "congress_ideal",
    "agency_ideal",
    "status_quo",
    "discretion",
    "shock",
    "proposal",
];

impl Report for HypothesesReport {
    /// One `clause` row per hypothesis clause, followed by a `violation` row
    /// for every violating grid point.
    fn table(&self) -> Table {
        let mut columns = vec![
            "section",
            "id",
            "clause",
            "quantity",
            "variable",
            "expected_sign",
            "condition",
            "pin_lambda",
            "grid_points",
            "applicable",
            "satisfied",
            "violations",
            "verdict",
            "measured",
        ];
        columns.extend(POINT_COLUMNS);
        let mut t = Table::new(columns);
        let blank = || vec![Cell::Empty; POINT_COLUMNS.len()];
        let head = |s: &SignReport, section: &str| -> Vec<Cell> {
            let h = &s.hypothesis;
            vec![
                section.into(),
                label(&h.id).into(),
                h.clause.into(),
                label(&h.quantity).into(),
                match h.kind {
                    ClauseKind::Derivative(v) => v.name().into(),
                    ClauseKind::Level => "level".into(),
                },
                label(&h.expected_sign).into(),
                h.condition.text.into(),
                h.pin_lambda.into(),
            ]
        };
        for s in &self.reports {
            let mut row = head(s, "clause");
            row.extend([
                s.grid_points.into(),
                s.applicable.into(),
                s.satisfied.into(),
                s.violations.len().into(),
                label(&s.verdict).into(),
                Cell::Empty,
            ]);
            row.extend(blank());
            t.push(row);
        }
        for s in &self.reports {
            for v in &s.violations {
                let mut row = head(s, "violation");
                row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, v.measured.into()]);
                let p = &v.point;
                row.extend([
                    p.params.alpha.into(),
                    p.params.beta.into(),
                    p.params.lambda_weight.into(),
                    p.params.shock_bound.into(),
                    p.params.congress_ideal.into(),
                    p.params.agency_ideal.into(),
                    p.choice.status_quo.into(),
                    p.choice.discretion.into(),
                    p.shock.into(),
                    p.proposal.into(),
                ]);
                t.push(row);
            }
        }
        t
    }
}

pub fn cmd_hypotheses(config: &RunConfig, grid_size: usize, region: GridRegion) -> Result<HypothesesReport, ConfigError> {
    if grid_size == 0 {
        return Err(ConfigError::Usage("--grid must be at least 1".into()));
    }
    let seed = derive_seed(config.seed, "hypotheses");
    let grid = sample_grid(seed, grid_size, region);
    let settings = FdSettings::default();
    let reports: Vec<SignReport> = builtin_hypotheses()
        .iter()
        .map(|h| evaluate_hypothesis(h, &grid, &settings))
        .collect();
    let failed = reports.iter().any(|r| r.verdict == Verdict::Fail);
    Ok(HypothesesReport {
        seed,
        grid_size,
        region,
        reports,
        failed,
    })
}
