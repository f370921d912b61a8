//! Comparative statics: the model's hypotheses as sign predicates, evaluated
//! by central finite differences over parameter grids, and the
//! `(d^L - R)^2` surfaces over agency and Congress ideal points.

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::legislative::{discretion_shortfall_sq, optimal_choice, optimal_status_quo};
use crate::model::{
    ally_ideal, best_response_effort, conflict_gap, enacted_outcome_unchecked, equilibrium_effort,
    outcome_tilde, regime_thresholds, unconstrained_proposal, LegislativeChoice, ModelParams, Param,
    RegimeInterpretation,
};
use crate::oracle::{numeric_optimal_legislation, SearchBox};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HypothesisId {
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    H7,
    H8,
    H9,
}

/// Derived values whose response to the primitives is under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// Group's best response to the grid point's proposal and shock.
    BestResponseEffort,
    EquilibriumEffort,
    /// Agency's unconstrained proposal at the grid point's shock.
    Proposal,
    OutcomeTilde,
    ConflictGap,
    /// Distance between Congress's ideal and the agency's outcome after
    /// lobbying, `|x_A - beta/(2 alpha) - x_C|`, unclamped.
    OutcomeConflict,
    AllyIdeal,
    /// Conflict gap after replacing `x_A` by the ally ideal point.
    GapAtAllyIdeal,
    StatusQuo,
    /// Optimal discretion from the numeric legislative oracle.
    Discretion,
    /// Enacted outcome at the grid point's legislation and shock.
    EnactedOutcome,
}

/// What a derivative is taken with respect to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variable {
    Param(Param),
    StatusQuo,
    Discretion,
    Shock,
    Proposal,
}

impl Variable {
    pub fn name(self) -> &'static str {
        match self {
            Variable::Param(p) => p.name(),
            Variable::StatusQuo => "status_quo",
            Variable::Discretion => "discretion",
            Variable::Shock => "shock",
            Variable::Proposal => "proposal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
    Zero,
}

impl Sign {
    pub fn classify(value: f64, dead_band: f64) -> Self {
        if value > dead_band {
            Sign::Positive
        } else if value < -dead_band {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClauseKind {
    /// Sign of the partial derivative with respect to a variable.
    Derivative(Variable),
    /// Sign of the quantity itself.
    Level,
}

/// One point of a comparative-statics grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub params: ModelParams,
    pub choice: LegislativeChoice,
    pub shock: f64,
    pub proposal: f64,
}

impl GridPoint {
    pub fn get(&self, var: Variable) -> f64 {
        match var {
            Variable::Param(p) => self.params.get(p),
            Variable::StatusQuo => self.choice.status_quo,
            Variable::Discretion => self.choice.discretion,
            Variable::Shock => self.shock,
            Variable::Proposal => self.proposal,
        }
    }

    pub fn with(mut self, var: Variable, value: f64) -> Self {
        match var {
            Variable::Param(p) => self.params = self.params.with(p, value),
            Variable::StatusQuo => self.choice.status_quo = value,
            Variable::Discretion => self.choice.discretion = value,
            Variable::Shock => self.shock = value,
            Variable::Proposal => self.proposal = value,
        }
        self
    }
}

/// A predicate restricting where a clause is claimed to hold.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Condition {
    pub text: &'static str,
    #[serde(skip)]
    pub test: fn(&GridPoint) -> bool,
}

impl PartialEq for Condition {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

/// One clause of one hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypothesisSpec {
    pub id: HypothesisId,
    pub clause: &'static str,
    pub quantity: Quantity,
    pub kind: ClauseKind,
    pub expected_sign: Sign,
    pub condition: Condition,
    /// Evaluate with `lambda` replaced by this value.
    pub pin_lambda: Option<f64>,
    /// Share of applicable points allowed to disagree. Zero for clauses with
    /// analytic quantities; positive for clauses that go through the numeric
    /// legislative oracle.
    pub allowed_violation_rate: f64,
}

impl HypothesisSpec {
    pub fn is_numeric(&self) -> bool {
        self.quantity == Quantity::Discretion
    }
}

/// Finite-difference and oracle settings for [`evaluate_hypothesis`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdSettings {
    /// Step is `relative_step * max(1, |value|)`, floored at `absolute_floor`.
    pub relative_step: f64,
    pub absolute_floor: f64,
    pub dead_band: f64,
    pub oracle_points: usize,
    pub oracle_rounds: usize,
}

impl Default for FdSettings {
    fn default() -> Self {
        Self {
            relative_step: 1e-4,
            absolute_floor: 1e-6,
            dead_band: 1e-8,
            oracle_points: 41,
            oracle_rounds: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub point: GridPoint,
    pub measured: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignReport {
    pub hypothesis: HypothesisSpec,
    pub grid_points: usize,
    /// Points meeting the condition.
    pub applicable: usize,
    pub satisfied: usize,
    pub violations: Vec<Violation>,
    pub verdict: Verdict,
}

fn interior(p: &GridPoint) -> bool {
    p.params.is_interior()
}

fn positive_beta(p: &GridPoint) -> bool {
    p.params.beta > 0.0
}

fn drive_positive(p: &GridPoint) -> bool {
    p.proposal + p.shock > 0.0
}

fn discretion_interior(p: &GridPoint) -> bool {
    let r = p.params.shock_bound;
    discretion_shortfall_sq(&p.params) < r * r
}

fn constrained(p: &GridPoint) -> bool {
    let t = regime_thresholds(&p.choice, &p.params);
    p.shock < t.omega_low || p.shock > t.omega_high
}

macro_rules! cond {
    ($text:expr, $test:expr) => {
        Condition {
            text: $text,
            test: $test,
        }
    };
}

const ALWAYS: Condition = cond!("always", |_| true);

/// Every comparative-statics clause of the hypothesis table in a testable form.
pub fn builtin_hypotheses() -> Vec<HypothesisSpec> {
    use ClauseKind::{Derivative, Level};
    use HypothesisId::*;
    use Quantity as Q;
    use Sign::{Negative, Positive, Zero};
    use Variable as V;

    let analytic = |id, clause, quantity, kind, expected_sign, condition| HypothesisSpec {
        id,
        clause,
        quantity,
        kind,
        expected_sign,
        condition,
        pin_lambda: None,
        allowed_violation_rate: 0.0,
    };
    let numeric = |clause, kind, expected_sign, condition, pin_lambda| HypothesisSpec {
        id: H8,
        clause,
        quantity: Q::Discretion,
        kind,
        expected_sign,
        condition,
        pin_lambda,
        allowed_violation_rate: 0.01,
    };

    let lobbying = cond!("p_A + w > 0", drive_positive);
    let no_lobbying = cond!("p_A + w <= 0", |p| !drive_positive(p));
    let interior_c = cond!("x_A > beta/(2 alpha)", interior);
    let captured = cond!("beta >= 2 alpha x_A", |p| p.params.is_captured());

    vec![
        analytic(H1, "de*/dp_A > 0", Q::BestResponseEffort, Derivative(V::Proposal), Positive, lobbying),
        analytic(H1, "de*/dw > 0", Q::BestResponseEffort, Derivative(V::Shock), Positive, lobbying),
        analytic(H1, "de*/dalpha < 0", Q::BestResponseEffort, Derivative(V::Param(Param::Alpha)), Negative, lobbying),
        analytic(H1, "e* > 0 if p_A + w > 0", Q::BestResponseEffort, Level, Positive, lobbying),
        analytic(H1, "e* = 0 if p_A + w <= 0", Q::BestResponseEffort, Level, Zero, no_lobbying),
        analytic(H2, "dp_A*/dw < 0", Q::Proposal, Derivative(V::Shock), Negative, ALWAYS),
        analytic(H2, "dp_A*/dbeta < 0", Q::Proposal, Derivative(V::Param(Param::Beta)), Negative, interior_c),
        analytic(H2, "dp_A*/dx_A > 0", Q::Proposal, Derivative(V::Param(Param::AgencyIdeal)), Positive, interior_c),
        analytic(H3, "de*/dbeta < 0", Q::EquilibriumEffort, Derivative(V::Param(Param::Beta)), Negative, interior_c),
        analytic(H3, "de*/dx_A > 0", Q::EquilibriumEffort, Derivative(V::Param(Param::AgencyIdeal)), Positive, interior_c),
        analytic(
            H3,
            "de*/dalpha < 0 if x_A > beta/alpha",
            Q::EquilibriumEffort,
            Derivative(V::Param(Param::Alpha)),
            Negative,
            cond!("x_A > beta/alpha", |p| p.params.agency_ideal > p.params.beta / p.params.alpha),
        ),
        analytic(
            H3,
            "de*/dalpha > 0 if beta/(2 alpha) < x_A < beta/alpha",
            Q::EquilibriumEffort,
            Derivative(V::Param(Param::Alpha)),
            Positive,
            cond!("beta/(2 alpha) < x_A < beta/alpha", |p| {
                interior(p) && p.params.agency_ideal < p.params.beta / p.params.alpha
            }),
        ),
        analytic(H4, "x~ = 0 under capture", Q::OutcomeTilde, Level, Zero, captured),
        analytic(H4, "e* = 0 under capture", Q::EquilibriumEffort, Level, Zero, captured),
        analytic(
            H5,
            "conflict falls in beta if x_C < x_A",
            Q::OutcomeConflict,
            Derivative(V::Param(Param::Beta)),
            Negative,
            cond!("x_C + beta/(2 alpha) < x_A", mitigating),
        ),
        analytic(
            H5,
            "conflict rises in alpha if x_C < x_A",
            Q::OutcomeConflict,
            Derivative(V::Param(Param::Alpha)),
            Positive,
            cond!("x_C + beta/(2 alpha) < x_A, beta > 0", |p| mitigating(p) && positive_beta(p)),
        ),
        analytic(
            H5,
            "conflict rises in beta if x_C > x_A",
            Q::OutcomeConflict,
            Derivative(V::Param(Param::Beta)),
            Positive,
            cond!("x_C > x_A", amplifying),
        ),
        analytic(
            H5,
            "conflict falls in alpha if x_C > x_A",
            Q::OutcomeConflict,
            Derivative(V::Param(Param::Alpha)),
            Negative,
            cond!("x_C > x_A, beta > 0", |p| amplifying(p) && positive_beta(p)),
        ),
        analytic(H6, "gap = 0 at x_A = x_C + beta/(2 alpha)", Q::GapAtAllyIdeal, Level, Zero, ALWAYS),
        analytic(H6, "preferred x_A rises in beta", Q::AllyIdeal, Derivative(V::Param(Param::Beta)), Positive, ALWAYS),
        analytic(
            H6,
            "preferred x_A falls in alpha",
            Q::AllyIdeal,
            Derivative(V::Param(Param::Alpha)),
            Negative,
            cond!("beta > 0", positive_beta),
        ),
        analytic(
            H7,
            "p_0 rises in x_C",
            Q::StatusQuo,
            Derivative(V::Param(Param::CongressIdeal)),
            Positive,
            cond!("lambda > 0", |p| p.params.lambda_weight > 0.0),
        ),
        analytic(
            H7,
            "p_0 falls as lambda falls",
            Q::StatusQuo,
            Derivative(V::Param(Param::Lambda)),
            Positive,
            cond!("x_C > 0", |p| p.params.congress_ideal > 0.0),
        ),
        numeric(
            "d rises in R",
            Derivative(V::Param(Param::ShockBound)),
            Positive,
            cond!("S < R^2", discretion_interior),
            None,
        ),
        numeric(
            "d falls in |x~| at lambda = 0",
            Derivative(V::Param(Param::AgencyIdeal)),
            Negative,
            cond!("x_A > beta/(2 alpha), S < R^2", |p| interior(p) && discretion_interior(p)),
            Some(0.0),
        ),
        numeric(
            "d falls in |x~ - x_C| at lambda = 1 (x~ > x_C)",
            Derivative(V::Param(Param::AgencyIdeal)),
            Negative,
            cond!("x~ > x_C, S < R^2", |p| {
                outcome_tilde(&p.params) > p.params.congress_ideal && discretion_interior(p)
            }),
            Some(1.0),
        ),
        numeric(
            "d falls in |x~ - x_C| at lambda = 1 (x~ < x_C)",
            Derivative(V::Param(Param::AgencyIdeal)),
            Positive,
            cond!("0 < x~ < x_C, S < R^2", |p| {
                interior(p) && outcome_tilde(&p.params) < p.params.congress_ideal && discretion_interior(p)
            }),
            Some(1.0),
        ),
        analytic(H9, "dx~/dx_A > 0", Q::OutcomeTilde, Derivative(V::Param(Param::AgencyIdeal)), Positive, interior_c),
        analytic(H9, "dx~/dbeta < 0", Q::OutcomeTilde, Derivative(V::Param(Param::Beta)), Negative, interior_c),
        analytic(
            H9,
            "dx~/dalpha > 0",
            Q::OutcomeTilde,
            Derivative(V::Param(Param::Alpha)),
            Positive,
            cond!("x_A > beta/(2 alpha), beta > 0", |p| interior(p) && positive_beta(p)),
        ),
        analytic(
            H9,
            "outcome rises in p_0 when the band binds",
            Q::EnactedOutcome,
            Derivative(V::StatusQuo),
            Positive,
            cond!("w outside [w_low, w_high]", constrained),
        ),
    ]
}

fn mitigating(p: &GridPoint) -> bool {
    p.params.congress_ideal + p.params.lobbying_pressure() < p.params.agency_ideal
}

fn amplifying(p: &GridPoint) -> bool {
    p.params.congress_ideal > p.params.agency_ideal
}

/// Evaluates a quantity at one grid point.
pub fn evaluate_quantity(quantity: Quantity, point: &GridPoint, settings: &FdSettings) -> f64 {
    let params = &point.params;
    match quantity {
        Quantity::BestResponseEffort => best_response_effort(point.proposal, point.shock, params),
        Quantity::EquilibriumEffort => equilibrium_effort(params),
        Quantity::Proposal => unconstrained_proposal(point.shock, params),
        Quantity::OutcomeTilde => outcome_tilde(params),
        Quantity::ConflictGap => conflict_gap(params),
        Quantity::OutcomeConflict => {
            (params.agency_ideal - params.lobbying_pressure() - params.congress_ideal).abs()
        }
        Quantity::AllyIdeal => ally_ideal(params),
        Quantity::GapAtAllyIdeal => {
            conflict_gap(&params.with(Param::AgencyIdeal, ally_ideal(params)))
        }
        Quantity::StatusQuo => optimal_status_quo(params),
        Quantity::Discretion => {
            let search = SearchBox::for_params(params)
                .with_resolution(settings.oracle_points, settings.oracle_rounds);
            numeric_optimal_legislation(params, &search, RegimeInterpretation::FinalPolicyBand)
                .choice
                .discretion
        }
        Quantity::EnactedOutcome => {
            enacted_outcome_unchecked(point.shock, &point.choice, params, RegimeInterpretation::FinalPolicyBand)
                .outcome
        }
    }
}

/// Central finite difference of `quantity` in `var`, with the step used.
pub fn central_difference(
    quantity: Quantity,
    var: Variable,
    point: &GridPoint,
    settings: &FdSettings,
) -> (f64, f64) {
    let v = point.get(var);
    let h = (settings.relative_step * v.abs().max(1.0)).max(settings.absolute_floor);
    let up = evaluate_quantity(quantity, &point.with(var, v + h), settings);
    let down = evaluate_quantity(quantity, &point.with(var, v - h), settings);
    ((up - down) / (2.0 * h), h)
}

/// Checks one clause on every grid point that meets its condition.
///
/// For derivative clauses the condition must also hold at both probe points,
/// so a difference never straddles the edge of the region where the clause
/// is claimed.
pub fn evaluate_hypothesis(spec: &HypothesisSpec, grid: &[GridPoint], settings: &FdSettings) -> SignReport {
    let mut applicable = 0;
    let mut violations = Vec::new();
    for raw in grid {
        let point = match spec.pin_lambda {
            Some(l) => raw.with(Variable::Param(Param::Lambda), l),
            None => *raw,
        };
        if !(spec.condition.test)(&point) {
            continue;
        }
        let measured = match spec.kind {
            ClauseKind::Level => evaluate_quantity(spec.quantity, &point, settings),
            ClauseKind::Derivative(var) => {
                let v = point.get(var);
                let h = (settings.relative_step * v.abs().max(1.0)).max(settings.absolute_floor);
                let probes_ok = (spec.condition.test)(&point.with(var, v + h))
                    && (spec.condition.test)(&point.with(var, v - h));
                if !probes_ok {
                    continue;
                }
                central_difference(spec.quantity, var, &point, settings).0
            }
        };
        applicable += 1;
        if Sign::classify(measured, settings.dead_band) != spec.expected_sign {
            violations.push(Violation { point, measured });
        }
    }
    let satisfied = applicable - violations.len();
    let allowed = (spec.allowed_violation_rate * applicable as f64).floor() as usize;
    let verdict = if applicable == 0 {
        Verdict::Vacuous
    } else if violations.len() <= allowed {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    SignReport {
        hypothesis: *spec,
        grid_points: grid.len(),
        applicable,
        satisfied,
        violations,
        verdict,
    }
}

/// Which part of parameter space a random grid covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridRegion {
    #[default]
    All,
    /// Only points with `beta >= 2 alpha x_A`.
    Capture,
    /// Only points with `x_C > x_A`.
    CongressAboveAgency,
}

impl std::str::FromStr for GridRegion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Self::All),
            "capture" => Ok(Self::Capture),
            "congress-above-agency" => Ok(Self::CongressAboveAgency),
            other => Err(format!(
                "unknown region `{other}` (expected all, capture or congress-above-agency)"
            )),
        }
    }
}

/// Random parameter point from the sampling ranges used throughout the
/// cross-checks: `alpha` in `[0.1, 10]`, `beta` in `[0, 5]`, `lambda` in
/// `[0, 1]`, `R` in `[0.5, 4]`, ideal points in `(0, 2]`.
pub fn sample_params<R: Rng>(rng: &mut R) -> ModelParams {
    ModelParams {
        alpha: rng.random_range(0.1..=10.0),
        beta: rng.random_range(0.0..=5.0),
        lambda_weight: rng.random_range(0.0..=1.0),
        shock_bound: rng.random_range(0.5..=4.0),
        congress_ideal: 2.0 - rng.random_range(0.0..2.0),
        agency_ideal: 2.0 - rng.random_range(0.0..2.0),
    }
}

/// Seeded random grid for hypothesis checks.
pub fn sample_grid(seed: u64, size: usize, region: GridRegion) -> Vec<GridPoint> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    (0..size)
        .map(|_| {
            let mut params = sample_params(&mut rng);
            match region {
                GridRegion::All => {}
                GridRegion::Capture => {
                    params.beta = 2.0 * params.alpha * params.agency_ideal + rng.random_range(0.0..=5.0);
                }
                GridRegion::CongressAboveAgency => {
                    if params.congress_ideal < params.agency_ideal {
                        std::mem::swap(&mut params.congress_ideal, &mut params.agency_ideal);
                    }
                    if params.congress_ideal == params.agency_ideal {
                        params.agency_ideal *= 0.5;
                    }
                }
            }
            let r = params.shock_bound;
            let choice = LegislativeChoice {
                status_quo: rng.random_range(-r..=r),
                discretion: rng.random_range(0.0..=r),
            };
            GridPoint {
                params,
                choice,
                shock: rng.random_range(-r..=r),
                proposal: rng.random_range(-3.0..=3.0),
            }
        })
        .collect()
}

/// Evenly spaced axis, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl AxisRange {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Result<Self, String> {
        if steps < 2 {
            return Err(format!("an axis needs at least 2 steps, got {steps}"));
        }
        if !(lo.is_finite() && hi.is_finite()) || lo == hi {
            return Err(format!("axis endpoints must be finite and distinct, got {lo} and {hi}"));
        }
        Ok(Self { lo, hi, steps })
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.hi } else { self.lo + step * i as f64 })
            .collect()
    }
}

/// `(d^L - R)^2` over an `(x_A, x_C)` grid; `values[i][j]` is at
/// `(agency[i], congress[j])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Surface {
    pub agency_ideal: Vec<f64>,
    pub congress_ideal: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl Surface {
    /// Location and value of the smallest entry (first in row-major order).
    pub fn argmin(&self) -> (f64, f64, f64) {
        let mut best = (f64::NAN, f64::NAN, f64::INFINITY);
        for (i, row) in self.values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if *v < best.2 {
                    best = (self.agency_ideal[i], self.congress_ideal[j], *v);
                }
            }
        }
        best
    }
}

pub fn discretion_surface(params_base: &ModelParams, agency: AxisRange, congress: AxisRange) -> Surface {
    let agency_ideal = agency.values();
    let congress_ideal = congress.values();
    let r = params_base.shock_bound;
    let values = agency_ideal
        .iter()
        .map(|&a| {
            congress_ideal
                .iter()
                .map(|&c| {
                    let params = ModelParams {
                        agency_ideal: a,
                        congress_ideal: c,
                        ..*params_base
                    };
                    let (choice, _, _) = optimal_choice(&params);
                    (choice.discretion - r).powi(2)
                })
                .collect()
        })
        .collect();
    Surface {
        agency_ideal,
        congress_ideal,
        values,
    }
}

/// The three panels of the preference-conflict figure, at `R = 1`. Ideal
/// points are placeholders overwritten by the surface axes.
pub fn figure_panels() -> [(&'static str, ModelParams); 3] {
    let base = |alpha, beta| ModelParams {
        alpha,
        beta,
        lambda_weight: 0.5,
        shock_bound: 1.0,
        congress_ideal: 0.5,
        agency_ideal: 0.5,
    };
    [
        ("alpha=1,beta=1,lambda=0.5", base(1.0, 1.0)),
        ("alpha=1,beta=5,lambda=0.5", base(1.0, 5.0)),
        ("alpha=5,beta=1,lambda=0.5", base(5.0, 1.0)),
    ]
}

/// Default surface axis: `[0.02, 1.0]` in 50 steps.
pub fn default_axis() -> AxisRange {
    AxisRange {
        lo: 0.02,
        hi: 1.0,
        steps: 50,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(id: HypothesisId, clause_prefix: &str) -> HypothesisSpec {
        builtin_hypotheses()
            .into_iter()
            .find(|h| h.id == id && h.clause.starts_with(clause_prefix))
            .unwrap()
    }

    #[test]
    fn table_entries() {
        let h1 = find(HypothesisId::H1, "de*/dp_A");
        assert_eq!(h1.kind, ClauseKind::Derivative(Variable::Proposal));
        assert_eq!(h1.expected_sign, Sign::Positive);

        let h4 = find(HypothesisId::H4, "x~ = 0");
        let edge = GridPoint {
            params: ModelParams::new(1.0, 2.0, 0.5, 1.0, 0.5, 1.0).unwrap(),
            choice: LegislativeChoice { status_quo: 0.0, discretion: 0.0 },
            shock: 0.0,
            proposal: 0.0,
        };
        assert!((h4.condition.test)(&edge));
        let below = GridPoint { params: edge.params.with(Param::Beta, 1.999), ..edge };
        assert!(!(h4.condition.test)(&below));

        let h6 = find(HypothesisId::H6, "preferred x_A rises");
        assert_eq!(h6.quantity, Quantity::AllyIdeal);
        assert_eq!(h6.kind, ClauseKind::Derivative(Variable::Param(Param::Beta)));
        assert_eq!(h6.expected_sign, Sign::Positive);

        let ids: std::collections::BTreeSet<_> = builtin_hypotheses().iter().map(|h| h.id).collect();
        assert_eq!(ids.len(), 9);
    }

    #[test]
    fn alpha_clause_passes_with_interior_effort() {
        let grid = sample_grid(1, 200, GridRegion::All);
        let report = evaluate_hypothesis(&find(HypothesisId::H1, "de*/dalpha"), &grid, &FdSettings::default());
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(report.applicable > 0);
    }

    #[test]
    fn capture_grid() {
        let grid = sample_grid(2, 100, GridRegion::Capture);
        let settings = FdSettings::default();
        for spec in builtin_hypotheses() {
            let report = evaluate_hypothesis(&spec, &grid, &settings);
            match spec.id {
                HypothesisId::H4 => {
                    assert_eq!(report.verdict, Verdict::Pass);
                    assert_eq!(report.applicable, 100);
                }
                HypothesisId::H3 => assert_eq!(report.verdict, Verdict::Vacuous),
                _ => {}
            }
        }
        assert!(grid.iter().all(|p| equilibrium_effort(&p.params) == 0.0));
    }

    #[test]
    fn conflict_signs_flip_across_branches() {
        let settings = FdSettings::default();
        let beta_var = Variable::Param(Param::Beta);
        let below = GridPoint {
            params: ModelParams::new(1.0, 0.4, 0.5, 1.0, 0.3, 1.2).unwrap(),
            choice: LegislativeChoice { status_quo: 0.0, discretion: 0.0 },
            shock: 0.0,
            proposal: 0.0,
        };
        let above = GridPoint { params: below.params.with(Param::CongressIdeal, 1.5), ..below };
        let (d_below, _) = central_difference(Quantity::OutcomeConflict, beta_var, &below, &settings);
        let (d_above, _) = central_difference(Quantity::OutcomeConflict, beta_var, &above, &settings);
        assert!(d_below < 0.0 && d_above > 0.0);

        let grid = sample_grid(3, 200, GridRegion::CongressAboveAgency);
        for clause in ["conflict rises in beta if x_C > x_A", "conflict falls in alpha if x_C > x_A"] {
            let report = evaluate_hypothesis(&find(HypothesisId::H5, clause), &grid, &settings);
            assert_eq!(report.verdict, Verdict::Pass, "{clause}");
        }
    }

    #[test]
    fn vacuous_is_never_pass() {
        let mut spec = find(HypothesisId::H1, "de*/dw");
        spec.condition = cond!("never", |_| false);
        let report = evaluate_hypothesis(&spec, &sample_grid(4, 20, GridRegion::All), &FdSettings::default());
        assert_eq!(report.verdict, Verdict::Vacuous);
        assert_eq!(report.applicable, 0);
    }

    #[test]
    fn wrong_sign_fails_with_logged_violations() {
        let mut spec = find(HypothesisId::H2, "dp_A*/dw");
        spec.expected_sign = Sign::Positive;
        let report = evaluate_hypothesis(&spec, &sample_grid(5, 30, GridRegion::All), &FdSettings::default());
        assert_eq!(report.verdict, Verdict::Fail);
        assert_eq!(report.violations.len(), 30);
        assert!(report.violations.iter().all(|v| (v.measured + 1.0).abs() < 1e-6));
    }

    #[test]
    fn diagonal_has_zero_surface_without_burden() {
        let base = ModelParams::new(1.0, 0.0, 1.0, 1.0, 0.5, 0.5).unwrap();
        let axis = AxisRange::new(0.1, 0.9, 9).unwrap();
        let s = discretion_surface(&base, axis, axis);
        for i in 0..9 {
            assert!(s.values[i][i].abs() < 1e-12);
        }
        assert!(s.values[0][8] > 0.0);
    }

    #[test]
    fn axis_validation() {
        assert!(AxisRange::new(0.0, 1.0, 1).is_err());
        assert!(AxisRange::new(1.0, 1.0, 5).is_err());
        let v = AxisRange::new(0.02, 1.0, 50).unwrap().values();
        assert_eq!(v.len(), 50);
        assert_eq!(v[49], 1.0);
    }
}
