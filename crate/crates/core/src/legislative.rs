//! Legislative stage: expected utilities of Congress and the interest group
//! under the piecewise outcome map, the weighted joint objective, and the
//! optimal status quo and discretion.
//!
//! Expected utilities are integrated in closed form. Each regime contributes
//! the integral of a shifted square over a sub-interval of `[-R, R]`, and the
//! regime boundaries are clamped to the support so the formulas remain valid
//! when a regime is empty.

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::model::{outcome_tilde, regime_thresholds, LegislativeChoice, ModelParams, Param};
use crate::oracle::{numeric_optimal_legislation, SearchBox};
use crate::model::RegimeInterpretation;

/// Expected payoffs at one legislative choice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectedWelfare {
    /// Policy part of Congress's expected utility (no weight, no transfer).
    pub eu_congress_policy: f64,
    /// The group's expected utility gross of contributions.
    pub eu_group: f64,
    /// `lambda * eu_congress_policy + (1 - lambda) * eu_group`.
    pub joint_value: f64,
    /// Transfer attached to the legislation; zero when not computed.
    pub contribution: f64,
}

impl ExpectedWelfare {
    pub fn new(eu_congress_policy: f64, eu_group: f64, params: &ModelParams) -> Self {
        let l = params.lambda_weight;
        Self {
            eu_congress_policy,
            eu_group,
            joint_value: l * eu_congress_policy + (1.0 - l) * eu_group,
            contribution: 0.0,
        }
    }
}

/// How the discretion of an [`OptimalLegislation`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchLabel {
    /// `d = R - sqrt(S)` from the first-order condition.
    ClosedFormFoc,
    /// The printed extreme-case rule for `lambda` in `{0, 1}`.
    PrintedExtremes,
    /// Grid-and-refine search of the joint objective.
    NumericFallback,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalLegislation {
    pub choice: LegislativeChoice,
    pub welfare: ExpectedWelfare,
    /// Both regime thresholds lie strictly inside the shock support.
    pub interior: bool,
    pub branch_label: BranchLabel,
}

/// Transfer from the group that keeps Congress indifferent to legislating
/// purely on policy grounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contribution {
    pub amount: f64,
    /// False at `lambda = 1`, where Congress puts no value on money.
    pub defined: bool,
}

/// `-(1/2R) * integral` of the squared distance to `target` under the
/// piecewise outcome map, with the interior regime scaled by `interior_weight`.
fn piecewise_loss(
    choice: &LegislativeChoice,
    params: &ModelParams,
    target: f64,
    interior_weight: f64,
) -> f64 {
    let r = params.shock_bound;
    let t = regime_thresholds(choice, params);
    let lo = t.omega_low.clamp(-r, r);
    let hi = t.omega_high.clamp(-r, r);
    let x_tilde = outcome_tilde(params);

    // integral over [a, b] of (shift + w)^2 dw
    let square = |shift: f64, a: f64, b: f64| ((shift + b).powi(3) - (shift + a).powi(3)) / 3.0;

    let upper_edge = square(choice.status_quo + choice.discretion - target, -r, lo);
    let interior = (hi - lo) * interior_weight * (x_tilde - target).powi(2);
    let lower_edge = square(choice.status_quo - choice.discretion - target, hi, r);
    -(upper_edge + interior + lower_edge) / (2.0 * r)
}

/// Congress's expected policy utility.
pub fn expected_utility_congress(choice: &LegislativeChoice, params: &ModelParams) -> f64 {
    piecewise_loss(choice, params, params.congress_ideal, 1.0)
}

/// The group's expected utility. On the interior regime the outcome is
/// `x~` and the group also pays `alpha (x~/alpha)^2`, hence the factor
/// `(1 + alpha) / alpha`.
pub fn expected_utility_group(choice: &LegislativeChoice, params: &ModelParams) -> f64 {
    let a = params.alpha;
    piecewise_loss(choice, params, 0.0, (1.0 + a) / a)
}

pub fn joint_objective(choice: &LegislativeChoice, params: &ModelParams) -> f64 {
    let l = params.lambda_weight;
    l * expected_utility_congress(choice, params) + (1.0 - l) * expected_utility_group(choice, params)
}

pub fn expected_welfare(choice: &LegislativeChoice, params: &ModelParams) -> ExpectedWelfare {
    ExpectedWelfare::new(
        expected_utility_congress(choice, params),
        expected_utility_group(choice, params),
        params,
    )
}

/// `p_0 = lambda * x_C`.
pub fn optimal_status_quo(params: &ModelParams) -> f64 {
    params.lambda_weight * params.congress_ideal
}

/// `S = (d - R)^2` at the optimum: the first-order condition in `d` with the
/// optimal status quo substituted,
/// `((1 + alpha - lambda)/alpha) x~^2 - 2 lambda x_C x~ + lambda^2 x_C^2`.
///
/// Evaluated as the equivalent sum of squares
/// `(x~ - lambda x_C)^2 + ((1 - lambda)/alpha) x~^2`, which does not cancel
/// near an ally (where the expanded form leaves a rounding residue that the
/// square root in `d` magnifies to ~1e-8).
pub fn discretion_shortfall_sq(params: &ModelParams) -> f64 {
    let x = outcome_tilde(params);
    let (a, l, c) = (params.alpha, params.lambda_weight, params.congress_ideal);
    (x - l * c).powi(2) + (1.0 - l) / a * x * x
}

/// The same quantity with the cross term as it appears in print,
/// `+ lambda (lambda x_C^2 + 2 x_C x~)`. Only used for discrepancy reporting.
pub fn discretion_shortfall_sq_as_printed(params: &ModelParams) -> f64 {
    let x = outcome_tilde(params);
    let (a, l, c) = (params.alpha, params.lambda_weight, params.congress_ideal);
    (1.0 + a - l) / a * x * x + l * (l * c * c + 2.0 * c * x)
}

/// Turns a squared shortfall into a discretion, taking the root below `R`.
pub fn discretion_from_shortfall(shortfall_sq: f64, shock_bound: f64) -> f64 {
    if shortfall_sq > shock_bound * shock_bound {
        0.0
    } else {
        (shock_bound - shortfall_sq.max(0.0).sqrt()).clamp(0.0, shock_bound)
    }
}

pub fn optimal_discretion_foc(params: &ModelParams) -> f64 {
    discretion_from_shortfall(discretion_shortfall_sq(params), params.shock_bound)
}

/// The printed closed forms for a purely money-motivated (`lambda = 0`) or
/// purely policy-motivated (`lambda = 1`) Congress.
pub fn optimal_discretion_printed_extremes(params: &ModelParams) -> Result<f64, ModelError> {
    let r = params.shock_bound;
    let a = params.alpha;
    let pressure = params.lobbying_pressure();
    let shortfall = if params.lambda_weight == 0.0 {
        (1.0 + a) / a * (params.agency_ideal - pressure).abs()
    } else if params.lambda_weight == 1.0 {
        (params.agency_ideal - params.congress_ideal - pressure).abs()
    } else {
        return Err(ModelError::LambdaNotExtreme(params.lambda_weight));
    };
    Ok((r - shortfall).clamp(0.0, r))
}

fn thresholds_within(choice: &LegislativeChoice, params: &ModelParams, strict: bool) -> bool {
    let r = params.shock_bound;
    let t = regime_thresholds(choice, params);
    let slack = if strict { 0.0 } else { 1e-12 * r.max(1.0) };
    let inside = |w: f64| if strict { -r < w && w < r } else { w.abs() <= r + slack };
    inside(t.omega_low) && inside(t.omega_high)
}

/// Chooses `(p_0, d)` without computing welfare.
pub fn optimal_choice(params: &ModelParams) -> (LegislativeChoice, bool, BranchLabel) {
    let r = params.shock_bound;
    let s = discretion_shortfall_sq(params);
    let candidate = LegislativeChoice {
        status_quo: optimal_status_quo(params),
        discretion: discretion_from_shortfall(s, r),
    };
    if s <= r * r && thresholds_within(&candidate, params, false) {
        let interior = thresholds_within(&candidate, params, true);
        return (candidate, interior, BranchLabel::ClosedFormFoc);
    }
    let fallback = numeric_optimal_legislation(
        params,
        &SearchBox::for_params(params),
        RegimeInterpretation::FinalPolicyBand,
    );
    (fallback.choice, fallback.interior, BranchLabel::NumericFallback)
}

/// Optimal legislation with welfare and the participation-constraint
/// contribution evaluated at the optimum.
pub fn optimal_legislation(params: &ModelParams) -> OptimalLegislation {
    let (choice, interior, branch_label) = optimal_choice(params);
    finish(choice, interior, branch_label, params)
}

/// Uses the printed extreme-case discretion rule instead of the first-order
/// condition. Only defined for `lambda` in `{0, 1}`.
pub fn optimal_legislation_as_printed(
    params: &ModelParams,
) -> Result<OptimalLegislation, ModelError> {
    let choice = LegislativeChoice {
        status_quo: optimal_status_quo(params),
        discretion: optimal_discretion_printed_extremes(params)?,
    };
    let interior = thresholds_within(&choice, params, true);
    Ok(finish(choice, interior, BranchLabel::PrintedExtremes, params))
}

fn finish(
    choice: LegislativeChoice,
    interior: bool,
    branch_label: BranchLabel,
    params: &ModelParams,
) -> OptimalLegislation {
    let mut legislated = OptimalLegislation {
        choice,
        welfare: expected_welfare(&choice, params),
        interior,
        branch_label,
    };
    legislated.welfare.contribution = truthful_contribution(params, &legislated).amount;
    legislated
}

/// `M = max(0, lambda/(1-lambda) * [EU_C(Congress optimum) - EU_C(legislated)])`.
pub fn truthful_contribution(params: &ModelParams, legislated: &OptimalLegislation) -> Contribution {
    let l = params.lambda_weight;
    if l >= 1.0 {
        return Contribution {
            amount: 0.0,
            defined: false,
        };
    }
    if l == 0.0 {
        return Contribution {
            amount: 0.0,
            defined: true,
        };
    }
    let policy_only = params.with(Param::Lambda, 1.0);
    let (congress_choice, _, _) = optimal_choice(&policy_only);
    let unilateral = expected_utility_congress(&congress_choice, params);
    let legislated_eu = expected_utility_congress(&legislated.choice, params);
    Contribution {
        amount: (l / (1.0 - l) * (unilateral - legislated_eu)).max(0.0),
        defined: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::outcome_tilde;

    fn params(alpha: f64, beta: f64, lambda: f64, r: f64, x_c: f64, x_a: f64) -> ModelParams {
        ModelParams::new(alpha, beta, lambda, r, x_c, x_a).unwrap()
    }

    fn choice(p0: f64, d: f64) -> LegislativeChoice {
        LegislativeChoice::new(p0, d).unwrap()
    }

    #[test]
    fn congress_eu_examples() {
        // x~ = 0.5 with alpha = beta = 1, x_A = 1.
        let p = params(1.0, 1.0, 0.5, 1.0, 0.2, 1.0);
        let full = choice(0.5, 3.0);
        let expected = -(outcome_tilde(&p) - p.congress_ideal).powi(2);
        assert!((expected_utility_congress(&full, &p) - expected).abs() < 1e-12);

        let p = params(1.0, 1.0, 0.5, 1.0, 0.5, 1.0);
        assert!((expected_utility_congress(&choice(0.5, 0.0), &p) + 1.0 / 3.0).abs() < 1e-12);
        assert!(expected_utility_congress(&choice(0.5, 1.0), &p).abs() < 1e-12);
    }

    #[test]
    fn group_eu_examples() {
        let p = params(1.0, 1.0, 0.5, 1.0, 0.5, 1.0);
        assert!((expected_utility_group(&choice(0.0, 0.0), &p) + 1.0 / 3.0).abs() < 1e-12);

        // x~ = 0: the interior term vanishes and the outer pieces are
        // (1/2) * (integral over [-1, -0.5] of (w + 0.5)^2 + over [0.5, 1] of (w - 0.5)^2).
        let captured = params(1.0, 2.0, 0.0, 1.0, 0.5, 1.0);
        let outer = 2.0 * 0.5f64.powi(3) / 3.0;
        assert!((expected_utility_group(&choice(0.0, 0.5), &captured) + outer / 2.0).abs() < 1e-12);

        let p = params(1.0, 0.0, 0.0, 1.0, 0.5, 0.25);
        let d = 1.0 - 0.125f64.sqrt();
        let reduced = -(1.0 - d).powi(3) / 3.0 - 0.125 * d;
        assert!((expected_utility_group(&choice(0.0, d), &p) - reduced).abs() < 1e-12);
        assert!((reduced + 0.0955).abs() < 1e-3);
    }

    #[test]
    fn joint_objective_weights() {
        let base = params(1.3, 0.2, 1.0, 1.5, 0.4, 0.9);
        let c = choice(0.2, 0.6);
        assert_eq!(joint_objective(&c, &base), expected_utility_congress(&c, &base));
        let zero = base.with(Param::Lambda, 0.0);
        assert_eq!(joint_objective(&c, &zero), expected_utility_group(&c, &zero));
        // x_C = 0 puts both players' expected utility at -1/3 when d = 0.
        let p = ModelParams { congress_ideal: 0.0, ..params(1.0, 1.0, 0.5, 1.0, 0.5, 1.0) };
        let c = choice(0.0, 0.0);
        assert!((expected_utility_congress(&c, &p) + 1.0 / 3.0).abs() < 1e-12);
        assert!((joint_objective(&c, &p) + 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn status_quo_examples() {
        assert_eq!(optimal_status_quo(&params(1.0, 1.0, 0.5, 1.0, 1.0, 1.0)), 0.5);
        assert_eq!(optimal_status_quo(&params(1.0, 1.0, 0.0, 1.0, 0.7, 1.0)), 0.0);
        assert_eq!(optimal_status_quo(&params(1.0, 1.0, 1.0, 1.0, 0.8, 1.0)), 0.8);
    }

    #[test]
    fn foc_discretion_examples() {
        assert_eq!(optimal_discretion_foc(&params(1.0, 1.0, 1.0, 1.0, 0.5, 1.0)), 1.0);
        let d = optimal_discretion_foc(&params(1.0, 0.0, 0.0, 1.0, 0.5, 0.25));
        assert!((d - (1.0 - 2f64.sqrt() * 0.25)).abs() < 1e-12);
        assert_eq!(optimal_discretion_foc(&params(1.0, 3.0, 0.0, 2.5, 0.5, 1.0)), 2.5);
    }

    #[test]
    fn foc_solution_zeroes_the_printed_derivative() {
        // The derivative in d with p_0 = lambda x_C substituted, written out
        // term by term from the legislative first-order condition.
        let p = params(1.4, 0.6, 0.35, 1.2, 0.7, 0.9);
        let x = outcome_tilde(&p);
        let (a, l, c, r) = (p.alpha, p.lambda_weight, p.congress_ideal, p.shock_bound);
        let p0 = optimal_status_quo(&p);
        let d = optimal_discretion_foc(&p);
        let derivative = (2.0 * a * l * c * x - (1.0 + a - l) * x * x
            + a * ((d - r).powi(2) + p0 * (p0 - 2.0 * l * c)))
            / (a * r);
        assert!(derivative.abs() < 1e-12);
    }

    #[test]
    fn large_shortfall_clamps_to_zero() {
        let p = params(0.2, 0.0, 0.0, 0.5, 1.0, 1.0);
        assert!(discretion_shortfall_sq(&p) > 0.25);
        assert_eq!(optimal_discretion_foc(&p), 0.0);
    }

    #[test]
    fn printed_extremes() {
        let p = params(1.0, 1.0, 1.0, 1.0, 0.5, 1.0);
        assert_eq!(optimal_discretion_printed_extremes(&p).unwrap(), 1.0);
        let p = params(1.0, 0.0, 0.0, 1.0, 0.5, 0.25);
        assert_eq!(optimal_discretion_printed_extremes(&p).unwrap(), 0.5);
        let p = params(2.0, 2.0, 0.0, 1.0, 0.5, 0.5);
        assert_eq!(optimal_discretion_printed_extremes(&p).unwrap(), 1.0);
        let p = params(2.0, 2.0, 0.3, 1.0, 0.5, 0.5);
        assert!(matches!(
            optimal_discretion_printed_extremes(&p),
            Err(ModelError::LambdaNotExtreme(_))
        ));
    }

    #[test]
    fn printed_cross_term_differs_off_the_extremes() {
        let p = params(1.0, 1.0, 0.5, 1.0, 0.5, 1.0);
        assert!((discretion_shortfall_sq(&p) - 0.1875).abs() < 1e-12);
        assert!((discretion_shortfall_sq_as_printed(&p) - 0.6875).abs() < 1e-12);
        let p = params(1.0, 1.0, 0.0, 1.0, 0.5, 1.0);
        assert_eq!(discretion_shortfall_sq(&p), discretion_shortfall_sq_as_printed(&p));
    }

    #[test]
    fn optimal_legislation_examples() {
        let p = params(1.0, 1.0, 1.0, 1.0, 0.5, 1.0);
        let opt = optimal_legislation(&p);
        assert_eq!(opt.choice.status_quo, 0.5);
        assert_eq!(opt.choice.discretion, 1.0);
        assert!(opt.welfare.joint_value.abs() < 1e-12);
        assert_eq!(opt.branch_label, BranchLabel::ClosedFormFoc);

        let p = params(1.0, 1.0, 0.5, 1.0, 1.0, 1.0);
        assert_eq!(optimal_legislation(&p).choice.status_quo, 0.5);

        let p = params(1.0, 2.0, 0.0, 1.5, 1.0, 1.0);
        let opt = optimal_legislation(&p);
        assert_eq!(opt.choice.status_quo, 0.0);
        assert_eq!(opt.choice.discretion, 1.5);
    }

    #[test]
    fn fallback_when_foc_clamps() {
        let p = params(0.2, 0.0, 0.0, 0.5, 1.0, 1.0);
        let opt = optimal_legislation(&p);
        assert_eq!(opt.branch_label, BranchLabel::NumericFallback);
        assert!(opt.choice.discretion < 1e-3);
        assert!(opt.choice.status_quo.abs() < 1e-3);
    }

    #[test]
    fn contribution_examples() {
        let p = params(1.0, 1.0, 1.0, 1.0, 0.5, 1.0);
        let c = truthful_contribution(&p, &optimal_legislation(&p));
        assert_eq!(c, Contribution { amount: 0.0, defined: false });

        let p = params(1.0, 1.0, 0.5, 1.0, 1.0, 1.0);
        let opt = optimal_legislation(&p);
        let congress_only = optimal_legislation(&p.with(Param::Lambda, 1.0));
        let gap = expected_utility_congress(&congress_only.choice, &p)
            - expected_utility_congress(&opt.choice, &p);
        let m = truthful_contribution(&p, &opt);
        assert!(m.defined);
        assert!(gap > 0.0);
        assert!((m.amount - gap).abs() < 1e-12);
        assert_eq!(opt.welfare.contribution, m.amount);

        let undistorted = OptimalLegislation { choice: congress_only.choice, ..opt };
        assert_eq!(truthful_contribution(&p, &undistorted).amount, 0.0);
    }
}
