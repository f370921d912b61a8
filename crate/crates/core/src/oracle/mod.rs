//! Brute-force ground truth for the closed forms: quadrature of realized
//! payoffs, grid-and-refine argmaxes for every optimization in the game, and
//! forward simulation.
//!
//! Nothing here calls the closed-form expected utilities or optimizers; the
//! oracles only evaluate realized payoffs from [`enacted_outcome`] and the
//! players' objectives.
//!
//! [`enacted_outcome`]: crate::model::enacted_outcome

pub mod quadrature;
pub mod search;
pub mod simulate;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::legislative::{BranchLabel, ExpectedWelfare, OptimalLegislation};
use crate::model::{
    best_response_effort, enacted_outcome_unchecked, outcome_tilde, regime_thresholds,
    LegislativeChoice, ModelParams, RegimeInterpretation,
};

pub use simulate::{derive_seed, simulate_paths, PathSample, SampleMean, ShockStream};

use quadrature::piecewise_simpson;
use search::{maximize_1d, maximize_2d, Box2};

/// Simpson intervals used by [`numeric_expected_utilities`] (4,097 nodes).
pub const DEFAULT_QUADRATURE_INTERVALS: usize = 4096;

/// Search domain and resolution for [`numeric_optimal_legislation`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBox {
    pub p0_min: f64,
    pub p0_max: f64,
    pub d_min: f64,
    pub d_max: f64,
    pub coarse_points: usize,
    pub refine_rounds: usize,
    /// Simpson intervals per objective evaluation. The integrands are
    /// quadratic between breakpoints, so a handful is already exact.
    pub quadrature_intervals: usize,
}

impl SearchBox {
    /// Default box: `p_0` in `±2 max(x_C, x_A, 1)`, `d` in `[0, 2R]`.
    pub fn for_params(params: &ModelParams) -> Self {
        let span = 2.0 * params.congress_ideal.max(params.agency_ideal).max(1.0);
        Self {
            p0_min: -span,
            p0_max: span,
            d_min: 0.0,
            d_max: 2.0 * params.shock_bound,
            coarse_points: 201,
            refine_rounds: 3,
            quadrature_intervals: 8,
        }
    }

    pub fn with_resolution(mut self, coarse_points: usize, refine_rounds: usize) -> Self {
        self.coarse_points = coarse_points;
        self.refine_rounds = refine_rounds;
        self
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |m: &str| Err(ModelError::InvalidSearchBox(m.to_string()));
        if !(self.p0_min.is_finite() && self.p0_max.is_finite()) || self.p0_min >= self.p0_max {
            return bad("p0_min must be finite and below p0_max");
        }
        if self.d_min != 0.0 {
            return bad("d_min must be 0");
        }
        if !self.d_max.is_finite() || self.d_max <= 0.0 {
            return bad("d_max must be positive and finite");
        }
        if self.coarse_points < 3 {
            return bad("coarse_points must be at least 3");
        }
        if self.quadrature_intervals < 2 {
            return bad("quadrature_intervals must be at least 2");
        }
        Ok(())
    }
}

/// Shock values where the realized payoffs change formula.
fn payoff_breakpoints(
    choice: &LegislativeChoice,
    params: &ModelParams,
    mode: RegimeInterpretation,
) -> Vec<f64> {
    match mode {
        RegimeInterpretation::FinalPolicyBand => {
            let t = regime_thresholds(choice, params);
            vec![t.omega_low, t.omega_high]
        }
        RegimeInterpretation::ProposalBand => {
            // Where the free proposal hits the band edges, and where lobbying
            // of a clamped proposal switches on.
            let drive = (1.0 + params.alpha) / params.alpha * outcome_tilde(params);
            let (p0, d) = (choice.status_quo, choice.discretion);
            vec![drive - p0 - d, drive - p0 + d, -(p0 + d), -(p0 - d)]
        }
    }
}

/// Expected utilities by Simpson quadrature of realized payoffs, with
/// [`DEFAULT_QUADRATURE_INTERVALS`] intervals.
pub fn numeric_expected_utilities(
    choice: &LegislativeChoice,
    params: &ModelParams,
    mode: RegimeInterpretation,
) -> ExpectedWelfare {
    numeric_expected_utilities_with(choice, params, mode, DEFAULT_QUADRATURE_INTERVALS)
}

pub fn numeric_expected_utilities_with(
    choice: &LegislativeChoice,
    params: &ModelParams,
    mode: RegimeInterpretation,
    intervals: usize,
) -> ExpectedWelfare {
    let r = params.shock_bound;
    let cuts = payoff_breakpoints(choice, params, mode);
    let density = 1.0 / (2.0 * r);
    let integrate = |pick: fn(&crate::model::StageOutcome) -> f64| {
        density
            * piecewise_simpson(
                |w| pick(&enacted_outcome_unchecked(w, choice, params, mode)),
                -r,
                r,
                &cuts,
                intervals,
            )
    };
    ExpectedWelfare::new(
        integrate(|s| s.payoff_congress_policy),
        integrate(|s| s.payoff_group),
        params,
    )
}

fn numeric_joint(choice: &LegislativeChoice, params: &ModelParams, mode: RegimeInterpretation, intervals: usize) -> f64 {
    let r = params.shock_bound;
    let l = params.lambda_weight;
    let cuts = payoff_breakpoints(choice, params, mode);
    piecewise_simpson(
        |w| {
            let s = enacted_outcome_unchecked(w, choice, params, mode);
            l * s.payoff_congress_policy + (1.0 - l) * s.payoff_group
        },
        -r,
        r,
        &cuts,
        intervals,
    ) / (2.0 * r)
}

const LINE_POINTS: usize = 201;
const LINE_ROUNDS: usize = 8;

/// Grid-and-refine argmax of the group's objective over `e` in
/// `[0, max(0, p_A + w)]`.
pub fn numeric_best_effort(proposal: f64, shock: f64, params: &ModelParams) -> f64 {
    let upper = (proposal + shock).max(0.0);
    if upper == 0.0 {
        return 0.0;
    }
    let objective = |e: f64| -(proposal - e + shock).powi(2) - params.alpha * e * e;
    maximize_1d(objective, 0.0, upper, LINE_POINTS, LINE_ROUNDS).best().point
}

/// Grid-and-refine argmax of the agency's objective, anticipating the
/// group's best response. With a band under [`RegimeInterpretation::ProposalBand`]
/// the search is limited to `[p_0 - d, p_0 + d]`; otherwise the band is ignored.
pub fn numeric_best_proposal(
    shock: f64,
    params: &ModelParams,
    band: Option<&LegislativeChoice>,
    mode: RegimeInterpretation,
) -> f64 {
    let objective = |p: f64| {
        let e = best_response_effort(p, shock, params);
        -(p - e + shock - params.agency_ideal).powi(2) - params.beta * e
    };
    let (lo, hi) = match (band, mode) {
        (Some(b), RegimeInterpretation::ProposalBand) => {
            (b.status_quo - b.discretion, b.status_quo + b.discretion)
        }
        _ => {
            // The agency never wants an outcome outside [0, x_A], so p_A + w
            // stays within [0, (1 + alpha) x_A / alpha]; pad that generously.
            let reach = 2.0 * (1.0 + params.alpha) / params.alpha * params.agency_ideal.max(1.0) + 1.0;
            (-shock - reach, -shock + reach)
        }
    };
    if lo == hi {
        return lo;
    }
    maximize_1d(objective, lo, hi, LINE_POINTS, LINE_ROUNDS).best().point
}

/// Grid-and-refine argmax of the joint objective over the search box, using
/// quadrature of realized payoffs. Ties go to smaller `d`, then smaller `|p_0|`.
///
/// The grid runs over the band edges `u = p_0 + d` and `v = p_0 - d` rather
/// than over `(p_0, d)`: the lower regime threshold moves with `u` only and
/// the upper with `v` only, so the objective is a sum of a function of `u`
/// and a function of `v`, and its flat directions (a regime pushed off the
/// support) are grid axes. Points outside the `(p_0, d)` box score minus
/// infinity.
///
/// The returned welfare is evaluated by quadrature at the argmax and carries
/// no contribution.
pub fn numeric_optimal_legislation(
    params: &ModelParams,
    search: &SearchBox,
    mode: RegimeInterpretation,
) -> OptimalLegislation {
    let r = params.shock_bound;
    let to_choice = |u: f64, v: f64| LegislativeChoice {
        status_quo: 0.5 * (u + v),
        discretion: 0.5 * (u - v),
    };
    let inside = |c: &LegislativeChoice| {
        (search.p0_min..=search.p0_max).contains(&c.status_quo)
            && (search.d_min..=search.d_max).contains(&c.discretion)
    };
    let edges = (search.p0_min - search.d_max, search.p0_max + search.d_max);
    let trace = maximize_2d(
        |u, v| {
            let choice = to_choice(u, v);
            if inside(&choice) {
                numeric_joint(&choice, params, mode, search.quadrature_intervals)
            } else {
                f64::NEG_INFINITY
            }
        },
        Box2 { x: edges, y: edges },
        search.coarse_points,
        search.refine_rounds,
        |&(u, v)| {
            let c = to_choice(u, v);
            (c.discretion, c.status_quo.abs())
        },
    );
    let (u, v) = trace.best().point;
    let choice = to_choice(u, v);
    let t = regime_thresholds(&choice, params);
    OptimalLegislation {
        choice,
        welfare: numeric_expected_utilities(&choice, params, mode),
        interior: -r < t.omega_low && t.omega_high < r,
        branch_label: BranchLabel::NumericFallback,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legislative::{expected_utility_congress, expected_utility_group};

    fn params(alpha: f64, beta: f64, lambda: f64, r: f64, x_c: f64, x_a: f64) -> ModelParams {
        ModelParams::new(alpha, beta, lambda, r, x_c, x_a).unwrap()
    }

    #[test]
    fn quadrature_examples() {
        let p = params(1.0, 1.0, 0.5, 1.0, 0.5, 1.0);
        let w = numeric_expected_utilities(&LegislativeChoice::new(0.5, 0.0).unwrap(), &p, Default::default());
        assert!((w.eu_congress_policy + 1.0 / 3.0).abs() < 1e-12);

        let p = params(1.0, 1.0, 0.5, 1.7, 0.5, 1.0);
        let w = numeric_expected_utilities(&LegislativeChoice::new(0.0, 0.0).unwrap(), &p, Default::default());
        assert!((w.eu_group + 1.7 * 1.7 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn quadrature_matches_closed_form_with_clamped_regimes() {
        let p = params(0.7, 0.3, 0.4, 1.0, 0.9, 1.4);
        for (p0, d) in [(-3.0, 0.2), (3.0, 0.5), (0.1, 2.5), (0.4, 0.3)] {
            let c = LegislativeChoice::new(p0, d).unwrap();
            let w = numeric_expected_utilities(&c, &p, Default::default());
            assert!((w.eu_congress_policy - expected_utility_congress(&c, &p)).abs() < 1e-9);
            assert!((w.eu_group - expected_utility_group(&c, &p)).abs() < 1e-9);
        }
    }

    #[test]
    fn effort_oracle_examples() {
        let p = params(1.0, 0.0, 0.5, 1.0, 1.0, 1.0);
        assert!((numeric_best_effort(1.0, 0.0, &p) - 0.5).abs() < 1e-6);
        assert_eq!(numeric_best_effort(-1.0, 0.0, &p), 0.0);
        let p = params(2.0, 0.0, 0.5, 1.0, 1.0, 1.0);
        assert!((numeric_best_effort(2.0, 1.0, &p) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn proposal_oracle_examples() {
        let mode = RegimeInterpretation::FinalPolicyBand;
        let p = params(1.0, 0.0, 0.5, 1.0, 1.0, 1.0);
        assert!((numeric_best_proposal(0.0, &p, None, mode) - 2.0).abs() < 1e-6);
        let p = params(1.0, 1.0, 0.5, 1.0, 1.0, 1.0);
        assert!((numeric_best_proposal(0.0, &p, None, mode) - 1.0).abs() < 1e-6);
        let captured = params(1.0, 3.0, 0.5, 1.0, 1.0, 1.0);
        let shock = 0.4;
        let pa = numeric_best_proposal(shock, &captured, None, mode);
        let e = best_response_effort(pa, shock, &captured);
        assert!((pa - e + shock).abs() < 1e-6);
    }

    #[test]
    fn banded_proposal_oracle_clamps() {
        let p = params(1.0, 0.0, 0.5, 1.0, 1.0, 1.0);
        let band = LegislativeChoice::new(0.0, 0.5).unwrap();
        let pa = numeric_best_proposal(0.0, &p, Some(&band), RegimeInterpretation::ProposalBand);
        assert!((pa - 0.5).abs() < 1e-9);
    }

    #[test]
    fn legislative_oracle_examples() {
        let mode = RegimeInterpretation::FinalPolicyBand;
        let p = params(1.0, 1.0, 1.0, 1.0, 0.5, 1.0);
        let opt = numeric_optimal_legislation(&p, &SearchBox::for_params(&p), mode);
        assert!((opt.choice.status_quo - 0.5).abs() < 1e-3);
        assert!((opt.choice.discretion - 1.0).abs() < 1e-3);

        let p = params(1.0, 0.0, 0.0, 1.0, 0.5, 0.25);
        let opt = numeric_optimal_legislation(&p, &SearchBox::for_params(&p), mode);
        assert!(opt.choice.status_quo.abs() < 1e-3);
        assert!((opt.choice.discretion - 0.646_446_6).abs() < 1e-3);

        let p = params(1.0, 2.5, 0.0, 1.3, 0.5, 1.0);
        let opt = numeric_optimal_legislation(&p, &SearchBox::for_params(&p), mode);
        assert!(opt.choice.status_quo.abs() < 1e-3);
        assert!((opt.choice.discretion - 1.3).abs() < 1e-3);
    }

    #[test]
    fn search_box_validation() {
        let p = params(1.0, 1.0, 1.0, 1.0, 0.5, 1.0);
        assert!(SearchBox::for_params(&p).validate().is_ok());
        assert!(SearchBox::for_params(&p).with_resolution(2, 1).validate().is_err());
        let mut b = SearchBox::for_params(&p);
        b.p0_max = b.p0_min;
        assert!(b.validate().is_err());
    }
}
