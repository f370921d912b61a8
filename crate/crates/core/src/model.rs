//! Stage game: the interest group's lobbying response, the agency's rule
//! proposal, the equilibrium outcome, and the enacted outcome once Congress
//! has fixed a status quo and a discretion band.
//!
//! The interest group's ideal point is normalized to zero, so every function
//! here measures policy relative to the industry's preferred outcome.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, ModelError};

/// Primitives of the game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Weight on the industry's quadratic lobbying cost `alpha * e^2`.
    pub alpha: f64,
    /// Per-unit burden on the agency when its proposal is lobbied down.
    pub beta: f64,
    /// Congress's weight on policy; `1 - lambda_weight` goes to contributions.
    pub lambda_weight: f64,
    /// Half-width `R` of the uniform shock support.
    pub shock_bound: f64,
    pub congress_ideal: f64,
    pub agency_ideal: f64,
}

/// How strictly [`ModelParams::validate`] treats the sign assumptions on the
/// ideal points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Validation {
    #[default]
    Strict,
    /// Non-positive ideal points are reported as warnings instead of errors.
    Permissive,
}

impl ModelParams {
    /// Builds parameters and validates them strictly.
    pub fn new(
        alpha: f64,
        beta: f64,
        lambda_weight: f64,
        shock_bound: f64,
        congress_ideal: f64,
        agency_ideal: f64,
    ) -> Result<Self, ModelError> {
        let params = Self {
            alpha,
            beta,
            lambda_weight,
            shock_bound,
            congress_ideal,
            agency_ideal,
        };
        params.validate(Validation::Strict)?;
        Ok(params)
    }

    /// Checks the parameter invariants. Returns the warnings produced in
    /// permissive mode (always empty in strict mode).
    pub fn validate(&self, mode: Validation) -> Result<Vec<String>, ModelError> {
        let finite = [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("lambda", self.lambda_weight),
            ("shock_bound", self.shock_bound),
            ("congress_ideal", self.congress_ideal),
            ("agency_ideal", self.agency_ideal),
        ];
        for (field, value) in finite {
            if !value.is_finite() {
                return Err(invalid(field, format!("must be finite, got {value}")));
            }
        }
        if self.alpha <= 0.0 {
            return Err(invalid("alpha", format!("must be > 0, got {}", self.alpha)));
        }
        if self.beta < 0.0 {
            return Err(invalid("beta", format!("must be >= 0, got {}", self.beta)));
        }
        if !(0.0..=1.0).contains(&self.lambda_weight) {
            return Err(invalid(
                "lambda",
                format!("must lie in [0, 1], got {}", self.lambda_weight),
            ));
        }
        if self.shock_bound <= 0.0 {
            return Err(invalid(
                "shock_bound",
                format!("must be > 0, got {}", self.shock_bound),
            ));
        }

        let mut warnings = Vec::new();
        for (field, value) in [
            ("congress_ideal", self.congress_ideal),
            ("agency_ideal", self.agency_ideal),
        ] {
            if value <= 0.0 {
                let reason = format!("must be > 0 (industry ideal is normalized to 0), got {value}");
                match mode {
                    Validation::Strict => return Err(invalid(field, reason)),
                    Validation::Permissive => warnings.push(format!("{field} {reason}")),
                }
            }
        }
        Ok(warnings)
    }

    pub fn get(&self, param: Param) -> f64 {
        match param {
            Param::Alpha => self.alpha,
            Param::Beta => self.beta,
            Param::Lambda => self.lambda_weight,
            Param::ShockBound => self.shock_bound,
            Param::CongressIdeal => self.congress_ideal,
            Param::AgencyIdeal => self.agency_ideal,
        }
    }

    /// Copy with one primitive replaced. No validation is performed, which is
    /// what finite-difference probes need near the edges of the domain.
    pub fn with(mut self, param: Param, value: f64) -> Self {
        match param {
            Param::Alpha => self.alpha = value,
            Param::Beta => self.beta = value,
            Param::Lambda => self.lambda_weight = value,
            Param::ShockBound => self.shock_bound = value,
            Param::CongressIdeal => self.congress_ideal = value,
            Param::AgencyIdeal => self.agency_ideal = value,
        }
        self
    }

    /// Effective administrative lobbying pressure `beta / (2 alpha)`.
    pub fn lobbying_pressure(&self) -> f64 {
        self.beta / (2.0 * self.alpha)
    }

    /// True when the agency's unconstrained outcome lies strictly above the
    /// industry's ideal, i.e. lobbying actually takes place.
    pub fn is_interior(&self) -> bool {
        self.agency_ideal > self.lobbying_pressure()
    }

    /// The capture region `beta >= 2 alpha x_A`.
    pub fn is_captured(&self) -> bool {
        self.beta >= 2.0 * self.alpha * self.agency_ideal
    }
}

/// Names of the primitives, used by sweeps, configs and comparative statics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    Alpha,
    Beta,
    Lambda,
    ShockBound,
    CongressIdeal,
    AgencyIdeal,
}

impl Param {
    pub const ALL: [Param; 6] = [
        Param::Alpha,
        Param::Beta,
        Param::Lambda,
        Param::ShockBound,
        Param::CongressIdeal,
        Param::AgencyIdeal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha => "alpha",
            Param::Beta => "beta",
            Param::Lambda => "lambda",
            Param::ShockBound => "shock_bound",
            Param::CongressIdeal => "congress_ideal",
            Param::AgencyIdeal => "agency_ideal",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alpha" => Ok(Param::Alpha),
            "beta" => Ok(Param::Beta),
            "lambda" | "lambda_weight" => Ok(Param::Lambda),
            "shock_bound" | "R" => Ok(Param::ShockBound),
            "congress_ideal" | "x_c" => Ok(Param::CongressIdeal),
            "agency_ideal" | "x_a" => Ok(Param::AgencyIdeal),
            other => Err(format!("unknown parameter `{other}`")),
        }
    }
}

/// Status quo `p_0` and discretion half-width `d` written into the statute.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LegislativeChoice {
    pub status_quo: f64,
    pub discretion: f64,
}

impl LegislativeChoice {
    pub fn new(status_quo: f64, discretion: f64) -> Result<Self, ModelError> {
        if !status_quo.is_finite() {
            return Err(invalid("status_quo", "must be finite"));
        }
        if !discretion.is_finite() || discretion < 0.0 {
            return Err(invalid(
                "discretion",
                format!("must be finite and >= 0, got {discretion}"),
            ));
        }
        Ok(Self {
            status_quo,
            discretion,
        })
    }
}

/// Shock values at which the enacted outcome switches regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeThresholds {
    pub omega_low: f64,
    pub omega_high: f64,
}

/// Which regime of the piecewise outcome map a shock falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Shock below `omega_low`: the upper edge of the band binds.
    UpperEdge,
    Interior,
    /// Shock above `omega_high`: the lower edge of the band binds.
    LowerEdge,
}

/// Which quantity the discretion band constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeInterpretation {
    /// The band binds the enacted policy `p`; no lobbying when it binds.
    #[default]
    FinalPolicyBand,
    /// The band binds the proposal `p_A`; the group still lobbies at the edge.
    ProposalBand,
}

impl FromStr for RegimeInterpretation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "final-policy-band" => Ok(Self::FinalPolicyBand),
            "proposal-band" => Ok(Self::ProposalBand),
            other => Err(format!(
                "unknown mode `{other}` (expected final-policy-band or proposal-band)"
            )),
        }
    }
}

impl fmt::Display for RegimeInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::FinalPolicyBand => "final-policy-band",
            Self::ProposalBand => "proposal-band",
        })
    }
}

/// One realized play of the continuation game after the shock is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageOutcome {
    pub shock: f64,
    pub regime: Regime,
    pub proposal: f64,
    pub effort: f64,
    pub enacted_policy: f64,
    pub outcome: f64,
    pub lobby_cost: f64,
    /// `-(x - x_C)^2`, without the weight `lambda` and without transfers.
    pub payoff_congress_policy: f64,
    /// `-x^2 - alpha e^2`, gross of contributions.
    pub payoff_group: f64,
    pub payoff_agency: f64,
}

impl StageOutcome {
    fn settle(
        shock: f64,
        regime: Regime,
        proposal: f64,
        effort: f64,
        enacted_policy: f64,
        outcome: f64,
        params: &ModelParams,
    ) -> Self {
        let lobby_cost = params.alpha * effort * effort;
        Self {
            shock,
            regime,
            proposal,
            effort,
            enacted_policy,
            outcome,
            lobby_cost,
            payoff_congress_policy: -(outcome - params.congress_ideal).powi(2),
            payoff_group: -outcome * outcome - lobby_cost,
            payoff_agency: -(outcome - params.agency_ideal).powi(2) - params.beta * effort,
        }
    }
}

/// The group's best response to a proposal: `max(0, (p_A + w) / (1 + alpha))`.
pub fn best_response_effort(proposal: f64, shock: f64, params: &ModelParams) -> f64 {
    let drive = proposal + shock;
    if drive > 0.0 {
        drive / (1.0 + params.alpha)
    } else {
        0.0
    }
}

/// Equilibrium outcome when the band does not bind, `max(0, x_A - beta/(2 alpha))`.
pub fn outcome_tilde(params: &ModelParams) -> f64 {
    (params.agency_ideal - params.lobbying_pressure()).max(0.0)
}

/// The agency's proposal when the band does not bind.
///
/// In the capture region this is `-w`: the agency hands the industry its ideal
/// outcome and no lobbying happens.
pub fn unconstrained_proposal(shock: f64, params: &ModelParams) -> f64 {
    if params.is_interior() {
        let a = params.alpha;
        (1.0 + a) * (2.0 * params.agency_ideal * a - params.beta) / (2.0 * a * a) - shock
    } else {
        -shock
    }
}

/// Lobbying effort on the equilibrium path, `x~ / alpha`. Does not depend on the shock.
pub fn equilibrium_effort(params: &ModelParams) -> f64 {
    outcome_tilde(params) / params.alpha
}

/// The proposal that would land the outcome on Congress's ideal after lobbying.
pub fn congress_preferred_rule(shock: f64, params: &ModelParams) -> f64 {
    params.congress_ideal * (1.0 + params.alpha) / params.alpha - shock
}

/// Signed gap `((1 + alpha)/alpha) (x_A - x_C - beta/(2 alpha))` between the
/// agency's and Congress's preferred rules; positive when the agency is the
/// tougher regulator after lobbying. The shock cancels, and the unclamped
/// branch of the agency's proposal is used.
pub fn conflict_gap(params: &ModelParams) -> f64 {
    let a = params.alpha;
    (1.0 + a) / a * (params.agency_ideal - params.congress_ideal - params.lobbying_pressure())
}

/// The agency ideal point Congress would pick: `x_C + beta / (2 alpha)`.
pub fn ally_ideal(params: &ModelParams) -> f64 {
    params.congress_ideal + params.lobbying_pressure()
}

pub fn regime_thresholds(choice: &LegislativeChoice, params: &ModelParams) -> RegimeThresholds {
    let centre = outcome_tilde(params) - choice.status_quo;
    RegimeThresholds {
        omega_low: centre - choice.discretion,
        omega_high: centre + choice.discretion,
    }
}

/// Plays out the continuation game for a realized shock.
pub fn enacted_outcome(
    shock: f64,
    choice: &LegislativeChoice,
    params: &ModelParams,
    mode: RegimeInterpretation,
) -> Result<StageOutcome, ModelError> {
    if shock.is_nan() || shock.abs() > params.shock_bound {
        return Err(ModelError::ShockOutOfSupport {
            shock,
            bound: params.shock_bound,
        });
    }
    Ok(enacted_outcome_unchecked(shock, choice, params, mode))
}

pub(crate) fn enacted_outcome_unchecked(
    shock: f64,
    choice: &LegislativeChoice,
    params: &ModelParams,
    mode: RegimeInterpretation,
) -> StageOutcome {
    let upper = choice.status_quo + choice.discretion;
    let lower = choice.status_quo - choice.discretion;
    match mode {
        RegimeInterpretation::FinalPolicyBand => {
            let t = regime_thresholds(choice, params);
            if shock < t.omega_low {
                StageOutcome::settle(shock, Regime::UpperEdge, upper, 0.0, upper, upper + shock, params)
            } else if shock > t.omega_high {
                StageOutcome::settle(shock, Regime::LowerEdge, lower, 0.0, lower, lower + shock, params)
            } else {
                let x_tilde = outcome_tilde(params);
                let proposal = unconstrained_proposal(shock, params);
                let effort = x_tilde / params.alpha;
                StageOutcome::settle(
                    shock,
                    Regime::Interior,
                    proposal,
                    effort,
                    x_tilde - shock,
                    x_tilde,
                    params,
                )
            }
        }
        RegimeInterpretation::ProposalBand => {
            let free = unconstrained_proposal(shock, params);
            let (proposal, regime) = if free > upper {
                (upper, Regime::UpperEdge)
            } else if free < lower {
                (lower, Regime::LowerEdge)
            } else {
                (free, Regime::Interior)
            };
            let effort = best_response_effort(proposal, shock, params);
            let policy = proposal - effort;
            StageOutcome::settle(shock, regime, proposal, effort, policy, policy + shock, params)
        }
    }
}
