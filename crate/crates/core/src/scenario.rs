//! Strike scenarios as parameter masks, and the combined per-scenario
//! analysis.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::equilibrium::{self, EquilibriumResult};
use crate::error::{Error, Result};
use crate::model::{validate, ModelParameters, SimulationConfig, State};
use crate::simulator;
use crate::stability::{self, StabilityReport};

/// Absolute tolerance for matching computed eigenvalues to closed forms.
pub const EIGENVALUE_MATCH_TOL: f64 = 1e-9;

/// The four built-in scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BuiltinScenario {
    /// Federal universities on strike; state and private in session.
    #[serde(rename = "THEOREM_2_1")]
    Theorem21,
    /// As above, with no federal-to-private movement.
    #[serde(rename = "THEOREM_2_2")]
    Theorem22,
    /// Federal and state on strike; only private universities in session.
    #[serde(rename = "THEOREM_2_3")]
    Theorem23,
    /// No movement between compartments and a single admitting compartment.
    #[serde(rename = "MOVEMENT_RESTRICTED")]
    MovementRestricted,
}

impl BuiltinScenario {
    pub const ALL: [BuiltinScenario; 4] = [
        BuiltinScenario::Theorem21,
        BuiltinScenario::Theorem22,
        BuiltinScenario::Theorem23,
        BuiltinScenario::MovementRestricted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinScenario::Theorem21 => "THEOREM_2_1",
            BuiltinScenario::Theorem22 => "THEOREM_2_2",
            BuiltinScenario::Theorem23 => "THEOREM_2_3",
            BuiltinScenario::MovementRestricted => "MOVEMENT_RESTRICTED",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    fn zeroed(self) -> &'static [&'static str] {
        match self {
            BuiltinScenario::Theorem21 => &["alpha_ps", "alpha_pf", "alpha_sf", "lambda_f"],
            BuiltinScenario::Theorem22 => {
                &["alpha_ps", "alpha_pf", "alpha_sf", "alpha_fp", "lambda_f"]
            }
            BuiltinScenario::Theorem23 => &[
                "alpha_sf", "alpha_fs", "alpha_ps", "alpha_pf", "lambda_f", "lambda_s",
            ],
            BuiltinScenario::MovementRestricted => &[
                "alpha_sf",
                "alpha_pf",
                "alpha_fs",
                "alpha_fp",
                "alpha_ps",
                "alpha_sp",
                "lambda_f",
                "lambda_s",
                "lambda_p",
                "lambda_cap_s",
                "lambda_cap_p",
            ],
        }
    }

    fn description(self) -> &'static str {
        match self {
            BuiltinScenario::Theorem21 => {
                "federal strike with state and private universities in session; \
                 no movement out of private or from state to federal, no federal graduation"
            }
            BuiltinScenario::Theorem22 => {
                "federal strike with some state universities in session; \
                 additionally no federal-to-private movement"
            }
            BuiltinScenario::Theorem23 => {
                "federal and state strike; only movement into private universities \
                 and private graduation remain"
            }
            BuiltinScenario::MovementRestricted => {
                "no movement between compartments; only federal admissions and deaths"
            }
        }
    }

    pub fn mask(self) -> ScenarioMask {
        ScenarioMask {
            name: self.name().to_string(),
            zeroed_fields: self.zeroed().iter().map(|s| s.to_string()).collect(),
            description: self.description().to_string(),
        }
    }
}

impl fmt::Display for BuiltinScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A named set of parameters forced to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioMask {
    pub name: String,
    pub zeroed_fields: BTreeSet<String>,
    pub description: String,
}

impl ScenarioMask {
    pub fn custom<I, S>(name: &str, zeroed: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            name: name.to_string(),
            zeroed_fields: zeroed.into_iter().map(Into::into).collect(),
            description: String::new(),
        }
    }

    pub fn builtin(&self) -> Option<BuiltinScenario> {
        BuiltinScenario::from_name(&self.name)
            .filter(|b| b.mask().zeroed_fields == self.zeroed_fields)
    }
}

/// Copy of `params` with every masked field set to zero.
pub fn apply_mask(params: &ModelParameters, mask: &ScenarioMask) -> Result<ModelParameters> {
    params.check_rates()?;
    let mut out = *params;
    for field in &mask.zeroed_fields {
        out.set(field, 0.0)?;
    }
    Ok(out)
}

/// Closed-form eigenvalues stated for each strike scenario, evaluated on the
/// masked parameters and sorted ascending.
///
/// These are the values read off the triangular Jacobians written for each
/// regime. For `THEOREM_2_1` and `THEOREM_2_3` they coincide with the
/// eigenvalues of the model's own Jacobian only when `α_sp = 0` and
/// `α_fp = 0` respectively; see [`derived_eigenvalues`].
pub fn expected_eigenvalues(mask_name: &str, params: &ModelParameters) -> Result<[f64; 3]> {
    let scenario = BuiltinScenario::from_name(mask_name)
        .filter(|s| *s != BuiltinScenario::MovementRestricted)
        .ok_or_else(|| Error::NoClosedForm(mask_name.to_string()))?;
    let p = apply_mask(params, &scenario.mask())?;
    let d = p.d;
    let mut v = match scenario {
        BuiltinScenario::Theorem21 => [
            -d - p.lambda_s,
            -d - p.alpha_ps - p.lambda_p,
            -d - p.alpha_fs - p.alpha_fp,
        ],
        BuiltinScenario::Theorem22 => [
            -d - p.lambda_p,
            -d - p.alpha_sp - p.lambda_s,
            -d - p.alpha_fs,
        ],
        BuiltinScenario::Theorem23 => [-d, -d - p.lambda_p, -d - p.alpha_sp],
        BuiltinScenario::MovementRestricted => unreachable!(),
    };
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Eigenvalues of the model's Jacobian under each strike mask, which is
/// lower triangular in every case: the negated outflow rates of the three
/// compartments, sorted ascending.
pub fn derived_eigenvalues(mask_name: &str, params: &ModelParameters) -> Result<[f64; 3]> {
    let scenario = BuiltinScenario::from_name(mask_name)
        .ok_or_else(|| Error::NoClosedForm(mask_name.to_string()))?;
    let p = apply_mask(params, &scenario.mask())?;
    let mut v = p.outflow().map(|x| -x);
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Final state of the scenario's simulation and its distance to equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySummary {
    pub final_time: f64,
    pub final_state: State,
    pub distance_to_equilibrium: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub mask: ScenarioMask,
    pub masked_params: ModelParameters,
    pub equilibrium: EquilibriumResult,
    pub stability: StabilityReport,
    pub expected_eigenvalues: Option<[f64; 3]>,
    pub eigenvalue_match: Option<bool>,
    pub trajectory_summary: TrajectorySummary,
}

/// Stage of [`run_scenario`] that failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Mask,
    Equilibrium,
    Stability,
    Simulation,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Mask => "mask",
            Stage::Equilibrium => "equilibrium",
            Stage::Stability => "stability",
            Stage::Simulation => "simulation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{stage} stage failed: {source}")]
pub struct ScenarioError {
    pub stage: Stage,
    #[source]
    pub source: Error,
}

fn at(stage: Stage) -> impl FnOnce(Error) -> ScenarioError {
    move |source| ScenarioError { stage, source }
}

/// Whether `computed` matches `expected` entrywise within `tol` after sorting.
pub fn eigenvalues_match(
    computed: &[num_complex::Complex64; 3],
    expected: &[f64; 3],
    tol: f64,
) -> bool {
    let mut exp = *expected;
    exp.sort_by(f64::total_cmp);
    computed
        .iter()
        .zip(exp)
        .all(|(z, e)| (z.re - e).abs() <= tol && z.im.abs() <= tol)
}

/// Masks the parameters, then solves for the equilibrium, analyses its
/// stability and simulates from the configured initial state.
pub fn run_scenario(
    params: &ModelParameters,
    mask: &ScenarioMask,
    config: &SimulationConfig,
) -> std::result::Result<ScenarioReport, ScenarioError> {
    validate(params).map_err(at(Stage::Mask))?;
    let masked = apply_mask(params, mask).map_err(at(Stage::Mask))?;

    let equilibrium = equilibrium::solve_equilibrium(&masked).map_err(at(Stage::Equilibrium))?;
    let stability = stability::analyze(&masked).map_err(at(Stage::Stability))?;

    let expected = match mask.builtin() {
        Some(b) if b != BuiltinScenario::MovementRestricted => {
            Some(expected_eigenvalues(b.name(), &masked).map_err(at(Stage::Stability))?)
        }
        _ => None,
    };
    let eigenvalue_match =
        expected.map(|e| eigenvalues_match(&stability.eigenvalues, &e, EIGENVALUE_MATCH_TOL));

    let traj = simulator::simulate(&masked, config).map_err(at(Stage::Simulation))?;
    let (final_time, final_state) = traj.last();
    let trajectory_summary = TrajectorySummary {
        final_time,
        final_state,
        distance_to_equilibrium: equilibrium.state.map(|s| s.distance(&final_state)),
    };

    Ok(ScenarioReport {
        mask: mask.clone(),
        masked_params: masked,
        equilibrium,
        stability,
        expected_eigenvalues: expected,
        eigenvalue_match,
        trajectory_summary,
    })
}
