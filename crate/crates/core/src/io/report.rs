//! JSON and plain-text rendering of analysis results.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::equilibrium::EquilibriumResult;
use crate::model::{ModelParameters, State};
use crate::scenario::{ScenarioReport, TrajectorySummary};
use crate::stability::{StabilityReport, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumJson {
    pub state: Option<State>,
    pub residual: Option<f64>,
    pub unique: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicJson {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityJson {
    pub jacobian: Vec<f64>,
    pub characteristic: CharacteristicJson,
    pub eigenvalues: Vec<ComplexJson>,
    pub verdict: Verdict,
    pub routh_hurwitz_stable: bool,
}

/// Wire form of a [`ScenarioReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioJson {
    pub scenario: String,
    pub zeroed_fields: Vec<String>,
    pub masked_parameters: ModelParameters,
    pub equilibrium: EquilibriumJson,
    pub jacobian: Vec<f64>,
    pub characteristic: CharacteristicJson,
    pub eigenvalues: Vec<ComplexJson>,
    pub verdict: Verdict,
    pub routh_hurwitz_stable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_eigenvalues: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalue_match: Option<bool>,
    pub trajectory_summary: TrajectorySummary,
}

impl From<&EquilibriumResult> for EquilibriumJson {
    fn from(e: &EquilibriumResult) -> Self {
        Self {
            state: e.state,
            residual: e.residual,
            unique: e.unique,
        }
    }
}

impl From<&StabilityReport> for StabilityJson {
    fn from(s: &StabilityReport) -> Self {
        Self {
            jacobian: s.jacobian.row_major().to_vec(),
            characteristic: CharacteristicJson {
                c2: s.poly.c2,
                c1: s.poly.c1,
                c0: s.poly.c0,
            },
            eigenvalues: s
                .eigenvalues
                .iter()
                .map(|z| ComplexJson { re: z.re, im: z.im })
                .collect(),
            verdict: s.verdict,
            routh_hurwitz_stable: s.routh_hurwitz_stable,
        }
    }
}

impl From<&ScenarioReport> for ScenarioJson {
    fn from(r: &ScenarioReport) -> Self {
        let st = StabilityJson::from(&r.stability);
        Self {
            scenario: r.mask.name.clone(),
            zeroed_fields: r.mask.zeroed_fields.iter().cloned().collect(),
            masked_parameters: r.masked_params,
            equilibrium: (&r.equilibrium).into(),
            jacobian: st.jacobian,
            characteristic: st.characteristic,
            eigenvalues: st.eigenvalues,
            verdict: st.verdict,
            routh_hurwitz_stable: st.routh_hurwitz_stable,
            expected_eigenvalues: r.expected_eigenvalues.map(|e| e.to_vec()),
            eigenvalue_match: r.eigenvalue_match,
            trajectory_summary: r.trajectory_summary,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.10e}"))
}

fn fmt_state(s: Option<State>) -> String {
    match s {
        Some(s) => format!(
            "U_f = {:.10e}, U_s = {:.10e}, U_p = {:.10e}",
            s.u_f, s.u_s, s.u_p
        ),
        None => "none (singular system)".to_string(),
    }
}

fn text_equilibrium(out: &mut String, e: &EquilibriumResult) {
    let _ = writeln!(out, "equilibrium   {}", fmt_state(e.state));
    let _ = writeln!(out, "  residual    {}", fmt_opt(e.residual));
    let _ = writeln!(out, "  unique      {}", e.unique);
}

fn text_stability(out: &mut String, s: &StabilityReport) {
    let _ = writeln!(out, "jacobian");
    for row in s.jacobian.matrix() {
        let _ = writeln!(
            out,
            "  [{:>18.10e} {:>18.10e} {:>18.10e}]",
            row[0], row[1], row[2]
        );
    }
    let _ = writeln!(
        out,
        "characteristic  λ³ + c2·λ² + c1·λ + c0: c2 = {:.10e}, c1 = {:.10e}, c0 = {:.10e}",
        s.poly.c2, s.poly.c1, s.poly.c0
    );
    let _ = writeln!(out, "eigenvalues");
    for z in &s.eigenvalues {
        let _ = writeln!(out, "  {:>18.10e} {:+.10e}i", z.re, z.im);
    }
    let _ = writeln!(out, "verdict         {}", s.verdict);
    let _ = writeln!(
        out,
        "routh-hurwitz   {}",
        if s.routh_hurwitz_stable {
            "stable"
        } else {
            "not stable"
        }
    );
}

pub fn render_equilibrium(e: &EquilibriumResult, format: Format) -> String {
    match format {
        Format::Json => to_json(&EquilibriumJson::from(e)),
        Format::Text => {
            let mut out = String::new();
            text_equilibrium(&mut out, e);
            out
        }
    }
}

pub fn render_stability(s: &StabilityReport, format: Format) -> String {
    match format {
        Format::Json => to_json(&StabilityJson::from(s)),
        Format::Text => {
            let mut out = String::new();
            text_stability(&mut out, s);
            out
        }
    }
}

pub fn render_report(report: &ScenarioReport, format: Format) -> String {
    match format {
        Format::Json => to_json(&ScenarioJson::from(report)),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "scenario      {}", report.mask.name);
            if !report.mask.description.is_empty() {
                let _ = writeln!(out, "              {}", report.mask.description);
            }
            let zeroed: Vec<&str> = report
                .mask
                .zeroed_fields
                .iter()
                .map(String::as_str)
                .collect();
            let _ = writeln!(out, "zeroed        {}", zeroed.join(", "));
            let _ = writeln!(out, "parameters");
            for (name, v) in ModelParameters::FIELD_NAMES
                .iter()
                .zip(report.masked_params.to_array())
            {
                let _ = writeln!(out, "  {name:<13} {v}");
            }
            text_equilibrium(&mut out, &report.equilibrium);
            text_stability(&mut out, &report.stability);
            if let Some(exp) = report.expected_eigenvalues {
                let _ = writeln!(
                    out,
                    "closed form     {:.10e}, {:.10e}, {:.10e}",
                    exp[0], exp[1], exp[2]
                );
            }
            if let Some(m) = report.eigenvalue_match {
                let _ = writeln!(out, "closed form match {m}");
            }
            let t = &report.trajectory_summary;
            let _ = writeln!(
                out,
                "simulation    t = {}: {}",
                t.final_time,
                fmt_state(Some(t.final_state))
            );
            let _ = writeln!(
                out,
                "  distance to equilibrium {}",
                fmt_opt(t.distance_to_equilibrium)
            );
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SimulationConfig;
    use crate::scenario::{run_scenario, BuiltinScenario};

    fn params() -> ModelParameters {
        ModelParameters {
            lambda_cap_f: 10.0,
            lambda_cap_s: 5.0,
            lambda_cap_p: 2.0,
            d: 0.02,
            lambda_p: 0.25,
            alpha_sp: 0.3,
            ..ModelParameters::uniform(0.1)
        }
    }

    #[test]
    fn json_has_the_documented_keys() {
        let p = ModelParameters {
            alpha_fp: 0.0,
            ..params()
        };
        let r = run_scenario(
            &p,
            &BuiltinScenario::Theorem23.mask(),
            &SimulationConfig::new(100.0, 1.0, 0.1),
        )
        .unwrap();
        let json = render_report(&r, Format::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        for key in [
            "scenario",
            "masked_parameters",
            "equilibrium",
            "jacobian",
            "characteristic",
            "eigenvalues",
            "verdict",
            "routh_hurwitz_stable",
            "expected_eigenvalues",
            "eigenvalue_match",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["verdict"], "AsymptoticallyStable");
        assert_eq!(v["jacobian"].as_array().unwrap().len(), 9);
        assert!(
            v["equilibrium"].get("state").is_some() && v["equilibrium"].get("residual").is_some()
        );
        assert_eq!(v["eigenvalue_match"], true);
    }

    #[test]
    fn closed_forms_are_omitted_when_absent() {
        let r = run_scenario(
            &params(),
            &BuiltinScenario::MovementRestricted.mask(),
            &SimulationConfig::new(0.0, 1.0, 0.1),
        )
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&render_report(&r, Format::Json)).unwrap();
        assert!(v.get("expected_eigenvalues").is_none());
        assert!(v.get("eigenvalue_match").is_none());
    }

    #[test]
    fn json_round_trips_numbers_exactly() {
        let r = run_scenario(
            &params(),
            &BuiltinScenario::Theorem21.mask(),
            &SimulationConfig::new(77.0, 3.0, 0.01),
        )
        .unwrap();
        let wire = ScenarioJson::from(&r);
        let back: ScenarioJson = serde_json::from_str(&render_report(&r, Format::Json)).unwrap();
        assert_eq!(back, wire);
        assert_eq!(back.masked_parameters, r.masked_params);
        for (z, w) in r.stability.eigenvalues.iter().zip(&back.eigenvalues) {
            assert_eq!(
                (z.re.to_bits(), z.im.to_bits()),
                (w.re.to_bits(), w.im.to_bits())
            );
        }
    }

    #[test]
    fn text_mentions_the_verdict() {
        let r = run_scenario(
            &params(),
            &BuiltinScenario::Theorem22.mask(),
            &SimulationConfig::new(1.0, 1.0, 0.5),
        )
        .unwrap();
        let text = render_report(&r, Format::Text);
        assert!(text.contains("THEOREM_2_2"));
        assert!(text.contains("AsymptoticallyStable"));
        assert!(text.contains("closed form match true"));
    }
}
