//! Parameters, state and right-hand side of the three-compartment model.
//!
//! Students live in one of three compartments: federal (`f`), state (`s`)
//! and private (`p`) universities. Each compartment receives a constant
//! admission flux `Λ`, loses students to death (`d`) and graduation (`λ`),
//! and exchanges students with the other two compartments through directed
//! movement rates `α_xy` (from `x` to `y`). The system is affine in the
//! state, so its Jacobian is constant.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The 13 rate constants of the model. All rates are per unit time.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ModelParameters {
    /// Admission rate into federal universities (students per unit time).
    pub lambda_cap_f: f64,
    /// Admission rate into state universities.
    pub lambda_cap_s: f64,
    /// Admission rate into private universities.
    pub lambda_cap_p: f64,
    /// Movement from state to federal.
    pub alpha_sf: f64,
    /// Movement from private to federal.
    pub alpha_pf: f64,
    /// Movement from federal to state.
    pub alpha_fs: f64,
    /// Movement from federal to private.
    pub alpha_fp: f64,
    /// Movement from private to state.
    pub alpha_ps: f64,
    /// Movement from state to private.
    pub alpha_sp: f64,
    /// Natural death rate.
    pub d: f64,
    /// Graduation rate in federal universities.
    pub lambda_f: f64,
    /// Graduation rate in state universities.
    pub lambda_s: f64,
    /// Graduation rate in private universities.
    pub lambda_p: f64,
}

impl ModelParameters {
    /// Field names in canonical order. These are also the config-file keys.
    pub const FIELD_NAMES: [&'static str; 13] = [
        "lambda_cap_f",
        "lambda_cap_s",
        "lambda_cap_p",
        "alpha_sf",
        "alpha_pf",
        "alpha_fs",
        "alpha_fp",
        "alpha_ps",
        "alpha_sp",
        "d",
        "lambda_f",
        "lambda_s",
        "lambda_p",
    ];

    /// Every rate set to `value`.
    pub fn uniform(value: f64) -> Self {
        Self::from_array([value; 13])
    }

    pub fn to_array(&self) -> [f64; 13] {
        [
            self.lambda_cap_f,
            self.lambda_cap_s,
            self.lambda_cap_p,
            self.alpha_sf,
            self.alpha_pf,
            self.alpha_fs,
            self.alpha_fp,
            self.alpha_ps,
            self.alpha_sp,
            self.d,
            self.lambda_f,
            self.lambda_s,
            self.lambda_p,
        ]
    }

    pub fn from_array(v: [f64; 13]) -> Self {
        Self {
            lambda_cap_f: v[0],
            lambda_cap_s: v[1],
            lambda_cap_p: v[2],
            alpha_sf: v[3],
            alpha_pf: v[4],
            alpha_fs: v[5],
            alpha_fp: v[6],
            alpha_ps: v[7],
            alpha_sp: v[8],
            d: v[9],
            lambda_f: v[10],
            lambda_s: v[11],
            lambda_p: v[12],
        }
    }

    fn index_of(name: &str) -> Result<usize> {
        Self::FIELD_NAMES
            .iter()
            .position(|f| *f == name)
            .ok_or_else(|| Error::UnknownField(name.to_string()))
    }

    /// Looks a rate up by its field name.
    pub fn get(&self, name: &str) -> Result<f64> {
        Ok(self.to_array()[Self::index_of(name)?])
    }

    /// Sets a rate by its field name.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let idx = Self::index_of(name)?;
        let mut v = self.to_array();
        v[idx] = value;
        *self = Self::from_array(v);
        Ok(())
    }

    /// Checks that every rate is finite and nonnegative.
    ///
    /// This is the precondition of [`rhs`] and the integrator. It does not
    /// require `d > 0`; use [`validate`] for the full invariant.
    pub fn check_rates(&self) -> Result<()> {
        for (name, value) in Self::FIELD_NAMES.iter().zip(self.to_array()) {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    field: name,
                    reason: format!("must be finite, got {value}"),
                });
            }
            if value < 0.0 {
                return Err(Error::InvalidParameter {
                    field: name,
                    reason: format!("must be nonnegative, got {value}"),
                });
            }
        }
        Ok(())
    }

    /// Total outflow rate of each compartment, `d + outbound movement + λ`.
    pub fn outflow(&self) -> [f64; 3] {
        [
            self.d + self.alpha_fs + self.alpha_fp + self.lambda_f,
            self.d + self.alpha_sf + self.alpha_sp + self.lambda_s,
            self.d + self.alpha_pf + self.alpha_ps + self.lambda_p,
        ]
    }

    pub fn admissions(&self) -> [f64; 3] {
        [self.lambda_cap_f, self.lambda_cap_s, self.lambda_cap_p]
    }

    pub fn graduations(&self) -> [f64; 3] {
        [self.lambda_f, self.lambda_s, self.lambda_p]
    }
}

/// Accepts iff every rate is finite, nonnegative, and `d > 0`.
///
/// The error names the first offending field.
pub fn validate(params: &ModelParameters) -> Result<()> {
    params.check_rates()?;
    if params.d <= 0.0 {
        return Err(Error::InvalidParameter {
            field: "d",
            reason: "death rate must be strictly positive for stability analysis".into(),
        });
    }
    Ok(())
}

/// Student populations `(U_f, U_s, U_p)` at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct State {
    pub u_f: f64,
    pub u_s: f64,
    pub u_p: f64,
}

impl State {
    pub const ZERO: State = State {
        u_f: 0.0,
        u_s: 0.0,
        u_p: 0.0,
    };

    pub fn new(u_f: f64, u_s: f64, u_p: f64) -> Self {
        Self { u_f, u_s, u_p }
    }

    pub fn from_array([u_f, u_s, u_p]: [f64; 3]) -> Self {
        Self { u_f, u_s, u_p }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.u_f, self.u_s, self.u_p]
    }

    pub fn total(&self) -> f64 {
        self.u_f + self.u_s + self.u_p
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// Max-norm distance between two states.
    pub fn distance(&self, other: &State) -> f64 {
        max_norm(&sub(self.to_array(), other.to_array()))
    }
}

pub(crate) fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn max_norm(v: &[f64; 3]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Settings for a forward simulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    /// Total population eligible for university education, `N`.
    pub eligible_population: f64,
    pub initial_state: State,
    pub t_end: f64,
    pub dt: f64,
}

impl SimulationConfig {
    /// Default step size.
    pub const DEFAULT_DT: f64 = 0.01;

    /// Starts with every eligible student in the federal compartment.
    pub fn new(eligible_population: f64, t_end: f64, dt: f64) -> Self {
        Self {
            eligible_population,
            initial_state: State::new(eligible_population, 0.0, 0.0),
            t_end,
            dt,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "t_end must be nonnegative, got {}",
                self.t_end
            )));
        }
        let s = self.initial_state;
        if !s.is_finite() || s.to_array().iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidConfig(format!(
                "initial state must be finite and nonnegative, got ({}, {}, {})",
                s.u_f, s.u_s, s.u_p
            )));
        }
        Ok(())
    }
}

/// A parameter set that has passed [`ModelParameters::check_rates`].
///
/// Evaluating the right-hand side through a `Model` skips re-validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model {
    params: ModelParameters,
}

impl Model {
    pub fn new(params: ModelParameters) -> Result<Self> {
        params.check_rates()?;
        Ok(Self { params })
    }

    pub fn params(&self) -> &ModelParameters {
        &self.params
    }

    /// `(dU_f/dt, dU_s/dt, dU_p/dt)`.
    #[inline]
    pub fn rhs(&self, state: &State) -> [f64; 3] {
        let p = &self.params;
        let State { u_f, u_s, u_p } = *state;
        [
            p.lambda_cap_f + p.alpha_sf * u_s + p.alpha_pf * u_p
                - p.d * u_f
                - p.alpha_fs * u_f
                - p.alpha_fp * u_f
                - p.lambda_f * u_f,
            p.lambda_cap_s + p.alpha_ps * u_p + p.alpha_fs * u_f
                - p.d * u_s
                - p.alpha_sf * u_s
                - p.alpha_sp * u_s
                - p.lambda_s * u_s,
            p.lambda_cap_p + p.alpha_sp * u_s + p.alpha_fp * u_f
                - p.d * u_p
                - p.alpha_ps * u_p
                - p.alpha_pf * u_p
                - p.lambda_p * u_p,
        ]
    }

    pub fn total_rate(&self, state: &State) -> f64 {
        let p = &self.params;
        let State { u_f, u_s, u_p } = *state;
        p.lambda_cap_f + p.lambda_cap_s + p.lambda_cap_p
            - p.d * (u_f + u_s + u_p)
            - p.lambda_f * u_f
            - p.lambda_s * u_s
            - p.lambda_p * u_p
    }
}

/// Right-hand side of the model at `state`.
pub fn rhs(params: &ModelParameters, state: &State) -> Result<[f64; 3]> {
    Ok(Model::new(*params)?.rhs(state))
}

/// Net rate of change of the total population. Movement terms cancel, so
/// this is admissions minus deaths minus graduations.
pub fn total_rate(params: &ModelParameters, state: &State) -> Result<f64> {
    Ok(Model::new(*params)?.total_rate(state))
}
