//! Forward integration and the movement-restricted closed form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Model, ModelParameters, SimulationConfig, State};

/// Time-ordered samples of a simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<(f64, State)>,
    pub params: ModelParameters,
    pub config: SimulationConfig,
}

impl Trajectory {
    pub fn last(&self) -> (f64, State) {
        *self
            .samples
            .last()
            .expect("trajectory always has a first sample")
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Single-compartment solution `U(t) = Λ/d + (U_i − Λ/d)·e^{−d·t}` of
/// `dU/dt = Λ − d·U`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RestrictedSolution {
    pub lambda_cap: f64,
    pub d: f64,
    pub u_initial: f64,
    pub asymptote: f64,
}

impl RestrictedSolution {
    pub fn new(lambda_cap: f64, d: f64, u_initial: f64) -> Result<Self> {
        let mut sol = Self {
            lambda_cap,
            d,
            u_initial,
            asymptote: f64::NAN,
        };
        sol.asymptote = asymptote(&sol)?;
        Ok(sol)
    }
}

/// `Λ / d`.
pub fn asymptote(sol: &RestrictedSolution) -> Result<f64> {
    if sol.d == 0.0 {
        return Err(Error::ZeroDeathRate);
    }
    Ok(sol.lambda_cap / sol.d)
}

pub fn restricted_analytic(sol: &RestrictedSolution, t: f64) -> f64 {
    let a = sol.lambda_cap / sol.d;
    a + (sol.u_initial - a) * (-sol.d * t).exp()
}

/// One classical fourth-order Runge–Kutta step.
pub fn step_rk4(params: &ModelParameters, state: &State, dt: f64) -> Result<State> {
    if !(dt > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "dt must be positive, got {dt}"
        )));
    }
    let model = Model::new(*params)?;
    let next = rk4(&model, state, dt);
    if !next.is_finite() {
        return Err(Error::NonFiniteState { time: dt });
    }
    Ok(next)
}

#[inline]
fn rk4(model: &Model, state: &State, h: f64) -> State {
    let y = state.to_array();
    let axpy = |a: f64, k: &[f64; 3]| {
        State::from_array([y[0] + a * k[0], y[1] + a * k[1], y[2] + a * k[2]])
    };
    let k1 = model.rhs(state);
    let k2 = model.rhs(&axpy(0.5 * h, &k1));
    let k3 = model.rhs(&axpy(0.5 * h, &k2));
    let k4 = model.rhs(&axpy(h, &k3));
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    State::from_array(out)
}

/// Fixed-step RK4 from 0 to `t_end`, recording every step.
///
/// Sample `k` sits at `k·dt`; when `t_end` is not a whole number of steps
/// the final step is shortened to land on `t_end` exactly.
pub fn simulate(params: &ModelParameters, config: &SimulationConfig) -> Result<Trajectory> {
    let model = Model::new(*params)?;
    config.validate()?;

    let dt = config.dt;
    let ratio = config.t_end / dt;
    let rounded = ratio.round();
    let (full_steps, partial) = if (ratio - rounded).abs() <= 1e-9 * ratio.max(1.0) {
        (rounded as usize, false)
    } else {
        (ratio.floor() as usize, true)
    };
    let total_steps = full_steps + partial as usize;

    let mut samples = Vec::with_capacity(total_steps + 1);
    let mut state = config.initial_state;
    let mut t = 0.0;
    samples.push((t, state));
    for k in 1..=total_steps {
        let t_next = if k == total_steps {
            config.t_end
        } else {
            k as f64 * dt
        };
        state = rk4(&model, &state, t_next - t);
        if !state.is_finite() {
            return Err(Error::NonFiniteState { time: t_next });
        }
        t = t_next;
        samples.push((t, state));
    }
    Ok(Trajectory {
        samples,
        params: *params,
        config: *config,
    })
}

/// Final state of [`simulate`] without keeping the samples.
pub fn simulate_final(params: &ModelParameters, config: &SimulationConfig) -> Result<State> {
    Ok(simulate(params, config)?.last().1)
}
