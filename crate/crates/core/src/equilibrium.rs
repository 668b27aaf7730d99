//! Movement-free equilibrium of the model.
//!
//! Setting every derivative to zero gives the coupled system
//!
//! ```text
//! U*_f = (Λ_f + α_sf U*_s + α_pf U*_p) / (d + α_fs + α_fp + λ_f)
//! U*_s = (Λ_s + α_fs U*_f + α_ps U*_p) / (d + α_sf + α_sp + λ_s)
//! U*_p = (Λ_p + α_fp U*_f + α_sp U*_s) / (d + α_pf + α_ps + λ_p)
//! ```
//!
//! which is rearranged to `A · U* = Λ` and solved directly. The same three
//! expressions used as an iteration map give [`fixed_point_iterate`], an
//! independent route to the same point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix3};
use crate::model::{max_norm, Model, ModelParameters, State};

/// Outcome of [`solve_equilibrium`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumResult {
    /// The fixed point, absent when the linear system is singular.
    pub state: Option<State>,
    /// Max-norm of the right-hand side evaluated at `state`.
    pub residual: Option<f64>,
    /// Whether the coefficient matrix was nonsingular.
    pub unique: bool,
}

/// Coefficient matrix `A` and right-hand side `Λ` with `A · U* = Λ`.
///
/// The diagonal holds each compartment's total outflow rate; off-diagonal
/// entries are the negated inbound movement rates.
pub fn build_linear_system(params: &ModelParameters) -> Result<(Matrix3, [f64; 3])> {
    params.check_rates()?;
    let p = params;
    let [out_f, out_s, out_p] = p.outflow();
    let a = [
        [out_f, -p.alpha_sf, -p.alpha_pf],
        [-p.alpha_fs, out_s, -p.alpha_ps],
        [-p.alpha_fp, -p.alpha_sp, out_p],
    ];
    Ok((a, p.admissions()))
}

/// Solves for the equilibrium by Gaussian elimination with partial pivoting.
///
/// A singular system is reported through `unique = false` with no state;
/// this only happens when `d = 0`.
pub fn solve_equilibrium(params: &ModelParameters) -> Result<EquilibriumResult> {
    let model = Model::new(*params)?;
    let (a, b) = build_linear_system(params)?;
    match linalg::solve3(&a, &b) {
        Ok(x) => {
            let state = State::from_array(x);
            let residual = max_norm(&model.rhs(&state));
            Ok(EquilibriumResult {
                state: Some(state),
                residual: Some(residual),
                unique: true,
            })
        }
        Err(Error::Singular { .. }) => Ok(EquilibriumResult {
            state: None,
            residual: None,
            unique: false,
        }),
        Err(e) => Err(e),
    }
}

/// Like [`solve_equilibrium`] but turns a singular system into an error.
pub fn equilibrium_state(params: &ModelParameters) -> Result<State> {
    params.check_rates()?;
    let (a, b) = build_linear_system(params)?;
    linalg::solve3(&a, &b).map(State::from_array)
}

/// Iterates the equilibrium expressions as a map until successive iterates
/// differ by at most `tol` in max-norm.
///
/// All three components are updated simultaneously from the previous
/// iterate. Because the coefficient matrix is column diagonally dominant
/// whenever `d > 0`, the map is a contraction and always converges given
/// enough iterations; its rate degrades as `d` and the graduation rates
/// shrink relative to the movement rates.
pub fn fixed_point_iterate(
    params: &ModelParameters,
    init: State,
    tol: f64,
    max_iter: usize,
) -> Result<State> {
    params.check_rates()?;
    if !(tol > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "tol must be positive, got {tol}"
        )));
    }
    if max_iter == 0 {
        return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
    }
    let p = params;
    let [den_f, den_s, den_p] = p.outflow();
    let mut cur = init;
    let mut change = f64::INFINITY;
    for _ in 0..max_iter {
        let next = State {
            u_f: (p.lambda_cap_f + p.alpha_sf * cur.u_s + p.alpha_pf * cur.u_p) / den_f,
            u_s: (p.lambda_cap_s + p.alpha_fs * cur.u_f + p.alpha_ps * cur.u_p) / den_s,
            u_p: (p.lambda_cap_p + p.alpha_fp * cur.u_f + p.alpha_sp * cur.u_s) / den_p,
        };
        change = next.distance(&cur);
        cur = next;
        if !cur.is_finite() {
            break;
        }
        if change <= tol {
            return Ok(cur);
        }
    }
    Err(Error::NotConverged {
        iterations: max_iter,
        last_change: change,
    })
}
