//! Local stability of the equilibrium.
//!
//! The model is affine, so the Jacobian is the same at every state. Its
//! characteristic polynomial `λ³ + c2·λ² + c1·λ + c0` is solved in closed
//! form for the eigenvalues, and the Routh–Hurwitz conditions on the same
//! coefficients give an eigenvalue-free second opinion.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cubic;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix3};
use crate::model::{Model, ModelParameters, State};

/// Default half-width of the marginal band around zero real part.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Constant Jacobian of the model, row-major in compartment order `f, s, p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jacobian(pub Matrix3);

impl Jacobian {
    pub fn matrix(&self) -> &Matrix3 {
        &self.0
    }

    /// Entries in row-major order.
    pub fn row_major(&self) -> [f64; 9] {
        let m = &self.0;
        [
            m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
        ]
    }
}

/// Coefficients of the monic characteristic polynomial `λ³ + c2·λ² + c1·λ + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicPolynomial {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl CharacteristicPolynomial {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        cubic::eval_monic(self.c2, self.c1, self.c0, x)
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.c2.abs().max(self.c1.abs()).max(self.c0.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    AsymptoticallyStable,
    Marginal,
    Unstable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::AsymptoticallyStable => "AsymptoticallyStable",
            Verdict::Marginal => "Marginal",
            Verdict::Unstable => "Unstable",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub jacobian: Jacobian,
    pub poly: CharacteristicPolynomial,
    /// Sorted by ascending real part, then ascending imaginary part.
    pub eigenvalues: [Complex64; 3],
    pub verdict: Verdict,
    pub routh_hurwitz_stable: bool,
}

/// Analytic Jacobian. Diagonal entries are the negated outflow rates;
/// off-diagonal entry `(i, j)` is the movement rate from `j` into `i`.
pub fn jacobian(params: &ModelParameters) -> Result<Jacobian> {
    params.check_rates()?;
    let p = params;
    let [out_f, out_s, out_p] = p.outflow();
    Ok(Jacobian([
        [-out_f, p.alpha_sf, p.alpha_pf],
        [p.alpha_fs, -out_s, p.alpha_ps],
        [p.alpha_fp, p.alpha_sp, -out_p],
    ]))
}

/// Central-difference Jacobian of the right-hand side at `state`.
pub fn jacobian_fd(params: &ModelParameters, state: &State, h: f64) -> Result<Matrix3> {
    let model = Model::new(*params)?;
    if !(h > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let base = state.to_array();
    let mut out = [[0.0; 3]; 3];
    for j in 0..3 {
        let mut plus = base;
        let mut minus = base;
        plus[j] += h;
        minus[j] -= h;
        let fp = model.rhs(&State::from_array(plus));
        let fm = model.rhs(&State::from_array(minus));
        for i in 0..3 {
            out[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    Ok(out)
}

/// `c2 = −trace`, `c1 =` sum of principal 2×2 minors, `c0 = −det`.
pub fn characteristic_coefficients(j: &Jacobian) -> CharacteristicPolynomial {
    let m = j.matrix();
    CharacteristicPolynomial {
        c2: -linalg::trace(m),
        c1: linalg::principal_minor_sum(m),
        c0: -linalg::det(m),
    }
}

/// Eigenvalues as roots of the characteristic polynomial.
pub fn eigenvalues_3x3(j: &Jacobian) -> [Complex64; 3] {
    let poly = characteristic_coefficients(j);
    cubic::solve_monic(poly.c2, poly.c1, poly.c0)
}

pub fn classify(eigenvalues: &[Complex64], tol: f64) -> Verdict {
    let max_re = eigenvalues
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    if max_re < -tol {
        Verdict::AsymptoticallyStable
    } else if max_re > tol {
        Verdict::Unstable
    } else {
        Verdict::Marginal
    }
}

/// A monic cubic has all roots in the open left half-plane iff
/// `c2 > 0`, `c0 > 0` and `c2·c1 > c0`.
pub fn routh_hurwitz(poly: &CharacteristicPolynomial) -> bool {
    poly.c2 > 0.0 && poly.c0 > 0.0 && poly.c2 * poly.c1 > poly.c0
}

pub fn analyze(params: &ModelParameters) -> Result<StabilityReport> {
    analyze_with_tol(params, DEFAULT_TOL)
}

pub fn analyze_with_tol(params: &ModelParameters, tol: f64) -> Result<StabilityReport> {
    let jacobian = jacobian(params)?;
    let poly = characteristic_coefficients(&jacobian);
    let eigenvalues = cubic::solve_monic(poly.c2, poly.c1, poly.c0);
    Ok(StabilityReport {
        jacobian,
        poly,
        eigenvalues,
        verdict: classify(&eigenvalues, tol),
        routh_hurwitz_stable: routh_hurwitz(&poly),
    })
}
