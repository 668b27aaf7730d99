//! Closed-form roots of the monic cubic `x³ + c2·x² + c1·x + c0`.
//!
//! The cubic is shifted to depressed form `t³ + p·t + q`. With three real
//! roots the trigonometric form is used; otherwise Cardano's formula gives
//! the single real root. In both cases one real root is refined with a few
//! Newton steps and the remaining pair comes from the deflated quadratic.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

/// Roots sorted by ascending real part, then ascending imaginary part.
pub fn solve_monic(c2: f64, c1: f64, c0: f64) -> [Complex64; 3] {
    let shift = c2 / 3.0;
    let p = c1 - c2 * shift;
    let q = (2.0 * shift * shift - c1) * shift + c0;

    let first = if p == 0.0 && q == 0.0 {
        -shift
    } else {
        let half_q = 0.5 * q;
        let third_p = p / 3.0;
        let disc = half_q * half_q + third_p * third_p * third_p;
        let t = if disc <= 0.0 {
            // Three real roots; p < 0 here. Take the one of largest magnitude.
            let m = 2.0 * (-third_p).sqrt();
            let arg = (-half_q / (-third_p * (-third_p).sqrt())).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            (0..3)
                .map(|k| m * (theta - 2.0 * PI * k as f64 / 3.0).cos())
                .max_by(|a, b| a.abs().total_cmp(&b.abs()))
                .expect("three candidates")
        } else {
            let s = disc.sqrt();
            let u = (-half_q - s.copysign(half_q)).cbrt();
            let v = if u == 0.0 { 0.0 } else { -third_p / u };
            u + v
        };
        t - shift
    };

    let r = polish(first, c2, c1, c0);
    // (x - r)(x² + b·x + c)
    let b = c2 + r;
    let c = c1 + r * b;
    let [r2, r3] = solve_monic_quadratic(b, c);

    let mut roots = [Complex64::new(r, 0.0), r2, r3];
    roots.sort_by(compare_roots);
    roots
}

/// Roots of `x² + b·x + c`.
pub fn solve_monic_quadratic(b: f64, c: f64) -> [Complex64; 2] {
    let mut disc = b * b - 4.0 * c;
    // Discriminants within roundoff of zero are a double root.
    if disc < 0.0 && -disc <= 8.0 * f64::EPSILON * (b * b).max(4.0 * c.abs()) {
        disc = 0.0;
    }
    if disc >= 0.0 {
        let s = disc.sqrt();
        let qq = -0.5 * (b + s.copysign(b));
        if qq == 0.0 {
            return [Complex64::new(0.0, 0.0); 2];
        }
        [Complex64::new(qq, 0.0), Complex64::new(c / qq, 0.0)]
    } else {
        let re = -0.5 * b;
        let im = 0.5 * (-disc).sqrt();
        [Complex64::new(re, -im), Complex64::new(re, im)]
    }
}

fn polish(mut x: f64, c2: f64, c1: f64, c0: f64) -> f64 {
    let eval = |x: f64| ((x + c2) * x + c1) * x + c0;
    let mut fx = eval(x);
    for _ in 0..4 {
        if fx == 0.0 {
            break;
        }
        let dfx = (3.0 * x + 2.0 * c2) * x + c1;
        if dfx == 0.0 {
            break;
        }
        let next = x - fx / dfx;
        let fnext = eval(next);
        if !(fnext.abs() < fx.abs()) {
            break;
        }
        x = next;
        fx = fnext;
    }
    x
}

pub(crate) fn compare_roots(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// `x³ + c2·x² + c1·x + c0` at a complex point.
pub fn eval_monic(c2: f64, c1: f64, c0: f64, x: Complex64) -> Complex64 {
    ((x + c2) * x + c1) * x + c0
}
