//! Closed-form evolution from `|psi(0)> = |1(0)>`.
//!
//! With equal gauge phases `delta(t) = A + B omega' t` the coefficient
//! equations have a constant generator `i B omega' + i K`, where
//! `K = [[-D/2, S/2], [S/2, D/2]]`, `D = omega - omega' cos(beta)` and
//! `S = omega' sin(beta)`. Since `K^2 = (lambda/2)^2`, the propagator is
//! `cos(lambda t/2) + i sin(lambda t/2) K / (lambda/2)`, giving
//!
//! ```text
//! C1(t) = e^{i B omega' t} [cos(lambda t/2) - i D sin(lambda t/2) / lambda]
//! C2(t) = e^{i B omega' t} i S sin(lambda t/2) / lambda
//! ```
//!
//! This fixes `C1(0) = 1`. The commonly quoted form with both terms written
//! as differences of exponentials carries an extra overall minus sign.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{eigenstate, ModelParams, Spinor, LAMBDA_EPS};
use crate::numeric::sin_over;

/// Instantaneous-basis coefficients at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudePair {
    pub t: f64,
    pub c1: Complex64,
    pub c2: Complex64,
}

impl AmplitudePair {
    pub fn new(t: f64, c1: Complex64, c2: Complex64) -> Self {
        Self { t, c1, c2 }
    }

    /// `|c1|^2 + |c2|^2`.
    pub fn norm_sqr(&self) -> f64 {
        self.c1.norm_sqr() + self.c2.norm_sqr()
    }

    /// Larger of `|c1 - other.c1|` and `|c2 - other.c2|`.
    pub fn deviation(&self, other: &AmplitudePair) -> f64 {
        (self.c1 - other.c1).norm().max((self.c2 - other.c2).norm())
    }
}

/// `C1` stripped of the gauge factor: `cos(lambda t/2) - i D sin(lambda t/2)/lambda`.
pub(crate) fn rotating_c1(p: &ModelParams, t: f64) -> Complex64 {
    Complex64::new(
        (0.5 * p.lambda() * t).cos(),
        -p.detuning() * half_sin_over_lambda(p, t),
    )
}

/// `sin(lambda t/2) / lambda`, series below `LAMBDA_EPS * omega`.
fn half_sin_over_lambda(p: &ModelParams, t: f64) -> f64 {
    0.5 * sin_over(0.5 * p.lambda(), t, LAMBDA_EPS * p.omega)
}

pub fn amplitudes(p: &ModelParams, t: f64) -> AmplitudePair {
    let gauge = Complex64::from_polar(1.0, p.gauge_b * p.omega_prime * t);
    let c2 = Complex64::new(0.0, p.coupling() * half_sin_over_lambda(p, t));
    AmplitudePair::new(t, gauge * rotating_c1(p, t), gauge * c2)
}

/// Lab-frame state `C1(t)|1(t)> + C2(t)|2(t)>`.
pub fn state(p: &ModelParams, t: f64) -> Spinor {
    let a = amplitudes(p, t);
    let e1 = eigenstate(p, t, 1).expect("index 1 is valid");
    let e2 = eigenstate(p, t, 2).expect("index 2 is valid");
    a.c1 * e1 + a.c2 * e2
}

/// `|C1(T')|^2` after one field period.
pub fn return_probability_at_period(p: &ModelParams) -> Result<f64> {
    if p.omega_prime <= 0.0 {
        return Err(Error::UndefinedPeriod);
    }
    let lambda = p.lambda();
    if lambda == 0.0 {
        return Ok(1.0);
    }
    let q = (p.coupling() / lambda).powi(2);
    let s = (PI * lambda / p.omega_prime).sin();
    Ok(1.0 - q * s * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p_half(ratio: f64) -> ModelParams {
        ModelParams::from_cos_beta(1.0, ratio, 0.5).unwrap()
    }

    #[test]
    fn initial_condition_is_exact() {
        for p in [
            p_half(1.0),
            p_half(0.3),
            ModelParams::new(2.0, 2.0, 0.0).unwrap(),
        ] {
            let a = amplitudes(&p, 0.0);
            assert_eq!(a.c1, Complex64::new(1.0, 0.0));
            assert_eq!(a.c2, Complex64::new(0.0, 0.0));
            assert_eq!(state(&p, 0.0), eigenstate(&p, 0.0, 1).unwrap());
        }
    }

    #[test]
    fn half_period_values() {
        let a = amplitudes(&p_half(1.0), PI);
        assert_abs_diff_eq!(a.c1.re, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(a.c1.im, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.c2.norm_sqr(), 0.75, epsilon = 1e-15);

        let a = amplitudes(&p_half(1.0), 2.0 * PI);
        assert_abs_diff_eq!(a.c1.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.c1.im, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.c2.norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn state_overlap_at_half_period() {
        let p = p_half(1.0);
        let psi = state(&p, PI);
        assert_abs_diff_eq!(psi.norm_sqr(), 1.0, epsilon = 1e-14);
        let e1 = eigenstate(&p, PI, 1).unwrap();
        assert_abs_diff_eq!(e1.inner(&psi).norm(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn polar_field_never_leaves_upper_level() {
        let p = ModelParams::new(1.0, 0.37, 0.0).unwrap();
        for i in 0..200 {
            let t = i as f64 * 0.31;
            let a = amplitudes(&p, t);
            assert_eq!(a.c2.norm(), 0.0);
            assert_abs_diff_eq!(a.c1.norm(), 1.0, epsilon = 1e-15);
            let psi = state(&p, t);
            assert_eq!(psi.down.norm(), 0.0);
        }
    }

    #[test]
    fn degenerate_lambda_uses_series() {
        let p = ModelParams::new(1.0, 1.0, 0.0).unwrap();
        let a = amplitudes(&p, 50.0);
        assert!(a.c1.re.is_finite() && a.c1.im.is_finite());
        assert_abs_diff_eq!(a.norm_sqr(), 1.0, epsilon = 1e-15);
        // just below the threshold the series must agree with direct evaluation
        let q = ModelParams::new(1.0, 1.0, 1e-9).unwrap();
        let lambda = q.lambda();
        assert!(lambda > 0.0 && lambda < LAMBDA_EPS);
        for t in [0.5, 5.0, 50.0] {
            let a = amplitudes(&q, t);
            let s = (0.5 * lambda * t).sin() / lambda;
            let gauge = Complex64::from_polar(1.0, q.gauge_b * q.omega_prime * t);
            let c1 = gauge * Complex64::new((0.5 * lambda * t).cos(), -q.detuning() * s);
            let c2 = gauge * Complex64::new(0.0, q.coupling() * s);
            assert!((a.c1 - c1).norm() < 1e-15 && (a.c2 - c2).norm() < 1e-15);
        }
    }

    #[test]
    fn return_probability_examples() {
        assert_abs_diff_eq!(
            return_probability_at_period(&p_half(1.0)).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        // lambda = sqrt(0.75), T' = 4 pi
        let v = return_probability_at_period(&p_half(0.5)).unwrap();
        let a = amplitudes(&p_half(0.5), 4.0 * PI);
        assert_abs_diff_eq!(v, a.c1.norm_sqr(), epsilon = 1e-14);
        assert_abs_diff_eq!(v, 0.861, epsilon = 1e-3);
        assert!(1.0 - return_probability_at_period(&p_half(1e-4)).unwrap() < 1e-7);
        assert!(1.0 - return_probability_at_period(&p_half(1e4)).unwrap() < 1e-7);
        assert_eq!(
            return_probability_at_period(&ModelParams::new(1.0, 0.0, 0.3).unwrap()),
            Err(Error::UndefinedPeriod)
        );
    }

    #[test]
    fn gauge_a_does_not_enter_amplitudes() {
        let p = p_half(0.8);
        for a in [0.0, 1.3, PI] {
            let q = p.with_gauge(a, p.gauge_b).with_alpha(a);
            assert_eq!(amplitudes(&q, 7.1), amplitudes(&p, 7.1));
        }
    }
}
