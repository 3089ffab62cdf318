//! Small numerical helpers shared by the closed forms and the oracles.

use std::f64::consts::{PI, TAU};

/// `sin(x t) / x`, continued analytically to `x = 0` (where it equals `t`).
///
/// Below `series_below` in `|x|` a truncated Taylor series is used.
pub fn sin_over(x: f64, t: f64, series_below: f64) -> f64 {
    if x.abs() < series_below {
        let xt2 = (x * t) * (x * t);
        t * (1.0 - xt2 / 6.0 * (1.0 - xt2 / 20.0))
    } else {
        (x * t).sin() / x
    }
}

/// Reduce an angle into `(-pi, pi]`.
pub fn wrap_to_pi(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Continuous branch of `atan2(k sin(phi), cos(phi))` as `phi` runs from 0.
///
/// The point `(cos phi, k sin phi)` traces an ellipse with `|k| <= 1`; for
/// `k >= 0` it winds counter-clockwise, for `k < 0` clockwise. At `k = 0`
/// the curve collapses onto the real axis and the `k -> 0+` branch is used.
pub fn ellipse_angle(k: f64, phi: f64) -> f64 {
    let turns = (phi / PI).round();
    let r = phi - turns * PI;
    let kappa = k.abs();
    let base = turns * PI + (kappa * r.sin()).atan2(r.cos());
    if k < 0.0 {
        -base
    } else {
        base
    }
}

/// In-place sequential unwrap: shifts each sample by a multiple of 2*pi so
/// that consecutive samples differ by at most pi.
///
/// `None` entries break nothing; tracking resumes from the last defined sample.
pub fn unwrap_in_place(values: &mut [Option<f64>]) -> Vec<f64> {
    let mut shifts = vec![0.0; values.len()];
    let mut prev: Option<f64> = None;
    for (v, shift) in values.iter_mut().zip(shifts.iter_mut()) {
        if let Some(x) = v {
            if let Some(p) = prev {
                let s = ((p - *x) / TAU).round() * TAU;
                *x += s;
                *shift = s;
            }
            prev = Some(*x);
        }
    }
    shifts
}

/// Composite Simpson rule on `[a, b]` with `intervals` rounded up to even.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, intervals: usize) -> f64 {
    let n = intervals.max(2).div_ceil(2) * 2;
    let h = (b - a) / n as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..n {
        let x = a + i as f64 * h;
        if i % 2 == 1 {
            odd += f(x);
        } else {
            even += f(x);
        }
    }
    h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_over_matches_direct_evaluation_across_threshold() {
        for &t in &[0.0, 0.5, 3.0, 40.0] {
            let x = 1e-6;
            let series = sin_over(x, t, 1.0);
            let direct = (x * t).sin() / x;
            assert!((series - direct).abs() < 1e-12 * (1.0 + t));
        }
        assert_eq!(sin_over(0.0, 2.5, 1e-8), 2.5);
    }

    #[test]
    fn wrap_range() {
        assert_eq!(wrap_to_pi(PI), PI);
        assert!((wrap_to_pi(-PI) - PI).abs() < 1e-15);
        assert!((wrap_to_pi(-2.0 * PI) - 0.0).abs() < 1e-15);
        assert!((wrap_to_pi(-7.0 * PI / 4.0) - PI / 4.0).abs() < 1e-14);
    }

    #[test]
    fn ellipse_angle_is_continuous_and_matches_atan2() {
        for &k in &[0.9, 0.3, 0.0, -0.2, -1.0] {
            let mut prev = ellipse_angle(k, 0.0);
            assert_eq!(prev, 0.0);
            for i in 1..20_000 {
                let phi = i as f64 * 1e-3;
                let a = ellipse_angle(k, phi);
                let principal = (k * phi.sin()).atan2(phi.cos());
                assert!(wrap_to_pi(a - principal).abs() < 1e-12, "k={k} phi={phi}");
                if k != 0.0 {
                    assert!((a - prev).abs() < 0.1, "jump at k={k} phi={phi}");
                }
                prev = a;
            }
        }
    }

    #[test]
    fn unwrap_removes_jumps() {
        let mut v = vec![Some(3.0), Some(-3.0), None, Some(-2.9), Some(3.1)];
        unwrap_in_place(&mut v);
        let got: Vec<f64> = v.into_iter().flatten().collect();
        assert!((got[1] - (-3.0 + TAU)).abs() < 1e-15);
        assert!((got[2] - (-2.9 + TAU)).abs() < 1e-15);
        assert!((got[3] - 3.1).abs() < 1e-15);
    }

    #[test]
    fn simpson_is_exact_on_cubics() {
        let v = simpson(|x| x * x * x - 2.0 * x, 0.0, 2.0, 16);
        assert!((v - 0.0).abs() < 1e-13);
        let v = simpson(|x| x.sin(), 0.0, PI, 1001);
        assert!((v - 2.0).abs() < 1e-11);
    }
}
