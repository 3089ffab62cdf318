//! Fixed-step RK4 ground truth, independent of the closed forms.
//!
//! Two structurally separate integrations are provided: the coefficient
//! equations in the gauged instantaneous basis, and the lab-frame
//! Schrödinger equation `i d(psi)/dt = H(t) psi` with the explicitly rotating
//! Hamiltonian. Norm is never renormalized mid-run; drift is reported as-is.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::{amplitudes, AmplitudePair};
use crate::model::{eigenstate, hamiltonian, ModelParams, Spinor, LAMBDA_EPS};

const NORM_INPUT_TOL: f64 = 1e-10;
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    /// RK4 steps per shortest characteristic period.
    pub step_count_per_period: usize,
    /// End time of the integration.
    pub t_max: f64,
    /// Record every `record_stride`-th step (the final step is always kept).
    pub record_stride: usize,
}

impl IntegratorConfig {
    pub const DEFAULT_STEPS_PER_PERIOD: usize = 10_000;

    pub fn new(t_max: f64) -> Self {
        Self {
            step_count_per_period: Self::DEFAULT_STEPS_PER_PERIOD,
            t_max,
            record_stride: 1,
        }
    }

    pub fn with_steps_per_period(mut self, n: usize) -> Self {
        self.step_count_per_period = n;
        self
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.record_stride = stride;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.step_count_per_period < 100 {
            return Err(Error::InvalidConfig(format!(
                "step_count_per_period = {} < 100",
                self.step_count_per_period
            )));
        }
        if self.record_stride == 0 {
            return Err(Error::InvalidConfig("record_stride must be >= 1".into()));
        }
        if !self.t_max.is_finite() || self.t_max < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "t_max = {} invalid",
                self.t_max
            )));
        }
        Ok(())
    }

    /// Nominal step `min(T', T'') / N`, falling back to `(2 pi / omega) / N`
    /// when either period is undefined.
    pub fn nominal_step(&self, p: &ModelParams) -> f64 {
        let lambda = p.lambda();
        let period = if p.omega_prime <= 0.0 || lambda <= LAMBDA_EPS * p.omega {
            2.0 * PI / p.omega
        } else {
            (2.0 * PI / p.omega_prime).min(2.0 * PI / lambda)
        };
        period / self.step_count_per_period as f64
    }

    /// Uniform time grid `t0 + k h` covering `[t0, t_max]` with `h <= nominal`.
    fn grid(&self, p: &ModelParams, t0: f64) -> Result<(usize, f64)> {
        self.validate()?;
        let span = self.t_max - t0;
        if span < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "t_max = {} precedes start time {t0}",
                self.t_max
            )));
        }
        let nominal = self.nominal_step(p);
        let steps = ((span / nominal) * (1.0 - 1e-12)).ceil().max(1.0) as usize;
        Ok((steps, span / steps as f64))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// Instantaneous-basis amplitudes.
    pub amplitudes: Vec<AmplitudePair>,
    /// Fixed-basis state.
    pub spinors: Vec<Spinor>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    fn push(&mut self, a: AmplitudePair, s: Spinor) {
        self.times.push(a.t);
        self.amplitudes.push(a);
        self.spinors.push(s);
    }

    /// Largest `| |c1|^2 + |c2|^2 - 1 |` over the samples.
    pub fn max_norm_drift(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| (a.norm_sqr() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

type State = [Complex64; 2];

fn axpy(y: &State, h: f64, k: &State) -> State {
    [y[0] + k[0] * h, y[1] + k[1] * h]
}

fn rk4_step<F: Fn(f64, &State) -> State>(f: &F, t: f64, y: &State, h: f64) -> State {
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &axpy(y, 0.5 * h, &k1));
    let k3 = f(t + 0.5 * h, &axpy(y, 0.5 * h, &k2));
    let k4 = f(t + h, &axpy(y, h, &k3));
    let w = h / 6.0;
    [
        y[0] + (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) * w,
        y[1] + (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) * w,
    ]
}

/// Integrate `f` on the config's grid, handing each recorded `(t, y)` to `record`.
fn run<F, R>(f: F, t0: f64, y0: State, steps: usize, h: f64, stride: usize, mut record: R)
where
    F: Fn(f64, &State) -> State,
    R: FnMut(f64, &State),
{
    let mut y = y0;
    record(t0, &y);
    for k in 0..steps {
        let t = t0 + k as f64 * h;
        y = rk4_step(&f, t, &y, h);
        let done = k + 1;
        if done % stride == 0 || done == steps {
            record(t0 + done as f64 * h, &y);
        }
    }
}

/// Generator of the coefficient equations in the gauged instantaneous basis.
///
/// Written in the general form with `delta1 = delta2`: the off-diagonal
/// factors `e^{+-i(delta1 - delta2)}` are carried explicitly and equal 1.
fn coefficient_generator(p: &ModelParams) -> impl Fn(f64, &State) -> State {
    let w = p.omega;
    let wp = p.omega_prime;
    let (sb, cb) = p.beta.sin_cos();
    let p = *p;
    move |t, c| {
        let delta1 = p.gauge_phase(t);
        let delta2 = p.gauge_phase(t);
        let delta_dot = p.gauge_b * wp;
        let off = I * (0.5 * wp * sb);
        let m11 = I * (-0.5 * w + 0.5 * wp * cb + delta_dot);
        let m12 = off * Complex64::from_polar(1.0, delta1 - delta2);
        let m21 = off * Complex64::from_polar(1.0, delta2 - delta1);
        let m22 = I * (0.5 * w - 0.5 * wp * cb + delta_dot);
        [m11 * c[0] + m12 * c[1], m21 * c[0] + m22 * c[1]]
    }
}

fn lab_state(p: &ModelParams, t: f64, c: &State) -> Spinor {
    let e1 = eigenstate(p, t, 1).expect("valid index");
    let e2 = eigenstate(p, t, 2).expect("valid index");
    c[0] * e1 + c[1] * e2
}

fn project(p: &ModelParams, t: f64, psi: &Spinor) -> AmplitudePair {
    let e1 = eigenstate(p, t, 1).expect("valid index");
    let e2 = eigenstate(p, t, 2).expect("valid index");
    AmplitudePair::new(t, e1.inner(psi), e2.inner(psi))
}

fn check_norm(norm_sqr: f64) -> Result<()> {
    if (norm_sqr - 1.0).abs() > NORM_INPUT_TOL || !norm_sqr.is_finite() {
        return Err(Error::NotNormalized { norm_sqr });
    }
    Ok(())
}

/// RK4 on the instantaneous-basis coefficient equations, starting at `c_init.t`.
pub fn integrate_coefficients(
    p: &ModelParams,
    cfg: &IntegratorConfig,
    c_init: AmplitudePair,
) -> Result<Trajectory> {
    check_norm(c_init.norm_sqr())?;
    let (steps, h) = cfg.grid(p, c_init.t)?;
    let mut traj = Trajectory::default();
    run(
        coefficient_generator(p),
        c_init.t,
        [c_init.c1, c_init.c2],
        steps,
        h,
        cfg.record_stride,
        |t, c| traj.push(AmplitudePair::new(t, c[0], c[1]), lab_state(p, t, c)),
    );
    Ok(traj)
}

/// RK4 on `i d(psi)/dt = H(t) psi` from `t = 0`; amplitudes are the
/// projections `<n(t)|psi(t)>` onto the gauged eigenstates.
pub fn integrate_lab_frame(
    p: &ModelParams,
    cfg: &IntegratorConfig,
    psi_init: Spinor,
) -> Result<Trajectory> {
    check_norm(psi_init.norm_sqr())?;
    let (steps, h) = cfg.grid(p, 0.0)?;
    let p_copy = *p;
    let rhs = move |t: f64, y: &State| {
        let hy = hamiltonian(&p_copy, t).apply(&Spinor::new(y[0], y[1]));
        [-I * hy.up, -I * hy.down]
    };
    let mut traj = Trajectory::default();
    run(
        rhs,
        0.0,
        [psi_init.up, psi_init.down],
        steps,
        h,
        cfg.record_stride,
        |t, y| {
            let psi = Spinor::new(y[0], y[1]);
            traj.push(project(p, t, &psi), psi);
        },
    );
    Ok(traj)
}

/// The closed-form evolution sampled on an existing time grid.
pub fn sample_closed_form(p: &ModelParams, times: &[f64]) -> Trajectory {
    let mut traj = Trajectory::default();
    for &t in times {
        let a = amplitudes(p, t);
        traj.push(a, lab_state(p, t, &[a.c1, a.c2]));
    }
    traj
}

/// Max over samples of the larger of `|dc1|`, `|dc2|`.
pub fn max_deviation(a: &Trajectory, b: &Trajectory) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::MismatchedGrids);
    }
    let mut worst = 0.0f64;
    for (x, y) in a.amplitudes.iter().zip(&b.amplitudes) {
        if (x.t - y.t).abs() > 1e-12 * (1.0 + x.t.abs()) {
            return Err(Error::MismatchedGrids);
        }
        worst = worst.max(x.deviation(y));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn start() -> AmplitudePair {
        AmplitudePair::new(0.0, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    #[test]
    fn polar_field_is_decoupled() {
        let p = ModelParams::new(1.0, 0.6, 0.0).unwrap();
        let traj = integrate_coefficients(&p, &IntegratorConfig::new(20.0), start()).unwrap();
        assert!(traj.amplitudes.iter().all(|a| a.c2.norm() == 0.0));
    }

    #[test]
    fn static_polar_field_lab_frame() {
        let p = ModelParams::new(1.0, 0.4, 0.0).unwrap();
        let psi0 = eigenstate(&p, 0.0, 1).unwrap();
        let cfg = IntegratorConfig::new(30.0).with_stride(50);
        let traj = integrate_lab_frame(&p, &cfg, psi0).unwrap();
        for (t, s) in traj.times.iter().zip(&traj.spinors) {
            let expect = Complex64::from_polar(1.0, -0.5 * t);
            assert!((s.up - expect).norm() < 1e-11);
            assert_eq!(s.down.norm(), 0.0);
        }
    }

    #[test]
    fn half_period_agrees_with_closed_form() {
        let p = ModelParams::from_cos_beta(1.0, 1.0, 0.5).unwrap();
        let traj = integrate_coefficients(&p, &IntegratorConfig::new(PI), start()).unwrap();
        let last = traj.amplitudes.last().unwrap();
        assert_eq!(last.t, PI);
        assert_abs_diff_eq!(last.c1.re, -0.5, epsilon = 1e-8);
        assert_abs_diff_eq!(last.c1.im, 0.0, epsilon = 1e-8);
    }

    #[test]
    fn lower_level_start_stays_normalized() {
        let p = ModelParams::new(1.0, 2.3, 2.0).unwrap();
        let c0 = AmplitudePair::new(0.0, Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0));
        let traj = integrate_coefficients(&p, &IntegratorConfig::new(40.0), c0).unwrap();
        assert!(traj.max_norm_drift() < 1e-9);
    }

    #[test]
    fn grid_is_strictly_increasing_and_ends_at_t_max() {
        let p = ModelParams::new(1.0, 0.7, 1.0).unwrap();
        let cfg = IntegratorConfig::new(13.0)
            .with_stride(7)
            .with_steps_per_period(100);
        let traj = integrate_coefficients(&p, &cfg, start()).unwrap();
        assert!(traj.times.windows(2).all(|w| w[1] > w[0]));
        assert_abs_diff_eq!(*traj.times.last().unwrap(), 13.0, epsilon = 1e-12);
        assert_eq!(traj.amplitudes.len(), traj.spinors.len());
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = ModelParams::new(1.0, 0.7, 1.0).unwrap();
        let bad = AmplitudePair::new(0.0, Complex64::new(1.0, 0.0), Complex64::new(0.1, 0.0));
        assert!(matches!(
            integrate_coefficients(&p, &IntegratorConfig::new(1.0), bad),
            Err(Error::NotNormalized { .. })
        ));
        let psi = Spinor::new(Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0));
        assert!(integrate_lab_frame(&p, &IntegratorConfig::new(1.0), psi).is_err());
        let cfg = IntegratorConfig::new(1.0).with_steps_per_period(99);
        assert!(matches!(
            integrate_coefficients(&p, &cfg, start()),
            Err(Error::InvalidConfig(_))
        ));
        let cfg = IntegratorConfig::new(1.0).with_stride(0);
        assert!(integrate_coefficients(&p, &cfg, start()).is_err());
    }

    #[test]
    fn max_deviation_identity_and_grid_mismatch() {
        let p = ModelParams::new(1.0, 0.7, 1.0).unwrap();
        let a = integrate_coefficients(&p, &IntegratorConfig::new(5.0), start()).unwrap();
        assert_eq!(max_deviation(&a, &a).unwrap(), 0.0);
        let b = integrate_coefficients(&p, &IntegratorConfig::new(6.0), start()).unwrap();
        assert_eq!(max_deviation(&a, &b), Err(Error::MismatchedGrids));
    }
}
