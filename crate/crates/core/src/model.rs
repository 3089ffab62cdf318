//! Experiment parameters, the rotating field, the Hamiltonian and its gauged
//! instantaneous eigensystem.
//!
//! Units: hbar = 1 and the field magnitude is absorbed into `omega`, so the
//! Hamiltonian is `(omega / 2) n(t) . sigma` with `n(t)` the unit field
//! direction rotating about z at rate `omega_prime`.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Threshold on `lambda` (relative to `omega`) below which the removable
/// singularity at `lambda = 0` is handled by series expansion.
pub const LAMBDA_EPS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Energy splitting, rad/time.
    pub omega: f64,
    /// Field rotation rate about z, rad/time.
    pub omega_prime: f64,
    /// Polar angle of the field.
    pub beta: f64,
    /// Initial field azimuth.
    pub alpha: f64,
    /// Constant part `A` of the eigenstate gauge phase `A + B omega' t`.
    pub gauge_a: f64,
    /// Rate part `B` of the eigenstate gauge phase.
    pub gauge_b: f64,
}

impl ModelParams {
    pub const DEFAULT_GAUGE_B: f64 = -0.5;

    pub fn new(omega: f64, omega_prime: f64, beta: f64) -> Result<Self> {
        let p = Self {
            omega,
            omega_prime,
            beta,
            alpha: 0.0,
            gauge_a: 0.0,
            gauge_b: Self::DEFAULT_GAUGE_B,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameters from `cos(beta)` rather than the angle itself.
    pub fn from_cos_beta(omega: f64, omega_prime: f64, cos_beta: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&cos_beta) {
            return Err(Error::InvalidParams(format!(
                "cos(beta) = {cos_beta} outside [-1, 1]"
            )));
        }
        Self::new(omega, omega_prime, cos_beta.acos())
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_gauge(mut self, a: f64, b: f64) -> Self {
        self.gauge_a = a;
        self.gauge_b = b;
        self
    }

    pub fn with_omega_prime(mut self, omega_prime: f64) -> Self {
        self.omega_prime = omega_prime;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [
            self.omega,
            self.omega_prime,
            self.beta,
            self.alpha,
            self.gauge_a,
            self.gauge_b,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        if self.omega <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "omega = {} must be > 0",
                self.omega
            )));
        }
        if self.omega_prime < 0.0 {
            return Err(Error::InvalidParams(format!(
                "omega' = {} must be >= 0",
                self.omega_prime
            )));
        }
        if !(0.0..=PI).contains(&self.beta) {
            return Err(Error::InvalidParams(format!(
                "beta = {} outside [0, pi]",
                self.beta
            )));
        }
        Ok(())
    }

    /// `omega - omega' cos(beta)`: the detuning in the rotating frame.
    pub fn detuning(&self) -> f64 {
        self.omega - self.omega_prime * self.beta.cos()
    }

    /// `omega' sin(beta)`: the transverse coupling between the two levels.
    pub fn coupling(&self) -> f64 {
        self.omega_prime * self.beta.sin()
    }

    /// `lambda = sqrt(omega^2 + omega'^2 - 2 omega omega' cos(beta))`.
    ///
    /// Evaluated as `hypot(detuning, coupling)`, which is free of the
    /// cancellation in the expanded form and guarantees `|detuning| <= lambda`.
    pub fn lambda(&self) -> f64 {
        self.detuning().hypot(self.coupling())
    }

    /// Gauge phase `delta(t) = A + B omega' t` shared by both eigenstates.
    pub fn gauge_phase(&self, t: f64) -> f64 {
        self.gauge_a + self.gauge_b * self.omega_prime * t
    }

    pub fn lambda_is_degenerate(&self) -> bool {
        self.lambda() <= LAMBDA_EPS * self.omega
    }

    pub fn scales(&self) -> DerivedScales {
        let lambda = self.lambda();
        DerivedScales {
            lambda,
            hamiltonian_period: (self.omega_prime > 0.0).then(|| 2.0 * PI / self.omega_prime),
            state_period: (lambda > LAMBDA_EPS * self.omega).then(|| 2.0 * PI / lambda),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedScales {
    pub lambda: f64,
    /// `T' = 2 pi / omega'`, `None` for a static field.
    pub hamiltonian_period: Option<f64>,
    /// `T'' = 2 pi / lambda`, `None` when lambda is degenerate.
    pub state_period: Option<f64>,
}

/// Two-component state in the fixed `|+>`, `|->` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor {
    pub up: Complex64,
    pub down: Complex64,
}

impl Spinor {
    pub fn new(up: Complex64, down: Complex64) -> Self {
        Self { up, down }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Spinor) -> Complex64 {
        self.up.conj() * other.up + self.down.conj() * other.down
    }

    pub fn scale(&self, z: Complex64) -> Spinor {
        Spinor::new(self.up * z, self.down * z)
    }

    pub fn distance(&self, other: &Spinor) -> f64 {
        (*self - *other).norm_sqr().sqrt()
    }
}

impl Add for Spinor {
    type Output = Spinor;
    fn add(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.up + rhs.up, self.down + rhs.down)
    }
}

impl Sub for Spinor {
    type Output = Spinor;
    fn sub(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.up - rhs.up, self.down - rhs.down)
    }
}

impl Mul<Spinor> for Complex64 {
    type Output = Spinor;
    fn mul(self, rhs: Spinor) -> Spinor {
        rhs.scale(self)
    }
}

/// Dense 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

impl Matrix2 {
    pub fn apply(&self, v: &Spinor) -> Spinor {
        let m = &self.0;
        Spinor::new(
            m[0][0] * v.up + m[0][1] * v.down,
            m[1][0] * v.up + m[1][1] * v.down,
        )
    }

    pub fn adjoint(&self) -> Matrix2 {
        let m = &self.0;
        Matrix2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// `<u|M|v>`.
    pub fn sandwich(&self, u: &Spinor, v: &Spinor) -> Complex64 {
        u.inner(&self.apply(v))
    }
}

/// Field azimuth `alpha'(t) = alpha + omega' t`.
fn azimuth(p: &ModelParams, t: f64) -> f64 {
    p.alpha + p.omega_prime * t
}

/// Unit direction of the magnetic field at time `t`.
pub fn field_vector(p: &ModelParams, t: f64) -> [f64; 3] {
    let (sb, cb) = p.beta.sin_cos();
    let (sa, ca) = azimuth(p, t).sin_cos();
    [sb * ca, sb * sa, cb]
}

/// `H(t) = (omega/2) [[cos b, sin b e^{-i a'}], [sin b e^{i a'}, -cos b]]`.
pub fn hamiltonian(p: &ModelParams, t: f64) -> Matrix2 {
    let half = 0.5 * p.omega;
    let (sb, cb) = p.beta.sin_cos();
    let rot = Complex64::from_polar(half * sb, azimuth(p, t));
    Matrix2([
        [Complex64::new(half * cb, 0.0), rot.conj()],
        [rot, Complex64::new(-half * cb, 0.0)],
    ])
}

/// Instantaneous eigenvalue: `E1 = +omega/2`, `E2 = -omega/2`.
pub fn eigenvalue(p: &ModelParams, index: u8) -> Result<f64> {
    match index {
        1 => Ok(0.5 * p.omega),
        2 => Ok(-0.5 * p.omega),
        other => Err(Error::InvalidIndex(other)),
    }
}

/// Gauged instantaneous eigenstate `|1(t)>` or `|2(t)>`: the bare
/// eigenvector times `e^{-i delta(t)}`.
pub fn eigenstate(p: &ModelParams, t: f64, index: u8) -> Result<Spinor> {
    let half_az = 0.5 * azimuth(p, t);
    let (s, c) = (0.5 * p.beta).sin_cos();
    let up_phase = Complex64::from_polar(1.0, -half_az);
    let down_phase = Complex64::from_polar(1.0, half_az);
    let bare = match index {
        1 => Spinor::new(up_phase * c, down_phase * s),
        2 => Spinor::new(up_phase * s, -(down_phase * c)),
        other => return Err(Error::InvalidIndex(other)),
    };
    Ok(bare.scale(Complex64::from_polar(1.0, -p.gauge_phase(t))))
}
