//! End-to-end self check: closed forms against the RK4 oracles and the
//! module invariants, one report line per check.

use std::f64::consts::PI;

use berry_spin::*;
use num_complex::Complex64;

pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: &str, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            measured,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.measured <= self.tolerance
    }
}

fn default_t_max(p: &ModelParams) -> f64 {
    let s = p.scales();
    let longest = match (s.hamiltonian_period, s.state_period) {
        (Some(a), Some(b)) => a.max(b),
        (a, b) => a.or(b).unwrap_or(2.0 * PI / p.omega),
    };
    10.0 * longest
}

pub fn run(p: &ModelParams, t_max: Option<f64>, steps_per_period: usize) -> Result<Vec<Check>> {
    let t_max = t_max.unwrap_or_else(|| default_t_max(p));
    let cfg = IntegratorConfig::new(t_max)
        .with_steps_per_period(steps_per_period)
        .with_stride(10);
    let mut checks = Vec::new();

    let c_init = AmplitudePair::new(0.0, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let coeff = integrate_coefficients(p, &cfg, c_init)?;
    let closed = sample_closed_form(p, &coeff.times);
    checks.push(Check::new(
        "closed form vs RK4 coefficient equations",
        max_deviation(&closed, &coeff)?,
        1e-8,
    ));
    let lab = integrate_lab_frame(p, &cfg, eigenstate(p, 0.0, 1)?)?;
    checks.push(Check::new(
        "closed form vs RK4 lab-frame projections",
        max_deviation(&sample_closed_form(p, &lab.times), &lab)?,
        1e-8,
    ));
    checks.push(Check::new(
        "RK4 norm drift",
        coeff.max_norm_drift().max(lab.max_norm_drift()),
        1e-9,
    ));
    checks.push(Check::new(
        "closed-form normalization",
        closed.max_norm_drift(),
        1e-12,
    ));
    if p.beta.sin() == 0.0 {
        let c2 = closed
            .amplitudes
            .iter()
            .map(|a| a.c2.norm())
            .fold(0.0, f64::max);
        checks.push(Check::new("polar field: C2 identically zero", c2, 0.0));
    }
    if let Ok(t2) = state_period(p) {
        let worst = (1..=5)
            .map(|n| amplitudes(p, n as f64 * t2).c2.norm())
            .fold(0.0, f64::max);
        checks.push(Check::new("|C2(n T'')|, n = 1..5", worst, 1e-12));
    }

    let nominal = cfg.nominal_step(p) * steps_per_period as f64;
    let n_points = ((t_max / nominal) * 1000.0).ceil().max(4096.0) as usize;
    let mut worst_quad = 0.0f64;
    let mut worst_a = 0.0f64;
    let mut worst_b = 0.0f64;
    for k in 0..=10 {
        let t = t_max * k as f64 / 10.0;
        let closed = dynamical_phase(p, t);
        let quad = dynamical_phase_quadrature(p, t, n_points)?;
        worst_quad = worst_quad.max((closed - quad).abs() / (1.0 + closed.abs()));

        if let Ok(z) = berry_phase(p, t) {
            for a in [0.0, 1.3, PI] {
                if let Ok(w) = berry_phase(&p.with_gauge(a, p.gauge_b), t) {
                    worst_a = worst_a.max((z - w).norm());
                }
            }
            let b2 = p.gauge_b + 0.75;
            if let Ok(w) = berry_phase(&p.with_gauge(p.gauge_a, b2), t) {
                let law = (p.gauge_b - b2) * p.omega_prime * t;
                worst_b = worst_b.max(((z - w).re - law).abs()).max((z - w).im.abs());
            }
        }
    }
    checks.push(Check::new(
        "dynamical phase: closed vs Simpson (relative)",
        worst_quad,
        1e-9,
    ));
    checks.push(Check::new("gauge-A invariance of phi_B", worst_a, 1e-12));
    checks.push(Check::new("gauge-B shift law", worst_b, 1e-12));

    let base = p.with_gauge(p.gauge_a, ModelParams::DEFAULT_GAUGE_B);
    let adiabatic = adiabatic_limit_check(&base, 1e-4)?;
    checks.push(Check::new(
        "adiabatic limit: Re phi_B(T') at w'/w=1e-4 vs pi cos(beta) - pi",
        (adiabatic - adiabatic_reference(p.beta)).abs(),
        1e-3,
    ));
    checks.push(Check::new(
        "non-adiabatic limit: Re phi_B(T') mod 2 pi at w'/w=1e4",
        nonadiabatic_limit_check(&base, 1e4)?.abs(),
        1e-3,
    ));
    checks.push(Check::new(
        "gauge fix: B from the adiabatic correspondence vs -1/2",
        (gauge_b_fix(&base)? + 0.5).abs(),
        1e-6,
    ));
    Ok(checks)
}

pub fn render(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        out.push_str(&format!(
            "{}  {:<66} measured={:.3e} tol={:.1e}\n",
            if c.passed() { "PASS" } else { "FAIL" },
            c.name,
            c.measured,
            c.tolerance
        ));
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    if failed == 0 {
        out.push_str(&format!(
            "PASS: all {} checks within tolerance\n",
            checks.len()
        ));
    } else {
        out.push_str(&format!(
            "FAIL: {failed} of {} checks out of tolerance\n",
            checks.len()
        ));
    }
    out
}
