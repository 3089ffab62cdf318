//! Output records and the sweeps that produce them.

use berry_spin::numeric::unwrap_in_place;
use berry_spin::{amplitudes, decompose, dynamical_phase, Error, ModelParams};
use rayon::prelude::*;

use crate::args::{PhysicsArgs, SweepArgs, TimeUnit, Variable};

/// Columns every record carries, after the optional swept variable.
pub const COLUMNS: [&str; 12] = [
    "t",
    "t_over_tprime",
    "re_c1",
    "im_c1",
    "re_c2",
    "im_c2",
    "p1",
    "theta_r",
    "theta_i",
    "phi_d",
    "re_phi_b",
    "im_phi_b",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    /// `(column name, value)` of the swept variable, if any.
    pub swept: Option<(&'static str, f64)>,
    /// Values aligned with [`COLUMNS`]; `None` is an undefined entry.
    pub values: [Option<f64>; 12],
}

const THETA_R: usize = 7;
const RE_PHI_B: usize = 10;

impl Record {
    pub fn header(&self) -> Vec<&'static str> {
        self.swept
            .iter()
            .map(|(name, _)| *name)
            .chain(COLUMNS)
            .collect()
    }

    pub fn cells(&self) -> Vec<Option<f64>> {
        self.swept
            .iter()
            .map(|(_, v)| Some(*v))
            .chain(self.values)
            .collect()
    }

    /// Whether the phase columns could be evaluated.
    pub fn has_phases(&self) -> bool {
        self.values[THETA_R].is_some()
    }
}

/// Convert a time given in `unit` to absolute time.
pub fn absolute_time(p: &ModelParams, unit: TimeUnit, value: f64) -> Result<f64, Error> {
    Ok(match unit {
        TimeUnit::T => value,
        TimeUnit::Tprime => value * berry_spin::hamiltonian_period(p)?,
        TimeUnit::Tsecond => value * berry_spin::state_period(p)?,
    })
}

/// Full record at time `t`; phases are left undefined where `|C1|` vanishes.
pub fn evaluate(p: &ModelParams, t: f64, swept: Option<(&'static str, f64)>) -> Record {
    let a = amplitudes(p, t);
    let t_over_tprime = berry_spin::hamiltonian_period(p).ok().map(|tp| t / tp);
    let (theta_r, theta_i, re_b, im_b) = match decompose(p, t) {
        Ok(d) => (
            Some(d.theta_r),
            Some(d.theta_i),
            Some(d.phi_b.re),
            Some(d.phi_b.im),
        ),
        Err(_) => (None, None, None, None),
    };
    Record {
        swept,
        values: [
            Some(t),
            t_over_tprime,
            Some(a.c1.re),
            Some(a.c1.im),
            Some(a.c2.re),
            Some(a.c2.im),
            Some(a.c1.norm_sqr()),
            theta_r,
            theta_i,
            Some(dynamical_phase(p, t)),
            re_b,
            im_b,
        ],
    }
}

/// Sample points of a sweep, endpoints exact.
pub fn sample_points(spec: &SweepArgs) -> Result<Vec<f64>, Error> {
    let bad = |msg: String| Err(Error::InvalidParams(msg));
    if !(spec.start.is_finite() && spec.stop.is_finite()) || spec.start >= spec.stop {
        return bad(format!(
            "sweep needs start < stop (got {} .. {})",
            spec.start, spec.stop
        ));
    }
    if spec.samples < 2 {
        return bad(format!(
            "sweep needs at least 2 samples (got {})",
            spec.samples
        ));
    }
    if spec.log && spec.start <= 0.0 {
        return bad("log sweep needs start > 0".into());
    }
    if spec.variable != Variable::Time && spec.start <= 0.0 {
        return bad(format!("{} sweep needs start > 0", spec.variable.column()));
    }
    let last = spec.samples - 1;
    let points = (0..spec.samples)
        .map(|i| {
            let f = i as f64 / last as f64;
            if i == last {
                spec.stop
            } else if spec.log {
                (spec.start.ln() + f * (spec.stop.ln() - spec.start.ln())).exp()
            } else {
                spec.start + f * (spec.stop - spec.start)
            }
        })
        .collect();
    Ok(points)
}

/// Evaluate a sweep. For the frequency axes each record sits at `t = T'`,
/// and `Re phi_B` (with `theta_r`) is shifted by multiples of 2 pi so the
/// curve stays continuous along the sweep.
pub fn sweep(physics: &PhysicsArgs, spec: &SweepArgs) -> Result<Vec<Record>, Error> {
    let points = sample_points(spec)?;
    let name = spec.variable.column();
    let records = match spec.variable {
        Variable::Time => {
            let p = physics.params()?;
            let times = points
                .iter()
                .map(|&v| absolute_time(&p, spec.time_unit, v))
                .collect::<Result<Vec<_>, _>>()?;
            points
                .par_iter()
                .zip(times.par_iter())
                .map(|(&v, &t)| evaluate(&p, t, Some((name, v))))
                .collect::<Vec<_>>()
        }
        Variable::OmegaRatio | Variable::OmegaTPrime => {
            let ratios: Vec<f64> = points
                .iter()
                .map(|&v| match spec.variable {
                    Variable::OmegaRatio => v,
                    _ => 2.0 * std::f64::consts::PI / v,
                })
                .collect();
            let params = ratios
                .iter()
                .map(|&r| physics.params_with_ratio(r))
                .collect::<Result<Vec<_>, _>>()?;
            let mut records: Vec<Record> = points
                .par_iter()
                .zip(params.par_iter())
                .map(|(&v, p)| {
                    let t = berry_spin::hamiltonian_period(p).expect("omega' > 0 checked");
                    evaluate(p, t, Some((name, v)))
                })
                .collect();
            let mut re_b: Vec<Option<f64>> = records.iter().map(|r| r.values[RE_PHI_B]).collect();
            let shifts = unwrap_in_place(&mut re_b);
            for ((rec, b), s) in records.iter_mut().zip(re_b).zip(shifts) {
                rec.values[RE_PHI_B] = b;
                rec.values[THETA_R] = rec.values[THETA_R].map(|v| v + s);
            }
            records
        }
    };
    Ok(records)
}
