//! State and Hamiltonian periods and their commensurability.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::evolution::amplitudes;
use crate::model::{ModelParams, LAMBDA_EPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

/// An `omega T'` at which `n` state cycles coincide with `m` field cycles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommensurateSolution {
    pub n: u32,
    pub m: u32,
    /// Dimensionless `omega T'`.
    pub omega_t_prime: f64,
    pub branch: Branch,
    /// `|lambda / omega' - n / m|` at the solution.
    pub ratio_residual: f64,
    /// `|C2(m T')|` from the closed form.
    pub c2_residual: f64,
}

/// `T'' = 2 pi / lambda`.
pub fn state_period(p: &ModelParams) -> Result<f64> {
    let lambda = p.lambda();
    if lambda <= LAMBDA_EPS * p.omega {
        return Err(Error::DegenerateLambda { lambda });
    }
    Ok(2.0 * PI / lambda)
}

/// `T' = 2 pi / omega'`.
pub fn hamiltonian_period(p: &ModelParams) -> Result<f64> {
    if p.omega_prime <= 0.0 {
        return Err(Error::UndefinedPeriod);
    }
    Ok(2.0 * PI / p.omega_prime)
}

/// `n / m = T' / T'' = lambda / omega'`.
pub fn commensurate_ratio(p: &ModelParams) -> Result<f64> {
    if p.omega_prime <= 0.0 {
        return Err(Error::UndefinedPeriod);
    }
    Ok(p.lambda() / p.omega_prime)
}

/// `n / m` as a function of `x = omega T'`:
/// `sqrt(4 pi^2 + x^2 - 4 pi x cos(beta)) / (2 pi)`.
pub fn ratio_from_omega_t_prime(x: f64, beta: f64) -> f64 {
    (4.0 * PI * PI + x * x - 4.0 * PI * x * beta.cos()).sqrt() / (2.0 * PI)
}

/// All strictly positive `x = omega T'` with `ratio_from_omega_t_prime(x) = n / m`.
///
/// The condition is quadratic in `x`, with roots
/// `2 pi [cos(beta) +- sqrt((n/m)^2 - sin^2(beta))]`. Pairs are not reduced
/// to lowest terms.
pub fn solve_commensurate(n: u32, m: u32, beta: f64) -> Result<Vec<CommensurateSolution>> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParams("n and m must be >= 1".into()));
    }
    if !(0.0..=PI).contains(&beta) {
        return Err(Error::InvalidParams(format!(
            "beta = {beta} outside [0, pi]"
        )));
    }
    let r = n as f64 / m as f64;
    let (sb, cb) = beta.sin_cos();
    let mut disc = r * r - sb * sb;
    if disc < 0.0 {
        if disc > -1e-14 * r * r {
            disc = 0.0;
        } else {
            return Err(Error::NoSolution {
                ratio_sqr: r * r,
                sin_sqr: sb * sb,
            });
        }
    }
    let root = disc.sqrt();
    // product of roots is 4 pi^2 (1 - r^2); use it for the cancelling root
    let product = 4.0 * PI * PI * (1.0 - r * r);
    let (plus, minus) = if cb >= 0.0 {
        let plus = 2.0 * PI * (cb + root);
        let minus = if plus > 0.0 {
            product / plus
        } else {
            2.0 * PI * (cb - root)
        };
        (plus, minus)
    } else {
        let minus = 2.0 * PI * (cb - root);
        (product / minus, minus)
    };

    let mut out = Vec::new();
    for (x, branch) in [(plus, Branch::Plus), (minus, Branch::Minus)] {
        if x > 0.0 && (branch == Branch::Plus || (x - plus).abs() > 0.0) {
            out.push(verify(n, m, beta, x, branch));
        }
    }
    if out.is_empty() {
        return Err(Error::NoPositiveRoot);
    }
    Ok(out)
}

fn verify(n: u32, m: u32, beta: f64, x: f64, branch: Branch) -> CommensurateSolution {
    let p = ModelParams {
        omega: 1.0,
        omega_prime: 2.0 * PI / x,
        beta,
        alpha: 0.0,
        gauge_a: 0.0,
        gauge_b: ModelParams::DEFAULT_GAUGE_B,
    };
    let r = n as f64 / m as f64;
    CommensurateSolution {
        n,
        m,
        omega_t_prime: x,
        branch,
        ratio_residual: (p.lambda() / p.omega_prime - r).abs(),
        c2_residual: amplitudes(&p, m as f64 * x).c2.norm(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p_half(ratio: f64) -> ModelParams {
        ModelParams::from_cos_beta(1.0, ratio, 0.5).unwrap()
    }

    #[test]
    fn state_period_examples() {
        let p = p_half(1.0);
        let t2 = state_period(&p).unwrap();
        assert_abs_diff_eq!(t2, 2.0 * PI, epsilon = 1e-14);
        let a = amplitudes(&p, t2);
        assert!(a.c2.norm() <= 1e-12);
        assert_abs_diff_eq!(a.c1.norm(), 1.0, epsilon = 1e-12);

        let p = ModelParams::new(1.0, 0.0, 0.8).unwrap();
        assert_abs_diff_eq!(state_period(&p).unwrap(), 2.0 * PI, epsilon = 1e-15);
        assert_abs_diff_eq!(
            state_period(&p_half(2.0)).unwrap(),
            2.0 * PI / 3f64.sqrt(),
            epsilon = 1e-14
        );
        let degenerate = ModelParams::new(1.0, 1.0, 0.0).unwrap();
        assert!(matches!(
            state_period(&degenerate),
            Err(Error::DegenerateLambda { .. })
        ));
    }

    #[test]
    fn ratio_examples() {
        assert_abs_diff_eq!(
            commensurate_ratio(&p_half(1.0)).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            commensurate_ratio(&p_half(1e9)).unwrap(),
            1.0,
            epsilon = 1e-8
        );
        assert_abs_diff_eq!(
            commensurate_ratio(&p_half(2.0)).unwrap(),
            3f64.sqrt() / 2.0,
            epsilon = 1e-15
        );
        assert_eq!(
            commensurate_ratio(&p_half(0.0)),
            Err(Error::UndefinedPeriod)
        );
        // agrees with the omega T' form
        let p = p_half(0.37);
        let x = p.omega * hamiltonian_period(&p).unwrap();
        assert_abs_diff_eq!(
            ratio_from_omega_t_prime(x, p.beta),
            commensurate_ratio(&p).unwrap(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn solve_examples() {
        let beta = 0.5f64.acos();
        let s = solve_commensurate(1, 1, beta).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].branch, Branch::Plus);
        assert_abs_diff_eq!(s[0].omega_t_prime, 2.0 * PI, epsilon = 1e-13);

        let s = solve_commensurate(2, 1, beta).unwrap();
        assert_eq!(s.len(), 1);
        assert_abs_diff_eq!(
            s[0].omega_t_prime,
            2.0 * PI * (0.5 + 13f64.sqrt() / 2.0),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(s[0].omega_t_prime, 14.4688, epsilon = 1e-4);

        let beta = 0.0f64.acos();
        assert!(matches!(
            solve_commensurate(1, 2, beta),
            Err(Error::NoSolution { .. })
        ));
    }

    #[test]
    fn minus_branch_when_ratio_between_sin_beta_and_one() {
        let beta = 0.5f64.acos(); // sin = 0.866
        let s = solve_commensurate(9, 10, beta).unwrap();
        assert_eq!(s.len(), 2);
        for sol in &s {
            assert!(sol.omega_t_prime > 0.0);
            assert!(sol.ratio_residual < 1e-10);
            assert!(sol.c2_residual < 1e-10);
        }
        assert_eq!(s[1].branch, Branch::Minus);
    }

    #[test]
    fn no_positive_root_for_southern_field() {
        // cos(beta) < 0 and n/m < 1: both roots negative
        let beta = (-0.5f64).acos();
        assert_eq!(solve_commensurate(9, 10, beta), Err(Error::NoPositiveRoot));
    }

    #[test]
    fn unreduced_pairs_give_the_reduced_solution() {
        let beta = 0.3;
        let a = solve_commensurate(3, 2, beta).unwrap();
        let b = solve_commensurate(6, 4, beta).unwrap();
        assert_abs_diff_eq!(a[0].omega_t_prime, b[0].omega_t_prime, epsilon = 1e-15);
    }
}
