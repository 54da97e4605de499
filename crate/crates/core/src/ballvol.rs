//! Volume Ω_n = π^{n/2} / Γ(1 + n/2) of the unit ball in ℝⁿ and the
//! two-sided bounds on ratios of its powers. All comparisons are made
//! between logarithms.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gammakit;
use crate::ineq::CheckResult;

fn check_dim(op: &'static str, n: i64, min: i64) -> Result<f64> {
    if n < min {
        return Err(Error::domain(op, format!("dimension n = {n} must be >= {min}")));
    }
    Ok(n as f64)
}

/// ln Ω_n.
pub fn ln_omega(n: i64) -> Result<f64> {
    let nf = check_dim("ln_omega", n, 0)?;
    Ok(0.5 * nf * PI.ln() - gammakit::lngamma(1.0 + 0.5 * nf)?)
}

/// Ω_n. Underflows to 0 for very large n; use [`ln_omega`] there.
pub fn omega(n: i64) -> Result<f64> {
    Ok(ln_omega(n)?.exp())
}

/// The ratio bounds at dimension n ≥ 1:
///
/// ```text
/// (a) √((n+2)/(n+4)) < Ω_{n+2}^{1/(n+2)} / Ω_n^{1/n} < ((n+2)/(n+4))^{1/4}
/// (b) √((n+2)/(n+3)) < Ω_{n+1}^{1/(n+1)} / Ω_n^{1/n} < ((n+2)/(n+3))^{1/4}
/// (c) 2/√π < Ω_n / Ω_{n+1}^{n/(n+1)} < √e
/// ```
///
/// and for n > 2 the check (d) that the window of (b) lies inside that of
/// (c): `((n+2)/(n+3))^{−n/4} ≥ 2/√π` and `((n+2)/(n+3))^{−n/2} ≤ √e`.
pub fn ball_ratio_checks(n: i64) -> Result<Vec<CheckResult>> {
    let nf = check_dim("ball_ratio_checks", n, 1)?;
    let l0 = ln_omega(n)?;
    let l1 = ln_omega(n + 1)?;
    let l2 = ln_omega(n + 2)?;
    let noise = 1e-14 * (l0.abs() + l1.abs() + l2.abs());
    let base = |value: f64| vec![("n".to_string(), nf), ("value".to_string(), value), ("log_scale".to_string(), 1.0)];

    let ln_a = -(2.0 / (nf + 2.0)).ln_1p(); // ln((n+2)/(n+4))
    let ln_b = -(1.0 / (nf + 2.0)).ln_1p(); // ln((n+2)/(n+3))
    let two_over_root_pi = (2.0 / PI.sqrt()).ln();

    let mid_a = l2 / (nf + 2.0) - l0 / nf;
    let (lo_a, hi_a) = (0.5 * ln_a, 0.25 * ln_a);
    let mid_b = l1 / (nf + 1.0) - l0 / nf;
    let (lo_b, hi_b) = (0.5 * ln_b, 0.25 * ln_b);
    let mid_c = l0 - nf / (nf + 1.0) * l1;
    let (lo_c, hi_c) = (two_over_root_pi, 0.5);

    let mut out = vec![
        CheckResult::from_margins("ball_ratio_a", base(mid_a), lo_a, hi_a, &[mid_a - lo_a, hi_a - mid_a], noise),
        CheckResult::from_margins("ball_ratio_b", base(mid_b), lo_b, hi_b, &[mid_b - lo_b, hi_b - mid_b], noise),
        // the lower side is non-strict and attained at n = 1
        CheckResult::from_mixed_margins(
            "ball_ratio_c",
            base(mid_c),
            lo_c,
            hi_c,
            &[hi_c - mid_c],
            &[mid_c - lo_c],
            noise,
        ),
    ];
    if n > 2 {
        let lo_d = -0.25 * nf * ln_b;
        let hi_d = -0.5 * nf * ln_b;
        let inputs = vec![("n".to_string(), nf), ("log_scale".to_string(), 1.0)];
        out.push(CheckResult::from_mixed_margins(
            "ball_ratio_refinement",
            inputs,
            lo_d,
            hi_d,
            &[],
            &[lo_d - lo_c, hi_c - hi_d],
            1e-15,
        ));
    }
    Ok(out)
}
