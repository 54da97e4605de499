//! Logarithmic and generalized logarithmic means of two positive numbers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orders within this distance of −1 or 0 use the special-case formulas.
pub const BRANCH_TOL: f64 = 1e-9;

const DIAGONAL_TOL: f64 = 1e-12;

/// Order p of the generalized logarithmic mean L_p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanOrder(pub f64);

fn check_pair(op: &'static str, a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
        return Err(Error::domain(op, format!("a = {a}, b = {b} must be finite and > 0")));
    }
    Ok(())
}

fn on_diagonal(a: f64, b: f64) -> bool {
    (a - b).abs() <= DIAGONAL_TOL * a.min(b)
}

/// L(a, b) = (b − a)/(ln b − ln a), extended by L(a, a) = a.
pub fn log_mean(a: f64, b: f64) -> Result<f64> {
    check_pair("log_mean", a, b)?;
    if on_diagonal(a, b) {
        return Ok(a);
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    Ok((hi - lo) / ((hi - lo) / lo).ln_1p())
}

/// Identric mean L_0(a, b) = (1/e)(b^b / a^a)^{1/(b−a)}.
fn identric_mean(lo: f64, hi: f64) -> f64 {
    ((hi * hi.ln() - lo * lo.ln()) / (hi - lo) - 1.0).exp()
}

/// The generalized logarithmic mean of order p.
pub fn gen_log_mean(p: MeanOrder, a: f64, b: f64) -> Result<f64> {
    let p = p.0;
    check_pair("gen_log_mean", a, b)?;
    if !p.is_finite() {
        return Err(Error::parameter("gen_log_mean", format!("order p = {p} must be finite")));
    }
    if on_diagonal(a, b) {
        return Ok(a);
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    if (p + 1.0).abs() <= BRANCH_TOL {
        return log_mean(lo, hi);
    }
    if p.abs() <= BRANCH_TOL {
        return Ok(identric_mean(lo, hi));
    }
    // ln[(hi^{p+1} − lo^{p+1}) / ((p+1)(hi − lo))], factored to avoid
    // overflow for large |p| and loss near p = −1
    let q = p + 1.0;
    let ln_ratio = (lo / hi).ln();
    let ln_num = if q > 0.0 {
        q * hi.ln() + (-(q * ln_ratio).exp_m1()).ln() - q.ln()
    } else {
        q * lo.ln() + (-(-q * ln_ratio).exp_m1()).ln() - (-q).ln()
    };
    Ok(((ln_num - (hi - lo).ln()) / p).exp())
}
