//! Catalog of the gamma/psi inequalities, each evaluated to a [`CheckResult`].
//!
//! Comparisons of powers and gamma ratios run in log space. Where a margin
//! would otherwise be a tiny difference of large quantities it is formed
//! from a cancellation-free rearrangement; each result records its
//! `log_scale` in `inputs`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gammakit::{self, EULER_GAMMA};
use crate::hfamily::{self, ENDPOINT_CLEARANCE};
use crate::means::{self, MeanOrder};

const ROUNDING_UNIT: f64 = 4.0 * f64::EPSILON;

/// One evaluated inequality instance.
///
/// For one-sided claims `lhs < rhs` and `margin = rhs − lhs`. For two-sided
/// claims `lhs` and `rhs` are the lower and upper bounds, the bounded
/// quantity is stored in `inputs` as `value`, and `margin` is the smaller of
/// the two one-sided margins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub inputs: Vec<(String, f64)>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
}

fn inputs(pairs: &[(&str, f64)]) -> Vec<(String, f64)> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

impl CheckResult {
    /// Assemble a result from one or two margins. A positive margin that is
    /// within `noise` is reported as zero with `zero_margin` and
    /// `raw_margin` entries, since every cataloged claim is strict.
    pub fn from_margins(
        name: &str,
        mut inputs: Vec<(String, f64)>,
        lhs: f64,
        rhs: f64,
        margins: &[f64],
        noise: f64,
    ) -> CheckResult {
        let raw = margins.iter().copied().fold(f64::INFINITY, |m, v| if m.is_nan() || v.is_nan() { f64::NAN } else { m.min(v) });
        let mut margin = raw;
        if raw > 0.0 && raw <= noise {
            inputs.push(("zero_margin".into(), 1.0));
            inputs.push(("raw_margin".into(), raw));
            margin = 0.0;
        }
        CheckResult { name: name.to_string(), inputs, lhs, rhs, margin, holds: margin > 0.0 }
    }

    /// Like [`CheckResult::from_margins`], with extra margins for
    /// non-strict sides. A weak margin within `noise` of zero counts as
    /// attained equality and is recorded as `equality`.
    pub fn from_mixed_margins(
        name: &str,
        mut inputs: Vec<(String, f64)>,
        lhs: f64,
        rhs: f64,
        strict: &[f64],
        weak: &[f64],
        noise: f64,
    ) -> CheckResult {
        let mut weak_min = f64::INFINITY;
        for &m in weak {
            let m = if m.abs() <= noise { 0.0 } else { m };
            weak_min = if m.is_nan() || weak_min.is_nan() { f64::NAN } else { weak_min.min(m) };
        }
        let mut c = CheckResult::from_margins(name, Vec::new(), lhs, rhs, strict, noise);
        if weak_min == 0.0 {
            inputs.push(("equality".into(), 1.0));
        }
        inputs.append(&mut c.inputs);
        c.inputs = inputs;
        c.holds = c.holds && weak_min >= 0.0;
        c.margin = if c.margin.is_nan() || weak_min.is_nan() { f64::NAN } else { c.margin.min(weak_min) };
        c
    }

    /// `|value − target| < tol`, reported with lhs = |value − target|, rhs = tol.
    pub fn within(name: &str, mut inputs: Vec<(String, f64)>, value: f64, target: f64, tol: f64) -> CheckResult {
        inputs.push(("value".into(), value));
        inputs.push(("target".into(), target));
        let diff = (value - target).abs();
        CheckResult::from_margins(name, inputs, diff, tol, &[tol - diff], 0.0)
    }

    /// Value of a named input, if present.
    pub fn input(&self, key: &str) -> Option<f64> {
        self.inputs.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }
}

fn check_positive(op: &'static str, name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::domain(op, format!("{name} = {v} must be finite and > 0")));
    }
    Ok(())
}

fn factorial(n: usize) -> f64 {
    (2..=n).fold(1.0, |acc, j| acc * j as f64)
}

/// (1+u) ln(1+u) − u without cancellation for small u.
fn xlogx_excess(u: f64) -> f64 {
    if u.abs() < 0.25 {
        // Σ_{n≥2} (−1)^n uⁿ / (n(n−1))
        let mut sum = 0.0;
        let mut pow = u * u;
        for n in 2..60 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let term = sign * pow / (n * (n - 1)) as f64;
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
            pow *= u;
        }
        sum
    } else {
        (1.0 + u) * u.ln_1p() - u
    }
}

/// ψ(x) − ln x + 1/(2x) + 1/(12x²) = −Σ_{n≥2} B_{2n} / (2n x^{2n}), for x ≥ 16.
fn psi_stirling_tail(x: f64) -> f64 {
    let c = gammakit::constants();
    let inv2 = (x * x).recip();
    let mut pow = inv2 * inv2;
    let mut sum = 0.0;
    for n in 2..=30 {
        let term = -c.bernoulli(n) / (2 * n) as f64 * pow;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
        pow *= inv2;
    }
    sum
}

/// The four two-sided bounds on ψ(x):
/// `ln x − 1/x < ψ < ln x − 1/(2x)`,
/// `ln(x+½) − 1/x < ψ < ln(x+1) − 1/x`,
/// `ln(x+½) − 1/x < ψ < ln(x+e^{−γ}) − 1/x` and
/// `ln x − 1/(2x) − 1/(12x²) < ψ < ln x − 1/(2x)`.
pub fn psi_log_bounds(x: f64) -> Result<Vec<CheckResult>> {
    check_positive("psi_log_bounds", "x", x)?;
    let psi = gammakit::digamma(x)?;
    let r = gammakit::digamma_minus_ln(x)?;
    let lnx = x.ln();
    let inv = x.recip();
    let noise = if x < 16.0 { 1e-15 * (psi.abs() + lnx.abs()) } else { 1e-15 * r.abs() } + ROUNDING_UNIT * inv;
    let base = || inputs(&[("x", x), ("value", psi), ("log_scale", 0.0)]);

    let half_shift = (0.5 * inv).ln_1p();
    let e_gamma = (-EULER_GAMMA).exp();

    let lemma = CheckResult::from_margins(
        "psi_log_bounds_lemma",
        base(),
        lnx - inv,
        lnx - 0.5 * inv,
        &[r + inv, -0.5 * inv - r],
        noise,
    );
    let beta = CheckResult::from_margins(
        "psi_log_bounds_beta",
        base(),
        (x + 0.5).ln() - inv,
        (x + 1.0).ln() - inv,
        &[r - half_shift + inv, inv.ln_1p() - inv - r],
        noise,
    );
    let sharp = CheckResult::from_margins(
        "psi_log_bounds_sharp",
        base(),
        (x + 0.5).ln() - inv,
        (x + e_gamma).ln() - inv,
        &[r - half_shift + inv, (e_gamma * inv).ln_1p() - inv - r],
        noise,
    );
    let (asym_lo, asym_noise) = if x >= 16.0 {
        let t = psi_stirling_tail(x);
        (t, ROUNDING_UNIT * t.abs())
    } else {
        (r + 0.5 * inv + inv * inv / 12.0, noise)
    };
    let asym = CheckResult::from_margins(
        "psi_log_bounds_asymptotic",
        base(),
        lnx - 0.5 * inv - inv * inv / 12.0,
        lnx - 0.5 * inv,
        &[asym_lo, -0.5 * inv - r],
        asym_noise,
    );
    Ok(vec![lemma, beta, sharp, asym])
}

/// The upper bound ln(x + e^{−γ}) − 1/x lies below ln(x + 1) − 1/x.
pub fn psi_upper_refinement(x: f64) -> Result<CheckResult> {
    check_positive("psi_upper_refinement", "x", x)?;
    let e_gamma = (-EULER_GAMMA).exp();
    let lhs = (x + e_gamma).ln() - x.recip();
    let rhs = (x + 1.0).ln() - x.recip();
    let margin = ((1.0 - e_gamma) / (x + e_gamma)).ln_1p();
    Ok(CheckResult::from_margins(
        "psi_upper_refinement",
        inputs(&[("x", x), ("log_scale", 0.0)]),
        lhs,
        rhs,
        &[margin],
        ROUNDING_UNIT * margin.abs(),
    ))
}

/// The two two-sided bounds on (−1)^{k+1} ψ^(k)(x):
/// `(k−1)!/x^k + k!/(2x^{k+1}) < · < (k−1)!/x^k + k!/x^{k+1}` and
/// `(k−1)!/(x+1)^k + k!/x^{k+1} < · < (k−1)!/(x+½)^k + k!/x^{k+1}`.
pub fn polygamma_bounds(k: usize, x: f64) -> Result<Vec<CheckResult>> {
    check_positive("polygamma_bounds", "x", x)?;
    let psi_k = gammakit::polygamma(k, x)?;
    let v = if k % 2 == 1 { psi_k } else { -psi_k };
    let (fk1, fk) = (factorial(k - 1), factorial(k));
    let ki = k as i32;
    let tail = fk / x.powi(ki + 1);
    let noise = 64.0 * f64::EPSILON * v;
    let base = || inputs(&[("k", k as f64), ("x", x), ("value", v), ("log_scale", 0.0)]);

    let lo1 = fk1 / x.powi(ki) + 0.5 * tail;
    let hi1 = fk1 / x.powi(ki) + tail;
    let lo2 = fk1 / (x + 1.0).powi(ki) + tail;
    let hi2 = fk1 / (x + 0.5).powi(ki) + tail;
    // subtracting k!/x^{k+1} from both sides leaves a bound on
    // |ψ^(k)(x+1)|, which avoids cancellation when x is small
    let shifted = gammakit::polygamma(k, x + 1.0)?.abs();
    let m_lo2 = shifted - fk1 / (x + 1.0).powi(ki);
    let m_hi2 = fk1 / (x + 0.5).powi(ki) - shifted;
    Ok(vec![
        CheckResult::from_margins("polygamma_bounds_lemma", base(), lo1, hi1, &[v - lo1, hi1 - v], noise),
        CheckResult::from_margins(
            "polygamma_bounds_beta",
            base(),
            lo2,
            hi2,
            &[m_lo2, m_hi2],
            64.0 * f64::EPSILON * shifted,
        ),
    ])
}

/// `((x+y+1)/(x+y+t+1))^a < [Γ(x+y+1)/Γ(y+1)]^{1/x} / [Γ(x+y+t+1)/Γ(y+1)]^{1/(x+t)} < ((x+y+1)/(x+y+t+1))^b`,
/// compared as logarithms.
pub fn gamma_ratio_ineq(x: f64, y: f64, t: f64, a: f64, b: f64) -> Result<CheckResult> {
    const OP: &str = "gamma_ratio_ineq";
    if !(y.is_finite() && y > -1.0) {
        return Err(Error::domain(OP, format!("y = {y} must be > -1")));
    }
    check_positive(OP, "t", t)?;
    let z = x + y + 1.0;
    if !x.is_finite() || z <= ENDPOINT_CLEARANCE {
        return Err(Error::domain(OP, format!("x = {x} must exceed -y-1 = {}", -(y + 1.0))));
    }
    if x == 0.0 || x + t == 0.0 {
        return Err(Error::domain(OP, "x and x + t must be nonzero"));
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::parameter(OP, "exponents a, b must be finite"));
    }
    let g0 = hfamily::log_gamma_root(x, y)?;
    let g1 = hfamily::log_gamma_root(x + t, y)?;
    let mid = g0 - g1;
    let ln_r = -(t / z).ln_1p();
    let lower = a * ln_r;
    let upper = b * ln_r;
    let noise = 1e-14 * (g0.abs() + g1.abs()) + ROUNDING_UNIT * (lower.abs() + upper.abs());
    Ok(CheckResult::from_margins(
        "gamma_ratio_ineq",
        inputs(&[("x", x), ("y", y), ("t", t), ("a", a), ("b", b), ("value", mid), ("log_scale", 1.0)]),
        lower,
        upper,
        &[mid - lower, upper - mid],
        noise,
    ))
}

/// `(1+2t)/(2t²) · [ln Γ(t/(1+2t)) − ln Γ(t)] < 1 − ψ(t)` for t > 0.
pub fn thm2_ineq(t: f64) -> Result<CheckResult> {
    check_positive("thm2_ineq", "t", t)?;
    let b = t / (1.0 + 2.0 * t);
    let lhs = (1.0 + 2.0 * t) / (2.0 * t * t) * gammakit::lngamma_diff(b, t)?;
    let rhs = 1.0 - gammakit::digamma(t)?;
    let noise = 1e-14 * (lhs.abs() + rhs.abs());
    Ok(CheckResult::from_margins(
        "thm2_ineq",
        inputs(&[("t", t), ("log_scale", 0.0)]),
        lhs,
        rhs,
        &[rhs - lhs],
        noise,
    ))
}

/// `exp(ψ(L(a,b))) < [Γ(a)/Γ(b)]^{(a−b)}` with the exponent as printed,
/// compared as `ψ(L(a,b)) < (a−b)(ln Γ(a) − ln Γ(b))`.
///
/// `inputs` also carries `mean_value = (ln Γ(a) − ln Γ(b))/(a − b)`, the
/// right-hand side under the 1/(a−b) reading of the exponent.
pub fn batir_ineq(a: f64, b: f64) -> Result<CheckResult> {
    check_positive("batir_ineq", "a", a)?;
    check_positive("batir_ineq", "b", b)?;
    if a == b {
        return Err(Error::domain("batir_ineq", "a and b must differ"));
    }
    let lhs = gammakit::digamma(means::log_mean(a, b)?)?;
    let diff = gammakit::lngamma_diff(a, b)?;
    let rhs = (a - b) * diff;
    let mean_value = diff / (a - b);
    let noise = 1e-14 * (lhs.abs() + rhs.abs());
    Ok(CheckResult::from_margins(
        "batir_ineq",
        inputs(&[("a", a), ("b", b), ("mean_value", mean_value), ("log_scale", 1.0)]),
        lhs,
        rhs,
        &[rhs - lhs],
        noise,
    ))
}

/// `(−1)^i ψ^(i)(L_p(s,t)) ≤ (−1)^i/(t−s) ∫_s^t ψ^(i)(u) du ≤ (−1)^i ψ^(i)(L_q(s,t))`
/// for i ∈ {0, 1}, p ≤ −i−1 and q ≥ −i.
pub fn psi_integral_mean_ineq(i: u32, s: f64, t: f64, p: f64, q: f64) -> Result<CheckResult> {
    const OP: &str = "psi_integral_mean_ineq";
    check_positive(OP, "s", s)?;
    check_positive(OP, "t", t)?;
    if s == t {
        return Err(Error::domain(OP, "s and t must differ"));
    }
    if i > 1 {
        return Err(Error::parameter(OP, format!("i = {i} must be 0 or 1")));
    }
    let fi = i as f64;
    if !(p <= -fi - 1.0) || !(q >= -fi) {
        return Err(Error::parameter(OP, format!("need p <= {} and q >= {} (got p = {p}, q = {q})", -fi - 1.0, -fi)));
    }
    let lp = means::gen_log_mean(MeanOrder(p), s, t)?;
    let lq = means::gen_log_mean(MeanOrder(q), s, t)?;
    let (lower, mid, upper) = if i == 0 {
        let mean = gammakit::lngamma_diff(t, s)? / (t - s);
        (gammakit::digamma(lp)?, mean, gammakit::digamma(lq)?)
    } else {
        let mean = (gammakit::digamma(t)? - gammakit::digamma(s)?) / (t - s);
        (-gammakit::polygamma(1, lp)?, -mean, -gammakit::polygamma(1, lq)?)
    };
    let noise = 1e-13 * (lower.abs() + mid.abs() + upper.abs());
    Ok(CheckResult::from_margins(
        OP,
        inputs(&[("i", fi), ("s", s), ("t", t), ("p", p), ("q", q), ("value", mid), ("log_scale", 0.0)]),
        lower,
        upper,
        &[mid - lower, upper - mid],
        noise,
    ))
}

/// `ln(1+t) < t(t²+12t+12) / (6(t+1)(t+2))` for t > 0.
pub fn log_upper_bound_ineq(t: f64) -> Result<CheckResult> {
    check_positive("log_upper_bound_ineq", "t", t)?;
    let lhs = t.ln_1p();
    let rhs = t * (t * t + 12.0 * t + 12.0) / (6.0 * (t + 1.0) * (t + 2.0));
    let margin = if t < 0.1 {
        // Σ_{n≥5} (−1)^n [1/n − 1/6 − (4/3) 2^{−n}] tⁿ
        let mut sum = 0.0;
        let mut pow = t.powi(5);
        let mut half_pow = 0.5f64.powi(5);
        for n in 5..80 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let term = sign * (1.0 / n as f64 - 1.0 / 6.0 - 4.0 / 3.0 * half_pow) * pow;
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
            pow *= t;
            half_pow *= 0.5;
        }
        sum
    } else {
        rhs - lhs
    };
    let noise = if t < 0.1 { ROUNDING_UNIT * margin.abs() } else { ROUNDING_UNIT * rhs.abs() };
    Ok(CheckResult::from_margins(
        "log_upper_bound_ineq",
        inputs(&[("t", t), ("log_scale", 0.0)]),
        lhs,
        rhs,
        &[margin],
        noise,
    ))
}

/// Auxiliary functions used in reducing the ψ/ln Γ inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum AuxFn {
    /// 4t − 3 ln(2t+1) − 1
    Qlog,
    /// 3t³ + 11t² + 3t − 3
    Qcub,
    /// 9t⁶ + 54t⁵ + 55t⁴ − 60t³ − 93t² − 18t + 9
    Hpoly,
}

pub fn aux_eval(f: AuxFn, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain("aux_eval", format!("t = {t} must be finite")));
    }
    Ok(match f {
        AuxFn::Qlog => {
            if t <= -0.5 {
                return Err(Error::domain("aux_eval", format!("QLOG needs t > -1/2 (got {t})")));
            }
            4.0 * t - 3.0 * (2.0 * t).ln_1p() - 1.0
        }
        AuxFn::Qcub => ((3.0 * t + 11.0) * t + 3.0) * t - 3.0,
        AuxFn::Hpoly => (((((9.0 * t + 54.0) * t + 55.0) * t - 60.0) * t - 93.0) * t - 18.0) * t + 9.0,
    })
}

/// The unique zero of QCUB in (1/3, 1), located by bisection to `tol`.
pub fn qcub_root(tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::parameter("qcub_root", "tol must be > 0"));
    }
    let (mut lo, mut hi) = (1.0 / 3.0, 1.0);
    if !(aux_eval(AuxFn::Qcub, lo)? < 0.0 && aux_eval(AuxFn::Qcub, hi)? > 0.0) {
        return Err(Error::domain("qcub_root", "no sign change on (1/3, 1)"));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if aux_eval(AuxFn::Qcub, mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The three sufficient conditions for the ψ/ln Γ inequality on (0, 8/7):
/// `ψ(t) − ψ(s) < 1` with `s = 2t²/((1+2t) ln(1+2t))`;
/// `ψ′(√(2t³/L)) ≤ L / (t(L − 2t))` with `L = (2t+1) ln(2t+1)`; and
/// `L/(2t³) + 1/(√(2t³/L) + ½) ≤ L / (t(L − 2t))`.
pub fn suffice_chain(t: f64) -> Result<Vec<CheckResult>> {
    if !(t > 0.0 && t < 8.0 / 7.0) {
        return Err(Error::domain("suffice_chain", format!("t = {t} must lie in (0, 8/7)")));
    }
    let u = 2.0 * t;
    let ln_u = u.ln_1p();
    let big_l = (1.0 + u) * ln_u;
    let excess = xlogx_excess(u); // L − 2t
    let s = 2.0 * t * t / big_l;
    let base = || inputs(&[("t", t), ("log_scale", 0.0)]);

    // ψ(t) − ψ(s) = ψ(1+t) − ψ(1+s) + 1/s − 1/t, with t − s = t·(L − 2t)/L
    let inv_gap = (t * excess / big_l) / (t * s);
    let lhs1 = gammakit::digamma(1.0 + t)? - gammakit::digamma(1.0 + s)? + inv_gap;
    let c1 = CheckResult::from_margins("suffice_1", base(), lhs1, 1.0, &[1.0 - lhs1], 1e-14 * (1.0 + inv_gap));

    let rhs = big_l / (t * excess);
    let arg = (2.0 * t * t * t / big_l).sqrt();
    let lhs2 = gammakit::polygamma(1, arg)?;
    let c2 = CheckResult::from_margins("suffice_2", base(), lhs2, rhs, &[rhs - lhs2], 1e-14 * rhs);

    let lhs3 = big_l / (2.0 * t * t * t) + 1.0 / (arg + 0.5);
    let c3 = CheckResult::from_margins("suffice_3", base(), lhs3, rhs, &[rhs - lhs3], 1e-14 * rhs);
    Ok(vec![c1, c2, c3])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_bounds_at_one_and_ten() {
        for x in [1.0, 10.0] {
            let r = psi_log_bounds(x).unwrap();
            assert_eq!(r.len(), 4);
            assert!(r.iter().all(|c| c.holds), "{r:?}");
        }
        let r = psi_log_bounds(1.0).unwrap();
        assert_eq!(r[0].lhs, -1.0);
        assert_eq!(r[0].rhs, -0.5);
    }

    #[test]
    fn refinement_ordering() {
        let c = psi_upper_refinement(2.0).unwrap();
        assert!(c.holds && c.lhs < c.rhs);
    }

    #[test]
    fn polygamma_bound_spots() {
        let r = polygamma_bounds(1, 1.0).unwrap();
        assert_eq!((r[0].lhs, r[0].rhs), (1.5, 2.0));
        assert!((r[1].lhs - 1.5).abs() < 1e-15);
        assert!((r[1].rhs - (1.0 / 1.5 + 1.0)).abs() < 1e-15);
        assert!(r.iter().all(|c| c.holds));
        assert!(polygamma_bounds(2, 5.0).unwrap().iter().all(|c| c.holds));
    }

    #[test]
    fn gamma_ratio_examples() {
        assert!(gamma_ratio_ineq(1.0, 0.0, 1.0, 1.0, 0.5).unwrap().holds);
        assert!(gamma_ratio_ineq(2.0, 1.0, 0.5, 1.0, 0.25).unwrap().holds);
        let tiny = gamma_ratio_ineq(1.0, 0.0, 1e-8, 1.0, 0.5).unwrap();
        assert!(tiny.holds && tiny.margin < 1e-8);
        assert!(gamma_ratio_ineq(0.0, 0.0, 1.0, 1.0, 0.5).is_err());
        assert!(gamma_ratio_ineq(-1.0, 1.0, 1.0, 1.0, 0.5).is_err());
        assert!(gamma_ratio_ineq(-2.5, 1.0, 1.0, 1.0, 0.5).is_err());
        assert!(gamma_ratio_ineq(1.0, 0.0, 0.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn psi_lngamma_examples() {
        let c = thm2_ineq(1.0).unwrap();
        // 1.5 ln Γ(1/3) and 1 + γ
        assert!((c.lhs - 1.478_130_970_391_650_6).abs() < 1e-13);
        assert!((c.rhs - 1.577_215_664_901_532_9).abs() < 1e-14);
        assert!((c.margin - 0.099_084_694_509_882_26).abs() < 1e-13);
        assert!(thm2_ineq(8.0 / 7.0).unwrap().holds);
        assert!(thm2_ineq(100.0).unwrap().holds);
        assert!(thm2_ineq(0.0).is_err());
    }

    #[test]
    fn batir_printed_form_examples() {
        let c = batir_ineq(2.0, 1.0).unwrap();
        assert_eq!(c.rhs, 0.0);
        // ψ(1/ln 2), 320-bit oracle
        assert!((c.lhs + 0.018_485_467_908_110_26).abs() < 1e-14);
        assert!(c.holds);
        let d = batir_ineq(1.0, 2.0).unwrap();
        assert_eq!((d.lhs, d.rhs, d.holds), (c.lhs, c.rhs, c.holds));
        let t: f64 = 1.0;
        assert!(batir_ineq(t, t / (1.0 + 2.0 * t)).unwrap().holds);
        assert!(batir_ineq(1.0, 1.0).is_err());
    }

    #[test]
    fn batir_printed_exponent_fails_where_mean_value_reading_holds() {
        // a = 2, b = 0.4 is the a = t, b = t/(1+2t) instantiation at t = 2
        let c = batir_ineq(2.0, 0.4).unwrap();
        assert!(!c.holds);
        assert!(c.lhs < c.input("mean_value").unwrap());
    }

    #[test]
    fn integral_mean_examples() {
        let c = psi_integral_mean_ineq(0, 1.0, 2.0, -1.0, 0.0).unwrap();
        assert_eq!(c.input("value"), Some(0.0));
        assert!(c.holds);
        assert!(psi_integral_mean_ineq(1, 1.0, 3.0, -2.0, -1.0).unwrap().holds);
        let t: f64 = 1.0;
        let s = 2.0 * t * t / ((1.0 + 2.0 * t) * (1.0 + 2.0 * t).ln());
        assert!(psi_integral_mean_ineq(1, s, t, -2.0, -1.0).unwrap().holds);
        assert!(matches!(psi_integral_mean_ineq(1, 1.0, 2.0, -1.5, 0.0), Err(Error::Parameter { .. })));
        assert!(matches!(psi_integral_mean_ineq(0, 1.0, 2.0, -1.0, -0.5), Err(Error::Parameter { .. })));
        assert!(psi_integral_mean_ineq(2, 1.0, 2.0, -3.0, 0.0).is_err());
    }

    #[test]
    fn log_upper_bound_examples() {
        let c = log_upper_bound_ineq(1.0).unwrap();
        assert!((c.rhs - 25.0 / 36.0).abs() < 1e-15);
        assert!((c.margin - (25.0 / 36.0 - 2f64.ln())).abs() < 1e-15);
        let small = log_upper_bound_ineq(1e-6).unwrap();
        assert!(small.holds);
        assert!((small.margin / 1e-30 - 1.0 / 120.0).abs() < 1e-4);
        assert!(log_upper_bound_ineq(10.0).unwrap().holds);
        // either side of the series/direct switch, against 40-digit values
        let a = log_upper_bound_ineq(0.0999999).unwrap().margin;
        assert!((a - 6.550_560_811_280_809e-8).abs() < 1e-14 * a);
        let b = log_upper_bound_ineq(0.1).unwrap().margin;
        assert!((b - 6.550_592_045_020_136e-8).abs() < 1e-8 * b);
    }

    #[test]
    fn aux_spot_values() {
        assert!((aux_eval(AuxFn::Qlog, 8.0 / 7.0).unwrap() - 0.002_676_370_807_062_27).abs() < 1e-15);
        assert_eq!(aux_eval(AuxFn::Qcub, 0.0).unwrap(), -3.0);
        assert_eq!(aux_eval(AuxFn::Qcub, 1.0).unwrap(), 14.0);
        assert!((aux_eval(AuxFn::Qcub, 1.0 / 3.0).unwrap() + 2.0 / 3.0).abs() < 1e-12);
        assert!((aux_eval(AuxFn::Hpoly, 1.0 / 3.0).unwrap() + 700.0 / 81.0).abs() < 1e-12 * 700.0 / 81.0);
        let h = aux_eval(AuxFn::Hpoly, 8.0 / 7.0).unwrap();
        assert!((h + 404759.0 / 117649.0).abs() < 1e-12 * 404759.0 / 117649.0);
        assert_eq!(aux_eval(AuxFn::Hpoly, 0.0).unwrap(), 9.0);
        assert!(aux_eval(AuxFn::Qlog, -0.5).is_err());
        assert!(aux_eval(AuxFn::Qcub, f64::NAN).is_err());
    }

    #[test]
    fn qcub_root_bracketed() {
        let r = qcub_root(1e-10).unwrap();
        assert!(r > 1.0 / 3.0 && r < 1.0);
        assert!(aux_eval(AuxFn::Qcub, r - 1e-9).unwrap() < 0.0);
        assert!(aux_eval(AuxFn::Qcub, r + 1e-9).unwrap() > 0.0);
    }

    #[test]
    fn suffice_chain_examples() {
        for t in [0.5, 1.0, 1.1] {
            let r = suffice_chain(t).unwrap();
            assert!(r.iter().all(|c| c.holds), "t={t} {r:?}");
        }
        let r = suffice_chain(1.0).unwrap();
        assert!((r[0].margin - 0.061_188_137_178_342_98).abs() < 1e-12);
        assert!((r[1].margin - 0.147_343_680_440_978_4).abs() < 1e-12);
        assert!((r[2].margin - 0.113_619_064_471_282_47).abs() < 1e-12);
        assert!(suffice_chain(8.0 / 7.0).is_err());
        assert!(suffice_chain(0.0).is_err());
    }

    #[test]
    fn excess_series_matches_direct() {
        for u in [1e-3f64, 0.1, 0.2, 0.249] {
            let direct = (1.0 + u) * u.ln_1p() - u;
            assert!((xlogx_excess(u) - direct).abs() < 1e-12 * direct);
        }
    }

    #[test]
    fn zero_margin_is_flagged() {
        let c = CheckResult::from_margins("t", vec![], 1.0, 1.0 + 1e-17, &[1e-17], 1e-15);
        assert!(!c.holds);
        assert_eq!(c.margin, 0.0);
        assert_eq!(c.input("zero_margin"), Some(1.0));
        let c = CheckResult::from_margins("t", vec![], 0.0, 0.0, &[f64::NAN, 1.0], 0.0);
        assert!(!c.holds);
    }
}
