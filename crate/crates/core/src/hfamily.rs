//! The gamma-ratio function
//!
//! ```text
//! h_{α,y}(x) = [Γ(x+y+1)/Γ(y+1)]^{1/x} / (x+y+1)^α,   x ∈ (−y−1, ∞) \ {0}
//! h_{α,y}(0) = exp(ψ(y+1)) / (y+1)^α
//! ```
//!
//! its log-derivatives, the first-derivative threshold in α and the
//! surface `q(x, y)`.
//!
//! Throughout, `c = y + 1` and `z = x + c`. The first term of ln h is
//! `g(x) = (ln Γ(z) − ln Γ(c)) / x = ∫₀¹ ψ(c + s x) ds`, so that
//! `g^(k)(x) = ∫₀¹ s^k ψ^(k)(c + s x) ds`. The closed form for `g^(k)` is a
//! `k!/x^{k+1}`-scaled alternating sum that cancels badly when `|x|` is
//! small against `c`; there the integral is used instead, since its
//! integrand has one sign and nothing cancels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gammakit::{self, MAX_POLYGAMMA_ORDER};
use crate::quad;

/// Half-width of the exclusion zone around x = 0 for [`logh_deriv`].
pub const X_EPSILON: f64 = 1e-3;

/// Minimum admissible distance of `x + y + 1` from zero.
pub const ENDPOINT_CLEARANCE: f64 = 1e-9;

/// Highest derivative order of ln h supported.
pub const MAX_DERIV_ORDER: usize = 12;

// closed form accepted when its rounding bound is below this fraction of |g^(k)|
const CLOSED_FORM_REL_TOL: f64 = 1e-12;
const INTEGRAL_REL_TOL: f64 = 1e-14;
const ROUNDING_UNIT: f64 = 4.0 * f64::EPSILON;

/// The pair (α, y) that selects a member of the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HParams {
    pub alpha: f64,
    pub y: f64,
}

impl HParams {
    pub fn new(alpha: f64, y: f64) -> Result<Self> {
        let p = HParams { alpha, y };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() {
            return Err(Error::parameter("HParams", format!("alpha = {} must be finite", self.alpha)));
        }
        if !self.y.is_finite() || self.y <= -1.0 {
            return Err(Error::parameter("HParams", format!("y = {} must be finite and > -1", self.y)));
        }
        Ok(())
    }

    /// y + 1, the distance from the left endpoint to the origin.
    pub fn shift(&self) -> f64 {
        self.y + 1.0
    }

    /// Left end −y−1 of the domain.
    pub fn left_endpoint(&self) -> f64 {
        -(self.y + 1.0)
    }

    /// max{1, 1/(y+1)}: the exact LCM threshold in α.
    pub fn lcm_threshold(y: f64) -> f64 {
        1f64.max(1.0 / (y + 1.0))
    }

    /// min{1, 1/(2(y+1))}: the sufficient threshold for the reciprocal.
    pub fn reciprocal_threshold(y: f64) -> f64 {
        1f64.min(0.5 / (y + 1.0))
    }
}

/// One evaluated derivative of ln h.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivSample {
    pub k: usize,
    pub x: f64,
    pub value: f64,
}

/// Which formula produced a derivative value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    ClosedForm,
    Integral,
}

/// A derivative value together with the magnitudes needed to judge its sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivEval {
    pub value: f64,
    /// |g^(k)| + |α-term|: the size of the two pieces that are combined.
    pub scale: f64,
    /// Estimated absolute evaluation error.
    pub noise: f64,
    pub route: Route,
}

fn check_y(op: &'static str, y: f64) -> Result<f64> {
    if !y.is_finite() || y <= -1.0 {
        return Err(Error::domain(op, format!("y = {y} must be finite and > -1")));
    }
    Ok(y + 1.0)
}

fn check_x(op: &'static str, x: f64, c: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(op, format!("x = {x} must be finite")));
    }
    let z = x + c;
    if z <= ENDPOINT_CLEARANCE {
        return Err(Error::domain(
            op,
            format!("x = {x} must exceed the left endpoint {} by more than {ENDPOINT_CLEARANCE:e}", -c),
        ));
    }
    Ok(z)
}

fn factorial(n: usize) -> f64 {
    (2..=n).fold(1.0, |acc, j| acc * j as f64)
}

/// ψ^{(j)}(z) with ψ^{(−1)} = ln Γ and ψ^{(0)} = ψ.
fn psi_family(j: i32, z: f64) -> Result<f64> {
    match j {
        -1 => gammakit::lngamma(z),
        0 => gammakit::digamma(z),
        _ => gammakit::polygamma(j as usize, z),
    }
}

/// (ln Γ(x+y+1) − ln Γ(y+1)) / x, continued by ψ(y+1) at x = 0.
pub fn log_gamma_root(x: f64, y: f64) -> Result<f64> {
    let c = check_y("log_gamma_root", y)?;
    let z = check_x("log_gamma_root", x, c)?;
    if x == 0.0 {
        return gammakit::digamma(c);
    }
    Ok(gammakit::lngamma_diff(z, c)? / x)
}

/// ln h_{α,y}(x).
pub fn ln_h(p: &HParams, x: f64) -> Result<f64> {
    p.validate()?;
    let z = check_x("ln_h", x, p.shift())?;
    Ok(log_gamma_root(x, p.y)? - p.alpha * z.ln())
}

/// h_{α,y}(x), evaluated in log space.
pub fn h_eval(p: &HParams, x: f64) -> Result<f64> {
    Ok(ln_h(p, x)?.exp())
}

/// H_y(x) = [Γ(x+y)/Γ(y)]^{1/x} / (x+y)^α for y > 0, which is h with y − 1.
pub fn big_h_eval(alpha: f64, y: f64, x: f64) -> Result<f64> {
    if !y.is_finite() || y <= 0.0 {
        return Err(Error::domain("big_h_eval", format!("y = {y} must be > 0")));
    }
    if !(x > -y) {
        return Err(Error::domain("big_h_eval", format!("x = {x} must exceed -y = {}", -y)));
    }
    h_eval(&HParams::new(alpha, y - 1.0)?, x)
}

/// g^(k)(x) from the closed form, with its rounding bound. `vals[i]` holds
/// ψ^{(i−1)}(z) for i = 0..=k.
fn g_closed(k: usize, x: f64, ln_gamma_c: f64, vals: &[f64]) -> (f64, f64) {
    let mut bracket = 0.0;
    let mut abs_sum = 0.0;
    let mut xi = 1.0;
    let mut inv_fact = 1.0;
    for (i, v) in vals.iter().enumerate().take(k + 1) {
        if i > 0 {
            xi *= x;
            inv_fact /= i as f64;
        }
        let sign = if (k - i) % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * xi * v * inv_fact;
        bracket += term;
        abs_sum += term.abs();
    }
    let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };
    let last = -sign_k * ln_gamma_c;
    bracket += last;
    abs_sum += last.abs();
    let pre = factorial(k) / x.powi(k as i32 + 1);
    (pre * bracket, (pre * abs_sum).abs() * ROUNDING_UNIT * (k as f64 + 2.0))
}

/// g^(k)(x) = ∫₀¹ s^k ψ^(k)(c + s x) ds.
fn g_integral(k: usize, c: f64, x: f64) -> Result<f64> {
    // surface any domain/capability error before integrating
    psi_family(k as i32, c)?;
    psi_family(k as i32, c + x)?;
    let f = |s: f64| s.powi(k as i32) * gammakit::polygamma(k, c + s * x).unwrap_or(f64::NAN);
    let v = quad::adaptive(&f, 0.0, 1.0, INTEGRAL_REL_TOL);
    if !v.is_finite() {
        return Err(Error::precision("logh_deriv", format!("integral route failed at k = {k}, x = {x}")));
    }
    Ok(v)
}

fn alpha_term(k: usize, alpha: f64, z: f64) -> f64 {
    // −(−1)^{k−1} (k−1)! α / z^k
    let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
    sign * factorial(k - 1) * alpha / z.powi(k as i32)
}

fn combine(k: usize, alpha: f64, z: f64, g: f64, g_noise: f64, route: Route) -> DerivEval {
    let a = alpha_term(k, alpha, z);
    DerivEval {
        value: g + a,
        scale: g.abs() + a.abs(),
        noise: g_noise + a.abs() * ROUNDING_UNIT,
        route,
    }
}

fn check_order(op: &'static str, k: usize) -> Result<()> {
    if k == 0 || k > MAX_DERIV_ORDER {
        return Err(Error::capability(op, format!("derivative order {k} outside 1..={MAX_DERIV_ORDER}")));
    }
    debug_assert!(MAX_DERIV_ORDER <= MAX_POLYGAMMA_ORDER);
    Ok(())
}

/// [ln h]^(k)(x) for k = 1..=k_max at one abscissa, sharing the special
/// function evaluations across orders.
pub fn logh_derivs(k_max: usize, p: &HParams, x: f64) -> Result<Vec<DerivEval>> {
    check_order("logh_derivs", k_max)?;
    p.validate()?;
    let c = p.shift();
    let z = check_x("logh_deriv", x, c)?;
    if x.abs() < X_EPSILON {
        return Err(Error::precision(
            "logh_deriv",
            format!("|x| = {} is inside the exclusion zone |x| < {X_EPSILON:e}", x.abs()),
        ));
    }
    let vals = (0..=k_max as i32).map(|i| psi_family(i - 1, z)).collect::<Result<Vec<_>>>()?;
    let ln_gamma_c = gammakit::lngamma(c)?;
    (1..=k_max)
        .map(|k| {
            let (g, err) = g_closed(k, x, ln_gamma_c, &vals);
            if err <= CLOSED_FORM_REL_TOL * g.abs() {
                Ok(combine(k, p.alpha, z, g, err, Route::ClosedForm))
            } else {
                let g = g_integral(k, c, x)?;
                Ok(combine(k, p.alpha, z, g, g.abs() * 1e-13, Route::Integral))
            }
        })
        .collect()
}

/// [ln h]^(k)(x) with its error bookkeeping.
pub fn logh_deriv_detailed(k: usize, p: &HParams, x: f64) -> Result<DerivEval> {
    check_order("logh_deriv", k)?;
    Ok(logh_derivs(k, p, x)?[k - 1])
}

/// [ln h_{α,y}]^(k)(x), for |x| ≥ [`X_EPSILON`].
pub fn logh_deriv(k: usize, p: &HParams, x: f64) -> Result<f64> {
    Ok(logh_deriv_detailed(k, p, x)?.value)
}

/// [ln h]^(k)(x) from the integral representation alone. Unlike
/// [`logh_deriv`] this is defined at x = 0, where it equals
/// ψ^(k)(y+1)/(k+1) plus the α-term.
pub fn logh_deriv_integral(k: usize, p: &HParams, x: f64) -> Result<f64> {
    check_order("logh_deriv_integral", k)?;
    p.validate()?;
    let c = p.shift();
    let z = check_x("logh_deriv_integral", x, c)?;
    let g = g_integral(k, c, x)?;
    Ok(g + alpha_term(k, p.alpha, z))
}

/// The raw closed form, exactly as written, with no cancellation guard.
/// Exposed for cross-checking; prefer [`logh_deriv`].
pub fn logh_deriv_closed_form(k: usize, p: &HParams, x: f64) -> Result<f64> {
    check_order("logh_deriv_closed_form", k)?;
    p.validate()?;
    let c = p.shift();
    let z = check_x("logh_deriv_closed_form", x, c)?;
    if x == 0.0 {
        return Err(Error::domain("logh_deriv_closed_form", "x = 0"));
    }
    let vals = (0..=k as i32).map(|i| psi_family(i - 1, z)).collect::<Result<Vec<_>>>()?;
    let (g, _) = g_closed(k, x, gammakit::lngamma(c)?, &vals);
    Ok(g + alpha_term(k, p.alpha, z))
}

/// The value of α at which [ln h_{α,y}]′(x) changes sign:
/// `((x+y+1)/x) · [(x ψ(x+y+1) − ln Γ(x+y+1))/x + ln Γ(y+1)/x]`.
/// [ln h]′(x) < 0 exactly when α exceeds it.
pub fn alpha_necessary_bound(x: f64, y: f64) -> Result<f64> {
    let c = check_y("alpha_necessary_bound", y)?;
    let z = check_x("alpha_necessary_bound", x, c)?;
    if x == 0.0 {
        return Err(Error::domain("alpha_necessary_bound", "x = 0 is excluded"));
    }
    // the bound is z · g′(x)
    let vals = [gammakit::lngamma(z)?, gammakit::digamma(z)?];
    let (g, err) = g_closed(1, x, gammakit::lngamma(c)?, &vals);
    let g1 = if err <= CLOSED_FORM_REL_TOL * g.abs() { g } else { g_integral(1, c, x)? };
    Ok(z * g1)
}

/// q(x, y) = x ψ(x+y+1) − ln Γ(x+y+1) + ln Γ(y+1) − x² / (2 (y+1)(x+y+1)).
pub fn q_surface(x: f64, y: f64) -> Result<f64> {
    let c = check_y("q_surface", y)?;
    let z = check_x("q_surface", x, c)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(x * gammakit::digamma(z)? - gammakit::lngamma_diff(z, c)? - x * x / (2.0 * c * z))
}

/// Left end −2(y+1)²/(1+2y) of the interval on which q(·, y) is negative
/// and decreasing, for y ∈ (−1, −1/2).
pub fn q_surface_start(y: f64) -> Result<f64> {
    if !(y > -1.0 && y < -0.5) {
        return Err(Error::domain("q_surface_start", format!("y = {y} must lie in (-1, -1/2)")));
    }
    let c = y + 1.0;
    Ok(-2.0 * c * c / (1.0 + 2.0 * y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gammakit::EULER_GAMMA;

    fn p(alpha: f64, y: f64) -> HParams {
        HParams::new(alpha, y).unwrap()
    }

    #[test]
    fn h_spot_values() {
        assert!((h_eval(&p(1.0, 0.0), 1.0).unwrap() - 0.5).abs() < 1e-15);
        let v = h_eval(&p(0.0, 0.0), 0.0).unwrap();
        assert!((v - (-EULER_GAMMA).exp()).abs() < 1e-15);
        assert!(v > 0.56 && v < 0.57);
        // [Γ(4)/Γ(2)]^{1/2} / 4^{1/2} = √6 / 2
        let v = h_eval(&p(0.5, 1.0), 2.0).unwrap();
        assert!((v - 6f64.sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn h_continuity_at_origin() {
        for &(a, y) in &[(0.5, 1.0), (2.0, -0.5), (-1.0, 3.0)] {
            let q = p(a, y);
            let h0 = h_eval(&q, 0.0).unwrap();
            for &t in &[1e-3, 1e-4, 1e-5] {
                for s in [t, -t] {
                    let d = (h_eval(&q, s).unwrap() - h0).abs();
                    assert!(d <= 10.0 * t * h0, "a={a} y={y} t={s} d={d}");
                }
            }
        }
    }

    #[test]
    fn h_domain() {
        assert!(matches!(h_eval(&p(1.0, 0.0), -1.0), Err(Error::Domain { .. })));
        assert!(matches!(h_eval(&p(1.0, 0.0), -2.0), Err(Error::Domain { .. })));
        assert!(HParams::new(1.0, -1.0).is_err());
        assert!(HParams::new(f64::NAN, 0.0).is_err());
        assert!(h_eval(&p(1.0, 0.0), -1.0 + 1e-6).unwrap() > 0.0);
    }

    #[test]
    fn big_h_is_shifted_h() {
        assert!((big_h_eval(1.0, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        let v = big_h_eval(0.0, 1.0, 0.0).unwrap();
        assert!((v - (-EULER_GAMMA).exp()).abs() < 1e-15);
        assert!(big_h_eval(1.0, 2.0, -2.0).is_err());
        assert!(big_h_eval(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn first_derivative_matches_finite_difference() {
        let q = p(1.0, 0.0);
        let h = 1e-5;
        let fd = (ln_h(&q, 1.0 + h).unwrap() - ln_h(&q, 1.0 - h).unwrap()) / (2.0 * h);
        let d = logh_deriv(1, &q, 1.0).unwrap();
        assert!((d - fd).abs() <= 1e-6 * d.abs());
    }

    #[test]
    fn exclusion_zone_is_refused() {
        let q = p(1.0, 0.0);
        assert!(matches!(logh_deriv(1, &q, 5e-4), Err(Error::Precision { .. })));
        assert!(matches!(logh_deriv(3, &q, -1e-4), Err(Error::Precision { .. })));
        assert!(matches!(logh_deriv(13, &q, 1.0), Err(Error::Capability { .. })));
        assert!(matches!(logh_deriv(0, &q, 1.0), Err(Error::Capability { .. })));
    }

    #[test]
    fn scaled_derivative_vanishes_at_origin() {
        let q = p(1.3, 0.4);
        for k in 1..=4 {
            for &x in &[1e-3f64, -1e-3] {
                let v = x.powi(k as i32 + 1) * logh_deriv(k, &q, x).unwrap();
                assert!(v.abs() <= 1e-2, "k={k} x={x} v={v}");
            }
        }
    }

    #[test]
    fn sign_pattern_above_lcm_threshold() {
        let q = p(2.0, 0.0);
        for k in 1..=6 {
            for &x in &[0.5, 1.0, 10.0] {
                let s = if k % 2 == 0 { 1.0 } else { -1.0 };
                assert!(s * logh_deriv(k, &q, x).unwrap() > 0.0, "k={k} x={x}");
            }
        }
    }

    #[test]
    fn integral_route_agrees_with_closed_form() {
        let q = p(0.7, 0.3);
        for k in 1..=8 {
            for &x in &[-1.0, -0.5, 0.8, 3.0, 20.0] {
                let guarded = logh_deriv_detailed(k, &q, x).unwrap();
                let integral = logh_deriv_integral(k, &q, x).unwrap();
                assert!(
                    (guarded.value - integral).abs() <= 1e-12 * guarded.scale,
                    "k={k} x={x} {guarded:?} {integral}"
                );
            }
            for &x in &[3.0, 20.0] {
                let raw = logh_deriv_closed_form(k, &q, x).unwrap();
                let integral = logh_deriv_integral(k, &q, x).unwrap();
                assert!((raw - integral).abs() <= 1e-9 * raw.abs(), "k={k} x={x} {raw} {integral}");
            }
        }
    }

    #[test]
    fn integral_route_at_origin() {
        let q = p(0.0, 0.0);
        for k in 1..=5 {
            let v = logh_deriv_integral(k, &q, 0.0).unwrap();
            let expect = gammakit::polygamma(k, 1.0).unwrap() / (k as f64 + 1.0);
            assert!((v - expect).abs() < 1e-13 * expect.abs());
        }
    }

    #[test]
    fn closed_form_breaks_down_near_origin_but_guarded_route_does_not() {
        let q = p(1.0, 0.0);
        let x = 2e-3;
        let guarded = logh_deriv_detailed(8, &q, x).unwrap();
        assert_eq!(guarded.route, Route::Integral);
        let integral = logh_deriv_integral(8, &q, x).unwrap();
        assert!((guarded.value - integral).abs() < 1e-12 * integral.abs());
    }

    #[test]
    fn necessary_bound_limits() {
        let inner = alpha_necessary_bound(-1.0 + 1e-6, 0.0).unwrap();
        assert!((inner - 1.0).abs() < 1e-2);
        let outer = alpha_necessary_bound(1e6, 0.0).unwrap();
        assert!((outer - 1.0).abs() < 1e-3);
        assert!(alpha_necessary_bound(0.0, 0.0).is_err());
    }

    #[test]
    fn q_surface_values() {
        for &y in &[-0.9, -0.5, 0.0, 2.0] {
            assert_eq!(q_surface(0.0, y).unwrap(), 0.0);
        }
        for &x in &[0.25, 1.0, 10.0] {
            assert!(q_surface(x, -0.75).unwrap() < 0.0, "x={x}");
        }
        let h = 1e-5;
        let d = (q_surface(1.0 + h, -0.75).unwrap() - q_surface(1.0 - h, -0.75).unwrap()) / (2.0 * h);
        assert!(d < 0.0);
        assert!((q_surface_start(-0.75).unwrap() - 0.25).abs() < 1e-15);
        assert!(q_surface_start(-0.5).is_err());
        assert!(q_surface(-2.0, 0.0).is_err());
    }
}
