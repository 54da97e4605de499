//! Grid certification of logarithmic complete monotonicity for h_{α,y},
//! the q-surface check, necessity-limit probes and the (α, y)
//! scanner.
//!
//! A PASS is "grid-verified": no sign violation on the finite grid. A FAIL
//! carries a witness whose magnitude clears the noise floor. Violations
//! below the floor leave the certificate UNDECIDED.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hfamily::{self, DerivEval, HParams, MAX_DERIV_ORDER, X_EPSILON};

pub const DEFAULT_K_MAX: usize = 8;

/// Violations smaller than this fraction of the local scale are noise.
pub const NOISE_REL: f64 = 1e-9;

/// A violation must exceed this multiple of the estimated evaluation error.
pub const NOISE_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Spacing {
    Log,
    Linear,
}

/// Which side of the origin a grid covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubDomain {
    Both,
    Left,
    Right,
}

/// Sampling grid for the certifier.
///
/// The left part starts at `−c + x_min_offset·c` (c = y + 1) and stops at
/// `−x_epsilon`; the right part runs from `x_epsilon` to `x_max`. With LOG
/// spacing the left part is log-spaced toward both of its ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min_offset: f64,
    pub x_max: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub x_epsilon: f64,
    pub domain: SubDomain,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            x_min_offset: 1e-4,
            x_max: 1e3,
            points: 200,
            spacing: Spacing::Log,
            x_epsilon: X_EPSILON,
            domain: SubDomain::Both,
        }
    }
}

fn spaced(spacing: Spacing, a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let last = (n - 1) as f64;
            (0..n)
                .map(|i| {
                    let f = i as f64 / last;
                    match spacing {
                        Spacing::Log => (a.ln() + f * (b.ln() - a.ln())).exp(),
                        Spacing::Linear => a + f * (b - a),
                    }
                })
                .collect()
        }
    }
}

impl GridSpec {
    pub fn with_domain(self, domain: SubDomain) -> Self {
        GridSpec { domain, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        const OP: &str = "GridSpec";
        if self.points < 2 {
            return Err(Error::parameter(OP, format!("points = {} must be >= 2", self.points)));
        }
        if !(self.x_min_offset > 0.0 && self.x_min_offset < 1.0) {
            return Err(Error::parameter(OP, format!("x_min_offset = {} must lie in (0, 1)", self.x_min_offset)));
        }
        if !(self.x_epsilon >= X_EPSILON && self.x_epsilon.is_finite()) {
            return Err(Error::parameter(OP, format!("x_epsilon = {} must be >= {X_EPSILON:e}", self.x_epsilon)));
        }
        if self.domain != SubDomain::Left && !(self.x_max.is_finite() && self.x_max > self.x_epsilon) {
            return Err(Error::parameter(OP, format!("x_max = {} must be finite and > x_epsilon", self.x_max)));
        }
        Ok(())
    }

    /// Grid abscissae for shift parameter `y`, in increasing order.
    pub fn abscissae(&self, y: f64) -> Result<Vec<f64>> {
        self.validate()?;
        if !(y.is_finite() && y > -1.0) {
            return Err(Error::parameter("GridSpec", format!("y = {y} must be finite and > -1")));
        }
        let c = y + 1.0;
        let eps = self.x_epsilon;
        let left_room = c * (1.0 - self.x_min_offset) > eps;
        let (n_left, n_right) = match self.domain {
            SubDomain::Left if !left_room => {
                return Err(Error::parameter(
                    "GridSpec",
                    format!("left sub-domain of y = {y} is empty after removing the exclusion zone"),
                ))
            }
            SubDomain::Left => (self.points, 0),
            SubDomain::Right => (0, self.points),
            SubDomain::Both if !left_room => (0, self.points),
            SubDomain::Both => (self.points / 2, self.points - self.points / 2),
        };

        let mut xs = Vec::with_capacity(self.points);
        if n_left > 0 {
            let z_lo = self.x_min_offset * c;
            match self.spacing {
                Spacing::Linear => xs.extend(spaced(Spacing::Linear, z_lo - c, -eps, n_left)),
                Spacing::Log if 0.5 * c <= eps || n_left < 2 => {
                    xs.extend(spaced(Spacing::Log, z_lo, c - eps, n_left).into_iter().map(|z| z - c));
                }
                Spacing::Log => {
                    // dense toward the endpoint in z = x + c, then toward 0 in −x
                    let n1 = n_left / 2;
                    let mut near_end = spaced(Spacing::Log, z_lo, 0.5 * c, n1 + 1);
                    near_end.pop();
                    xs.extend(near_end.into_iter().map(|z| z - c));
                    xs.extend(spaced(Spacing::Log, eps, 0.5 * c, n_left - n1).into_iter().rev().map(|m| -m));
                }
            }
        }
        xs.extend(spaced(self.spacing, eps, self.x_max, n_right));
        Ok(xs)
    }
}

/// The sign pattern being certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Direction {
    /// (−1)^k [ln h]^(k) > 0: h is logarithmically completely monotonic.
    Lcm,
    /// (−1)^k [ln h]^(k) < 0: 1/h is logarithmically completely monotonic.
    Reciprocal,
}

impl Direction {
    /// Whether derivative value `v` of order `k` has the required sign.
    pub fn satisfied(self, k: usize, v: f64) -> bool {
        let signed = if k % 2 == 0 { v } else { -v };
        match self {
            Direction::Lcm => signed > 0.0,
            Direction::Reciprocal => signed < 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

/// A point where a required sign fails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub k: usize,
    pub x: f64,
    pub value: f64,
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub params: HParams,
    pub direction: Direction,
    pub k_max: usize,
    pub grid: GridSpec,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// First sub-noise violation, if any.
    pub noise_point: Option<Witness>,
    /// "grid-verified", "counter-example" or "noise-limited".
    pub basis: String,
}

fn basis(v: Verdict) -> String {
    match v {
        Verdict::Pass => "grid-verified",
        Verdict::Fail => "counter-example",
        Verdict::Undecided => "noise-limited",
    }
    .to_string()
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

fn below_noise(e: &DerivEval) -> bool {
    e.value.abs() < (NOISE_REL * e.scale).max(NOISE_FACTOR * e.noise)
}

/// Check the sign pattern of `direction` for k = 1..=k_max at every grid point.
pub fn certify_lcm(p: &HParams, direction: Direction, k_max: usize, grid: &GridSpec) -> Result<Certificate> {
    p.validate()?;
    if !(1..=MAX_DERIV_ORDER).contains(&k_max) {
        return Err(Error::parameter("certify_lcm", format!("k_max = {k_max} must lie in 1..={MAX_DERIV_ORDER}")));
    }
    let xs = grid.abscissae(p.y)?;
    let evals = par_map(&xs, |&x| hfamily::logh_derivs(k_max, p, x)).into_iter().collect::<Result<Vec<_>>>()?;

    let mut witness = None;
    let mut noise_point = None;
    'search: for k in 1..=k_max {
        for (x, ev) in xs.iter().zip(&evals) {
            let e = &ev[k - 1];
            if direction.satisfied(k, e.value) {
                continue;
            }
            let w = Witness { k, x: *x, value: e.value, scale: e.scale };
            if below_noise(e) {
                noise_point.get_or_insert(w);
            } else {
                witness = Some(w);
                break 'search;
            }
        }
    }
    let verdict = match (witness, noise_point) {
        (Some(_), _) => Verdict::Fail,
        (None, Some(_)) => Verdict::Undecided,
        (None, None) => Verdict::Pass,
    };
    Ok(Certificate {
        params: *p,
        direction,
        k_max,
        grid: *grid,
        verdict,
        witness,
        noise_point,
        basis: basis(verdict),
    })
}

/// alpha_necessary_bound near the left endpoint and far out on the right.
/// The two estimates approach 1/(y+1) and 1.
pub fn necessity_limits(y: f64) -> Result<(f64, f64)> {
    if !(y.is_finite() && y > -1.0) {
        return Err(Error::domain("necessity_limits", format!("y = {y} must be > -1")));
    }
    let c = y + 1.0;
    let inner = hfamily::alpha_necessary_bound(-c + 1e-6 * c, y)?;
    let outer = hfamily::alpha_necessary_bound(1e6, y)?;
    Ok((inner, outer))
}

/// A point where q(·, y) is not negative or not decreasing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceWitness {
    pub x: f64,
    pub value: f64,
    /// q at the preceding grid point, for monotonicity violations.
    pub previous: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCertificate {
    pub y: f64,
    pub x_start: f64,
    pub grid: GridSpec,
    pub verdict: Verdict,
    pub witness: Option<SurfaceWitness>,
    pub basis: String,
}

/// q(x, y) < 0 and strictly decreasing over a grid from −2(y+1)²/(1+2y)
/// to `grid.x_max`.
pub fn verify_thm3(y: f64, grid: &GridSpec) -> Result<SurfaceCertificate> {
    if !(y > -1.0 && y < -0.5) {
        return Err(Error::parameter("verify_thm3", format!("y = {y} must lie in (-1, -1/2)")));
    }
    if grid.points < 2 {
        return Err(Error::parameter("verify_thm3", "points must be >= 2"));
    }
    let x0 = hfamily::q_surface_start(y)?;
    if !(grid.x_max.is_finite() && grid.x_max > x0) {
        return Err(Error::parameter("verify_thm3", format!("x_max = {} must exceed the start {x0}", grid.x_max)));
    }
    let xs = spaced(grid.spacing, x0, grid.x_max, grid.points);
    let qs = par_map(&xs, |&x| hfamily::q_surface(x, y)).into_iter().collect::<Result<Vec<_>>>()?;

    let mut witness = None;
    for i in 0..xs.len() {
        let previous = i.checked_sub(1).map(|j| qs[j]);
        let bad = !(qs[i] < 0.0) || previous.is_some_and(|q| !(qs[i] < q));
        if bad {
            witness = Some(SurfaceWitness { x: xs[i], value: qs[i], previous });
            break;
        }
    }
    let verdict = if witness.is_some() { Verdict::Fail } else { Verdict::Pass };
    Ok(SurfaceCertificate { y, x_start: x0, grid: *grid, verdict, witness, basis: basis(verdict) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Classification {
    Lcm,
    Reciprocal,
    Neither,
    Undecided,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Lcm => "LCM",
            Classification::Reciprocal => "RECIPROCAL",
            Classification::Neither => "NEITHER",
            Classification::Undecided => "UNDECIDED",
        })
    }
}

/// Combine the two certificates of one (α, y) point.
pub fn classify(lcm: Verdict, reciprocal: Verdict) -> Classification {
    match (lcm, reciprocal) {
        (Verdict::Pass, Verdict::Pass) => Classification::Undecided,
        (Verdict::Pass, _) => Classification::Lcm,
        (_, Verdict::Pass) => Classification::Reciprocal,
        (Verdict::Fail, Verdict::Fail) => Classification::Neither,
        _ => Classification::Undecided,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanCell {
    pub alpha: f64,
    pub y: f64,
    pub classification: Classification,
    /// For y > −1/2 and min{1, 1/(2(y+1))} < α ≤ 1: whether the RECIPROCAL
    /// certificate found a violation there.
    pub conjecture_probe: Option<bool>,
}

/// Inclusive arithmetic range `start:end:step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisRange {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl AxisRange {
    pub fn values(&self) -> Result<Vec<f64>> {
        let AxisRange { start, end, step } = *self;
        if !(start.is_finite() && end.is_finite() && step.is_finite()) || step <= 0.0 || end < start {
            return Err(Error::parameter("AxisRange", format!("invalid range {start}:{end}:{step}")));
        }
        let n = ((end - start) / step + 1e-9).floor() as usize + 1;
        Ok((0..n).map(|i| start + i as f64 * step).collect())
    }
}

impl FromStr for AxisRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parameter("AxisRange", format!("expected start:end:step, got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(bad());
        };
        let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let r = AxisRange { start: parse(a)?, end: parse(b)?, step: parse(c)? };
        r.values()?;
        Ok(r)
    }
}

fn conjecture_zone(alpha: f64, y: f64) -> bool {
    y > -0.5 && alpha > HParams::reciprocal_threshold(y) && alpha <= 1.0
}

fn scan_cell(alpha: f64, y: f64, k_max: usize, grid: &GridSpec) -> Result<ScanCell> {
    let p = HParams::new(alpha, y)?;
    let lcm = certify_lcm(&p, Direction::Lcm, k_max, grid)?;
    let rec = certify_lcm(&p, Direction::Reciprocal, k_max, grid)?;
    Ok(ScanCell {
        alpha,
        y,
        classification: classify(lcm.verdict, rec.verdict),
        conjecture_probe: conjecture_zone(alpha, y).then_some(rec.verdict == Verdict::Fail),
    })
}

/// Classify every (α, y) pair, y-major then α.
pub fn scan_alpha_y(alphas: &[f64], ys: &[f64], k_max: usize, grid: &GridSpec) -> Result<Vec<ScanCell>> {
    if alphas.len() < 2 || ys.len() < 2 {
        return Err(Error::parameter("scan_alpha_y", "each axis needs at least 2 values"));
    }
    let cells: Vec<(f64, f64)> = ys.iter().flat_map(|&y| alphas.iter().map(move |&a| (a, y))).collect();
    // cells run sequentially; each certificate already fans out over its grid
    cells.iter().map(|&(a, y)| scan_cell(a, y, k_max, grid)).collect()
}

/// Relative residual between [ln h]^(k)(x) and a central difference of
/// [ln h]^(k−1) (of ln h when k = 1).
pub fn finite_diff_crosscheck(k: usize, p: &HParams, x: f64, step: f64) -> Result<f64> {
    const OP: &str = "finite_diff_crosscheck";
    if !(1..=4).contains(&k) {
        return Err(Error::parameter(OP, format!("k = {k} must lie in 1..=4")));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::parameter(OP, format!("step = {step} must be > 0")));
    }
    for v in [x - step, x, x + step] {
        if v.abs() < X_EPSILON || v <= p.left_endpoint() {
            return Err(Error::parameter(OP, format!("{v} is outside the admissible domain")));
        }
    }
    let base = |v: f64| if k == 1 { hfamily::ln_h(p, v) } else { hfamily::logh_deriv(k - 1, p, v) };
    let fd = (base(x + step)? - base(x - step)?) / (2.0 * step);
    let exact = hfamily::logh_deriv(k, p, x)?;
    Ok((exact - fd).abs() / exact.abs().max(1.0))
}
