//! Verification suites run by `gammalcm verify`.

use gammalcm::ballvol;
use gammalcm::certify::{self, Direction, GridSpec, Verdict, DEFAULT_K_MAX};
use gammalcm::gammakit;
use gammalcm::hfamily::HParams;
use gammalcm::ineq::{self, AuxFn, CheckResult};
use gammalcm::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::ReportEntry;

/// Seed for the randomized gamma-ratio cases.
pub const GAMMA_RATIO_SEED: u64 = 0x5eed_0001;
pub const GAMMA_RATIO_CASES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Lemmas,
    Thm1,
    Thm2,
    Thm3,
    Ball,
    Aux,
    All,
    /// Deliberately falsified claims; exercises the failure exit path.
    #[value(hide = true)]
    Fault,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Ball => "ball",
            Suite::Aux => "aux",
            Suite::All => "all",
            Suite::Fault => "fault",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub grid: GridSpec,
    pub k_max: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { grid: GridSpec::default(), k_max: DEFAULT_K_MAX }
    }
}

pub fn run(suite: Suite, opts: &SuiteOptions) -> Result<Vec<ReportEntry>> {
    match suite {
        Suite::Lemmas => lemmas(),
        Suite::Thm1 => thm1(opts),
        Suite::Thm2 => thm2(),
        Suite::Thm3 => thm3(opts),
        Suite::Ball => ball(),
        Suite::Aux => aux(),
        Suite::Fault => fault(),
        Suite::All => {
            let mut out = Vec::new();
            for s in [Suite::Lemmas, Suite::Thm1, Suite::Thm2, Suite::Thm3, Suite::Ball, Suite::Aux] {
                out.extend(run(s, opts)?);
            }
            Ok(out)
        }
    }
}

/// `n` log-spaced points on [lo, hi].
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

fn checks(v: Vec<CheckResult>) -> impl Iterator<Item = ReportEntry> {
    v.into_iter().map(ReportEntry::check)
}

fn named(pairs: &[(&str, f64)]) -> Vec<(String, f64)> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// The ψ and polygamma bounds on 200 log-spaced points of [1e-2, 1e3].
pub fn lemmas() -> Result<Vec<ReportEntry>> {
    let mut out = Vec::new();
    for x in log_grid(1e-2, 1e3, 200) {
        out.extend(checks(ineq::psi_log_bounds(x)?));
        out.push(ReportEntry::check(ineq::psi_upper_refinement(x)?));
        for k in 1..=6 {
            out.extend(checks(ineq::polygamma_bounds(k, x)?));
        }
    }
    Ok(out)
}

pub const THM1_YS: [f64; 5] = [-0.9, -0.5, 0.0, 1.0, 5.0];
pub const THM1_DELTAS: [f64; 3] = [0.0, 0.5, 2.0];

/// Certificates for the sufficiency and necessity sides of the LCM range, the
/// limits used in its proof, finite-difference checks of the derivative
/// formula and randomized gamma-ratio bounds.
pub fn thm1(opts: &SuiteOptions) -> Result<Vec<ReportEntry>> {
    let mut out = Vec::new();
    let (grid, k_max) = (&opts.grid, opts.k_max);

    for y in THM1_YS {
        for d in THM1_DELTAS {
            let p = HParams::new(HParams::lcm_threshold(y) + d, y)?;
            out.push(ReportEntry::certificate(certify::certify_lcm(&p, Direction::Lcm, k_max, grid)?, Verdict::Pass));
        }
    }
    for y in THM1_YS {
        for d in THM1_DELTAS {
            let p = HParams::new(HParams::reciprocal_threshold(y) - d, y)?;
            let c = certify::certify_lcm(&p, Direction::Reciprocal, k_max, grid)?;
            out.push(ReportEntry::certificate(c, Verdict::Pass));
        }
    }
    for y in [-0.5, 0.0, 1.0] {
        let p = HParams::new(HParams::lcm_threshold(y) - 0.1, y)?;
        out.push(ReportEntry::certificate(certify::certify_lcm(&p, Direction::Lcm, k_max, grid)?, Verdict::Fail));
    }

    for y in [-0.5, 0.0, 1.0, 5.0] {
        let (inner, outer) = certify::necessity_limits(y)?;
        let base = named(&[("y", y)]);
        out.push(ReportEntry::check(CheckResult::within("necessity_limit_inner", base.clone(), inner, 1.0 / (y + 1.0), 1e-2)));
        out.push(ReportEntry::check(CheckResult::within("necessity_limit_infinity", base, outer, 1.0, 1e-3)));
    }

    for x in [1e-4, 1e-6] {
        let base = named(&[("x", x)]);
        let psi = gammakit::digamma(x)?;
        out.push(ReportEntry::check(CheckResult::within("limit_x2_psi", base.clone(), x * x * psi, 0.0, 1e-3)));
        let lg = gammakit::lngamma(x)?;
        out.push(ReportEntry::check(CheckResult::within("limit_x_lngamma", base.clone(), x * lg, 0.0, 1e-3)));
        out.push(ReportEntry::check(CheckResult::within("limit_x_psi", base, x * psi, -1.0, 1e-3)));
    }

    out.extend(finite_difference_checks()?);
    out.extend(gamma_ratio_checks(GAMMA_RATIO_SEED, GAMMA_RATIO_CASES)?);
    Ok(out)
}

/// Sample points (α, y, x) for the finite-difference checks: five members
/// of the family, four abscissae each, one of them left of the origin.
pub fn finite_difference_points() -> Vec<(f64, f64, f64)> {
    let params = [(1.0, 0.0), (2.0, 1.0), (0.0, 0.0), (0.5, -0.5), (3.0, 5.0)];
    let mut out = Vec::new();
    for (alpha, y) in params {
        for x in [-0.5 * (y + 1.0), 0.5, 3.0, 25.0] {
            out.push((alpha, y, x));
        }
    }
    out
}

pub fn finite_difference_checks() -> Result<Vec<ReportEntry>> {
    let mut out = Vec::new();
    for (alpha, y, x) in finite_difference_points() {
        let p = HParams::new(alpha, y)?;
        for k in 1..=4 {
            let step = if k == 1 { 1e-5 } else { 1e-4 };
            let r = certify::finite_diff_crosscheck(k, &p, x, step)?;
            let inputs = named(&[("k", k as f64), ("alpha", alpha), ("y", y), ("x", x), ("step", step)]);
            out.push(ReportEntry::check(CheckResult::from_margins(
                "finite_diff_crosscheck",
                inputs,
                r,
                1e-6,
                &[1e-6 - r],
                0.0,
            )));
        }
    }
    Ok(out)
}

/// Random admissible (x, y, t) with the exponents a = max{1, 1/(y+1)} and
/// b = min{1, 1/(2(y+1))}.
pub fn gamma_ratio_checks(seed: u64, cases: usize) -> Result<Vec<ReportEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(cases);
    while out.len() < cases {
        let y = -0.99 + 20.99 * rng.gen::<f64>();
        let c = y + 1.0;
        let x = -c + c * (1e-3 + 0.999 * rng.gen::<f64>()) * if rng.gen_bool(0.5) { 1.0 } else { 50.0 };
        let t = 10f64.powf(-3.0 + 5.0 * rng.gen::<f64>());
        if x.abs() < 1e-6 || (x + t).abs() < 1e-6 {
            continue;
        }
        let (a, b) = (HParams::lcm_threshold(y), HParams::reciprocal_threshold(y));
        out.push(ReportEntry::check(ineq::gamma_ratio_ineq(x, y, t, a, b)?));
    }
    Ok(out)
}

/// The ψ/ln Γ inequality on 300 log-spaced points of [1e-4, 1e3], the chain of
/// sufficient conditions on (0, 8/7), the logarithm bound and the
/// integral-mean bounds at the arguments used in the proof.
pub fn thm2() -> Result<Vec<ReportEntry>> {
    let mut out = Vec::new();
    for t in log_grid(1e-4, 1e3, 300) {
        out.push(ReportEntry::check(ineq::thm2_ineq(t)?));
    }
    for i in 1..=50 {
        let t = 8.0 / 7.0 * i as f64 / 51.0;
        out.extend(checks(ineq::suffice_chain(t)?));
    }
    for t in log_grid(1e-4, 1e3, 100) {
        out.push(ReportEntry::check(ineq::log_upper_bound_ineq(t)?));
    }
    for t in log_grid(1e-2, 8.0 / 7.0, 20) {
        let b = t / (1.0 + 2.0 * t);
        out.push(ReportEntry::check(ineq::psi_integral_mean_ineq(0, b, t, -1.0, 0.0)?));
        let s = 2.0 * t * t / ((1.0 + 2.0 * t) * (2.0 * t).ln_1p());
        out.push(ReportEntry::check(ineq::psi_integral_mean_ineq(1, s, t, -2.0, -1.0)?));
    }
    Ok(out)
}

pub const THM3_YS: [f64; 4] = [-0.9, -0.75, -0.6, -0.51];

pub fn thm3(opts: &SuiteOptions) -> Result<Vec<ReportEntry>> {
    THM3_YS
        .iter()
        .map(|&y| Ok(ReportEntry::surface(certify::verify_thm3(y, &opts.grid)?)))
        .collect()
}

/// Ratio bounds for n = 1..60 and the two-step recurrence for n = 2..100.
pub fn ball() -> Result<Vec<ReportEntry>> {
    let mut out = Vec::new();
    for n in 1..=60 {
        out.extend(checks(ballvol::ball_ratio_checks(n)?));
    }
    for n in 2..=100i64 {
        let lhs = ballvol::omega(n)?;
        let rhs = ballvol::omega(n - 2)? * 2.0 * std::f64::consts::PI / n as f64;
        let rel = (lhs - rhs).abs() / rhs.abs();
        out.push(ReportEntry::check(CheckResult::from_margins(
            "omega_recurrence",
            named(&[("n", n as f64), ("value", lhs)]),
            rel,
            1e-12,
            &[1e-12 - rel],
            0.0,
        )));
    }
    Ok(out)
}

/// Exact spot values of the auxiliary functions, the QCUB root, HPOLY < 0
/// on (1/3, 8/7) and QLOG increasing past 1/4 and positive from 8/7.
pub fn aux() -> Result<Vec<ReportEntry>> {
    let mut out = Vec::new();
    let spot = |name: &str, f: AuxFn, t: f64, target: f64, tol: f64| -> Result<ReportEntry> {
        let v = ineq::aux_eval(f, t)?;
        Ok(ReportEntry::check(CheckResult::within(name, named(&[("t", t)]), v, target, tol)))
    };
    out.push(spot("qcub_at_0", AuxFn::Qcub, 0.0, -3.0, 1e-12)?);
    out.push(spot("qcub_at_1", AuxFn::Qcub, 1.0, 14.0, 1e-12)?);
    out.push(spot("qcub_at_one_third", AuxFn::Qcub, 1.0 / 3.0, -2.0 / 3.0, 1e-12)?);
    out.push(spot("hpoly_at_0", AuxFn::Hpoly, 0.0, 9.0, 1e-12)?);
    let h13 = -700.0 / 81.0;
    out.push(spot("hpoly_at_one_third", AuxFn::Hpoly, 1.0 / 3.0, h13, 1e-12 * h13.abs())?);
    let h87 = -404759.0 / 117649.0;
    out.push(spot("hpoly_at_eight_sevenths", AuxFn::Hpoly, 8.0 / 7.0, h87, 1e-12 * h87.abs())?);

    let q = ineq::aux_eval(AuxFn::Qlog, 8.0 / 7.0)?;
    out.push(ReportEntry::check(CheckResult::from_margins(
        "qlog_at_eight_sevenths",
        named(&[("t", 8.0 / 7.0), ("value", q)]),
        0.002,
        0.003,
        &[q - 0.002, 0.003 - q],
        0.0,
    )));

    let root = ineq::qcub_root(1e-10)?;
    let at_root = ineq::aux_eval(AuxFn::Qcub, root)?;
    out.push(ReportEntry::check(CheckResult::from_margins(
        "qcub_root_bracket",
        named(&[("value", root), ("qcub_at_root", at_root)]),
        1.0 / 3.0,
        1.0,
        &[root - 1.0 / 3.0, 1.0 - root],
        0.0,
    )));

    for i in 1..=100 {
        let t = 1.0 / 3.0 + (8.0 / 7.0 - 1.0 / 3.0) * i as f64 / 101.0;
        let v = ineq::aux_eval(AuxFn::Hpoly, t)?;
        out.push(ReportEntry::check(CheckResult::from_margins(
            "hpoly_negative",
            named(&[("t", t)]),
            v,
            0.0,
            &[-v],
            0.0,
        )));
    }

    let ts = log_grid(0.25, 1e3, 100);
    for w in ts.windows(2) {
        let (a, b) = (ineq::aux_eval(AuxFn::Qlog, w[0])?, ineq::aux_eval(AuxFn::Qlog, w[1])?);
        out.push(ReportEntry::check(CheckResult::from_margins(
            "qlog_increasing",
            named(&[("t0", w[0]), ("t1", w[1])]),
            a,
            b,
            &[b - a],
            0.0,
        )));
    }
    for t in log_grid(8.0 / 7.0, 1e3, 50) {
        let v = ineq::aux_eval(AuxFn::Qlog, t)?;
        out.push(ReportEntry::check(CheckResult::from_margins(
            "qlog_positive",
            named(&[("t", t)]),
            0.0,
            v,
            &[v],
            0.0,
        )));
    }
    Ok(out)
}

/// A true claim next to two deliberately wrong ones: an inverted ψ bound
/// and a gamma ratio with swapped exponents.
pub fn fault() -> Result<Vec<ReportEntry>> {
    let mut out = vec![ReportEntry::check(ineq::thm2_ineq(1.0)?)];
    let psi = gammakit::digamma(2.0)?;
    out.push(ReportEntry::check(CheckResult::from_margins(
        "fault_inverted_psi_bound",
        named(&[("x", 2.0), ("value", psi)]),
        2f64.ln() - 0.25,
        2f64.ln() - 0.5,
        &[psi - (2f64.ln() - 0.25)],
        0.0,
    )));
    out.push(ReportEntry::check(ineq::gamma_ratio_ineq(1.0, 0.0, 1.0, 0.5, 1.0)?));
    Ok(out)
}
