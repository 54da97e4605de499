//! Gauss–Legendre quadrature, fixed and adaptive.

use std::sync::OnceLock;

const ORDER: usize = 20;

struct Rule {
    nodes: [f64; ORDER],
    weights: [f64; ORDER],
}

fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut nodes = [0.0; ORDER];
        let mut weights = [0.0; ORDER];
        let n = ORDER as f64;
        for i in 0..ORDER.div_ceil(2) {
            // Newton on P_n from the Chebyshev-like initial guess
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=ORDER {
                    let j = j as f64;
                    let p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[ORDER - 1 - i] = x;
            weights[ORDER - 1 - i] = w;
        }
        Rule { nodes, weights }
    })
}

/// 20-point Gauss–Legendre rule on [a, b].
pub(crate) fn fixed<F>(f: &F, a: f64, b: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let r = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    let mut acc = 0.0;
    for (x, w) in r.nodes.iter().zip(r.weights.iter()) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Adaptive bisection on the 20-point rule until the halves agree with the
/// whole panel to `rel_tol`, relative to the running magnitude.
pub(crate) fn adaptive<F>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let whole = fixed(f, a, b);
    refine(f, a, b, whole, rel_tol, 0)
}

fn refine<F>(f: &F, a: f64, b: f64, whole: f64, rel_tol: f64, depth: u32) -> f64
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let left = fixed(f, a, m);
    let right = fixed(f, m, b);
    let both = left + right;
    if (both - whole).abs() <= rel_tol * both.abs() || depth >= 40 {
        return both;
    }
    refine(f, a, m, left, rel_tol, depth + 1) + refine(f, m, b, right, rel_tol, depth + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        let s: f64 = rule().weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn exact_for_high_degree_polynomials() {
        let v = fixed(&|x: f64| x.powi(38), 0.0, 1.0);
        assert!((v - 1.0 / 39.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_near_singularity() {
        // ∫_0^1 dx / (1.0001 - x) = ln(1.0001 / 0.0001)
        let v = adaptive(&|x: f64| 1.0 / (1.0001 - x), 0.0, 1.0, 1e-14);
        let exact = (1.0001f64 / 0.0001).ln();
        assert!((v - exact).abs() < 1e-12 * exact);
    }
}
