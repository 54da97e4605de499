//! Extended-precision reference evaluations used only by test suites.
//!
//! Everything here runs in 320-bit binary floating point and is written
//! without reference to the binary64 kernel in `gammalcm`: Bernoulli numbers
//! come from the defining recurrence, the argument is shifted past 48 and the
//! Euler–Maclaurin tail is carried to 40 correction terms.

use std::cell::RefCell;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float_num::{BigFloat, Consts, Radix, RoundingMode};

const PREC: usize = 320;
const RM: RoundingMode = RoundingMode::ToEven;
const SHIFT: usize = 48;
const TERMS: usize = 40;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants"));
    static BERNOULLI: Vec<Hp> = bernoulli_even(TERMS + 2);
}

/// A 320-bit float with arithmetic operators.
#[derive(Debug, Clone)]
pub struct Hp(BigFloat);

impl Hp {
    pub fn from_f64(v: f64) -> Self {
        Hp(BigFloat::from_f64(v, PREC))
    }

    pub fn from_int(v: i64) -> Self {
        Hp(BigFloat::from_i64(v, PREC))
    }

    pub fn parse(s: &str) -> Self {
        CONSTS.with(|cc| Hp(BigFloat::parse(s, Radix::Dec, PREC, RM, &mut cc.borrow_mut())))
    }

    pub fn ln(&self) -> Self {
        CONSTS.with(|cc| Hp(self.0.ln(PREC, RM, &mut cc.borrow_mut())))
    }

    pub fn exp(&self) -> Self {
        CONSTS.with(|cc| Hp(self.0.exp(PREC, RM, &mut cc.borrow_mut())))
    }

    pub fn pi() -> Self {
        CONSTS.with(|cc| Hp(cc.borrow_mut().pi(PREC, RM)))
    }

    pub fn powi(&self, n: usize) -> Self {
        Hp(self.0.powi(n, PREC, RM))
    }

    pub fn recip(&self) -> Self {
        Hp(self.0.reciprocal(PREC, RM))
    }

    /// Nearest binary64 value (decimal round trip with 40 digits).
    pub fn to_f64(&self) -> f64 {
        let s = CONSTS
            .with(|cc| self.0.format(Radix::Dec, RM, &mut cc.borrow_mut()))
            .expect("format big float");
        s.parse::<f64>().expect("parse formatted big float")
    }
}

impl Add for &Hp {
    type Output = Hp;
    fn add(self, o: &Hp) -> Hp {
        Hp(self.0.add(&o.0, PREC, RM))
    }
}

impl Sub for &Hp {
    type Output = Hp;
    fn sub(self, o: &Hp) -> Hp {
        Hp(self.0.sub(&o.0, PREC, RM))
    }
}

impl Mul for &Hp {
    type Output = Hp;
    fn mul(self, o: &Hp) -> Hp {
        Hp(self.0.mul(&o.0, PREC, RM))
    }
}

impl Div for &Hp {
    type Output = Hp;
    fn div(self, o: &Hp) -> Hp {
        Hp(self.0.div(&o.0, PREC, RM))
    }
}

impl Neg for &Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(self.0.clone().neg())
    }
}

fn binomial_row(n: usize) -> Vec<Hp> {
    let mut row = vec![Hp::from_int(1)];
    for k in 1..=n {
        let prev = &row[k - 1];
        let next = &(prev * &Hp::from_int((n - k + 1) as i64)) / &Hp::from_int(k as i64);
        row.push(next);
    }
    row
}

/// B_0, B_2, ..., B_{2m} from sum_{j<=n} C(n+1, j) B_j = 0.
fn bernoulli_even(m: usize) -> Vec<Hp> {
    let top = 2 * m;
    let mut all: Vec<Hp> = Vec::with_capacity(top + 1);
    all.push(Hp::from_int(1));
    for n in 1..=top {
        let row = binomial_row(n + 1);
        let mut acc = Hp::from_int(0);
        for (j, b) in all.iter().enumerate() {
            acc = &acc + &(&row[j] * b);
        }
        all.push(&(-&acc) / &Hp::from_int((n + 1) as i64));
    }
    all.into_iter().step_by(2).collect()
}

fn factorial(n: usize) -> Hp {
    let mut acc = Hp::from_int(1);
    for j in 2..=n {
        acc = &acc * &Hp::from_int(j as i64);
    }
    acc
}

/// ln Γ(x), x > 0.
pub fn lngamma(x: &Hp) -> Hp {
    let mut z = x.clone();
    let mut prod = Hp::from_int(1);
    for _ in 0..SHIFT {
        prod = &prod * &z;
        z = &z + &Hp::from_int(1);
    }
    let half = Hp::parse("0.5");
    let two_pi = &Hp::pi() * &Hp::from_int(2);
    let mut s = &(&(&z - &half) * &z.ln()) - &z;
    s = &s + &(&half * &two_pi.ln());
    let zinv = z.recip();
    let zinv2 = &zinv * &zinv;
    let mut zpow = zinv.clone();
    BERNOULLI.with(|b| {
        for n in 1..=TERMS {
            let denom = Hp::from_int(((2 * n) * (2 * n - 1)) as i64);
            s = &s + &(&(&b[n] / &denom) * &zpow);
            zpow = &zpow * &zinv2;
        }
    });
    &s - &prod.ln()
}

/// ψ(x), x > 0.
pub fn digamma(x: &Hp) -> Hp {
    let mut z = x.clone();
    let mut shift_sum = Hp::from_int(0);
    for _ in 0..SHIFT {
        shift_sum = &shift_sum + &z.recip();
        z = &z + &Hp::from_int(1);
    }
    let zinv = z.recip();
    let zinv2 = &zinv * &zinv;
    let mut s = &z.ln() - &(&zinv / &Hp::from_int(2));
    let mut zpow = zinv2.clone();
    BERNOULLI.with(|b| {
        for n in 1..=TERMS {
            s = &s - &(&(&b[n] / &Hp::from_int((2 * n) as i64)) * &zpow);
            zpow = &zpow * &zinv2;
        }
    });
    &s - &shift_sum
}

/// ψ^(k)(x) for k ≥ 1, x > 0, via (−1)^{k+1} k! ζ(k+1, x) with the
/// Euler–Maclaurin form of the Hurwitz zeta function.
pub fn polygamma(k: usize, x: &Hp) -> Hp {
    assert!(k >= 1);
    let s = k + 1;
    let mut z = x.clone();
    let mut head = Hp::from_int(0);
    for _ in 0..SHIFT {
        head = &head + &z.powi(s).recip();
        z = &z + &Hp::from_int(1);
    }
    // tail: z^{1-s}/(s-1) + z^{-s}/2 + sum B_2n/(2n)! (s)_{2n-1} z^{-s-2n+1}
    let zinv = z.recip();
    let mut tail = &zinv.powi(k) / &Hp::from_int(k as i64);
    tail = &tail + &(&zinv.powi(s) / &Hp::from_int(2));
    let zinv2 = &zinv * &zinv;
    let mut zpow = zinv.powi(s + 1);
    BERNOULLI.with(|b| {
        for n in 1..=TERMS {
            // rising factorial (s)_{2n-1} = s (s+1) ... (s+2n-2)
            let mut rising = Hp::from_int(1);
            for j in 0..(2 * n - 1) {
                rising = &rising * &Hp::from_int((s + j) as i64);
            }
            let coef = &(&b[n] * &rising) / &factorial(2 * n);
            tail = &tail + &(&coef * &zpow);
            zpow = &zpow * &zinv2;
        }
    });
    let zeta = &head + &tail;
    let mag = &factorial(k) * &zeta;
    if k % 2 == 1 {
        mag
    } else {
        -&mag
    }
}

/// [ln h_{α,y}]^(k)(x) from the closed form
/// `k!/x^{k+1} [Σ_{i=0}^{k} (−1)^{k−i} x^i/i! ψ^{(i−1)}(x+y+1) − (−1)^k ln Γ(y+1)]
///  − (−1)^{k−1} (k−1)! α / (x+y+1)^k`, with ψ^{(−1)} = ln Γ.
/// At this precision the cancellation for small |x| is harmless.
pub fn logh_deriv(k: usize, alpha: f64, y: f64, x: f64) -> f64 {
    assert!(k >= 1 && x != 0.0);
    let one = Hp::from_int(1);
    let c = &Hp::from_f64(y) + &one;
    let xh = Hp::from_f64(x);
    let z = &xh + &c;
    let mut bracket = Hp::from_int(0);
    let mut xi = one.clone();
    for i in 0..=k {
        if i > 0 {
            xi = &xi * &xh;
        }
        let psi = match i {
            0 => lngamma(&z),
            1 => digamma(&z),
            _ => polygamma(i - 1, &z),
        };
        let term = &(&xi * &psi) / &factorial(i);
        bracket = if (k - i) % 2 == 0 { &bracket + &term } else { &bracket - &term };
    }
    let lgc = lngamma(&c);
    bracket = if k % 2 == 0 { &bracket - &lgc } else { &bracket + &lgc };
    let g = &(&factorial(k) * &bracket) / &xh.powi(k + 1);
    let a = &(&factorial(k - 1) * &Hp::from_f64(alpha)) / &z.powi(k);
    let total = if k % 2 == 1 { &g - &a } else { &g + &a };
    total.to_f64()
}

pub fn lngamma_f64(x: f64) -> f64 {
    lngamma(&Hp::from_f64(x)).to_f64()
}

pub fn digamma_f64(x: f64) -> f64 {
    digamma(&Hp::from_f64(x)).to_f64()
}

pub fn polygamma_f64(k: usize, x: f64) -> f64 {
    polygamma(k, &Hp::from_f64(x)).to_f64()
}

/// Euler's constant as −ψ(1).
pub fn euler_gamma_f64() -> f64 {
    (-&digamma(&Hp::from_int(1))).to_f64()
}
