//! Shared oracles for the integration tests. Nothing here calls into the code
//! paths it is used to check.
#![allow(dead_code)]

use corquad::{DerivFn, Integrand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qf(x: f64) -> Q {
    BigRational::from_float(x).expect("finite")
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().expect("representable")
}

/// Exact polynomial with rational coefficients, ascending powers.
#[derive(Clone, Debug, PartialEq)]
pub struct RPoly(pub Vec<Q>);

impl RPoly {
    pub fn from_roots(lead: Q, roots: &[(Q, usize)]) -> RPoly {
        let mut p = RPoly(vec![lead]);
        for (r, m) in roots {
            for _ in 0..*m {
                p = p.mul(&RPoly(vec![-r.clone(), Q::one()]));
            }
        }
        p
    }

    pub fn mul(&self, o: &RPoly) -> RPoly {
        let mut c = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        RPoly(c)
    }

    pub fn scale(&self, s: &Q) -> RPoly {
        RPoly(self.0.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> RPoly {
        if self.0.len() <= 1 {
            return RPoly(vec![Q::zero()]);
        }
        RPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn integral(&self, lo: &Q, hi: &Q) -> Q {
        let anti = RPoly(
            std::iter::once(Q::zero())
                .chain(
                    self.0
                        .iter()
                        .enumerate()
                        .map(|(i, c)| c / Q::from_integer(BigInt::from(i + 1))),
                )
                .collect(),
        );
        anti.eval(hi) - anti.eval(lo)
    }

    /// `x -> 1 - x`
    pub fn reflect(&self) -> RPoly {
        let one_minus_x = RPoly(vec![Q::one(), -Q::one()]);
        let mut out = RPoly(vec![Q::zero()]);
        let mut pow = RPoly(vec![Q::one()]);
        for c in &self.0 {
            let term = pow.scale(c);
            out = add(&out, &term);
            pow = pow.mul(&one_minus_x);
        }
        out
    }
}

pub fn add(a: &RPoly, b: &RPoly) -> RPoly {
    let n = a.0.len().max(b.0.len());
    RPoly(
        (0..n)
            .map(|i| {
                a.0.get(i).cloned().unwrap_or_else(Q::zero) + b.0.get(i).cloned().unwrap_or_else(Q::zero)
            })
            .collect(),
    )
}

/// Factored kernel pieces `(P_k, Q_k)` written out independently from the
/// library's expanded table.
pub fn factored_kernel(k: usize) -> (RPoly, RPoly) {
    let fact: i64 = (1..=k as i64).product();
    let lead = q(1, fact);
    let r = |n: i64, d: i64, m: usize| (q(n, d), m);
    match k {
        2 => (
            RPoly(vec![q(1, 60), q(-7, 30), q(1, 2)]),
            RPoly(vec![q(17, 60), q(-23, 30), q(1, 2)]),
        ),
        3 => (
            RPoly::from_roots(lead.clone(), &[r(0, 1, 1), r(1, 5, 1), r(1, 2, 1)]),
            RPoly::from_roots(lead, &[r(1, 1, 1), r(1, 2, 1), r(4, 5, 1)]),
        ),
        4 => (
            RPoly::from_roots(lead.clone(), &[r(0, 1, 2), r(1, 3, 1), r(3, 5, 1)]),
            RPoly::from_roots(lead, &[r(1, 1, 2), r(2, 3, 1), r(2, 5, 1)]),
        ),
        5 => (
            RPoly::from_roots(lead.clone(), &[r(0, 1, 3), r(1, 2, 1), r(2, 3, 1)]),
            RPoly::from_roots(lead, &[r(1, 1, 3), r(1, 2, 1), r(1, 3, 1)]),
        ),
        6 => (
            RPoly::from_roots(lead.clone(), &[r(0, 1, 4)]).mul(&RPoly(vec![q(1, 2), q(-7, 5), q(1, 1)])),
            RPoly::from_roots(lead, &[r(1, 1, 4)]).mul(&RPoly(vec![q(1, 10), q(-3, 5), q(1, 1)])),
        ),
        _ => panic!("no kernel of order {k}"),
    }
}

/// The modified Simpson rule on `[lo, hi]` in exact arithmetic.
pub fn modified_simpson_exact(p: &RPoly, lo: &Q, hi: &Q) -> Q {
    let len = hi - lo;
    let mid = (lo + hi) / q(2, 1);
    let dp = p.derivative();
    len.clone() / q(30, 1) * (q(7, 1) * p.eval(lo) + q(16, 1) * p.eval(&mid) + q(7, 1) * p.eval(hi))
        - len.clone() * len / q(60, 1) * (dp.eval(hi) - dp.eval(lo))
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

// ---------------------------------------------------------------------------
// Test integrands with hand-derived derivatives.

/// `e^x`
pub fn exp_fn() -> DerivFn<impl Fn(usize, f64) -> f64> {
    DerivFn::new(6, |_, x: f64| x.exp())
}

/// `exp(-x^2)`: `f^(n) = (-1)^n H_n(x) exp(-x^2)` with physicists' Hermite `H_n`.
pub fn gauss_fn() -> DerivFn<impl Fn(usize, f64) -> f64> {
    DerivFn::new(6, |n, x: f64| {
        let (mut h0, mut h1) = (1.0, 2.0 * x);
        let h = match n {
            0 => h0,
            _ => {
                for m in 1..n {
                    let h2 = 2.0 * x * h1 - 2.0 * m as f64 * h0;
                    h0 = h1;
                    h1 = h2;
                }
                h1
            }
        };
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sign * h * (-x * x).exp()
    })
}

/// `sin x`
pub fn sin_fn() -> DerivFn<impl Fn(usize, f64) -> f64> {
    DerivFn::new(6, |n, x: f64| match n % 4 {
        0 => x.sin(),
        1 => x.cos(),
        2 => -x.sin(),
        _ => -x.cos(),
    })
}

/// `1/(1+x^2)`: `f^(n) = (-1)^n n! sin((n+1)φ) / (1+x^2)^((n+1)/2)`, `φ = atan2(1, x)`.
pub fn runge_fn() -> DerivFn<impl Fn(usize, f64) -> f64> {
    DerivFn::new(6, |n, x: f64| {
        let phi = 1.0f64.atan2(x);
        let r = (1.0 + x * x).sqrt();
        let fact: f64 = (1..=n).map(|i| i as f64).product();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sign * fact * ((n + 1) as f64 * phi).sin() / r.powi(n as i32 + 1)
    })
}

pub struct Named {
    pub name: &'static str,
    pub expr: &'static str,
    pub f: Box<dyn Integrand>,
}

pub fn corpus() -> Vec<Named> {
    vec![
        Named { name: "exp(x)", expr: "exp(x)", f: Box::new(exp_fn()) },
        Named { name: "exp(-x^2)", expr: "exp(-x^2)", f: Box::new(gauss_fn()) },
        Named { name: "sin(x)", expr: "sin(x)", f: Box::new(sin_fn()) },
        Named { name: "1/(1+x^2)", expr: "1/(1+x^2)", f: Box::new(runge_fn()) },
    ]
}

/// `√π/2 · erf(1)`
#[allow(clippy::excessive_precision)]
pub const GAUSS_INTEGRAL_01: f64 = 0.746_824_132_812_427_025_4;

// ---------------------------------------------------------------------------
// Numeric oracles.

/// k-th derivative from function values only: central differences on a
/// shrinking step sequence, Richardson-extrapolated (Ridders' tableau), keeping
/// the entry whose estimated error is smallest.
pub fn richardson_derivative<G: Fn(f64) -> f64>(g: &G, k: usize, x: f64, h0: f64) -> f64 {
    // k-th central difference with step h, error O(h^2)
    let central = |h: f64| {
        let mut s = 0.0;
        for i in 0..=k {
            let binom: f64 = (0..i).fold(1.0, |acc, j| acc * (k - j) as f64 / (j + 1) as f64);
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * binom * g(x + (k as f64 / 2.0 - i as f64) * h);
        }
        s / h.powi(k as i32)
    };
    const LEVELS: usize = 12;
    const CON: f64 = 1.4;
    const CON2: f64 = CON * CON;
    let mut t = [[0.0f64; LEVELS]; LEVELS];
    let mut h = h0;
    t[0][0] = central(h);
    let mut best = t[0][0];
    let mut best_err = f64::INFINITY;
    for i in 1..LEVELS {
        h /= CON;
        t[0][i] = central(h);
        let mut fac = CON2;
        for j in 1..=i {
            t[j][i] = (t[j - 1][i] * fac - t[j - 1][i - 1]) / (fac - 1.0);
            fac *= CON2;
            let e = (t[j][i] - t[j - 1][i]).abs().max((t[j][i] - t[j - 1][i - 1]).abs());
            if e <= best_err {
                best_err = e;
                best = t[j][i];
            }
        }
    }
    best
}

/// Maximum of `g` on `[lo, hi]`: dense sampling, then golden-section polish
/// around the best sample.
pub fn dense_max<G: Fn(f64) -> f64>(g: &G, lo: f64, hi: f64, n: usize) -> f64 {
    let xs: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let (ibest, _) = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| (i, g(x)))
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let mut a = xs[ibest.saturating_sub(1)];
    let mut b = xs[(ibest + 1).min(n)];
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut best = g(xs[ibest]);
    for _ in 0..200 {
        let c = b - r * (b - a);
        let d = a + r * (b - a);
        let (gc, gd) = (g(c), g(d));
        best = best.max(gc).max(gd);
        if gc > gd {
            b = d;
        } else {
            a = c;
        }
        if b - a < 1e-15 {
            break;
        }
    }
    best
}

/// Adaptive Simpson with Richardson correction; an independent integrator
/// for piecewise-smooth test integrands.
pub fn adaptive_simpson<G: Fn(f64) -> f64>(g: &G, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec<G: Fn(f64) -> f64>(
        g: &G,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (g(lm), g(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(g, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + rec(g, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fm, fb) = (g(a), g(0.5 * (a + b)), g(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(g, a, b, fa, fm, fb, whole, tol, 50)
}
