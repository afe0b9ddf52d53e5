//! Truncated Taylor series ("jets") of order 6 for forward-mode
//! differentiation. A jet at `x0` stores `c_j = f^(j)(x0) / j!`.

use core::ops::{Add, Mul, Neg, Sub};

use crate::error::EvalFailure;

/// Highest Taylor coefficient kept.
pub const JET_ORDER: usize = 6;
const N: usize = JET_ORDER + 1;

type JetResult = core::result::Result<TaylorJet, EvalFailure>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorJet {
    c: [f64; N],
}

impl TaylorJet {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        TaylorJet { c }
    }

    /// The identity function expanded at `x0`.
    pub fn variable(x0: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = x0;
        c[1] = 1.0;
        TaylorJet { c }
    }

    pub fn from_coeffs(c: [f64; N]) -> Self {
        TaylorJet { c }
    }

    pub fn coeffs(&self) -> &[f64; N] {
        &self.c
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// `f^(k)(x0) = k! c_k`
    pub fn derivative(&self, k: usize) -> f64 {
        self.c[k] * factorial(k)
    }

    pub(crate) fn checked(self) -> JetResult {
        if self.c.iter().all(|v| v.is_finite()) {
            Ok(self)
        } else {
            Err(EvalFailure::NonFinite)
        }
    }

    pub fn scale(self, s: f64) -> Self {
        TaylorJet { c: self.c.map(|v| v * s) }
    }

    pub fn recip(self) -> JetResult {
        TaylorJet::constant(1.0).checked_div(self)
    }

    pub fn checked_div(self, rhs: TaylorJet) -> JetResult {
        let b = &rhs.c;
        if b[0] == 0.0 {
            return Err(EvalFailure::DivisionByZero);
        }
        let mut q = [0.0; N];
        for k in 0..N {
            let s: f64 = (0..k).map(|j| q[j] * b[k - j]).sum();
            q[k] = (self.c[k] - s) / b[0];
        }
        TaylorJet { c: q }.checked()
    }

    pub fn exp(self) -> JetResult {
        let a = &self.c;
        let mut e = [0.0; N];
        e[0] = libm::exp(a[0]);
        for k in 1..N {
            let s: f64 = (1..=k).map(|j| j as f64 * a[j] * e[k - j]).sum();
            e[k] = s / k as f64;
        }
        TaylorJet { c: e }.checked()
    }

    pub fn ln(self) -> JetResult {
        let a = &self.c;
        if a[0] <= 0.0 {
            return Err(EvalFailure::LogOfNonPositive);
        }
        let mut l = [0.0; N];
        l[0] = libm::log(a[0]);
        for k in 1..N {
            let s: f64 = (1..k).map(|j| j as f64 * l[j] * a[k - j]).sum();
            l[k] = (a[k] - s / k as f64) / a[0];
        }
        TaylorJet { c: l }.checked()
    }

    /// `(sin, cos)` of the jet.
    pub fn sin_cos(self) -> (TaylorJet, TaylorJet) {
        let a = &self.c;
        let mut s = [0.0; N];
        let mut c = [0.0; N];
        s[0] = libm::sin(a[0]);
        c[0] = libm::cos(a[0]);
        for k in 1..N {
            let ss: f64 = (1..=k).map(|j| j as f64 * a[j] * c[k - j]).sum();
            let cs: f64 = (1..=k).map(|j| j as f64 * a[j] * s[k - j]).sum();
            s[k] = ss / k as f64;
            c[k] = -cs / k as f64;
        }
        (TaylorJet { c: s }, TaylorJet { c })
    }

    pub fn tan(self) -> JetResult {
        let (s, c) = self.sin_cos();
        s.checked_div(c)
    }

    pub fn sqrt(self) -> JetResult {
        let a = &self.c;
        if a[0] < 0.0 {
            return Err(EvalFailure::SqrtOfNegative);
        }
        if a[0] == 0.0 {
            return Err(EvalFailure::NonDifferentiable);
        }
        let mut r = [0.0; N];
        r[0] = libm::sqrt(a[0]);
        for k in 1..N {
            let s: f64 = (1..k).map(|j| r[j] * r[k - j]).sum();
            r[k] = (a[k] - s) / (2.0 * r[0]);
        }
        TaylorJet { c: r }.checked()
    }

    /// Integer power by repeated squaring; exact arithmetic path for
    /// polynomial-like integrands.
    pub fn powi(self, n: i64) -> JetResult {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let mut base = self;
        let mut acc = TaylorJet::constant(1.0);
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc.checked()
    }

    /// `self^r` for a real constant `r`; the base must be positive.
    pub fn powf(self, r: f64) -> JetResult {
        let a = &self.c;
        if a[0] < 0.0 {
            return Err(EvalFailure::PowDomain);
        }
        if a[0] == 0.0 {
            return Err(EvalFailure::NonDifferentiable);
        }
        let mut p = [0.0; N];
        p[0] = libm::pow(a[0], r);
        for k in 1..N {
            let s: f64 = (1..=k)
                .map(|j| ((r + 1.0) * j as f64 - k as f64) * a[j] * p[k - j])
                .sum();
            p[k] = s / (k as f64 * a[0]);
        }
        TaylorJet { c: p }.checked()
    }
}

impl Add for TaylorJet {
    type Output = TaylorJet;
    fn add(self, rhs: TaylorJet) -> TaylorJet {
        let mut c = self.c;
        c.iter_mut().zip(rhs.c).for_each(|(x, y)| *x += y);
        TaylorJet { c }
    }
}

impl Sub for TaylorJet {
    type Output = TaylorJet;
    fn sub(self, rhs: TaylorJet) -> TaylorJet {
        let mut c = self.c;
        c.iter_mut().zip(rhs.c).for_each(|(x, y)| *x -= y);
        TaylorJet { c }
    }
}

impl Neg for TaylorJet {
    type Output = TaylorJet;
    fn neg(self) -> TaylorJet {
        TaylorJet { c: self.c.map(|v| -v) }
    }
}

impl Mul for TaylorJet {
    type Output = TaylorJet;
    fn mul(self, rhs: TaylorJet) -> TaylorJet {
        let mut c = [0.0; N];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = (0..=k).map(|j| self.c[j] * rhs.c[k - j]).sum();
        }
        TaylorJet { c }
    }
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}
