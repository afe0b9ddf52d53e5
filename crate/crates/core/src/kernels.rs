//! Peano kernels `T_k`, `k = 2..=6`, of the modified Simpson rule on `[0, 1]`,
//!
//! ```text
//! ∫_0^1 f = [7 f(0) + 16 f(1/2) + 7 f(1)]/30 - [f'(1) - f'(0)]/60 + R_k(f),
//! R_k(f) = ∫_0^1 T_k(x) f^(k)(x) dx,
//! ```
//!
//! with `T_k = (-1)^k P_k` on `[0, 1/2)` and `(-1)^k Q_k` on `[1/2, 1]`.
//! Both pieces are stored as exact rationals in ascending-power form and
//! converted to `f64` once. `Q_k(x) = (-1)^k P_k(1 - x)` for every `k`.
//!
//! The cubic right piece is `(x-1)(x-1/2)(x-4/5)/6`; a root of `4/25`, as it
//! is sometimes printed, does not give a Peano kernel of this rule.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::poly::horner;
use crate::sum::pairwise_sum;

/// Order of a Peano kernel, `2..=6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KernelId(u8);

impl KernelId {
    pub const MIN: usize = 2;
    pub const MAX: usize = 6;

    pub fn new(k: usize) -> Result<Self> {
        if (Self::MIN..=Self::MAX).contains(&k) {
            Ok(KernelId(k as u8))
        } else {
            Err(Error::InvalidKernel { k })
        }
    }

    #[inline]
    pub fn k(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = KernelId> {
        (Self::MIN..=Self::MAX).map(|k| KernelId(k as u8))
    }

    /// `(-1)^k`
    #[inline]
    pub fn sign(self) -> f64 {
        if self.0 & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

type Rat = (i64, i64);

/// Ascending-power `(numerator, denominator)` coefficients of one kernel piece.
pub type RationalCoeffs = &'static [Rat];

// Ascending-power coefficients of P_k and Q_k (without the (-1)^k factor).
const LEFT: [&[Rat]; 5] = [
    &[(1, 60), (-7, 30), (1, 2)],
    &[(0, 1), (1, 60), (-7, 60), (1, 6)],
    &[(0, 1), (0, 1), (1, 120), (-7, 180), (1, 24)],
    &[(0, 1), (0, 1), (0, 1), (1, 360), (-7, 720), (1, 120)],
    &[(0, 1), (0, 1), (0, 1), (0, 1), (1, 1440), (-7, 3600), (1, 720)],
];

const RIGHT: [&[Rat]; 5] = [
    &[(17, 60), (-23, 30), (1, 2)],
    &[(-1, 15), (17, 60), (-23, 60), (1, 6)],
    &[(1, 90), (-1, 15), (17, 120), (-23, 180), (1, 24)],
    &[(-1, 720), (1, 90), (-1, 30), (17, 360), (-23, 720), (1, 120)],
    &[(1, 7200), (-1, 720), (1, 180), (-1, 90), (17, 1440), (-23, 3600), (1, 720)],
];

const fn to_f64(r: Rat) -> f64 {
    r.0 as f64 / r.1 as f64
}

/// A piecewise-polynomial Peano kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct PeanoKernel {
    id: KernelId,
    left: [f64; 7],
    right: [f64; 7],
}

impl PeanoKernel {
    pub fn new(id: KernelId) -> Self {
        let mut left = [0.0; 7];
        let mut right = [0.0; 7];
        let i = id.k() - KernelId::MIN;
        for (dst, &c) in left.iter_mut().zip(LEFT[i]) {
            *dst = to_f64(c);
        }
        for (dst, &c) in right.iter_mut().zip(RIGHT[i]) {
            *dst = to_f64(c);
        }
        PeanoKernel { id, left, right }
    }

    pub fn id(&self) -> KernelId {
        self.id
    }

    /// Coefficients of `P_k`, ascending powers, length `k + 1`.
    pub fn left_poly(&self) -> &[f64] {
        &self.left[..=self.id.k()]
    }

    /// Coefficients of `Q_k`, ascending powers, length `k + 1`.
    pub fn right_poly(&self) -> &[f64] {
        &self.right[..=self.id.k()]
    }

    /// Exact rational coefficients `(numerator, denominator)` of `P_k` and `Q_k`.
    pub fn rational_coeffs(&self) -> (RationalCoeffs, RationalCoeffs) {
        let i = self.id.k() - KernelId::MIN;
        (LEFT[i], RIGHT[i])
    }

    /// `T_k(x)` for `x ∈ [0, 1]`; the value at `1/2` comes from `Q_k`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain { x, lo: 0.0, hi: 1.0 });
        }
        Ok(self.eval_unchecked(x))
    }

    /// The right piece is evaluated as `Q_k(x) = (-1)^k P_k(1 - x)`: `1 - x` is
    /// exact for `x >= 1/2`, and Horner on `Q_k` near `x = 1` cancels badly.
    #[inline]
    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        let p = horner(self.left_poly(), if x < 0.5 { x } else { 1.0 - x });
        let mirror = if x >= 0.5 && self.id.k() & 1 == 1 { -1.0 } else { 1.0 };
        self.id.sign() * mirror * p
    }

    /// `∫_0^1 T_k(x) x^j dx`, integrating each polynomial piece exactly.
    pub fn moment(&self, j: usize) -> f64 {
        let mut terms = [0.0f64; 14];
        let half_pow = |p: usize| libm::pow(0.5, p as f64);
        for (i, (&p, &q)) in self.left_poly().iter().zip(self.right_poly()).enumerate() {
            let e = i + j + 1;
            // ∫_0^{1/2} x^{e-1} = 2^{-e}/e,  ∫_{1/2}^1 x^{e-1} = (1 - 2^{-e})/e
            terms[2 * i] = p * half_pow(e) / e as f64;
            terms[2 * i + 1] = q * (1.0 - half_pow(e)) / e as f64;
        }
        self.id.sign() * pairwise_sum(&terms[..2 * (self.id.k() + 1)])
    }
}

/// `a + b √19` with rational `a`, `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedForm {
    pub rational: (i64, i64),
    pub sqrt19: (i64, i64),
}

impl ClosedForm {
    const fn rational(p: i64, q: i64) -> Self {
        ClosedForm { rational: (p, q), sqrt19: (0, 1) }
    }

    pub fn value(&self) -> f64 {
        let r = to_f64(self.rational);
        if self.sqrt19.0 == 0 {
            r
        } else {
            r + to_f64(self.sqrt19) * libm::sqrt(19.0)
        }
    }
}

/// `C_k = ∫_0^1 |T_k|`
pub fn abs_integral_closed_form(k: KernelId) -> ClosedForm {
    match k.k() {
        2 => ClosedForm { rational: (0, 1), sqrt19: (19, 10125) },
        3 => ClosedForm::rational(253, 360000),
        4 => ClosedForm::rational(1, 14580),
        5 => ClosedForm::rational(1, 115200),
        _ => ClosedForm::rational(1, 604800),
    }
}

/// `B_k = max_[0,1] |T_k|`, defined for `k <= 5`.
pub fn max_abs_closed_form(k: KernelId) -> Option<ClosedForm> {
    match k.k() {
        2 => Some(ClosedForm::rational(1, 40)),
        3 => Some(ClosedForm { rational: (7, 20250), sqrt19: (19, 81000) }),
        4 => Some(ClosedForm::rational(1, 5760)),
        5 => Some(ClosedForm::rational(1, 58320)),
        _ => None,
    }
}

/// Sharp constants of `T_k` and their panel-scaled counterparts
/// `D_k = 2^{k+1} C_k`, `E_k = 2^{k+1} B_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KernelConstants {
    pub k: usize,
    pub c: f64,
    pub b: Option<f64>,
    pub d: f64,
    pub e: Option<f64>,
}

/// `T_k(x)` on `[0, 1]`.
pub fn kernel_eval(k: KernelId, x: f64) -> Result<f64> {
    PeanoKernel::new(k).eval(x)
}

/// Kernel of the rule applied to `[a, b]`: `(b-a)^k T_k((t-a)/(b-a))`, so that
/// the panel error is `∫_a^b T̃_k(t) f^(k)(t) dt`.
pub fn kernel_eval_scaled(k: KernelId, t: f64, iv: Interval) -> Result<f64> {
    if !iv.contains(t) {
        return Err(Error::Domain { x: t, lo: iv.a(), hi: iv.b() });
    }
    let len = iv.length();
    let x = ((t - iv.a()) / len).clamp(0.0, 1.0);
    Ok(libm::pow(len, k.k() as f64) * PeanoKernel::new(k).eval_unchecked(x))
}

/// `C_k`
pub fn kernel_abs_integral(k: KernelId) -> f64 {
    abs_integral_closed_form(k).value()
}

/// `B_k`; not available for `k = 6`.
pub fn kernel_max_abs(k: KernelId) -> Result<f64> {
    max_abs_closed_form(k)
        .map(|c| c.value())
        .ok_or(Error::Unsupported { what: "max |T_k| constant", k: k.k() })
}

/// `∫_0^1 T_k(x) x^j dx`
pub fn kernel_moment(k: KernelId, j: usize) -> f64 {
    PeanoKernel::new(k).moment(j)
}

/// `2^{k+1}`
#[inline]
pub fn panel_scale(k: KernelId) -> f64 {
    (1u64 << (k.k() + 1)) as f64
}

pub fn scaled_constants(k: KernelId) -> KernelConstants {
    let s = panel_scale(k);
    let c = kernel_abs_integral(k);
    let b = kernel_max_abs(k).ok();
    KernelConstants { k: k.k(), c, b, d: s * c, e: b.map(|b| s * b) }
}
