//! Error bounds for the modified Simpson rule and the classical comparisons.
//!
//! For `γ_k <= f^(k) <= Γ_k` and `S_{k-1}` the secant slope of `f^(k-1)`
//! (the mean of `f^(k)`), the remainder on the unit interval satisfies
//!
//! ```text
//! |R_k| <= (Γ_k - γ_k)/2 · C_k
//! |R_k| <= (S_{k-1} - γ_k) · B_k
//! |R_k| <= (Γ_k - S_{k-1}) · B_k
//! ```
//!
//! Panels of width `2h` scale these by `D_k h^{k+1}` / `E_k h^{k+1}`, and the
//! composite rule over `[a, b]` by `D_k h^k (b-a)/2` / `E_k h^k (b-a)/2`.

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::integrand::{require_order, Integrand};
use crate::interval::Interval;
use crate::kernels::{scaled_constants, KernelId};

/// Where a derivative range came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Provenance {
    UserSupplied,
    /// Sampled numerically; not a rigorous enclosure.
    SampledEstimate,
}

/// Bounds `gamma <= f^(k) <= upper` on some interval.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DerivativeRange {
    pub k: usize,
    pub gamma: f64,
    pub upper: f64,
    pub provenance: Provenance,
}

impl DerivativeRange {
    pub fn new(k: usize, gamma: f64, upper: f64, provenance: Provenance) -> Result<Self> {
        if !(gamma.is_finite() && upper.is_finite()) || gamma > upper {
            return Err(Error::InvalidRange { gamma, big_gamma: upper });
        }
        Ok(DerivativeRange { k, gamma, upper, provenance })
    }

    pub fn user(k: usize, gamma: f64, upper: f64) -> Result<Self> {
        Self::new(k, gamma, upper, Provenance::UserSupplied)
    }

    pub fn rigorous(&self) -> bool {
        self.provenance == Provenance::UserSupplied
    }

    /// `max(|γ|, |Γ|)`, the sup-norm stand-in for the classical Peano bound.
    pub fn sup_abs(&self) -> f64 {
        libm::fmax(libm::fabs(self.gamma), libm::fabs(self.upper))
    }
}

/// Secant slope of `f^(k)` over an interval: `(f^(k)(b) - f^(k)(a))/(b - a)`.
/// On the unit interval this is just the difference of endpoint values.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SecantSlope {
    pub k: usize,
    pub value: f64,
}

impl SecantSlope {
    pub fn new(k: usize, value: f64) -> Self {
        SecantSlope { k, value }
    }

    pub fn over<F: Integrand + ?Sized>(f: &F, k: usize, iv: Interval) -> Result<Self> {
        require_order(f, k)?;
        let da = f.derivative(k, iv.a())?;
        let db = f.derivative(k, iv.b())?;
        Ok(SecantSlope { k, value: (db - da) / iv.length() })
    }
}

/// The bound family for one derivative order.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    pub k: usize,
    /// `(Γ-γ)/2 · ∫|T|`
    pub range_bound: f64,
    /// `(S-γ) · max|T|`-type bound
    pub lower_secant_bound: f64,
    /// `(Γ-S) · max|T|`-type bound
    pub upper_secant_bound: f64,
    /// `‖f^(k)‖ · ∫|T|` with `‖f^(k)‖` taken as `max(|γ|, |Γ|)`
    pub peano_bound: f64,
    pub best: f64,
    pub rigorous: bool,
}

const SECANT_RTOL: f64 = 1e-10;

fn validate(k: usize, range: &DerivativeRange, s: &SecantSlope) -> Result<KernelId> {
    if !(2..=5).contains(&k) {
        return Err(Error::Unsupported { what: "range/secant bound family", k });
    }
    if range.k != k {
        return Err(Error::OrderMismatch { expected: k, found: range.k });
    }
    if s.k + 1 != k {
        return Err(Error::OrderMismatch { expected: k - 1, found: s.k });
    }
    let scale = libm::fmax(range.sup_abs(), libm::fabs(s.value));
    let slack = SECANT_RTOL * scale;
    if !s.value.is_finite() || s.value < range.gamma - slack || s.value > range.upper + slack {
        return Err(Error::InconsistentSecant {
            secant: s.value,
            gamma: range.gamma,
            big_gamma: range.upper,
        });
    }
    KernelId::new(k)
}

fn report(
    k: usize,
    range: &DerivativeRange,
    s: f64,
    l1: f64,
    sup: f64,
) -> BoundReport {
    let range_bound = (range.upper - range.gamma) / 2.0 * l1;
    // S is clamped into [γ, Γ]; validation only lets it stray by rounding.
    let lower_secant_bound = libm::fmax(s - range.gamma, 0.0) * sup;
    let upper_secant_bound = libm::fmax(range.upper - s, 0.0) * sup;
    let peano_bound = range.sup_abs() * l1;
    let best = range_bound
        .min(lower_secant_bound)
        .min(upper_secant_bound)
        .min(peano_bound);
    BoundReport {
        k,
        range_bound,
        lower_secant_bound,
        upper_secant_bound,
        peano_bound,
        best,
        rigorous: range.rigorous(),
    }
}

/// Bounds on `R_k` for the rule on `[0, 1]`, `k = 2..=5`.
pub fn unit_bounds(k: usize, range: &DerivativeRange, s: &SecantSlope) -> Result<BoundReport> {
    let id = validate(k, range, s)?;
    let c = scaled_constants(id);
    let b = c.b.ok_or(Error::Unsupported { what: "max |T_k| constant", k })?;
    Ok(report(k, range, s.value, c.c, b))
}

/// Bounds on the error of one panel `[x_{j-1}, x_{j+1}]` of half-width `h`;
/// `s` is the divided difference of `f^(k-1)` over that panel.
pub fn panel_bounds(
    k: usize,
    range: &DerivativeRange,
    s: &SecantSlope,
    h: f64,
) -> Result<BoundReport> {
    check_positive("h", h)?;
    composite_bounds(k, range, s, h, 2.0 * h)
}

/// Bounds on the composite rule error over `[a, b]` with `length = b - a = 2 n h`;
/// `s` is the divided difference of `f^(k-1)` over the whole of `[a, b]`.
pub fn composite_bounds(
    k: usize,
    range: &DerivativeRange,
    s: &SecantSlope,
    h: f64,
    length: f64,
) -> Result<BoundReport> {
    let id = validate(k, range, s)?;
    check_positive("h", h)?;
    check_nonnegative("length", length)?;
    if length > 0.0 {
        check_pairs(h, length)?;
    }
    let c = scaled_constants(id);
    let e = c.e.ok_or(Error::Unsupported { what: "max |T_k| constant", k })?;
    // sum over n = length/(2h) panels of D h^{k+1} is D h^k length / 2
    let per = libm::pow(h, k as f64) * length / 2.0;
    Ok(report(k, range, s.value, c.d * per, e * per))
}

/// Single-panel bound for `k = 6`: `D_6 ‖f^(6)‖ h^7`.
pub fn panel_bound_k6(sup_f6: f64, h: f64) -> Result<f64> {
    check_nonnegative("sup |f^(6)|", sup_f6)?;
    composite_bound_k6(sup_f6, h, 2.0 * h)
}

/// Composite bound for `k = 6`: `D_6/2 ‖f^(6)‖ h^6 (b-a)`.
pub fn composite_bound_k6(sup_f6: f64, h: f64, length: f64) -> Result<f64> {
    check_nonnegative("sup |f^(6)|", sup_f6)?;
    check_positive("h", h)?;
    check_nonnegative("length", length)?;
    Ok(d6() / 2.0 * sup_f6 * libm::pow(h, 6.0) * length)
}

fn d6() -> f64 {
    scaled_constants(KernelId::new(6).expect("6 is a kernel order")).d
}

/// Bounds for the midpoint rule and its endpoint-corrected form.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MidpointBounds {
    /// `(b-a)^3 M_2 / 24`
    pub classic: f64,
    /// `(b-a)^3 M_2 / (18 √3)`
    pub corrected: f64,
    /// `7 M_4 (b-a)^5 / 5760`
    pub corrected_h4: f64,
}

pub fn midpoint_bounds(m2: f64, m4: f64, length: f64) -> Result<MidpointBounds> {
    check_nonnegative("M2", m2)?;
    check_nonnegative("M4", m4)?;
    check_nonnegative("length", length)?;
    let l3 = length * length * length;
    Ok(MidpointBounds {
        classic: l3 * m2 / 24.0,
        corrected: l3 * m2 / (18.0 * libm::sqrt(3.0)),
        corrected_h4: 7.0 * m4 * l3 * length * length / 5760.0,
    })
}

/// Classical composite Simpson bound `‖f^(4)‖ h^4 (b-a) / 180`.
pub fn simpson_classic_bound(sup_f4: f64, h: f64, length: f64) -> Result<f64> {
    check_nonnegative("sup |f^(4)|", sup_f4)?;
    check_positive("h", h)?;
    check_nonnegative("length", length)?;
    Ok(sup_f4 * libm::pow(h, 4.0) * length / 180.0)
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument { name, value: v })
    }
}

fn check_nonnegative(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument { name, value: v })
    }
}

fn check_pairs(h: f64, length: f64) -> Result<()> {
    let n = length / (2.0 * h);
    let rn = libm::round(n);
    if rn < 1.0 || libm::fabs(n - rn) > 1e-9 * rn {
        return Err(Error::InvalidArgument { name: "length/(2h) (must be a positive integer)", value: n });
    }
    Ok(())
}

/// Settings for [`estimate_derivative_range`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeEstimator {
    pub n_samples: usize,
    /// Bracket inflation about its midpoint; `1.0` disables it.
    pub safety: f64,
}

impl Default for RangeEstimator {
    fn default() -> Self {
        RangeEstimator { n_samples: 64, safety: 1.05 }
    }
}

impl RangeEstimator {
    /// Estimate `[inf, sup]` of `f^(k)` over `iv`. The result is flagged as a
    /// sampled estimate: sampling can miss narrow extrema.
    pub fn estimate<F: Integrand + ?Sized>(
        &self,
        f: &F,
        k: usize,
        iv: Interval,
    ) -> Result<DerivativeRange> {
        if self.n_samples < 8 {
            return Err(Error::InvalidArgument { name: "sample count", value: self.n_samples as f64 });
        }
        if !(self.safety.is_finite() && self.safety >= 1.0) {
            return Err(Error::InvalidArgument { name: "safety factor", value: self.safety });
        }
        require_order(f, k)?;
        let n = self.n_samples;
        let mid = iv.midpoint();
        let half = 0.5 * iv.length();
        // Chebyshev–Lobatto points, ascending, endpoints included exactly.
        let xs: alloc::vec::Vec<f64> = (0..n)
            .map(|i| match i {
                0 => iv.a(),
                _ if i == n - 1 => iv.b(),
                _ => mid - half * libm::cos(PI * i as f64 / (n - 1) as f64),
            })
            .collect();
        let ys = xs
            .iter()
            .map(|&x| f.derivative(k, x))
            .collect::<Result<alloc::vec::Vec<f64>>>()?;
        let (imin, imax) = ys.iter().enumerate().fold((0, 0), |(lo, hi), (i, &y)| {
            (if y < ys[lo] { i } else { lo }, if y > ys[hi] { i } else { hi })
        });
        let bracket = |i: usize| (xs[i.saturating_sub(1)], xs[(i + 1).min(n - 1)]);
        let (l, r) = bracket(imin);
        let lo = ys[imin].min(golden_min(|x| f.derivative(k, x), l, r)?);
        let (l, r) = bracket(imax);
        let hi = ys[imax].max(-golden_min(|x| f.derivative(k, x).map(|v| -v), l, r)?);
        let c = 0.5 * (lo + hi);
        let w = 0.5 * (hi - lo) * self.safety;
        DerivativeRange::new(k, c - w, c + w, Provenance::SampledEstimate)
    }
}

/// [`RangeEstimator::estimate`] with the given sample count and the default
/// safety factor.
pub fn estimate_derivative_range<F: Integrand + ?Sized>(
    f: &F,
    k: usize,
    iv: Interval,
    n_samples: usize,
) -> Result<DerivativeRange> {
    RangeEstimator { n_samples, ..RangeEstimator::default() }.estimate(f, k, iv)
}

/// Minimum value found by golden-section search on `[a, b]`.
fn golden_min<G: Fn(f64) -> Result<f64>>(g: G, mut a: f64, mut b: f64) -> Result<f64> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let tol = 1e-12 * libm::fmax(1.0, libm::fmax(libm::fabs(a), libm::fabs(b)));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut gc = g(c)?;
    let mut gd = g(d)?;
    let mut best = gc.min(gd);
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c)?;
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d)?;
        }
        best = best.min(gc).min(gd);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrand::DerivFn;
    use core::f64::consts::E;

    fn exp_fn() -> DerivFn<impl Fn(usize, f64) -> f64> {
        DerivFn::new(6, |_, x| libm::exp(x))
    }

    fn sin_fn() -> DerivFn<impl Fn(usize, f64) -> f64> {
        DerivFn::new(6, |k, x| match k % 4 {
            0 => libm::sin(x),
            1 => libm::cos(x),
            2 => -libm::sin(x),
            _ => -libm::cos(x),
        })
    }

    #[test]
    fn constant_derivative_gives_zero_bounds() {
        let r = DerivativeRange::user(4, 3.0, 3.0).unwrap();
        let rep = unit_bounds(4, &r, &SecantSlope::new(3, 3.0)).unwrap();
        assert_eq!(rep.range_bound, 0.0);
        assert_eq!(rep.lower_secant_bound, 0.0);
        assert_eq!(rep.upper_secant_bound, 0.0);
        assert_eq!(rep.best, 0.0);
        assert!(rep.rigorous);
    }

    #[test]
    fn exp_k2_unit() {
        let r = DerivativeRange::user(2, 1.0, E).unwrap();
        let rep = unit_bounds(2, &r, &SecantSlope::new(1, E - 1.0)).unwrap();
        let c2 = 19.0 * libm::sqrt(19.0) / 10125.0;
        assert!((rep.range_bound - (E - 1.0) / 2.0 * c2).abs() < 1e-17);
        assert!((rep.range_bound - 7.028e-3).abs() < 1e-6);
        assert!(rep.best <= rep.range_bound);
        assert!(rep.range_bound <= rep.peano_bound);
    }

    #[test]
    fn sin_k5_unit() {
        let r = DerivativeRange::user(5, libm::cos(1.0), 1.0).unwrap();
        let rep = unit_bounds(5, &r, &SecantSlope::new(4, libm::sin(1.0))).unwrap();
        assert!((rep.range_bound - (1.0 - libm::cos(1.0)) / 2.0 / 115200.0).abs() < 1e-20);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(DerivativeRange::user(2, 2.0, 1.0), Err(Error::InvalidRange { .. })));
        let r = DerivativeRange::user(2, 1.0, 2.0).unwrap();
        assert!(matches!(
            unit_bounds(2, &r, &SecantSlope::new(1, 5.0)),
            Err(Error::InconsistentSecant { .. })
        ));
        assert!(matches!(
            unit_bounds(3, &r, &SecantSlope::new(2, 1.5)),
            Err(Error::OrderMismatch { .. })
        ));
        assert!(matches!(
            unit_bounds(2, &r, &SecantSlope::new(0, 1.5)),
            Err(Error::OrderMismatch { .. })
        ));
        let r6 = DerivativeRange::user(6, 1.0, 2.0).unwrap();
        assert!(matches!(
            unit_bounds(6, &r6, &SecantSlope::new(5, 1.5)),
            Err(Error::Unsupported { .. })
        ));
        assert!(panel_bounds(2, &r, &SecantSlope::new(1, 1.5), 0.0).is_err());
        assert!(composite_bounds(2, &r, &SecantSlope::new(1, 1.5), 0.3, 1.0).is_err());
        assert!(panel_bound_k6(-1.0, 1.0).is_err());
        assert!(midpoint_bounds(-1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn unit_panel_composite_agree() {
        let r = DerivativeRange::user(4, -0.7, 1.3).unwrap();
        let s = SecantSlope::new(3, 0.2);
        let unit = unit_bounds(4, &r, &s).unwrap();
        let panel = panel_bounds(4, &r, &s, 0.5).unwrap();
        let comp = composite_bounds(4, &r, &s, 0.5, 1.0).unwrap();
        assert_eq!(unit, panel);
        assert_eq!(panel, comp);
        let c4 = 1.0 / 14580.0;
        assert_eq!(panel.range_bound, 1.0 * c4);
    }

    #[test]
    fn panel_exp_k2() {
        let r = DerivativeRange::user(2, libm::exp(-1.0), E).unwrap();
        let s = SecantSlope::over(&exp_fn(), 1, Interval::new(-1.0, 1.0).unwrap()).unwrap();
        let rep = panel_bounds(2, &r, &s, 1.0).unwrap();
        let c2 = 19.0 * libm::sqrt(19.0) / 10125.0;
        assert!((rep.range_bound - (E - 1.0 / E) / 2.0 * 8.0 * c2).abs() < 1e-15);
        assert!(rep.best >= 2.206e-4);
    }

    #[test]
    fn composite_k4_coefficient() {
        let (g, u) = (-0.5, 2.5);
        let r = DerivativeRange::user(4, g, u).unwrap();
        let rep = composite_bounds(4, &r, &SecantSlope::new(3, 1.0), 1.0, 2.0).unwrap();
        // (Γ-γ)/4 D_4 h^4 (b-a) = 2(Γ-γ)/3645 h^4 (b-a)
        assert!((rep.range_bound - 2.0 * (u - g) / 3645.0 * 2.0).abs() < 1e-17);
    }

    #[test]
    fn k6_bounds() {
        let b = panel_bound_k6(720.0, 1.0).unwrap();
        assert!((b - 720.0 / 4725.0).abs() < 1e-15);
        assert!(b >= 16.0 / 105.0 - 1e-15);
        assert_eq!(panel_bound_k6(0.0, 1.0).unwrap(), 0.0);
        assert!((panel_bound_k6(E, 1.0).unwrap() - 5.752e-4).abs() < 1e-7);
        assert!((composite_bound_k6(1.0, 1.0, 2.0).unwrap() - 2.0 / 9450.0).abs() < 1e-18);
        assert_eq!(composite_bound_k6(0.0, 0.1, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn midpoint_and_simpson() {
        let m = midpoint_bounds(1.0, 1.0, 1.0).unwrap();
        assert!((m.classic - 0.041_666_666_666_666_664).abs() < 1e-17);
        assert!((m.corrected - 0.032_075).abs() < 1e-6);
        assert!(m.corrected < m.classic);
        assert!((m.corrected_h4 - 7.0 / 5760.0).abs() < 1e-18);
        let z = midpoint_bounds(0.0, 0.0, 3.0).unwrap();
        assert_eq!((z.classic, z.corrected, z.corrected_h4), (0.0, 0.0, 0.0));
        assert!((simpson_classic_bound(1.0, 1.0, 2.0).unwrap() - 1.0 / 90.0).abs() < 1e-18);
        assert_eq!(simpson_classic_bound(0.0, 1.0, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn zero_length_gives_zero() {
        let r = DerivativeRange::user(3, -1.0, 1.0).unwrap();
        let rep = composite_bounds(3, &r, &SecantSlope::new(2, 0.0), 0.1, 0.0).unwrap();
        assert_eq!(rep.best, 0.0);
        assert_eq!(rep.peano_bound, 0.0);
    }

    #[test]
    fn estimator_examples() {
        let r = estimate_derivative_range(&exp_fn(), 2, Interval::unit(), 32).unwrap();
        assert!(r.gamma <= 1.0 && r.upper >= E);
        assert!(!r.rigorous());
        let half = 0.5 * (E - 1.0) * 1.05;
        assert!((r.upper - (0.5 * (1.0 + E) + half)).abs() < 1e-12);

        let c = DerivFn::new(6, |k, _| if k == 0 { 4.0 } else { 0.0 });
        let r = estimate_derivative_range(&c, 3, Interval::unit(), 8).unwrap();
        assert_eq!((r.gamma, r.upper), (0.0, 0.0));

        let r = estimate_derivative_range(&sin_fn(), 4, Interval::new(0.0, PI).unwrap(), 16)
            .unwrap();
        assert!(r.gamma <= 0.0 && r.upper >= 1.0);
        assert!(estimate_derivative_range(&sin_fn(), 4, Interval::unit(), 4).is_err());
    }

    #[test]
    fn estimator_polishes_interior_extremum() {
        // f'' = sin(7x) peaks at x = π/14, between coarse samples
        let f = DerivFn::new(2, |k, x| match k {
            0 => -libm::sin(7.0 * x) / 49.0,
            1 => -libm::cos(7.0 * x) / 7.0,
            _ => libm::sin(7.0 * x),
        });
        let est = RangeEstimator { n_samples: 8, safety: 1.0 };
        let r = est.estimate(&f, 2, Interval::unit()).unwrap();
        assert!((r.upper - 1.0).abs() < 1e-12);
        assert!((r.gamma + 1.0).abs() < 1e-12);
    }
}
