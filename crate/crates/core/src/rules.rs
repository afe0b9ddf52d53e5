//! Midpoint, corrected midpoint, Simpson and endpoint-corrected ("modified")
//! Simpson rules, as single panels and as composite rules on uniform grids.
//!
//! The modified Simpson panel over `[a, b]` is
//!
//! ```text
//! (b-a)/30 [7 f(a) + 16 f(m) + 7 f(b)] - (b-a)^2/60 [f'(b) - f'(a)]
//! ```
//!
//! and is exact for polynomials of degree <= 5. Summed over a uniform grid the
//! interior derivative terms telescope, so the composite rule only ever
//! evaluates `f'` at `a` and `b`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::Result;
use crate::integrand::{require_order, Integrand};
use crate::interval::{Interval, UniformGrid};
use crate::sum::pairwise_sum;

/// Leading-order error coefficient of the modified Simpson rule per panel pair:
/// `R ~ h^6 / 9450 [f^(5)(b) - f^(5)(a)]`.
///
/// Note: the commonly printed coefficient `1/4725` (single panel:
/// `(b-a)^6/302400`) is off by a factor of two. For `f = x^6` on `[-1, 1]`
/// the rule gives `2/15`, the integral is `2/7`, so the error is `16/105`,
/// while `h^6 Δf^(5) / 9450 = 1440/9450 = 16/105` exactly.
pub const LEADING_ERROR_DENOM: f64 = 9450.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum RuleId {
    #[cfg_attr(feature = "serde", serde(rename = "midpoint"))]
    Midpoint,
    #[cfg_attr(feature = "serde", serde(rename = "cmidpoint"))]
    CorrectedMidpoint,
    #[cfg_attr(feature = "serde", serde(rename = "simpson"))]
    Simpson,
    #[cfg_attr(feature = "serde", serde(rename = "msimpson"))]
    ModifiedSimpson,
}

impl RuleId {
    pub fn name(self) -> &'static str {
        match self {
            RuleId::Midpoint => "midpoint",
            RuleId::CorrectedMidpoint => "cmidpoint",
            RuleId::Simpson => "simpson",
            RuleId::ModifiedSimpson => "msimpson",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleId> {
        match s {
            "midpoint" => Some(RuleId::Midpoint),
            "cmidpoint" => Some(RuleId::CorrectedMidpoint),
            "simpson" => Some(RuleId::Simpson),
            "msimpson" => Some(RuleId::ModifiedSimpson),
            _ => None,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadResult {
    pub value: f64,
    pub rule_id: RuleId,
    /// Number of panels (for the Simpson rules, panel pairs).
    pub panels: usize,
    /// Leading-order error estimate, when `f^(5)` is available.
    pub leading_error_estimate: Option<f64>,
}

/// `(b-a) f((a+b)/2)`
pub fn midpoint_panel<F: Integrand + ?Sized>(f: &F, iv: Interval) -> Result<f64> {
    Ok(iv.length() * f.eval(iv.midpoint())?)
}

/// `(b-a) f(m) + (b-a)^2/24 [f'(b) - f'(a)]`, exact for cubics.
pub fn corrected_midpoint_panel<F: Integrand + ?Sized>(f: &F, iv: Interval) -> Result<f64> {
    require_order(f, 1)?;
    let len = iv.length();
    let mid = f.eval(iv.midpoint())?;
    let dfa = f.derivative(1, iv.a())?;
    let dfb = f.derivative(1, iv.b())?;
    Ok(len * mid + len * len / 24.0 * (dfb - dfa))
}

/// `(b-a)/6 [f(a) + 4 f(m) + f(b)]`
pub fn simpson_panel<F: Integrand + ?Sized>(f: &F, iv: Interval) -> Result<f64> {
    let fa = f.eval(iv.a())?;
    let fm = f.eval(iv.midpoint())?;
    let fb = f.eval(iv.b())?;
    // (b-a)/6 == h/3 bitwise since h = (b-a)/2 is an exact halving.
    Ok(0.5 * iv.length() / 3.0 * (fa + 4.0 * fm + fb))
}

/// Endpoint-corrected Simpson panel, exact for quintics.
pub fn modified_simpson_panel<F: Integrand + ?Sized>(f: &F, iv: Interval) -> Result<f64> {
    require_order(f, 1)?;
    let fa = f.eval(iv.a())?;
    let fm = f.eval(iv.midpoint())?;
    let fb = f.eval(iv.b())?;
    let dfa = f.derivative(1, iv.a())?;
    let dfb = f.derivative(1, iv.b())?;
    let h = 0.5 * iv.length();
    Ok(combine_modified(h, 7.0 * fa + 16.0 * fm + 7.0 * fb, dfb - dfa))
}

#[inline]
fn combine_modified(h: f64, weighted: f64, dslope: f64) -> f64 {
    h / 15.0 * weighted - h * h / 15.0 * dslope
}

/// Function values at all grid nodes, in node order.
fn sample<F: Integrand + ?Sized>(f: &F, grid: &UniformGrid) -> Result<Vec<f64>> {
    grid.nodes().map(|x| f.eval(x)).collect()
}

/// Composite Simpson rule `h/3 Σ_{odd j} [f_{j-1} + 4 f_j + f_{j+1}]`.
pub fn composite_simpson<F: Integrand + ?Sized>(f: &F, grid: UniformGrid) -> Result<QuadResult> {
    let ys = sample(f, &grid)?;
    let panels: Vec<f64> = ys
        .windows(3)
        .step_by(2)
        .map(|w| w[0] + 4.0 * w[1] + w[2])
        .collect();
    let h = grid.h();
    Ok(QuadResult {
        value: h / 3.0 * pairwise_sum(&panels),
        rule_id: RuleId::Simpson,
        panels: grid.n_pairs(),
        leading_error_estimate: None,
    })
}

/// Composite modified Simpson rule
/// `h/15 Σ_{odd j} [7 f_{j-1} + 16 f_j + 7 f_{j+1}] - h^2/15 [f'(b) - f'(a)]`.
///
/// `f'` is evaluated at the two endpoints only. When the integrand provides
/// `f^(5)`, the result carries the leading-order error estimate.
pub fn composite_modified_simpson<F: Integrand + ?Sized>(
    f: &F,
    grid: UniformGrid,
) -> Result<QuadResult> {
    require_order(f, 1)?;
    let ys = sample(f, &grid)?;
    let panels: Vec<f64> = ys
        .windows(3)
        .step_by(2)
        .map(|w| 7.0 * w[0] + 16.0 * w[1] + 7.0 * w[2])
        .collect();
    let iv = grid.interval();
    let dfa = f.derivative(1, iv.a())?;
    let dfb = f.derivative(1, iv.b())?;
    let value = combine_modified(grid.h(), pairwise_sum(&panels), dfb - dfa);
    let leading_error_estimate = if f.max_order() >= 5 {
        Some(leading_error_estimate(f, grid)?)
    } else {
        None
    };
    Ok(QuadResult {
        value,
        rule_id: RuleId::ModifiedSimpson,
        panels: grid.n_pairs(),
        leading_error_estimate,
    })
}

/// `h^6/9450 [f^(5)(b) - f^(5)(a)]`, the leading term of
/// `∫f - composite_modified_simpson(f)`.
pub fn leading_error_estimate<F: Integrand + ?Sized>(f: &F, grid: UniformGrid) -> Result<f64> {
    require_order(f, 5)?;
    let iv = grid.interval();
    let d5a = f.derivative(5, iv.a())?;
    let d5b = f.derivative(5, iv.b())?;
    let h = grid.h();
    Ok(libm::pow(h, 6.0) / LEADING_ERROR_DENOM * (d5b - d5a))
}

/// Composite form of any of the four rules. The midpoint rules are single-panel
/// and ignore the grid's pair count.
pub fn integrate<F: Integrand + ?Sized>(
    rule: RuleId,
    f: &F,
    grid: UniformGrid,
) -> Result<QuadResult> {
    match rule {
        RuleId::Simpson => composite_simpson(f, grid),
        RuleId::ModifiedSimpson => composite_modified_simpson(f, grid),
        RuleId::Midpoint | RuleId::CorrectedMidpoint => {
            let iv = grid.interval();
            let value = if rule == RuleId::Midpoint {
                midpoint_panel(f, iv)?
            } else {
                corrected_midpoint_panel(f, iv)?
            };
            Ok(QuadResult { value, rule_id: rule, panels: 1, leading_error_estimate: None })
        }
    }
}
