//! Reference integrals and convergence studies.
//!
//! The oracle is a globally adaptive Gauss–Kronrod (10/21-point) bisection
//! scheme, a different algorithm family from the Newton–Cotes rules it checks.
//! The error estimate of a segment is `|K21 - G10|`, which for smooth
//! integrands grossly overstates the error of the Kronrod value returned.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::integrand::Integrand;
use crate::interval::{Interval, UniformGrid};
use crate::rules::{integrate, RuleId};
use crate::sum::pairwise_sum;

/// Smallest accepted tolerance for [`reference_integral`].
pub const MIN_TOL: f64 = 1e-14;
/// Tolerance used for the reference value of convergence studies.
pub const STUDY_TOL: f64 = 1e-13;
/// Rows with errors at or below this floor are excluded from order fits.
pub const FIT_FLOOR: f64 = 1e-13;
/// Rows with errors above this ceiling are treated as pre-asymptotic.
pub const FIT_CEILING: f64 = 1e-2;

const DEFAULT_MAX_SUBDIVISIONS: usize = 2000;

// Abscissae of the 21-point Kronrod rule; odd indices are the 10-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_707_890_855,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

fn gk21<G: Fn(f64) -> Result<f64>>(g: &G, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = g(center)?;
    let mut kronrod = [0.0f64; 11];
    let mut gauss = [0.0f64; 5];
    kronrod[10] = WGK[10] * fc;
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = g(center - dx)? + g(center + dx)?;
        kronrod[j] = WGK[j] * pair;
        if j % 2 == 1 {
            gauss[j / 2] = WG[j / 2] * pair;
        }
    }
    let k = pairwise_sum(&kronrod) * half;
    let gs = pairwise_sum(&gauss) * half;
    Ok(Segment { a, b, value: k, err: libm::fabs(k - gs) })
}

/// Outcome of an adaptive reference integration.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReferenceResult {
    pub value: f64,
    pub est_abs_error: f64,
    pub subdivisions: usize,
}

/// Adaptive integration of an arbitrary closure; see [`reference_integral`].
pub fn adaptive_integral<G: Fn(f64) -> Result<f64>>(
    g: G,
    a: f64,
    b: f64,
    tol: f64,
    max_subdivisions: usize,
) -> Result<ReferenceResult> {
    if !(tol.is_finite() && tol >= MIN_TOL) {
        return Err(Error::InvalidArgument { name: "tolerance", value: tol });
    }
    let iv = Interval::new(a, b)?;
    let mut segs: Vec<Segment> = alloc::vec![gk21(&g, iv.a(), iv.b())?];
    let mut subdivisions = 0;
    loop {
        let total = totals(&mut segs);
        if total.est_abs_error <= tol {
            return Ok(ReferenceResult { subdivisions, ..total });
        }
        let worst = segs
            .iter()
            .enumerate()
            .fold(0, |best, (i, s)| if s.err > segs[best].err { i } else { best });
        let Segment { a, b, .. } = segs[worst];
        let mid = 0.5 * (a + b);
        if subdivisions >= max_subdivisions || !(a < mid && mid < b) {
            return Err(Error::Convergence {
                best: total.value,
                est_abs_error: total.est_abs_error,
                subdivisions,
            });
        }
        segs[worst] = gk21(&g, a, mid)?;
        segs.push(gk21(&g, mid, b)?);
        subdivisions += 1;
    }
}

fn totals(segs: &mut [Segment]) -> ReferenceResult {
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let values: Vec<f64> = segs.iter().map(|s| s.value).collect();
    let errs: Vec<f64> = segs.iter().map(|s| s.err).collect();
    ReferenceResult {
        value: pairwise_sum(&values),
        est_abs_error: pairwise_sum(&errs),
        subdivisions: 0,
    }
}

/// High-accuracy `∫_a^b f` with estimated absolute error at most `tol`.
pub fn reference_integral<F: Integrand + ?Sized>(
    f: &F,
    iv: Interval,
    tol: f64,
) -> Result<ReferenceResult> {
    adaptive_integral(|x| f.eval(x), iv.a(), iv.b(), tol, DEFAULT_MAX_SUBDIVISIONS)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvergenceRow {
    pub n_pairs: usize,
    pub h: f64,
    pub approx: f64,
    pub abs_error: f64,
}

/// Errors of one rule over a sequence of grids, with a fitted order.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvergenceTable {
    pub rule: RuleId,
    pub reference: f64,
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `ln(error)` against `ln(h)` over `fit_window`;
    /// `None` when fewer than two rows qualify.
    pub fitted_order: Option<f64>,
    /// Indices of rows with `FIT_FLOOR < error <= FIT_CEILING`.
    pub fit_window: Vec<usize>,
}

/// Least-squares slope through `(ln h, ln err)` for rows inside the fit window.
pub fn fit_order(rows: &[ConvergenceRow]) -> (Option<f64>, Vec<usize>) {
    let window: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.abs_error > FIT_FLOOR && r.abs_error <= FIT_CEILING)
        .map(|(i, _)| i)
        .collect();
    if window.len() < 2 {
        return (None, window);
    }
    let m = window.len() as f64;
    let xs: Vec<f64> = window.iter().map(|&i| libm::log(rows[i].h)).collect();
    let ys: Vec<f64> = window.iter().map(|&i| libm::log(rows[i].abs_error)).collect();
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    (Some(sxy / sxx), window)
}

fn check_n_list(n_list: &[usize]) -> Result<()> {
    if n_list.is_empty() {
        return Err(Error::InvalidArgument { name: "pair-count list length", value: 0.0 });
    }
    if n_list[0] == 0 {
        return Err(Error::InvalidGrid { n_pairs: 0 });
    }
    if let Some(w) = n_list.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument { name: "pair count (must increase)", value: w[1] as f64 });
    }
    Ok(())
}

fn table_against<F: Integrand + ?Sized>(
    rule: RuleId,
    f: &F,
    iv: Interval,
    n_list: &[usize],
    reference: f64,
) -> Result<ConvergenceTable> {
    let rows = n_list
        .iter()
        .map(|&n| {
            let grid = UniformGrid::new(iv, n)?;
            let q = integrate(rule, f, grid)?;
            Ok(ConvergenceRow {
                n_pairs: n,
                h: grid.h(),
                approx: q.value,
                abs_error: libm::fabs(q.value - reference),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (fitted_order, fit_window) = fit_order(&rows);
    Ok(ConvergenceTable { rule, reference, rows, fitted_order, fit_window })
}

/// Run `rule` on grids with the given pair counts and measure the errors
/// against a reference integral computed to `1e-13`.
pub fn convergence_study<F: Integrand + ?Sized>(
    rule: RuleId,
    f: &F,
    iv: Interval,
    n_list: &[usize],
) -> Result<ConvergenceTable> {
    check_n_list(n_list)?;
    let reference = reference_integral(f, iv, STUDY_TOL)?.value;
    table_against(rule, f, iv, n_list, reference)
}

/// Simpson and modified Simpson on identical grids.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RuleComparison {
    pub simpson: ConvergenceTable,
    pub modified: ConvergenceTable,
    /// Simpson error divided by modified-Simpson error per grid; `None` when
    /// the modified error is exactly zero.
    pub ratios: Vec<Option<f64>>,
}

pub fn compare_rules<F: Integrand + ?Sized>(
    f: &F,
    iv: Interval,
    n_list: &[usize],
) -> Result<RuleComparison> {
    check_n_list(n_list)?;
    let reference = reference_integral(f, iv, STUDY_TOL)?.value;
    let simpson = table_against(RuleId::Simpson, f, iv, n_list, reference)?;
    let modified = table_against(RuleId::ModifiedSimpson, f, iv, n_list, reference)?;
    let ratios = simpson
        .rows
        .iter()
        .zip(&modified.rows)
        .map(|(s, m)| (m.abs_error != 0.0).then(|| s.abs_error / m.abs_error))
        .collect();
    Ok(RuleComparison { simpson, modified, ratios })
}
