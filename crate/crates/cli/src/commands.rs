use corquad::bounds::{composite_bound_k6, composite_bounds, RangeEstimator};
use corquad::kernels::{kernel_eval, scaled_constants};
use corquad::reference::{compare_rules, convergence_study, reference_integral, MIN_TOL};
use corquad::rules::{composite_modified_simpson, integrate};
use corquad::{
    ConvergenceTable, DerivativeRange, ExprIntegrand, Interval, KernelConstants, KernelId,
    Provenance, RuleComparison, RuleId, SecantSlope, UniformGrid,
};
use serde::Serialize;

use crate::args::{BoundsArgs, CompareArgs, ConvergeArgs, Format, FunctionArgs, IntegrateArgs, KernelArgs};
use crate::output::{csv_line, exact, json, key_values, opt_exact, opt_sig15, sig15, Table};
use crate::CliError;

/// `[a, b]` in increasing order, with the sign that undoes a swap.
struct Oriented {
    iv: Interval,
    sign: f64,
}

fn orient(a: f64, b: f64) -> Result<Oriented, CliError> {
    if !a.is_finite() || !b.is_finite() {
        return Err(CliError::Usage("-a and -b must be finite".into()));
    }
    if a == b {
        return Err(CliError::Usage(format!("-a and -b must differ (both are {a})")));
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let iv = Interval::new(lo, hi).map_err(CliError::from)?;
    Ok(Oriented { iv, sign })
}

/// `sign * v` without producing a negative zero.
fn signed(sign: f64, v: f64) -> f64 {
    sign * v + 0.0
}

fn parse_flag(flag: &str, text: &str) -> Result<corquad::Expr, CliError> {
    corquad::parse(text).map_err(|e| {
        let caret = " ".repeat(e.offset);
        CliError::Usage(format!("{flag}: {e}\n  {text}\n  {caret}^"))
    })
}

fn integrand(func: &FunctionArgs) -> Result<ExprIntegrand, CliError> {
    let f = parse_flag("--f", &func.f)?;
    Ok(match &func.df {
        Some(df) => ExprIntegrand::with_first_derivative(f, parse_flag("--df", df)?),
        None => ExprIntegrand::new(f),
    })
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol.is_finite() && tol >= MIN_TOL {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--tol must be at least {MIN_TOL:e}, got {tol}")))
    }
}

fn check_n_list(n_list: &[usize]) -> Result<(), CliError> {
    if n_list.is_empty() || n_list[0] == 0 || n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage(
            "--n-list must be positive pair counts in strictly increasing order".into(),
        ));
    }
    Ok(())
}

fn grid(iv: Interval, n: u32) -> Result<UniformGrid, CliError> {
    UniformGrid::new(iv, n as usize).map_err(CliError::from)
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct IntegrateReport {
    rule: RuleId,
    a: f64,
    b: f64,
    panels: usize,
    h: f64,
    value: f64,
    leading_error_estimate: Option<f64>,
    reference: Option<f64>,
    reference_est_error: Option<f64>,
    abs_error: Option<f64>,
}

pub fn integrate_cmd(args: &IntegrateArgs) -> Result<String, CliError> {
    let o = orient(args.func.a, args.func.b)?;
    if args.reference {
        check_tol(args.tol)?;
    }
    let f = integrand(&args.func)?;
    let q = integrate(args.rule, &f, grid(o.iv, args.n)?)?;
    let mut report = IntegrateReport {
        rule: args.rule,
        a: args.func.a,
        b: args.func.b,
        panels: q.panels,
        h: o.iv.length() / (2 * q.panels) as f64,
        value: signed(o.sign, q.value),
        leading_error_estimate: q.leading_error_estimate.map(|e| signed(o.sign, e)),
        reference: None,
        reference_est_error: None,
        abs_error: None,
    };
    if args.reference {
        let r = reference_integral(&f, o.iv, args.tol)?;
        report.reference = Some(signed(o.sign, r.value));
        report.reference_est_error = Some(r.est_abs_error);
        report.abs_error = Some((r.value - q.value).abs());
    }
    Ok(match args.format {
        Format::Json => json(&report),
        Format::Csv => {
            let r = &report;
            csv_line(&["rule", "a", "b", "panels", "h", "value", "leading_error_estimate", "reference", "abs_error"])
                + &csv_line(&[
                    r.rule.name().to_string(),
                    exact(r.a),
                    exact(r.b),
                    r.panels.to_string(),
                    exact(r.h),
                    exact(r.value),
                    opt_exact(r.leading_error_estimate),
                    opt_exact(r.reference),
                    opt_exact(r.abs_error),
                ])
        }
        Format::Table => {
            let r = &report;
            let mut rows = vec![
                ("rule", r.rule.name().to_string()),
                ("interval", format!("[{}, {}]", r.a, r.b)),
                ("panels", r.panels.to_string()),
                ("h", sig15(r.h)),
                ("value", sig15(r.value)),
                ("leading error estimate", opt_sig15(r.leading_error_estimate)),
            ];
            if args.reference {
                rows.push(("reference", opt_sig15(r.reference)));
                rows.push(("reference est. error", opt_sig15(r.reference_est_error)));
                rows.push(("actual error", opt_sig15(r.abs_error)));
            }
            key_values(&rows)
        }
    })
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct BoundEntry {
    k: usize,
    gamma: f64,
    upper: f64,
    provenance: Provenance,
    rigorous: bool,
    secant: Option<f64>,
    range_bound: Option<f64>,
    lower_secant_bound: Option<f64>,
    upper_secant_bound: Option<f64>,
    peano_bound: f64,
    best: f64,
}

#[derive(Serialize)]
struct BoundsReport {
    rule: RuleId,
    a: f64,
    b: f64,
    n_pairs: usize,
    h: f64,
    value: f64,
    leading_error_estimate: Option<f64>,
    reference: Option<f64>,
    abs_error: Option<f64>,
    bounds: Vec<BoundEntry>,
}

pub fn bounds_cmd(args: &BoundsArgs) -> Result<String, CliError> {
    let o = orient(args.func.a, args.func.b)?;
    if args.reference {
        check_tol(args.tol)?;
    }
    if args.samples < 8 {
        return Err(CliError::Usage(format!("--samples must be at least 8, got {}", args.samples)));
    }
    if !(args.safety.is_finite() && args.safety >= 1.0) {
        return Err(CliError::Usage(format!("--safety must be at least 1, got {}", args.safety)));
    }
    let f = integrand(&args.func)?;
    let g = grid(o.iv, args.n)?;
    let (h, len) = (g.h(), o.iv.length());
    let q = composite_modified_simpson(&f, g)?;
    let estimator = RangeEstimator { n_samples: args.samples, safety: args.safety };
    let ks: Vec<usize> = match args.k {
        Some(k) => vec![k as usize],
        None => (2..=6).collect(),
    };
    let mut entries = Vec::new();
    for k in ks {
        let range = match (args.gamma, args.upper) {
            (Some(lo), Some(hi)) => DerivativeRange::user(k, lo, hi).map_err(|_| {
                CliError::Usage(format!("--gamma ({lo}) must not exceed --upper ({hi})"))
            })?,
            _ => estimator.estimate(&f, k, o.iv)?,
        };
        let entry = if k <= 5 {
            let s = SecantSlope::over(&f, k - 1, o.iv)?;
            let r = composite_bounds(k, &range, &s, h, len).map_err(|e| match e {
                corquad::Error::InconsistentSecant { secant, gamma, big_gamma } => CliError::Usage(format!(
                    "--gamma/--upper [{gamma}, {big_gamma}] exclude the mean of f^({k}) over the interval, {secant}"
                )),
                other => other.into(),
            })?;
            BoundEntry {
                k,
                gamma: range.gamma,
                upper: range.upper,
                provenance: range.provenance,
                rigorous: r.rigorous,
                secant: Some(s.value),
                range_bound: Some(r.range_bound),
                lower_secant_bound: Some(r.lower_secant_bound),
                upper_secant_bound: Some(r.upper_secant_bound),
                peano_bound: r.peano_bound,
                best: r.best,
            }
        } else {
            let b6 = composite_bound_k6(range.sup_abs(), h, len)?;
            BoundEntry {
                k,
                gamma: range.gamma,
                upper: range.upper,
                provenance: range.provenance,
                rigorous: range.rigorous(),
                secant: None,
                range_bound: None,
                lower_secant_bound: None,
                upper_secant_bound: None,
                peano_bound: b6,
                best: b6,
            }
        };
        entries.push(entry);
    }
    let mut report = BoundsReport {
        rule: RuleId::ModifiedSimpson,
        a: args.func.a,
        b: args.func.b,
        n_pairs: args.n as usize,
        h,
        value: signed(o.sign, q.value),
        leading_error_estimate: q.leading_error_estimate.map(|e| signed(o.sign, e)),
        reference: None,
        abs_error: None,
        bounds: entries,
    };
    if args.reference {
        let r = reference_integral(&f, o.iv, args.tol)?;
        report.reference = Some(signed(o.sign, r.value));
        report.abs_error = Some((r.value - q.value).abs());
    }
    Ok(match args.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = csv_line(&[
                "k",
                "gamma",
                "upper",
                "provenance",
                "secant",
                "range_bound",
                "lower_secant_bound",
                "upper_secant_bound",
                "peano_bound",
                "best",
            ]);
            for e in &report.bounds {
                s += &csv_line(&[
                    e.k.to_string(),
                    exact(e.gamma),
                    exact(e.upper),
                    provenance_name(e.provenance).to_string(),
                    opt_exact(e.secant),
                    opt_exact(e.range_bound),
                    opt_exact(e.lower_secant_bound),
                    opt_exact(e.upper_secant_bound),
                    exact(e.peano_bound),
                    exact(e.best),
                ]);
            }
            s
        }
        Format::Table => {
            let mut head = vec![
                ("rule", report.rule.name().to_string()),
                ("interval", format!("[{}, {}]", report.a, report.b)),
                ("pairs", report.n_pairs.to_string()),
                ("h", sig15(report.h)),
                ("value", sig15(report.value)),
                ("leading error estimate", opt_sig15(report.leading_error_estimate)),
            ];
            if args.reference {
                head.push(("actual error", opt_sig15(report.abs_error)));
            }
            let mut t = Table::new([
                "k", "gamma", "upper", "secant", "range", "lower secant", "upper secant", "peano", "best", "source",
            ]);
            for e in &report.bounds {
                t.row(vec![
                    e.k.to_string(),
                    sig15(e.gamma),
                    sig15(e.upper),
                    opt_sig15(e.secant),
                    opt_sig15(e.range_bound),
                    opt_sig15(e.lower_secant_bound),
                    opt_sig15(e.upper_secant_bound),
                    sig15(e.peano_bound),
                    sig15(e.best),
                    provenance_name(e.provenance).to_string(),
                ]);
            }
            key_values(&head) + "\n" + &t.render()
        }
    })
}

fn provenance_name(p: Provenance) -> &'static str {
    match p {
        Provenance::UserSupplied => "user-supplied",
        Provenance::SampledEstimate => "sampled-estimate",
    }
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct KernelDump {
    constants: Vec<KernelConstants>,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

pub fn kernel_cmd(args: &KernelArgs) -> Result<String, CliError> {
    let ids: Vec<KernelId> = match args.k {
        Some(k) => vec![KernelId::new(k as usize)?],
        None => KernelId::all().collect(),
    };
    let last = (args.points - 1) as f64;
    let mut rows = Vec::with_capacity(args.points as usize);
    for i in 0..args.points {
        let x = i as f64 / last;
        let mut row = vec![x];
        for &id in &ids {
            row.push(kernel_eval(id, x)? + 0.0);
        }
        rows.push(row);
    }
    let columns: Vec<String> =
        std::iter::once("x".to_string()).chain(ids.iter().map(|id| format!("T_{}", id.k()))).collect();
    let dump = KernelDump { constants: ids.iter().map(|&id| scaled_constants(id)).collect(), columns, rows };
    Ok(match args.format {
        Format::Json => json(&dump),
        Format::Csv => {
            let mut s = csv_line(&dump.columns);
            for r in &dump.rows {
                s += &csv_line(&r.iter().map(|&v| exact(v)).collect::<Vec<_>>());
            }
            s
        }
        Format::Table => {
            let mut c = Table::new(["k", "C_k = int |T_k|", "B_k = max |T_k|", "D_k", "E_k"]);
            for k in &dump.constants {
                c.row(vec![k.k.to_string(), sig15(k.c), opt_sig15(k.b), sig15(k.d), opt_sig15(k.e)]);
            }
            let mut t = Table::new(dump.columns.clone());
            for r in &dump.rows {
                t.row(r.iter().map(|&v| sig15(v)).collect());
            }
            c.render() + "\n" + &t.render()
        }
    })
}

// ---------------------------------------------------------------------------

fn orient_table(t: &mut ConvergenceTable, sign: f64) {
    t.reference = signed(sign, t.reference);
    for r in &mut t.rows {
        r.approx = signed(sign, r.approx);
    }
}

fn fit_note(t: &ConvergenceTable) -> String {
    match t.fitted_order {
        Some(p) => format!("{} (from {} grids)", sig15(p), t.fit_window.len()),
        None => "- (fewer than two errors between 1e-13 and 1e-2)".into(),
    }
}

pub fn converge_cmd(args: &ConvergeArgs) -> Result<String, CliError> {
    let o = orient(args.func.a, args.func.b)?;
    check_n_list(&args.n_list)?;
    let f = integrand(&args.func)?;
    let mut t = convergence_study(args.rule, &f, o.iv, &args.n_list)?;
    orient_table(&mut t, o.sign);
    Ok(match args.format {
        Format::Json => json(&t),
        Format::Csv => {
            let mut s = csv_line(&["h", "approx", "abs_error"]);
            for r in &t.rows {
                s += &csv_line(&[exact(r.h), exact(r.approx), exact(r.abs_error)]);
            }
            s + &csv_line(&["fitted_order".to_string(), opt_exact(t.fitted_order)])
        }
        Format::Table => {
            let head = key_values(&[
                ("rule", t.rule.name().to_string()),
                ("interval", format!("[{}, {}]", args.func.a, args.func.b)),
                ("reference", sig15(t.reference)),
            ]);
            let mut tab = Table::new(["n", "h", "approx", "abs error"]);
            for r in &t.rows {
                tab.row(vec![r.n_pairs.to_string(), sig15(r.h), sig15(r.approx), sig15(r.abs_error)]);
            }
            head + "\n" + &tab.render() + "\n" + &key_values(&[("fitted order", fit_note(&t))])
        }
    })
}

pub fn compare_cmd(args: &CompareArgs) -> Result<String, CliError> {
    let o = orient(args.func.a, args.func.b)?;
    check_n_list(&args.n_list)?;
    let f = integrand(&args.func)?;
    let mut c: RuleComparison = compare_rules(&f, o.iv, &args.n_list)?;
    orient_table(&mut c.simpson, o.sign);
    orient_table(&mut c.modified, o.sign);
    let rows = c.simpson.rows.iter().zip(&c.modified.rows).zip(&c.ratios);
    Ok(match args.format {
        Format::Json => json(&c),
        Format::Csv => {
            let mut s = csv_line(&[
                "h",
                "simpson_approx",
                "simpson_abs_error",
                "msimpson_approx",
                "msimpson_abs_error",
                "ratio",
            ]);
            for ((sr, mr), ratio) in rows {
                s += &csv_line(&[
                    exact(sr.h),
                    exact(sr.approx),
                    exact(sr.abs_error),
                    exact(mr.approx),
                    exact(mr.abs_error),
                    opt_exact(*ratio),
                ]);
            }
            s + &csv_line(&["fitted_order_simpson".to_string(), opt_exact(c.simpson.fitted_order)])
                + &csv_line(&["fitted_order_msimpson".to_string(), opt_exact(c.modified.fitted_order)])
        }
        Format::Table => {
            let head = key_values(&[
                ("interval", format!("[{}, {}]", args.func.a, args.func.b)),
                ("reference", sig15(c.simpson.reference)),
            ]);
            let mut tab = Table::new(["n", "h", "simpson error", "msimpson error", "ratio"]);
            for ((sr, mr), ratio) in rows {
                tab.row(vec![
                    sr.n_pairs.to_string(),
                    sig15(sr.h),
                    sig15(sr.abs_error),
                    sig15(mr.abs_error),
                    opt_sig15(*ratio),
                ]);
            }
            head + "\n"
                + &tab.render()
                + "\n"
                + &key_values(&[
                    ("simpson order", fit_note(&c.simpson)),
                    ("msimpson order", fit_note(&c.modified)),
                ])
        }
    })
}
