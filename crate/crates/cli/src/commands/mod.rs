//! One function per subcommand, each returning a [`Report`].

mod verify;

use std::io::Read;
use std::path::Path;

use clap::ValueEnum;
use fockop_core::analysis::{
    classify_hankel_product, classify_single, classify_toeplitz_product, corroborate, default_base, fit_exponent,
    norm_sweep, predicted_exponent, GrowthKind, NormSample, Property, RaySpec, SingleKind, TSchedule, Verdict,
};
use fockop_core::arith::{rational_from_str, rational_to_f64};
use fockop_core::operators::{apply_operator, parse_operator};
use fockop_core::symbols::parse_symbol;
use fockop_core::{BasisExpansion, BigRational, MultiIndex, OperatorExpr, SpaceParams, SymbolPolynomial};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{self, Report, Rows};
use crate::settings::Settings;
use crate::{RayArgs, SpaceArgs};

pub use verify::{verify, VerifyCheck};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassifyKind {
    /// Boundedness of T_f T_g
    ToeplitzProduct,
    /// Boundedness of H*_f H_g
    HankelProduct,
    /// Boundedness of T_f
    Toeplitz,
    /// Boundedness of H_f
    Hankel,
    /// Compactness of H_f
    HankelCompact,
}

impl ClassifyKind {
    fn name(self) -> &'static str {
        match self {
            ClassifyKind::ToeplitzProduct => "toeplitz-product",
            ClassifyKind::HankelProduct => "hankel-product",
            ClassifyKind::Toeplitz => "toeplitz",
            ClassifyKind::Hankel => "hankel",
            ClassifyKind::HankelCompact => "hankel-compact",
        }
    }

    fn is_product(self) -> bool {
        matches!(self, ClassifyKind::ToeplitzProduct | ClassifyKind::HankelProduct)
    }
}

pub(crate) fn space(args: &SpaceArgs) -> Result<SpaceParams, CliError> {
    Ok(SpaceParams::new(args.n, args.m)?)
}

fn symbol(label: &str, text: &str, n: usize) -> Result<SymbolPolynomial, CliError> {
    parse_symbol(text, n).map_err(|e| CliError::in_text(e, label, text))
}

fn operator(text: &str, n: usize) -> Result<OperatorExpr, CliError> {
    parse_operator(text, n).map_err(|e| CliError::in_text(e, "--op", text))
}

pub(crate) fn multi_index(label: &str, text: &str, n: usize) -> Result<MultiIndex, CliError> {
    let a: MultiIndex = text.parse().map_err(|e| CliError::in_text(e, label, text))?;
    if a.dim() != n {
        return Err(CliError::input(format!("{label}: {a} has {} components, expected n = {n}", a.dim())));
    }
    Ok(a)
}

fn ray(args: &RayArgs, expr: &OperatorExpr, n: usize) -> Result<RaySpec, CliError> {
    let t: TSchedule = args.t.parse().map_err(|e| CliError::in_text(e, "--t", &args.t))?;
    let base = match &args.base {
        Some(text) => multi_index("--base", text, n)?,
        None => default_base(expr)?,
    };
    let parts: Vec<&str> = args.ray.iter().flatten().map(String::as_str).collect();
    let direction = match parts.as_slice() {
        [] | ["ones"] => MultiIndex::splat(n, 1),
        ["custom", d] => multi_index("--ray custom", d, n)?,
        ["custom"] => return Err(CliError::input("--ray custom needs a direction such as \"1|2\"")),
        _ => return Err(CliError::input(format!("--ray: expected `ones` or `custom \"d1|d2|…\"`, got {parts:?}"))),
    };
    Ok(RaySpec::new(base, direction, t.values())?)
}

fn ray_value(r: &RaySpec) -> Value {
    json!({
        "base": report::index(r.base()),
        "direction": report::index(r.direction()),
        "t": r.t_values(),
    })
}

fn samples_value(samples: &[NormSample]) -> Value {
    Value::Array(
        samples
            .iter()
            .map(|s| json!({ "t": s.t, "alpha": s.alpha.to_string(), "squared_norm": report::rational(&s.squared_norm) }))
            .collect(),
    )
}

fn symbol_value(p: &SymbolPolynomial) -> Value {
    let (holo, rest) = p.holomorphic_split();
    json!({
        "canonical": p.to_string(),
        "terms": p.terms().map(|(b, g, c)| json!({
            "beta": b.to_string(),
            "gamma": g.to_string(),
            "coefficient": report::gaussian(c),
        })).collect::<Vec<_>>(),
        "constant": p.is_constant(),
        "holomorphic": p.is_holomorphic(),
        "holomorphic_part": holo.to_string(),
        "remainder": rest.to_string(),
    })
}

pub fn parse(args: &SpaceArgs, f: Option<&str>, op: Option<&str>) -> Result<Report, CliError> {
    let n = args.n;
    if n == 0 {
        return Err(CliError::input("dimension n must be at least 1"));
    }
    let report = Report::new("parse", None).input("n", n);
    match (f, op) {
        (Some(text), _) => {
            let p = symbol("-f", text, n)?;
            Ok(report.input("f", text).output("symbol", symbol_value(&p)))
        }
        (None, Some(text)) => {
            let e = operator(text, n)?;
            Ok(report.input("op", text).output(
                "operator",
                json!({
                    "canonical": e.to_string(),
                    "symbols": e.symbols().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                }),
            ))
        }
        (None, None) => Err(CliError::input("parse needs -f or --op")),
    }
}

fn verdict_value(v: &Verdict) -> Value {
    let word = match (v.property, v.holds) {
        (Property::Bounded, true) => "bounded",
        (Property::Bounded, false) => "unbounded",
        (Property::Compact, true) => "compact",
        (Property::Compact, false) => "not compact",
    };
    json!({
        "verdict": word,
        "property": format!("{:?}", v.property).to_lowercase(),
        "holds": v.holds,
        "matched_case": v.matched_case.to_string(),
        "witness": v.witness,
    })
}

pub fn classify(
    kind: ClassifyKind,
    args: &SpaceArgs,
    f_text: &str,
    g_text: Option<&str>,
    ray_args: Option<&RayArgs>,
    settings: &Settings,
) -> Result<Report, CliError> {
    let sp = space(args)?;
    let f = symbol("-f", f_text, sp.n)?;
    let g = match (kind.is_product(), g_text) {
        (true, Some(text)) => Some(symbol("-g", text, sp.n)?),
        (true, None) => return Err(CliError::input(format!("classify {} needs -g", kind.name()))),
        (false, Some(_)) => return Err(CliError::input(format!("classify {} takes only -f", kind.name()))),
        (false, None) => None,
    };
    let (verdict, expr) = match (kind, g) {
        (ClassifyKind::ToeplitzProduct, Some(g)) => (classify_toeplitz_product(&f, &g), OperatorExpr::toeplitz_product(f.clone(), g)),
        (ClassifyKind::HankelProduct, Some(g)) => (classify_hankel_product(&f, &g), OperatorExpr::HankelProduct(f.clone(), g)),
        (ClassifyKind::Toeplitz, _) => (classify_single(SingleKind::Toeplitz, &f), OperatorExpr::Toeplitz(f.clone())),
        // ‖H_f e_α‖² = ⟨H*_f H_f e_α, e_α⟩, so sweeps use H*_f H_f
        (ClassifyKind::Hankel, _) => (classify_single(SingleKind::HankelBounded, &f), OperatorExpr::HankelProduct(f.clone(), f.clone())),
        (ClassifyKind::HankelCompact, _) => (classify_single(SingleKind::HankelCompact, &f), OperatorExpr::HankelProduct(f.clone(), f.clone())),
        _ => unreachable!("products always carry g"),
    };
    let mut report = Report::new(format!("classify {}", kind.name()), Some(sp))
        .input("f", f.to_string())
        .output("verdict", verdict_value(&verdict))
        .output("operator", expr.to_string());
    if let Some(g) = g_text {
        report = report.input("g", symbol("-g", g, sp.n)?.to_string());
    }
    if let Some(ray_args) = ray_args {
        let r = ray(ray_args, &expr, sp.n)?;
        report = report.output("corroboration", corroboration(kind, &verdict, &expr, &sp, &r, settings)?);
    }
    Ok(report)
}

fn corroboration(
    kind: ClassifyKind,
    verdict: &Verdict,
    expr: &OperatorExpr,
    sp: &SpaceParams,
    r: &RaySpec,
    settings: &Settings,
) -> Result<Value, CliError> {
    if kind == ClassifyKind::HankelCompact {
        // compact iff ‖H_f e_α‖ → 0 along the ray, as e_α → 0 weakly
        let samples = norm_sweep(expr, sp, r, settings.jobs)?;
        let first = rational_to_f64(&samples[0].squared_norm);
        let last = rational_to_f64(&samples[samples.len() - 1].squared_norm);
        let decays = last == 0.0 || (first > 0.0 && last < first / settings.analysis.bounded_factor);
        return Ok(json!({
            "ray": ray_value(r),
            "decays": decays,
            "consistent": decays == verdict.holds,
            "samples": samples_value(&samples),
        }));
    }
    let c = corroborate(verdict, expr, sp, r, &settings.analysis, settings.jobs)?;
    Ok(json!({
        "ray": ray_value(r),
        "fitted_exponent": c.fitted_exponent.map_or(Value::Null, report::float),
        "growth_factor": c.growth_factor.map_or(Value::Null, report::float),
        "consistent": c.consistent,
        "samples": samples_value(&c.samples),
    }))
}

pub fn apply(args: &SpaceArgs, op: &str, alpha: &str) -> Result<Report, CliError> {
    let sp = space(args)?;
    let expr = operator(op, sp.n)?;
    let a = multi_index("--alpha", alpha, sp.n)?;
    let image = apply_operator(&expr, &BasisExpansion::basis(sp, a.clone())?)?;
    Ok(Report::new("apply", Some(sp))
        .input("op", expr.to_string())
        .input("alpha", report::index(&a))
        .output("image", report::expansion(&image))
        .output("text", image.to_string())
        .output("squared_norm", report::rational(&image.squared_norm())))
}

/// The asymptotic exponent for products of two monomial symbols.
fn prediction(expr: &OperatorExpr, r: &RaySpec) -> Result<Option<Value>, CliError> {
    let single = |p: &SymbolPolynomial| {
        let mut terms = p.terms();
        match (terms.next(), terms.next()) {
            (Some((b, g, _)), None) => Some((b.clone(), g.clone())),
            _ => None,
        }
    };
    let (kind, f, g) = match expr {
        OperatorExpr::Composition(l, rgt) => match (l.as_ref(), rgt.as_ref()) {
            (OperatorExpr::Toeplitz(f), OperatorExpr::Toeplitz(g)) => (GrowthKind::ToeplitzMonoProduct, f, g),
            _ => return Ok(None),
        },
        OperatorExpr::HankelProduct(f, g) => (GrowthKind::HankelMonoProduct, f, g),
        OperatorExpr::Toeplitz(_) => return Ok(None),
    };
    let (Some((b1, g1)), Some((b2, g2))) = (single(f), single(g)) else {
        return Ok(None);
    };
    let p = predicted_exponent(kind, [&b1, &g1, &b2, &g2], r)?;
    Ok(Some(json!({
        "exponent": p.exponent.as_ref().map_or(Value::Null, report::rational),
        "degenerate": p.degenerate,
    })))
}

pub fn norms(args: &SpaceArgs, op: &str, ray_args: &RayArgs, settings: &Settings) -> Result<Report, CliError> {
    let sp = space(args)?;
    let expr = operator(op, sp.n)?;
    let r = ray(ray_args, &expr, sp.n)?;
    let samples = norm_sweep(&expr, &sp, &r, settings.jobs)?;
    let rows = Rows {
        header: vec!["t", "alpha", "squared_norm"],
        rows: samples
            .iter()
            .map(|s| vec![s.t.to_string(), s.alpha.to_string(), report::rational(&s.squared_norm).as_str().expect("string").to_string()])
            .collect(),
    };
    let mut report = Report::new("norms", Some(sp))
        .input("op", expr.to_string())
        .input("ray", ray_value(&r))
        .output("samples", samples_value(&samples))
        .rows(rows);
    if let Some(p) = prediction(&expr, &r)? {
        report = report.output("prediction", p);
    }
    Ok(report)
}

fn read_samples(input: Option<&Path>) -> Result<(String, Vec<(u64, BigRational)>), CliError> {
    let (name, text) = match input {
        Some(p) if p != Path::new("-") => (
            p.display().to_string(),
            std::fs::read_to_string(p).map_err(|e| CliError::input(format!("cannot read {}: {e}", p.display())))?,
        ),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::input(format!("cannot read stdin: {e}")))?;
            ("-".to_string(), s)
        }
    };
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| CliError::input(format!("{name}: {e}")))?
        .clone();
    let column = |want: &str| {
        headers
            .iter()
            .position(|h| h.trim() == want)
            .ok_or_else(|| CliError::input(format!("{name}: missing column {want:?} (header {:?})", headers.iter().collect::<Vec<_>>())))
    };
    let (ti, vi) = (column("t")?, column("squared_norm")?);
    let mut samples = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::input(format!("{name}: {e}")))?;
        let line = row + 2;
        let t = record
            .get(ti)
            .and_then(|s| s.trim().parse::<u64>().ok())
            .ok_or_else(|| CliError::input(format!("{name}:{line}: bad t value")))?;
        let v = record
            .get(vi)
            .and_then(rational_from_str)
            .ok_or_else(|| CliError::input(format!("{name}:{line}: squared_norm must be p/q or an integer")))?;
        samples.push((t, v));
    }
    Ok((name, samples))
}

pub fn fit(input: Option<&Path>, predicted: Option<&str>, settings: &Settings) -> Result<Report, CliError> {
    let predicted = predicted
        .map(|p| rational_from_str(p).ok_or_else(|| CliError::input(format!("--predicted: {p:?} is not p/q"))))
        .transpose()?;
    let (name, samples) = read_samples(input)?;
    let fitted = fit_exponent(&samples)?.with_prediction(predicted);
    let mut report = Report::new("fit", None)
        .input("source", name)
        .output("fitted_exponent", report::float(fitted.fitted_exponent))
        .output("residual", report::float(fitted.residual))
        .output("sample_count", fitted.samples.len())
        .output(
            "t_range",
            json!([fitted.samples[0].0, fitted.samples[fitted.samples.len() - 1].0]),
        );
    if let Some(p) = &fitted.predicted_exponent {
        let deviation = (fitted.fitted_exponent - rational_to_f64(p)).abs();
        report = report
            .input("predicted", report::rational(p))
            .output("predicted_exponent", report::rational(p))
            .output("deviation", report::float(deviation))
            .output("within_tolerance", deviation <= settings.analysis.fit_tolerance)
            .output("tolerance", report::float(settings.analysis.fit_tolerance));
    }
    Ok(report)
}
