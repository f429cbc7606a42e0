use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use super::{Mode, RunConfig, RunOutcome};
use crate::arith::Rational;
use crate::certify::{HessianConvention, Verdict};
use crate::realroots::Interval;
use crate::solve::{approx, enclose, exact_value, round_sig, Minimizer, Problem, SolveReport};

fn interval_json(iv: &Interval) -> Value {
    json!([iv.lo.to_string(), iv.hi.to_string()])
}

fn float_json(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Enclosure widened to contain the rounded rendering.
fn rendered(iv: Interval, digits: u32) -> (f64, Interval) {
    let x = round_sig(crate::arith::rational::to_f64(&iv.midpoint()), digits);
    match Rational::from_float(x) {
        Some(q) if iv.lo != iv.hi || q != iv.lo => {
            let lo = if q < iv.lo { q.clone() } else { iv.lo };
            let hi = if q > iv.hi { q } else { iv.hi };
            (x, Interval::new(lo, hi))
        }
        _ => (x, iv),
    }
}

fn verdict_str(v: &Verdict) -> String {
    match v {
        Verdict::PositiveDefinite => "positive_definite".into(),
        Verdict::NotPositiveDefinite { witness, sign } => {
            format!("not_positive_definite(minor {}, sign {sign})", witness + 1)
        }
        Verdict::Degenerate { witness } => format!("degenerate(minor {})", witness + 1),
        Verdict::RankDeficient => "rank_deficient".into(),
    }
}

fn minimizer_json(m: &Minimizer, digits: u32) -> Value {
    let mut floats = Vec::new();
    let mut ivs = Vec::new();
    let mut exact = Vec::new();
    for c in &m.coords {
        let (x, iv) = rendered(enclose(c, &m.root, digits), digits);
        floats.push(float_json(x));
        ivs.push(interval_json(&iv));
        exact.push(exact_value(c, &m.root).map_or(Value::Null, |q| Value::String(q.to_string())));
    }
    let (value, value_iv) = rendered(m.value_enclosure(digits), digits);
    json!({
        "root_index": m.root_index,
        "coords_float": floats,
        "coords_interval": ivs,
        "coords_exact": exact,
        "multipliers": m.multipliers.iter().map(|p| float_json(approx(p, &m.root, digits))).collect::<Vec<_>>(),
        "value_float": float_json(value),
        "value_interval": interval_json(&value_iv),
        "certificate": m.certificate.as_ref().map(|c| json!({
            "verdict": verdict_str(&c.verdict),
            "signs": c.signs.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        })),
    })
}

fn convention_str(c: HessianConvention) -> &'static str {
    match c {
        HessianConvention::Direct => "direct",
        HessianConvention::Congruent => "congruent",
    }
}

fn report_fields(r: &SolveReport, config: &RunConfig) -> Map<String, Value> {
    let digits = config.digits;
    let d = &r.diagnostics;
    let f_min = r.f_min.as_ref().map(|fm| {
        let (x, iv) = rendered(fm.enclosure(digits), digits);
        json!({
            "value_float": float_json(x),
            "interval": interval_json(&iv),
            "kind": fm.kind(),
            "exact": fm.exact().map(|q| q.to_string()),
            "argmin_roots": fm.argmin,
        })
    });
    let diagnostics = json!({
        "algorithm": r.algorithm.name(),
        "hessian_convention": convention_str(config.hessian_convention),
        "zero_dimensional": d.zero_dimensional,
        "det_condition": d.det_condition,
        "det_at_roots": d.det_at_roots.iter().map(|s| json!({
            "root_index": s.root_index,
            "sign": s.sign.to_string(),
            "value_float": float_json(round_sig(crate::arith::rational::to_f64(&s.enclosure.midpoint()), digits)),
        })).collect::<Vec<_>>(),
        "certificates": d.certificates.iter().map(|c| verdict_str(&c.verdict)).collect::<Vec<_>>(),
        "rank_deficient_roots": d.rank_deficient_roots,
        "degenerate_roots": d.degenerate_roots,
        "bezout_bound": d.bezout_bound.map(|b| b.to_string()),
        "w": r.rep.as_ref().map(|rep| rep.w.to_string_in("t")),
        "roots_float": r.roots.iter().map(|a| float_json(round_sig(a.to_f64(), digits))).collect::<Vec<_>>(),
        "warnings": d.warnings,
        "hint": d.hint,
    });
    let timings: Map<String, Value> = r.timings_ms.iter().map(|(k, v)| (k.clone(), float_json(*v))).collect();
    let mut m = Map::new();
    m.insert("status".into(), json!(r.status.as_str()));
    m.insert("deg_w".into(), json!(r.deg_w()));
    m.insert("n_real_roots".into(), json!(r.n_real_roots()));
    m.insert("j".into(), json!(r.j()));
    m.insert(
        "minimizers".into(),
        Value::Array(r.minimizers.iter().map(|x| minimizer_json(x, digits)).collect()),
    );
    m.insert("f_min".into(), f_min.unwrap_or(Value::Null));
    m.insert("diagnostics".into(), diagnostics);
    m.insert("timings_ms".into(), Value::Object(timings));
    m
}

fn empty_fields() -> Map<String, Value> {
    let mut m = Map::new();
    for k in ["deg_w", "j", "f_min"] {
        m.insert(k.into(), Value::Null);
    }
    m.insert("n_real_roots".into(), json!(0));
    m.insert("minimizers".into(), json!([]));
    m.insert("diagnostics".into(), json!({}));
    m.insert("timings_ms".into(), json!({}));
    m
}

pub fn render_json(config: &RunConfig, _problem: &Problem, outcome: &RunOutcome) -> Value {
    let mut top = match outcome {
        RunOutcome::Single(r) => report_fields(r, config),
        RunOutcome::Trajectory(points) => {
            let mut trajectory = Vec::new();
            let mut last = None;
            for p in points {
                let mut entry = match &p.outcome {
                    Ok(r) => {
                        last = Some(r);
                        report_fields(r, config)
                    }
                    Err(e) => {
                        let mut m = empty_fields();
                        m.insert("status".into(), json!("error"));
                        m.insert("error".into(), json!(e.to_string()));
                        m
                    }
                };
                entry.insert(
                    "eps".into(),
                    json!(p.eps.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
                );
                trajectory.push(Value::Object(entry));
            }
            let mut m = last.map_or_else(empty_fields, |r| report_fields(r, config));
            m.insert("trajectory".into(), Value::Array(trajectory));
            m
        }
    };
    let status = match outcome.exit_code() {
        0 => "ok",
        2 => "precondition_failed",
        3 => "positive_dimensional",
        _ => "error",
    };
    top.insert("status".into(), json!(status));
    top.insert("mode".into(), json!(config.mode.as_str()));
    Value::Object(top)
}

fn fmt_f(x: f64) -> String {
    if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e12) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn table_block(out: &mut String, r: &SolveReport, config: &RunConfig, problem: &Problem) {
    let digits = config.digits;
    let _ = writeln!(out, "status: {}   algorithm: {}", r.status.as_str(), r.algorithm.name());
    if let (Some(dw), Some(j)) = (r.deg_w(), r.j()) {
        let _ = writeln!(out, "deg w = {dw}   real roots = {}   j = {j}", r.n_real_roots());
    }
    let kind = if r.algorithm.is_global() { "global" } else { "local" };
    if r.status != crate::solve::Status::PositiveDimensional {
        let _ = writeln!(out, "{} {kind} minimizers", r.minimizers.len());
    }
    if !r.minimizers.is_empty() {
        let n = problem.nvars;
        let m = r.minimizers[0].multipliers.len();
        let width = digits as usize + 8;
        let mut header = format!("{:>3}", "#");
        for i in 1..=n {
            let _ = write!(header, "  {:>width$}", format!("x{i}"));
        }
        for j in 1..=m {
            let _ = write!(header, "  {:>width$}", format!("lambda{j}"));
        }
        let _ = write!(header, "  {:>width$}", "f");
        let _ = writeln!(out, "{header}");
        for (k, mz) in r.minimizers.iter().enumerate() {
            let mut row = format!("{:>3}", k + 1);
            for x in mz.coords_f64(digits).into_iter().chain(mz.multipliers_f64(digits)) {
                let _ = write!(row, "  {:>width$}", fmt_f(x));
            }
            let _ = write!(row, "  {:>width$}", fmt_f(mz.value_f64(digits)));
            let _ = writeln!(out, "{row}");
        }
    }
    if let Some(fm) = &r.f_min {
        let label = fm.kind().replace('_', " ");
        let _ = writeln!(out, "f_min ({label}) = {}", fmt_f(fm.to_f64(digits)));
    }
    if r.diagnostics.det_condition == Some(false) {
        let _ = writeln!(out, "note: det of the Hessian vanishes at a real critical point");
    }
    for w in &r.diagnostics.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    if let Some(h) = &r.diagnostics.hint {
        let _ = writeln!(out, "hint: {h}");
    }
}

pub fn render_table(config: &RunConfig, problem: &Problem, outcome: &RunOutcome) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mode: {}   variables: {}", config.mode.as_str(), problem.nvars);
    match outcome {
        RunOutcome::Single(r) => table_block(&mut out, r, config, problem),
        RunOutcome::Trajectory(points) => {
            debug_assert_eq!(config.mode, Mode::Perturb);
            for p in points {
                let eps: Vec<String> = p.eps.iter().map(|e| fmt_f(crate::arith::rational::to_f64(e))).collect();
                let _ = writeln!(out, "\neps = ({})", eps.join(", "));
                match &p.outcome {
                    Ok(r) => table_block(&mut out, r, config, problem),
                    Err(e) => {
                        let _ = writeln!(out, "error: {e}");
                    }
                }
            }
        }
    }
    out.trim_end().to_string()
}
