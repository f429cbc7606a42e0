//! End-to-end solvers: local and global minimizers of polynomials, with and
//! without equality constraints, inequalities through squared slacks, and the
//! linear perturbation driver for positive-dimensional critical sets.

mod report;

use std::time::Instant;

use num_traits::Zero;

use crate::arith::{MPoly, Rational, UPoly};
use crate::certify::{certify_roots, det_signs, hessian_curve, jacobian_curve, HessianConvention, Verdict};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::realroots::{image_values, isolate_real_roots, Sign};
use crate::shape::separating_representation;

pub use report::{
    approx, enclose, exact_value, round_sig, Algorithm, DetSample, Diagnostics, FMin, Minimizer, SolveReport, Status,
};

const PERTURB_HINT: &str = "critical set is positive-dimensional; use --mode perturb to add a generic linear term";

/// `min f(x)` subject to `h(x) = 0` and `g(x) ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub objective: MPoly,
    pub equalities: Vec<MPoly>,
    pub inequalities: Vec<MPoly>,
    pub nvars: usize,
}

impl Problem {
    pub fn new(objective: MPoly, equalities: Vec<MPoly>, inequalities: Vec<MPoly>) -> Result<Self> {
        let nvars = objective.nvars();
        if equalities.iter().chain(&inequalities).any(|p| p.nvars() != nvars) {
            return Err(Error::Dimension(
                "constraints and objective use different variable counts".into(),
            ));
        }
        if !equalities.is_empty() && equalities.len() >= nvars {
            return Err(Error::IllPosed(format!(
                "{} equality constraints in {} variables (need m < n)",
                equalities.len(),
                nvars
            )));
        }
        Ok(Problem {
            objective,
            equalities,
            inequalities,
            nvars,
        })
    }

    pub fn unconstrained(objective: MPoly) -> Self {
        let nvars = objective.nvars();
        Problem {
            objective,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            nvars,
        }
    }

    /// Replaces every `g_j ≥ 0` by `g_j − z_j² = 0` with a new variable `z_j`.
    pub fn with_slack(&self) -> Problem {
        let s = self.inequalities.len();
        let big = self.nvars + s;
        let mut equalities: Vec<MPoly> = self.equalities.iter().map(|h| h.extend(big)).collect();
        for (j, g) in self.inequalities.iter().enumerate() {
            let z = MPoly::var(big, self.nvars + j);
            equalities.push(&g.extend(big) - &(&z * &z));
        }
        Problem {
            objective: self.objective.extend(big),
            equalities,
            inequalities: Vec::new(),
            nvars: big,
        }
    }
}

/// `L(x, λ) = f(x) + Σ λ_j h_j(x)` with the λ block after the x block.
#[derive(Clone, Debug, PartialEq)]
pub struct Lagrangian {
    pub l: MPoly,
    pub n: usize,
    pub m: usize,
}

impl Lagrangian {
    pub fn gradient(&self) -> Vec<MPoly> {
        self.l.gradient()
    }
}

pub fn build_lagrangian(f: &MPoly, h: &[MPoly]) -> Result<Lagrangian> {
    let (n, m) = (f.nvars(), h.len());
    if m == 0 {
        return Err(Error::IllPosed("no constraints; use the unconstrained solver".into()));
    }
    if m >= n {
        return Err(Error::IllPosed(format!(
            "{m} constraints in {n} variables (need m < n)"
        )));
    }
    if h.iter().any(|p| p.nvars() != n) {
        return Err(Error::Dimension(
            "constraint variable count differs from objective".into(),
        ));
    }
    let big = n + m;
    let mut l = f.extend(big);
    for (j, hj) in h.iter().enumerate() {
        l = &l + &(&MPoly::var(big, n + j) * &hj.extend(big));
    }
    Ok(Lagrangian { l, n, m })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub exec: Exec,
    pub convention: HessianConvention,
    pub assume_attained: bool,
}

/// When a vanishing `det ∇²ₓL` at a real critical point fails the run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum DetPolicy {
    Required,
    /// Only a singular bordered matrix or a rank drop of `∇h` fails the run.
    NondegenerateOnly,
}

struct Clock {
    start: Instant,
    last: Instant,
    laps: Vec<(String, f64)>,
}

impl Clock {
    fn new() -> Self {
        let now = Instant::now();
        Clock {
            start: now,
            last: now,
            laps: Vec::new(),
        }
    }

    fn lap(&mut self, name: &str) {
        let now = Instant::now();
        self.laps.push((name.into(), (now - self.last).as_secs_f64() * 1e3));
        self.last = now;
    }

    fn finish(mut self) -> Vec<(String, f64)> {
        self.laps
            .push(("total".into(), self.start.elapsed().as_secs_f64() * 1e3));
        self.laps
    }
}

fn bezout_bound(f: &MPoly) -> Option<u128> {
    let d = f.total_degree().finite()? as u128;
    d.saturating_sub(1).checked_pow(f.nvars() as u32)
}

/// Runs the shared pipeline: critical system, univariate representation, real
/// roots, Hessian curve and per-root certificates.
fn analyze(
    algorithm: Algorithm,
    f: &MPoly,
    h: &[MPoly],
    opts: &SolveOptions,
    policy: DetPolicy,
) -> Result<SolveReport> {
    let mut clock = Clock::new();
    let (n, m) = (f.nvars(), h.len());
    let l = if m == 0 { f.clone() } else { build_lagrangian(f, h)?.l };
    let gens = l.gradient();
    let mut diagnostics = Diagnostics::default();
    if m == 0 {
        diagnostics.bezout_bound = bezout_bound(f);
    }
    let mut report = SolveReport {
        status: Status::Ok,
        algorithm,
        n,
        m,
        rep: None,
        roots: Vec::new(),
        points: Vec::new(),
        hessian: None,
        r: None,
        minimizers: Vec::new(),
        f_min: None,
        diagnostics,
        timings_ms: Vec::new(),
    };
    let rep = match separating_representation(&gens, opts.exec) {
        Ok(rep) => rep,
        Err(Error::PositiveDimensional) => {
            report.status = Status::PositiveDimensional;
            report.diagnostics.hint = Some(PERTURB_HINT.into());
            clock.lap("representation");
            report.timings_ms = clock.finish();
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    clock.lap("representation");
    report.diagnostics.zero_dimensional = true;
    if !rep.certifies(&gens) {
        return Err(Error::Internal(
            "critical curve does not satisfy the gradient system".into(),
        ));
    }
    if let Some(bound) = report.diagnostics.bezout_bound {
        if rep.deg_w() as u128 > bound {
            return Err(Error::Internal(format!(
                "deg w = {} exceeds the Bezout bound {bound}",
                rep.deg_w()
            )));
        }
    }
    let roots = isolate_real_roots(&rep.w)?;
    clock.lap("isolation");

    let points = rep.point();
    let hc = hessian_curve(&l, &rep, n, opts.convention);
    let cc = (m > 0).then(|| jacobian_curve(h, &rep, n, opts.convention));
    let certs = certify_roots(&hc, cc.as_ref(), &roots, opts.exec);
    let det = hc.determinant();
    let signs = det_signs(&det, &roots, opts.exec);
    clock.lap("certification");

    let d = &mut report.diagnostics;
    d.det_condition = Some(!signs.contains(&Sign::Zero));
    d.det_at_roots = signs
        .iter()
        .enumerate()
        .map(|(i, &sign)| DetSample {
            root_index: i,
            sign,
            enclosure: if sign == Sign::Zero {
                crate::realroots::Interval::point(Rational::zero())
            } else {
                enclose(&det, &roots[i], 10)
            },
        })
        .collect();
    for (i, c) in certs.iter().enumerate() {
        match c.verdict {
            Verdict::RankDeficient => d.rank_deficient_roots.push(i),
            Verdict::Degenerate { .. } => d.degenerate_roots.push(i),
            _ => {}
        }
    }
    if m > 0 {
        d.warnings
            .push("constraint qualification checked at the real critical points only, not on all of V(h)".into());
    }
    let det_failed = d.det_condition == Some(false);
    let failed = !d.rank_deficient_roots.is_empty()
        || if algorithm.is_global() {
            false
        } else {
            match policy {
                DetPolicy::Required => det_failed || !d.degenerate_roots.is_empty(),
                DetPolicy::NondegenerateOnly => !d.degenerate_roots.is_empty(),
            }
        };
    if failed {
        report.status = Status::PreconditionFailed;
    }
    d.certificates = certs;

    let r = rep.compose(&f.extend(rep.nvars));
    if rep.deg_w() > 0 && r.deg().is_some_and(|k| k >= rep.deg_w()) {
        return Err(Error::Internal("deg r >= deg w".into()));
    }
    report.r = Some(r);
    report.points = points;
    report.roots = roots;
    report.hessian = Some(hc);
    report.rep = Some(rep);
    report.timings_ms = clock.finish();
    Ok(report)
}

fn minimizer_at(report: &SolveReport, i: usize) -> Minimizer {
    let n = report.n;
    Minimizer {
        root_index: i,
        root: report.roots[i].clone(),
        coords: report.points[..n].to_vec(),
        multipliers: report.points[n..].to_vec(),
        value: report.r.clone().unwrap_or_else(UPoly::zero),
        certificate: report.diagnostics.certificates.get(i).cloned(),
    }
}

fn select_local(mut report: SolveReport) -> SolveReport {
    if report.status == Status::PositiveDimensional {
        return report;
    }
    report.minimizers = (0..report.roots.len())
        .filter(|&i| report.diagnostics.certificates[i].is_pd())
        .map(|i| minimizer_at(&report, i))
        .collect();
    report
}

fn select_global(mut report: SolveReport, opts: &SolveOptions) -> Result<SolveReport> {
    if report.status == Status::PositiveDimensional {
        return Ok(report);
    }
    if report.roots.is_empty() {
        return Err(Error::EmptyCriticalSet);
    }
    let start = Instant::now();
    let rep = report
        .rep
        .as_ref()
        .expect("zero-dimensional report carries a representation");
    let r = report.r.as_ref().expect("objective image");
    let (mut values, index) = image_values(&rep.w, r, &report.roots)?;
    let best = *index.iter().min().expect("nonempty");
    let argmin: Vec<usize> = (0..index.len()).filter(|&i| index[i] == best).collect();
    report.minimizers = argmin.iter().map(|&i| minimizer_at(&report, i)).collect();
    report.f_min = Some(FMin {
        value: values.swap_remove(best),
        attained_asserted: opts.assume_attained,
        argmin,
    });
    report
        .timings_ms
        .push(("argmin".into(), start.elapsed().as_secs_f64() * 1e3));
    Ok(report)
}

/// Zero-dimensionality of the gradient ideal and the determinant condition,
/// with per-root witnesses.
pub fn check_preconditions_unconstrained(f: &MPoly, opts: &SolveOptions) -> Result<Diagnostics> {
    analyze(Algorithm::Grulom, f, &[], opts, DetPolicy::Required).map(|r| r.diagnostics)
}

/// Local minimizers of `f` over ℝⁿ.
pub fn grulom(f: &MPoly, opts: &SolveOptions) -> Result<SolveReport> {
    analyze(Algorithm::Grulom, f, &[], opts, DetPolicy::Required).map(select_local)
}

/// Smallest critical value of `f` over ℝⁿ and the critical points attaining it.
pub fn grulom_plus(f: &MPoly, opts: &SolveOptions) -> Result<SolveReport> {
    let report = analyze(Algorithm::GrulomPlus, f, &[], opts, DetPolicy::Required)?;
    select_global(report, opts)
}

/// Local minimizers of `f` on `{h = 0}`; `h` empty delegates to [`grulom`].
pub fn gralom(f: &MPoly, h: &[MPoly], opts: &SolveOptions) -> Result<SolveReport> {
    if h.is_empty() {
        return grulom(f, opts);
    }
    analyze(Algorithm::Gralom, f, h, opts, DetPolicy::Required).map(select_local)
}

/// Smallest critical value of `f` on `{h = 0}`; `h` empty delegates to [`grulom_plus`].
pub fn gralom_plus(f: &MPoly, h: &[MPoly], opts: &SolveOptions) -> Result<SolveReport> {
    if h.is_empty() {
        return grulom_plus(f, opts);
    }
    let report = analyze(Algorithm::GralomPlus, f, h, opts, DetPolicy::Required)?;
    select_global(report, opts)
}

/// `min f` subject to `g ≥ 0` rewritten as `F(x, z) = f(x)` subject to `g_j(x) − z_j² = 0`.
pub fn slack_transform(f: &MPoly, g: &[MPoly]) -> Result<Problem> {
    if g.is_empty() {
        return Err(Error::IllPosed("slack transform needs at least one inequality".into()));
    }
    Ok(Problem::new(f.clone(), Vec::new(), g.to_vec())?.with_slack())
}

/// Local (or, with `global`, smallest-critical-value) minimizers of `f` on
/// `{g ≥ 0, h = 0}`, projected back to the x variables.
pub fn solve_inequalities(
    f: &MPoly,
    g: &[MPoly],
    h: &[MPoly],
    global: bool,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    let problem = Problem::new(f.clone(), h.to_vec(), g.to_vec())?;
    if g.is_empty() {
        return if global {
            gralom_plus(f, h, opts)
        } else {
            gralom(f, h, opts)
        };
    }
    let n = problem.nvars;
    let lifted = problem.with_slack();
    let mut report = if global {
        let r = analyze(
            Algorithm::GralomPlus,
            &lifted.objective,
            &lifted.equalities,
            opts,
            DetPolicy::NondegenerateOnly,
        )?;
        select_global(r, opts)?
    } else {
        let r = analyze(
            Algorithm::Gralom,
            &lifted.objective,
            &lifted.equalities,
            opts,
            DetPolicy::NondegenerateOnly,
        )?;
        select_local(r)
    };
    if report.status == Status::PositiveDimensional {
        return Ok(report);
    }
    if report.roots.is_empty() {
        report
            .diagnostics
            .warnings
            .push("no real critical points: the feasible set may be empty".into());
    }
    report.minimizers = project_and_dedup(&report, n)?;
    Ok(report)
}

/// Drops the slack coordinates and merges minimizers with identical x parts.
fn project_and_dedup(report: &SolveReport, n: usize) -> Result<Vec<Minimizer>> {
    let mins = &report.minimizers;
    if mins.is_empty() {
        return Ok(Vec::new());
    }
    let w = &report.rep.as_ref().expect("representation").w;
    let roots: Vec<_> = mins.iter().map(|m| m.root.clone()).collect();
    let mut keys: Vec<Vec<usize>> = vec![Vec::with_capacity(n); mins.len()];
    for i in 0..n {
        let (_, idx) = image_values(w, &mins[0].coords[i], &roots)?;
        for (k, key) in keys.iter_mut().enumerate() {
            key.push(idx[k]);
        }
    }
    let mut seen = std::collections::HashSet::new();
    Ok(mins
        .iter()
        .zip(keys)
        .filter(|(_, key)| seen.insert(key.clone()))
        .map(|(m, _)| {
            let mut m = m.clone();
            m.coords.truncate(n);
            m
        })
        .collect())
}

/// One entry of a perturbation trajectory.
#[derive(Clone, Debug)]
pub struct TrajectoryPoint {
    pub eps: Vec<Rational>,
    pub outcome: Result<SolveReport>,
}

/// `f + εᵀx` for one ε.
pub fn perturb(f: &MPoly, eps: &[Rational]) -> Result<MPoly> {
    let n = f.nvars();
    if eps.len() != n {
        return Err(Error::Dimension(format!(
            "ε has {} entries for {n} variables",
            eps.len()
        )));
    }
    let mut out = f.clone();
    for (i, e) in eps.iter().enumerate() {
        if !e.is_zero() {
            out = &out + &MPoly::var(n, i).scale(e);
        }
    }
    Ok(out)
}

/// Runs the global solver on `f + εᵀx` for every ε of the schedule; failures
/// are recorded per entry.
pub fn perturb_solve(f: &MPoly, h: &[MPoly], schedule: &[Vec<Rational>], opts: &SolveOptions) -> Vec<TrajectoryPoint> {
    opts.exec.map_collect(schedule, |eps| TrajectoryPoint {
        eps: eps.clone(),
        outcome: perturb(f, eps).and_then(|fe| gralom_plus(&fe, h, opts)),
    })
}
