//! Result types shared by the solvers.

use num_traits::{Signed, Zero};

use crate::arith::rational::{ten_pow_neg, to_f64};
use crate::arith::{Rational, UPoly};
use crate::certify::{Certificate, HessianCurve};
use crate::realroots::{interval_eval, sign_at, simplest_rational_between, AlgebraicNumber, Interval, Sign};
use crate::shape::UnivariateRep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Ok,
    PreconditionFailed,
    PositiveDimensional,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::PreconditionFailed => "precondition_failed",
            Status::PositiveDimensional => "positive_dimensional",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Grulom,
    GrulomPlus,
    Gralom,
    GralomPlus,
}

impl Algorithm {
    pub fn is_global(self) -> bool {
        matches!(self, Algorithm::GrulomPlus | Algorithm::GralomPlus)
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Grulom => "grulom",
            Algorithm::GrulomPlus => "grulom+",
            Algorithm::Gralom => "gralom",
            Algorithm::GralomPlus => "gralom+",
        }
    }
}

/// `det ∇²L` at one real critical point.
#[derive(Clone, Debug)]
pub struct DetSample {
    pub root_index: usize,
    pub sign: Sign,
    pub enclosure: Interval,
}

#[derive(Clone, Debug, Default)]
pub struct Diagnostics {
    pub zero_dimensional: bool,
    /// `det ∇²ₓL ≠ 0` at every real critical point; `None` when not evaluated.
    pub det_condition: Option<bool>,
    pub det_at_roots: Vec<DetSample>,
    /// Roots where `∇h` has rank below `m`.
    pub rank_deficient_roots: Vec<usize>,
    /// Roots where the second-order test is inconclusive.
    pub degenerate_roots: Vec<usize>,
    /// One certificate per real root.
    pub certificates: Vec<Certificate>,
    /// `(d − 1)ⁿ` for unconstrained problems.
    pub bezout_bound: Option<u128>,
    pub warnings: Vec<String>,
    pub hint: Option<String>,
}

/// A critical point `A⁻¹v(α)` singled out by a solver.
#[derive(Clone, Debug)]
pub struct Minimizer {
    pub root_index: usize,
    pub root: AlgebraicNumber,
    /// x-coordinates as polynomials in `t`, to be evaluated at `root`.
    pub coords: Vec<UPoly>,
    pub multipliers: Vec<UPoly>,
    /// Objective value as a polynomial in `t`.
    pub value: UPoly,
    pub certificate: Option<Certificate>,
}

impl Minimizer {
    pub fn coords_enclosure(&self, digits: u32) -> Vec<Interval> {
        self.coords.iter().map(|c| enclose(c, &self.root, digits)).collect()
    }

    pub fn coords_f64(&self, digits: u32) -> Vec<f64> {
        self.coords.iter().map(|c| approx(c, &self.root, digits)).collect()
    }

    pub fn multipliers_f64(&self, digits: u32) -> Vec<f64> {
        self.multipliers.iter().map(|c| approx(c, &self.root, digits)).collect()
    }

    pub fn value_enclosure(&self, digits: u32) -> Interval {
        enclose(&self.value, &self.root, digits)
    }

    pub fn value_f64(&self, digits: u32) -> f64 {
        approx(&self.value, &self.root, digits)
    }

    /// Coordinates that are rational, recovered exactly.
    pub fn exact_coords(&self) -> Vec<Option<Rational>> {
        self.coords.iter().map(|c| exact_value(c, &self.root)).collect()
    }
}

/// Smallest critical value.
#[derive(Clone, Debug)]
pub struct FMin {
    pub value: AlgebraicNumber,
    /// The infimum was asserted to be attained, so this is the global minimum.
    pub attained_asserted: bool,
    /// Indices into the real roots where the value is taken.
    pub argmin: Vec<usize>,
}

impl FMin {
    pub fn kind(&self) -> &'static str {
        if self.attained_asserted {
            "global_minimum"
        } else {
            "minimum_over_critical_values"
        }
    }

    pub fn exact(&self) -> Option<Rational> {
        self.value.clone().try_rational()
    }

    pub fn enclosure(&self, digits: u32) -> Interval {
        enclose(&UPoly::t(), &self.value, digits)
    }

    pub fn to_f64(&self, digits: u32) -> f64 {
        approx(&UPoly::t(), &self.value, digits)
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub status: Status,
    pub algorithm: Algorithm,
    pub n: usize,
    pub m: usize,
    pub rep: Option<UnivariateRep>,
    pub roots: Vec<AlgebraicNumber>,
    /// All coordinates of the critical curve, x block first.
    pub points: Vec<UPoly>,
    pub hessian: Option<HessianCurve>,
    /// Objective composed with the critical curve, reduced mod `w`.
    pub r: Option<UPoly>,
    pub minimizers: Vec<Minimizer>,
    pub f_min: Option<FMin>,
    pub diagnostics: Diagnostics,
    pub timings_ms: Vec<(String, f64)>,
}

impl SolveReport {
    pub fn deg_w(&self) -> Option<usize> {
        self.rep.as_ref().map(UnivariateRep::deg_w)
    }

    pub fn j(&self) -> Option<u64> {
        self.rep.as_ref().map(|r| r.cov.j)
    }

    pub fn n_real_roots(&self) -> usize {
        self.roots.len()
    }
}

/// Enclosure of `g(α)` whose width is at most `10^-(digits+2)` relative to its magnitude.
pub fn enclose(g: &UPoly, a: &AlgebraicNumber, digits: u32) -> Interval {
    if let Some(q) = exact_value(g, a) {
        return Interval::point(q);
    }
    let tol = ten_pow_neg(digits + 2);
    let mut b = a.clone();
    loop {
        if let Some(x) = b.as_rational() {
            return Interval::point(g.eval(x));
        }
        let e = interval_eval(g, b.interval());
        let mag = if e.lo.is_positive() {
            e.lo.clone()
        } else if e.hi.is_negative() {
            -e.hi.clone()
        } else {
            Rational::zero()
        };
        if !mag.is_zero() && e.width() <= &tol * &mag {
            return e;
        }
        for _ in 0..4 {
            b.bisect();
        }
    }
}

/// `g(α)` rounded to `digits` significant decimals.
pub fn approx(g: &UPoly, a: &AlgebraicNumber, digits: u32) -> f64 {
    let e = enclose(g, a, digits);
    round_sig(to_f64(&e.midpoint()), digits)
}

pub fn round_sig(x: f64, digits: u32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let p = digits.max(1) as usize - 1;
    format!("{x:.p$e}").parse().unwrap_or(x)
}

/// `g(α)` when it is rational with a moderate denominator, verified exactly.
pub fn exact_value(g: &UPoly, a: &AlgebraicNumber) -> Option<Rational> {
    if let Ok(r) = g.rem(a.defpoly()) {
        if r.is_constant() {
            return Some(r.coeff(0));
        }
    }
    if let Some(x) = a.as_rational() {
        return Some(g.eval(x));
    }
    if sign_at(g, a) == Sign::Zero {
        return Some(Rational::zero());
    }
    let e = a.eval_enclosure(g, &crate::arith::rational::pow2(-100));
    let q = simplest_rational_between(&e.lo, &e.hi);
    if q.denom().bits() > 40 {
        return None;
    }
    let shifted = g - &UPoly::constant(q.clone());
    (sign_at(&shifted, a) == Sign::Zero).then_some(q)
}
