//! Real root isolation over ℚ with Sturm sequences, interval refinement and
//! exact sign determination at real algebraic numbers.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::intpoly::IntPoly;
use crate::arith::rational::{pow2, to_f64};
use crate::arith::{Rational, UPoly};
use crate::error::{Error, Result};
use crate::groebner::Echelon;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn from_i8(s: i8) -> Sign {
        match s {
            0 => Sign::Zero,
            s if s < 0 => Sign::Negative,
            _ => Sign::Positive,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

/// Closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.lo), to_f64(&self.hi))
    }
}

/// Sturm chain of a polynomial: primitive integer remainders with the sign
/// convention `s_{k+1} = −rem(s_{k−1}, s_k)` up to a positive factor.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    polys: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &UPoly) -> Self {
        let p0 = IntPoly::from_upoly(p);
        let mut polys = vec![p0.clone()];
        let p1 = p0.derivative().primitive();
        if p1.is_zero() {
            return SturmSequence { polys };
        }
        polys.push(p1);
        loop {
            let k = polys.len();
            if polys[k - 1].deg() == Some(0) {
                break;
            }
            let (r, e) = polys[k - 2].prem(&polys[k - 1]);
            if r.is_zero() {
                break;
            }
            let lc_negative = polys[k - 1].lc().is_some_and(|c| c.is_negative());
            let r = if lc_negative && e % 2 == 1 { r } else { -r };
            polys.push(r.primitive());
        }
        SturmSequence { polys }
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.polys.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.polys.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }
}

/// Real root of a squarefree polynomial, isolated by an interval whose
/// endpoints are not roots.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    defpoly: UPoly,
    iv: Interval,
    ip: IntPoly,
    exact: Option<Rational>,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.defpoly == other.defpoly && self.iv.intersects(&other.iv) && {
            let lo = (&self.iv.lo).max(&other.iv.lo);
            let hi = (&self.iv.hi).min(&other.iv.hi);
            lo == hi && self.ip.sign_at(lo) == 0 || SturmSequence::new(&self.defpoly).count(lo, hi) == 1
        }
    }
}

impl AlgebraicNumber {
    /// Wraps a root given by an isolating interval; checked with a Sturm count.
    pub fn new(defpoly: UPoly, iv: Interval) -> Result<Self> {
        let ip = IntPoly::from_upoly(&defpoly);
        if iv.lo == iv.hi {
            if ip.sign_at(&iv.lo) != 0 {
                return Err(Error::Precondition("point interval is not a root".into()));
            }
            let x = iv.lo.clone();
            return Ok(Self::rational_root(defpoly.monic(), ip, x, Rational::one()));
        }
        if ip.sign_at(&iv.lo) == 0 || ip.sign_at(&iv.hi) == 0 {
            return Err(Error::Precondition("interval endpoint is a root".into()));
        }
        if SturmSequence::new(&defpoly).count(&iv.lo, &iv.hi) != 1 {
            return Err(Error::Precondition("interval does not isolate a single root".into()));
        }
        Ok(AlgebraicNumber {
            defpoly: defpoly.monic(),
            iv,
            ip,
            exact: None,
        })
    }

    pub fn from_rational(x: Rational) -> Self {
        let defpoly = UPoly::new(vec![-x.clone(), Rational::one()]);
        let ip = IntPoly::from_upoly(&defpoly);
        Self::rational_root(defpoly, ip, x, Rational::one())
    }

    fn rational_root(defpoly: UPoly, ip: IntPoly, x: Rational, halfwidth: Rational) -> Self {
        AlgebraicNumber {
            defpoly,
            iv: Interval::new(&x - &halfwidth, &x + &halfwidth),
            ip,
            exact: Some(x),
        }
    }

    pub fn defpoly(&self) -> &UPoly {
        &self.defpoly
    }

    pub fn interval(&self) -> &Interval {
        &self.iv
    }

    /// The value itself when it was found to be rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn to_f64(&self) -> f64 {
        match &self.exact {
            Some(x) => to_f64(x),
            None => to_f64(&self.refined(&pow2(-60)).iv.midpoint()),
        }
    }

    /// Detects a rational value: any rational root `p/q` has `q | lc`, so once
    /// the interval is narrower than `1/lc²` the simplest rational inside is
    /// the only candidate.
    pub fn try_rational(&mut self) -> Option<Rational> {
        if let Some(x) = &self.exact {
            return Some(x.clone());
        }
        let lc = Rational::from_integer(self.ip.lc()?.abs());
        let target = Rational::one() / (&lc * &lc * Rational::from_integer(2.into()));
        self.refine_to(&target);
        if let Some(x) = &self.exact {
            return Some(x.clone());
        }
        let q = simplest_rational_between(&self.iv.lo, &self.iv.hi);
        if self.ip.sign_at(&q) == 0 {
            let h = self.iv.width() / Rational::from_integer(4.into());
            self.iv = Interval::new(&q - &h, &q + &h);
            self.exact = Some(q.clone());
            return Some(q);
        }
        None
    }

    /// Halves the interval once, keeping the root inside.
    pub fn bisect(&mut self) {
        if let Some(x) = &self.exact {
            let h = self.iv.width() / Rational::from_integer(4.into());
            self.iv = Interval::new(x - &h, x + &h);
            return;
        }
        let mid = self.iv.midpoint();
        let sm = self.ip.sign_at(&mid);
        if sm == 0 {
            let h = self.iv.width() / Rational::from_integer(4.into());
            self.iv = Interval::new(&mid - &h, &mid + &h);
            self.exact = Some(mid);
            return;
        }
        let slo = self.ip.sign_at(&self.iv.lo);
        if slo * sm < 0 {
            self.iv.hi = mid;
        } else {
            self.iv.lo = mid;
        }
    }

    pub fn refine_to(&mut self, width: &Rational) {
        while &self.iv.width() > width {
            self.bisect();
        }
    }

    pub fn refined(&self, width: &Rational) -> Self {
        let mut a = self.clone();
        a.refine_to(width);
        a
    }

    /// Enclosure of `g(α)` of width at most `width` (`width > 0`).
    pub fn eval_enclosure(&self, g: &UPoly, width: &Rational) -> Interval {
        if let Some(x) = &self.exact {
            return Interval::point(g.eval(x));
        }
        let scale = g
            .coeffs()
            .iter()
            .fold(Rational::zero(), |acc, c| if c.abs() > acc { c.abs() } else { acc });
        if scale.is_zero() {
            return Interval::point(Rational::zero());
        }
        let mut a = self.clone();
        loop {
            let e = interval_eval(g, &a.iv);
            if &e.width() <= width {
                return e;
            }
            a.bisect();
            if let Some(x) = &a.exact {
                return Interval::point(g.eval(x));
            }
        }
    }
}

/// Rational with the smallest denominator in `[lo, hi]` (continued fractions).
pub fn simplest_rational_between(lo: &Rational, hi: &Rational) -> Rational {
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if &(&fl + Rational::one()) <= hi {
        return fl + Rational::one();
    }
    // lo, hi share the integer part: recurse on reciprocals of the fractional parts
    let a = lo - &fl;
    let b = hi - &fl;
    let inner = simplest_rational_between(&(Rational::one() / b), &(Rational::one() / a));
    fl + Rational::one() / inner
}

/// Interval Horner evaluation over rationals.
pub fn interval_eval(g: &UPoly, iv: &Interval) -> Interval {
    use num_integer::Integer;
    if g.is_zero() {
        return Interval::point(Rational::zero());
    }
    let den = g
        .coeffs()
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ip = IntPoly::new(g.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect());
    let (lo, hi) = ip.eval_interval(&iv.lo, &iv.hi);
    let scale = Rational::new(num_bigint::BigInt::one(), den);
    Interval::new(lo * &scale, hi * scale)
}

/// `p / gcd(p, p′)`, monic.
pub fn squarefree_part(p: &UPoly) -> Result<UPoly> {
    if p.is_zero() {
        return Err(Error::Precondition("squarefree part of the zero polynomial".into()));
    }
    Ok(p.squarefree_part())
}

/// Power of two at or above the Cauchy bound `1 + max |a_i / a_d|`.
fn root_bound(p: &UPoly) -> Rational {
    let lc = p.lc().expect("nonzero").abs();
    let m = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    let b = Rational::one() + m;
    let mut k = 0i64;
    while pow2(k) < b {
        k += 1;
    }
    pow2(k)
}

/// Isolates all real roots of a squarefree polynomial, sorted ascending.
pub fn isolate_real_roots(w: &UPoly) -> Result<Vec<AlgebraicNumber>> {
    if w.is_zero() {
        return Err(Error::Precondition(
            "cannot isolate roots of the zero polynomial".into(),
        ));
    }
    if !w.is_squarefree() {
        return Err(Error::Precondition("polynomial is not squarefree".into()));
    }
    if w.is_constant() {
        return Ok(Vec::new());
    }
    let defpoly = w.monic();
    let ip = IntPoly::from_upoly(&defpoly);
    let sturm = SturmSequence::new(&defpoly);
    let total = sturm.count_all();
    let b = root_bound(&defpoly);
    let mut out = Vec::with_capacity(total);
    let mut stack = vec![(-b.clone(), b, total)];
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(AlgebraicNumber {
                defpoly: defpoly.clone(),
                iv: Interval::new(lo, hi),
                ip: ip.clone(),
                exact: None,
            }),
            _ => {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                if ip.sign_at(&mid) == 0 {
                    let mut h = (&hi - &lo) / Rational::from_integer(4.into());
                    while sturm.count(&(&mid - &h), &(&mid + &h)) != 1
                        || ip.sign_at(&(&mid - &h)) == 0
                        || ip.sign_at(&(&mid + &h)) == 0
                    {
                        h /= Rational::from_integer(2.into());
                    }
                    let (l2, h2) = (&mid - &h, &mid + &h);
                    let nl = sturm.count(&lo, &l2);
                    let nr = sturm.count(&h2, &hi);
                    out.push(AlgebraicNumber::rational_root(defpoly.clone(), ip.clone(), mid, h));
                    stack.push((h2, hi, nr));
                    stack.push((lo, l2, nl));
                } else {
                    let nl = sturm.count(&lo, &mid);
                    stack.push((mid.clone(), hi, n - nl));
                    stack.push((lo, mid, nl));
                }
            }
        }
    }
    if out.len() != total {
        return Err(Error::Internal(format!(
            "isolated {} roots but the Sturm count is {total}",
            out.len()
        )));
    }
    out.sort_by(|a, b| a.iv.lo.cmp(&b.iv.lo));
    for k in 1..out.len() {
        while out[k - 1].iv.hi >= out[k].iv.lo {
            out[k - 1].bisect();
            out[k].bisect();
        }
    }
    Ok(out)
}

/// Same root with interval width at most `width`.
pub fn refine(a: &AlgebraicNumber, width: &Rational) -> AlgebraicNumber {
    a.refined(width)
}

/// Exact sign of `g(α)`.
pub fn sign_at(g: &UPoly, a: &AlgebraicNumber) -> Sign {
    let r = match g.rem(&a.defpoly) {
        Ok(r) => r,
        Err(_) => return Sign::Zero,
    };
    if r.is_zero() {
        return Sign::Zero;
    }
    if let Some(x) = &a.exact {
        return Sign::from_i8(crate::arith::rational::signum(&r.eval(x)));
    }
    if r.is_constant() {
        return Sign::from_i8(crate::arith::rational::signum(&r.coeff(0)));
    }
    let g = a.defpoly.gcd(&r);
    if !g.is_constant() && SturmSequence::new(&g).count(&a.iv.lo, &a.iv.hi) > 0 {
        return Sign::Zero;
    }
    let rp = IntPoly::from_upoly(&r);
    let flip = r.is_negative_lc() != (rp.lc().is_some_and(|c| c.is_negative()));
    let mut b = a.clone();
    loop {
        let (lo, hi) = rp.eval_interval(&b.iv.lo, &b.iv.hi);
        let s = if lo.is_positive() {
            1
        } else if hi.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            return Sign::from_i8(if flip { -s } else { s });
        }
        b.bisect();
        if let Some(x) = &b.exact {
            return Sign::from_i8(crate::arith::rational::signum(&r.eval(x)));
        }
    }
}

/// Minimal polynomial of the class of `r` in `ℚ[t]/(w)`.
pub fn image_minimal_polynomial(w: &UPoly, r: &UPoly) -> Result<UPoly> {
    let d = w.deg().ok_or(Error::DivisionByZero)?;
    if d == 0 {
        return Ok(UPoly::one());
    }
    let r = r.rem(w)?;
    let to_vec = |p: &UPoly| -> Vec<Rational> { (0..d).map(|k| p.coeff(k)).collect() };
    let mut ech = Echelon::new(d);
    let mut cur = UPoly::one();
    loop {
        match ech.insert(&to_vec(&cur)) {
            Ok(_) => cur = cur.mul_mod(&r, w)?,
            Err(coeffs) => {
                let mut c: Vec<Rational> = coeffs.into_iter().map(|x| -x).collect();
                c.push(Rational::one());
                return Ok(UPoly::new(c));
            }
        }
    }
}

/// Exact values `r(α)` for roots `α` of `w`.
///
/// Returns the distinct values as sorted algebraic numbers together with,
/// for each input root, the index of its value. Equal indices mean exactly
/// equal values.
pub fn image_values(w: &UPoly, r: &UPoly, roots: &[AlgebraicNumber]) -> Result<(Vec<AlgebraicNumber>, Vec<usize>)> {
    if roots.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let m = image_minimal_polynomial(w, r)?;
    let mut values = isolate_real_roots(&m)?;
    let mut index = Vec::with_capacity(roots.len());
    for alpha in roots {
        let mut a = alpha.clone();
        loop {
            if let Some(x) = a.exact.clone() {
                let y = r.eval(&x);
                let k = values
                    .iter()
                    .position(|v| {
                        v.iv.contains(&y) && sign_at(&UPoly::new(vec![-y.clone(), Rational::one()]), v) == Sign::Zero
                    })
                    .ok_or_else(|| Error::Internal("value of r at a rational root not found".into()))?;
                index.push(k);
                break;
            }
            let e = interval_eval(r, &a.iv);
            let hits: Vec<usize> = (0..values.len()).filter(|&k| values[k].iv.intersects(&e)).collect();
            match hits.len() {
                0 => return Err(Error::Internal("value enclosure misses every image root".into())),
                1 => {
                    index.push(hits[0]);
                    break;
                }
                _ => {
                    a.bisect();
                    for k in hits {
                        values[k].bisect();
                    }
                }
            }
        }
    }
    Ok((values, index))
}
