use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::matrix::QMatrix;
use super::monomial::{Degree, Monomial};
use super::parse::{default_var_names, push_term};
use super::rational::Rational;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are keyed by exponent vector; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The coordinate polynomial `x_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut p = MPoly::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Rational::one());
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = MPoly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length differs from nvars");
            p.add_term(m, c);
        }
        p
    }

    /// Embeds a univariate polynomial as a polynomial in variable `var`.
    pub fn from_upoly(nvars: usize, var: usize, u: &UPoly) -> Self {
        let mut p = MPoly::zero(nvars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = k as u32;
            p.add_term(Monomial::new(e), c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.degree() as usize)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Highest power of `x_{var+1}` occurring.
    pub fn degree_in(&self, var: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| m.exps()[var] as usize)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.exps()[i] > 0))
            .collect()
    }

    /// Returns the univariate polynomial if only `var` occurs.
    pub fn to_upoly(&self, var: usize) -> Option<UPoly> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(var).finite().map_or(0, |d| d + 1)];
        for (m, c) in &self.terms {
            if m.exps().iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            coeffs[m.exps()[var] as usize] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check_same(&self, other: &MPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_same(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_same(other)?;
        Ok(self * other)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (lm_d, lc_d) = d.terms.iter().next_back()?;
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((lm, lc)) = r.terms.iter().next_back() {
            let m = lm.div(lm_d)?;
            let c = lc / lc_d;
            r = &r - &d.mul_monomial(&m, &c);
            q.add_term(m, c);
        }
        Some(q)
    }

    /// ∂/∂x_{i+1}.
    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MPoly> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Matrix of second partials over the selected variables.
    pub fn hessian(&self, vars: &[usize]) -> QMatrix<MPoly> {
        let k = vars.len();
        let firsts: Vec<MPoly> = vars.iter().map(|&i| self.derivative(i)).collect();
        let mut data = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                if b < a {
                    // symmetric: copy the already computed entry
                    let v: &MPoly = &data[b * k + a];
                    data.push(v.clone());
                } else {
                    data.push(firsts[a].derivative(vars[b]));
                }
            }
        }
        QMatrix::new(k, k, data).expect("square by construction")
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exps()
                    .iter()
                    .zip(point)
                    .fold(super::rational::to_f64(c), |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    /// Returns `g` with `g(y) = self(M·y)`, i.e. each `x_i` replaced by `Σ_k M[i][k]·y_k`.
    pub fn substitute_linear(&self, m: &QMatrix<Rational>) -> Result<MPoly> {
        if m.rows() != self.nvars || m.cols() != self.nvars {
            return Err(Error::Dimension(format!(
                "substitution matrix is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols(),
                n = self.nvars
            )));
        }
        let n = self.nvars;
        let linear: Vec<MPoly> = (0..n)
            .map(|i| {
                let mut p = MPoly::zero(n);
                for k in 0..n {
                    p.add_term(Monomial::var(n, k), m.get(i, k).clone());
                }
                p
            })
            .collect();
        let mut cache: Vec<Vec<MPoly>> = linear.iter().map(|l| vec![MPoly::one(n), l.clone()]).collect();
        let mut out = MPoly::zero(n);
        for (mono, c) in &self.terms {
            let mut t = MPoly::constant(n, c.clone());
            for (i, &e) in mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap() * &linear[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Substitutes `x_i := values[i](t)`; with a modulus every product is reduced
    /// modulo it, which keeps degrees below `deg modulus`.
    pub fn compose_univariate(&self, values: &[UPoly], modulus: Option<&UPoly>) -> UPoly {
        assert_eq!(values.len(), self.nvars);
        let reduce = |p: UPoly| match modulus {
            Some(w) => p.rem(w).expect("nonzero modulus"),
            None => p,
        };
        let mut cache: Vec<Vec<UPoly>> = values.iter().map(|v| vec![UPoly::one(), reduce(v.clone())]).collect();
        let mut out = UPoly::zero();
        for (mono, c) in &self.terms {
            let mut t = UPoly::constant(c.clone());
            for (i, &e) in mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = reduce(cache[i].last().unwrap() * &values[i]);
                    cache[i].push(next);
                }
                t = reduce(&t * &cache[i][e as usize]);
            }
            out = &out + &t;
        }
        out
    }

    /// Same polynomial viewed in `nvars ≥ self.nvars` variables (new ones appended).
    pub fn extend(&self, nvars: usize) -> MPoly {
        assert!(nvars >= self.nvars);
        MPoly {
            nvars,
            terms: self.terms.iter().map(|(m, c)| (m.extend(nvars), c.clone())).collect(),
        }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{e}", names[i])
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            push_term(&mut out, c, &mono);
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_var_names(self.nvars)))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch in addition");
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch in multiplication");
        let mut out = MPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}
