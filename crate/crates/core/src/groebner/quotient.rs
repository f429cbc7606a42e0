use std::collections::HashMap;

use num_traits::{One, Zero};

use super::linalg::Echelon;
use super::{buchberger, is_zero_dimensional, normal_form, quotient_basis, zero_vec, QuotientBasis, ReducedGB};
use crate::arith::{MPoly, Monomial, Rational, UPoly};
use crate::error::{Error, Result};

/// Sparse column: `(row, value)` pairs.
type Column = Vec<(usize, Rational)>;

/// The quotient `ℚ[x]/I` of a zero-dimensional ideal as a finite vector space,
/// with the multiplication-by-`x_i` operators.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    gb: ReducedGB,
    basis: QuotientBasis,
    index: HashMap<Monomial, usize>,
    /// `mult[i][b]` = coordinates of `NF(x_i · basis[b])`.
    mult: Vec<Vec<Column>>,
}

impl QuotientRing {
    pub fn new(gb: &ReducedGB) -> Result<Self> {
        let basis = quotient_basis(gb)?;
        let n = gb.nvars();
        let index: HashMap<Monomial, usize> = basis
            .monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, m)| (m, k))
            .collect();
        let mut mult = Vec::with_capacity(n);
        for i in 0..n {
            let xi = Monomial::var(n, i);
            let mut cols = Vec::with_capacity(basis.len());
            for b in &basis.monomials {
                let m = b.mul(&xi);
                let col = match index.get(&m) {
                    Some(&k) => vec![(k, Rational::one())],
                    None => {
                        let nf = normal_form(&MPoly::from_terms(n, [(m, Rational::one())]), gb)?;
                        sparse_coords(&nf, &index)?
                    }
                };
                cols.push(col);
            }
            mult.push(cols);
        }
        Ok(QuotientRing {
            gb: gb.clone(),
            basis,
            index,
            mult,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &QuotientBasis {
        &self.basis
    }

    pub fn gb(&self) -> &ReducedGB {
        &self.gb
    }

    /// Coordinates of `1`.
    pub fn one_vector(&self) -> Vec<Rational> {
        let mut v = zero_vec(self.dim());
        if let Some(&k) = self.index.get(&Monomial::one(self.gb.nvars())) {
            v[k] = Rational::one();
        }
        v
    }

    /// Coordinates of the normal form of `p`.
    pub fn coords(&self, p: &MPoly) -> Result<Vec<Rational>> {
        let nf = normal_form(p, &self.gb)?;
        let mut v = zero_vec(self.dim());
        for (k, c) in sparse_coords(&nf, &self.index)? {
            v[k] = c;
        }
        Ok(v)
    }

    pub fn to_poly(&self, v: &[Rational]) -> MPoly {
        MPoly::from_terms(
            self.gb.nvars(),
            self.basis
                .monomials
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Multiplies the element with coordinates `v` by `x_var`.
    pub fn mul_var(&self, var: usize, v: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.dim());
        for (b, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, a) in &self.mult[var][b] {
                out[*k] += c * a;
            }
        }
        out
    }

    /// Multiplies `v` by the polynomial `p`.
    pub fn mul_poly(&self, p: &MPoly, v: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.dim());
        for (m, c) in p.terms() {
            let mut w = v.to_vec();
            for (var, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    w = self.mul_var(var, &w);
                }
            }
            for (o, x) in out.iter_mut().zip(&w) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }

    /// Monic minimal polynomial of the class of `p`.
    pub fn minimal_polynomial_of(&self, p: &MPoly) -> UPoly {
        krylov_minpoly(self.one_vector(), self.dim(), |v| self.mul_poly(p, v))
    }

    pub fn minimal_polynomial_var(&self, var: usize) -> UPoly {
        krylov_minpoly(self.one_vector(), self.dim(), |v| self.mul_var(var, v))
    }
}

fn sparse_coords(nf: &MPoly, index: &HashMap<Monomial, usize>) -> Result<Column> {
    nf.terms()
        .map(|(m, c)| {
            index
                .get(m)
                .map(|&k| (k, c.clone()))
                .ok_or_else(|| Error::Internal("normal form left the staircase".into()))
        })
        .collect()
}

/// Minimal polynomial of `start` under `apply`, via the first linear
/// dependency among `start, apply(start), …`.
pub(crate) fn krylov_minpoly(start: Vec<Rational>, dim: usize, apply: impl Fn(&[Rational]) -> Vec<Rational>) -> UPoly {
    if start.iter().all(Zero::is_zero) {
        return UPoly::one();
    }
    let mut ech = Echelon::new(dim);
    let mut v = start;
    loop {
        match ech.insert(&v) {
            Ok(_) => v = apply(&v),
            Err(coeffs) => {
                let mut c: Vec<Rational> = coeffs.into_iter().map(|x| -x).collect();
                c.push(Rational::one());
                return UPoly::new(c);
            }
        }
    }
}

/// Monic least-degree `m` with `m(x_var)` in the ideal.
pub fn minimal_polynomial(g: &ReducedGB, var: usize) -> Result<UPoly> {
    if var >= g.nvars() {
        return Err(Error::Dimension(format!("variable index {var} out of range")));
    }
    Ok(QuotientRing::new(g)?.minimal_polynomial_var(var))
}

/// Radical of a zero-dimensional ideal via Seidenberg's criterion.
pub fn radical_zero_dim(g: &ReducedGB) -> Result<ReducedGB> {
    if !is_zero_dimensional(g) {
        return Err(Error::PositiveDimensional);
    }
    if g.is_unit() {
        return Ok(g.clone());
    }
    let ring = QuotientRing::new(g)?;
    let n = g.nvars();
    let mut extra = Vec::new();
    for var in 0..n {
        let m = ring.minimal_polynomial_var(var);
        let s = m.squarefree_part();
        if s.deg() < m.deg() {
            extra.push(MPoly::from_upoly(n, var, &s));
        }
    }
    if extra.is_empty() {
        return Ok(g.clone());
    }
    let mut gens = g.generators().to_vec();
    gens.extend(extra);
    buchberger(&gens, g.order())
}
