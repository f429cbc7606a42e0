//! Gröbner bases over ℚ and linear algebra in zero-dimensional quotient rings.

mod buchberger;
mod fglm;
pub(crate) mod ipoly;
mod linalg;
mod order;
mod quotient;

use std::collections::HashSet;

use num_traits::{One, Zero};

pub use buchberger::buchberger;
pub use fglm::fglm;
pub use linalg::Echelon;
pub use order::{MonomialOrder, OrderKind};
pub use quotient::{minimal_polynomial, radical_zero_dim, QuotientRing};

use crate::arith::{MPoly, Monomial, Rational};
use crate::error::{Error, Result};
use ipoly::{reduce, IPoly};

/// Reduced Gröbner basis, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct ReducedGB {
    generators: Vec<MPoly>,
    order: MonomialOrder,
    nvars: usize,
    ipolys: Vec<IPoly>,
}

impl PartialEq for ReducedGB {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.generators == other.generators
    }
}

impl ReducedGB {
    pub(crate) fn unit(order: MonomialOrder) -> Self {
        let n = order.nvars();
        ReducedGB::from_ipolys(
            vec![IPoly {
                terms: vec![(Monomial::one(n), num_bigint::BigInt::one())],
            }],
            order,
        )
    }

    pub(crate) fn from_ipolys(mut ipolys: Vec<IPoly>, order: MonomialOrder) -> Self {
        let nvars = order.nvars();
        ipolys.retain(|p| !p.is_zero());
        ipolys.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
        let generators = ipolys.iter().map(|p| p.to_monic_mpoly(nvars)).collect();
        ReducedGB {
            generators,
            order,
            nvars,
            ipolys,
        }
    }

    /// Wraps polynomials already known to form a reduced basis.
    pub(crate) fn from_reduced(gens: &[MPoly], order: MonomialOrder) -> Self {
        let ipolys = gens.iter().map(|g| IPoly::from_mpoly(g, &order).0).collect();
        ReducedGB::from_ipolys(ipolys, order)
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.ipolys.iter().map(|p| p.lm().clone()).collect()
    }

    pub(crate) fn reducers(&self) -> Vec<&IPoly> {
        self.ipolys.iter().collect()
    }

    /// Checks monic leading coefficients and that no term of any generator is
    /// divisible by the leading monomial of another.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.generators.iter().enumerate().all(|(k, g)| {
            self.order.leading(g).is_some_and(|(_, c)| c.is_one())
                && g.terms()
                    .all(|(m, _)| lms.iter().enumerate().all(|(l, lm)| l == k || !lm.divides(m)))
        })
    }

    /// Whether every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let red = self.reducers();
        for a in 0..self.ipolys.len() {
            for b in a + 1..self.ipolys.len() {
                let s = IPoly::spoly(&self.ipolys[a], &self.ipolys[b], &self.order);
                if !reduce(s, &red, &self.order, true, None).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Remainder of `p` on division by `g`.
pub fn normal_form(p: &MPoly, g: &ReducedGB) -> Result<MPoly> {
    if p.nvars() != g.nvars {
        return Err(Error::Dimension(format!(
            "polynomial in {} variables, basis in {}",
            p.nvars(),
            g.nvars
        )));
    }
    if p.is_zero() {
        return Ok(p.clone());
    }
    let (ip, mut s) = IPoly::from_mpoly(p, &g.order);
    let r = reduce(ip, &g.reducers(), &g.order, true, Some(&mut s));
    Ok(r.to_mpoly_scaled(g.nvars, &s))
}

/// Finiteness criterion: each variable has a pure power among the leading monomials.
pub fn is_zero_dimensional(g: &ReducedGB) -> bool {
    if g.is_unit() {
        return true;
    }
    let mut seen = vec![false; g.nvars];
    for m in g.leading_monomials() {
        if let Some(v) = m.pure_power_var() {
            seen[v] = true;
        }
    }
    seen.into_iter().all(|b| b)
}

/// Standard monomials under the staircase, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    pub monomials: Vec<Monomial>,
}

impl QuotientBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

pub fn quotient_basis(g: &ReducedGB) -> Result<QuotientBasis> {
    if !is_zero_dimensional(g) {
        return Err(Error::PositiveDimensional);
    }
    let lms = g.leading_monomials();
    let standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
    let one = Monomial::one(g.nvars);
    let mut out = Vec::new();
    if standard(&one) {
        let mut seen: HashSet<Monomial> = HashSet::from([one.clone()]);
        let mut stack = vec![one];
        while let Some(m) = stack.pop() {
            for v in 0..g.nvars {
                let next = m.mul(&Monomial::var(g.nvars, v));
                if standard(&next) && seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
            out.push(m);
        }
    }
    out.sort_by(|a, b| g.order.cmp(a, b));
    Ok(QuotientBasis { monomials: out })
}

/// `true` if `p` lies in the ideal.
pub fn contains(g: &ReducedGB, p: &MPoly) -> Result<bool> {
    Ok(normal_form(p, g)?.is_zero())
}

pub(crate) fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}
