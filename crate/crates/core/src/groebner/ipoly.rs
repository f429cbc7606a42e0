//! Fraction-free polynomials used inside the Gröbner engine.
//!
//! Terms are stored in decreasing order for a fixed [`MonomialOrder`] and
//! coefficients are kept primitive over ℤ, so reduction never forms a rational.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::order::MonomialOrder;
use crate::arith::{MPoly, Monomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IPoly {
    pub terms: Vec<(Monomial, BigInt)>,
}

impl IPoly {
    pub fn zero() -> Self {
        IPoly { terms: Vec::new() }
    }

    /// Returns `(q, s)` with `p = s·q`, `q` primitive with positive leading coefficient.
    pub fn from_mpoly(p: &MPoly, ord: &MonomialOrder) -> (IPoly, Rational) {
        let den = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms: Vec<(Monomial, BigInt)> = p
            .terms()
            .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())))
            .collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut q = IPoly { terms };
        let c = q.make_primitive();
        (q, Rational::new(c, den))
    }

    /// Monic rational version.
    pub fn to_monic_mpoly(&self, nvars: usize) -> MPoly {
        let lc = Rational::from_integer(self.lc().clone());
        MPoly::from_terms(
            nvars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()) / &lc)),
        )
    }

    pub fn to_mpoly_scaled(&self, nvars: usize, s: &Rational) -> MPoly {
        MPoly::from_terms(
            nvars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()) * s)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    /// Divides out the content and makes the leading coefficient positive;
    /// returns the signed factor removed.
    pub fn make_primitive(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
        g
    }

    /// `a·self − b·m·g`.
    pub fn sub_mul(&self, a: &BigInt, b: &BigInt, m: &Monomial, g: &IPoly, ord: &MonomialOrder) -> IPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let mut shifted: Option<Monomial> = g.terms.first().map(|t| t.0.mul(m));
        while i < self.terms.len() || shifted.is_some() {
            let ord_ij = match (self.terms.get(i), &shifted) {
                (Some(x), Some(y)) => ord.cmp(&x.0, y),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord_ij {
                Ordering::Greater => {
                    let (mon, c) = &self.terms[i];
                    out.push((mon.clone(), c * a));
                    i += 1;
                }
                Ordering::Less => {
                    let mon = shifted.take().unwrap();
                    out.push((mon, -(&g.terms[j].1 * b)));
                    j += 1;
                    shifted = g.terms.get(j).map(|t| t.0.mul(m));
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 * a - &g.terms[j].1 * b;
                    let mon = shifted.take().unwrap();
                    if !c.is_zero() {
                        out.push((mon, c));
                    }
                    i += 1;
                    j += 1;
                    shifted = g.terms.get(j).map(|t| t.0.mul(m));
                }
            }
        }
        IPoly { terms: out }
    }

    pub fn spoly(f: &IPoly, g: &IPoly, ord: &MonomialOrder) -> IPoly {
        let l = f.lm().lcm(g.lm());
        let mf = l.div(f.lm()).unwrap();
        let mg = l.div(g.lm()).unwrap();
        let gc = f.lc().gcd(g.lc());
        let a = g.lc() / &gc;
        let b = f.lc() / &gc;
        let fm = IPoly {
            terms: f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect(),
        };
        fm.sub_mul(&a, &b, &mg, g, ord)
    }
}

/// Reduces `p` by `reducers`; `p ≡ scale·result` modulo the ideal afterwards.
///
/// With `full` every term is reduced, otherwise only the leading one.
pub(crate) fn reduce(
    mut p: IPoly,
    reducers: &[&IPoly],
    ord: &MonomialOrder,
    full: bool,
    scale: Option<&mut Rational>,
) -> IPoly {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut i = 0;
    let mut steps = 0usize;
    while i < p.terms.len() {
        let found = reducers.iter().find_map(|g| p.terms[i].0.div(g.lm()).map(|m| (*g, m)));
        match found {
            Some((g, m)) => {
                let c = &p.terms[i].1;
                let gc = c.gcd(g.lc());
                let a = g.lc() / &gc;
                let b = c / &gc;
                p = p.sub_mul(&a, &b, &m, g, ord);
                den *= &a;
                steps += 1;
                if steps.is_multiple_of(16) {
                    num *= p.make_primitive();
                }
            }
            None if full => i += 1,
            None => break,
        }
    }
    num *= p.make_primitive();
    if let Some(s) = scale {
        *s = &*s * Rational::new(num, den);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_mpoly;

    #[test]
    fn reduction_tracks_scale() {
        let ord = MonomialOrder::grevlex(2);
        let (g, _) = IPoly::from_mpoly(&parse_mpoly("2*x1^2 - 3*x2", 2).unwrap(), &ord);
        let p = parse_mpoly("1/5*x1^3 + x1*x2 + 7", 2).unwrap();
        let (ip, mut s) = IPoly::from_mpoly(&p, &ord);
        let r = reduce(ip, &[&g], &ord, true, Some(&mut s));
        let nf = r.to_mpoly_scaled(2, &s);
        // x1^3/5 ≡ x1·(3/2 x2)/5
        assert_eq!(nf, parse_mpoly("13/10*x1*x2 + 7", 2).unwrap());
    }
}
