//! Integer-coefficient univariate polynomials, used wherever only the sign
//! of a polynomial (up to a positive factor) matters: gcds, Sturm chains and
//! interval evaluation. Working with primitive integer parts keeps
//! coefficient growth in check compared to Euclid over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Positive multiple of `p` with coprime integer coefficients.
    pub fn from_upoly(p: &UPoly) -> Self {
        let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
        IntPoly::new(coeffs).primitive()
    }

    pub fn to_upoly(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Divides out the (positive) content.
    pub fn primitive(self) -> Self {
        let g = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() || g.is_one() {
            return self;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Pseudo-remainder: returns `(r, e)` with `lc(b)^e · self = q·b + r`, `deg r < deg b`.
    pub fn prem(&self, b: &IntPoly) -> (IntPoly, u32) {
        let db = b.deg().expect("pseudo-division by zero polynomial");
        let lb = b.lc().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut e = 0;
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            let shift = dr - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + shift] -= &lr * bc;
            }
            e += 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (IntPoly::new(r), e)
    }

    /// Sign of the value at a rational point.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        let Some(d) = self.deg() else { return 0 };
        let p = x.numer();
        let q = x.denom();
        let mut acc = self.coeffs[d].clone();
        let mut qpow = BigInt::one();
        for i in (0..d).rev() {
            qpow *= q;
            acc = acc * p + &self.coeffs[i] * &qpow;
        }
        sign_of(&acc)
    }

    /// Sign of the value at `±∞`.
    pub fn sign_at_infinity(&self, positive: bool) -> i8 {
        match (self.deg(), self.lc()) {
            (Some(d), Some(lc)) => {
                let s = sign_of(lc);
                if positive || d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            _ => 0,
        }
    }

    /// Enclosure of `{ p(x) : lo ≤ x ≤ hi }` by interval Horner evaluation.
    pub fn eval_interval(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let Some(d) = self.deg() else {
            return (Rational::zero(), Rational::zero());
        };
        let den = lo.denom().lcm(hi.denom());
        let a = lo.numer() * (&den / lo.denom());
        let b = hi.numer() * (&den / hi.denom());
        let mut l = self.coeffs[d].clone();
        let mut u = l.clone();
        let mut dpow = BigInt::one();
        for i in (0..d).rev() {
            dpow *= &den;
            let cands = [&l * &a, &l * &b, &u * &a, &u * &b];
            let mut mn = cands[0].clone();
            let mut mx = cands[0].clone();
            for c in &cands[1..] {
                if c < &mn {
                    mn = c.clone();
                }
                if c > &mx {
                    mx = c.clone();
                }
            }
            let add = &self.coeffs[i] * &dpow;
            l = mn + &add;
            u = mx + add;
        }
        (Rational::new(l, dpow.clone()), Rational::new(u, dpow))
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Gcd of two integer polynomials by the primitive remainder sequence.
pub fn gcd_primitive(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (mut a, mut b) = if a.deg() >= b.deg() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    while !b.is_zero() {
        let (r, _) = a.prem(&b);
        a = b;
        b = r.primitive();
    }
    a.primitive()
}

impl std::ops::Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn signs_and_intervals() {
        let p = ip(&[-1, 0, 1]); // t^2 - 1
        assert_eq!(p.sign_at(&rat(1, 2)), -1);
        assert_eq!(p.sign_at(&int(1)), 0);
        assert_eq!(p.sign_at(&int(-3)), 1);
        assert_eq!(p.sign_at_infinity(false), 1);
        let (l, u) = p.eval_interval(&int(2), &int(3));
        assert!(l <= int(3) && u >= int(8));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = ip(&[1, 2, 3, 4]);
        let b = ip(&[5, 0, 2]);
        let (r, e) = a.prem(&b);
        assert!(r.deg() < b.deg());
        let lhs = &(&a.to_upoly() * &UPoly::constant(int(2).pow(e as i32))) - &r.to_upoly();
        assert!(lhs.rem(&b.to_upoly()).unwrap().is_zero());
    }

    #[test]
    fn gcd_of_products() {
        let g = ip(&[-1, 1]); // t - 1
        let a = &g.to_upoly() * &ip(&[2, 0, 1]).to_upoly();
        let b = &g.to_upoly() * &ip(&[3, 1]).to_upoly();
        let d = gcd_primitive(&IntPoly::from_upoly(&a), &IntPoly::from_upoly(&b));
        assert_eq!(d.deg(), Some(1));
    }
}
