use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::rational::Rational;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Minimal commutative-ring interface needed by determinant routines.
pub trait RingElement: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// Quotient when `other` is known to divide `self` exactly.
    fn div_exact(&self, other: &Self) -> Self;
}

impl RingElement for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

impl RingElement for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        MPoly::one(self.nvars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact(&self, o: &Self) -> Self {
        MPoly::div_exact(self, o).expect("inexact polynomial division in Bareiss step")
    }
}

impl RingElement for UPoly {
    fn zero_like(&self) -> Self {
        UPoly::zero()
    }
    fn one_like(&self) -> Self {
        UPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.divmod(o).expect("nonzero Bareiss pivot");
        debug_assert!(r.is_zero(), "inexact polynomial division in Bareiss step");
        q
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> QMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(QMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> QMatrix<U> {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        QMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Leading principal `k × k` submatrix.
    pub fn leading(&self, k: usize) -> Self {
        let idx: Vec<usize> = (0..k).collect();
        self.select(&idx, &idx)
    }

    pub fn is_symmetric(&self) -> bool
    where
        T: PartialEq,
    {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

impl QMatrix<Rational> {
    pub fn identity(n: usize) -> Self {
        QMatrix::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }
}

impl<T: RingElement> QMatrix<T> {
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let proto = self.data.first().or(other.data.first());
        let Some(proto) = proto else {
            return QMatrix::new(self.rows, other.cols, Vec::new());
        };
        Ok(QMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(proto.zero_like(), |acc, k| {
                acc.add_ref(&self.get(i, k).mul_ref(other.get(k, j)))
            })
        }))
    }

    fn check_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Err(Error::Dimension("determinant of an empty matrix".into()));
        }
        Ok(())
    }

    /// Exact determinant: cofactor expansion up to 4×4, fraction-free
    /// Bareiss elimination above that.
    pub fn determinant(&self) -> Result<T> {
        self.check_square()?;
        if self.rows <= 4 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Result<T> {
        self.check_square()?;
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.cofactor_rec(0, &cols))
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> T {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = self.data[0].zero_like();
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero_elem() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.mul_ref(&self.cofactor_rec(row + 1, &rest));
            acc = if k % 2 == 0 {
                acc.add_ref(&term)
            } else {
                acc.sub_ref(&term)
            };
        }
        acc
    }

    /// Bareiss fraction-free elimination; every division is exact in the
    /// entry ring.
    pub fn det_bareiss(&self) -> Result<T> {
        self.check_square()?;
        let n = self.rows;
        let mut m: Vec<Vec<T>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = self.data[0].one_like();
        let mut negate = false;
        for k in 0..n - 1 {
            if m[k][k].is_zero_elem() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero_elem()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(self.data[0].zero_like()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[k][k].mul_ref(&m[i][j]).sub_ref(&m[i][k].mul_ref(&m[k][j]));
                    m[i][j] = v.div_exact(&prev);
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { det.zero_like().sub_ref(&det) } else { det })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_mpoly;
    use crate::arith::rational::int;

    fn qm(n: usize, v: &[i64]) -> QMatrix<Rational> {
        QMatrix::new(n, n, v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn saddle_hessian_determinant() {
        let f = parse_mpoly("x1^2 + (x1*x2 - 1)^2", 2).unwrap();
        let det = f.hessian(&[0, 1]).determinant().unwrap();
        assert_eq!(det, parse_mpoly("-12*x1^2*x2^2 + 4*x1^2 + 16*x1*x2 - 4", 2).unwrap());
        assert_eq!(det, f.hessian(&[0, 1]).det_bareiss().unwrap());
    }

    #[test]
    fn identity_and_errors() {
        let id = QMatrix::from_fn(3, 3, |i, j| if i == j { MPoly::one(2) } else { MPoly::zero(2) });
        assert_eq!(id.determinant().unwrap(), MPoly::one(2));
        let rect = QMatrix::new(2, 3, vec![int(1); 6]).unwrap();
        assert!(matches!(rect.determinant(), Err(Error::Dimension(_))));
        assert!(QMatrix::new(2, 2, vec![int(1); 3]).is_err());
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = qm(3, &[0, 2, 1, 1, 0, 3, 4, 1, 0]);
        assert_eq!(m.det_bareiss().unwrap(), m.det_cofactor().unwrap());
        assert_eq!(m.det_cofactor().unwrap(), int(25));
        let singular = qm(3, &[1, 2, 3, 2, 4, 6, 0, 1, 1]);
        assert_eq!(singular.det_bareiss().unwrap(), int(0));
    }

    #[test]
    fn upoly_bareiss_matches_cofactor() {
        let m = QMatrix::from_fn(5, 5, |i, j| {
            UPoly::from_ints(&[(i * 3 + j) as i64 % 5 - 2, (i + 2 * j) as i64 % 3, 1])
        });
        assert_eq!(m.det_bareiss().unwrap(), m.det_cofactor().unwrap());
    }
}
