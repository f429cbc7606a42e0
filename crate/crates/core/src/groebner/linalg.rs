use num_traits::{One, Zero};

use crate::arith::Rational;

/// Incremental row echelon form over ℚ that remembers how each stored row
/// combines the vectors inserted so far.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Row>,
    inserted: usize,
}

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    vec: Vec<Rational>,
    combo: Vec<Rational>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// If `v` is a combination of the inserted vectors, returns the coefficients
    /// (indexed by insertion order).
    pub fn solve(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (res, combo) = self.reduce(v);
        res.iter()
            .all(Zero::is_zero)
            .then(|| combo[..self.inserted].iter().map(|c| -c).collect())
    }

    /// Inserts `v`; returns `Err(coeffs)` when `v` is dependent, else its insertion index.
    pub fn insert(&mut self, v: &[Rational]) -> Result<usize, Vec<Rational>> {
        let (mut res, mut combo) = self.reduce(v);
        let Some(pivot) = res.iter().position(|c| !c.is_zero()) else {
            return Err(combo[..self.inserted].iter().map(|c| -c).collect());
        };
        let inv = Rational::one() / &res[pivot];
        for c in res.iter_mut().chain(combo.iter_mut()) {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
        let idx = self.inserted;
        self.inserted += 1;
        for r in &mut self.rows {
            r.combo.push(Rational::zero());
        }
        self.rows.push(Row { pivot, vec: res, combo });
        Ok(idx)
    }

    /// Returns `(res, c)` with `res = v + Σ c_k orig_k`; the last slot of `c`
    /// belongs to `v` itself.
    fn reduce(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut res = v.to_vec();
        let mut combo = vec![Rational::zero(); self.inserted + 1];
        combo[self.inserted] = Rational::one();
        for r in &self.rows {
            let c = res[r.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in res.iter_mut().zip(&r.vec) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
            for (x, y) in combo.iter_mut().zip(&r.combo) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        (res, combo)
    }
}
