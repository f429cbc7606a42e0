use num_traits::{One, Zero};

use super::linalg::Echelon;
use super::quotient::QuotientRing;
use super::{MonomialOrder, ReducedGB};
use crate::arith::{MPoly, Monomial, Rational};
use crate::error::{Error, Result};

/// Converts a zero-dimensional reduced basis to the reduced basis for `target`.
pub fn fglm(g: &ReducedGB, target: &MonomialOrder) -> Result<ReducedGB> {
    let n = g.nvars();
    if target.nvars() != n {
        return Err(Error::Dimension("target order arity".into()));
    }
    if g.order() == target {
        return Ok(g.clone());
    }
    if g.is_unit() {
        return Ok(ReducedGB::unit(target.clone()));
    }
    let ring = QuotientRing::new(g)?;
    let mut ech = Echelon::new(ring.dim());
    let mut stair: Vec<(Monomial, Vec<Rational>)> = Vec::new();
    let mut lms: Vec<Monomial> = Vec::new();
    let mut out: Vec<MPoly> = Vec::new();
    // (monomial, parent staircase index, variable)
    let mut cands: Vec<(Monomial, usize, usize)> = Vec::new();

    let one = ring.one_vector();
    ech.insert(&one)
        .map_err(|_| Error::Internal("1 is zero in a proper quotient".into()))?;
    stair.push((Monomial::one(n), one));
    push_children(&mut cands, &stair, 0, n);

    while !cands.is_empty() {
        let k = (0..cands.len())
            .min_by(|&a, &b| target.cmp(&cands[a].0, &cands[b].0))
            .unwrap();
        let (m, parent, var) = cands.swap_remove(k);
        cands.retain(|c| c.0 != m);
        if lms.iter().any(|l| l.divides(&m)) {
            continue;
        }
        let v = ring.mul_var(var, &stair[parent].1);
        match ech.insert(&v) {
            Ok(_) => {
                stair.push((m, v));
                push_children(&mut cands, &stair, stair.len() - 1, n);
            }
            Err(coeffs) => {
                let mut terms = vec![(m.clone(), Rational::one())];
                for (c, (b, _)) in coeffs.iter().zip(&stair) {
                    if !c.is_zero() {
                        terms.push((b.clone(), -c));
                    }
                }
                out.push(MPoly::from_terms(n, terms));
                lms.push(m);
            }
        }
    }
    Ok(ReducedGB::from_reduced(&out, target.clone()))
}

fn push_children(cands: &mut Vec<(Monomial, usize, usize)>, stair: &[(Monomial, Vec<Rational>)], k: usize, n: usize) {
    for var in 0..n {
        let child = stair[k].0.mul(&Monomial::var(n, var));
        if !stair.iter().any(|(s, _)| *s == child) {
            cands.push((child, k, var));
        }
    }
}
