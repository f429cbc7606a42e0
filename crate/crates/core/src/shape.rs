//! Separating linear changes of variables and the univariate representation
//! `V_C = { A⁻¹·v(t) : w(t) = 0 }` of a zero-dimensional system.

use num_traits::{One, Zero};

use crate::arith::{MPoly, QMatrix, Rational, UPoly};
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, fglm, is_zero_dimensional, quotient_basis, radical_zero_dim, MonomialOrder, ReducedGB,
};
use crate::par::Exec;

/// `y = A·x` with `A` the identity except for the first row `(1, j, j², …)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChangeOfVariables {
    pub j: u64,
    pub a: QMatrix<Rational>,
    pub ainv: QMatrix<Rational>,
}

impl ChangeOfVariables {
    pub fn new(j: u64, n: usize) -> Self {
        let mut a = QMatrix::identity(n);
        let mut ainv = QMatrix::identity(n);
        let jq = Rational::from_integer(j.into());
        let mut pw = Rational::one();
        for k in 1..n {
            pw = &pw * &jq;
            a.set(0, k, pw.clone());
            ainv.set(0, k, -pw.clone());
        }
        ChangeOfVariables { j, a, ainv }
    }

    pub fn is_identity(&self) -> bool {
        self.j == 0 || self.a.rows() == 1
    }
}

/// Univariate representation of a zero-dimensional radical ideal.
#[derive(Clone, Debug)]
pub struct UnivariateRep {
    pub cov: ChangeOfVariables,
    pub w: UPoly,
    /// `v[0] = t`; `y_i = v[i](t)` on the variety.
    pub v: Vec<UPoly>,
    pub nvars: usize,
    /// Reduced lex basis of the transformed radical ideal.
    pub lex_basis: ReducedGB,
}

impl UnivariateRep {
    /// Original coordinates `A⁻¹·v(t)`, each reduced mod `w`.
    pub fn point(&self) -> Vec<UPoly> {
        let n = self.nvars;
        (0..n)
            .map(|i| {
                let mut acc = UPoly::zero();
                for k in 0..n {
                    let c = self.cov.ainv.get(i, k);
                    if !c.is_zero() {
                        acc = &acc + &self.v[k].scale(c);
                    }
                }
                acc.rem(&self.w).unwrap_or(acc)
            })
            .collect()
    }

    /// Composes `p` (in the original variables) with the point curve, mod `w`.
    pub fn compose(&self, p: &MPoly) -> UPoly {
        p.compose_univariate(&self.point(), Some(&self.w))
    }

    /// Exact certificate: every generator vanishes identically on the curve mod `w`.
    pub fn certifies(&self, gens: &[MPoly]) -> bool {
        let pt = self.point();
        gens.iter().all(|g| g.compose_univariate(&pt, Some(&self.w)).is_zero())
    }

    pub fn deg_w(&self) -> usize {
        self.w.deg().unwrap_or(0)
    }
}

/// Recognizes `{w(x1), x2 − v2(x1), …, xn − vn(x1)}` in a lex basis with `x1 < … < xn`.
pub fn is_shape_position(g: &ReducedGB) -> Option<(UPoly, Vec<UPoly>)> {
    let n = g.nvars();
    if n == 0 || g.len() != n || *g.order() != MonomialOrder::lex(n) {
        return None;
    }
    let gens = g.generators();
    let w = gens[0].to_upoly(0)?;
    if w.is_constant() {
        return None;
    }
    let mut v = vec![UPoly::t()];
    for (i, gi) in gens.iter().enumerate().skip(1) {
        let xi = MPoly::var(n, i);
        let rest = gi - &xi;
        let vi = rest.to_upoly(0)?;
        v.push(-&vi);
    }
    Some((w.monic(), v))
}

/// Substitutes `x = A⁻¹y` into each generator.
fn transform(gens: &[MPoly], cov: &ChangeOfVariables) -> Result<Vec<MPoly>> {
    if cov.is_identity() {
        return Ok(gens.to_vec());
    }
    gens.iter().map(|g| g.substitute_linear(&cov.ainv)).collect()
}

fn radical_lex(gens: &[MPoly], n: usize) -> Result<ReducedGB> {
    let grev = buchberger(gens, &MonomialOrder::grevlex(n))?;
    if !is_zero_dimensional(&grev) {
        return Err(Error::PositiveDimensional);
    }
    let rad = radical_zero_dim(&grev)?;
    fglm(&rad, &MonomialOrder::lex(n))
}

fn attempt(gens: &[MPoly], n: usize, j: u64) -> Result<Option<UnivariateRep>> {
    let cov = ChangeOfVariables::new(j, n);
    let lex = radical_lex(&transform(gens, &cov)?, n)?;
    Ok(is_shape_position(&lex).map(|(w, v)| UnivariateRep {
        cov,
        w,
        v,
        nvars: n,
        lex_basis: lex,
    }))
}

/// Loops `j = 0, 1, 2, …` until the transformed radical ideal is in shape position.
///
/// `gens` generate the critical ideal in the original variables; substituting
/// `x = A⁻¹y` into them generates the same ideal as the gradient of the
/// transformed function.
pub fn separating_representation(gens: &[MPoly], exec: Exec) -> Result<UnivariateRep> {
    let n = gens
        .first()
        .map(MPoly::nvars)
        .ok_or_else(|| Error::Precondition("empty generator list".into()))?;
    if gens.iter().any(|g| g.nvars() != n) {
        return Err(Error::Dimension("generators with different variable counts".into()));
    }
    let base = radical_lex(gens, n)?;
    if base.is_unit() {
        return Ok(UnivariateRep {
            cov: ChangeOfVariables::new(0, n),
            w: UPoly::one(),
            v: std::iter::once(UPoly::t())
                .chain(std::iter::repeat_n(UPoly::zero(), n - 1))
                .collect(),
            nvars: n,
            lex_basis: base,
        });
    }
    if let Some((w, v)) = is_shape_position(&base) {
        return Ok(UnivariateRep {
            cov: ChangeOfVariables::new(0, n),
            w,
            v,
            nvars: n,
            lex_basis: base,
        });
    }
    let delta = quotient_basis(&base)?.len() as u64;
    let bound = (n as u64 - 1) * delta * delta.saturating_sub(1) / 2;
    let batch = exec.width().max(1) as u64;
    let mut j = 1;
    while j <= bound {
        let hi = (j + batch - 1).min(bound);
        let js: Vec<u64> = (j..=hi).collect();
        let results = exec.map_collect(&js, |&jj| attempt(gens, n, jj));
        for r in results {
            if let Some(rep) = r? {
                return Ok(rep);
            }
        }
        j = hi + 1;
    }
    Err(Error::Internal(format!(
        "no separating change of variables with j <= {bound}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::{parse_mpoly, parse_upoly, parse_with_names};

    fn p(s: &str, n: usize) -> MPoly {
        parse_mpoly(s, n).unwrap()
    }

    #[test]
    fn inverse_matrix_is_exact() {
        for n in 1..5 {
            for j in 0..4 {
                let c = ChangeOfVariables::new(j, n);
                assert_eq!(c.a.try_mul(&c.ainv).unwrap(), QMatrix::identity(n));
            }
        }
    }

    #[test]
    fn shape_recognition() {
        let g = buchberger(&[p("x1^3 - x1", 2), p("x2 - x1", 2)], &MonomialOrder::lex(2)).unwrap();
        let (w, v) = is_shape_position(&g).unwrap();
        assert_eq!(w, parse_upoly("t^3 - t").unwrap());
        assert_eq!(v, vec![UPoly::t(), UPoly::t()]);
        let g = buchberger(&[p("x1", 2), p("x2^3 - x2", 2)], &MonomialOrder::lex(2)).unwrap();
        assert!(is_shape_position(&g).is_none());
        let g = buchberger(&[p("x1", 3), p("x2", 3), p("x3", 3)], &MonomialOrder::lex(3)).unwrap();
        let (w, v) = is_shape_position(&g).unwrap();
        assert_eq!(w, UPoly::t());
        assert!(v[1].is_zero() && v[2].is_zero());
    }

    #[test]
    fn separating_change_for_collinear_points() {
        let f = p("x1^2 + x2^4 - 2*x2^2", 2);
        let rep = separating_representation(&f.gradient(), Exec::Sequential).unwrap();
        assert_eq!(rep.cov.j, 1);
        assert_eq!(
            rep.cov.a,
            QMatrix::new(
                2,
                2,
                vec![1.into(), 1.into(), 0.into(), 1.into()]
                    .into_iter()
                    .map(Rational::from_integer)
                    .collect()
            )
            .unwrap()
        );
        assert_eq!(rep.w, parse_upoly("t^3 - t").unwrap());
        assert_eq!(rep.v[1], UPoly::t());
        assert_eq!(rep.point(), vec![UPoly::zero(), UPoly::t()]);
        assert!(rep.certifies(&f.gradient()));
        let par = separating_representation(&f.gradient(), Exec::Parallel).unwrap();
        assert_eq!(par.cov.j, 1);
    }

    #[test]
    fn single_critical_point_is_separated() {
        let f = p("(x1 - 1)^2 + (x2 - 2)^2 + (x3 - 3)^2", 3);
        let rep = separating_representation(&f.gradient(), Exec::Sequential).unwrap();
        assert_eq!(rep.cov.j, 0);
        assert_eq!(rep.w, parse_upoly("t - 1").unwrap());
        assert!(rep.certifies(&f.gradient()));
    }

    #[test]
    fn circle_lagrangian_needs_no_change() {
        let names = vec!["x1".to_string(), "x2".into(), "lambda1".into()];
        let l = parse_with_names(
            "100*x1^4 - 200*x1^2*x2 + x1^2 + 100*x2^2 - 2*x1 + 1 + lambda1*(x1^2 + x2^2 - 1)",
            &names,
        )
        .unwrap();
        let rep = separating_representation(&l.gradient(), Exec::Sequential).unwrap();
        assert_eq!(rep.cov.j, 0);
        assert!(rep.cov.is_identity());
        assert_eq!(rep.deg_w(), 8);
        assert!(rep.certifies(&l.gradient()));
    }

    #[test]
    fn positive_dimensional_is_rejected() {
        let f = p("(x1 - x2)^2", 2);
        assert_eq!(
            separating_representation(&f.gradient(), Exec::Sequential).unwrap_err(),
            Error::PositiveDimensional
        );
    }
}
