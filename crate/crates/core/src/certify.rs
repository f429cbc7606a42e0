//! Exact definiteness tests for Hessian curves at real roots of `w`.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::arith::{MPoly, QMatrix, UPoly};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::realroots::{sign_at, AlgebraicNumber, Sign};
use crate::shape::UnivariateRep;

/// Which matrix represents the Hessian along the critical curve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum HessianConvention {
    /// `∇²f` evaluated at `A⁻¹v(t)`.
    #[default]
    Direct,
    /// `Bᵀ·∇²f(A⁻¹v(t))·B`, `B` the x-block of `A⁻¹`.
    Congruent,
}

impl std::str::FromStr for HessianConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(HessianConvention::Direct),
            "congruent" => Ok(HessianConvention::Congruent),
            other => Err(Error::Precondition(format!("unknown Hessian convention `{other}`"))),
        }
    }
}

fn reduce_matrix(m: &QMatrix<UPoly>, w: &UPoly) -> QMatrix<UPoly> {
    m.map(|e| e.rem(w).unwrap_or_else(|_| e.clone()))
}

fn x_block_of_ainv(rep: &UnivariateRep, n: usize) -> QMatrix<UPoly> {
    QMatrix::from_fn(n, n, |i, j| UPoly::constant(rep.cov.ainv.get(i, j).clone()))
}

fn leading_minors(h: &QMatrix<UPoly>, w: &UPoly) -> Vec<UPoly> {
    (1..=h.rows())
        .map(|k| {
            let d = h.leading(k).determinant().expect("square");
            d.rem(w).unwrap_or(d)
        })
        .collect()
}

/// `H(t)` with entries reduced mod `w`, plus its leading principal minors.
#[derive(Clone, Debug)]
pub struct HessianCurve {
    pub h: QMatrix<UPoly>,
    pub w: UPoly,
    pub convention: HessianConvention,
    minors: Vec<UPoly>,
}

impl HessianCurve {
    /// Wraps a symmetric matrix of polynomials; entries are reduced mod `w`.
    pub fn new(h: QMatrix<UPoly>, w: UPoly, convention: HessianConvention) -> Self {
        let h = reduce_matrix(&h, &w);
        let minors = leading_minors(&h, &w);
        HessianCurve {
            h,
            w,
            convention,
            minors,
        }
    }

    pub fn n(&self) -> usize {
        self.h.rows()
    }

    /// `det H(t)` mod `w`.
    pub fn determinant(&self) -> UPoly {
        self.minors.last().cloned().unwrap_or_else(UPoly::one)
    }

    pub fn minors(&self) -> &[UPoly] {
        &self.minors
    }
}

/// Hessian of `f` in its first `n` variables along the curve of `rep`.
pub fn hessian_curve(f: &MPoly, rep: &UnivariateRep, n: usize, convention: HessianConvention) -> HessianCurve {
    let xs: Vec<usize> = (0..n).collect();
    let pt = rep.point();
    let hf = f.hessian(&xs);
    let mut h = hf.map(|e| e.compose_univariate(&pt, Some(&rep.w)));
    if convention == HessianConvention::Congruent && !rep.cov.is_identity() {
        let b = x_block_of_ainv(rep, n);
        h = b
            .transpose()
            .try_mul(&h)
            .and_then(|m| m.try_mul(&b))
            .expect("square blocks");
        h = reduce_matrix(&h, &rep.w);
    }
    let minors = leading_minors(&h, &rep.w);
    HessianCurve {
        h,
        w: rep.w.clone(),
        convention,
        minors,
    }
}

/// Constraint Jacobian `C(t)` (m×n) mod `w`.
#[derive(Clone, Debug)]
pub struct JacobianCurve {
    pub c: QMatrix<UPoly>,
    pub w: UPoly,
}

impl JacobianCurve {
    pub fn new(c: QMatrix<UPoly>, w: UPoly) -> Self {
        JacobianCurve {
            c: reduce_matrix(&c, &w),
            w,
        }
    }

    pub fn m(&self) -> usize {
        self.c.rows()
    }
}

/// Jacobian of `h` in the first `n` variables along the curve of `rep`.
pub fn jacobian_curve(h: &[MPoly], rep: &UnivariateRep, n: usize, convention: HessianConvention) -> JacobianCurve {
    let pt = rep.point();
    let mut c = QMatrix::from_fn(h.len(), n, |j, i| {
        h[j].extend(rep.nvars)
            .derivative(i)
            .compose_univariate(&pt, Some(&rep.w))
    });
    if convention == HessianConvention::Congruent && !rep.cov.is_identity() && !h.is_empty() {
        c = c.try_mul(&x_block_of_ainv(rep, n)).expect("conformable");
        c = reduce_matrix(&c, &rep.w);
    }
    JacobianCurve { c, w: rep.w.clone() }
}

/// Outcome of a definiteness test at one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    PositiveDefinite,
    /// Nonsingular and not positive definite; `witness` is the first minor with sign ≤ 0.
    NotPositiveDefinite {
        witness: usize,
        sign: Sign,
    },
    /// A zero minor with a singular matrix: second-order test inconclusive.
    Degenerate {
        witness: usize,
    },
    /// No nonsingular m×m block in `C(α)`.
    RankDeficient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Signs of the minors used, in order (leading minors, or bordered minors `D_{2m+1..m+n}`).
    pub signs: Vec<Sign>,
    /// Columns moved to the front of `C` for the bordered test.
    pub pivot_columns: Vec<usize>,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn is_pd(&self) -> bool {
        self.verdict == Verdict::PositiveDefinite
    }
}

fn classify(signs: Vec<Sign>, target: Sign, pivot_columns: Vec<usize>) -> Certificate {
    let verdict = match signs.iter().position(|&s| s != target) {
        None => Verdict::PositiveDefinite,
        Some(k) => {
            if signs.last() == Some(&Sign::Zero) {
                Verdict::Degenerate { witness: k }
            } else {
                Verdict::NotPositiveDefinite {
                    witness: k,
                    sign: signs[k],
                }
            }
        }
    };
    Certificate {
        signs,
        pivot_columns,
        verdict,
    }
}

/// Sylvester's criterion at `a`.
pub fn certify_pd_at(hc: &HessianCurve, a: &AlgebraicNumber) -> Certificate {
    let signs = hc.minors.iter().map(|m| sign_at(m, a)).collect();
    classify(signs, Sign::Positive, Vec::new())
}

pub fn is_pd_at(hc: &HessianCurve, a: &AlgebraicNumber) -> bool {
    certify_pd_at(hc, a).is_pd()
}

/// Bordered-Hessian minors for one choice of leading columns of `C`.
#[derive(Debug)]
struct BorderedMinors {
    pivot_det: UPoly,
    minors: Vec<UPoly>,
}

/// Decides positive definiteness of `H` on `ker C` at roots of `w`.
#[derive(Debug)]
pub struct BorderedTest<'a> {
    hc: &'a HessianCurve,
    cc: &'a JacobianCurve,
    cache: Mutex<HashMap<Vec<usize>, std::sync::Arc<BorderedMinors>>>,
}

fn column_subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    rec(0, n, m, &mut cur, &mut out);
    out
}

impl<'a> BorderedTest<'a> {
    pub fn new(hc: &'a HessianCurve, cc: &'a JacobianCurve) -> Self {
        BorderedTest {
            hc,
            cc,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn minors_for(&self, cols: &[usize]) -> std::sync::Arc<BorderedMinors> {
        if let Some(b) = self.cache.lock().unwrap().get(cols) {
            return b.clone();
        }
        let (m, n) = (self.cc.m(), self.hc.n());
        let w = &self.hc.w;
        let mut perm: Vec<usize> = cols.to_vec();
        perm.extend((0..n).filter(|i| !cols.contains(i)));
        let size = m + n;
        let b = QMatrix::from_fn(size, size, |r, c| match (r < m, c < m) {
            (true, true) => UPoly::zero(),
            (true, false) => self.cc.c.get(r, perm[c - m]).clone(),
            (false, true) => self.cc.c.get(c, perm[r - m]).clone(),
            (false, false) => self.hc.h.get(perm[r - m], perm[c - m]).clone(),
        });
        let pivot = QMatrix::from_fn(m, m, |r, c| self.cc.c.get(r, cols[c]).clone());
        let pd = pivot.determinant().expect("square");
        let minors = (2 * m + 1..=size)
            .map(|k| {
                let d = b.leading(k).determinant().expect("square");
                d.rem(w).unwrap_or(d)
            })
            .collect();
        let entry = std::sync::Arc::new(BorderedMinors {
            pivot_det: pd.rem(w).unwrap_or(pd),
            minors,
        });
        self.cache.lock().unwrap().insert(cols.to_vec(), entry.clone());
        entry
    }

    pub fn certify(&self, a: &AlgebraicNumber) -> Certificate {
        let (m, n) = (self.cc.m(), self.hc.n());
        if m == 0 {
            return certify_pd_at(self.hc, a);
        }
        if m > n {
            return Certificate {
                signs: Vec::new(),
                pivot_columns: Vec::new(),
                verdict: Verdict::RankDeficient,
            };
        }
        for cols in column_subsets(n, m) {
            let bm = self.minors_for(&cols);
            if sign_at(&bm.pivot_det, a) == Sign::Zero {
                continue;
            }
            let signs = bm.minors.iter().map(|d| sign_at(d, a)).collect();
            let target = if m % 2 == 0 { Sign::Positive } else { Sign::Negative };
            return classify(signs, target, cols);
        }
        Certificate {
            signs: Vec::new(),
            pivot_columns: Vec::new(),
            verdict: Verdict::RankDeficient,
        }
    }
}

pub fn is_pd_on_nullspace_at(hc: &HessianCurve, cc: &JacobianCurve, a: &AlgebraicNumber) -> bool {
    BorderedTest::new(hc, cc).certify(a).is_pd()
}

/// Certifies every root, possibly in parallel; output follows root order.
pub fn certify_roots(
    hc: &HessianCurve,
    cc: Option<&JacobianCurve>,
    roots: &[AlgebraicNumber],
    exec: Exec,
) -> Vec<Certificate> {
    match cc {
        Some(cc) if cc.m() > 0 => {
            let test = BorderedTest::new(hc, cc);
            exec.map_collect(roots, |a| test.certify(a))
        }
        _ => exec.map_collect(roots, |a| certify_pd_at(hc, a)),
    }
}

/// Signs of `det_p` at every root; the determinant condition holds when none is zero.
pub fn det_signs(det_p: &UPoly, roots: &[AlgebraicNumber], exec: Exec) -> Vec<Sign> {
    exec.map_collect(roots, |a| sign_at(det_p, a))
}

pub fn det_nonvanishing_on_critical(det_p: &UPoly, roots: &[AlgebraicNumber]) -> bool {
    !det_p.is_zero() && roots.iter().all(|a| sign_at(det_p, a) != Sign::Zero)
}
