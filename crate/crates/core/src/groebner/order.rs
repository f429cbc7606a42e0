use std::cmp::Ordering;

use crate::arith::{MPoly, Monomial, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GrevLex,
}

/// Monomial order together with a variable ranking.
///
/// `ranking[k]` is the variable of rank `k`, rank 0 being the smallest, so the
/// default ranking gives `x1 < x2 < … < xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    ranking: Vec<usize>,
}

impl MonomialOrder {
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            ranking: (0..nvars).collect(),
        }
    }

    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::GrevLex,
            ranking: (0..nvars).collect(),
        }
    }

    pub fn with_ranking(kind: OrderKind, ranking: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; ranking.len()];
        for &v in &ranking {
            if v >= seen.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Dimension(format!("{ranking:?} is not a permutation")));
            }
        }
        Ok(MonomialOrder { kind, ranking })
    }

    pub fn nvars(&self) -> usize {
        self.ranking.len()
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    /// Same ranking, different kind.
    pub fn with_kind(&self, kind: OrderKind) -> Self {
        MonomialOrder {
            kind,
            ranking: self.ranking.clone(),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exps(a.exps(), b.exps())
    }

    pub fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in self.ranking.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                if da != db {
                    return da.cmp(&db);
                }
                for &v in &self.ranking {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => {}
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Leading term of `p`, `None` for the zero polynomial.
    pub fn leading<'a>(&self, p: &'a MPoly) -> Option<(&'a Monomial, &'a Rational)> {
        p.terms().max_by(|x, y| self.cmp(x.0, y.0))
    }
}
