use super::ipoly::{reduce, IPoly};
use super::order::MonomialOrder;
use super::ReducedGB;
use crate::arith::{MPoly, Monomial};
use crate::error::{Error, Result};

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<'o> {
    ord: &'o MonomialOrder,
    polys: Vec<IPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl State<'_> {
    fn reducers(&self) -> Vec<&IPoly> {
        self.active.iter().map(|&k| &self.polys[k]).collect()
    }

    /// Gebauer–Möller update with the new polynomial `h`.
    fn update(&mut self, h: IPoly) {
        let hi = self.polys.len();
        let hlm = h.lm().clone();
        self.polys.push(h);

        let mut cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let glm = self.polys[g].lm();
                (g, hlm.lcm(glm), hlm.is_coprime(glm))
            })
            .collect();
        // drop (h, g1) when another (h, g2) has a strictly dividing or equal lcm
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if cands[a].2 {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cands[b].1.divides(&cands[a].1) && (cands[b].1 != cands[a].1 || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut new_pairs: Vec<Pair> = Vec::new();
        for (k, (g, lcm, coprime)) in cands.drain(..).enumerate() {
            if keep[k] && !coprime {
                new_pairs.push(Pair { i: g, j: hi, lcm });
            }
        }

        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let l1 = polys[p.i].lm().lcm(&hlm);
            let l2 = polys[p.j].lm().lcm(&hlm);
            l1 == p.lcm || l2 == p.lcm
        });
        self.pairs.extend(new_pairs);

        self.active.retain(|&g| !hlm.divides(polys[g].lm()));
        self.active.push(hi);
    }

    fn select(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.lcm
                .degree()
                .cmp(&pb.lcm.degree())
                .then_with(|| ord.cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[MPoly], order: &MonomialOrder) -> Result<ReducedGB> {
    let nvars = order.nvars();
    if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::Dimension(format!(
            "generator in {} variables, order on {nvars}",
            g.nvars()
        )));
    }
    let mut st = State {
        ord: order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut inputs: Vec<IPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| IPoly::from_mpoly(g, order).0)
        .collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for f in inputs {
        let h = reduce(f, &st.reducers(), order, true, None);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(ReducedGB::unit(order.clone()));
        }
        st.update(h);
    }
    while let Some(p) = st.select() {
        let s = IPoly::spoly(&st.polys[p.i], &st.polys[p.j], order);
        let h = reduce(s, &st.reducers(), order, true, None);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(ReducedGB::unit(order.clone()));
        }
        st.update(h);
    }
    let basis: Vec<IPoly> = st.active.iter().map(|&k| st.polys[k].clone()).collect();
    Ok(ReducedGB::from_ipolys(interreduce(basis, order), order.clone()))
}

/// Tail-reduces a minimal basis against itself.
pub(crate) fn interreduce(mut basis: Vec<IPoly>, order: &MonomialOrder) -> Vec<IPoly> {
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for k in 0..basis.len() {
        let g = std::mem::replace(&mut basis[k], IPoly::zero());
        let others: Vec<&IPoly> = basis.iter().filter(|p| !p.is_zero()).collect();
        basis[k] = reduce(g, &others, order, true, None);
    }
    basis
}
