//! Multiplying a realized permutation by a transposition as an exchange of two
//! matched edges around a 4-cycle of the bipartite graph.
//!
//! If `p` is realized as a perfect matching and `psi = (i,k)`, let `a` and `t`
//! be the preimages of `i` and `k` under `p`. The matching of `p * psi` is the
//! matching of `p` with `v_a w_i, v_t w_k` replaced by `v_a w_k, v_t w_i`; the
//! four edges close the cycle `(v_a, w_i, v_t, w_k)`.

use crate::bipartite::{contains_matching, perm_to_matching, BipartiteGraph, Edge};
use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FourCycleWitness {
    pub i: usize,
    pub k: usize,
    pub a: usize,
    pub t: usize,
}

impl FourCycleWitness {
    /// The alternate edges covered by `E(p)`.
    pub fn edges_pi(&self) -> [Edge; 2] {
        [Edge::new(self.a, self.i), Edge::new(self.t, self.k)]
    }

    /// The alternate edges covered by `E(p * psi)`.
    pub fn edges_pi_psi(&self) -> [Edge; 2] {
        [Edge::new(self.a, self.k), Edge::new(self.t, self.i)]
    }

    /// Cycle vertices in traversal order `v_a, w_i, v_t, w_k`, tagged by side.
    pub fn cycle(&self) -> [(char, usize); 4] {
        [('v', self.a), ('w', self.i), ('v', self.t), ('w', self.k)]
    }

    /// All four edges in cycle order.
    pub fn cycle_edges(&self) -> [Edge; 4] {
        [
            Edge::new(self.a, self.i),
            Edge::new(self.t, self.i),
            Edge::new(self.t, self.k),
            Edge::new(self.a, self.k),
        ]
    }
}

fn swap_points(psi: &Transposition, n: usize) -> Result<(usize, usize)> {
    match *psi {
        Transposition::Identity => Err(Error::IdentityTransposition(
            "multiplying by I involves no 4-cycle",
        )),
        Transposition::Swap { i, k } if i >= 1 && i < k && k <= n => Ok((i, k)),
        Transposition::Swap { i, k } => Err(Error::InvalidTransposition { i, k, n }),
    }
}

pub fn four_cycle(p: &Permutation, psi: &Transposition) -> Result<FourCycleWitness> {
    let (i, k) = swap_points(psi, p.n())?;
    Ok(FourCycleWitness {
        i,
        k,
        a: p.preimage(i),
        t: p.preimage(k),
    })
}

/// Whether `g`, which already realizes `p`, also realizes `p * psi`.
pub fn is_product_realized(g: &BipartiteGraph, p: &Permutation, psi: &Transposition) -> Result<bool> {
    if !contains_matching(g, &perm_to_matching(p))? {
        return Err(Error::HypothesisUnmet(format!(
            "{p} is not realized as a perfect matching of the graph"
        )));
    }
    let witness = four_cycle(p, psi)?;
    Ok(witness.edges_pi_psi().iter().all(|&e| g.has_edge(e)))
}

/// The edge pair `(v_i w_k, v_t w_i)` for `p` in `G^(i)` and `psi = (i,k)` in `U_i`,
/// where `t` is the preimage of `k` under `p`.
pub fn ep(p: &Permutation, psi: &Transposition) -> Result<(Edge, Edge)> {
    let (i, k) = swap_points(psi, p.n())?;
    if !p.fixes_prefix(i) {
        return Err(Error::NotInStabilizer { level: i });
    }
    let t = p.preimage(k);
    Ok((Edge::new(i, k), Edge::new(t, i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::EdgeSet;
    use crate::perm::Transposition::Swap;

    fn cyc(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    fn set(edges: &[Edge]) -> EdgeSet {
        edges.iter().copied().collect()
    }

    fn e(v: usize, w: usize) -> Edge {
        Edge::new(v, w)
    }

    #[test]
    fn five_cycle_times_swap() {
        let p = cyc("(1,2,4,3,5)", 5);
        let w = four_cycle(&p, &Swap { i: 2, k: 3 }).unwrap();
        assert_eq!(w.cycle(), [('v', 1), ('w', 2), ('v', 4), ('w', 3)]);
        assert_eq!(set(&w.edges_pi()), set(&[e(1, 2), e(4, 3)]));
        assert_eq!(set(&w.edges_pi_psi()), set(&[e(1, 3), e(4, 2)]));

        let mut exchanged = perm_to_matching(&p).pairs().clone();
        for edge in w.edges_pi() {
            assert!(exchanged.remove(&edge));
        }
        exchanged.extend(w.edges_pi_psi());
        let product = p.compose(&cyc("(2,3)", 5)).unwrap();
        assert_eq!(product, cyc("(1,3,5)(2,4)", 5));
        assert_eq!(&exchanged, perm_to_matching(&product).pairs());
    }

    #[test]
    fn identity_times_swap() {
        let w = four_cycle(&Permutation::identity(5), &Swap { i: 2, k: 3 }).unwrap();
        assert_eq!(w.cycle(), [('v', 2), ('w', 2), ('v', 3), ('w', 3)]);
        assert_eq!(set(&w.edges_pi()), set(&[e(2, 2), e(3, 3)]));
        assert_eq!(set(&w.edges_pi_psi()), set(&[e(2, 3), e(3, 2)]));
    }

    #[test]
    fn identity_multiplier_rejected() {
        let p = Permutation::identity(3);
        assert!(matches!(
            four_cycle(&p, &Transposition::Identity),
            Err(Error::IdentityTransposition(_))
        ));
        assert!(ep(&p, &Transposition::Identity).is_err());
        assert!(four_cycle(&p, &Swap { i: 2, k: 4 }).is_err());
    }

    #[test]
    fn realization_on_swapped_diagonal_graph() {
        let edges = [(1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (2, 3), (3, 2)].map(Edge::from);
        let mut g = BipartiteGraph::from_edges(5, edges).unwrap();
        let id = Permutation::identity(5);
        let psi = Swap { i: 2, k: 3 };
        assert!(is_product_realized(&g, &id, &psi).unwrap());
        g.remove_edge(e(3, 2));
        assert!(!is_product_realized(&g, &id, &psi).unwrap());
        assert!(is_product_realized(&BipartiteGraph::complete(5).unwrap(), &cyc("(1,5,2)", 5), &psi).unwrap());
    }

    #[test]
    fn realization_requires_realized_multiplicand() {
        let g = BipartiteGraph::from_edges(3, [(1, 1), (2, 2)].map(Edge::from)).unwrap();
        assert!(matches!(
            is_product_realized(&g, &Permutation::identity(3), &Swap { i: 1, k: 2 }),
            Err(Error::HypothesisUnmet(_))
        ));
    }

    #[test]
    fn ep_examples() {
        assert_eq!(
            ep(&cyc("(2,4,3)", 4), &Swap { i: 1, k: 2 }).unwrap(),
            (e(1, 2), e(3, 1))
        );
        assert_eq!(ep(&Permutation::identity(4), &Swap { i: 2, k: 3 }).unwrap(), (e(2, 3), e(3, 2)));
        assert_eq!(ep(&cyc("(3,4)", 4), &Swap { i: 2, k: 4 }).unwrap(), (e(2, 4), e(3, 2)));
        assert_eq!(
            ep(&cyc("(1,3)", 4), &Swap { i: 2, k: 3 }),
            Err(Error::NotInStabilizer { level: 2 })
        );
    }
}
