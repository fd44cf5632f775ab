//! Brute-force evaluation of closed planar graphs, used to cross-check the
//! sweep evaluator on small inputs.
//!
//! Every edge carries `p₂ = 1 - e/δ` on its two strands; every vertex joins
//! neighbouring legs by one strand. Expanding all projectors gives `2^E`
//! closed Temperley-Lieb diagrams, each a product of loops.

use crate::error::{Error, Result};
use crate::forest::Tree;
use crate::skein::poly::RatFn;
use crate::skein::scalar::Coeff;
use crate::Vacuum;

/// Largest number of edges accepted by [`PlanarGraph::evaluate`].
pub const MAX_EDGES: usize = 24;

/// A closed planar graph given by a rotation system.
#[derive(Clone, Debug)]
pub struct PlanarGraph {
    /// Half-edges around each vertex, counterclockwise.
    rotation: Vec<Vec<usize>>,
    /// The opposite half-edge on the same edge.
    opposite: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub vertices: usize,
    pub trivalent: usize,
    pub edges: usize,
    pub terms: u64,
}

impl PlanarGraph {
    pub fn new(rotation: Vec<Vec<usize>>, opposite: Vec<usize>) -> Self {
        PlanarGraph { rotation, opposite }
    }

    pub fn edges(&self) -> usize {
        self.opposite.len() / 2
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            vertices: self.rotation.len(),
            trivalent: self.trivalent(),
            edges: self.edges(),
            terms: 1u64 << self.edges(),
        }
    }

    pub fn trivalent(&self) -> usize {
        self.rotation.iter().filter(|r| r.len() == 3).count()
    }

    /// Removes bivalent vertices sitting between two distinct edges.
    pub fn contract_bivalent(&mut self) {
        loop {
            let Some(v) = self.rotation.iter().position(|r| {
                r.len() == 2 && self.opposite[r[0]] != r[1]
            }) else {
                break;
            };
            let (h1, h2) = (self.rotation[v][0], self.rotation[v][1]);
            let (o1, o2) = (self.opposite[h1], self.opposite[h2]);
            self.opposite[o1] = o2;
            self.opposite[o2] = o1;
            self.rotation.remove(v);
            self.renumber(&[h1, h2]);
        }
    }

    fn renumber(&mut self, dead: &[usize]) {
        let n = self.opposite.len();
        let mut map = vec![usize::MAX; n];
        let mut next = 0;
        for (h, slot) in map.iter_mut().enumerate() {
            if !dead.contains(&h) {
                *slot = next;
                next += 1;
            }
        }
        let mut opposite = vec![0; next];
        for h in 0..n {
            if map[h] != usize::MAX {
                opposite[map[h]] = map[self.opposite[h]];
            }
        }
        self.opposite = opposite;
        for r in &mut self.rotation {
            for h in r.iter_mut() {
                *h = map[*h];
            }
        }
    }

    /// Sum over all `2^E` projector expansions of `δ^loops (-1/δ)^#e`.
    pub fn evaluate<C: Coeff>(&self, delta: &C, neg_inv_delta: &C) -> Result<C> {
        let e = self.edges();
        if e > MAX_EDGES {
            return Err(Error::CapExceeded {
                what: "oracle edges",
                limit: MAX_EDGES,
                reached: e,
            });
        }
        let h = self.opposite.len();
        // ports: 2h = counterclockwise side of half-edge h, 2h+1 = clockwise side
        let mut at_vertex = vec![0usize; 2 * h];
        for r in &self.rotation {
            let k = r.len();
            for i in 0..k {
                let a = 2 * r[i];
                let b = 2 * r[(i + 1) % k] + 1;
                at_vertex[a] = b;
                at_vertex[b] = a;
            }
        }
        let edge_list: Vec<(usize, usize)> = (0..h)
            .filter(|&x| x < self.opposite[x])
            .map(|x| (x, self.opposite[x]))
            .collect();

        let max_loops = 2 * h;
        let mut dpow = vec![C::one()];
        for _ in 0..max_loops {
            let next = dpow.last().unwrap().times(delta);
            dpow.push(next);
        }
        let mut wpow = vec![C::one()];
        for _ in 0..e {
            let next = wpow.last().unwrap().times(neg_inv_delta);
            wpow.push(next);
        }

        let mut along = vec![0usize; 2 * h];
        let mut seen = vec![false; 2 * h];
        let mut acc = C::zero();
        for mask in 0u64..(1u64 << e) {
            for (j, &(x, y)) in edge_list.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    along[2 * x] = 2 * x + 1;
                    along[2 * x + 1] = 2 * x;
                    along[2 * y] = 2 * y + 1;
                    along[2 * y + 1] = 2 * y;
                } else {
                    along[2 * x] = 2 * y + 1;
                    along[2 * y + 1] = 2 * x;
                    along[2 * x + 1] = 2 * y;
                    along[2 * y] = 2 * x + 1;
                }
            }
            seen.iter_mut().for_each(|s| *s = false);
            let mut loops = 0;
            for s in 0..2 * h {
                if seen[s] {
                    continue;
                }
                loops += 1;
                let mut cur = s;
                loop {
                    seen[cur] = true;
                    let x = along[cur];
                    seen[x] = true;
                    cur = at_vertex[x];
                    if cur == s {
                        break;
                    }
                }
            }
            acc.accumulate(&dpow[loops].times(&wpow[mask.count_ones() as usize]));
        }
        Ok(acc)
    }
}

/// Builds a graph slot by slot.
#[derive(Default)]
struct Builder {
    slots: Vec<Vec<Option<usize>>>,
    opposite: Vec<usize>,
}

impl Builder {
    fn vertex(&mut self, degree: usize) -> usize {
        self.slots.push(vec![None; degree]);
        self.slots.len() - 1
    }

    fn edge(&mut self, (u, i): (usize, usize), (v, j): (usize, usize)) {
        let h = self.opposite.len();
        self.opposite.push(h + 1);
        self.opposite.push(h);
        self.slots[u][i] = Some(h);
        self.slots[v][j] = Some(h + 1);
    }

    fn finish(self) -> PlanarGraph {
        let rotation = self
            .slots
            .into_iter()
            .map(|s| s.into_iter().map(|h| h.expect("unfilled slot")).collect())
            .collect();
        PlanarGraph::new(rotation, self.opposite)
    }
}

/// Adds a tree drawn upwards (`upwards = true`, root at the bottom) or downwards.
/// Returns the root slot and the leaf slots, left to right.
fn add_tree(b: &mut Builder, t: &Tree, upwards: bool, root_slot: bool) -> (Option<(usize, usize)>, Vec<(usize, usize)>) {
    let mut leaves = Vec::new();
    let root = add_node(b, t, upwards, root_slot, &mut leaves);
    (root, leaves)
}

// Counterclockwise slot order. Growing upwards: parent, right, left.
// Growing downwards: parent, left, right.
fn add_node(
    b: &mut Builder,
    t: &Tree,
    upwards: bool,
    has_parent: bool,
    leaves: &mut Vec<(usize, usize)>,
) -> Option<(usize, usize)> {
    match t {
        Tree::Leaf => {
            let v = b.vertex(2);
            leaves.push((v, 1));
            Some((v, 0))
        }
        Tree::Caret(l, r) => {
            let off = usize::from(has_parent);
            let v = b.vertex(2 + off);
            let (left_slot, right_slot) = if upwards { (off + 1, off) } else { (off, off + 1) };
            let lc = add_node(b, l, upwards, true, leaves).expect("child");
            b.edge((v, left_slot), lc);
            let rc = add_node(b, r, upwards, true, leaves).expect("child");
            b.edge((v, right_slot), rc);
            has_parent.then_some((v, 0))
        }
    }
}

/// The closed graph of `⟨gξ, ξ⟩` for `g = top/bottom` and `ξ` the vacuum.
/// The bottom tree grows upwards, the top tree downwards, leaves are joined.
/// For `Omega` the two roots are tied by one edge around the side; for `Psi`
/// the root carets become bivalent cups.
pub fn tree_pair_graph(top: &Tree, bottom: &Tree, mode: Vacuum) -> Result<PlanarGraph> {
    if top.leaf_count() != bottom.leaf_count() {
        return Err(Error::LeafCountMismatch {
            top: top.leaf_count(),
            bottom: bottom.leaf_count(),
        });
    }
    if mode == Vacuum::Psi && (top.is_leaf() || bottom.is_leaf()) {
        return Err(Error::PsiNeedsCaret);
    }
    let mut b = Builder::default();
    let with_root = mode == Vacuum::Omega;
    let (broot, bleaves) = add_tree(&mut b, bottom, true, with_root);
    let (troot, tleaves) = add_tree(&mut b, top, false, with_root);
    for (x, y) in bleaves.into_iter().zip(tleaves) {
        b.edge(x, y);
    }
    if let (Some(x), Some(y)) = (broot, troot) {
        b.edge(x, y);
    }
    let mut g = b.finish();
    g.contract_bivalent();
    Ok(g)
}

/// The theta graph: two trivalent vertices joined by three edges.
pub fn theta_graph() -> PlanarGraph {
    let mut b = Builder::default();
    let u = b.vertex(3);
    let v = b.vertex(3);
    // mirror images so the embedding is planar
    b.edge((u, 0), (v, 0));
    b.edge((u, 1), (v, 2));
    b.edge((u, 2), (v, 1));
    b.finish()
}

/// `λ = θ/d`, computed from the theta graph alone.
pub fn oracle_lambda() -> RatFn {
    let theta = theta_graph()
        .evaluate(&crate::skein::poly::Laurent::monomial(1, 1), &crate::skein::poly::Laurent::monomial(-1, -1))
        .expect("3 edges");
    &theta.to_ratfn() / &RatFn::d()
}

/// `⟨gξ, ξ⟩` for the vacuum `ξ`, exactly, by brute force.
pub fn brute_coefficient_exact(top: &Tree, bottom: &Tree, mode: Vacuum) -> Result<RatFn> {
    let g = tree_pair_graph(top, bottom, mode)?;
    let raw = g.evaluate(
        &crate::skein::poly::Laurent::monomial(1, 1),
        &crate::skein::poly::Laurent::monomial(-1, -1),
    )?;
    let v = g.trivalent();
    let norm = &oracle_lambda().pow((v / 2) as i32)? * &RatFn::d();
    Ok(&raw.to_ratfn() / &norm)
}

/// `⟨gξ, ξ⟩` at a numeric δ, by brute force.
pub fn brute_coefficient_numeric(top: &Tree, bottom: &Tree, mode: Vacuum, delta: f64) -> Result<f64> {
    let g = tree_pair_graph(top, bottom, mode)?;
    let raw = g.evaluate(&delta, &(-1.0 / delta))?;
    let d = delta * delta - 1.0;
    let theta = theta_graph().evaluate(&delta, &(-1.0 / delta))?;
    let lambda = theta / d;
    Ok(raw / (lambda.powf(g.trivalent() as f64 / 2.0) * d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    #[test]
    fn theta_value() {
        // θ(2,2,2) = [4][3]/[2]² in quantum integers; with δ = 2 that is 4·3/4 = 3
        let th = theta_graph().evaluate(&2.0, &-0.5).unwrap();
        assert!((th - 3.0).abs() < 1e-12);
        assert_eq!(oracle_lambda().to_string(), "(δ^2-2)/(δ)");
    }

    #[test]
    fn identity_coefficients_are_one() {
        let c = t("(.,.)");
        assert_eq!(brute_coefficient_exact(&c, &c, Vacuum::Psi).unwrap(), RatFn::one());
        assert_eq!(brute_coefficient_exact(&c, &c, Vacuum::Omega).unwrap(), RatFn::one());
        let l = t(".");
        assert_eq!(brute_coefficient_exact(&l, &l, Vacuum::Omega).unwrap(), RatFn::one());
        let f = t("((.,.),(.,.))");
        assert_eq!(brute_coefficient_exact(&f, &f, Vacuum::Psi).unwrap(), RatFn::one());
    }

    #[test]
    fn graph_sizes() {
        let a = t("((.,(.,.)),.)");
        let b = t("(.,((.,.),.))");
        let s = tree_pair_graph(&a, &b, Vacuum::Omega).unwrap().stats();
        assert_eq!((s.trivalent, s.edges, s.terms), (6, 9, 512));
        let s = tree_pair_graph(&a, &b, Vacuum::Psi).unwrap().stats();
        assert_eq!((s.trivalent, s.edges), (4, 6));
    }

    #[test]
    fn psi_rejects_leaves() {
        assert_eq!(
            tree_pair_graph(&t("."), &t("."), Vacuum::Psi).unwrap_err(),
            Error::PsiNeedsCaret
        );
    }

    #[test]
    fn numeric_matches_exact() {
        let a = t("((.,.),.)");
        let b = t("(.,(.,.))");
        for mode in [Vacuum::Psi, Vacuum::Omega] {
            let x = brute_coefficient_exact(&a, &b, mode).unwrap().eval_f64(2.5);
            let y = brute_coefficient_numeric(&a, &b, mode, 2.5).unwrap();
            assert!((x - y).abs() < 1e-12);
        }
    }
}
