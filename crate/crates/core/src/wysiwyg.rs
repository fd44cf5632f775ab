//! The representations: limit vectors, the action of F, coefficients and the
//! limit experiments.
//!
//! A vector is a pair `(t, x)` with `x ∈ Mor(1, X^n)` for the `n` leaves of `t`.
//! In `Omega` mode an extra strand on the left stands for the source object, so
//! `Mor(X, X^n)` is stored as `Mor(1, X^(n+1))` by bending that strand down.

use std::time::Instant;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forest::{tree_join, Forest, Tree};
use crate::skein::cabled::{CabledVec, LocalOps};
use crate::skein::pairing::Pairing;
use crate::skein::scalar::{Arith, Exact, Numeric, Scalar};
use crate::skein::sweep::{apply_forest, sweep_inner, Caps, SweepStats};
use crate::thompson::FElement;
use crate::Vacuum;

/// A representative `(tree, vector)` of a vector in the limit Hilbert space.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitVector<C> {
    mode: Vacuum,
    tree: Tree,
    vec: CabledVec<C>,
}

impl<C> LimitVector<C> {
    pub fn mode(&self) -> Vacuum {
        self.mode
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn vector(&self) -> &CabledVec<C> {
        &self.vec
    }
}

fn ghost(mode: Vacuum) -> usize {
    match mode {
        Vacuum::Psi => 0,
        Vacuum::Omega => 1,
    }
}

fn with_ghost(mode: Vacuum, f: Forest) -> Forest {
    match mode {
        Vacuum::Psi => f,
        Vacuum::Omega => {
            let mut trees = Vec::with_capacity(f.trees.len() + 1);
            trees.push(Tree::Leaf);
            trees.extend(f.trees);
            Forest::new(trees)
        }
    }
}

/// Result of a threshold search: the rows computed and the smallest `N`
/// beyond which the identity held up to the last row.
#[derive(Clone, Debug)]
pub struct Threshold {
    pub n: Option<usize>,
    pub rows: Vec<ThresholdRow>,
}

#[derive(Clone, Debug)]
pub struct ThresholdRow {
    pub n: usize,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub holds: bool,
    /// Peak term count of the sweep that produced `lhs`.
    pub terms: usize,
    pub millis: u128,
}

/// One coefficient with its cost.
#[derive(Clone, Debug)]
pub struct CoeffReport {
    pub element: String,
    pub mode: Vacuum,
    pub value: Scalar,
    pub leaves: usize,
    pub vertices: u32,
    pub terms: usize,
    pub millis: u128,
}

/// Evaluation context: an arithmetic mode and resource caps.
#[derive(Clone, Debug)]
pub struct Engine<A: Arith> {
    ar: A,
    caps: Caps,
    ops: LocalOps<A::C>,
    /// Numeric agreement tolerance used by threshold searches.
    pub tol: f64,
}

impl Engine<Exact> {
    pub fn exact() -> Self {
        Engine::new(Exact)
    }
}

impl Engine<Numeric> {
    pub fn numeric(delta: f64) -> Self {
        Engine::new(Numeric::new(delta))
    }
}

impl<A: Arith> Engine<A> {
    pub fn new(ar: A) -> Self {
        let ops = LocalOps::new(&ar);
        Engine {
            ar,
            caps: Caps::from_env(),
            ops,
            tol: 1e-9,
        }
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn arith(&self) -> &A {
        &self.ar
    }

    /// `Ψ` on the single caret, or `Ω` on the single leaf.
    pub fn vacuum(&self, mode: Vacuum) -> LimitVector<A::C> {
        let tree = match mode {
            Vacuum::Psi => Tree::single_caret(),
            Vacuum::Omega => Tree::Leaf,
        };
        LimitVector {
            mode,
            tree,
            vec: CabledVec::xcup(),
        }
    }

    /// The vacuum written over the tree `t`.
    pub fn vacuum_on(&self, mode: Vacuum, t: &Tree) -> Result<LimitVector<A::C>> {
        self.stabilize(&self.vacuum(mode), t)
    }

    /// A reduced basis diagram over `t`, scaled by `1/√d`.
    pub fn tree_vector(&self, mode: Vacuum, t: &Tree, p: Pairing) -> Result<LimitVector<A::C>> {
        if mode == Vacuum::Psi && t.is_leaf() {
            return Err(Error::PsiNeedsCaret);
        }
        let mut vec = CabledVec::basis(t.leaf_count() + ghost(mode), p)?;
        vec.d_half = 1;
        Ok(LimitVector {
            mode,
            tree: t.clone(),
            vec,
        })
    }

    /// All vectors [`Engine::tree_vector`] over trees with at most `max_leaves` leaves.
    pub fn tree_vectors(&self, mode: Vacuum, max_leaves: usize) -> Vec<LimitVector<A::C>> {
        let mut out = Vec::new();
        for n in 1..=max_leaves {
            if mode == Vacuum::Psi && n < 2 {
                continue;
            }
            for t in all_trees(n) {
                for p in CabledVec::<A::C>::basis_diagrams(n + ghost(mode)) {
                    out.push(self.tree_vector(mode, &t, p).expect("reduced basis"));
                }
            }
        }
        out
    }

    /// The same vector over a refinement `t` of its tree.
    pub fn stabilize(&self, v: &LimitVector<A::C>, t: &Tree) -> Result<LimitVector<A::C>> {
        if v.mode == Vacuum::Psi && t.is_leaf() {
            return Err(Error::PsiNeedsCaret);
        }
        let (f, g) = tree_join(&v.tree, t);
        if !g.is_identity() {
            return Err(Error::Incompatible(format!("{t} does not refine {}", v.tree)));
        }
        self.caps.check_leaves(t.leaf_count())?;
        let vec = apply_forest(&v.vec, &f, ghost(v.mode), &self.caps, &self.ops, &self.ar)?;
        Ok(LimitVector {
            mode: v.mode,
            tree: t.clone(),
            vec,
        })
    }

    /// `π(g) v`: stabilize to a common tree, then replace the bottom tree of `g` by its top.
    pub fn act(&self, g: &FElement, v: &LimitVector<A::C>) -> Result<LimitVector<A::C>> {
        let (h1, h2) = tree_join(g.bottom(), &v.tree);
        let tree = g.top().graft(&h1)?;
        self.caps.check_leaves(tree.leaf_count())?;
        let vec = apply_forest(&v.vec, &h2, ghost(v.mode), &self.caps, &self.ops, &self.ar)?;
        Ok(LimitVector {
            mode: v.mode,
            tree,
            vec,
        })
    }

    fn check_modes(&self, u: &LimitVector<A::C>, v: &LimitVector<A::C>) -> Result<Vacuum> {
        if u.mode != v.mode {
            return Err(Error::Incompatible("vectors from different modes".into()));
        }
        Ok(u.mode)
    }

    pub fn inner(&self, u: &LimitVector<A::C>, v: &LimitVector<A::C>) -> Result<Scalar> {
        let mode = self.check_modes(u, v)?;
        let (f1, f2) = tree_join(&u.tree, &v.tree);
        let (lower, upper) = (with_ghost(mode, f1), with_ghost(mode, f2));
        let (s, _) = sweep_inner(&u.vec, &lower, &upper, &v.vec, &self.caps, &self.ops, &self.ar)?;
        Ok(s)
    }

    /// `⟨π(g) ξ, η⟩` in one sweep, without building `π(g) ξ`.
    pub fn matrix_coefficient(
        &self,
        g: &FElement,
        xi: &LimitVector<A::C>,
        eta: &LimitVector<A::C>,
    ) -> Result<Scalar> {
        Ok(self.matrix_coefficient_stats(g, xi, eta)?.0)
    }

    /// Like [`Self::matrix_coefficient`], with the sweep statistics.
    pub fn matrix_coefficient_stats(
        &self,
        g: &FElement,
        xi: &LimitVector<A::C>,
        eta: &LimitVector<A::C>,
    ) -> Result<(Scalar, SweepStats)> {
        let mode = self.check_modes(xi, eta)?;
        self.caps.check_leaves(g.leaf_count())?;
        let (h1, h2) = tree_join(g.bottom(), &xi.tree);
        let s = g.top().graft(&h1)?;
        let (k1, k2) = tree_join(&s, &eta.tree);
        let lower = Forest::compose(&h2, &k1)?;
        let (lower, upper) = (with_ghost(mode, lower), with_ghost(mode, k2));
        sweep_inner(&xi.vec, &lower, &upper, &eta.vec, &self.caps, &self.ops, &self.ar)
    }

    /// `⟨π(g) ξ, ξ⟩` for the vacuum `ξ` of `mode`.
    pub fn coeff(&self, mode: Vacuum, g: &FElement) -> Result<Scalar> {
        let v = self.vacuum(mode);
        self.matrix_coefficient(g, &v, &v)
    }

    pub fn coeff_report(&self, mode: Vacuum, g: &FElement) -> Result<CoeffReport> {
        let start = Instant::now();
        let v = self.vacuum(mode);
        let (value, stats) = self.matrix_coefficient_stats(g, &v, &v)?;
        Ok(CoeffReport {
            element: g.to_string(),
            mode,
            value,
            leaves: g.leaf_count(),
            vertices: stats.vertices,
            terms: stats.peak_terms,
            millis: start.elapsed().as_millis(),
        })
    }

    fn agrees(&self, a: &Scalar, b: &Scalar) -> bool {
        a.agrees(b, self.tol)
    }

    /// Rows `0..=n_max` of `lhs(n)` against `rhs`, and the threshold.
    fn threshold<F>(&self, n_max: usize, rhs: &Scalar, lhs: F) -> Result<Threshold>
    where
        F: Fn(usize) -> Result<(Scalar, SweepStats)> + Sync,
    {
        let rows: Vec<ThresholdRow> = (0..=n_max)
            .into_par_iter()
            .map(|n| {
                let start = Instant::now();
                let (l, stats) = lhs(n).map_err(|e| Error::AtStep { n, inner: Box::new(e) })?;
                let holds = self.agrees(&l, rhs);
                Ok(ThresholdRow {
                    n,
                    lhs: l,
                    rhs: rhs.clone(),
                    holds,
                    terms: stats.peak_terms,
                    millis: start.elapsed().as_millis(),
                })
            })
            .collect::<Result<_>>()?;
        let mut n = None;
        for r in rows.iter().rev() {
            if !r.holds {
                break;
            }
            n = Some(r.n);
        }
        Ok(Threshold { n, rows })
    }

    /// Smallest `N` with `⟨Aⁿ g Ψ, h Ψ⟩ = ⟨gΨ, Ψ⟩⟨Ψ, hΨ⟩` for all `N ≤ n ≤ n_max`.
    pub fn lemma43_threshold(&self, g: &FElement, h: &FElement, n_max: usize) -> Result<Threshold> {
        let rhs = &self.coeff(Vacuum::Psi, g)? * &self.coeff(Vacuum::Psi, h)?.conj();
        let hinv = h.inverse();
        self.threshold(n_max, &rhs, |n| {
            let x = hinv.multiply(&FElement::a_power(n as i64)).multiply(g);
            let v = self.vacuum(Vacuum::Psi);
            self.matrix_coefficient_stats(&x, &v, &v)
        })
    }

    /// `⟨Aⁿ ξ, ξ⟩` for the vacuum of `mode`.
    pub fn an_coefficient(&self, mode: Vacuum, n: i64) -> Result<Scalar> {
        self.coeff(mode, &FElement::a_power(n))
    }

    /// `(n, ⟨AⁿΩ, Ω⟩, ratio to the previous value)` for `1 ≤ n ≤ n_max`.
    pub fn decay_table(&self, mode: Vacuum, n_max: usize) -> Result<Vec<(usize, Scalar, Option<Scalar>)>> {
        let values: Vec<Scalar> = (1..=n_max)
            .into_par_iter()
            .map(|n| {
                self.an_coefficient(mode, n as i64)
                    .map_err(|e| Error::AtStep { n, inner: Box::new(e) })
            })
            .collect::<Result<_>>()?;
        Ok(values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let ratio = (i > 0 && !values[i - 1].is_zero()).then(|| v / &values[i - 1]);
                (i + 1, v.clone(), ratio)
            })
            .collect())
    }

    /// Smallest `N` with `⟨σⁿ(g) ξ, η⟩ = ⟨gΩ, Ω⟩⟨ξ, η⟩` for all `N ≤ n ≤ n_max`.
    pub fn sigma_limit_check(
        &self,
        g: &FElement,
        xi: &LimitVector<A::C>,
        eta: &LimitVector<A::C>,
        n_max: usize,
    ) -> Result<Threshold> {
        let rhs = &self.coeff(Vacuum::Omega, g)? * &self.inner(xi, eta)?;
        self.threshold(n_max, &rhs, |n| {
            let mut s = g.clone();
            for _ in 0..n {
                s = s.shift();
            }
            self.matrix_coefficient_stats(&s, xi, eta)
        })
    }

    /// Smallest `N` with `⟨Aⁿ ξ, η⟩ = ⟨ξ, Ψ⟩⟨Ψ, η⟩` for all `N ≤ n ≤ n_max`.
    pub fn weak_limit_projection_check(
        &self,
        xi: &LimitVector<A::C>,
        eta: &LimitVector<A::C>,
        n_max: usize,
    ) -> Result<Threshold> {
        let psi = self.vacuum(xi.mode);
        let rhs = &self.inner(xi, &psi)? * &self.inner(&psi, eta)?;
        self.threshold(n_max, &rhs, |n| {
            self.matrix_coefficient_stats(&FElement::a_power(n as i64), xi, eta)
        })
    }

    /// `G[i][j] = ⟨g_i ξ, g_j ξ⟩` for the vacuum `ξ`.
    pub fn gram(&self, mode: Vacuum, elements: &[FElement]) -> Result<Vec<Vec<Scalar>>> {
        let k = elements.len();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
        let vals: Vec<Scalar> = pairs
            .par_iter()
            .map(|&(i, j)| self.coeff(mode, &elements[j].inverse().multiply(&elements[i])))
            .collect::<Result<_>>()?;
        Ok(symmetric(k, &pairs, vals))
    }

    /// Gram matrix of arbitrary vectors.
    pub fn gram_vectors(&self, vs: &[LimitVector<A::C>]) -> Result<Vec<Vec<Scalar>>> {
        let k = vs.len();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
        let vals: Vec<Scalar> = pairs
            .par_iter()
            .map(|&(i, j)| self.inner(&vs[i], &vs[j]))
            .collect::<Result<_>>()?;
        Ok(symmetric(k, &pairs, vals))
    }
}

fn symmetric(k: usize, pairs: &[(usize, usize)], vals: Vec<Scalar>) -> Vec<Vec<Scalar>> {
    let mut g = vec![vec![Scalar::Numeric(0.0); k]; k];
    for (&(i, j), v) in pairs.iter().zip(vals) {
        g[j][i] = v.conj();
        g[i][j] = v;
    }
    g
}

/// Smallest eigenvalue of a real symmetric matrix given by scalars evaluated at `delta`.
pub fn min_eigenvalue(gram: &[Vec<Scalar>], delta: f64) -> f64 {
    let k = gram.len();
    if k == 0 {
        return 0.0;
    }
    let m = DMatrix::from_fn(k, k, |i, j| gram[i][j].to_f64(delta));
    SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Every tree with `n` leaves.
pub fn all_trees(n: usize) -> Vec<Tree> {
    if n == 1 {
        return vec![Tree::Leaf];
    }
    let mut out = Vec::new();
    for k in 1..n {
        for l in all_trees(k) {
            for r in all_trees(n - k) {
                out.push(Tree::caret(l.clone(), r));
            }
        }
    }
    out
}
