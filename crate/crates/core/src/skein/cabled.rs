//! Vectors in `Mor(1, X^n)` stored in a reduced basis.
//!
//! A vector is `P ∘ D` where `P = p₂ ⊗ ... ⊗ p₂` and `D` is a combination of cup
//! diagrams on `2n` points. Cup diagrams with a turnback on one cabled strand
//! are killed by `P`, so only turnback-free ones are stored.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::skein::pairing::{glue_local, noncrossing_pairings, pair_loops, Pairing};
use crate::skein::scalar::{Arith, Coeff, Scalar};
use crate::skein::tlmor::{vertex_core, TLMor};

#[derive(Clone, Debug, PartialEq)]
pub struct CabledVec<C> {
    strands: usize,
    terms: HashMap<Pairing, C>,
    /// Normalized vertices used; each contributes `λ^(-1/2)`.
    pub vertices: u32,
    /// Each unit contributes `d^(-1/2)`.
    pub d_half: u32,
}

/// The two local operators, with the projectors that are not already implied by `P`.
#[derive(Clone, Debug)]
pub struct LocalOps<C> {
    split: TLMor<C>,
    merge: TLMor<C>,
}

impl<C: Coeff> LocalOps<C> {
    pub fn new<A: Arith<C = C>>(ar: &A) -> Self {
        let p = TLMor::p2(2, 0, ar).expect("2 strands");
        let core: TLMor<C> = vertex_core();
        let split = TLMor::compose(&p, &core, ar).expect("arity");
        let merge = TLMor::compose(&p.tensor(&p), &core.adjoint(), ar).expect("arity");
        LocalOps { split, merge }
    }
}

impl<C: Coeff> CabledVec<C> {
    pub fn zero(strands: usize) -> Self {
        CabledVec {
            strands,
            terms: HashMap::new(),
            vertices: 0,
            d_half: 0,
        }
    }

    /// A single reduced basis diagram with coefficient 1.
    pub fn basis(strands: usize, p: Pairing) -> Result<Self> {
        if p.len() != 2 * strands || !p.is_planar(0) || p.has_turnback(0, 2 * strands) {
            return Err(Error::Incompatible(format!(
                "{p:?} is not a reduced cup diagram on {strands} strands"
            )));
        }
        let mut v = CabledVec::zero(strands);
        v.terms.insert(p, C::one());
        Ok(v)
    }

    /// The reduced basis of `Mor(1, X^n)`.
    pub fn basis_diagrams(strands: usize) -> Vec<Pairing> {
        noncrossing_pairings(2 * strands)
            .into_iter()
            .filter(|p| !p.has_turnback(0, 2 * strands))
            .collect()
    }

    /// The cabled cup on two strands, normalized to a unit vector.
    pub fn xcup() -> Self {
        let mut v = CabledVec::basis(2, Pairing::from_pairs(4, &[(0, 3), (1, 2)])).expect("reduced");
        v.d_half = 1;
        v
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Pairing, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Pairing) -> C {
        self.terms.get(p).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.clear();
        } else {
            for v in out.terms.values_mut() {
                *v = v.times(c);
            }
        }
        out
    }

    /// Sum of two vectors with the same normalization.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands
            || self.vertices != other.vertices
            || self.d_half != other.d_half
        {
            return Err(Error::Incompatible(
                "vectors with different strand counts or normalizations".into(),
            ));
        }
        let mut out = self.clone();
        for (p, c) in &other.terms {
            add_term(&mut out.terms, p.clone(), c);
        }
        Ok(out)
    }

    /// Reflection in a vertical line.
    pub fn mirror(&self) -> Self {
        CabledVec {
            strands: self.strands,
            terms: self.terms.iter().map(|(p, c)| (p.mirror(0), c.clone())).collect(),
            vertices: self.vertices,
            d_half: self.d_half,
        }
    }

    fn apply_local<A: Arith<C = C>>(
        &mut self,
        op: &TLMor<C>,
        strand: usize,
        max_terms: usize,
        ar: &A,
    ) -> Result<()> {
        let (w_in, w_out) = (op.source(), op.target());
        let delta = ar.delta();
        let powers = powers_of(&delta, w_in / 2 + 1);
        let len = 2 * self.strands - w_in + w_out;
        let mut out: HashMap<Pairing, C> = HashMap::with_capacity(self.terms.len() * 2);
        for (p, c) in &self.terms {
            for (q, k) in op.terms() {
                let (r, loops) = glue_local(p, q, 2 * strand, w_in, w_out);
                if r.has_turnback(0, len) {
                    continue;
                }
                add_term(&mut out, r, &c.times(k).times(&powers[loops as usize]));
            }
            if out.len() > max_terms {
                return Err(Error::CapExceeded {
                    what: "terms",
                    limit: max_terms,
                    reached: out.len(),
                });
            }
        }
        self.terms = out;
        self.strands = self.strands - w_in / 2 + w_out / 2;
        self.vertices += 1;
        Ok(())
    }

    /// Applies a normalized vertex to strand `k` (0-based), which becomes strands `k, k+1`.
    pub fn split<A: Arith<C = C>>(&mut self, k: usize, ops: &LocalOps<C>, max_terms: usize, ar: &A) -> Result<()> {
        if k >= self.strands {
            return Err(Error::IndexOutOfRange {
                index: k,
                max: self.strands.saturating_sub(1),
            });
        }
        self.apply_local(&ops.split, k, max_terms, ar)
    }

    /// Applies an adjoint vertex to strands `k, k+1`, which become strand `k`.
    pub fn merge<A: Arith<C = C>>(&mut self, k: usize, ops: &LocalOps<C>, max_terms: usize, ar: &A) -> Result<()> {
        if k + 1 >= self.strands {
            return Err(Error::IndexOutOfRange {
                index: k + 1,
                max: self.strands.saturating_sub(1),
            });
        }
        self.apply_local(&ops.merge, k, max_terms, ar)
    }

    /// Expands `P ∘ D` into unreduced cup diagrams.
    fn expand_projectors<A: Arith<C = C>>(&self, ar: &A) -> HashMap<Pairing, C> {
        let e = Pairing::from_pairs(4, &[(0, 1), (2, 3)]);
        let delta = ar.delta();
        let w = ar.neg_inv_delta();
        let mut cur = self.terms.clone();
        for j in 0..self.strands {
            let mut next = cur.clone();
            for (p, c) in &cur {
                let (r, loops) = glue_local(p, &e, 2 * j, 2, 2);
                let mut k = c.times(&w);
                for _ in 0..loops {
                    k = k.times(&delta);
                }
                add_term(&mut next, r, &k);
            }
            cur = next;
        }
        cur
    }

    /// `⟨self, other⟩` before normalization.
    pub fn raw_inner<A: Arith<C = C>>(&self, other: &Self, ar: &A) -> Result<C> {
        if self.strands != other.strands {
            return Err(Error::Incompatible(format!(
                "inner product of {} and {} strands",
                self.strands, other.strands
            )));
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let expanded = small.expand_projectors(ar);
        let powers = powers_of(&ar.delta(), 2 * self.strands + 1);
        let mut acc = C::zero();
        for (p, a) in &expanded {
            for (q, b) in &big.terms {
                acc.accumulate(&a.times(b).times(&powers[pair_loops(p, q) as usize]));
            }
        }
        Ok(acc)
    }

    /// The normalized inner product.
    pub fn inner<A: Arith<C = C>>(&self, other: &Self, ar: &A) -> Result<Scalar> {
        let raw = self.raw_inner(other, ar)?;
        ar.finish(&raw, self.vertices + other.vertices, self.d_half + other.d_half)
    }

    /// The same vector as an explicit morphism `0 -> 2n`, with projectors.
    pub fn to_morphism<A: Arith<C = C>>(&self, ar: &A) -> Result<TLMor<C>> {
        let d = TLMor::from_terms(0, 2 * self.strands, self.terms.iter().map(|(p, c)| (p.clone(), c.clone())));
        let mut m = TLMor::compose(&d, &TLMor::cabled_identity(self.strands, ar), ar)?;
        m.vertices = self.vertices;
        Ok(m)
    }
}

fn add_term<C: Coeff>(terms: &mut HashMap<Pairing, C>, p: Pairing, c: &C) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&p) {
        Some(x) => {
            x.accumulate(c);
            if x.is_zero() {
                terms.remove(&p);
            }
        }
        None => {
            terms.insert(p, c.clone());
        }
    }
}

fn powers_of<C: Coeff>(x: &C, n: usize) -> Vec<C> {
    let mut v = vec![C::one()];
    for _ in 0..n {
        let next = v.last().unwrap().times(x);
        v.push(next);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein::poly::{Laurent, RatFn};
    use crate::skein::scalar::{Exact, Numeric};
    use crate::skein::tlmor::{inner_product, raw_vertex, xcup};

    #[test]
    fn xcup_is_a_unit_vector() {
        let v = CabledVec::<Laurent>::xcup();
        assert_eq!(v.inner(&v, &Exact).unwrap(), Scalar::one());
    }

    #[test]
    fn split_matches_full_morphism() {
        let ar = Exact;
        let ops = LocalOps::new(&ar);
        let mut v = CabledVec::<Laurent>::xcup();
        v.split(1, &ops, 1000, &ar).unwrap();
        v.split(0, &ops, 1000, &ar).unwrap();

        let y = raw_vertex(&ar);
        let p = TLMor::p2(2, 0, &ar).unwrap();
        let m = TLMor::compose(&xcup(&ar), &p.tensor(&y), &ar).unwrap();
        let m = TLMor::compose(&m, &y.tensor(&p).tensor(&p), &ar).unwrap();
        assert_eq!(v.to_morphism(&ar).unwrap().terms().count(), m.term_count());
        let a = v.to_morphism(&ar).unwrap();
        for (q, c) in m.terms() {
            assert_eq!(&a.coefficient(q), c);
        }
        // same norms both ways
        let lhs = v.inner(&v, &ar).unwrap();
        let rhs = inner_product(&m, &m, &ar).unwrap();
        let rhs = &rhs / &Scalar::Exact(RatFn::d());
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, Scalar::one());
    }

    #[test]
    fn merge_undoes_split_up_to_scale() {
        let ar = Exact;
        let ops = LocalOps::new(&ar);
        let mut v = CabledVec::<Laurent>::xcup();
        v.split(0, &ops, 1000, &ar).unwrap();
        v.merge(0, &ops, 1000, &ar).unwrap();
        // Y*Y = λ p₂ and both vertices are normalized, so this is xcup again
        assert_eq!(v.inner(&CabledVec::xcup(), &ar).unwrap(), Scalar::one());
        assert_eq!(v.inner(&v, &ar).unwrap(), Scalar::one());
    }

    #[test]
    fn numeric_agrees_with_exact() {
        let ex = Exact;
        let nu = Numeric::new(2.0);
        let (oe, on) = (LocalOps::new(&ex), LocalOps::new(&nu));
        let mut a = CabledVec::<Laurent>::xcup();
        let mut b = CabledVec::<f64>::xcup();
        for k in [1, 1, 0, 2] {
            a.split(k, &oe, 1000, &ex).unwrap();
            b.split(k, &on, 1000, &nu).unwrap();
        }
        let mut c = CabledVec::<Laurent>::xcup();
        c.split(0, &oe, 1000, &ex).unwrap();
        c.split(2, &oe, 1000, &ex).unwrap();
        c.split(0, &oe, 1000, &ex).unwrap();
        c.split(1, &oe, 1000, &ex).unwrap();
        let x = a.inner(&c, &ex).unwrap().to_f64(2.0);
        let mut cn = CabledVec::<f64>::xcup();
        for k in [0, 2, 0, 1] {
            cn.split(k, &on, 1000, &nu).unwrap();
        }
        let y = b.inner(&cn, &nu).unwrap().to_f64(2.0);
        assert!((x - y).abs() < 1e-12, "{x} vs {y}");
    }

    #[test]
    fn mirror_preserves_inner_products() {
        let ar = Exact;
        let ops = LocalOps::new(&ar);
        let mut a = CabledVec::<Laurent>::xcup();
        a.split(1, &ops, 1000, &ar).unwrap();
        a.split(2, &ops, 1000, &ar).unwrap();
        let mut b = CabledVec::basis(4, CabledVec::<Laurent>::basis_diagrams(4)[0].clone()).unwrap();
        b.d_half = 1;
        let lhs = a.inner(&b, &ar);
        let rhs = a.mirror().inner(&b.mirror(), &ar);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_bad_indices_and_basis() {
        let ar = Exact;
        let ops = LocalOps::new(&ar);
        let mut v = CabledVec::<Laurent>::xcup();
        assert!(v.merge(1, &ops, 10, &ar).is_err());
        assert!(v.split(2, &ops, 10, &ar).is_err());
        assert!(CabledVec::<Laurent>::basis(2, Pairing::from_pairs(4, &[(0, 1), (2, 3)])).is_err());
    }

    #[test]
    fn term_cap_is_enforced() {
        let ar = Exact;
        let ops = LocalOps::new(&ar);
        let mut v = CabledVec::<Laurent>::xcup();
        let r = (0..6).try_for_each(|k| v.split(k, &ops, 3, &ar));
        assert!(matches!(r, Err(Error::CapExceeded { .. })));
    }
}
