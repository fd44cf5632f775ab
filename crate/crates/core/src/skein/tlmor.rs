//! Temperley-Lieb morphisms and the cabled trivalent vertex.
//!
//! Each strand of the generating object is a pair of Temperley-Lieb strands
//! carrying the Jones-Wenzl projector `p₂ = 1 - e/δ`. A closed cabled loop is
//! worth `d = δ² - 1` and the raw trivalent vertex satisfies `Y*Y = λ p₂`.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::forest::{Forest, Tree};
use crate::skein::pairing::{glue, Pairing};
use crate::skein::poly::Laurent;
use crate::skein::scalar::{Arith, Coeff, Exact, Scalar};
use crate::Vacuum;

/// Boundary size limit for fully expanded morphisms (Temperley-Lieb points per side).
pub const MAX_POINTS_PER_SIDE: usize = 28;
/// Term limit for a single morphism.
pub const MAX_TERMS: usize = 5_000_000;

/// A linear combination of planar pairings `source -> target`.
#[derive(Clone, Debug, PartialEq)]
pub struct TLMor<C> {
    source: usize,
    target: usize,
    terms: HashMap<Pairing, C>,
    /// Raw trivalent vertices used to build this morphism.
    pub vertices: u32,
}

impl<C: Coeff> TLMor<C> {
    pub fn zero(source: usize, target: usize) -> Self {
        TLMor {
            source,
            target,
            terms: HashMap::new(),
            vertices: 0,
        }
    }

    pub fn from_pairing(source: usize, target: usize, p: Pairing) -> Self {
        assert_eq!(p.len(), source + target);
        let mut m = TLMor::zero(source, target);
        m.terms.insert(p, C::one());
        m
    }

    pub fn from_terms(source: usize, target: usize, terms: impl IntoIterator<Item = (Pairing, C)>) -> Self {
        let mut m = TLMor::zero(source, target);
        for (p, c) in terms {
            assert_eq!(p.len(), source + target);
            m.add_term(p, &c);
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).map(|j| (j, n + j)).collect();
        TLMor::from_pairing(n, n, Pairing::from_pairs(2 * n, &pairs))
    }

    /// `0 -> 2`
    pub fn cup() -> Self {
        TLMor::from_pairing(0, 2, Pairing::from_pairs(2, &[(0, 1)]))
    }

    /// `2 -> 0`
    pub fn cap() -> Self {
        TLMor::from_pairing(2, 0, Pairing::from_pairs(2, &[(0, 1)]))
    }

    /// The Temperley-Lieb generator `e_i` on strands `i, i+1` (0-based) of `n`.
    pub fn e(n: usize, i: usize) -> Result<Self> {
        if i + 1 >= n {
            return Err(Error::IndexOutOfRange {
                index: i + 1,
                max: n.saturating_sub(1),
            });
        }
        let mut pairs = vec![(i, i + 1), (n + i, n + i + 1)];
        pairs.extend((0..n).filter(|&j| j != i && j != i + 1).map(|j| (j, n + j)));
        Ok(TLMor::from_pairing(n, n, Pairing::from_pairs(2 * n, &pairs)))
    }

    /// `1 - e_i/δ` on `n` strands.
    pub fn p2<A: Arith<C = C>>(n: usize, i: usize, ar: &A) -> Result<Self> {
        let mut e = TLMor::e(n, i)?;
        e.scale_in_place(&ar.neg_inv_delta());
        Ok(TLMor::identity(n).add(&e))
    }

    /// `p₂ ⊗ ... ⊗ p₂` on `2k` strands.
    pub fn cabled_identity<A: Arith<C = C>>(k: usize, ar: &A) -> Self {
        (0..k).fold(TLMor::identity(0), |acc, _| {
            acc.tensor(&TLMor::p2(2, 0, ar).expect("2 strands"))
        })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Pairing, &C)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, p: &Pairing) -> C {
        self.terms.get(p).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, p: Pairing, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(x) => {
                x.accumulate(c);
                if x.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.source, self.target), (other.source, other.target));
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        out.vertices = self.vertices.max(other.vertices);
        out
    }

    pub fn scale_in_place(&mut self, c: &C) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v = v.times(c);
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = self.clone();
        out.scale_in_place(c);
        out
    }

    /// Side-by-side juxtaposition, `self` on the left.
    pub fn tensor(&self, other: &Self) -> Self {
        let (m1, n1, m2, n2) = (self.source, self.target, other.source, other.target);
        let left = |i: usize| if i < m1 { i } else { m1 + m2 + (i - m1) };
        let right = |i: usize| if i < m2 { m1 + i } else { m1 + m2 + n1 + (i - m2) };
        let mut out = TLMor::zero(m1 + m2, n1 + n2);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let mut t = vec![0u8; m1 + m2 + n1 + n2];
                for i in 0..m1 + n1 {
                    t[left(i)] = left(p.partner(i)) as u8;
                }
                for i in 0..m2 + n2 {
                    t[right(i)] = right(q.partner(i)) as u8;
                }
                out.add_term(Pairing::from_partners(t), &a.times(b));
            }
        }
        out.vertices = self.vertices + other.vertices;
        out
    }

    /// `upper ∘ lower`: `lower` is drawn below, `upper` on top.
    pub fn compose<A: Arith<C = C>>(lower: &Self, upper: &Self, ar: &A) -> Result<Self> {
        if lower.target != upper.source {
            return Err(Error::ArityMismatch {
                left: lower.target,
                right: upper.source,
            });
        }
        for side in [lower.source, upper.target] {
            if side > MAX_POINTS_PER_SIDE {
                return Err(Error::CapExceeded {
                    what: "boundary points",
                    limit: MAX_POINTS_PER_SIDE,
                    reached: side,
                });
            }
        }
        let (m, n, p) = (lower.source, lower.target, upper.target);
        let delta = ar.delta();
        let mut powers = vec![C::one()];
        let mut out = TLMor::zero(m, p);
        for (a, ca) in &lower.terms {
            for (b, cb) in &upper.terms {
                let (q, loops) = glue(a, b, m, n, p);
                while powers.len() <= loops as usize {
                    let next = powers.last().unwrap().times(&delta);
                    powers.push(next);
                }
                out.add_term(q, &ca.times(cb).times(&powers[loops as usize]));
            }
            if out.terms.len() > MAX_TERMS {
                return Err(Error::CapExceeded {
                    what: "terms",
                    limit: MAX_TERMS,
                    reached: out.terms.len(),
                });
            }
        }
        out.vertices = lower.vertices + upper.vertices;
        Ok(out)
    }

    /// Vertical reflection; coefficients are real so they are kept.
    pub fn adjoint(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| (p.flip(self.source), c.clone()))
            .collect();
        TLMor {
            source: self.target,
            target: self.source,
            terms,
            vertices: self.vertices,
        }
    }

    /// Post-composes with `p₂` on target strands `i, i+1` (0-based).
    pub fn apply_p2<A: Arith<C = C>>(&self, i: usize, ar: &A) -> Result<Self> {
        let p = TLMor::p2(self.target, i, ar)?;
        TLMor::compose(self, &p, ar)
    }

    /// Value of a closed diagram `0 -> 0`.
    pub fn closed_value(&self) -> C {
        assert_eq!((self.source, self.target), (0, 0), "not a closed diagram");
        self.coefficient(&Pairing::empty())
    }

    /// Markov trace of an endomorphism, closing strands on the right.
    pub fn trace<A: Arith<C = C>>(&self, ar: &A) -> C {
        assert_eq!(self.source, self.target, "trace of a non-endomorphism");
        let n = self.source;
        let delta = ar.delta();
        let mut acc = C::zero();
        for (p, c) in &self.terms {
            let mut seen = vec![false; 2 * n];
            let mut loops = 0;
            for s in 0..2 * n {
                if seen[s] {
                    continue;
                }
                loops += 1;
                let mut cur = s;
                loop {
                    seen[cur] = true;
                    let x = p.partner(cur);
                    seen[x] = true;
                    cur = if x < n { x + n } else { x - n };
                    if cur == s {
                        break;
                    }
                }
            }
            let mut w = c.clone();
            for _ in 0..loops {
                w = w.times(&delta);
            }
            acc.accumulate(&w);
        }
        acc
    }

    /// Scalar `c` with `self = c · other`, if one exists.
    pub fn ratio_to(&self, other: &Self) -> Option<(C, C)>
    where
        C: Coeff,
    {
        let (p, b) = other.terms.iter().next()?;
        let a = self.coefficient(p);
        // self·b == other·a  ⇔  self = (a/b)·other
        let lhs = self.scale(b);
        let rhs = other.scale(&a);
        (lhs.terms == rhs.terms).then_some((a, b.clone()))
    }
}

/// Planar skeleton of the vertex `2 -> 4`: bottom pair to the outer top
/// points, a cup on the inner two.
pub fn vertex_core<C: Coeff>() -> TLMor<C> {
    TLMor::from_pairing(2, 4, Pairing::from_pairs(6, &[(0, 2), (1, 5), (3, 4)]))
}

/// The unnormalized trivalent vertex `2 -> 4` with `p₂` on all three legs.
pub fn raw_vertex<A: Arith>(ar: &A) -> TLMor<A::C> {
    let bottom = TLMor::p2(2, 0, ar).expect("2 strands");
    let top = TLMor::cabled_identity(2, ar);
    let v = TLMor::compose(&bottom, &vertex_core(), ar).expect("arity");
    let mut v = TLMor::compose(&v, &top, ar).expect("arity");
    v.vertices = 1;
    v
}

/// The cabled cup `0 -> 4` with projectors, the unnormalized `Ψ`.
pub fn xcup<A: Arith>(ar: &A) -> TLMor<A::C> {
    let nested = TLMor::from_pairing(0, 4, Pairing::from_pairs(4, &[(0, 3), (1, 2)]));
    TLMor::compose(&nested, &TLMor::cabled_identity(2, ar), ar).expect("arity")
}

/// `λ` as a Laurent polynomial, computed once from `Y*Y = λ p₂`.
pub fn lambda_laurent() -> &'static Laurent {
    static LAMBDA: OnceLock<Laurent> = OnceLock::new();
    LAMBDA.get_or_init(|| {
        let y = raw_vertex(&Exact);
        let yy = TLMor::compose(&y, &y.adjoint(), &Exact).expect("arity");
        let p2 = TLMor::p2(2, 0, &Exact).expect("2 strands");
        let id = TLMor::<Laurent>::identity(2);
        let (p, _) = id.terms().next().expect("one term");
        let lambda = yy.coefficient(p);
        assert_eq!(yy.terms, p2.scale(&lambda).terms, "Y*Y is not proportional to p₂");
        lambda
    })
}

/// The morphism of a tree `1 -> n` with every caret replaced by a raw vertex.
pub fn tree_to_morphism<A: Arith>(t: &Tree, ar: &A) -> Result<TLMor<A::C>> {
    match t {
        Tree::Leaf => TLMor::p2(2, 0, ar),
        Tree::Caret(l, r) => {
            let legs = tree_to_morphism(l, ar)?.tensor(&tree_to_morphism(r, ar)?);
            TLMor::compose(&raw_vertex(ar), &legs, ar)
        }
    }
}

/// The functor image of a forest. In `Omega` mode an extra cabled strand on the
/// left carries the source object through.
pub fn forest_to_morphism<A: Arith>(f: &Forest, mode: Vacuum, ar: &A) -> Result<TLMor<A::C>> {
    let mut m = match mode {
        Vacuum::Psi => TLMor::identity(0),
        Vacuum::Omega => TLMor::p2(2, 0, ar)?,
    };
    for t in &f.trees {
        m = m.tensor(&tree_to_morphism(t, ar)?);
    }
    Ok(m)
}

/// Normalized inner product `⟨u, v⟩` of cup diagrams `0 -> 2n`, or of
/// morphisms `2 -> 2n` (where the result is the scalar of `v*u ∈ Mor(X, X)`).
pub fn inner_product<A: Arith>(u: &TLMor<A::C>, v: &TLMor<A::C>, ar: &A) -> Result<Scalar> {
    if (u.source, u.target) != (v.source, v.target) {
        return Err(Error::Incompatible(format!(
            "{}->{} against {}->{}",
            u.source, u.target, v.source, v.target
        )));
    }
    let w = TLMor::compose(u, &v.adjoint(), ar)?;
    let half = u.vertices + v.vertices;
    match u.source {
        0 => ar.finish(&w.closed_value(), half, 0),
        2 => ar.finish(&w.trace(ar), half, 2),
        s => Err(Error::Incompatible(format!("inner product on source arity {s}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein::scalar::Numeric;

    fn l(low: i32, c: &[i64]) -> Laurent {
        Laurent::from_i64(low, c)
    }

    #[test]
    fn single_loop_is_delta() {
        let v = TLMor::compose(&TLMor::<Laurent>::cup(), &TLMor::cap(), &Exact).unwrap();
        assert_eq!(v.closed_value(), l(1, &[1]));
    }

    #[test]
    fn identity_is_neutral() {
        let e = TLMor::<Laurent>::e(3, 1).unwrap();
        let id = TLMor::identity(3);
        assert_eq!(TLMor::compose(&id, &e, &Exact).unwrap(), e);
        assert_eq!(TLMor::compose(&e, &id, &Exact).unwrap(), e);
    }

    #[test]
    fn e_over_delta_is_idempotent() {
        let ar = Exact;
        let e = TLMor::<Laurent>::e(2, 0).unwrap().scale(&l(-1, &[1]));
        assert_eq!(TLMor::compose(&e, &e, &ar).unwrap(), e);
    }

    #[test]
    fn p2_kills_turnbacks_and_is_idempotent() {
        let ar = Exact;
        let cup = TLMor::<Laurent>::cup();
        assert!(cup.apply_p2(0, &ar).unwrap().is_zero());
        let p = TLMor::p2(2, 0, &ar).unwrap();
        assert_eq!(TLMor::compose(&p, &p, &ar).unwrap(), p);
        assert!(matches!(
            cup.apply_p2(1, &ar),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn cabled_loop_is_d() {
        let ar = Exact;
        let c = xcup(&ar);
        let loop_value = TLMor::compose(&c, &c.adjoint(), &ar).unwrap().closed_value();
        assert_eq!(loop_value, l(0, &[-1, 0, 1]));
    }

    #[test]
    fn vertex_bigon_is_lambda_p2() {
        let ar = Exact;
        assert_eq!(*lambda_laurent(), l(-1, &[-2, 0, 1]));
        let y = raw_vertex(&ar);
        let yy = TLMor::compose(&y, &y.adjoint(), &ar).unwrap();
        let p2 = TLMor::p2(2, 0, &ar).unwrap();
        assert_eq!(yy, p2.scale(lambda_laurent()).tap_vertices(2));
    }

    trait Tap {
        fn tap_vertices(self, v: u32) -> Self;
    }
    impl<C: Coeff> Tap for TLMor<C> {
        fn tap_vertices(mut self, v: u32) -> Self {
            self.vertices = v;
            self
        }
    }

    #[test]
    fn theta_is_lambda_d() {
        let ar = Exact;
        let y = raw_vertex(&ar);
        let theta = TLMor::compose(&y, &y.adjoint(), &ar).unwrap().trace(&ar);
        let d = l(0, &[-1, 0, 1]);
        assert_eq!(theta, lambda_laurent() * &d);
    }

    #[test]
    fn adjoint_is_anti_multiplicative() {
        let ar = Exact;
        let y = raw_vertex(&ar);
        let e = TLMor::e(4, 1).unwrap();
        let ab = TLMor::compose(&y, &e, &ar).unwrap();
        let ba = TLMor::compose(&e.adjoint(), &y.adjoint(), &ar).unwrap();
        assert_eq!(ab.adjoint(), ba);
        assert_eq!(y.adjoint().adjoint(), y);
        assert_eq!(TLMor::<Laurent>::cup().adjoint(), TLMor::cap());
    }

    #[test]
    fn normalized_vacua_are_unit_vectors() {
        let ar = Exact;
        let omega = raw_vertex(&ar);
        assert_eq!(inner_product(&omega, &omega, &ar).unwrap(), Scalar::one());
        // ⟨cup, cup⟩ = d before the 1/√d normalization
        let c = xcup(&ar);
        let raw = inner_product(&c, &c, &ar).unwrap();
        assert_eq!(raw, Scalar::Exact(crate::skein::poly::RatFn::d()));
    }

    #[test]
    fn numeric_mode_matches_exact() {
        let num = Numeric::new(2.0);
        assert!((num.lambda() - 1.0).abs() < 1e-15);
        let y = raw_vertex(&num);
        let yy = TLMor::compose(&y, &y.adjoint(), &num).unwrap();
        assert!((yy.trace(&num) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn forest_functor_is_isometric_on_a_caret() {
        let ar = Exact;
        let f = Forest::elementary(1, 1).unwrap();
        let phi = forest_to_morphism(&f, Vacuum::Psi, &ar).unwrap();
        let legs = TLMor::p2(2, 0, &ar).unwrap().tensor(&phi);
        let v = TLMor::compose(&xcup(&ar), &legs, &ar).unwrap();
        let s = inner_product(&v, &v, &ar).unwrap();
        assert_eq!(s, Scalar::Exact(crate::skein::poly::RatFn::d()));
    }
}
