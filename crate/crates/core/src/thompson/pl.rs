//! Piecewise-linear homeomorphisms of `[0, 1]` with rational breakpoints.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::forest::Tree;

/// A PL homeomorphism of `[0, 1]` given by its breakpoints `(x, f(x))`,
/// including `(0, 0)` and `(1, 1)`, with collinear points removed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PLMap {
    points: Vec<(BigRational, BigRational)>,
}

/// The standard dyadic intervals of the leaves of `t`, left to right.
pub fn leaf_intervals(t: &Tree) -> Vec<(BigRational, BigRational)> {
    fn walk(t: &Tree, lo: BigRational, hi: BigRational, out: &mut Vec<(BigRational, BigRational)>) {
        match t {
            Tree::Leaf => out.push((lo, hi)),
            Tree::Caret(l, r) => {
                let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
                walk(l, lo, mid.clone(), out);
                walk(r, mid, hi, out);
            }
        }
    }
    let mut out = Vec::new();
    walk(t, BigRational::zero(), BigRational::one(), &mut out);
    out
}

impl PLMap {
    pub fn identity() -> Self {
        PLMap {
            points: vec![
                (BigRational::zero(), BigRational::zero()),
                (BigRational::one(), BigRational::one()),
            ],
        }
    }

    /// Builds from breakpoints; they must start at `(0,0)`, end at `(1,1)` and increase.
    pub fn from_points(points: Vec<(BigRational, BigRational)>) -> Option<Self> {
        let ok = points.len() >= 2
            && points[0] == (BigRational::zero(), BigRational::zero())
            && points.last() == Some(&(BigRational::one(), BigRational::one()))
            && points.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1);
        ok.then(|| PLMap { points }.simplified())
    }

    /// The map sending the leaf intervals of `bottom` to those of `top`.
    pub fn from_tree_pair(top: &Tree, bottom: &Tree) -> Self {
        let src = leaf_intervals(bottom);
        let dst = leaf_intervals(top);
        assert_eq!(src.len(), dst.len(), "leaf counts differ");
        let mut points = vec![(BigRational::zero(), BigRational::zero())];
        points.extend(src.into_iter().zip(dst).map(|((_, x), (_, y))| (x, y)));
        PLMap { points }.simplified()
    }

    pub fn points(&self) -> &[(BigRational, BigRational)] {
        &self.points
    }

    fn simplified(mut self) -> Self {
        let mut out: Vec<(BigRational, BigRational)> = Vec::with_capacity(self.points.len());
        for p in self.points.drain(..) {
            while out.len() >= 2 {
                let (a, b) = (&out[out.len() - 2], &out[out.len() - 1]);
                // b is redundant if it lies on the segment a -> p
                if (&b.1 - &a.1) * (&p.0 - &a.0) == (&p.1 - &a.1) * (&b.0 - &a.0) {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        PLMap { points: out }
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        eval_points(&self.points, x, false)
    }

    pub fn inverse(&self) -> PLMap {
        PLMap {
            points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PLMap) -> PLMap {
        let mut xs: Vec<BigRational> = other.points.iter().map(|p| p.0.clone()).collect();
        xs.extend(self.points.iter().map(|p| eval_points(&other.points, &p.0, true)));
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = self.eval(&other.eval(&x));
                (x, y)
            })
            .collect();
        PLMap { points }.simplified()
    }

    /// Slopes of the pieces, left to right.
    pub fn slopes(&self) -> Vec<BigRational> {
        self.points
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect()
    }
}

/// Evaluates the PL function through `points`, or its inverse if `inverse`.
fn eval_points(points: &[(BigRational, BigRational)], x: &BigRational, inverse: bool) -> BigRational {
    let key = |p: &(BigRational, BigRational)| if inverse { p.1.clone() } else { p.0.clone() };
    let val = |p: &(BigRational, BigRational)| if inverse { p.0.clone() } else { p.1.clone() };
    let i = points
        .windows(2)
        .position(|w| key(&w[0]) <= *x && *x <= key(&w[1]))
        .expect("argument outside [0, 1]");
    let (a, b) = (&points[i], &points[i + 1]);
    let (ka, kb) = (key(a), key(b));
    let (va, vb) = (val(a), val(b));
    &va + (&vb - &va) * (x - &ka) / (&kb - &ka)
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|(x, y)| format!("({x}, {y})")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PLMap[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn x0_breakpoints() {
        let a = PLMap::from_tree_pair(&"((.,.),.)".parse().unwrap(), &"(.,(.,.))".parse().unwrap());
        assert_eq!(
            a.points(),
            &[(q(0, 1), q(0, 1)), (q(1, 2), q(1, 4)), (q(3, 4), q(1, 2)), (q(1, 1), q(1, 1))]
        );
        assert_eq!(a.slopes(), vec![q(1, 2), q(1, 1), q(2, 1)]);
        assert_eq!(a.eval(&q(1, 3)), q(1, 6));
    }

    #[test]
    fn inverse_and_compose() {
        let a = PLMap::from_tree_pair(&"((.,.),.)".parse().unwrap(), &"(.,(.,.))".parse().unwrap());
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(a.inverse().compose(&a).is_identity());
        let a2 = a.compose(&a);
        assert_eq!(a2.eval(&q(1, 2)), q(1, 8));
    }

    #[test]
    fn redundant_breakpoints_vanish() {
        let t: Tree = "((.,.),(.,.))".parse().unwrap();
        assert!(PLMap::from_tree_pair(&t, &t).is_identity());
        let p = PLMap::from_points(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(1, 2)), (q(1, 1), q(1, 1))]).unwrap();
        assert!(p.is_identity());
        assert!(PLMap::from_points(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(1, 2))]).is_none());
    }
}
