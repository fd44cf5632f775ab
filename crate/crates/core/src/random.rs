//! Seeded random trees, forests and group elements for tests and experiments.

use rand::Rng;

use crate::forest::{Forest, Tree};
use crate::thompson::{FElement, Generator};

/// A random tree with exactly `n ≥ 1` leaves.
pub fn tree<R: Rng>(rng: &mut R, n: usize) -> Tree {
    assert!(n >= 1);
    if n == 1 {
        return Tree::Leaf;
    }
    let k = rng.random_range(1..n);
    Tree::caret(tree(rng, k), tree(rng, n - k))
}

/// A random forest on `roots` roots with `carets` carets in total.
pub fn forest<R: Rng>(rng: &mut R, roots: usize, carets: usize) -> Forest {
    let mut f = Forest::identity(roots);
    for _ in 0..carets {
        let n = f.leaves();
        let e = Forest::elementary(n, rng.random_range(1..=n)).expect("in range");
        f = Forest::compose(&f, &e).expect("arity");
    }
    f
}

/// A random word in `A^±1, B^±1` of length `len`.
pub fn word<R: Rng>(rng: &mut R, len: usize) -> Vec<(Generator, i64)> {
    (0..len)
        .map(|_| {
            let g = if rng.random_bool(0.5) { Generator::A } else { Generator::B };
            let e = if rng.random_bool(0.5) { 1 } else { -1 };
            (g, e)
        })
        .collect()
}

/// A random element given by a word of length at most `max_len`.
pub fn element<R: Rng>(rng: &mut R, max_len: usize) -> FElement {
    let len = rng.random_range(0..=max_len);
    FElement::from_word(&word(rng, len))
}

/// `g` written over larger trees: `extra` carets grafted at matching leaves of both trees.
pub fn unreduce<R: Rng>(rng: &mut R, g: &FElement, extra: usize) -> FElement {
    let (mut top, mut bottom) = (g.top().clone(), g.bottom().clone());
    for _ in 0..extra {
        let i = rng.random_range(0..top.leaf_count());
        top = top.split_leaf(i).expect("in range");
        bottom = bottom.split_leaf(i).expect("in range");
    }
    FElement::unreduced(top, bottom).expect("equal leaf counts")
}

/// Reduces by cancelling common exposed carets in a random order.
pub fn reduce_randomly<R: Rng>(rng: &mut R, g: &FElement) -> FElement {
    let (mut top, mut bottom) = (g.top().clone(), g.bottom().clone());
    loop {
        let t = top.exposed_carets();
        let common: Vec<usize> = bottom.exposed_carets().into_iter().filter(|i| t.contains(i)).collect();
        if common.is_empty() {
            break;
        }
        let i = common[rng.random_range(0..common.len())];
        top = top.collapse_caret(i).expect("exposed");
        bottom = bottom.collapse_caret(i).expect("exposed");
    }
    FElement::unreduced(top, bottom).expect("equal leaf counts")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..10 {
            assert_eq!(tree(&mut rng, n).leaf_count(), n);
        }
        let f = forest(&mut rng, 3, 4);
        assert_eq!((f.roots(), f.leaves()), (3, 7));
    }

    #[test]
    fn unreduce_then_reduce() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let g = element(&mut rng, 6);
            let big = unreduce(&mut rng, &g, 3);
            assert_eq!(big.to_pl(), g.to_pl());
            assert_eq!(reduce_randomly(&mut rng, &big), g);
        }
    }
}
