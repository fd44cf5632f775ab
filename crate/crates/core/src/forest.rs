//! Binary planar trees and forests, the morphisms of the forest category.
//!
//! A forest with `m` roots and `n` leaves is a morphism `m -> n`. Composition
//! grafts the trees of the upper forest onto the leaves of the lower one.
//! Strand indices in the public API (`elementary`, `factorize`) are 1-based.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A rooted binary planar tree. Trees compare by shape.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Caret(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaf() -> Self {
        Tree::Leaf
    }

    pub fn caret(left: Tree, right: Tree) -> Self {
        Tree::Caret(Box::new(left), Box::new(right))
    }

    /// The tree with a single caret and two leaves.
    pub fn single_caret() -> Self {
        Tree::caret(Tree::Leaf, Tree::Leaf)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn children(&self) -> Option<(&Tree, &Tree)> {
        match self {
            Tree::Leaf => None,
            Tree::Caret(l, r) => Some((l, r)),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Caret(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn caret_count(&self) -> usize {
        self.leaf_count() - 1
    }

    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Caret(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Left comb `((..(.,.),.),.)` with `n` leaves.
    pub fn left_comb(n: usize) -> Self {
        assert!(n >= 1, "a tree has at least one leaf");
        (1..n).fold(Tree::Leaf, |acc, _| Tree::caret(acc, Tree::Leaf))
    }

    /// Right comb `(.,(.,(..,(.,.))))` with `n` leaves.
    pub fn right_comb(n: usize) -> Self {
        assert!(n >= 1, "a tree has at least one leaf");
        (1..n).fold(Tree::Leaf, |acc, _| Tree::caret(Tree::Leaf, acc))
    }

    /// The full bifurcating tree with `2^m` leaves.
    pub fn full(m: u32) -> Self {
        (0..m).fold(Tree::Leaf, |acc, _| Tree::caret(acc.clone(), acc))
    }

    /// Reflection in a vertical line.
    pub fn mirror(&self) -> Self {
        match self {
            Tree::Leaf => Tree::Leaf,
            Tree::Caret(l, r) => Tree::caret(r.mirror(), l.mirror()),
        }
    }

    /// The tree as a forest `1 -> n`.
    pub fn as_forest(&self) -> Forest {
        Forest {
            trees: vec![self.clone()],
        }
    }

    /// Grafts the k-th tree of `forest` onto the k-th leaf of `self`.
    pub fn graft(&self, forest: &Forest) -> Result<Tree> {
        let n = self.leaf_count();
        if forest.roots() != n {
            return Err(Error::ArityMismatch {
                left: n,
                right: forest.roots(),
            });
        }
        let mut it = forest.trees.iter();
        Ok(self.graft_iter(&mut it))
    }

    fn graft_iter<'a>(&self, it: &mut impl Iterator<Item = &'a Tree>) -> Tree {
        match self {
            Tree::Leaf => it.next().expect("arity checked").clone(),
            Tree::Caret(l, r) => {
                let l = l.graft_iter(it);
                let r = r.graft_iter(it);
                Tree::caret(l, r)
            }
        }
    }

    /// 0-based indices `i` such that leaves `i` and `i + 1` hang from a common caret.
    pub fn exposed_carets(&self) -> Vec<usize> {
        fn walk(t: &Tree, offset: usize, out: &mut Vec<usize>) -> usize {
            match t {
                Tree::Leaf => 1,
                Tree::Caret(l, r) => {
                    if l.is_leaf() && r.is_leaf() {
                        out.push(offset);
                        return 2;
                    }
                    let nl = walk(l, offset, out);
                    nl + walk(r, offset + nl, out)
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }

    /// Replaces the exposed caret over leaves `i, i+1` (0-based) by a leaf.
    pub fn collapse_caret(&self, i: usize) -> Option<Tree> {
        fn walk(t: &Tree, offset: usize, i: usize) -> Option<Tree> {
            match t {
                Tree::Leaf => None,
                Tree::Caret(l, r) => {
                    if l.is_leaf() && r.is_leaf() {
                        return (offset == i).then_some(Tree::Leaf);
                    }
                    let nl = l.leaf_count();
                    if i < offset + nl {
                        walk(l, offset, i).map(|l| Tree::caret(l, (**r).clone()))
                    } else {
                        walk(r, offset + nl, i).map(|r| Tree::caret((**l).clone(), r))
                    }
                }
            }
        }
        walk(self, 0, i)
    }

    /// Splits the 0-based leaf `i` into a caret.
    pub fn split_leaf(&self, i: usize) -> Option<Tree> {
        let n = self.leaf_count();
        if i >= n {
            return None;
        }
        let f = Forest::elementary(n, i + 1).ok()?;
        self.graft(&f).ok()
    }
}

/// The join (least common upper bound) of two trees: the union of their shapes.
pub fn join(s: &Tree, t: &Tree) -> Tree {
    match (s, t) {
        (Tree::Leaf, x) | (x, Tree::Leaf) => x.clone(),
        (Tree::Caret(a, b), Tree::Caret(c, e)) => Tree::caret(join(a, c), join(b, e)),
    }
}

/// Minimal forests `(f, g)` with `s∘f = t∘g = join(s, t)`.
pub fn tree_join(s: &Tree, t: &Tree) -> (Forest, Forest) {
    fn walk(s: &Tree, t: &Tree, f: &mut Vec<Tree>, g: &mut Vec<Tree>) {
        match (s, t) {
            (Tree::Leaf, Tree::Leaf) => {
                f.push(Tree::Leaf);
                g.push(Tree::Leaf);
            }
            (Tree::Leaf, x) => {
                f.push(x.clone());
                g.extend(std::iter::repeat_n(Tree::Leaf, x.leaf_count()));
            }
            (x, Tree::Leaf) => {
                f.extend(std::iter::repeat_n(Tree::Leaf, x.leaf_count()));
                g.push(x.clone());
            }
            (Tree::Caret(a, b), Tree::Caret(c, e)) => {
                walk(a, c, f, g);
                walk(b, e, f, g);
            }
        }
    }
    let (mut f, mut g) = (Vec::new(), Vec::new());
    walk(s, t, &mut f, &mut g);
    (Forest { trees: f }, Forest { trees: g })
}

/// An ordered list of trees; a morphism `roots -> leaves`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Forest {
    pub trees: Vec<Tree>,
}

impl Forest {
    pub fn new(trees: Vec<Tree>) -> Self {
        Forest { trees }
    }

    pub fn identity(m: usize) -> Self {
        Forest {
            trees: vec![Tree::Leaf; m],
        }
    }

    pub fn roots(&self) -> usize {
        self.trees.len()
    }

    pub fn leaves(&self) -> usize {
        self.trees.iter().map(Tree::leaf_count).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.trees.iter().all(Tree::is_leaf)
    }

    pub fn caret_count(&self) -> usize {
        self.leaves() - self.roots()
    }

    /// The elementary forest `f_i` on `n` roots: a single caret on root `i` (1-based).
    pub fn elementary(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        let mut trees = vec![Tree::Leaf; n];
        trees[i - 1] = Tree::single_caret();
        Ok(Forest { trees })
    }

    /// `lower` followed by `upper`: the k-th tree of `upper` is grafted on the
    /// k-th leaf of `lower`.
    pub fn compose(lower: &Forest, upper: &Forest) -> Result<Forest> {
        if lower.leaves() != upper.roots() {
            return Err(Error::ArityMismatch {
                left: lower.leaves(),
                right: upper.roots(),
            });
        }
        let mut it = upper.trees.iter();
        let trees = lower.trees.iter().map(|t| t.graft_iter(&mut it)).collect();
        Ok(Forest { trees })
    }

    /// Canonical word of elementary forests `(n, i)` (1-based `i`) whose
    /// composition, applied left to right, is `self`. Indices are
    /// non-decreasing; this is the normal form for the relation
    /// `f_j f_i = f_i f_{j-1}` (`i < j - 1`).
    pub fn factorize(&self) -> Vec<(usize, usize)> {
        fn walk(t: &Tree, pos: &mut usize, width: &mut usize, out: &mut Vec<(usize, usize)>) {
            match t {
                Tree::Leaf => *pos += 1,
                Tree::Caret(l, r) => {
                    out.push((*width, *pos + 1));
                    *width += 1;
                    walk(l, pos, width, out);
                    walk(r, pos, width, out);
                }
            }
        }
        let mut out = Vec::new();
        let (mut pos, mut width) = (0, self.roots());
        for t in &self.trees {
            walk(t, &mut pos, &mut width, &mut out);
        }
        out
    }

    /// Composes a word of elementary forests starting from the identity on `m`.
    pub fn from_word(m: usize, word: &[(usize, usize)]) -> Result<Forest> {
        let mut f = Forest::identity(m);
        for &(n, i) in word {
            let e = Forest::elementary(n, i)?;
            f = Forest::compose(&f, &e)?;
        }
        Ok(f)
    }

    pub fn mirror(&self) -> Forest {
        Forest {
            trees: self.trees.iter().rev().map(Tree::mirror).collect(),
        }
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Self {
        Forest { trees: vec![t] }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => f.write_str("."),
            Tree::Caret(l, r) => write!(f, "({l},{r})"),
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.trees.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest[{self}]")
    }
}

pub(crate) struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    len: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor {
            chars: src.char_indices().collect(),
            idx: 0,
            len: src.len(),
            _src: src,
        }
    }

    pub(crate) fn pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.len, |c| c.0)
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.chars.get(self.idx).is_some_and(|c| c.1.is_whitespace()) {
            self.idx += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.idx).map(|c| c.1)
    }

    pub(crate) fn bump(&mut self) {
        self.idx += 1;
    }

    pub(crate) fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    pub(crate) fn error(&self, msg: String) -> Error {
        Error::Parse {
            pos: self.pos(),
            msg,
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn tree(&mut self) -> Result<Tree> {
        match self.peek() {
            Some('.') => {
                self.bump();
                Ok(Tree::Leaf)
            }
            Some('(') => {
                self.bump();
                let l = self.tree()?;
                self.expect(',')?;
                let r = self.tree()?;
                self.expect(')')?;
                Ok(Tree::caret(l, r))
            }
            Some(c) => Err(self.error(format!("expected '.' or '(', found '{c}'"))),
            None => Err(self.error("expected a tree, found end of input".into())),
        }
    }
}

pub fn parse_tree(text: &str) -> Result<Tree> {
    let mut cur = Cursor::new(text);
    let t = cur.tree()?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after tree".into()));
    }
    Ok(t)
}

pub fn parse_forest(text: &str) -> Result<Forest> {
    let mut cur = Cursor::new(text);
    let mut trees = vec![cur.tree()?];
    while cur.peek() == Some(';') {
        cur.bump();
        trees.push(cur.tree()?);
    }
    if !cur.at_end() {
        return Err(cur.error("trailing input after forest".into()));
    }
    Ok(Forest { trees })
}

impl FromStr for Tree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_tree(s)
    }
}

impl FromStr for Forest {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_forest(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    /// Every tree with exactly `n` leaves.
    fn all_trees(n: usize) -> Vec<Tree> {
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

    fn all_forests(m: usize, max_leaves: usize) -> Vec<Forest> {
        if m == 0 {
            return vec![Forest::new(vec![])];
        }
        let mut out = Vec::new();
        for k in 1..=(max_leaves + 1 - m) {
            for first in all_trees(k) {
                for rest in all_forests(m - 1, max_leaves - k) {
                    let mut trees = vec![first.clone()];
                    trees.extend(rest.trees);
                    out.push(Forest::new(trees));
                }
            }
        }
        out
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(t("."), Tree::Leaf);
        let comb = t("((.,.),.)");
        assert_eq!(comb, Tree::left_comb(3));
        assert_eq!(comb.to_string(), "((.,.),.)");
        assert_eq!(t(" ( ( . , . ) ,\n . ) "), comb);
        assert_eq!(Tree::full(2).to_string(), "((.,.),(.,.))");
    }

    #[test]
    fn parse_errors_report_position() {
        assert_eq!(
            parse_tree("((.,.).)"),
            Err(Error::Parse {
                pos: 6,
                msg: "expected ',', found '.'".into()
            })
        );
        assert!(matches!(parse_tree("(.,."), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_tree(".."), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_tree("x"), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn forest_syntax() {
        let f: Forest = ". ; (.,.);.".parse().unwrap();
        assert_eq!(f.roots(), 3);
        assert_eq!(f.leaves(), 4);
        assert_eq!(f.to_string(), ".;(.,.);.");
    }

    #[test]
    fn elementary_forests() {
        assert_eq!(Forest::elementary(1, 1).unwrap(), Tree::single_caret().into());
        let f = Forest::elementary(3, 2).unwrap();
        assert_eq!(f.to_string(), ".;(.,.);.");
        assert_eq!(Forest::elementary(2, 2).unwrap().leaves(), 3);
        assert_eq!(
            Forest::elementary(2, 3),
            Err(Error::IndexOutOfRange { index: 3, max: 2 })
        );
        assert!(Forest::elementary(2, 0).is_err());
    }

    #[test]
    fn composition() {
        let f1 = Forest::elementary(1, 1).unwrap();
        let f1b = Forest::elementary(2, 1).unwrap();
        let c = Forest::compose(&f1, &f1b).unwrap();
        assert_eq!(c, t("((.,.),.)").into());

        let f = Forest::elementary(3, 2).unwrap();
        assert_eq!(Forest::compose(&Forest::identity(3), &f).unwrap(), f);
        assert_eq!(Forest::compose(&f, &Forest::identity(4)).unwrap(), f);
        assert_eq!(
            Forest::compose(&f, &Forest::identity(3)),
            Err(Error::ArityMismatch { left: 4, right: 3 })
        );
    }

    #[test]
    fn compositions_of_three_leaf_trees_by_enumeration() {
        // every 1 -> 3 forest arises from exactly the graftings listed here
        let two = Tree::single_caret();
        let mut seen = Vec::new();
        for i in 1..=2 {
            let up = Forest::elementary(2, i).unwrap();
            seen.push(two.graft(&up).unwrap());
        }
        seen.sort();
        let mut expected = all_trees(3);
        expected.sort();
        assert_eq!(seen, expected);
    }

    #[test]
    fn elementary_relation_exhaustive() {
        // f_i then f_j equals f_{j-1} then f_i whenever i < j - 1
        for n in 1..=5 {
            for i in 1..=n {
                for j in (i + 2)..=(n + 1) {
                    let lhs = Forest::from_word(n, &[(n, i), (n + 1, j)]).unwrap();
                    let rhs = Forest::from_word(n, &[(n, j - 1), (n + 1, i)]).unwrap();
                    assert_eq!(lhs, rhs, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn factorization_examples() {
        assert!(Forest::identity(4).factorize().is_empty());
        assert_eq!(
            Forest::from(t("((.,.),.)")).factorize(),
            vec![(1, 1), (2, 1)]
        );
    }

    #[test]
    fn factorization_exhaustive_on_small_forests() {
        for m in 1..=3 {
            for f in all_forests(m, 6) {
                let w = f.factorize();
                assert!(w.windows(2).all(|p| p[0].1 <= p[1].1), "{f} -> {w:?}");
                assert_eq!(Forest::from_word(m, &w).unwrap(), f);
            }
        }
    }

    #[test]
    fn join_examples() {
        let s = t("((.,.),.)");
        let u = t("(.,(.,.))");
        assert_eq!(join(&s, &u), t("((.,.),(.,.))"));
        let (f, g) = tree_join(&s, &u);
        assert_eq!(s.graft(&f).unwrap(), join(&s, &u));
        assert_eq!(u.graft(&g).unwrap(), join(&s, &u));
        let (f, g) = tree_join(&s, &s);
        assert!(f.is_identity() && g.is_identity());
    }

    #[test]
    fn join_is_minimal_by_brute_force() {
        for n in 1..=4 {
            for s in all_trees(n) {
                for u in all_trees(n) {
                    let j = join(&s, &u);
                    // no tree with fewer leaves dominates both
                    for k in 1..j.leaf_count() {
                        for cand in all_trees(k) {
                            let dom = |x: &Tree| dominates(&cand, x);
                            assert!(!(dom(&s) && dom(&u)), "{cand} < {j}");
                        }
                    }
                    assert!(dominates(&j, &s) && dominates(&j, &u));
                }
            }
        }
    }

    fn dominates(big: &Tree, small: &Tree) -> bool {
        match (big, small) {
            (_, Tree::Leaf) => true,
            (Tree::Leaf, _) => false,
            (Tree::Caret(a, b), Tree::Caret(c, d)) => dominates(a, c) && dominates(b, d),
        }
    }

    #[test]
    fn exposed_and_collapse() {
        let x = t("((.,.),((.,.),.))");
        assert_eq!(x.exposed_carets(), vec![0, 2]);
        assert_eq!(x.collapse_caret(2).unwrap(), t("((.,.),(.,.))"));
        assert_eq!(x.collapse_caret(1), None);
        assert_eq!(x.split_leaf(4).unwrap(), t("((.,.),((.,.),(.,.)))"));
    }
}
