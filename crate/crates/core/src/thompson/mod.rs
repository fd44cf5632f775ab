//! Thompson's group F as reduced tree pairs.
//!
//! An element `top/bottom` maps the leaf intervals of `bottom` onto those of
//! `top`. Products are compositions of maps: `g.multiply(h)` applies `h` first.

pub mod pl;
pub mod rewrite;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::forest::{tree_join, Cursor, Tree};
pub use pl::PLMap;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FElement {
    top: Tree,
    bottom: Tree,
}

impl FElement {
    /// The reduced element `top/bottom`.
    pub fn new(top: Tree, bottom: Tree) -> Result<Self> {
        Ok(FElement::unreduced(top, bottom)?.reduced())
    }

    /// The pair as given, without cancelling common carets.
    pub fn unreduced(top: Tree, bottom: Tree) -> Result<Self> {
        if top.leaf_count() != bottom.leaf_count() {
            return Err(Error::LeafCountMismatch {
                top: top.leaf_count(),
                bottom: bottom.leaf_count(),
            });
        }
        Ok(FElement { top, bottom })
    }

    pub fn identity() -> Self {
        FElement {
            top: Tree::Leaf,
            bottom: Tree::Leaf,
        }
    }

    /// `A`, the generator `x₀`: `((.,.),.) / (.,(.,.))`.
    pub fn a() -> Self {
        FElement {
            top: Tree::left_comb(3),
            bottom: Tree::right_comb(3),
        }
    }

    /// `B`, the generator `x₁ = σ(A)`.
    pub fn b() -> Self {
        FElement::a().shift()
    }

    /// `A^n` as the comb pair with `n + 2` leaves (inverted for negative `n`).
    pub fn a_power(n: i64) -> Self {
        if n == 0 {
            return FElement::identity();
        }
        let k = n.unsigned_abs() as usize + 2;
        let g = FElement {
            top: Tree::left_comb(k),
            bottom: Tree::right_comb(k),
        };
        if n > 0 {
            g
        } else {
            g.inverse()
        }
    }

    pub fn top(&self) -> &Tree {
        &self.top
    }

    pub fn bottom(&self) -> &Tree {
        &self.bottom
    }

    pub fn leaf_count(&self) -> usize {
        self.top.leaf_count()
    }

    pub fn is_identity(&self) -> bool {
        self.top.is_leaf() && self.bottom.is_leaf()
    }

    pub fn is_reduced(&self) -> bool {
        let t = self.top.exposed_carets();
        !self.bottom.exposed_carets().iter().any(|i| t.contains(i))
    }

    /// Cancels carets exposed at the same position in both trees.
    pub fn reduced(&self) -> Self {
        let (mut top, mut bottom) = (self.top.clone(), self.bottom.clone());
        loop {
            let t = top.exposed_carets();
            let Some(i) = bottom.exposed_carets().into_iter().find(|i| t.contains(i)) else {
                break;
            };
            top = top.collapse_caret(i).expect("exposed");
            bottom = bottom.collapse_caret(i).expect("exposed");
        }
        FElement { top, bottom }
    }

    pub fn inverse(&self) -> Self {
        FElement {
            top: self.bottom.clone(),
            bottom: self.top.clone(),
        }
    }

    /// `self ∘ h`: the map `h` followed by `self`.
    pub fn multiply(&self, h: &FElement) -> FElement {
        let (f, g) = tree_join(&self.bottom, &h.top);
        let top = self.top.graft(&f).expect("leaf counts match");
        let bottom = h.bottom.graft(&g).expect("leaf counts match");
        FElement { top, bottom }.reduced()
    }

    pub fn pow(&self, n: i64) -> FElement {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = FElement::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.multiply(&base);
        }
        acc
    }

    /// The shift `σ`: identity on `[0, 1/2]`, a rescaled copy of `self` on `[1/2, 1]`.
    pub fn shift(&self) -> Self {
        FElement {
            top: Tree::caret(Tree::Leaf, self.top.clone()),
            bottom: Tree::caret(Tree::Leaf, self.bottom.clone()),
        }
        .reduced()
    }

    /// The same element written over a larger bottom tree `bottom ⊇ self.bottom`.
    pub fn expand_to_bottom(&self, bottom: &Tree) -> Option<FElement> {
        let (f, g) = tree_join(&self.bottom, bottom);
        if !g.is_identity() {
            return None;
        }
        Some(FElement {
            top: self.top.graft(&f).ok()?,
            bottom: bottom.clone(),
        })
    }

    pub fn to_pl(&self) -> PLMap {
        PLMap::from_tree_pair(&self.top, &self.bottom)
    }

    /// Evaluates a product of generators, e.g. `A^2 B^-1 D`.
    pub fn from_word(word: &[(Generator, i64)]) -> FElement {
        word.iter()
            .fold(FElement::identity(), |acc, (g, e)| acc.multiply(&g.element().pow(*e)))
    }
}

/// Named generators accepted by the word parser.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    A,
    B,
    /// The four-leaf element whose `Ψ` coefficient is `(d - 2)/(d - 1)`.
    D,
}

impl Generator {
    pub fn element(self) -> FElement {
        match self {
            Generator::A => FElement::a(),
            Generator::B => FElement::b(),
            Generator::D => FElement::d(),
        }
    }
}

impl FElement {
    /// The element `D = ((.,.),(.,.)) / (.,((.,.),.))`.
    pub fn d() -> Self {
        FElement {
            top: Tree::full(2),
            bottom: Tree::caret(Tree::Leaf, Tree::caret(Tree::single_caret(), Tree::Leaf)),
        }
    }
}

impl fmt::Display for FElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.top, self.bottom)
    }
}

impl fmt::Debug for FElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `top/bottom` tree pairs or generator words like `A^2 B^-1 D`.
/// `1` and the empty word are the identity.
impl FromStr for FElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains('/') {
            let mut c = Cursor::new(s);
            let top = c.tree()?;
            c.expect('/')?;
            let bottom = c.tree()?;
            if !c.at_end() {
                return Err(c.error("trailing input after tree pair".into()));
            }
            return FElement::new(top, bottom);
        }
        Ok(FElement::from_word(&parse_word(s)?))
    }
}

/// Parses a generator word into `(generator, exponent)` pairs.
pub fn parse_word(s: &str) -> Result<Vec<(Generator, i64)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let err = |pos: usize, msg: String| Error::Parse { pos, msg };
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() || ch == '*' || ch == '·' {
            i += 1;
            continue;
        }
        let g = match ch {
            'A' | 'a' => Generator::A,
            'B' | 'b' => Generator::B,
            'D' | 'd' => Generator::D,
            '1' if out.is_empty() && s.trim() == "1" => return Ok(Vec::new()),
            _ => return Err(err(pos, format!("unexpected '{ch}'"))),
        };
        i += 1;
        let mut exp = 1i64;
        if i < chars.len() && chars[i].1 == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && chars[i].1 == '-' {
                i += 1;
            }
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|c| c.1).collect();
            let at = chars.get(start).map_or(s.len(), |c| c.0);
            exp = text
                .parse()
                .map_err(|_| err(at, format!("bad exponent '{text}'")))?;
        }
        out.push((g, exp));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> FElement {
        s.parse().unwrap()
    }

    #[test]
    fn generators() {
        assert_eq!(FElement::a().to_string(), "((.,.),.)/(.,(.,.))");
        assert_eq!(FElement::b().to_string(), "(.,((.,.),.))/(.,(.,(.,.)))");
        assert!(FElement::d().is_reduced());
        assert_eq!(FElement::d().leaf_count(), 4);
    }

    #[test]
    fn reduction() {
        let g = FElement::new("((.,.),(.,.))".parse().unwrap(), "((.,.),(.,.))".parse().unwrap()).unwrap();
        assert!(g.is_identity());
        let g = e("((.,.),(.,.))/(.,(.,(.,.)))");
        assert_eq!(g, FElement::a());
        assert!(FElement::new(Tree::Leaf, Tree::single_caret()).is_err());
    }

    #[test]
    fn a_power_matches_repeated_product() {
        for n in -5..=6 {
            assert_eq!(FElement::a_power(n), FElement::a().pow(n), "n = {n}");
        }
        assert_eq!(FElement::a_power(15).leaf_count(), 17);
    }

    #[test]
    fn group_laws() {
        let (a, b, d) = (FElement::a(), FElement::b(), FElement::d());
        assert!(a.multiply(&a.inverse()).is_identity());
        assert_eq!(a.multiply(&b).multiply(&d), a.multiply(&b.multiply(&d)));
        // x₁x₀ = x₀x₂ with x₂ = A⁻¹BA
        let x2 = a.inverse().multiply(&b).multiply(&a);
        assert_eq!(x2, b.shift());
        assert_eq!(b.multiply(&a), a.multiply(&x2));
    }

    #[test]
    fn product_is_composition_of_maps() {
        let (a, b) = (FElement::a(), FElement::b());
        let ab = a.multiply(&b);
        assert_eq!(ab.to_pl(), a.to_pl().compose(&b.to_pl()));
    }

    #[test]
    fn word_parsing() {
        assert_eq!(e("A^2 B^-1 A"), FElement::from_word(&[(Generator::A, 2), (Generator::B, -1), (Generator::A, 1)]));
        assert_eq!(e("AB"), FElement::a().multiply(&FElement::b()));
        assert!(e("1").is_identity());
        assert!(e("").is_identity());
        assert!(matches!("A^x".parse::<FElement>(), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!("A C".parse::<FElement>(), Err(Error::Parse { pos: 2, .. })));
        assert_eq!(e(" ((.,.),.) / (.,(.,.)) "), FElement::a());
    }

    #[test]
    fn expansion() {
        let g = FElement::a().expand_to_bottom(&Tree::full(2)).unwrap();
        assert_eq!(g.reduced(), FElement::a());
        assert_eq!(g.to_pl(), FElement::a().to_pl());
        assert!(FElement::a().expand_to_bottom(&Tree::single_caret()).is_none());
    }
}
