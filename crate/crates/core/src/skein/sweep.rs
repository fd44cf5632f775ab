//! Evaluation of `⟨Φ(lower) x, Φ(upper) y⟩` by sweeping a cut through the
//! closed diagram.
//!
//! The cut starts just above `x`, crosses the lower forest one caret at a time
//! (splits) and the upper forest upside down (merges), and ends just below
//! `y`. Merges are taken as soon as they are available, which keeps the cut
//! narrow for the tree pairs of Thompson group elements.

use crate::error::{Error, Result};
use crate::forest::{Forest, Tree};
use crate::skein::cabled::{CabledVec, LocalOps};
use crate::skein::scalar::{Arith, Scalar};

/// Limits applied to every evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Terms in a single vector.
    pub max_terms: usize,
    /// Cabled strands crossing the cut.
    pub max_width: usize,
    /// Leaves of any tree involved.
    pub max_leaves: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_terms: 5_000_000,
            max_width: 24,
            max_leaves: 64,
        }
    }
}

impl Caps {
    /// Defaults overridden by `WYSIWYG_MAX_TERMS`, `WYSIWYG_MAX_WIDTH` and `WYSIWYG_MAX_LEAVES`.
    pub fn from_env() -> Self {
        let get = |k: &str, dflt: usize| {
            std::env::var(k)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .unwrap_or(dflt)
        };
        let d = Caps::default();
        Caps {
            max_terms: get("WYSIWYG_MAX_TERMS", d.max_terms),
            max_width: get("WYSIWYG_MAX_WIDTH", d.max_width),
            max_leaves: get("WYSIWYG_MAX_LEAVES", d.max_leaves),
        }
    }

    pub fn check_leaves(&self, n: usize) -> Result<()> {
        if n > self.max_leaves {
            return Err(Error::CapExceeded {
                what: "leaves",
                limit: self.max_leaves,
                reached: n,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// Split the strand at this position.
    Split(usize),
    /// Merge the strands at this position and the next.
    Merge(usize),
}

/// A sequence of steps taking the roots of `lower` to the roots of `upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub steps: Vec<Step>,
    pub width: usize,
    pub mirrored: bool,
}

struct Arena {
    /// `(left, right)` children, `None` for leaves.
    children: Vec<Option<(usize, usize)>>,
    /// `(parent, is_left)`.
    parent: Vec<Option<(usize, bool)>>,
    leaves: Vec<usize>,
    leaf_ids: Vec<usize>,
    roots: Vec<usize>,
}

impl Arena {
    fn new(f: &Forest) -> Self {
        let mut a = Arena {
            children: Vec::new(),
            parent: Vec::new(),
            leaves: Vec::new(),
            leaf_ids: Vec::new(),
            roots: Vec::new(),
        };
        for t in &f.trees {
            let r = a.add(t, None);
            a.roots.push(r);
        }
        a
    }

    fn add(&mut self, t: &Tree, parent: Option<(usize, bool)>) -> usize {
        let id = self.children.len();
        self.children.push(None);
        self.parent.push(parent);
        self.leaves.push(t.leaf_count());
        match t {
            Tree::Leaf => self.leaf_ids.push(id),
            Tree::Caret(l, r) => {
                let li = self.add(l, Some((id, true)));
                let ri = self.add(r, Some((id, false)));
                self.children[id] = Some((li, ri));
            }
        }
        id
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Item {
    Low(usize),
    Up(usize),
}

fn plan_one(lower: &Forest, upper: &Forest) -> Result<(Vec<Step>, usize)> {
    if lower.leaves() != upper.leaves() {
        return Err(Error::ArityMismatch {
            left: lower.leaves(),
            right: upper.leaves(),
        });
    }
    let lo = Arena::new(lower);
    let up = Arena::new(upper);
    let mut front: Vec<Item> = lo.roots.iter().map(|&r| Item::Low(r)).collect();
    let mut steps = Vec::new();
    let mut width = front.len();
    loop {
        // lower leaves become upper leaves
        let mut offset = 0;
        for item in front.iter_mut() {
            match *item {
                Item::Low(n) => {
                    if lo.children[n].is_none() {
                        *item = Item::Up(up.leaf_ids[offset]);
                    }
                    offset += lo.leaves[n];
                }
                Item::Up(n) => offset += up.leaves[n],
            }
        }
        let merge = front.windows(2).position(|w| match (w[0], w[1]) {
            (Item::Up(x), Item::Up(y)) => matches!(
                (up.parent[x], up.parent[y]),
                (Some((p, true)), Some((q, false))) if p == q
            ),
            _ => false,
        });
        if let Some(i) = merge {
            let Item::Up(x) = front[i] else { unreachable!() };
            let (p, _) = up.parent[x].expect("has parent");
            front.splice(i..i + 2, [Item::Up(p)]);
            steps.push(Step::Merge(i));
            continue;
        }
        let split = front
            .iter()
            .position(|it| matches!(it, Item::Low(n) if lo.children[*n].is_some()));
        if let Some(i) = split {
            let Item::Low(n) = front[i] else { unreachable!() };
            let (l, r) = lo.children[n].expect("internal");
            front.splice(i..i + 1, [Item::Low(l), Item::Low(r)]);
            steps.push(Step::Split(i));
            width = width.max(front.len());
            continue;
        }
        break;
    }
    debug_assert!(front
        .iter()
        .zip(&up.roots)
        .all(|(it, &r)| *it == Item::Up(r)));
    Ok((steps, width))
}

impl Plan {
    /// The narrower of the left-first and right-first sweeps.
    pub fn new(lower: &Forest, upper: &Forest) -> Result<Plan> {
        let (s1, w1) = plan_one(lower, upper)?;
        let (s2, w2) = plan_one(&lower.mirror(), &upper.mirror())?;
        Ok(if w2 < w1 {
            Plan {
                steps: s2,
                width: w2,
                mirrored: true,
            }
        } else {
            Plan {
                steps: s1,
                width: w1,
                mirrored: false,
            }
        })
    }
}

/// Statistics of one evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub width: usize,
    pub peak_terms: usize,
    pub vertices: u32,
}

/// `⟨Φ(lower) x, Φ(upper) y⟩`, normalized.
pub fn sweep_inner<A: Arith>(
    x: &CabledVec<A::C>,
    lower: &Forest,
    upper: &Forest,
    y: &CabledVec<A::C>,
    caps: &Caps,
    ops: &LocalOps<A::C>,
    ar: &A,
) -> Result<(Scalar, SweepStats)> {
    if x.strands() != lower.roots() || y.strands() != upper.roots() {
        return Err(Error::Incompatible(format!(
            "vectors on {} and {} strands against forests with {} and {} roots",
            x.strands(),
            y.strands(),
            lower.roots(),
            upper.roots()
        )));
    }
    caps.check_leaves(lower.leaves())?;
    let plan = Plan::new(lower, upper)?;
    if plan.width > caps.max_width {
        return Err(Error::CapExceeded {
            what: "cut width",
            limit: caps.max_width,
            reached: plan.width,
        });
    }
    let (mut v, y) = if plan.mirrored {
        (x.mirror(), y.mirror())
    } else {
        (x.clone(), y.clone())
    };
    let mut stats = SweepStats {
        width: plan.width,
        peak_terms: v.term_count(),
        vertices: 0,
    };
    for step in &plan.steps {
        match *step {
            Step::Split(i) => v.split(i, ops, caps.max_terms, ar)?,
            Step::Merge(i) => v.merge(i, ops, caps.max_terms, ar)?,
        }
        stats.peak_terms = stats.peak_terms.max(v.term_count());
    }
    stats.vertices = v.vertices + y.vertices;
    Ok((v.inner(&y, ar)?, stats))
}

/// Applies `Φ(f)` to a vector whose strands from `offset` on are the roots of `f`.
pub fn apply_forest<A: Arith>(
    x: &CabledVec<A::C>,
    f: &Forest,
    offset: usize,
    caps: &Caps,
    ops: &LocalOps<A::C>,
    ar: &A,
) -> Result<CabledVec<A::C>> {
    fn grow<A: Arith>(
        v: &mut CabledVec<A::C>,
        t: &Tree,
        pos: usize,
        caps: &Caps,
        ops: &LocalOps<A::C>,
        ar: &A,
    ) -> Result<()> {
        if let Tree::Caret(l, r) = t {
            v.split(pos, ops, caps.max_terms, ar)?;
            // right subtree first so that `pos` stays valid for the left one
            grow(v, r, pos + 1, caps, ops, ar)?;
            grow(v, l, pos, caps, ops, ar)?;
        }
        Ok(())
    }
    if x.strands() != offset + f.roots() {
        return Err(Error::ArityMismatch {
            left: x.strands() - offset.min(x.strands()),
            right: f.roots(),
        });
    }
    caps.check_leaves(f.leaves())?;
    let mut v = x.clone();
    let mut pos = x.strands();
    for t in f.trees.iter().rev() {
        pos -= 1;
        grow(&mut v, t, pos, caps, ops, ar)?;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein::poly::Laurent;
    use crate::skein::scalar::Exact;

    fn f(s: &str) -> Forest {
        s.parse().unwrap()
    }

    #[test]
    fn combs_stay_narrow() {
        let n = 20;
        let lower = Forest::new(vec![Tree::Leaf, Tree::right_comb(n)]);
        let upper = Forest::new(vec![Tree::left_comb(n), Tree::Leaf]);
        let p = Plan::new(&lower, &upper).unwrap();
        assert!(p.width <= 3, "width {}", p.width);
        let lower = Forest::new(vec![Tree::left_comb(n)]);
        let upper = Forest::new(vec![Tree::right_comb(n)]);
        assert!(Plan::new(&lower, &upper).unwrap().width <= 3);
    }

    #[test]
    fn identity_forests() {
        let p = Plan::new(&f(".;."), &f(".;.")).unwrap();
        assert!(p.steps.is_empty());
        let p = Plan::new(&f("(.,.)"), &f("(.,.)")).unwrap();
        assert_eq!(p.steps, vec![Step::Split(0), Step::Merge(0)]);
    }

    #[test]
    fn sweep_matches_materialized_inner_product() {
        let ar = Exact;
        let ops = LocalOps::new(&ar);
        let caps = Caps::default();
        let x = CabledVec::<Laurent>::xcup();
        let lower = f("(.,(.,.));.");
        let upper = f(".;((.,.),.)");
        let (s, _) = sweep_inner(&x, &lower, &upper, &x, &caps, &ops, &ar).unwrap();
        let a = apply_forest(&x, &lower, 0, &caps, &ops, &ar).unwrap();
        let b = apply_forest(&x, &upper, 0, &caps, &ops, &ar).unwrap();
        assert_eq!(s, a.inner(&b, &ar).unwrap());
    }

    #[test]
    fn width_cap_is_enforced() {
        let ar = Exact;
        let ops = LocalOps::new(&ar);
        let caps = Caps {
            max_width: 2,
            ..Caps::default()
        };
        let x = CabledVec::<Laurent>::xcup();
        let r = sweep_inner(&x, &f("(.,.);(.,.)"), &f("(.,.);(.,.)"), &x, &caps, &ops, &ar);
        assert!(matches!(r, Err(Error::CapExceeded { what: "cut width", .. })));
    }
}
