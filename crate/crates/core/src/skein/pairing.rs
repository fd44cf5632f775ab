use std::fmt;

/// A perfect matching of boundary points, stored as a partner table.
///
/// For a diagram `m -> n` the points are numbered bottom `0..m` then top
/// `m..m+n`, each row left to right. The partner table is canonical, so two
/// pairings are equal iff their tables are.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing(Box<[u8]>);

impl Pairing {
    /// Builds from a partner table; panics if it is not an involution without fixed points.
    pub fn from_partners(partners: Vec<u8>) -> Self {
        debug_assert!(partners
            .iter()
            .enumerate()
            .all(|(i, &p)| (p as usize) != i && partners[p as usize] as usize == i));
        Pairing(partners.into_boxed_slice())
    }

    pub fn from_pairs(len: usize, pairs: &[(usize, usize)]) -> Self {
        let mut t = vec![u8::MAX; len];
        for &(a, b) in pairs {
            assert!(t[a] == u8::MAX && t[b] == u8::MAX && a != b, "not a matching");
            t[a] = b as u8;
            t[b] = a as u8;
        }
        assert!(t.iter().all(|&p| p != u8::MAX), "not a perfect matching");
        Pairing(t.into_boxed_slice())
    }

    pub fn empty() -> Self {
        Pairing(Box::new([]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn partner(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn table(&self) -> &[u8] {
        &self.0
    }

    /// Pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &p)| i < p as usize)
            .map(|(i, &p)| (i, p as usize))
            .collect()
    }

    /// Checks planarity for a diagram with `source` bottom points.
    pub fn is_planar(&self, source: usize) -> bool {
        let n = self.len();
        let target = n - source;
        // position around the boundary circle: bottom left to right, then top right to left
        let circ = |i: usize| if i < source { i } else { source + (target - 1 - (i - source)) };
        let chords: Vec<(usize, usize)> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (circ(a), circ(b));
                (x.min(y), x.max(y))
            })
            .collect();
        chords.iter().all(|&(a, b)| {
            chords
                .iter()
                .all(|&(c, d)| !((a < c && c < b && b < d) || (c < a && a < d && d < b)))
        })
    }

    /// True if some pair `(2k, 2k+1)` exists among the points `lo..hi`,
    /// where `lo` is even. These are killed by the cabling projectors.
    pub fn has_turnback(&self, lo: usize, hi: usize) -> bool {
        (lo..hi)
            .step_by(2)
            .any(|k| k + 1 < hi && self.0[k] as usize == k + 1)
    }

    /// Reflection in a vertical line, for a diagram `source -> len - source`.
    pub fn mirror(&self, source: usize) -> Pairing {
        let n = self.len();
        let target = n - source;
        let m = |i: usize| {
            if i < source {
                source - 1 - i
            } else {
                source + target - 1 - (i - source)
            }
        };
        let mut t = vec![0u8; n];
        for (i, &p) in self.0.iter().enumerate() {
            t[m(i)] = m(p as usize) as u8;
        }
        Pairing(t.into_boxed_slice())
    }

    /// Reflection in a horizontal line: a diagram `source -> target` becomes `target -> source`.
    pub fn flip(&self, source: usize) -> Pairing {
        let n = self.len();
        let target = n - source;
        let m = |i: usize| if i < source { target + i } else { i - source };
        let mut t = vec![0u8; n];
        for (i, &p) in self.0.iter().enumerate() {
            t[m(i)] = m(p as usize) as u8;
        }
        Pairing(t.into_boxed_slice())
    }
}

impl fmt::Debug for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.pairs())
    }
}

/// Stacks `upper` (`n -> p`) on `lower` (`m -> n`). Returns the composite
/// pairing `m -> p` and the number of closed loops formed in the middle.
pub fn glue(lower: &Pairing, upper: &Pairing, m: usize, n: usize, p: usize) -> (Pairing, u32) {
    debug_assert_eq!(lower.len(), m + n);
    debug_assert_eq!(upper.len(), n + p);
    let mut out = vec![u8::MAX; m + p];
    let mut seen = vec![false; n];

    for r in 0..m + p {
        if out[r] != u8::MAX {
            continue;
        }
        // true while standing on a point of `lower`
        let (mut in_lower, mut at) = if r < m { (true, r) } else { (false, n + r - m) };
        let end = loop {
            if in_lower {
                let y = lower.partner(at);
                if y < m {
                    break y;
                }
                seen[y - m] = true;
                in_lower = false;
                at = y - m;
            } else {
                let y = upper.partner(at);
                if y >= n {
                    break m + y - n;
                }
                seen[y] = true;
                in_lower = true;
                at = m + y;
            }
        };
        out[r] = end as u8;
        out[end] = r as u8;
    }

    let mut loops = 0;
    for k in 0..n {
        if seen[k] {
            continue;
        }
        loops += 1;
        let mut cur = k;
        loop {
            seen[cur] = true;
            let a = lower.partner(m + cur) - m;
            seen[a] = true;
            cur = upper.partner(a);
            if cur == k {
                break;
            }
        }
    }
    (Pairing(out.into_boxed_slice()), loops)
}

/// Applies a local diagram `op` (`w_in -> w_out`) to the points
/// `offset..offset + w_in` of a cup diagram `vec` (`0 -> len`).
pub fn glue_local(vec: &Pairing, op: &Pairing, offset: usize, w_in: usize, w_out: usize) -> (Pairing, u32) {
    let n = vec.len();
    let n_new = n - w_in + w_out;
    let in_window = |q: usize| q >= offset && q < offset + w_in;
    let map_old = |q: usize| if q < offset { q } else { q - w_in + w_out };
    let mut out = vec![u8::MAX; n_new];
    let mut seen = vec![false; w_in];

    for r in 0..n_new {
        if out[r] != u8::MAX {
            continue;
        }
        // (in_op, point): op points are `0..w_in` bottom, `w_in..` top
        let (mut in_op, mut at) = if r >= offset && r < offset + w_out {
            (true, w_in + r - offset)
        } else if r < offset {
            (false, r)
        } else {
            (false, r + w_in - w_out)
        };
        let end = loop {
            if in_op {
                let t = op.partner(at);
                if t >= w_in {
                    break offset + t - w_in;
                }
                seen[t] = true;
                in_op = false;
                at = offset + t;
            } else {
                let u = vec.partner(at);
                if !in_window(u) {
                    break map_old(u);
                }
                seen[u - offset] = true;
                in_op = true;
                at = u - offset;
            }
        };
        out[r] = end as u8;
        out[end] = r as u8;
    }

    let mut loops = 0;
    for b in 0..w_in {
        if seen[b] {
            continue;
        }
        loops += 1;
        let mut cur = b;
        loop {
            seen[cur] = true;
            let u = vec.partner(offset + cur) - offset;
            seen[u] = true;
            cur = op.partner(u);
            if cur == b {
                break;
            }
        }
    }
    (Pairing(out.into_boxed_slice()), loops)
}

/// Number of loops when two cup diagrams on the same points are glued face to face.
pub fn pair_loops(a: &Pairing, b: &Pairing) -> u32 {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut loops = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        loops += 1;
        let mut cur = s;
        loop {
            seen[cur] = true;
            let x = a.partner(cur);
            seen[x] = true;
            cur = b.partner(x);
            if cur == s {
                break;
            }
        }
    }
    loops
}

/// All planar pairings of `n` points on a line (Catalan many).
pub fn noncrossing_pairings(n: usize) -> Vec<Pairing> {
    fn rec(points: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if points.is_empty() {
            out.push(acc.clone());
            return;
        }
        let first = points[0];
        for k in (1..points.len()).step_by(2) {
            acc.push((first, points[k]));
            let inner = &points[1..k];
            let outer = &points[k + 1..];
            let mut inner_out = Vec::new();
            rec(inner, &mut Vec::new(), &mut inner_out);
            for i in inner_out {
                let mut acc2 = acc.clone();
                acc2.extend(i);
                rec(outer, &mut acc2, out);
            }
            acc.pop();
        }
    }
    if n % 2 == 1 {
        return Vec::new();
    }
    let pts: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    rec(&pts, &mut Vec::new(), &mut out);
    out.into_iter().map(|p| Pairing::from_pairs(n, &p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (0..=6).map(|k| noncrossing_pairings(2 * k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132]);
        assert!(noncrossing_pairings(8).iter().all(|p| p.is_planar(0)));
    }

    #[test]
    fn turnback_free_counts_are_riordan() {
        let counts: Vec<usize> = (1..=6)
            .map(|k| {
                noncrossing_pairings(2 * k)
                    .iter()
                    .filter(|p| !p.has_turnback(0, 2 * k))
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![0, 1, 1, 3, 6, 15]);
    }

    #[test]
    fn cup_against_cap_is_one_loop() {
        let cup = Pairing::from_pairs(2, &[(0, 1)]);
        let cap = cup.clone();
        let (p, loops) = glue(&cup, &cap, 0, 2, 0);
        assert!(p.is_empty());
        assert_eq!(loops, 1);
        assert_eq!(pair_loops(&cup, &cap), 1);
    }

    #[test]
    fn glue_local_matches_glue() {
        // applying e on points 1,2 of a 4-point cup diagram
        let e = Pairing::from_pairs(4, &[(0, 1), (2, 3)]);
        for v in noncrossing_pairings(4) {
            let (a, la) = glue_local(&v, &e, 1, 2, 2);
            let id_e_id = Pairing::from_pairs(8, &[(0, 4), (1, 2), (5, 6), (3, 7)]);
            let (b, lb) = glue(&v, &id_e_id, 0, 4, 4);
            assert_eq!((a, la), (b, lb));
        }
    }

    #[test]
    fn planarity_detects_crossings() {
        assert!(!Pairing::from_pairs(4, &[(0, 2), (1, 3)]).is_planar(0));
        // identity 2 -> 2 is planar, the swap is not
        assert!(Pairing::from_pairs(4, &[(0, 2), (1, 3)]).is_planar(2));
        assert!(!Pairing::from_pairs(4, &[(0, 3), (1, 2)]).is_planar(2));
    }
}
