//! Products by rewriting strand diagrams.
//!
//! A tree pair `top/bottom` is a strand diagram: a source, the splits of
//! `bottom`, the merges of `top`, a sink. Stacking two diagrams and applying
//!
//! * bigon: a split whose two outputs enter the same merge becomes one strand,
//! * exchange: a merge feeding a split becomes two parallel strands,
//!
//! until neither applies gives the reduced diagram of the product. This is an
//! independent check on [`FElement::multiply`](super::FElement::multiply).

use rand::Rng;

use crate::forest::Tree;
use crate::thompson::FElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Source,
    Sink,
    Split,
    Merge,
}

/// A port is `(node, index)`.
type Port = (usize, usize);

#[derive(Clone, Debug)]
struct Node {
    kind: Kind,
    alive: bool,
    /// Where each input comes from (an output port).
    inputs: [Option<Port>; 2],
    /// Where each output goes (an input port).
    outputs: [Option<Port>; 2],
}

/// A strand diagram with splits, merges, one source and one sink.
#[derive(Clone, Debug)]
pub struct StrandDiagram {
    nodes: Vec<Node>,
    source: usize,
    sink: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Bigon(usize),
    Exchange(usize),
}

impl StrandDiagram {
    fn node(&mut self, kind: Kind) -> usize {
        self.nodes.push(Node {
            kind,
            alive: true,
            inputs: [None; 2],
            outputs: [None; 2],
        });
        self.nodes.len() - 1
    }

    fn connect(&mut self, from: Port, to: Port) {
        self.nodes[from.0].outputs[from.1] = Some(to);
        self.nodes[to.0].inputs[to.1] = Some(from);
    }

    /// Adds splits of `t` fed from `from`; returns the leaf ports left to right.
    fn grow_splits(&mut self, t: &Tree, from: Port, leaves: &mut Vec<Port>) {
        match t {
            Tree::Leaf => leaves.push(from),
            Tree::Caret(l, r) => {
                let s = self.node(Kind::Split);
                self.connect(from, (s, 0));
                self.grow_splits(l, (s, 0), leaves);
                self.grow_splits(r, (s, 1), leaves);
            }
        }
    }

    /// Adds merges of `t` consuming `leaves`; returns the output port of the root.
    fn grow_merges(&mut self, t: &Tree, leaves: &mut std::slice::Iter<'_, Port>) -> Port {
        match t {
            Tree::Leaf => *leaves.next().expect("enough leaves"),
            Tree::Caret(l, r) => {
                let a = self.grow_merges(l, leaves);
                let b = self.grow_merges(r, leaves);
                let m = self.node(Kind::Merge);
                self.connect(a, (m, 0));
                self.connect(b, (m, 1));
                (m, 0)
            }
        }
    }

    /// The diagram of `g · h` before any rewriting: `h` below `g`.
    pub fn stack(g: &FElement, h: &FElement) -> Self {
        let mut d = StrandDiagram {
            nodes: Vec::new(),
            source: 0,
            sink: 0,
        };
        d.source = d.node(Kind::Source);
        let mut port = (d.source, 0);
        for e in [h, g] {
            let mut leaves = Vec::new();
            d.grow_splits(e.bottom(), port, &mut leaves);
            port = d.grow_merges(e.top(), &mut leaves.iter());
        }
        d.sink = d.node(Kind::Sink);
        d.connect(port, (d.sink, 0));
        d
    }

    pub fn from_element(g: &FElement) -> Self {
        StrandDiagram::stack(g, &FElement::identity())
    }

    /// All moves that currently apply.
    pub fn moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if !n.alive {
                continue;
            }
            match n.kind {
                Kind::Split => {
                    if let (Some((a, 0)), Some((b, 1))) = (n.outputs[0], n.outputs[1]) {
                        if a == b && self.nodes[a].kind == Kind::Merge {
                            out.push(Move::Bigon(i));
                        }
                    }
                }
                Kind::Merge => {
                    if let Some((a, _)) = n.outputs[0] {
                        if self.nodes[a].kind == Kind::Split {
                            out.push(Move::Exchange(i));
                        }
                    }
                }
                _ => {}
            }
        }
        out
    }

    pub fn apply(&mut self, mv: Move) {
        match mv {
            Move::Bigon(s) => {
                let (m, _) = self.nodes[s].outputs[0].expect("bigon");
                let from = self.nodes[s].inputs[0].expect("wired");
                let to = self.nodes[m].outputs[0].expect("wired");
                self.nodes[s].alive = false;
                self.nodes[m].alive = false;
                self.connect(from, to);
            }
            Move::Exchange(m) => {
                let (s, _) = self.nodes[m].outputs[0].expect("exchange");
                let (in0, in1) = (
                    self.nodes[m].inputs[0].expect("wired"),
                    self.nodes[m].inputs[1].expect("wired"),
                );
                let (out0, out1) = (
                    self.nodes[s].outputs[0].expect("wired"),
                    self.nodes[s].outputs[1].expect("wired"),
                );
                self.nodes[s].alive = false;
                self.nodes[m].alive = false;
                self.connect(in0, out0);
                self.connect(in1, out1);
            }
        }
    }

    /// Rewrites until no move applies, always taking the first one. Returns the number of moves.
    pub fn normalize(&mut self) -> usize {
        let mut count = 0;
        while let Some(&mv) = self.moves().first() {
            self.apply(mv);
            count += 1;
        }
        count
    }

    /// Rewrites until no move applies, choosing moves at random.
    pub fn normalize_random<R: Rng>(&mut self, rng: &mut R) -> usize {
        let mut count = 0;
        loop {
            let moves = self.moves();
            if moves.is_empty() {
                return count;
            }
            let mv = moves[rng.random_range(0..moves.len())];
            self.apply(mv);
            count += 1;
        }
    }

    /// Reads the tree pair back, if the diagram is splits followed by merges.
    pub fn to_element(&self) -> Option<FElement> {
        fn down(d: &StrandDiagram, port: Port) -> Option<Tree> {
            let (n, _) = d.nodes[port.0].outputs[port.1]?;
            match d.nodes[n].kind {
                Kind::Split => Some(Tree::caret(down(d, (n, 0))?, down(d, (n, 1))?)),
                _ => Some(Tree::Leaf),
            }
        }
        fn up(d: &StrandDiagram, port: Port) -> Option<Tree> {
            let (n, _) = d.nodes[port.0].inputs[port.1]?;
            match d.nodes[n].kind {
                Kind::Merge => Some(Tree::caret(up(d, (n, 0))?, up(d, (n, 1))?)),
                _ => Some(Tree::Leaf),
            }
        }
        let bottom = down(self, (self.source, 0))?;
        let top = up(self, (self.sink, 0))?;
        if !self.moves().is_empty() {
            return None;
        }
        FElement::new(top, bottom).ok()
    }
}

/// `g · h` computed by diagram rewriting.
pub fn multiply_by_rewriting(g: &FElement, h: &FElement) -> FElement {
    let mut d = StrandDiagram::stack(g, h);
    d.normalize();
    d.to_element().expect("rewriting ends in a reduced diagram")
}
