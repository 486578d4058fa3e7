//! The CDAWG grammar.
//!
//! Each CDAWG node `v` is a non-terminal `X(v)`. Its right-hand side has one
//! symbol per in-edge `(w, v)`: the terminal `first_char` when `w` is the
//! source, the non-terminal `X(w)` otherwise. In-edges are ordered by
//! decreasing `max_len(w) + label_len`, so `X(v)` expands to the first
//! symbols of the strings of `v` from longest to shortest, which is the
//! prefix of `str(v)` of length `max_len(v) - max_len(slink(v))`.
//! Concatenating these expansions along the suffix-link chain yields `str(v)`
//! without the text.

use crate::cdawg::{Cdawg, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GrammarSymbol {
    Terminal(u8),
    NonTerminal(NodeId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    rhs_start: Vec<u32>,
    rhs: Vec<GrammarSymbol>,
    /// For `X -> Y` unary productions, the first non-unary non-terminal
    /// reached along the chain; the node itself otherwise.
    shortcut: Vec<NodeId>,
}

impl Grammar {
    pub fn build(cdawg: &Cdawg) -> Grammar {
        let ins = cdawg.in_edges();
        let mut rhs_start = Vec::with_capacity(cdawg.node_count() + 1);
        let mut rhs = Vec::with_capacity(cdawg.edge_count());
        for mut edges in ins {
            rhs_start.push(rhs.len() as u32);
            edges.sort_by_key(|&e| {
                let e = cdawg.edge(e);
                (std::cmp::Reverse(cdawg.max_len(e.src) + e.label_len), e.first_char)
            });
            rhs.extend(edges.into_iter().map(|e| {
                let e = cdawg.edge(e);
                if e.src == NodeId::SOURCE {
                    GrammarSymbol::Terminal(e.first_char)
                } else {
                    GrammarSymbol::NonTerminal(e.src)
                }
            }));
        }
        rhs_start.push(rhs.len() as u32);
        Grammar::with_shortcuts(rhs_start, rhs)
    }

    pub(crate) fn with_shortcuts(rhs_start: Vec<u32>, rhs: Vec<GrammarSymbol>) -> Grammar {
        let count = rhs_start.len() - 1;
        let mut shortcut: Vec<NodeId> = Vec::with_capacity(count);
        // Right-hand sides only mention smaller ids.
        for v in 0..count {
            let body = &rhs[rhs_start[v] as usize..rhs_start[v + 1] as usize];
            let target = match body {
                [GrammarSymbol::NonTerminal(w)] => shortcut[w.index()],
                _ => NodeId(v as u32),
            };
            shortcut.push(target);
        }
        Grammar {
            rhs_start,
            rhs,
            shortcut,
        }
    }

    pub fn rhs(&self, v: NodeId) -> &[GrammarSymbol] {
        let i = v.index();
        &self.rhs[self.rhs_start[i] as usize..self.rhs_start[i + 1] as usize]
    }

    pub fn shortcut(&self, v: NodeId) -> NodeId {
        self.shortcut[v.index()]
    }

    pub fn nonterminal_count(&self) -> usize {
        self.shortcut.len()
    }

    /// Total length of all right-hand sides.
    pub fn size(&self) -> usize {
        self.rhs.len()
    }

    /// The root non-terminal (the sink).
    pub fn root(&self) -> NodeId {
        NodeId(self.shortcut.len() as u32 - 1)
    }

    pub(crate) fn raw_parts(&self) -> (&[u32], &[GrammarSymbol]) {
        (&self.rhs_start, &self.rhs)
    }

    /// Appends the expansion of `X(v)` to `out`, returning the number of
    /// non-terminals visited.
    pub fn expand_into(&self, v: NodeId, out: &mut Vec<u8>) -> usize {
        let mut work = 0;
        let mut stack = vec![GrammarSymbol::NonTerminal(v)];
        while let Some(sym) = stack.pop() {
            match sym {
                GrammarSymbol::Terminal(c) => out.push(c),
                GrammarSymbol::NonTerminal(w) => {
                    work += 1;
                    stack.extend(self.rhs(self.shortcut(w)).iter().rev().copied());
                }
            }
        }
        work
    }

    pub fn expand(&self, v: NodeId) -> Vec<u8> {
        let mut out = Vec::new();
        self.expand_into(v, &mut out);
        out
    }

    /// Returns `str(v)`.
    pub fn decompress_node(&self, cdawg: &Cdawg, v: NodeId) -> Vec<u8> {
        self.decompress_node_counted(cdawg, v).0
    }

    /// Returns `str(v)` together with the work spent (stack pops plus
    /// suffix-link steps).
    pub fn decompress_node_counted(&self, cdawg: &Cdawg, v: NodeId) -> (Vec<u8>, usize) {
        let mut out = Vec::with_capacity(cdawg.max_len(v) as usize);
        let mut work = 0;
        let mut x = v;
        while x != NodeId::SOURCE {
            work += 1 + self.expand_into(x, &mut out);
            x = cdawg.suffix_link(x).expect("non-source node has a suffix link");
        }
        (out, work)
    }
}
