//! The extended longest-path tree.
//!
//! The primary edges of the CDAWG form a spanning tree rooted at the source.
//! Every secondary edge `(v, u)` is added to that tree as an edge to a fresh
//! gray leaf that stands for `u` as reached through this edge, so the tree
//! has exactly one edge per CDAWG edge. White node ids coincide with CDAWG
//! node ids; gray nodes follow in CDAWG edge order.
//!
//! Each tree edge `(v̂, û)` with label `X` carries a fast link `(top, bottom,
//! a_char)`: `top` is the white node of `slink(v̂)`, `bottom` is the node
//! reached from `top` by spelling `X`, and `a_char` is the symbol preceding
//! `str(bottom)` in `str(v̂)·X`. Edges out of the source use the convention
//! that the auxiliary node above the source consumes the first symbol of
//! `X`; their `top` is the source and the walk from the bottom up includes it.

use thiserror::Error;

use crate::cdawg::{Cdawg, EdgeId, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LptId(pub u32);

impl LptId {
    pub const ROOT: LptId = LptId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<NodeId> for LptId {
    fn from(v: NodeId) -> LptId {
        LptId(v.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Gray,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LptNode {
    pub color: Color,
    /// The CDAWG node this tree node stands for.
    pub cdawg_node: NodeId,
    pub str_len: u32,
    pub parent: Option<LptId>,
    /// CDAWG edge that leads into this node; `None` for the root.
    pub parent_edge: Option<EdgeId>,
    pub suffix_link: Option<LptId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FastLink {
    pub top: LptId,
    pub bottom: LptId,
    pub a_char: u8,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LptError {
    #[error("fast links need the build-time text, but it was dropped")]
    MissingText,
    #[error("fast link for edge {edge} does not spell the edge label: {detail}")]
    FastLinkMismatch { edge: u32, detail: &'static str },
    #[error("level-ancestor target length {target} exceeds node length {len}")]
    TargetTooLong { target: u32, len: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LptPlus {
    pub(crate) nodes: Vec<LptNode>,
    /// Tree node entered by each CDAWG edge.
    pub(crate) child_of_edge: Vec<LptId>,
    pub(crate) fast_links: Vec<FastLink>,
    /// `jumps[k][x]` is the `2^k`-th ancestor of `x` (the root maps to itself).
    jumps: Vec<Vec<LptId>>,
}

impl LptPlus {
    /// Builds the tree with suffix links and fast links. The CDAWG must
    /// still hold its text.
    pub fn build(cdawg: &Cdawg) -> Result<LptPlus, LptError> {
        let mut lpt = Self::build_tree(cdawg);
        lpt.fast_links = compute_fast_links(&lpt, cdawg)?;
        Ok(lpt)
    }

    /// Builds the tree and suffix links only.
    pub(crate) fn build_tree(cdawg: &Cdawg) -> LptPlus {
        let v_count = cdawg.node_count();
        let mut nodes: Vec<LptNode> = cdawg
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, n)| LptNode {
                color: Color::White,
                cdawg_node: NodeId(i as u32),
                str_len: n.max_len,
                parent: None,
                parent_edge: None,
                suffix_link: None,
            })
            .collect();
        let mut child_of_edge = Vec::with_capacity(cdawg.edge_count());
        let mut grays_of: Vec<Vec<LptId>> = vec![Vec::new(); v_count];
        for (i, e) in cdawg.edges().iter().enumerate() {
            let parent = Some(LptId::from(e.src));
            let parent_edge = Some(EdgeId(i as u32));
            if e.is_primary {
                let child = LptId::from(e.dst);
                nodes[child.index()].parent = parent;
                nodes[child.index()].parent_edge = parent_edge;
                child_of_edge.push(child);
            } else {
                let id = LptId(nodes.len() as u32);
                nodes.push(LptNode {
                    color: Color::Gray,
                    cdawg_node: e.dst,
                    str_len: cdawg.max_len(e.src) + e.label_len,
                    parent,
                    parent_edge,
                    suffix_link: None,
                });
                grays_of[e.dst.index()].push(id);
                child_of_edge.push(id);
            }
        }
        for (u, grays) in grays_of.iter_mut().enumerate() {
            let u = NodeId(u as u32);
            grays.sort_by_key(|g| {
                let node = &nodes[g.index()];
                let first = cdawg.edge(node.parent_edge.unwrap()).first_char;
                (std::cmp::Reverse(node.str_len), first)
            });
            debug_assert!(grays.windows(2).all(|w| nodes[w[0].index()].str_len > nodes[w[1].index()].str_len));
            let tail = cdawg.suffix_link(u).map(LptId::from);
            let mut prev = LptId::from(u);
            for &g in grays.iter() {
                nodes[prev.index()].suffix_link = Some(g);
                prev = g;
            }
            nodes[prev.index()].suffix_link = tail;
        }
        let jumps = build_jumps(&nodes);
        LptPlus {
            nodes,
            child_of_edge,
            fast_links: Vec::new(),
            jumps,
        }
    }

    pub(crate) fn from_parts(cdawg: &Cdawg, fast_links: Vec<FastLink>) -> LptPlus {
        let mut lpt = Self::build_tree(cdawg);
        lpt.fast_links = fast_links;
        lpt
    }

    pub fn node(&self, x: LptId) -> &LptNode {
        &self.nodes[x.index()]
    }

    pub fn nodes(&self) -> &[LptNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.child_of_edge.len()
    }

    pub fn is_white(&self, x: LptId) -> bool {
        self.nodes[x.index()].color == Color::White
    }

    /// Tree node entered by CDAWG edge `e`.
    pub fn child_of_edge(&self, e: EdgeId) -> LptId {
        self.child_of_edge[e.index()]
    }

    pub fn fast_link(&self, e: EdgeId) -> FastLink {
        self.fast_links[e.index()]
    }

    pub fn fast_links(&self) -> &[FastLink] {
        &self.fast_links
    }

    /// The white node of the CDAWG node a tree node was copied from.
    pub fn white_of(&self, x: LptId) -> LptId {
        LptId::from(self.nodes[x.index()].cdawg_node)
    }

    /// First symbol of the tree edge entering `x`.
    pub fn parent_char(&self, cdawg: &Cdawg, x: LptId) -> Option<u8> {
        self.nodes[x.index()].parent_edge.map(|e| cdawg.edge(e).first_char)
    }

    /// Shallowest ancestor of `x` (possibly `x` itself) whose string length
    /// is at least `target_len`.
    pub fn level_ancestor(&self, x: LptId, target_len: u32) -> Result<LptId, LptError> {
        let len = self.nodes[x.index()].str_len;
        if target_len > len {
            return Err(LptError::TargetTooLong {
                target: target_len,
                len,
            });
        }
        let mut cur = x;
        for level in self.jumps.iter().rev() {
            let up = level[cur.index()];
            if self.nodes[up.index()].str_len >= target_len {
                cur = up;
            }
        }
        Ok(cur)
    }

    /// Words of memory used by the jump table.
    pub fn level_ancestor_words(&self) -> usize {
        self.jumps.iter().map(Vec::len).sum()
    }
}

fn build_jumps(nodes: &[LptNode]) -> Vec<Vec<LptId>> {
    let first: Vec<LptId> = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| n.parent.unwrap_or(LptId(i as u32)))
        .collect();
    let mut levels = 1;
    while (1usize << levels) < nodes.len() {
        levels += 1;
    }
    let mut jumps = vec![first];
    for k in 1..levels {
        let prev = &jumps[k - 1];
        let next: Vec<LptId> = prev.iter().map(|&p| prev[p.index()]).collect();
        jumps.push(next);
    }
    jumps
}

fn compute_fast_links(lpt: &LptPlus, cdawg: &Cdawg) -> Result<Vec<FastLink>, LptError> {
    let text = cdawg.text().ok_or(LptError::MissingText)?.symbols();
    let mut links = Vec::with_capacity(cdawg.edge_count());
    for (i, e) in cdawg.edges().iter().enumerate() {
        let edge = EdgeId(i as u32);
        let (start, end) = cdawg.label_ref(edge).ok_or(LptError::MissingText)?;
        let (top, mut pos) = if e.src == NodeId::SOURCE {
            (LptId::ROOT, start + 1)
        } else {
            let link = cdawg.suffix_link(e.src).expect("non-source node has a suffix link");
            (LptId::from(link), start)
        };
        let mismatch = |detail| LptError::FastLinkMismatch { edge: i as u32, detail };
        let mut node = top;
        while pos < end {
            if !lpt.is_white(node) {
                return Err(mismatch("walk continues below a gray leaf"));
            }
            let c = text[pos as usize];
            let f = cdawg
                .child_by_char(lpt.node(node).cdawg_node, c)
                .ok_or_else(|| mismatch("no out-edge for the next label symbol"))?;
            let len = cdawg.edge(f).label_len;
            if pos + len > end {
                return Err(mismatch("label ends inside a tree edge"));
            }
            if cfg!(debug_assertions) && cdawg.label(f) != Some(&text[pos as usize..(pos + len) as usize]) {
                return Err(mismatch("tree edge label differs from the edge label"));
            }
            node = lpt.child_of_edge(f);
            pos += len;
        }
        let bottom = node;
        let a_pos = (end - 1)
            .checked_sub(lpt.node(bottom).str_len)
            .ok_or_else(|| mismatch("bottom is not shorter than the edge string"))?;
        links.push(FastLink {
            top,
            bottom,
            a_char: text[a_pos as usize],
        });
    }
    Ok(links)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::Grammar;
    use crate::text::{Sentinels, Text};

    fn setup(raw: &[u8], mode: Sentinels) -> (Cdawg, LptPlus) {
        let g = Cdawg::build(&Text::wrap(raw, mode).unwrap());
        let lpt = LptPlus::build(&g).unwrap();
        (g, lpt)
    }

    #[test]
    fn star_for_all_distinct_text() {
        let (g, lpt) = setup(b"ab", Sentinels::Both);
        assert_eq!(lpt.edge_count(), 4);
        assert_eq!(lpt.len(), 5);
        assert!(lpt.nodes().iter().skip(1).all(|n| n.parent == Some(LptId::ROOT)));
        assert_eq!(lpt.nodes().iter().filter(|n| n.color == Color::Gray).count(), 3);
        assert!(lpt.nodes()[2..].iter().all(|n| n.cdawg_node == g.sink()));
    }

    #[test]
    fn unary_text_tree_size() {
        let (g, lpt) = setup(b"aaaaa", Sentinels::EndOnly);
        let secondary = g.edges().iter().filter(|e| !e.is_primary).count();
        assert_eq!(lpt.len(), g.node_count() + secondary);
        assert_eq!(lpt.edge_count(), g.edge_count());
    }

    #[test]
    fn gray_chain_lengths_decrease_and_end_at_suffix_link() {
        let (g, lpt) = setup(b"ababcbababcbc", Sentinels::EndOnly);
        for u in g.node_ids().skip(1) {
            let mut x = LptId::from(u);
            let mut len = lpt.node(x).str_len;
            loop {
                let next = lpt.node(x).suffix_link.unwrap();
                assert!(lpt.node(next).str_len < len);
                len = lpt.node(next).str_len;
                if lpt.is_white(next) {
                    assert_eq!(Some(lpt.node(next).cdawg_node), g.suffix_link(u));
                    break;
                }
                assert_eq!(lpt.white_of(next), LptId::from(u));
                x = next;
            }
        }
    }

    #[test]
    fn running_example_fast_link_through_bc() {
        let (g, lpt) = setup(b"ababcbababcbc", Sentinels::EndOnly);
        let gr = Grammar::build(&g);
        let e = (0..g.edge_count() as u32)
            .map(EdgeId)
            .find(|&e| g.label(e) == Some(b"c\x00"))
            .expect("edge labelled c$");
        let link = lpt.fast_link(e);
        assert_eq!(link.a_char, b'c');
        let mut path = Vec::new();
        let mut x = link.bottom;
        while x != link.top {
            path.push(gr.decompress_node(&g, lpt.node(x).cdawg_node));
            x = lpt.node(x).parent.unwrap();
        }
        assert!(path.contains(&b"bc".to_vec()));
    }

    #[test]
    fn level_ancestor_matches_naive_walk() {
        let (_, lpt) = setup(b"abaababaabaababaababa", Sentinels::Both);
        for x in 0..lpt.len() as u32 {
            let x = LptId(x);
            let len = lpt.node(x).str_len;
            for target in 0..=len {
                let mut naive = x;
                while let Some(p) = lpt.node(naive).parent {
                    if lpt.node(p).str_len >= target {
                        naive = p;
                    } else {
                        break;
                    }
                }
                assert_eq!(lpt.level_ancestor(x, target).unwrap(), naive);
            }
            assert!(lpt.level_ancestor(x, len + 1).is_err());
            assert_eq!(lpt.level_ancestor(x, 0).unwrap(), LptId::ROOT);
        }
    }

    #[test]
    fn missing_text_is_reported() {
        let mut g = Cdawg::build(&Text::wrap(b"abab", Sentinels::Both).unwrap());
        g.drop_text();
        assert_eq!(LptPlus::build(&g).unwrap_err(), LptError::MissingText);
    }
}
