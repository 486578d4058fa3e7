//! Compact directed acyclic word graphs.
//!
//! The automaton is produced in two passes: the classical online suffix
//! automaton (DAWG) is built left to right, then every state that is neither
//! branching, final, nor the source is spliced out so that chains of unary
//! states become single labelled edges. Suffix links of surviving states
//! already point at surviving states, so they carry over unchanged.
//!
//! Node ids are assigned in increasing order of `max_len` (ties broken by
//! first end position), which makes id order a topological order: every edge
//! goes from a smaller id to a larger one. The source is always `NodeId(0)`
//! and the sink is always the last node.

use crate::text::Text;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    pub const SOURCE: NodeId = NodeId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdawgNode {
    /// Length of the longest string represented by the node.
    pub max_len: u32,
    pub suffix_link: Option<NodeId>,
    /// First symbol of the shortest string of the node, i.e. the label of the
    /// hard Weiner link from `suffix_link` into this node. `None` for the source.
    pub wchar: Option<u8>,
    /// Number of occurrences of the node's strings in the text.
    pub occ: u32,
    /// Number of distinct symbols `a` such that `a·str(v)` occurs.
    pub left_ext: u32,
    /// End position (0-based, inclusive) of the first occurrence of `str(v)`.
    pub end_pos: u32,
    /// Whether the node's strings are suffixes of the text.
    pub is_final: bool,
    pub(crate) first_edge: u32,
    pub(crate) edge_count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdawgEdge {
    pub src: NodeId,
    pub dst: NodeId,
    pub first_char: u8,
    pub label_len: u32,
    /// `max_len(src) + label_len == max_len(dst)`.
    pub is_primary: bool,
}

/// The compact DAWG of a text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cdawg {
    pub(crate) nodes: Vec<CdawgNode>,
    pub(crate) edges: Vec<CdawgEdge>,
    /// `(start, end)` text range of each edge label; dropped by [`Cdawg::drop_text`].
    pub(crate) labels: Option<Vec<(u32, u32)>>,
    pub(crate) text: Option<Text>,
    pub(crate) n: u32,
    pub(crate) sigma: u32,
}

impl Cdawg {
    pub fn build(text: &Text) -> Cdawg {
        let sam = SuffixAutomaton::build(text.symbols());
        compact(&sam, text)
    }

    pub fn source(&self) -> NodeId {
        NodeId::SOURCE
    }

    pub fn sink(&self) -> NodeId {
        NodeId(self.nodes.len() as u32 - 1)
    }

    pub fn node(&self, v: NodeId) -> &CdawgNode {
        &self.nodes[v.index()]
    }

    pub fn nodes(&self) -> &[CdawgNode] {
        &self.nodes
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    pub fn edge(&self, e: EdgeId) -> &CdawgEdge {
        &self.edges[e.index()]
    }

    pub fn edges(&self) -> &[CdawgEdge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn text_len(&self) -> usize {
        self.n as usize
    }

    pub fn sigma(&self) -> usize {
        self.sigma as usize
    }

    pub fn max_len(&self, v: NodeId) -> u32 {
        self.nodes[v.index()].max_len
    }

    pub fn suffix_link(&self, v: NodeId) -> Option<NodeId> {
        self.nodes[v.index()].suffix_link
    }

    /// Out-edges of `v`, sorted by first label symbol.
    pub fn children(&self, v: NodeId) -> &[CdawgEdge] {
        let node = &self.nodes[v.index()];
        let start = node.first_edge as usize;
        &self.edges[start..start + node.edge_count as usize]
    }

    /// Id range of the out-edges of `v`.
    pub fn child_ids(&self, v: NodeId) -> impl Iterator<Item = EdgeId> {
        let node = &self.nodes[v.index()];
        (node.first_edge..node.first_edge + node.edge_count).map(EdgeId)
    }

    pub fn child_by_char(&self, v: NodeId, c: u8) -> Option<EdgeId> {
        let node = &self.nodes[v.index()];
        let kids = self.children(v);
        kids.binary_search_by_key(&c, |e| e.first_char)
            .ok()
            .map(|i| EdgeId(node.first_edge + i as u32))
    }

    pub fn primary_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_primary).count()
    }

    /// Whether `v` is not the sink. Internal nodes (the source included)
    /// correspond one-to-one with maximal repeats.
    pub fn is_internal(&self, v: NodeId) -> bool {
        v != self.sink()
    }

    /// The build-time text, if still retained.
    pub fn text(&self) -> Option<&Text> {
        self.text.as_ref()
    }

    /// Label of edge `e`, if the text is still retained.
    pub fn label(&self, e: EdgeId) -> Option<&[u8]> {
        let labels = self.labels.as_ref()?;
        let text = self.text.as_ref()?;
        let (s, t) = labels[e.index()];
        Some(&text.symbols()[s as usize..t as usize])
    }

    /// Text range of the label of edge `e`, if label references are retained.
    pub fn label_ref(&self, e: EdgeId) -> Option<(u32, u32)> {
        self.labels.as_ref().map(|l| l[e.index()])
    }

    /// Discards the text and per-edge label references. Only first symbols and
    /// label lengths remain.
    pub fn drop_text(&mut self) {
        self.text = None;
        self.labels = None;
    }

    /// In-edges of every node, grouped by destination.
    pub fn in_edges(&self) -> Vec<Vec<EdgeId>> {
        let mut ins = vec![Vec::new(); self.nodes.len()];
        for (i, e) in self.edges.iter().enumerate() {
            ins[e.dst.index()].push(EdgeId(i as u32));
        }
        ins
    }

    /// Total number of left extensions of maximal repeats, read off the
    /// stored Weiner-link counts. Equals the edge count of the CDAWG of the
    /// reversed text.
    pub fn left_extension_total(&self) -> usize {
        self.node_ids()
            .filter(|&v| self.is_internal(v))
            .map(|v| self.nodes[v.index()].left_ext as usize)
            .sum()
    }

    #[doc(hidden)]
    pub fn corrupt_wchar_for_testing(&mut self, v: NodeId) {
        let node = &mut self.nodes[v.index()];
        if let Some(c) = node.wchar {
            node.wchar = Some(c.wrapping_add(1));
        }
    }

    pub(crate) fn from_parts(nodes: Vec<CdawgNode>, edges: Vec<CdawgEdge>, n: u32, sigma: u32) -> Cdawg {
        Cdawg {
            nodes,
            edges,
            labels: None,
            text: None,
            n,
            sigma,
        }
    }
}

/// Edge counts and sizes of the CDAWGs of a text and of its reversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexStats {
    pub n: usize,
    pub sigma: usize,
    pub e_right: usize,
    pub e_left: usize,
    pub e_min: usize,
    pub node_count: usize,
    /// True when the retained automaton is built on the reversed text.
    pub reversed: bool,
}

/// Requested orientation of an index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Orientation {
    /// Keep whichever automaton has fewer edges, forward on ties.
    #[default]
    Auto,
    Forward,
    Reverse,
}

pub fn compute_stats(text: &Text) -> IndexStats {
    let fwd = Cdawg::build(text);
    let rev = Cdawg::build(&text.reversed());
    stats_from(&fwd, &rev, rev.edge_count() < fwd.edge_count())
}

fn stats_from(fwd: &Cdawg, rev: &Cdawg, reversed: bool) -> IndexStats {
    let (e_right, e_left) = (fwd.edge_count(), rev.edge_count());
    IndexStats {
        n: fwd.text_len(),
        sigma: fwd.sigma(),
        e_right,
        e_left,
        e_min: e_right.min(e_left),
        node_count: fwd.node_count(),
        reversed,
    }
}

/// Builds both automata and keeps the one selected by `orientation`.
pub fn choose_orientation(text: &Text, orientation: Orientation) -> (Cdawg, IndexStats) {
    let fwd = Cdawg::build(text);
    let rev = Cdawg::build(&text.reversed());
    let reversed = match orientation {
        Orientation::Auto => rev.edge_count() < fwd.edge_count(),
        Orientation::Forward => false,
        Orientation::Reverse => true,
    };
    let stats = stats_from(&fwd, &rev, reversed);
    (if reversed { rev } else { fwd }, stats)
}

struct SamState {
    len: u32,
    link: u32,
    first_pos: u32,
    next: Vec<(u8, u32)>,
}

impl SamState {
    fn get(&self, c: u8) -> Option<u32> {
        self.next
            .binary_search_by_key(&c, |&(k, _)| k)
            .ok()
            .map(|i| self.next[i].1)
    }

    fn set(&mut self, c: u8, to: u32) {
        match self.next.binary_search_by_key(&c, |&(k, _)| k) {
            Ok(i) => self.next[i].1 = to,
            Err(i) => self.next.insert(i, (c, to)),
        }
    }
}

struct SuffixAutomaton {
    states: Vec<SamState>,
    last: u32,
}

impl SuffixAutomaton {
    fn build(s: &[u8]) -> SuffixAutomaton {
        let mut states = Vec::with_capacity(2 * s.len() + 1);
        states.push(SamState {
            len: 0,
            link: NONE,
            first_pos: NONE,
            next: Vec::new(),
        });
        let mut last = 0u32;
        for (i, &c) in s.iter().enumerate() {
            let cur = states.len() as u32;
            states.push(SamState {
                len: states[last as usize].len + 1,
                link: 0,
                first_pos: i as u32,
                next: Vec::new(),
            });
            let mut p = last;
            while p != NONE && states[p as usize].get(c).is_none() {
                states[p as usize].set(c, cur);
                p = states[p as usize].link;
            }
            if p != NONE {
                let q = states[p as usize].get(c).unwrap();
                if states[p as usize].len + 1 == states[q as usize].len {
                    states[cur as usize].link = q;
                } else {
                    let clone = states.len() as u32;
                    let cloned = SamState {
                        len: states[p as usize].len + 1,
                        link: states[q as usize].link,
                        first_pos: states[q as usize].first_pos,
                        next: states[q as usize].next.clone(),
                    };
                    states.push(cloned);
                    while p != NONE && states[p as usize].get(c) == Some(q) {
                        states[p as usize].set(c, clone);
                        p = states[p as usize].link;
                    }
                    states[q as usize].link = clone;
                    states[cur as usize].link = clone;
                }
            }
            last = cur;
        }
        SuffixAutomaton { states, last }
    }
}

fn compact(sam: &SuffixAutomaton, text: &Text) -> Cdawg {
    let states = &sam.states;
    let m = states.len();
    let mut is_final = vec![false; m];
    let mut p = sam.last;
    while p != NONE {
        is_final[p as usize] = true;
        p = states[p as usize].link;
    }
    let is_node: Vec<bool> = (0..m)
        .map(|s| s == 0 || is_final[s] || states[s].next.len() >= 2)
        .collect();

    // Bucket states by length, longest first, so the unique successor of a
    // unary state is resolved before the state itself.
    let n = text.len();
    let mut by_len: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for (s, st) in states.iter().enumerate() {
        by_len[st.len as usize].push(s as u32);
    }
    let mut resolve = vec![(NONE, 0u32); m];
    for bucket in by_len.iter().rev() {
        for &s in bucket {
            let s = s as usize;
            resolve[s] = if is_node[s] {
                (s as u32, 0)
            } else {
                let (_, t) = states[s].next[0];
                let (node, dist) = resolve[t as usize];
                (node, dist + 1)
            };
        }
    }

    let mut node_states: Vec<u32> = (0..m as u32).filter(|&s| is_node[s as usize]).collect();
    node_states.sort_by_key(|&s| {
        let st = &states[s as usize];
        (st.len, if s == 0 { 0 } else { st.first_pos as u64 + 1 })
    });
    let mut node_of_state = vec![NONE; m];
    for (id, &s) in node_states.iter().enumerate() {
        node_of_state[s as usize] = id as u32;
    }

    let mut link_children = vec![0u32; m];
    for st in states.iter().skip(1) {
        link_children[st.link as usize] += 1;
    }

    let symbols = text.symbols();
    let mut nodes = Vec::with_capacity(node_states.len());
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for &s in &node_states {
        let st = &states[s as usize];
        let first_edge = edges.len() as u32;
        for &(c, t) in &st.next {
            let (dst_state, dist) = resolve[t as usize];
            let dst = &states[dst_state as usize];
            let label_len = dist + 1;
            let end = dst.first_pos + 1;
            edges.push(CdawgEdge {
                src: NodeId(node_of_state[s as usize]),
                dst: NodeId(node_of_state[dst_state as usize]),
                first_char: c,
                label_len,
                is_primary: st.len + label_len == dst.len,
            });
            labels.push((end - label_len, end));
        }
        let (suffix_link, wchar) = if s == 0 {
            (None, None)
        } else {
            let link = st.link;
            let link_len = states[link as usize].len;
            let w = symbols[(st.first_pos - link_len) as usize];
            (Some(NodeId(node_of_state[link as usize])), Some(w))
        };
        nodes.push(CdawgNode {
            max_len: st.len,
            suffix_link,
            wchar,
            occ: 0,
            left_ext: link_children[s as usize],
            end_pos: if s == 0 { 0 } else { st.first_pos },
            is_final: is_final[s as usize],
            first_edge,
            edge_count: edges.len() as u32 - first_edge,
        });
    }

    let mut cdawg = Cdawg {
        nodes,
        edges,
        labels: Some(labels),
        text: Some(text.clone()),
        n: n as u32,
        sigma: text.sigma() as u32,
    };
    compute_occurrences(&mut cdawg);
    cdawg
}

/// Fills `occ` by summation in reverse topological (decreasing id) order:
/// every occurrence of `str(v)` either ends the text or continues along
/// exactly one out-edge.
pub(crate) fn compute_occurrences(cdawg: &mut Cdawg) {
    for v in (0..cdawg.nodes.len()).rev() {
        let node = &cdawg.nodes[v];
        let start = node.first_edge as usize;
        let below: u32 = cdawg.edges[start..start + node.edge_count as usize]
            .iter()
            .map(|e| cdawg.nodes[e.dst.index()].occ)
            .sum();
        cdawg.nodes[v].occ = below + node.is_final as u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::Sentinels;

    fn build(raw: &[u8], mode: Sentinels) -> Cdawg {
        Cdawg::build(&Text::wrap(raw, mode).unwrap())
    }

    #[test]
    fn all_distinct_wrapped_text_has_two_nodes_and_four_edges() {
        let g = build(b"ab", Sentinels::Both);
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 4);
        assert!(g.edges().iter().all(|e| e.src == g.source() && e.dst == g.sink()));
        assert_eq!(g.primary_edge_count(), 1);
        let labels: Vec<&[u8]> = g.child_ids(g.source()).map(|e| g.label(e).unwrap()).collect();
        assert_eq!(labels, vec![&b"\x00"[..], b"\x01ab\x00", b"ab\x00", b"b\x00"]);
    }

    #[test]
    fn stats_of_all_distinct_text() {
        let stats = compute_stats(&Text::wrap(b"ab", Sentinels::Both).unwrap());
        assert_eq!((stats.e_right, stats.e_left, stats.node_count), (4, 4, 2));
        assert!(!stats.reversed);
    }

    #[test]
    fn unary_text_nodes_are_powers() {
        let g = build(b"aaaa", Sentinels::None);
        let lens: Vec<u32> = g.nodes().iter().map(|n| n.max_len).collect();
        assert_eq!(lens, vec![0, 1, 2, 3, 4]);
        assert!(g.edges().iter().all(|e| e.is_primary && e.label_len == 1));
        assert_eq!(g.node(NodeId(2)).occ, 3);
        assert_eq!(g.node(g.source()).occ, 5);
    }

    #[test]
    fn running_example_has_expected_repeats() {
        let g = build(b"ababcbababcbc", Sentinels::EndOnly);
        let text = g.text().unwrap().symbols().to_vec();
        let strs: Vec<&[u8]> = g
            .nodes()
            .iter()
            .map(|n| &text[(n.end_pos + 1 - n.max_len) as usize..=n.end_pos as usize])
            .collect();
        assert!(strs.contains(&&b"ababcb"[..]));
        assert!(strs.contains(&&b"bc"[..]));
        assert_eq!(g.primary_edge_count(), g.node_count() - 1);
    }

    #[test]
    fn suffix_links_and_wchars() {
        let g = build(b"ababcbababcbc", Sentinels::EndOnly);
        let text = g.text().unwrap().symbols().to_vec();
        for v in g.node_ids().skip(1) {
            let node = g.node(v);
            let link = g.node(node.suffix_link.unwrap());
            assert!(link.max_len < node.max_len);
            let shortest_start = node.end_pos + 1 - link.max_len - 1;
            assert_eq!(node.wchar, Some(text[shortest_start as usize]));
        }
    }

    #[test]
    fn children_sorted_and_edges_topological() {
        let g = build(b"abracadabra", Sentinels::Both);
        for v in g.node_ids() {
            let kids = g.children(v);
            assert!(kids.windows(2).all(|w| w[0].first_char < w[1].first_char));
            for e in kids {
                assert!(e.dst > e.src);
                assert!(g.max_len(e.src) + e.label_len <= g.max_len(e.dst));
            }
        }
    }

    #[test]
    fn orientation_tie_keeps_forward() {
        let (_, stats) = choose_orientation(&Text::wrap(b"abba", Sentinels::None).unwrap(), Orientation::Auto);
        assert_eq!(stats.e_right, stats.e_left);
        assert!(!stats.reversed);
        let (g, stats) = choose_orientation(&Text::wrap(b"abba", Sentinels::None).unwrap(), Orientation::Reverse);
        assert!(stats.reversed);
        assert_eq!(g.text().unwrap().symbols(), b"abba");
    }

    #[test]
    fn left_extension_total_matches_reverse_edge_count() {
        for raw in [&b"ababcbababcbc"[..], b"mississippi", b"aaaa", b"abcabcab"] {
            for mode in [Sentinels::None, Sentinels::Both] {
                let t = Text::wrap(raw, mode).unwrap();
                let stats = compute_stats(&t);
                assert_eq!(Cdawg::build(&t).left_extension_total(), stats.e_left);
            }
        }
    }

    #[test]
    fn drop_text_removes_labels() {
        let mut g = build(b"abab", Sentinels::Both);
        g.drop_text();
        assert!(g.text().is_none());
        assert!(g.label(EdgeId(0)).is_none());
    }
}
