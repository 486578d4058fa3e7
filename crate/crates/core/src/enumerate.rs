//! Output-sensitive enumeration of minimal absent words, extended bispecial
//! factors, minimal rare words and minimal unique substrings.
//!
//! Absent words and bispecial factors are found by walking every tree edge
//! `(v̂, û)` of the extended longest-path tree. The fast link gives the path
//! `⟨top, bottom⟩` spelling the edge label below `slink(v̂)` and the symbol
//! `a` in front of it. The bottom node `u₁`, when white, is compared against
//! the white node of `û`: `a·u₁·b` is absent exactly for the children `b` of
//! `u₁` missing from `û`. Every white node `uᵢ` strictly between bottom and
//! top has `a·uᵢ` in the middle of the edge, so its only right extension is
//! the symbol `c` continuing the path, and `a·uᵢ·b` is absent for every other
//! child `b`.
//!
//! Occurring minimal rare words sit one symbol below a CDAWG node: for an
//! edge `(v₁, v₂)` the candidate is `wchar(v₁)·str(slink(v₁))·b`, validated
//! with stored occurrence counts.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::cdawg::{EdgeId, NodeId};
use crate::index::Index;
use crate::lpt::LptId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WordKind {
    Maw,
    Ebf,
    /// Occurring minimal rare word with the given occurrence count.
    Mrw(u32),
    Mus,
}

/// A reported word `a·str(u_node)·b`. When `reversed` is set the index was
/// built on the reversed text and the word is spelled backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WordHandle {
    pub a: u8,
    pub u_node: NodeId,
    pub b: u8,
    pub kind: WordKind,
    pub reversed: bool,
}

/// A minimal unique substring with its 0-based inclusive interval in the
/// original text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MusRecord {
    pub handle: WordHandle,
    pub interval: (usize, usize),
}

/// Instrumentation of one enumeration run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumReport {
    pub emitted: usize,
    /// Tree or CDAWG nodes inspected.
    pub visits: usize,
    /// Symbol comparisons.
    pub comparisons: usize,
    /// Path nodes strictly above the fast-link bottom that produced no
    /// absent word.
    pub empty_path_nodes: usize,
    pub aborted: bool,
}

impl EnumReport {
    pub fn work(&self) -> usize {
        self.visits + self.comparisons
    }
}

/// Constant in the work budget `visits + comparisons ≤ WORK_BUDGET · (e_R + |output| + 1)`
/// of a full absent-word or bispecial-factor enumeration.
pub const WORK_BUDGET: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthBound {
    /// Words of length at most ℓ.
    Max(usize),
    /// Words of length at least ℓ.
    Min(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("length bound must be at least 2, got {0}")]
    BoundTooSmall(usize),
}

/// Short words kept ready for length-bounded replay: all words of length at
/// most `m_star`, where `m_star` is the largest length whose prefix set
/// still fits in `e_min` entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StoredPrefixSet {
    pub m_star: usize,
    /// Sorted by non-decreasing word length.
    pub items: Vec<WordHandle>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Maw,
    Ebf,
}

fn emit_handle<F>(emit: &mut F, report: &mut EnumReport, h: WordHandle) -> bool
where
    F: FnMut(WordHandle) -> ControlFlow<()>,
{
    report.emitted += 1;
    if emit(h).is_break() {
        report.aborted = true;
        return false;
    }
    true
}

impl Index {
    fn handle(&self, a: u8, u: LptId, b: u8, kind: WordKind) -> WordHandle {
        WordHandle {
            a,
            u_node: self.lpt.node(u).cdawg_node,
            b,
            kind,
            reversed: self.stats.reversed,
        }
    }

    fn has_bispecial_context(&self, u: NodeId) -> bool {
        self.cdawg.node(u).left_ext >= 2 && self.cdawg.children(u).len() >= 2
    }

    /// Reports every minimal absent word once.
    pub fn enumerate_maws<F>(&self, emit: F) -> EnumReport
    where
        F: FnMut(WordHandle) -> ControlFlow<()>,
    {
        self.traverse(Target::Maw, None, emit)
    }

    /// Reports every extended bispecial factor once.
    pub fn enumerate_ebfs<F>(&self, emit: F) -> EnumReport
    where
        F: FnMut(WordHandle) -> ControlFlow<()>,
    {
        self.traverse(Target::Ebf, None, emit)
    }

    fn traverse<F>(&self, target: Target, bound: Option<LengthBound>, mut emit: F) -> EnumReport
    where
        F: FnMut(WordHandle) -> ControlFlow<()>,
    {
        let mut report = EnumReport::default();
        for (i, _) in self.cdawg.edges().iter().enumerate() {
            if !self.traverse_edge(EdgeId(i as u32), target, bound, &mut emit, &mut report) {
                break;
            }
        }
        debug_assert!(
            report.empty_path_nodes == 0 || !self.ends_with_unique_symbol(),
            "path node without an absent word in a text with a unique end symbol"
        );
        report
    }

    /// Processes one tree edge. Returns `false` when the callback aborted.
    fn traverse_edge<F>(
        &self,
        edge: EdgeId,
        target: Target,
        bound: Option<LengthBound>,
        emit: &mut F,
        report: &mut EnumReport,
    ) -> bool
    where
        F: FnMut(WordHandle) -> ControlFlow<()>,
    {
        let lpt = &self.lpt;
        let cdawg = &self.cdawg;
        let link = lpt.fast_link(edge);
        let a = link.a_char;
        let from_source = cdawg.edge(edge).src == NodeId::SOURCE;
        let len_of = |x: LptId| lpt.node(x).str_len as usize;
        // Words a·x·b have length len(x) + 2.
        let fits = |x: LptId| match bound {
            None => true,
            Some(LengthBound::Max(l)) => len_of(x) + 2 <= l,
            Some(LengthBound::Min(l)) => len_of(x) + 2 >= l,
        };

        let mut cur = link.bottom;
        let mut c_below: Option<u8> = None;
        if let Some(LengthBound::Max(l)) = bound {
            // Skip the deep part of the path with one level-ancestor query.
            if len_of(cur) + 2 > l {
                let cap = l - 2;
                if !from_source && len_of(link.top) > cap {
                    return true;
                }
                let deep = lpt
                    .level_ancestor(cur, cap as u32 + 1)
                    .expect("target length does not exceed the bottom length");
                report.visits += 1;
                c_below = lpt.parent_char(cdawg, deep);
                cur = lpt.node(deep).parent.expect("deep node lies below the top");
            }
        }

        loop {
            if !from_source && cur == link.top {
                break;
            }
            if !fits(cur) {
                // Lengths only shrink further up.
                if matches!(bound, Some(LengthBound::Min(_))) {
                    break;
                }
            } else {
                report.visits += 1;
                let ok = match c_below {
                    None => self.bottom_node(edge, a, cur, target, emit, report),
                    Some(c) => self.path_node(a, cur, c, target, emit, report),
                };
                if !ok {
                    return false;
                }
            }
            if cur == link.top {
                break;
            }
            c_below = lpt.parent_char(cdawg, cur);
            match lpt.node(cur).parent {
                Some(p) => cur = p,
                None => break,
            }
        }
        true
    }

    fn bottom_node<F>(
        &self,
        edge: EdgeId,
        a: u8,
        u1: LptId,
        target: Target,
        emit: &mut F,
        report: &mut EnumReport,
    ) -> bool
    where
        F: FnMut(WordHandle) -> ControlFlow<()>,
    {
        if !self.lpt.is_white(u1) {
            return true;
        }
        let hat_u = self.lpt.child_of_edge(edge);
        let tilde_u = self.lpt.node(hat_u).cdawg_node;
        let u = self.lpt.node(u1).cdawg_node;
        let kids = self.cdawg.children(u);
        let theirs = self.cdawg.children(tilde_u);
        match target {
            Target::Maw => {
                let mut j = 0;
                for e in kids {
                    while j < theirs.len() && theirs[j].first_char < e.first_char {
                        report.comparisons += 1;
                        j += 1;
                    }
                    report.comparisons += 1;
                    if j < theirs.len() && theirs[j].first_char == e.first_char {
                        j += 1;
                        continue;
                    }
                    if !emit_handle(emit, report, self.handle(a, u1, e.first_char, WordKind::Maw)) {
                        return false;
                    }
                }
            }
            Target::Ebf => {
                if !self.has_bispecial_context(u) {
                    return true;
                }
                for e in theirs {
                    report.comparisons += 1;
                    if !emit_handle(emit, report, self.handle(a, u1, e.first_char, WordKind::Ebf)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn path_node<F>(&self, a: u8, x: LptId, c: u8, target: Target, emit: &mut F, report: &mut EnumReport) -> bool
    where
        F: FnMut(WordHandle) -> ControlFlow<()>,
    {
        let u = self.lpt.node(x).cdawg_node;
        match target {
            Target::Maw => {
                let mut any = false;
                for e in self.cdawg.children(u) {
                    report.comparisons += 1;
                    if e.first_char == c {
                        continue;
                    }
                    any = true;
                    if !emit_handle(emit, report, self.handle(a, x, e.first_char, WordKind::Maw)) {
                        return false;
                    }
                }
                if !any {
                    report.empty_path_nodes += 1;
                }
            }
            Target::Ebf => {
                report.comparisons += 1;
                if self.has_bispecial_context(u) && !emit_handle(emit, report, self.handle(a, x, c, WordKind::Ebf)) {
                    return false;
                }
            }
        }
        true
    }

    /// Length-bounded minimal absent words.
    pub fn maws_length_bounded<F>(&self, bound: LengthBound, emit: F) -> Result<EnumReport, QueryError>
    where
        F: FnMut(WordHandle) -> ControlFlow<()>,
    {
        self.bounded(Target::Maw, bound, emit)
    }

    /// Length-bounded extended bispecial factors.
    pub fn ebfs_length_bounded<F>(&self, bound: LengthBound, emit: F) -> Result<EnumReport, QueryError>
    where
        F: FnMut(WordHandle) -> ControlFlow<()>,
    {
        self.bounded(Target::Ebf, bound, emit)
    }

    fn bounded<F>(&self, target: Target, bound: LengthBound, emit: F) -> Result<EnumReport, QueryError>
    where
        F: FnMut(WordHandle) -> ControlFlow<()>,
    {
        let l = match bound {
            LengthBound::Max(l) | LengthBound::Min(l) => l,
        };
        if l < 2 {
            return Err(QueryError::BoundTooSmall(l));
        }
        let stored = match target {
            Target::Maw => &self.stored_maws,
            Target::Ebf => &self.stored_ebfs,
        };
        if let LengthBound::Max(l) = bound {
            if l <= stored.m_star {
                return Ok(self.replay(stored, l, emit));
            }
        }
        Ok(self.traverse(target, Some(bound), emit))
    }

    /// Length-bounded enumeration by tree traversal, never answered from the
    /// stored short-word sets.
    pub fn traverse_length_bounded<F>(&self, kind: WordKind, bound: LengthBound, emit: F) -> Result<EnumReport, QueryError>
    where
        F: FnMut(WordHandle) -> ControlFlow<()>,
    {
        let (LengthBound::Max(l) | LengthBound::Min(l)) = bound;
        if l < 2 {
            return Err(QueryError::BoundTooSmall(l));
        }
        let target = match kind {
            WordKind::Ebf => Target::Ebf,
            _ => Target::Maw,
        };
        Ok(self.traverse(target, Some(bound), emit))
    }

    /// Replays stored words of length at most `l`.
    pub fn replay<F>(&self, stored: &StoredPrefixSet, l: usize, mut emit: F) -> EnumReport
    where
        F: FnMut(WordHandle) -> ControlFlow<()>,
    {
        let mut report = EnumReport::default();
        for h in &stored.items {
            report.visits += 1;
            if self.word_len(h) > l {
                break;
            }
            if !emit_handle(&mut emit, &mut report, *h) {
                break;
            }
        }
        report
    }

    /// Runs a full enumeration and keeps the words of length at most
    /// `m_star`, where `m_star` is maximal with at most `e_min` such words.
    pub fn precompute_stored_sets(&self, kind: WordKind) -> StoredPrefixSet {
        let target = match kind {
            WordKind::Ebf => Target::Ebf,
            _ => Target::Maw,
        };
        let mut all = Vec::new();
        self.traverse(target, None, |h| {
            all.push(h);
            ControlFlow::Continue(())
        });
        all.sort_by_key(|h| self.word_len(h));
        let e_min = self.stats.e_min;
        let m_star = if all.len() <= e_min {
            self.stats.n + 2
        } else {
            self.word_len(&all[e_min]) - 1
        };
        all.retain(|h| self.word_len(h) <= m_star);
        StoredPrefixSet { m_star, items: all }
    }

    /// Reports every minimal rare word occurring in the text, tagged with
    /// its occurrence count.
    pub fn enumerate_occurring_mrws<F>(&self, mut emit: F) -> EnumReport
    where
        F: FnMut(WordHandle) -> ControlFlow<()>,
    {
        let mut report = EnumReport::default();
        self.for_each_mrw(&mut report, |h, _| emit(h));
        report
    }

    /// Occurring minimal rare words with exactly `k` occurrences.
    pub fn enumerate_mrws_k<F>(&self, k: u32, mut emit: F) -> EnumReport
    where
        F: FnMut(WordHandle) -> ControlFlow<()>,
    {
        let mut report = EnumReport::default();
        let mut count = 0;
        self.for_each_mrw(&mut report, |h, _| match h.kind {
            WordKind::Mrw(occ) if occ == k => {
                count += 1;
                emit(h)
            }
            _ => ControlFlow::Continue(()),
        });
        report.emitted = count;
        report
    }

    /// Reports every minimal unique substring with its interval.
    pub fn enumerate_mus<F>(&self, mut emit: F) -> EnumReport
    where
        F: FnMut(MusRecord) -> ControlFlow<()>,
    {
        let mut report = EnumReport::default();
        let mut count = 0;
        self.for_each_mrw(&mut report, |h, edge| match h.kind {
            WordKind::Mrw(1) => {
                count += 1;
                let interval = self.unique_interval(&h, edge);
                emit(MusRecord {
                    handle: WordHandle { kind: WordKind::Mus, ..h },
                    interval,
                })
            }
            _ => ControlFlow::Continue(()),
        });
        report.emitted = count;
        report
    }

    fn unique_interval(&self, h: &WordHandle, edge: EdgeId) -> (usize, usize) {
        let e = self.cdawg.edge(edge);
        let end = self.cdawg.node(e.dst).end_pos as usize - (e.label_len as usize - 1);
        let start = end + 1 - self.word_len(h);
        if h.reversed {
            let n = self.stats.n;
            (n - 1 - end, n - 1 - start)
        } else {
            (start, end)
        }
    }

    fn for_each_mrw<F>(&self, report: &mut EnumReport, mut emit: F)
    where
        F: FnMut(WordHandle, EdgeId) -> ControlFlow<()>,
    {
        let cdawg = &self.cdawg;
        for v1 in cdawg.node_ids().skip(1) {
            let node = cdawg.node(v1);
            let (Some(a), Some(u)) = (node.wchar, node.suffix_link) else {
                continue;
            };
            report.visits += 1;
            for e_id in cdawg.child_ids(v1) {
                let e = cdawg.edge(e_id);
                report.comparisons += 1;
                let occ_aub = cdawg.node(e.dst).occ;
                if node.occ <= occ_aub {
                    continue;
                }
                let ub = cdawg
                    .child_by_char(u, e.first_char)
                    .expect("u·b occurs whenever a·u·b does");
                if cdawg.node(cdawg.edge(ub).dst).occ <= occ_aub {
                    continue;
                }
                let h = WordHandle {
                    a,
                    u_node: u,
                    b: e.first_char,
                    kind: WordKind::Mrw(occ_aub),
                    reversed: self.stats.reversed,
                };
                report.emitted += 1;
                if emit(h, e_id).is_break() {
                    report.aborted = true;
                    return;
                }
            }
        }
    }
}
