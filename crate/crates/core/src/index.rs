//! The assembled index: oriented CDAWG, grammar, extended longest-path tree
//! and the precomputed short-word sets.

use thiserror::Error;

use crate::cdawg::{choose_orientation, Cdawg, IndexStats, NodeId, Orientation};
use crate::enumerate::{StoredPrefixSet, WordHandle, WordKind};
use crate::grammar::Grammar;
use crate::lpt::{LptError, LptPlus};
use crate::text::{SentinelCodes, Sentinels, Text};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct BuildOptions {
    pub orientation: Orientation,
    /// Keep the text and edge label references after the build (debug mode).
    pub retain_text: bool,
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error(transparent)]
    Lpt(#[from] LptError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Index {
    pub(crate) cdawg: Cdawg,
    pub(crate) grammar: Grammar,
    pub(crate) lpt: LptPlus,
    pub(crate) stats: IndexStats,
    pub(crate) mode: Sentinels,
    pub(crate) codes: SentinelCodes,
    pub(crate) stored_maws: StoredPrefixSet,
    pub(crate) stored_ebfs: StoredPrefixSet,
}

/// Memory use of the retained structure, in machine words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpaceReport {
    pub nodes: usize,
    pub edges: usize,
    pub grammar: usize,
    pub tree: usize,
    pub level_ancestor: usize,
    pub stored_sets: usize,
}

impl Index {
    pub fn build(text: &Text, opts: BuildOptions) -> Result<Index, BuildError> {
        let (mut cdawg, stats) = choose_orientation(text, opts.orientation);
        let grammar = Grammar::build(&cdawg);
        let lpt = LptPlus::build(&cdawg)?;
        if !opts.retain_text {
            cdawg.drop_text();
        }
        let mut index = Index {
            cdawg,
            grammar,
            lpt,
            stats,
            mode: text.mode(),
            codes: text.codes(),
            stored_maws: StoredPrefixSet::default(),
            stored_ebfs: StoredPrefixSet::default(),
        };
        index.stored_maws = index.precompute_stored_sets(WordKind::Maw);
        index.stored_ebfs = index.precompute_stored_sets(WordKind::Ebf);
        Ok(index)
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        cdawg: Cdawg,
        grammar: Grammar,
        lpt: LptPlus,
        stats: IndexStats,
        mode: Sentinels,
        codes: SentinelCodes,
        stored_maws: StoredPrefixSet,
        stored_ebfs: StoredPrefixSet,
    ) -> Index {
        Index {
            cdawg,
            grammar,
            lpt,
            stats,
            mode,
            codes,
            stored_maws,
            stored_ebfs,
        }
    }

    pub fn cdawg(&self) -> &Cdawg {
        &self.cdawg
    }

    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    pub fn lpt(&self) -> &LptPlus {
        &self.lpt
    }

    pub fn stats(&self) -> &IndexStats {
        &self.stats
    }

    pub fn is_reversed(&self) -> bool {
        self.stats.reversed
    }

    pub fn sentinels(&self) -> Sentinels {
        self.mode
    }

    pub fn sentinel_codes(&self) -> SentinelCodes {
        self.codes
    }

    pub fn stored_maws(&self) -> &StoredPrefixSet {
        &self.stored_maws
    }

    pub fn stored_ebfs(&self) -> &StoredPrefixSet {
        &self.stored_ebfs
    }

    /// The longest string of CDAWG node `v`, in the orientation of the
    /// retained automaton.
    pub fn node_string(&self, v: NodeId) -> Vec<u8> {
        self.grammar.decompress_node(&self.cdawg, v)
    }

    /// Whether the indexed text, in its retained orientation, ends with a
    /// symbol that occurs nowhere else. This holds exactly when the source
    /// and the sink are the only final nodes.
    pub fn ends_with_unique_symbol(&self) -> bool {
        let sink = self.cdawg.sink();
        self.cdawg
            .node_ids()
            .all(|v| v == NodeId::SOURCE || v == sink || !self.cdawg.node(v).is_final)
    }

    /// Spells out a reported word in the orientation of the original text.
    pub fn materialize(&self, h: &WordHandle) -> Vec<u8> {
        let mut w = Vec::with_capacity(self.word_len(h));
        w.push(h.a);
        w.extend(self.node_string(h.u_node));
        w.push(h.b);
        if h.reversed {
            w.reverse();
        }
        w
    }

    /// Length of a reported word, without materializing it.
    pub fn word_len(&self, h: &WordHandle) -> usize {
        self.cdawg.max_len(h.u_node) as usize + 2
    }

    /// The retained text in original orientation, if kept.
    pub fn text(&self) -> Option<Vec<u8>> {
        let t = self.cdawg.text()?.symbols().to_vec();
        Some(if self.is_reversed() {
            t.into_iter().rev().collect()
        } else {
            t
        })
    }

    pub fn space_report(&self) -> SpaceReport {
        SpaceReport {
            nodes: self.cdawg.node_count() * 7,
            edges: self.cdawg.edge_count() * 4,
            grammar: self.grammar.size() + 2 * self.grammar.nonterminal_count(),
            tree: self.lpt.len() * 5 + self.lpt.edge_count() * 4,
            level_ancestor: self.lpt.level_ancestor_words(),
            stored_sets: 4 * (self.stored_maws.items.len() + self.stored_ebfs.items.len()),
        }
    }

    #[doc(hidden)]
    pub fn inject_wchar_fault(&mut self) {
        let target = self
            .cdawg
            .node_ids()
            .find(|&v| v != NodeId::SOURCE && !self.cdawg.children(v).is_empty())
            .or_else(|| self.cdawg.node_ids().last());
        if let Some(v) = target {
            self.cdawg.corrupt_wchar_for_testing(v);
        }
    }
}
