//! WebAssembly bindings for the demo page in `www/`. Every exported function
//! takes plain strings and numbers and returns a JSON document, so the page
//! needs no generated TypeScript types.

use std::ops::ControlFlow;

use cdawg_maw::cdawg::{compute_stats, NodeId, Orientation};
use cdawg_maw::enumerate::{LengthBound, WordHandle};
use cdawg_maw::index::{BuildOptions, Index};
use cdawg_maw::oracle::{de_bruijn, fibonacci_word};
use cdawg_maw::text::{Sentinels, Text};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Most words returned per set.
pub const WORD_LIMIT: usize = 500;
/// Longest text drawn as a graph.
pub const GRAPH_MAX_LEN: usize = 120;
/// Longest generated family member.
pub const FAMILY_MAX_LEN: usize = 1 << 20;

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct Stats {
    pub n: usize,
    pub sigma: usize,
    pub e_right: usize,
    pub e_left: usize,
    pub e_min: usize,
    pub nodes: usize,
    pub reversed: bool,
}

#[derive(Debug, Serialize)]
pub struct WordList {
    pub total: usize,
    pub words: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub stats: Stats,
    pub maw: WordList,
    pub ebf: WordList,
    pub mrw: WordList,
    pub mus: WordList,
}

#[derive(Debug, Serialize)]
pub struct GraphNode {
    pub id: u32,
    pub label: String,
    pub len: u32,
    pub occ: u32,
    pub is_final: bool,
    pub suffix_link: Option<u32>,
}

#[derive(Debug, Serialize)]
pub struct GraphEdge {
    pub src: u32,
    pub dst: u32,
    pub label: String,
    pub primary: bool,
}

#[derive(Debug, Serialize)]
pub struct Graph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

#[derive(Debug, Serialize)]
pub struct FamilyRow {
    pub param: usize,
    pub n: usize,
    pub e_min: usize,
    pub maw: usize,
    pub ratio: f64,
}

fn parse_mode(mode: &str) -> Result<Sentinels, String> {
    match mode {
        "none" => Ok(Sentinels::None),
        "end" => Ok(Sentinels::EndOnly),
        "both" => Ok(Sentinels::Both),
        other => Err(format!("unknown sentinel mode {other:?}")),
    }
}

fn show(index: &Index, w: &[u8]) -> String {
    let codes = index.sentinel_codes();
    let mode = index.sentinels();
    let mut s = String::new();
    for &c in w {
        match c {
            _ if mode.has_start() && c == codes.start => s.push('♯'),
            _ if mode.has_end() && c == codes.end => s.push('$'),
            0x20..=0x7e => s.push(c as char),
            _ => s.push_str(&format!("\\x{c:02x}")),
        }
    }
    s
}

fn build(text: &str, mode: &str, retain_text: bool) -> Result<Index, String> {
    let text = Text::wrap(text.as_bytes(), parse_mode(mode)?).map_err(|e| e.to_string())?;
    let opts = BuildOptions {
        orientation: Orientation::Auto,
        retain_text,
    };
    Index::build(&text, opts).map_err(|e| e.to_string())
}

fn stats(index: &Index) -> Stats {
    let s = index.stats();
    Stats {
        n: s.n,
        sigma: s.sigma,
        e_right: s.e_right,
        e_left: s.e_left,
        e_min: s.e_min,
        nodes: s.node_count,
        reversed: s.reversed,
    }
}

/// Collects up to [`WORD_LIMIT`] words into a list that also records the
/// total count.
struct Collector<'a> {
    index: &'a Index,
    bound: Option<LengthBound>,
    list: WordList,
}

impl<'a> Collector<'a> {
    fn new(index: &'a Index, bound: Option<LengthBound>) -> Self {
        Collector {
            index,
            bound,
            list: WordList {
                total: 0,
                words: Vec::new(),
            },
        }
    }

    fn take(&mut self, h: &WordHandle) -> ControlFlow<()> {
        let len = self.index.word_len(h);
        let keep = match self.bound {
            None => true,
            Some(LengthBound::Max(l)) => len <= l,
            Some(LengthBound::Min(l)) => len >= l,
        };
        if keep {
            self.list.total += 1;
            if self.list.words.len() < WORD_LIMIT {
                self.list.words.push(show(self.index, &self.index.materialize(h)));
            }
        }
        ControlFlow::Continue(())
    }
}

/// Length filter from the page: 0 means "no bound"; a positive value is
/// an upper bound, a negative one a lower bound.
fn bound_of(len_filter: i32) -> Option<LengthBound> {
    match len_filter {
        0 => None,
        l if l > 0 => Some(LengthBound::Max(l.max(2) as usize)),
        l => Some(LengthBound::Min(l.unsigned_abs() as usize)),
    }
}

/// Statistics and the four word sets of `text`.
pub fn analyze_text(text: &str, mode: &str, len_filter: i32) -> Result<Analysis, String> {
    let index = build(text, mode, false)?;
    let bound = bound_of(len_filter);
    let mut maw = Collector::new(&index, None);
    let mut ebf = Collector::new(&index, None);
    let query_bound = bound.filter(|b| !matches!(b, LengthBound::Min(l) if *l < 2));
    match query_bound {
        Some(b) => {
            index.maws_length_bounded(b, |h| maw.take(&h)).map_err(|e| e.to_string())?;
            index.ebfs_length_bounded(b, |h| ebf.take(&h)).map_err(|e| e.to_string())?;
        }
        None => {
            index.enumerate_maws(|h| maw.take(&h));
            index.enumerate_ebfs(|h| ebf.take(&h));
        }
    }
    let mut mrw = Collector::new(&index, bound);
    index.enumerate_occurring_mrws(|h| mrw.take(&h));
    let mut mus = Collector::new(&index, bound);
    index.enumerate_mus(|r| mus.take(&r.handle));
    Ok(Analysis {
        stats: stats(&index),
        maw: maw.list,
        ebf: ebf.list,
        mrw: mrw.list,
        mus: mus.list,
    })
}

/// The retained CDAWG with full node and edge labels.
pub fn graph_of(text: &str, mode: &str) -> Result<Graph, String> {
    if text.len() > GRAPH_MAX_LEN {
        return Err(format!("texts longer than {GRAPH_MAX_LEN} bytes are not drawn"));
    }
    let index = build(text, mode, true)?;
    let cdawg = index.cdawg();
    let nodes = cdawg
        .node_ids()
        .map(|v| {
            let node = cdawg.node(v);
            GraphNode {
                id: v.0,
                label: if v == NodeId::SOURCE {
                    "ε".into()
                } else {
                    show(&index, &index.node_string(v))
                },
                len: node.max_len,
                occ: node.occ,
                is_final: node.is_final,
                suffix_link: node.suffix_link.map(|u| u.0),
            }
        })
        .collect();
    let edges = cdawg
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| GraphEdge {
            src: e.src.0,
            dst: e.dst.0,
            label: show(&index, cdawg.label(cdawg_maw::cdawg::EdgeId(i as u32)).unwrap_or(&[e.first_char])),
            primary: e.is_primary,
        })
        .collect();
    Ok(Graph { nodes, edges })
}

/// Measurements over a generated family: "fib" (orders `from..=to`) or
/// "debruijn" (binary, orders `from..=to`).
pub fn family_rows(family: &str, from: usize, to: usize) -> Result<Vec<FamilyRow>, String> {
    let mut rows = Vec::new();
    for k in from..=to {
        let word = match family {
            "fib" => fibonacci_word(k),
            "debruijn" => de_bruijn(2, k, FAMILY_MAX_LEN).map_err(|e| e.to_string())?,
            other => return Err(format!("unknown family {other:?}")),
        };
        if word.len() > FAMILY_MAX_LEN {
            return Err(format!("order {k} is too large for the demo"));
        }
        let text = Text::wrap(&word, Sentinels::None).map_err(|e| e.to_string())?;
        let index = Index::build(&text, BuildOptions::default()).map_err(|e| e.to_string())?;
        let maw = index.enumerate_maws(|_| ControlFlow::Continue(())).emitted;
        let s = compute_stats(&text);
        rows.push(FamilyRow {
            param: k,
            n: s.n,
            e_min: s.e_min,
            maw,
            ratio: maw as f64 / (s.sigma * s.e_min).max(1) as f64,
        });
    }
    Ok(rows)
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let value = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn analyze(text: &str, sentinels: &str, len_filter: i32) -> Result<String, JsError> {
    to_js(analyze_text(text, sentinels, len_filter))
}

#[wasm_bindgen]
pub fn graph(text: &str, sentinels: &str) -> Result<String, JsError> {
    to_js(graph_of(text, sentinels))
}

#[wasm_bindgen]
pub fn family(name: &str, from: usize, to: usize) -> Result<String, JsError> {
    to_js(family_rows(name, from, to))
}
