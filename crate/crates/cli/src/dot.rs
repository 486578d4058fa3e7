//! DOT export. Suffix links are dashed, fast links bold, gray tree nodes
//! filled.

use std::fmt::Write as _;
use std::io::{self, Write};

use cdawg_maw::cdawg::{EdgeId, NodeId};
use cdawg_maw::index::Index;
use cdawg_maw::lpt::{Color, LptId};

use crate::args::{DotArgs, GraphArg};
use crate::commands::{load_index, style};
use crate::error::CliError;
use crate::render::Style;

/// Longest label shown before clipping.
const LABEL_MAX: usize = 24;
/// Total number of symbols decompressed for labels; beyond it labels fall
/// back to first symbols and lengths.
const DECOMPRESS_BUDGET: usize = 1 << 20;

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            q.push('\\');
        }
        q.push(ch);
    }
    q.push('"');
    q
}

/// Node strings, when they fit in the decompression budget.
fn node_strings(index: &Index) -> Option<Vec<Vec<u8>>> {
    let cdawg = index.cdawg();
    let total: usize = cdawg.nodes().iter().map(|n| n.max_len as usize).sum();
    (total <= DECOMPRESS_BUDGET).then(|| cdawg.node_ids().map(|v| index.node_string(v)).collect())
}

fn edge_label(index: &Index, strings: Option<&[Vec<u8>]>, e: EdgeId, style: &Style) -> String {
    let cdawg = index.cdawg();
    let edge = cdawg.edge(e);
    let len = edge.label_len as usize;
    // An edge label is the suffix of its target's longest string.
    let full = cdawg.label(e).map(<[u8]>::to_vec).or_else(|| {
        strings.map(|s| {
            let t = &s[edge.dst.index()];
            t[t.len() - len..].to_vec()
        })
    });
    match full {
        Some(l) => style.clipped(&l, LABEL_MAX),
        None if len == 1 => style.word(&[edge.first_char]),
        None => format!("{}…({len})", style.word(&[edge.first_char])),
    }
}

fn node_label(strings: Option<&[Vec<u8>]>, v: NodeId, len: u32, style: &Style) -> String {
    match strings {
        _ if v == NodeId::SOURCE => "ε".to_string(),
        Some(s) => style.clipped(&s[v.index()], LABEL_MAX),
        None => format!("#{} ({len})", v.0),
    }
}

fn cdawg_dot(index: &Index, style: &Style) -> String {
    let cdawg = index.cdawg();
    let strings = node_strings(index);
    let strings = strings.as_deref();
    let mut g = String::from("digraph cdawg {\n  rankdir=LR;\n  node [shape=box, style=rounded];\n");
    if index.is_reversed() {
        g.push_str("  label=\"CDAWG of the reversed text\";\n");
    }
    for v in cdawg.node_ids() {
        let node = cdawg.node(v);
        let label = node_label(strings, v, node.max_len, style);
        let periph = if node.is_final { ", peripheries=2" } else { "" };
        let _ = writeln!(g, "  n{} [label={}{periph}];", v.0, quote(&label));
    }
    for (i, edge) in cdawg.edges().iter().enumerate() {
        let label = edge_label(index, strings, EdgeId(i as u32), style);
        let _ = writeln!(g, "  n{} -> n{} [label={}];", edge.src.0, edge.dst.0, quote(&label));
    }
    for v in cdawg.node_ids() {
        if let Some(u) = cdawg.suffix_link(v) {
            let _ = writeln!(g, "  n{} -> n{} [style=dashed, color=gray50, constraint=false];", v.0, u.0);
        }
    }
    g.push_str("}\n");
    g
}

fn lpt_dot(index: &Index, style: &Style) -> String {
    let cdawg = index.cdawg();
    let lpt = index.lpt();
    let strings = node_strings(index);
    let strings = strings.as_deref();
    let mut g = String::from("digraph lpt {\n  node [shape=box, style=rounded];\n");
    for (i, node) in lpt.nodes().iter().enumerate() {
        let x = LptId(i as u32);
        let label = match (strings, node.color) {
            (_, Color::White) => node_label(strings, node.cdawg_node, node.str_len, style),
            (Some(s), Color::Gray) => {
                let t = &s[node.cdawg_node.index()];
                style.clipped(&t[t.len() - node.str_len as usize..], LABEL_MAX)
            }
            (None, Color::Gray) => format!("~#{} ({})", node.cdawg_node.0, node.str_len),
        };
        let fill = match node.color {
            Color::White => "",
            Color::Gray => ", style=\"rounded,filled\", fillcolor=gray80",
        };
        let _ = writeln!(g, "  t{} [label={}{fill}];", x.0, quote(&label));
    }
    for (i, node) in lpt.nodes().iter().enumerate() {
        if let (Some(p), Some(e)) = (node.parent, node.parent_edge) {
            let label = edge_label(index, strings, e, style);
            let _ = writeln!(g, "  t{} -> t{i} [label={}];", p.0, quote(&label));
        }
    }
    for (i, node) in lpt.nodes().iter().enumerate() {
        if let Some(s) = node.suffix_link {
            let _ = writeln!(g, "  t{i} -> t{} [style=dashed, color=gray50, constraint=false];", s.0);
        }
    }
    for i in 0..cdawg.edge_count() {
        let e = EdgeId(i as u32);
        let link = lpt.fast_link(e);
        let from = lpt.child_of_edge(e);
        let _ = writeln!(
            g,
            "  t{} -> t{} [style=bold, color=blue, constraint=false, label={}];",
            from.0,
            link.bottom.0,
            quote(&style.word(&[link.a_char]))
        );
    }
    g.push_str("}\n");
    g
}

pub fn run(args: DotArgs) -> Result<(), CliError> {
    let index = load_index(&args.index)?;
    let style = style(&index, true);
    let dot = match args.graph {
        GraphArg::Cdawg => cdawg_dot(&index, &style),
        GraphArg::Lpt => lpt_dot(&index, &style),
    };
    io::stdout().lock().write_all(dot.as_bytes()).map_err(CliError::stdout)
}
