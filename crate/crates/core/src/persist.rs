//! Versioned binary index files.
//!
//! Layout (all integers little-endian, width given in the header):
//!
//! ```text
//! "CDWG" | version: u16 | int width: u8 | flags: u8
//! sentinel mode: u8 | start code: u8 | end code: u8 | 0: u8
//! stats: n, sigma, e_right, e_left, e_min, node_count
//! "NODE" count { max_len slink wchar occ left_ext end_pos final first_edge edge_count }
//! "EDGE" count { src dst first_char label_len primary }
//! "GRAM" count { rhs_start } count { symbol }
//! "FAST" count { top bottom a_char }
//! "STOR" m_star count { a u b }   (absent words)
//! "STOR" m_star count { a u b }   (bispecial factors)
//! ["TEXT" len bytes.. count { start end }]   (only with flag bit 1)
//! ```
//!
//! Absent ids and symbols are written as `u32::MAX`. Grammar terminals are
//! tagged with the top bit. Tree shape and suffix links of the extended
//! longest-path tree are rebuilt from the node and edge sections.

use std::io::{self, Read, Write};

use thiserror::Error;

use crate::cdawg::{Cdawg, CdawgEdge, CdawgNode, IndexStats, NodeId};
use crate::enumerate::{StoredPrefixSet, WordHandle, WordKind};
use crate::grammar::{Grammar, GrammarSymbol};
use crate::index::Index;
use crate::lpt::{FastLink, LptId, LptPlus};
use crate::text::{SentinelCodes, Sentinels, Text};

pub const MAGIC: &[u8; 4] = b"CDWG";
pub const FORMAT_VERSION: u16 = 1;
const INT_WIDTH: u8 = 4;
const ABSENT: u32 = u32::MAX;
const TERMINAL_TAG: u32 = 1 << 31;

#[derive(Debug, Error)]
pub enum PersistError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("not an index file (bad magic)")]
    BadMagic,
    #[error("index format version {0} is newer than supported version {FORMAT_VERSION}")]
    UnsupportedVersion(u16),
    #[error("unsupported integer width {0}")]
    UnsupportedWidth(u8),
    #[error("corrupt index file: {0}")]
    Corrupt(&'static str),
    #[error("value {0} does not fit the 32-bit index format")]
    TooLarge(usize),
}

struct Writer<W> {
    inner: W,
}

impl<W: Write> Writer<W> {
    fn bytes(&mut self, b: &[u8]) -> io::Result<()> {
        self.inner.write_all(b)
    }

    fn u32(&mut self, v: u32) -> io::Result<()> {
        self.inner.write_all(&v.to_le_bytes())
    }

    fn usize(&mut self, v: usize) -> Result<(), PersistError> {
        let v = u32::try_from(v).map_err(|_| PersistError::TooLarge(v))?;
        Ok(self.u32(v)?)
    }

    fn opt(&mut self, v: Option<u32>) -> io::Result<()> {
        self.u32(v.unwrap_or(ABSENT))
    }
}

struct Reader<R> {
    inner: R,
}

impl<R: Read> Reader<R> {
    fn array<const N: usize>(&mut self) -> Result<[u8; N], PersistError> {
        let mut buf = [0u8; N];
        self.inner.read_exact(&mut buf)?;
        Ok(buf)
    }

    fn u8(&mut self) -> Result<u8, PersistError> {
        Ok(self.array::<1>()?[0])
    }

    fn u32(&mut self) -> Result<u32, PersistError> {
        Ok(u32::from_le_bytes(self.array()?))
    }

    fn usize(&mut self) -> Result<usize, PersistError> {
        Ok(self.u32()? as usize)
    }

    fn opt(&mut self) -> Result<Option<u32>, PersistError> {
        let v = self.u32()?;
        Ok((v != ABSENT).then_some(v))
    }

    fn symbol(&mut self) -> Result<u8, PersistError> {
        u8::try_from(self.u32()?).map_err(|_| PersistError::Corrupt("symbol out of range"))
    }

    fn tag(&mut self, tag: &[u8; 4]) -> Result<(), PersistError> {
        if &self.array::<4>()? != tag {
            return Err(PersistError::Corrupt("unexpected section tag"));
        }
        Ok(())
    }

    /// Reads a length prefix, refusing counts no file could back.
    fn count(&mut self, limit: usize) -> Result<usize, PersistError> {
        let c = self.usize()?;
        if c > limit {
            return Err(PersistError::Corrupt("section count out of range"));
        }
        Ok(c)
    }
}

pub fn write_index<W: Write>(index: &Index, out: W) -> Result<(), PersistError> {
    let mut w = Writer { inner: out };
    let cdawg = index.cdawg();
    let stats = index.stats();
    let has_text = cdawg.text().is_some() && cdawg.labels.is_some();
    w.bytes(MAGIC)?;
    w.bytes(&FORMAT_VERSION.to_le_bytes())?;
    w.bytes(&[INT_WIDTH, stats.reversed as u8 | (has_text as u8) << 1])?;
    let codes = index.sentinel_codes();
    w.bytes(&[index.sentinels().to_code(), codes.start, codes.end, 0])?;
    for v in [stats.n, stats.sigma, stats.e_right, stats.e_left, stats.e_min, stats.node_count] {
        w.usize(v)?;
    }

    w.bytes(b"NODE")?;
    w.usize(cdawg.node_count())?;
    for node in cdawg.nodes() {
        w.u32(node.max_len)?;
        w.opt(node.suffix_link.map(|v| v.0))?;
        w.opt(node.wchar.map(u32::from))?;
        for v in [node.occ, node.left_ext, node.end_pos, node.is_final as u32, node.first_edge, node.edge_count] {
            w.u32(v)?;
        }
    }

    w.bytes(b"EDGE")?;
    w.usize(cdawg.edge_count())?;
    for e in cdawg.edges() {
        for v in [e.src.0, e.dst.0, e.first_char as u32, e.label_len, e.is_primary as u32] {
            w.u32(v)?;
        }
    }

    w.bytes(b"GRAM")?;
    let (starts, rhs) = index.grammar().raw_parts();
    w.usize(starts.len())?;
    for &s in starts {
        w.u32(s)?;
    }
    w.usize(rhs.len())?;
    for sym in rhs {
        w.u32(match *sym {
            GrammarSymbol::Terminal(c) => TERMINAL_TAG | c as u32,
            GrammarSymbol::NonTerminal(v) => v.0,
        })?;
    }

    w.bytes(b"FAST")?;
    let links = index.lpt().fast_links();
    w.usize(links.len())?;
    for l in links {
        for v in [l.top.0, l.bottom.0, l.a_char as u32] {
            w.u32(v)?;
        }
    }

    for stored in [index.stored_maws(), index.stored_ebfs()] {
        w.bytes(b"STOR")?;
        w.usize(stored.m_star.min(u32::MAX as usize - 1))?;
        w.usize(stored.items.len())?;
        for h in &stored.items {
            for v in [h.a as u32, h.u_node.0, h.b as u32] {
                w.u32(v)?;
            }
        }
    }

    if has_text {
        w.bytes(b"TEXT")?;
        let symbols = cdawg.text().unwrap().symbols();
        w.usize(symbols.len())?;
        w.bytes(symbols)?;
        let labels = cdawg.labels.as_ref().unwrap();
        w.usize(labels.len())?;
        for &(s, t) in labels {
            w.u32(s)?;
            w.u32(t)?;
        }
    }
    w.inner.flush()?;
    Ok(())
}

pub fn read_index<R: Read>(input: R) -> Result<Index, PersistError> {
    let mut r = Reader { inner: input };
    if &r.array::<4>()? != MAGIC {
        return Err(PersistError::BadMagic);
    }
    let version = u16::from_le_bytes(r.array()?);
    if version > FORMAT_VERSION || version == 0 {
        return Err(PersistError::UnsupportedVersion(version));
    }
    let width = r.u8()?;
    if width != INT_WIDTH {
        return Err(PersistError::UnsupportedWidth(width));
    }
    let flags = r.u8()?;
    let [mode, start, end, _] = r.array::<4>()?;
    let mode = Sentinels::from_code(mode).ok_or(PersistError::Corrupt("unknown sentinel mode"))?;
    let codes = SentinelCodes { start, end };
    let mut s = [0usize; 6];
    for v in s.iter_mut() {
        *v = r.usize()?;
    }
    let stats = IndexStats {
        n: s[0],
        sigma: s[1],
        e_right: s[2],
        e_left: s[3],
        e_min: s[4],
        node_count: s[5],
        reversed: flags & 1 == 1,
    };
    // A text of length n has fewer than 2n + 2 nodes and at most 3n edges.
    let node_limit = 2 * stats.n + 2;
    let edge_limit = 3 * stats.n + 1;

    r.tag(b"NODE")?;
    let node_count = r.count(node_limit)?;
    let mut nodes = Vec::with_capacity(node_count);
    for _ in 0..node_count {
        let max_len = r.u32()?;
        let suffix_link = r.opt()?.map(NodeId);
        let wchar = match r.opt()? {
            Some(c) => Some(u8::try_from(c).map_err(|_| PersistError::Corrupt("symbol out of range"))?),
            None => None,
        };
        nodes.push(CdawgNode {
            max_len,
            suffix_link,
            wchar,
            occ: r.u32()?,
            left_ext: r.u32()?,
            end_pos: r.u32()?,
            is_final: r.u32()? != 0,
            first_edge: r.u32()?,
            edge_count: r.u32()?,
        });
    }

    r.tag(b"EDGE")?;
    let edge_count = r.count(edge_limit)?;
    let mut edges = Vec::with_capacity(edge_count);
    for _ in 0..edge_count {
        let src = NodeId(r.u32()?);
        let dst = NodeId(r.u32()?);
        let first_char = r.symbol()?;
        let label_len = r.u32()?;
        let is_primary = r.u32()? != 0;
        if src.index() >= node_count || dst.index() >= node_count {
            return Err(PersistError::Corrupt("edge endpoint out of range"));
        }
        edges.push(CdawgEdge {
            src,
            dst,
            first_char,
            label_len,
            is_primary,
        });
    }
    validate_graph(&nodes, &edges)?;
    let mut cdawg = Cdawg::from_parts(nodes, edges, stats.n as u32, stats.sigma as u32);

    r.tag(b"GRAM")?;
    let start_count = r.count(node_limit + 1)?;
    let mut starts = Vec::with_capacity(start_count);
    for _ in 0..start_count {
        starts.push(r.u32()?);
    }
    let rhs_count = r.count(edge_limit)?;
    let mut rhs = Vec::with_capacity(rhs_count);
    for _ in 0..rhs_count {
        let v = r.u32()?;
        rhs.push(if v & TERMINAL_TAG != 0 {
            GrammarSymbol::Terminal((v & 0xff) as u8)
        } else {
            GrammarSymbol::NonTerminal(NodeId(v))
        });
    }
    validate_grammar(&starts, &rhs, node_count)?;
    let grammar = Grammar::with_shortcuts(starts, rhs);

    r.tag(b"FAST")?;
    let link_count = r.count(edge_limit)?;
    if link_count != edge_count {
        return Err(PersistError::Corrupt("fast link count differs from edge count"));
    }
    let tree_size = node_count + cdawg.edges().iter().filter(|e| !e.is_primary).count();
    let mut links = Vec::with_capacity(link_count);
    for _ in 0..link_count {
        let top = LptId(r.u32()?);
        let bottom = LptId(r.u32()?);
        let a_char = r.symbol()?;
        if top.index() >= tree_size || bottom.index() >= tree_size {
            return Err(PersistError::Corrupt("fast link target out of range"));
        }
        links.push(FastLink { top, bottom, a_char });
    }

    let mut stored = Vec::with_capacity(2);
    for kind in [WordKind::Maw, WordKind::Ebf] {
        r.tag(b"STOR")?;
        let mut m_star = r.usize()?;
        if m_star == u32::MAX as usize - 1 {
            m_star = usize::MAX;
        }
        let count = r.count(edge_limit)?;
        let mut items = Vec::with_capacity(count);
        for _ in 0..count {
            let a = r.symbol()?;
            let u_node = NodeId(r.u32()?);
            let b = r.symbol()?;
            if u_node.index() >= node_count {
                return Err(PersistError::Corrupt("stored word node out of range"));
            }
            items.push(WordHandle {
                a,
                u_node,
                b,
                kind,
                reversed: stats.reversed,
            });
        }
        stored.push(StoredPrefixSet { m_star, items });
    }

    if flags & 2 != 0 {
        r.tag(b"TEXT")?;
        let len = r.count(stats.n)?;
        let mut symbols = vec![0u8; len];
        r.inner.read_exact(&mut symbols)?;
        let label_count = r.count(edge_limit)?;
        let mut labels = Vec::with_capacity(label_count);
        for _ in 0..label_count {
            labels.push((r.u32()?, r.u32()?));
        }
        cdawg.text = Some(Text::from_symbols(symbols, mode, codes).map_err(|_| PersistError::Corrupt("empty text"))?);
        cdawg.labels = Some(labels);
    }

    let lpt = LptPlus::from_parts(&cdawg, links);
    let stored_ebfs = stored.pop().unwrap();
    let stored_maws = stored.pop().unwrap();
    Ok(Index::from_parts(cdawg, grammar, lpt, stats, mode, codes, stored_maws, stored_ebfs))
}

fn validate_graph(nodes: &[CdawgNode], edges: &[CdawgEdge]) -> Result<(), PersistError> {
    if nodes.is_empty() {
        return Err(PersistError::Corrupt("no nodes"));
    }
    for (i, node) in nodes.iter().enumerate() {
        let end = node.first_edge as usize + node.edge_count as usize;
        if end > edges.len() {
            return Err(PersistError::Corrupt("edge range out of bounds"));
        }
        if edges[node.first_edge as usize..end].iter().any(|e| e.src.index() != i) {
            return Err(PersistError::Corrupt("edge range does not match source"));
        }
        if let Some(link) = node.suffix_link {
            if link.index() >= nodes.len() || nodes[link.index()].max_len >= node.max_len {
                return Err(PersistError::Corrupt("bad suffix link"));
            }
        } else if i != 0 {
            return Err(PersistError::Corrupt("missing suffix link"));
        }
    }
    if edges.iter().any(|e| e.dst <= e.src) {
        return Err(PersistError::Corrupt("edges are not in topological order"));
    }
    Ok(())
}

fn validate_grammar(starts: &[u32], rhs: &[GrammarSymbol], node_count: usize) -> Result<(), PersistError> {
    if starts.len() != node_count + 1 || starts.last().copied() != Some(rhs.len() as u32) {
        return Err(PersistError::Corrupt("grammar shape"));
    }
    if starts.windows(2).any(|w| w[0] > w[1]) {
        return Err(PersistError::Corrupt("grammar offsets"));
    }
    for v in 0..node_count {
        for sym in &rhs[starts[v] as usize..starts[v + 1] as usize] {
            if let GrammarSymbol::NonTerminal(w) = sym {
                if w.index() >= v {
                    return Err(PersistError::Corrupt("grammar is not acyclic"));
                }
            }
        }
    }
    Ok(())
}

/// Serializes into a byte vector.
pub fn to_bytes(index: &Index) -> Result<Vec<u8>, PersistError> {
    let mut buf = Vec::new();
    write_index(index, &mut buf)?;
    Ok(buf)
}

pub fn from_bytes(bytes: &[u8]) -> Result<Index, PersistError> {
    read_index(bytes)
}
