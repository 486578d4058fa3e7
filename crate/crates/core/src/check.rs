//! Self-check of a built index against its own invariants and, for small
//! texts, against the definition-level oracles.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::ops::ControlFlow;

use crate::cdawg::NodeId;
use crate::enumerate::{EnumReport, MusRecord, WordHandle, WordKind, WORK_BUDGET};
use crate::index::Index;
use crate::oracle::{CountingAutomaton, MrwCount, Oracle, OracleError, DEFAULT_CAP};

/// Upper limit on the total number of symbols decompressed while checking
/// node strings.
const NODE_STRING_BUDGET: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Largest text length compared against the oracles.
    pub oracle_cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { oracle_cap: DEFAULT_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for CheckItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }

    fn push(&mut self, name: &'static str, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.items.push(CheckItem {
            name,
            status,
            detail: detail.into(),
        });
    }

    fn skip(&mut self, name: &'static str, detail: impl Into<String>) {
        self.items.push(CheckItem {
            name,
            status: Status::Skipped,
            detail: detail.into(),
        });
    }
}

/// Everything the enumerators produce for one index.
#[derive(Clone, Debug, Default)]
pub struct Enumeration {
    pub maws: Vec<WordHandle>,
    pub ebfs: Vec<WordHandle>,
    pub mrws: Vec<WordHandle>,
    pub mus: Vec<MusRecord>,
    pub maw_report: EnumReport,
    pub ebf_report: EnumReport,
}

impl Enumeration {
    pub fn run(index: &Index) -> Enumeration {
        let mut out = Enumeration::default();
        out.maw_report = index.enumerate_maws(|h| {
            out.maws.push(h);
            ControlFlow::Continue(())
        });
        out.ebf_report = index.enumerate_ebfs(|h| {
            out.ebfs.push(h);
            ControlFlow::Continue(())
        });
        index.enumerate_occurring_mrws(|h| {
            out.mrws.push(h);
            ControlFlow::Continue(())
        });
        index.enumerate_mus(|r| {
            out.mus.push(r);
            ControlFlow::Continue(())
        });
        out
    }
}

fn triples(hs: &[WordHandle]) -> HashSet<(u8, NodeId, u8)> {
    hs.iter().map(|h| (h.a, h.u_node, h.b)).collect()
}

fn words(index: &Index, hs: &[WordHandle]) -> BTreeSet<Vec<u8>> {
    hs.iter().map(|h| index.materialize(h)).collect()
}

/// Runs every check. `Fail` entries mean the index is inconsistent.
pub fn check_index(index: &Index, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::default();
    let cdawg = index.cdawg();
    let stats = index.stats();
    let n = stats.n;

    // The sink spells the whole text in the retained orientation.
    let (text, sink_work) = index.grammar().decompress_node_counted(cdawg, cdawg.sink());
    let text_ok = text.len() == n
        && match cdawg.text() {
            Some(t) => t.symbols() == text.as_slice(),
            None => true,
        };
    report.push("text", text_ok, format!("decompressed {} of {n} symbols, work {sink_work}", text.len()));
    if !text_ok {
        return report;
    }

    let mut checked = 0;
    let mut budget = NODE_STRING_BUDGET;
    let mut bad_string = None;
    for v in cdawg.node_ids().skip(1) {
        let node = cdawg.node(v);
        let len = node.max_len as usize;
        if len > budget {
            break;
        }
        budget -= len;
        let (s, work) = index.grammar().decompress_node_counted(cdawg, v);
        let end = node.end_pos as usize;
        let expected = (end + 1).checked_sub(len).map(|start| &text[start..=end]);
        if Some(s.as_slice()) != expected || work > 4 * (len + 1) {
            bad_string = Some(v);
            break;
        }
        checked += 1;
    }
    match bad_string {
        Some(v) => report.push("node-strings", false, format!("node {} decompresses incorrectly", v.0)),
        None => report.push(
            "node-strings",
            true,
            format!("{checked} of {} non-source nodes decompressed", cdawg.node_count() - 1),
        ),
    }

    let bad_wchar = cdawg.node_ids().skip(1).find(|&v| {
        let node = cdawg.node(v);
        let link_len = node.suffix_link.map_or(0, |u| cdawg.max_len(u)) as usize;
        let pos = (node.end_pos as usize).checked_sub(link_len);
        node.wchar != pos.map(|p| text[p])
    });
    report.push(
        "weiner-chars",
        bad_wchar.is_none(),
        match bad_wchar {
            Some(v) => format!("node {} has a wrong Weiner-link symbol", v.0),
            None => "every hard Weiner-link symbol matches the text".into(),
        },
    );

    let (e_here, e_there) = if stats.reversed {
        (stats.e_left, stats.e_right)
    } else {
        (stats.e_right, stats.e_left)
    };
    let sizes_ok = e_here == cdawg.edge_count()
        && e_there == cdawg.left_extension_total()
        && stats.e_min == stats.e_right.min(stats.e_left)
        && stats.node_count == cdawg.node_count();
    report.push(
        "sizes",
        sizes_ok,
        format!("e_R={} e_L={} e_min={} |V|={}", stats.e_right, stats.e_left, stats.e_min, stats.node_count),
    );
    report.push("e_min<2n", stats.e_min < 2 * n, format!("{} < {}", stats.e_min, 2 * n));

    let all = Enumeration::run(index);
    let sigma = stats.sigma;
    let (maws, ebfs, mrws) = (all.maws.len(), all.ebfs.len(), all.mrws.len());

    let dupes = [&all.maws, &all.ebfs, &all.mrws]
        .iter()
        .any(|hs| triples(hs).len() != hs.len());
    report.push("no-duplicates", !dupes, format!("{maws} MAW, {ebfs} EBF, {mrws} MRW handles"));

    report.push(
        "maw-count",
        maws <= sigma * stats.e_right && maws <= sigma * stats.e_left,
        format!("|MAW|={maws} <= {sigma}*{}", stats.e_min),
    );
    let ebf_limit = stats.e_right + stats.e_left + 1 - stats.node_count;
    report.push("ebf-count", ebfs <= ebf_limit, format!("|EBF|={ebfs} <= {ebf_limit}"));
    report.push("mrw-count", mrws <= stats.e_min, format!("|MRW_>=1|={mrws} <= {}", stats.e_min));

    let sink = cdawg.sink();
    let inner_ok = [&all.maws, &all.ebfs, &all.mrws]
        .iter()
        .all(|hs| hs.iter().all(|h| h.u_node != sink));
    report.push("maximal-inner", inner_ok, "every inner part is an internal node");

    if index.sentinels().has_start() && index.sentinels().has_end() {
        let maw_set = triples(&all.maws);
        let ebf_set = triples(&all.ebfs);
        let mrw_set = triples(&all.mrws);
        let ok = maw_set.is_disjoint(&ebf_set) && mrw_set.is_subset(&ebf_set);
        report.push("mrw-partition", ok, "occurring MRWs are EBFs and MAWs are not");
    } else {
        report.skip("mrw-partition", "text is not wrapped in both sentinels");
    }

    let empty = all.maw_report.empty_path_nodes;
    if index.ends_with_unique_symbol() {
        report.push("path-nodes", empty == 0, format!("{empty} path nodes without an absent word"));
    } else {
        report.skip(
            "path-nodes",
            format!("no unique end symbol in the indexed orientation; {empty} path nodes without an absent word"),
        );
    }

    let e_r = cdawg.edge_count();
    for (name, rep, out) in [("budget-maw", &all.maw_report, maws), ("budget-ebf", &all.ebf_report, ebfs)] {
        let limit = WORK_BUDGET * (e_r + out + 1);
        report.push(name, rep.work() <= limit, format!("work {} <= {limit}", rep.work()));
    }

    check_stored(index, &all, &mut report);

    if n <= opts.oracle_cap {
        let original = index.text().unwrap_or_else(|| oriented(index, &text));
        if let Err(e) = check_oracle(index, &all, &original, opts, &mut report) {
            report.skip("oracle", format!("oracle unavailable: {e}"));
        }
    } else {
        report.skip("oracle", format!("text length {n} exceeds oracle cap {}", opts.oracle_cap));
    }
    report
}

fn oriented(index: &Index, text: &[u8]) -> Vec<u8> {
    if index.is_reversed() {
        text.iter().rev().copied().collect()
    } else {
        text.to_vec()
    }
}

fn check_stored(index: &Index, all: &Enumeration, report: &mut CheckReport) {
    let e_min = index.stats().e_min;
    for (name, stored, full) in [
        ("stored-maw", index.stored_maws(), &all.maws),
        ("stored-ebf", index.stored_ebfs(), &all.ebfs),
    ] {
        let mut expected: Vec<_> = full
            .iter()
            .filter(|h| index.word_len(h) <= stored.m_star)
            .map(|h| (h.a, h.u_node, h.b))
            .collect();
        let mut got: Vec<_> = stored.items.iter().map(|h| (h.a, h.u_node, h.b)).collect();
        expected.sort_unstable();
        got.sort_unstable();
        let sorted = stored.items.windows(2).all(|w| index.word_len(&w[0]) <= index.word_len(&w[1]));
        report.push(
            name,
            got == expected && got.len() <= e_min && sorted,
            format!("{} words up to length {}", got.len(), stored.m_star),
        );
    }
}

fn check_oracle(
    index: &Index,
    all: &Enumeration,
    text: &[u8],
    opts: &CheckOptions,
    report: &mut CheckReport,
) -> Result<(), OracleError> {
    let oracle = Oracle::with_cap(opts.oracle_cap);
    let maws = oracle.maws(text)?;
    let ebfs = oracle.ebfs(text)?;
    let mrws = oracle.mrws(text, MrwCount::Occurring)?;
    let mus = oracle.mus_intervals(text)?;
    let repeats = oracle.maximal_repeats(text)?;

    let pairs = [
        ("oracle-maw", words(index, &all.maws), maws),
        ("oracle-ebf", words(index, &all.ebfs), ebfs),
        ("oracle-mrw", words(index, &all.mrws), mrws),
    ];
    let mut results = Vec::new();
    for (name, got, want) in pairs {
        let detail = format!("{} words, oracle {}", got.len(), want.len());
        results.push((name, got == want, detail));
    }
    let got_mus: BTreeMap<Vec<u8>, (usize, usize)> =
        all.mus.iter().map(|r| (index.materialize(&r.handle), r.interval)).collect();
    results.push(("oracle-mus", got_mus == mus, format!("{} words, oracle {}", got_mus.len(), mus.len())));

    let counter = CountingAutomaton::new(text);
    let mrw_counts_ok = all.mrws.iter().all(|h| match h.kind {
        WordKind::Mrw(k) => counter.occ(&index.materialize(h)) == k as usize,
        _ => false,
    });
    results.push(("oracle-mrw-counts", mrw_counts_ok, "occurrence counts match".into()));

    let inner: BTreeSet<Vec<u8>> = [&all.maws, &all.ebfs, &all.mrws]
        .iter()
        .flat_map(|hs| hs.iter())
        .map(|h| oriented(index, &index.node_string(h.u_node)))
        .collect();
    results.push((
        "oracle-repeats",
        inner.is_subset(&repeats),
        format!("{} distinct inner parts", inner.len()),
    ));
    let bad_occ = index.cdawg().node_ids().skip(1).find(|&v| {
        let s = oriented(index, &index.node_string(v));
        counter.occ(&s) != index.cdawg().node(v).occ as usize
    });
    results.push((
        "oracle-occ",
        bad_occ.is_none(),
        match bad_occ {
            Some(v) => format!("node {} has a wrong occurrence count", v.0),
            None => "node occurrence counts match".into(),
        },
    ));
    // Results are recorded only once every oracle call has succeeded.
    for (name, ok, detail) in results {
        report.push(name, ok, detail);
    }
    Ok(())
}
