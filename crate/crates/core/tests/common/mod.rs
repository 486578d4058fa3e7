#![allow(dead_code)]

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use cdawg_maw::cdawg::Orientation;
use cdawg_maw::enumerate::{EnumReport, LengthBound, WordHandle};
use cdawg_maw::index::{BuildOptions, Index};
use cdawg_maw::text::{Sentinels, Text};

pub type WordSet = BTreeSet<Vec<u8>>;

pub fn build(raw: &[u8], mode: Sentinels, orientation: Orientation) -> (Text, Index) {
    let text = Text::wrap(raw, mode).unwrap();
    let index = Index::build(
        &text,
        BuildOptions {
            orientation,
            retain_text: false,
        },
    )
    .unwrap();
    (text, index)
}

pub fn collect(index: &Index, run: impl FnOnce(&mut dyn FnMut(WordHandle) -> ControlFlow<()>) -> EnumReport) -> (Vec<WordHandle>, EnumReport) {
    let mut out = Vec::new();
    let report = run(&mut |h| {
        out.push(h);
        ControlFlow::Continue(())
    });
    let _ = index;
    (out, report)
}

pub fn words(index: &Index, handles: &[WordHandle]) -> WordSet {
    handles.iter().map(|h| index.materialize(h)).collect()
}

/// Materialized sets plus reports for the four enumerators.
pub struct Enumerated {
    pub maws: Vec<WordHandle>,
    pub ebfs: Vec<WordHandle>,
    pub mrws: Vec<WordHandle>,
    pub mus: Vec<WordHandle>,
    pub maw_report: EnumReport,
    pub ebf_report: EnumReport,
    pub mrw_report: EnumReport,
}

pub fn enumerate_all(index: &Index) -> Enumerated {
    let (maws, maw_report) = collect(index, |f| index.enumerate_maws(f));
    let (ebfs, ebf_report) = collect(index, |f| index.enumerate_ebfs(f));
    let (mrws, mrw_report) = collect(index, |f| index.enumerate_occurring_mrws(f));
    let mut mus = Vec::new();
    index.enumerate_mus(|r| {
        mus.push(r.handle);
        ControlFlow::Continue(())
    });
    Enumerated {
        maws,
        ebfs,
        mrws,
        mus,
        maw_report,
        ebf_report,
        mrw_report,
    }
}

pub fn bounded_maws(index: &Index, bound: LengthBound) -> WordSet {
    let mut out = Vec::new();
    index
        .maws_length_bounded(bound, |h| {
            out.push(h);
            ControlFlow::Continue(())
        })
        .unwrap();
    words(index, &out)
}

pub fn bounded_ebfs(index: &Index, bound: LengthBound) -> WordSet {
    let mut out = Vec::new();
    index
        .ebfs_length_bounded(bound, |h| {
            out.push(h);
            ControlFlow::Continue(())
        })
        .unwrap();
    words(index, &out)
}

/// All strings over `alphabet` of length `0..=max_len`.
pub fn all_strings(alphabet: &[u8], max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &c in alphabet {
                let mut x: Vec<u8> = w.clone();
                x.push(c);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn filter_len(set: &WordSet, bound: LengthBound) -> WordSet {
    set.iter()
        .filter(|w| match bound {
            LengthBound::Max(l) => w.len() <= l,
            LengthBound::Min(l) => w.len() >= l,
        })
        .cloned()
        .collect()
}
