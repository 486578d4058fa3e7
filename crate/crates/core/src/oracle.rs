//! Definition-level reference implementations.
//!
//! Two tiers compute the same sets. The naive tier tabulates every substring
//! of the text by scanning and tests every candidate `a·u·b`; it is meant for
//! texts of at most [`NAIVE_CAP`] symbols. The counting tier builds a plain
//! suffix automaton with end-position counts and walks all words `a·u`
//! whose inner part occurs at least twice (every word in these sets has that
//! property), testing the definitions through occurrence counts.
//!
//! Nothing here uses the CDAWG, its grammar or the longest-path tree.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

pub type WordSet = BTreeSet<Vec<u8>>;

pub const NAIVE_CAP: usize = 64;
pub const DEFAULT_CAP: usize = 2000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("text of length {len} exceeds the oracle cap of {cap}")]
    TooLong { len: usize, cap: usize },
    #[error("de Bruijn parameters need sigma >= 2 and k >= 2, got sigma = {sigma}, k = {k}")]
    BadDeBruijn { sigma: usize, k: usize },
    #[error("sigma^k exceeds the cap of {cap}")]
    DeBruijnTooLarge { cap: usize },
}

/// Which minimal rare words to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MrwCount {
    Exactly(usize),
    /// Every occurring minimal rare word (`k >= 1`).
    Occurring,
}

impl MrwCount {
    fn accepts(self, occ: usize) -> bool {
        match self {
            MrwCount::Exactly(k) => occ == k,
            MrwCount::Occurring => occ >= 1,
        }
    }
}

/// Occurrence counts of every substring of a small text.
#[derive(Clone, Debug)]
pub struct OccTable {
    n: usize,
    counts: HashMap<Vec<u8>, usize>,
}

impl OccTable {
    pub fn new(text: &[u8]) -> OccTable {
        let mut counts = HashMap::new();
        for i in 0..text.len() {
            for j in i + 1..=text.len() {
                *counts.entry(text[i..j].to_vec()).or_insert(0) += 1;
            }
        }
        OccTable { n: text.len(), counts }
    }

    pub fn occ(&self, w: &[u8]) -> usize {
        if w.is_empty() {
            self.n + 1
        } else {
            self.counts.get(w).copied().unwrap_or(0)
        }
    }

    /// Every distinct non-empty substring.
    pub fn substrings(&self) -> impl Iterator<Item = &[u8]> {
        self.counts.keys().map(Vec::as_slice)
    }
}

fn alphabet(text: &[u8]) -> Vec<u8> {
    let set: BTreeSet<u8> = text.iter().copied().collect();
    set.into_iter().collect()
}

fn cat(a: u8, u: &[u8], b: u8) -> Vec<u8> {
    let mut w = Vec::with_capacity(u.len() + 2);
    w.push(a);
    w.extend_from_slice(u);
    w.push(b);
    w
}

/// Scanning-based tier.
pub mod naive {
    use super::*;

    fn check(text: &[u8]) -> Result<(), OracleError> {
        if text.len() > NAIVE_CAP {
            return Err(OracleError::TooLong {
                len: text.len(),
                cap: NAIVE_CAP,
            });
        }
        Ok(())
    }

    /// Calls `f(a, u, b, occ(au), occ(ub), occ(aub))` for every `a, b` in the
    /// alphabet and every `u` that is empty or occurs.
    fn for_each_candidate(text: &[u8], mut f: impl FnMut(u8, &[u8], u8, &OccTable)) {
        let table = OccTable::new(text);
        let sigma = alphabet(text);
        let mut inner: Vec<&[u8]> = table.substrings().collect();
        inner.push(&[]);
        for u in inner {
            for &a in &sigma {
                for &b in &sigma {
                    f(a, u, b, &table);
                }
            }
        }
    }

    pub fn maws(text: &[u8]) -> Result<WordSet, OracleError> {
        check(text)?;
        let mut out = WordSet::new();
        for_each_candidate(text, |a, u, b, t| {
            let w = cat(a, u, b);
            if t.occ(&w) == 0 && t.occ(&w[..w.len() - 1]) >= 1 && t.occ(&w[1..]) >= 1 {
                out.insert(w);
            }
        });
        Ok(out)
    }

    pub fn mrws(text: &[u8], which: MrwCount) -> Result<WordSet, OracleError> {
        check(text)?;
        let mut out = WordSet::new();
        for_each_candidate(text, |a, u, b, t| {
            let w = cat(a, u, b);
            let k = t.occ(&w);
            if which.accepts(k) && t.occ(&w[..w.len() - 1]) > k && t.occ(&w[1..]) > k {
                out.insert(w);
            }
        });
        Ok(out)
    }

    pub fn mus(text: &[u8]) -> Result<WordSet, OracleError> {
        check(text)?;
        let mut out = WordSet::new();
        for_each_candidate(text, |a, u, b, t| {
            let w = cat(a, u, b);
            if t.occ(&w) == 1 && t.occ(&w[..w.len() - 1]) >= 2 && t.occ(&w[1..]) >= 2 {
                out.insert(w);
            }
        });
        Ok(out)
    }

    pub fn ebfs(text: &[u8]) -> Result<WordSet, OracleError> {
        check(text)?;
        let sigma = alphabet(text);
        let mut out = WordSet::new();
        for_each_candidate(text, |a, u, b, t| {
            let w = cat(a, u, b);
            if t.occ(&w) == 0 {
                return;
            }
            let other_left = sigma.iter().any(|&x| x != a && t.occ(&[&[x][..], u].concat()) >= 1);
            let other_right = sigma.iter().any(|&y| y != b && t.occ(&[u, &[y][..]].concat()) >= 1);
            if other_left && other_right {
                out.insert(w);
            }
        });
        Ok(out)
    }

    pub fn maximal_repeats(text: &[u8]) -> Result<WordSet, OracleError> {
        check(text)?;
        let table = OccTable::new(text);
        let sigma = alphabet(text);
        let mut candidates: Vec<&[u8]> = table.substrings().collect();
        candidates.push(&[]);
        let mut out = WordSet::new();
        for u in candidates {
            if table.occ(u) < 2 {
                continue;
            }
            let lefts = sigma.iter().filter(|&&x| table.occ(&[&[x][..], u].concat()) >= 1).count();
            let rights = sigma.iter().filter(|&&y| table.occ(&[u, &[y][..]].concat()) >= 1).count();
            let left_max = lefts >= 2 || text.starts_with(u);
            let right_max = rights >= 2 || text.ends_with(u);
            if left_max && right_max {
                out.insert(u.to_vec());
            }
        }
        Ok(out)
    }
}

/// Suffix automaton with end-position counts.
#[derive(Clone, Debug)]
pub struct CountingAutomaton {
    len: Vec<usize>,
    next: Vec<BTreeMap<u8, usize>>,
    count: Vec<usize>,
}

impl CountingAutomaton {
    pub fn new(text: &[u8]) -> CountingAutomaton {
        let mut len = vec![0];
        let mut link = vec![usize::MAX];
        let mut next = vec![BTreeMap::new()];
        let mut count = vec![0];
        let mut last = 0;
        for &c in text {
            let cur = len.len();
            len.push(len[last] + 1);
            link.push(0);
            next.push(BTreeMap::new());
            count.push(1);
            let mut p = last;
            while p != usize::MAX && !next[p].contains_key(&c) {
                next[p].insert(c, cur);
                p = link[p];
            }
            if p != usize::MAX {
                let q = next[p][&c];
                if len[p] + 1 == len[q] {
                    link[cur] = q;
                } else {
                    let clone = len.len();
                    len.push(len[p] + 1);
                    link.push(link[q]);
                    next.push(next[q].clone());
                    count.push(0);
                    while p != usize::MAX && next[p].get(&c) == Some(&q) {
                        next[p].insert(c, clone);
                        p = link[p];
                    }
                    link[q] = clone;
                    link[cur] = clone;
                }
            }
            last = cur;
        }
        let mut order: Vec<usize> = (1..len.len()).collect();
        order.sort_by(|&x, &y| len[y].cmp(&len[x]));
        for s in order {
            let l = link[s];
            count[l] += count[s];
        }
        count[0] = text.len() + 1;
        CountingAutomaton { len, next, count }
    }

    fn step(&self, s: usize, c: u8) -> Option<usize> {
        self.next[s].get(&c).copied()
    }

    fn state_of(&self, w: &[u8]) -> Option<usize> {
        w.iter().try_fold(0, |s, &c| self.step(s, c))
    }

    pub fn occ(&self, w: &[u8]) -> usize {
        self.state_of(w).map_or(0, |s| self.count[s])
    }

    pub fn state_count(&self) -> usize {
        self.len.len()
    }
}

/// Counting-automaton tier.
pub mod counted {
    use super::*;

    /// One candidate family: all words `a·u·b` for a fixed `a·u`.
    pub(super) struct Visit<'a> {
        pub a: u8,
        pub u: &'a [u8],
        /// `occ(a·u)`.
        pub occ_au: usize,
        /// `occ(u)`.
        pub occ_u: usize,
        /// `(b, occ(u·b), occ(a·u·b))` for every symbol `b`.
        pub right: Vec<(u8, usize, usize)>,
    }

    fn check(text: &[u8], cap: usize) -> Result<(), OracleError> {
        if text.len() > cap {
            return Err(OracleError::TooLong { len: text.len(), cap });
        }
        Ok(())
    }

    /// Walks every `a·u` occurring in the text with `occ(u) >= 2`.
    pub(super) fn walk(text: &[u8], mut f: impl FnMut(&Visit<'_>)) {
        let sam = CountingAutomaton::new(text);
        let sigma = alphabet(text);
        // (state of a·u, state of u, a·u)
        let mut stack: Vec<(usize, usize, Vec<u8>)> = sigma
            .iter()
            .filter_map(|&a| sam.step(0, a).map(|s| (s, 0, vec![a])))
            .collect();
        while let Some((x, u, word)) = stack.pop() {
            let right = sigma
                .iter()
                .map(|&b| {
                    let ub = sam.step(u, b).map_or(0, |s| sam.count[s]);
                    let aub = sam.step(x, b).map_or(0, |s| sam.count[s]);
                    (b, ub, aub)
                })
                .collect();
            f(&Visit {
                a: word[0],
                u: &word[1..],
                occ_au: sam.count[x],
                occ_u: sam.count[u],
                right,
            });
            for &b in &sigma {
                if let Some(xb) = sam.step(x, b) {
                    let ub = sam.step(u, b).expect("suffix of an occurring word occurs");
                    if sam.count[ub] >= 2 {
                        let mut w = word.clone();
                        w.push(b);
                        stack.push((xb, ub, w));
                    }
                }
            }
        }
    }

    pub fn maws(text: &[u8], cap: usize) -> Result<WordSet, OracleError> {
        check(text, cap)?;
        let mut out = WordSet::new();
        walk(text, |v| {
            for &(b, ub, aub) in &v.right {
                if aub == 0 && ub >= 1 {
                    out.insert(cat(v.a, v.u, b));
                }
            }
        });
        Ok(out)
    }

    pub fn mrws(text: &[u8], which: MrwCount, cap: usize) -> Result<WordSet, OracleError> {
        check(text, cap)?;
        let mut out = WordSet::new();
        walk(text, |v| {
            for &(b, ub, aub) in &v.right {
                if which.accepts(aub) && v.occ_au > aub && ub > aub {
                    out.insert(cat(v.a, v.u, b));
                }
            }
        });
        Ok(out)
    }

    pub fn mus(text: &[u8], cap: usize) -> Result<WordSet, OracleError> {
        check(text, cap)?;
        let mut out = WordSet::new();
        walk(text, |v| {
            for &(b, ub, aub) in &v.right {
                if aub == 1 && v.occ_au >= 2 && ub >= 2 {
                    out.insert(cat(v.a, v.u, b));
                }
            }
        });
        Ok(out)
    }

    pub fn ebfs(text: &[u8], cap: usize) -> Result<WordSet, OracleError> {
        check(text, cap)?;
        // Left-extension counts are gathered in a first walk, keyed by u.
        let mut lefts: HashMap<Vec<u8>, usize> = HashMap::new();
        walk(text, |v| *lefts.entry(v.u.to_vec()).or_insert(0) += 1);
        let mut out = WordSet::new();
        walk(text, |v| {
            let rights = v.right.iter().filter(|r| r.1 >= 1).count();
            let other_left = lefts[v.u] >= 2;
            for &(b, _, aub) in &v.right {
                if aub >= 1 && other_left && rights >= 2 {
                    out.insert(cat(v.a, v.u, b));
                }
            }
        });
        Ok(out)
    }

    pub fn maximal_repeats(text: &[u8], cap: usize) -> Result<WordSet, OracleError> {
        check(text, cap)?;
        let mut lefts: HashMap<Vec<u8>, (usize, usize, usize)> = HashMap::new();
        walk(text, |v| {
            let rights = v.right.iter().filter(|r| r.1 >= 1).count();
            let entry = lefts.entry(v.u.to_vec()).or_insert((0, rights, v.occ_u));
            entry.0 += 1;
        });
        Ok(lefts
            .into_iter()
            .filter(|(u, (l, r, occ))| {
                *occ >= 2 && (*l >= 2 || text.starts_with(u)) && (*r >= 2 || text.ends_with(u))
            })
            .map(|(u, _)| u)
            .collect())
    }
}

/// Oracle entry points with a configurable size cap. Texts up to
/// [`NAIVE_CAP`] symbols use plain substring counting, longer ones the
/// automaton-counted tier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Oracle {
        Oracle { cap }
    }

    fn dispatch<T>(
        &self,
        text: &[u8],
        naive: impl FnOnce(&[u8]) -> Result<T, OracleError>,
        counted: impl FnOnce(&[u8], usize) -> Result<T, OracleError>,
    ) -> Result<T, OracleError> {
        if text.len() <= NAIVE_CAP.min(self.cap) {
            naive(text)
        } else {
            counted(text, self.cap)
        }
    }

    /// Non-trivial minimal absent words.
    pub fn maws(&self, text: &[u8]) -> Result<WordSet, OracleError> {
        self.dispatch(text, naive::maws, counted::maws)
    }

    /// Extended bispecial factors.
    pub fn ebfs(&self, text: &[u8]) -> Result<WordSet, OracleError> {
        self.dispatch(text, naive::ebfs, counted::ebfs)
    }

    /// Minimal rare words occurring exactly `k` times, or all occurring ones.
    pub fn mrws(&self, text: &[u8], which: MrwCount) -> Result<WordSet, OracleError> {
        self.dispatch(text, |t| naive::mrws(t, which), |t, cap| counted::mrws(t, which, cap))
    }

    /// Minimal unique substrings.
    pub fn mus(&self, text: &[u8]) -> Result<WordSet, OracleError> {
        self.dispatch(text, naive::mus, counted::mus)
    }

    /// Minimal unique substrings with their (0-based, inclusive) intervals.
    pub fn mus_intervals(&self, text: &[u8]) -> Result<BTreeMap<Vec<u8>, (usize, usize)>, OracleError> {
        let set = self.mus(text)?;
        Ok(set
            .into_iter()
            .map(|w| {
                let i = text.windows(w.len()).position(|x| x == w.as_slice()).expect("unique word occurs");
                let j = i + w.len() - 1;
                (w, (i, j))
            })
            .collect())
    }

    /// Maximal repeats, the empty word included.
    pub fn maximal_repeats(&self, text: &[u8]) -> Result<WordSet, OracleError> {
        self.dispatch(text, naive::maximal_repeats, counted::maximal_repeats)
    }
}

pub fn oracle_maws(text: &[u8]) -> Result<WordSet, OracleError> {
    Oracle::default().maws(text)
}

pub fn oracle_ebfs(text: &[u8]) -> Result<WordSet, OracleError> {
    Oracle::default().ebfs(text)
}

pub fn oracle_mrws(text: &[u8], which: MrwCount) -> Result<WordSet, OracleError> {
    Oracle::default().mrws(text, which)
}

pub fn oracle_mus(text: &[u8]) -> Result<WordSet, OracleError> {
    Oracle::default().mus(text)
}

pub fn oracle_mus_intervals(text: &[u8]) -> Result<BTreeMap<Vec<u8>, (usize, usize)>, OracleError> {
    Oracle::default().mus_intervals(text)
}

pub fn oracle_maximal_repeats(text: &[u8]) -> Result<WordSet, OracleError> {
    Oracle::default().maximal_repeats(text)
}

/// A linearised de Bruijn sequence of order `k` over the first `sigma`
/// lowercase letters: every length-`k` word occurs exactly once.
pub fn de_bruijn(sigma: usize, k: usize, cap: usize) -> Result<Vec<u8>, OracleError> {
    if sigma < 2 || k < 2 || sigma > 26 {
        return Err(OracleError::BadDeBruijn { sigma, k });
    }
    let total = (sigma as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(OracleError::DeBruijnTooLarge { cap });
    }
    // Concatenate, in lexicographic order, the Lyndon words whose length
    // divides k (Fredricksen–Kessler–Maiorana).
    let mut seq = Vec::with_capacity(total as usize + k);
    let mut word = vec![0usize; k + 1];
    let mut len = 1usize;
    loop {
        if k.is_multiple_of(len) {
            seq.extend(word[1..=len].iter().copied());
        }
        // Next preprime word.
        for i in len + 1..=k {
            word[i] = word[i - len];
        }
        len = k;
        while len > 0 && word[len] == sigma - 1 {
            len -= 1;
        }
        if len == 0 {
            break;
        }
        word[len] += 1;
    }
    let wrap: Vec<usize> = seq[..k - 1].to_vec();
    seq.extend(wrap);
    Ok(seq.into_iter().map(|s| b'a' + s as u8).collect())
}

/// Fibonacci word with `F_1 = "b"`, `F_2 = "a"`, `F_k = F_{k-1} F_{k-2}`.
pub fn fibonacci_word(k: usize) -> Vec<u8> {
    let (mut prev, mut cur) = (b"b".to_vec(), b"a".to_vec());
    if k <= 1 {
        return prev;
    }
    for _ in 2..k {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
