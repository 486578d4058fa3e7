mod common;

use cdawg_maw::cdawg::{compute_stats, Orientation};
use cdawg_maw::oracle::{de_bruijn, fibonacci_word, Oracle};
use cdawg_maw::text::{Sentinels, Text};

use common::{build, enumerate_all, words};

#[test]
fn de_bruijn_words_all_occur_once() {
    let seq = de_bruijn(3, 4, 1 << 12).unwrap();
    assert_eq!(seq.len(), 81 + 3);
    let mut windows: Vec<&[u8]> = seq.windows(4).collect();
    windows.sort();
    windows.dedup();
    assert_eq!(windows.len(), 81);
}

#[test]
fn de_bruijn_absent_words_match_oracle() {
    for k in 3..=7 {
        let seq = de_bruijn(2, k, 1 << 10).unwrap();
        let (_, index) = build(&seq, Sentinels::None, Orientation::Auto);
        let got = words(&index, &enumerate_all(&index).maws);
        assert_eq!(got, Oracle::default().maws(&seq).unwrap(), "k={k}");
    }
}

#[test]
fn fibonacci_lengths_and_small_edge_counts() {
    let mut prev = 0;
    for k in 3..=24 {
        let f = fibonacci_word(k);
        assert!(f.len() > prev);
        prev = f.len();
        let stats = compute_stats(&Text::wrap(&f, Sentinels::Both).unwrap());
        assert!(stats.e_min < 2 * stats.n);
        assert!(stats.e_min <= 4 * k + 10, "F_{k}: e_min {}", stats.e_min);
    }
}

#[test]
fn fibonacci_sets_match_oracle() {
    let f = fibonacci_word(14);
    let text = Text::wrap(&f, Sentinels::Both).unwrap();
    let oracle = Oracle::default();
    let (_, index) = build(&f, Sentinels::Both, Orientation::Auto);
    let all = enumerate_all(&index);
    assert_eq!(words(&index, &all.maws), oracle.maws(text.symbols()).unwrap());
    assert_eq!(words(&index, &all.ebfs), oracle.ebfs(text.symbols()).unwrap());
    assert_eq!(words(&index, &all.mus), oracle.mus(text.symbols()).unwrap());
}
