use cdwg_wasm::{analyze_text, family_rows, graph_of, WORD_LIMIT};

#[test]
fn running_example_analysis() {
    let a = analyze_text("ababcbababcbc", "end", 0).unwrap();
    assert_eq!(a.stats.n, 14);
    assert!(a.maw.words.iter().any(|w| w == "cbcb"));
    assert_eq!(a.maw.total, a.maw.words.len());
    assert_eq!(a.mus.total, 3);
}

#[test]
fn length_filter_limits_words() {
    let all = analyze_text("abracadabra", "both", 0).unwrap();
    let short = analyze_text("abracadabra", "both", 3).unwrap();
    let long = analyze_text("abracadabra", "both", -4).unwrap();
    assert!(short.maw.words.iter().all(|w| w.chars().count() <= 3));
    assert!(long.maw.words.iter().all(|w| w.chars().count() >= 4));
    assert_eq!(short.maw.total + long.maw.total, all.maw.total);
}

#[test]
fn word_lists_are_capped() {
    let text: String = (0..3000).map(|i| (b'a' + ((i * 7 + i / 13) % 26) as u8) as char).collect();
    let a = analyze_text(&text, "none", 0).unwrap();
    assert!(a.maw.total > WORD_LIMIT);
    assert_eq!(a.maw.words.len(), WORD_LIMIT);
}

#[test]
fn graph_of_small_text() {
    let g = graph_of("ab", "both").unwrap();
    assert_eq!(g.nodes.len(), 2);
    assert_eq!(g.edges.len(), 4);
    assert_eq!(g.nodes[0].label, "ε");
    let labels: Vec<&str> = g.edges.iter().map(|e| e.label.as_str()).collect();
    assert!(labels.contains(&"♯ab$"));
    assert!(graph_of(&"a".repeat(500), "both").is_err());
}

#[test]
fn families() {
    let fib = family_rows("fib", 10, 14).unwrap();
    assert_eq!(fib[0].n, 55);
    assert!(fib.windows(2).all(|w| w[1].e_min >= w[0].e_min));
    let db = family_rows("debruijn", 3, 6).unwrap();
    assert_eq!(db[0].maw, 9);
    assert!(family_rows("primes", 1, 2).is_err());
}

#[test]
fn bad_input_is_an_error() {
    assert!(analyze_text("a\u{0}b", "both", 0).is_err());
    assert!(analyze_text("", "none", 0).is_err());
    assert!(analyze_text("ab", "sideways", 0).is_err());
}
