mod common;

use cdawg_maw::cdawg::Orientation;
use cdawg_maw::oracle::{self, MrwCount};
use cdawg_maw::text::Sentinels;
use common::*;

fn check_against_oracle(raw: &[u8], mode: Sentinels, orientation: Orientation) {
    let (text, index) = build(raw, mode, orientation);
    let t = text.symbols();
    let got = enumerate_all(&index);
    let ctx = format!("{:?} {:?} {:?}", String::from_utf8_lossy(t), mode, orientation);
    let maws = words(&index, &got.maws);
    assert_eq!(maws.len(), got.maws.len(), "duplicate MAW for {ctx}");
    assert_eq!(maws, oracle::oracle_maws(t).unwrap(), "MAW {ctx}");
    let ebfs = words(&index, &got.ebfs);
    assert_eq!(ebfs.len(), got.ebfs.len(), "duplicate EBF for {ctx}");
    assert_eq!(ebfs, oracle::oracle_ebfs(t).unwrap(), "EBF {ctx}");
    let mrws = words(&index, &got.mrws);
    assert_eq!(mrws.len(), got.mrws.len());
    assert_eq!(mrws, oracle::oracle_mrws(t, MrwCount::Occurring).unwrap(), "MRW {ctx}");
    assert_eq!(words(&index, &got.mus), oracle::oracle_mus(t).unwrap(), "MUS {ctx}");
}

#[test]
fn small_binary_strings_match_oracle() {
    for raw in all_strings(b"ab", 8) {
        for mode in [Sentinels::None, Sentinels::Both, Sentinels::EndOnly] {
            if raw.is_empty() && mode == Sentinels::None {
                continue;
            }
            for orientation in [Orientation::Forward, Orientation::Reverse] {
                check_against_oracle(&raw, mode, orientation);
            }
        }
    }
}
