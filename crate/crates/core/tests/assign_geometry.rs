mod common;

use mascot::sse::{assign_sse, sequence_for, symbols_to_string, SseProvenance, SseSymbol};
use mascot::structure::{parse_pdb_bytes, write_pdb, StructureId};

#[test]
fn ideal_helix_is_alpha() {
    let s = common::helix(30);
    let seq = assign_sse(&s).unwrap();
    assert_eq!(seq.len(), 30);
    let interior = &seq.symbols[2..28];
    let h = interior.iter().filter(|&&x| x == SseSymbol::AlphaHelix).count();
    assert!(
        h as f64 >= 0.8 * interior.len() as f64,
        "{}",
        symbols_to_string(&seq.symbols)
    );
}

#[test]
fn extended_chain_has_no_helix_or_strand() {
    let seq = assign_sse(&common::extended(25)).unwrap();
    assert!(
        seq.symbols.iter().all(|s| !matches!(
            s,
            SseSymbol::AlphaHelix | SseSymbol::Helix310 | SseSymbol::PiHelix | SseSymbol::Strand
        )),
        "{}",
        symbols_to_string(&seq.symbols)
    );
}

#[test]
fn three_helix_fold_keeps_its_helices() {
    let s = common::three_helix("THRE", [14, 12, 14]);
    let seq = assign_sse(&s).unwrap();
    let text = symbols_to_string(&seq.symbols);
    assert_eq!(text.matches("HHHHHHHH").count(), 3, "{text}");
}

#[test]
fn assignment_survives_pdb_round_trip() {
    let s = common::three_helix("THRE", [10, 10, 10]);
    let text = write_pdb(&s);
    let back = parse_pdb_bytes(text.as_bytes(), StructureId::new("THRE", None).unwrap(), "mem").unwrap();
    assert_eq!(assign_sse(&s).unwrap().symbols, assign_sse(&back).unwrap().symbols);
}

#[test]
fn provenance_prefers_dssp_files() {
    let dir = tempfile::tempdir().unwrap();
    let s = common::helix(6);
    let (_, prov) = sequence_for(&s, Some(dir.path())).unwrap();
    assert_eq!(prov, SseProvenance::Builtin);

    let mut dssp = String::from("  #  RESIDUE AA STRUCTURE BP1 BP2  ACC\n");
    for (i, ss) in "ZEEEEZ".chars().enumerate() {
        let ss = if ss == 'Z' { ' ' } else { ss };
        dssp.push_str(&format!("{:>5}{:>5} A A  {}\n", i + 1, i + 1, ss));
    }
    std::fs::write(dir.path().join("HLXA.dssp"), dssp).unwrap();
    let (seq, prov) = sequence_for(&s, Some(dir.path())).unwrap();
    assert_eq!(prov, SseProvenance::DsspFile);
    assert_eq!(symbols_to_string(&seq.symbols), "ZEEEEZ");

    let (seq, prov) = sequence_for(&common::helix(3), None).unwrap();
    assert_eq!(prov, SseProvenance::BuiltinAllZ);
    assert_eq!(symbols_to_string(&seq.symbols), "ZZZ");
}
