#![no_main]

use libfuzzer_sys::fuzz_target;
use mascot::structure::{parse_pdb_bytes, write_pdb, StructureId};

fuzz_target!(|data: &[u8]| {
    let id = StructureId::new("FUZZ", None).unwrap();
    if let Ok(s) = parse_pdb_bytes(data, id.clone(), "fuzz") {
        assert!(!s.is_empty());
        let again = parse_pdb_bytes(write_pdb(&s).as_bytes(), id, "rewritten").unwrap();
        assert_eq!(again.len(), s.len());
    }
});
