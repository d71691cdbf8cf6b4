#![no_main]

use libfuzzer_sys::fuzz_target;
use mascot::structure::parse_structure_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(id) = parse_structure_spec(text) {
        assert_eq!(parse_structure_spec(&id.to_string()).unwrap(), id);
    }
});
