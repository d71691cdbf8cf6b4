#![no_main]

use libfuzzer_sys::fuzz_target;
use mascot::sse::parse_dssp_bytes;

fuzz_target!(|data: &[u8]| {
    let (chain, body) = match data.split_first() {
        Some((&c, rest)) if c.is_ascii_alphanumeric() => (Some(c as char), rest),
        _ => (None, data),
    };
    if let Ok(symbols) = parse_dssp_bytes(body, chain, "fuzz") {
        assert!(!symbols.is_empty());
    }
});
