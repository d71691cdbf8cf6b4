#![no_main]

use libfuzzer_sys::fuzz_target;
use mascot::align::SimilarityMatrix;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = text.parse::<SimilarityMatrix>() {
        let again: SimilarityMatrix = m.to_string().parse().unwrap();
        assert_eq!(again, m);
    }
});
