#![no_main]

use libfuzzer_sys::fuzz_target;
use picard::words::parse_word;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 256 {
        return;
    }
    if let Ok(g) = parse_word(s) {
        assert!(g.mul(&g.inv()).is_identity());
    }
});
