#![no_main]

use libfuzzer_sys::fuzz_target;
use picard::hermitian::{is_in_gamma, parse_matrix_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_matrix_json(s) {
        assert!(is_in_gamma(&g.kmat()));
        let json = serde_json::to_string(&g).expect("serializes");
        assert_eq!(parse_matrix_json(&json).expect("round trip"), g);
    }
});
