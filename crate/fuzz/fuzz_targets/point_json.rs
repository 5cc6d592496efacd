#![no_main]

use libfuzzer_sys::fuzz_target;
use picard::hermitian::{parse_point_json, primitive_rep};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_point_json(s) {
        assert!(v.iter().any(|x| !x.is_zero()));
        let _ = primitive_rep(&v);
    }
});
