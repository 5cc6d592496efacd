#![no_main]

use libfuzzer_sys::fuzz_target;
use picard::ring::KNum;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = s.parse::<KNum>() {
        let back: KNum = x.to_string().parse().expect("display parses");
        assert_eq!(back, x);
    }
});
