//! Fuzz the result-record parser.

#![no_main]

use libfuzzer_sys::fuzz_target;
use satpack::format::{parse_result, serialize_result};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(record) = parse_result(text) {
        let round = serialize_result(&record);
        let again = parse_result(&round).expect("serialized record parses");
        assert_eq!(record, again, "round trip must be exact");
    }
});
