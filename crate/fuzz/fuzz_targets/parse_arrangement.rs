//! Fuzz the arrangement-file parser: accepted inputs must round-trip
//! bit-for-bit and convert to an arrangement (or fail cleanly).
//!
//! ```bash
//! cargo fuzz run parse_arrangement
//! ```

#![no_main]

use libfuzzer_sys::fuzz_target;
use satpack::format::{parse_arrangement, serialize_arrangement};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = parse_arrangement(text) {
        let round = serialize_arrangement(&file);
        let again = parse_arrangement(&round).expect("serialized file parses");
        assert_eq!(file, again, "round trip must be exact");
        // planar files either build or return a structured error
        let _ = file.to_arrangement();
    }
});
