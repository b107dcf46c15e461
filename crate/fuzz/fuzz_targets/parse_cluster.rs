//! Fuzz the cluster-file parser.

#![no_main]

use libfuzzer_sys::fuzz_target;
use satpack::format::{parse_cluster, serialize_cluster};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = parse_cluster(text) {
        let round = serialize_cluster(&file);
        let again = parse_cluster(&round).expect("serialized file parses");
        assert_eq!(file, again, "round trip must be exact");
        let _ = file.to_cluster();
    }
});
