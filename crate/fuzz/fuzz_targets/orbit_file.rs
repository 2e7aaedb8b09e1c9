#![no_main]

use libfuzzer_sys::fuzz_target;
use torsionlab::io::{from_json, OrbitFile};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = from_json::<OrbitFile>(s) {
        let _ = f.to_series().map(|s| OrbitFile::from_series(&s));
    }
});
