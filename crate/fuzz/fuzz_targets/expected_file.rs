#![no_main]

use libfuzzer_sys::fuzz_target;
use torsionlab::io::{from_json, ExpectedFile};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = from_json::<ExpectedFile>(s) {
        let _ = f
            .torsion
            .as_ref()
            .map(|e| e.matches(&torsionlab::algebra::RatFunc::var(1, 0)));
    }
});
