#![no_main]

use libfuzzer_sys::fuzz_target;
use torsionlab::io::{from_json, ActionFile};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = from_json::<ActionFile>(s) {
        let _ = f.to_action().map(|a| ActionFile::from_action(&a));
    }
});
