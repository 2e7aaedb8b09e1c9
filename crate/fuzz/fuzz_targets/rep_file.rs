#![no_main]

use libfuzzer_sys::fuzz_target;
use torsionlab::io::{from_json, RepFile};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = from_json::<RepFile>(s) {
        let _ = f.to_spec().map(|s| RepFile::from_spec(&s));
    }
});
