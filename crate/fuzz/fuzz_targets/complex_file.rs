#![no_main]

use libfuzzer_sys::fuzz_target;
use torsionlab::io::{from_json, to_json, ComplexFile};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(f) = from_json::<ComplexFile>(s) else {
        return;
    };
    if let Ok(c) = f.to_complex() {
        // A decoded complex serializes to a file that decodes to itself.
        if let Ok(again) = ComplexFile::from_complex(&c) {
            let back: ComplexFile = from_json(&to_json(&again)).expect("canonical output parses");
            assert_eq!(back.to_complex().expect("canonical output decodes"), c);
        }
    }
});
