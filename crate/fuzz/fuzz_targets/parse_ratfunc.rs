#![no_main]

use libfuzzer_sys::fuzz_target;
use torsionlab::algebra::{parse_ratfunc, VarNames};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((f, names)) = parse_ratfunc(s, None) {
        // Display output must parse back to the same function.
        let shown = f.display_with(&names).to_string();
        let (g, _) = parse_ratfunc(&shown, Some(&names)).expect("display output parses");
        assert_eq!(f, g, "{s:?} -> {shown:?}");
    }
    let _ = parse_ratfunc(s, Some(&VarNames::new(["z"])));
});
