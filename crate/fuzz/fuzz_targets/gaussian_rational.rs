#![no_main]

use libfuzzer_sys::fuzz_target;
use torsionlab::algebra::GaussianRational;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = s.parse::<GaussianRational>() {
        // Both parts print as exact rationals that parse back unchanged.
        let again: GaussianRational = format!("{},{}", q.re, q.im)
            .parse()
            .expect("re,im form parses");
        assert_eq!(again, q);
    }
});
