#![no_main]

use libfuzzer_sys::fuzz_target;
use semibrick::MonomialAlgebra;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(alg) = MonomialAlgebra::parse_with_cap(text, 64) {
        let _ = alg.classify();
    }
});
