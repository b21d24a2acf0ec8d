#![no_main]

use libfuzzer_sys::fuzz_target;
use semibrick::mutation::SemibrickPair;
use semibrick::{ModuleCategory, MonomialAlgebra};
use std::sync::{Arc, OnceLock};

static CAT: OnceLock<ModuleCategory> = OnceLock::new();

fn category() -> &'static ModuleCategory {
    CAT.get_or_init(|| {
        let alg = MonomialAlgebra::parse(include_str!("../../fixtures/q1.alg")).unwrap();
        ModuleCategory::new(Arc::new(alg), 2).unwrap()
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let cat = category();
    if let Ok(pair) = SemibrickPair::parse(cat, text) {
        assert_eq!(SemibrickPair::parse(cat, &pair.format(cat)).unwrap(), pair);
    }
});
