#![no_main]

use libfuzzer_sys::fuzz_target;
use semibrick::strings::StringWord;
use semibrick::{ModuleCategory, MonomialAlgebra};
use std::sync::{Arc, OnceLock};

static CAT: OnceLock<ModuleCategory> = OnceLock::new();

fn category() -> &'static ModuleCategory {
    CAT.get_or_init(|| {
        let alg = MonomialAlgebra::parse(include_str!("../../fixtures/q2cycle.alg")).unwrap();
        ModuleCategory::new(Arc::new(alg), 2).unwrap()
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let cat = category();
    if let Ok(w) = StringWord::parse(cat.algebra(), text) {
        let printed = w.format(cat.algebra());
        assert_eq!(StringWord::parse(cat.algebra(), &printed).unwrap(), w);
    }
    if let Ok(id) = cat.lookup(text) {
        assert_eq!(cat.lookup(&cat.name(id)).unwrap(), id);
    }
});
