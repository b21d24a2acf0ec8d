#![allow(dead_code)]

use semibrick::{ModuleCategory, MonomialAlgebra};
use std::path::PathBuf;
use std::sync::Arc;

pub const FIXTURES: &[&str] =
    &["a2", "a3", "a3_alt", "k1", "nakayama3", "nakayama5", "nakayama_cycle2", "q1", "q2", "q1cycle", "q2cycle"];

pub fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.alg"))
}

pub fn algebra(name: &str) -> Arc<MonomialAlgebra> {
    let text = std::fs::read_to_string(path(name)).unwrap();
    Arc::new(MonomialAlgebra::parse(&text).unwrap())
}

pub fn category(name: &str, p: u32) -> ModuleCategory {
    ModuleCategory::new(algebra(name), p).unwrap()
}
