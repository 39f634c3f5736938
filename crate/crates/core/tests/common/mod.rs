#![allow(dead_code)]

use std::path::PathBuf;

use prudnikov::{PrecisionContext, Real};
use serde_json::Value;

pub fn golden(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).expect("golden file is valid JSON")
}

pub fn ctx(digits: u32) -> PrecisionContext {
    PrecisionContext::new(digits).unwrap()
}

pub fn num(v: &Value, c: &PrecisionContext) -> Real {
    c.parse(v.as_str().expect("decimal string")).unwrap()
}

pub fn field(v: &Value, key: &str, c: &PrecisionContext) -> Real {
    num(&v[key], c)
}

#[track_caller]
pub fn assert_close(got: &Real, want: &Real, rel: f64, what: &str) {
    let d = got.rel_diff(want);
    assert!(
        d.to_f64() <= rel,
        "{what}: got {} want {} (rel {})",
        got.to_sig_string(30),
        want.to_sig_string(30),
        d.to_sig_string(3)
    );
}
