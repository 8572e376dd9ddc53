#![no_main]

use bezier_cond::cli::{cmd_intersect, CurvePairDocument};
use bezier_cond::IntersectConfig;
use libfuzzer_sys::fuzz_target;

// Whole pipeline on arbitrary documents: must never panic, and exit codes
// stay within the documented set.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = CurvePairDocument::parse(text) else { return };
    if doc.curve0.len() > 8 || doc.curve1.len() > 8 {
        return;
    }
    let cfg = IntersectConfig {
        max_depth: 24,
        ..IntersectConfig::default()
    };
    let out = cmd_intersect("fuzz", text, &cfg, true);
    assert!((0..=3).contains(&out.code), "{out:?}");
});
