#![no_main]

use bezier_cond::cli::CurvePairDocument;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = CurvePairDocument::parse(text) {
        let again = CurvePairDocument::parse(&doc.to_json()).expect("re-parse");
        assert_eq!(again, doc);
        doc.curves().expect("validated document builds curves");
    }
});
