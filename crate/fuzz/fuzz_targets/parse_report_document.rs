#![no_main]

use bezier_cond::cli::ReportDocument;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = ReportDocument::parse(text) {
        let json = report.to_json();
        let again = ReportDocument::parse(&json).expect("re-parse");
        assert_eq!(again.to_json(), json);
        let _ = report.exit_code();
    }
});
