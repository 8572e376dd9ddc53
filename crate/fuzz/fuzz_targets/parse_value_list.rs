#![no_main]

use bezier_cond::cli::{fmt_f64, parse_value_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(values) = parse_value_list(text) {
        assert!(values.iter().all(|v| v.is_finite()));
        let joined: Vec<String> = values.iter().map(|v| fmt_f64(*v)).collect();
        let again = parse_value_list(&joined.join(",")).expect("re-parse");
        assert_eq!(
            again.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
            values.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
    }
});
