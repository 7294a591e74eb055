//! Any report that parses must survive a write and re-parse unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = cuspcli::parse_report_json(text) {
        let json = cuspcli::to_json(&report).expect("parsed reports serialize");
        let again = cuspcli::parse_report_json(&json).expect("written reports parse");
        assert_eq!(cuspcli::to_json(&again).unwrap(), json);
    }
});
