//! Spectrum CSV that parses must be written back to CSV that parses to the same records.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(records) = spectrum::parse_spectrum_csv(text) {
        let csv = spectrum::write_spectrum_csv(&records).expect("parsed records serialize");
        let again = spectrum::parse_spectrum_csv(&csv).expect("written CSV parses");
        assert_eq!(spectrum::write_spectrum_csv(&again).unwrap(), csv);
    }
});
