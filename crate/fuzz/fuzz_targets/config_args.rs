//! Argument parsing and validation must reject or accept, never panic.
//! Input is split on NUL bytes into argv entries.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let args = std::iter::once("cuspcli").chain(text.split('\0'));
    if let Ok((_, cfg)) = cuspcli::parse_args(args) {
        assert!(cfg.tol > 0.0 && cfg.a > 0.0 && (0.0..1.0).contains(&cfg.alpha));
    }
});
