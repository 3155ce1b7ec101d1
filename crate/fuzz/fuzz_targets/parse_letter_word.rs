#![no_main]
use libfuzzer_sys::fuzz_target;
use plm_core::parse::parse_letter_word;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_letter_word(s);
    }
});
