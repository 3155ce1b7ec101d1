#![no_main]
use libfuzzer_sys::fuzz_target;
use plm_core::congruences::CongruenceKind;
use plm_core::monoids::builtin;
use plm_core::properties::PropertyKind;
use plm_core::suite::Mode;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = s.parse::<CongruenceKind>();
        let _ = s.parse::<PropertyKind>();
        let _ = s.parse::<Mode>();
        let _ = builtin(s);
    }
});
