#![no_main]
use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use plm_core::lattice::{build, Lattice, LatticeName};

static L3: OnceLock<Lattice> = OnceLock::new();

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = s.parse::<LatticeName>();
        let _ = L3.get_or_init(|| build(LatticeName::L3)).evaluate(s);
    }
});
