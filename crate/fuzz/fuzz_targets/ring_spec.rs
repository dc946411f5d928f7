#![no_main]

use libfuzzer_sys::fuzz_target;
use quiddity::ring::parse_ring_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = parse_ring_spec(text) else { return };
    let printed = spec.to_string();
    let again = parse_ring_spec(&printed).expect("printed ring spec reparses");
    assert_eq!(spec, again, "{printed}");
    let _ = spec.element_count();
    let _ = spec.characteristic();
});
