#![no_main]

use libfuzzer_sys::fuzz_target;
use quiddity::morphism::MorphismSpec;
use quiddity::ring::parse_ring_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(m) = text.parse::<MorphismSpec>() else { return };
    let again: MorphismSpec = m.to_string().parse().expect("printed descriptor reparses");
    assert_eq!(m, again);
    for r in ["Z/6", "Z/2xZ/3", "F4", "P(2)", "Z[10]", "Z/2xZ/2xZ/2"] {
        let _ = m.codomain(&parse_ring_spec(r).unwrap());
    }
});
