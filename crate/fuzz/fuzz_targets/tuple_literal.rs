#![no_main]

use libfuzzer_sys::fuzz_target;
use quiddity::ring::parse_ring_spec;
use quiddity::Tuple;

const RINGS: &[&str] = &["Z/2", "Z/6", "F4", "P(3)", "Z[100]", "Z/2xZ/3", "Z[50]xZ/4", "(Z/2xF4)xP(2)"];

// First byte picks the ring, the rest is the literal.
fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let ring = parse_ring_spec(RINGS[pick as usize % RINGS.len()]).unwrap();
    let Ok(t) = Tuple::parse(&ring, text) else { return };
    let again = Tuple::parse(&ring, &t.to_string()).expect("printed tuple reparses");
    assert_eq!(t, again);
    if t.len() <= 64 {
        let _ = t.verify();
    }
    let canon = t.canonical_form();
    assert_eq!(canon.canonical_form(), canon);
});
