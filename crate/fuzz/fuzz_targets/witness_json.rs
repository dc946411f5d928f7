#![no_main]

use libfuzzer_sys::fuzz_target;
use quiddity::reduction::ReductionWitness;
use quiddity::ring::parse_ring_spec;

const RINGS: &[&str] = &["Z/2", "Z/5", "F4", "Z/2xZ/3", "Z[50]xZ[50]"];

fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let ring = parse_ring_spec(RINGS[pick as usize % RINGS.len()]).unwrap();
    let Ok(w) = ReductionWitness::from_json(&ring, text) else { return };
    let again = ReductionWitness::from_json(&ring, &w.to_json()).expect("printed witness reparses");
    assert_eq!(w, again);
});
