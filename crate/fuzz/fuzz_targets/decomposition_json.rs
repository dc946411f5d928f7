#![no_main]

use libfuzzer_sys::fuzz_target;
use quiddity::geometry::Decomposition;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(d) = Decomposition::from_json(text) else { return };
    let again = Decomposition::from_json(&d.to_json()).expect("printed decomposition reparses");
    assert_eq!(d, again);
    assert_eq!(d.triangle_counts().len(), d.n());
});
