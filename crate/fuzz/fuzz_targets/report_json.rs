#![no_main]

use libfuzzer_sys::fuzz_target;
use quiddity::enumeration::ClassificationReport;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(report) = ClassificationReport::from_json(text) else { return };
    let printed = report.to_json();
    let again = ClassificationReport::from_json(&printed).expect("printed report reparses");
    assert_eq!(again.to_json(), printed);
    let _ = report.to_csv();
});
