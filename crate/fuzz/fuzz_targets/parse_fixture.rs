#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(rows) = ec_atlas::survey::parse_fixture(text) {
            for row in rows {
                assert!(row.shapes.iter().all(|s| s.is_well_formed()));
            }
        }
    }
});
