#![no_main]

use ec_atlas::census::GroupShape;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(shape) = text.parse::<GroupShape>() {
            assert!(shape.is_well_formed());
            assert_eq!(shape.compact().parse::<GroupShape>().unwrap(), shape);
        }
    }
});
