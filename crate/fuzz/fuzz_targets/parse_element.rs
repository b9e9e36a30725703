#![no_main]

use std::sync::OnceLock;

use ec_atlas::field::Field;
use libfuzzer_sys::fuzz_target;

fn fields() -> &'static [Field] {
    static FIELDS: OnceLock<Vec<Field>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        [(5, 1), (7, 2), (5, 3)]
            .into_iter()
            .map(|(p, r)| Field::new(p, r).unwrap())
            .collect()
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for f in fields() {
        if let Ok(x) = f.parse_element(text) {
            let again = f.parse_element(&f.display(x).to_string()).unwrap();
            assert_eq!(again, x);
        }
    }
});
