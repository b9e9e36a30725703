#![no_main]

use ec_atlas::survey::{AppendixConfig, FamilySelector, Format};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = text.parse::<Format>();
    if let Ok(family) = text.parse::<FamilySelector>() {
        assert_eq!(family.to_string().parse::<FamilySelector>().unwrap(), family);
    }
    if let Ok(config) = text.parse::<AppendixConfig>() {
        assert_eq!(config.name().parse::<AppendixConfig>().unwrap(), config);
    }
});
