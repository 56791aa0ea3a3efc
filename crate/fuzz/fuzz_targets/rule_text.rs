#![no_main]

use libfuzzer_sys::fuzz_target;
use splicekit::splicing::{Rule, Variant};

fuzz_target!(|data: &[u8]| {
    let Some((&tag, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let variant = if tag & 1 == 0 { Variant::Classic } else { Variant::Pixton };
    if let Ok(rule) = Rule::parse(text, variant) {
        assert_eq!(Rule::parse(&rule.to_string(), variant).unwrap(), rule);
    }
});
