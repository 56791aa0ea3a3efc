#![no_main]

use libfuzzer_sys::fuzz_target;
use splicekit::splicing::SplicingSystem;

fuzz_target!(|text: &str| {
    if let Ok(sys) = SplicingSystem::from_json(text) {
        let again = SplicingSystem::from_json(&sys.to_json()).expect("emitted JSON parses");
        assert_eq!(again.to_json(), sys.to_json());
    }
});
