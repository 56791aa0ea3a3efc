#![no_main]

use libfuzzer_sys::fuzz_target;
use splicekit::regular::{parse_regex, Alphabet};

fuzz_target!(|text: &str| {
    let sigma = Alphabet::new("abc").unwrap();
    if let Ok(nfa) = parse_regex(text, &sigma) {
        // subset construction is exponential; keep inputs small
        if text.len() <= 24 {
            let dfa = nfa.to_min_dfa();
            assert_eq!(dfa.minimize().to_json(), dfa.to_json());
        }
    }
});
