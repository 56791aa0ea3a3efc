#![no_main]

use libfuzzer_sys::fuzz_target;
use splicekit::regular::Nfa;

fuzz_target!(|text: &str| {
    if let Ok(nfa) = Nfa::from_json(text) {
        let again = Nfa::from_json(&nfa.to_json()).expect("emitted JSON parses");
        assert_eq!(again.to_json(), nfa.to_json());
        if nfa.state_count() <= 12 {
            let _ = nfa.to_min_dfa();
        }
    }
});
