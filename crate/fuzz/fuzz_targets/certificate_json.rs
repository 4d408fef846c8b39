#![no_main]

use ggraphs::ikn::{verify_tau, TauCertificate};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(c) = TauCertificate::from_json(text) {
            assert!(verify_tau(c.n, &c.tau).valid);
            let text = serde_json::to_string(&c.to_json()).unwrap();
            let back = TauCertificate::from_json(&text).expect("round trip");
            assert_eq!(back.tau, c.tau);
        }
    }
});
