#![no_main]

use ggraphs::ikn::{parse_tau, verify_tau};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let n = usize::from(n % 70);
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok(tau) = parse_tau(n, text) {
            let v = verify_tau(n, &tau);
            assert_eq!(v.valid, v.detail.is_empty());
        }
    }
});
