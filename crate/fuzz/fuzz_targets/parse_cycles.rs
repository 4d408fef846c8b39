#![no_main]

use ggraphs::algebra::parse_cycles;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&d, rest)) = data.split_first() else { return };
    let degree = usize::from(d % 16);
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok(p) = parse_cycles(degree, text) {
            assert_eq!(p.degree(), degree);
            assert!(p.compose(&p.inverse()).unwrap().is_identity());
            // printed cycles read back to the same permutation
            assert_eq!(parse_cycles(degree, &p.to_string()).unwrap(), p);
        }
    }
});
