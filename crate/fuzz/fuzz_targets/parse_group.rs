#![no_main]

use ggraphs::algebra::parse_group;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // large symmetric groups are legal but slow to tabulate
    if data.len() > 64 {
        return;
    }
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(g) = parse_group(text) {
            assert!(g.order() >= 1);
            assert_eq!(g.mul(g.identity(), 0), 0);
        }
    }
});
