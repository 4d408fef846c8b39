#![no_main]

use ggraphs::algebra::{cyclic_group, direct_product, parse_elements, quaternion_group, symmetric_group};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&which, rest)) = data.split_first() else { return };
    let g = match which % 4 {
        0 => cyclic_group(12),
        1 => direct_product(&cyclic_group(2), &cyclic_group(4)),
        2 => symmetric_group(4),
        _ => quaternion_group(),
    };
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok(elems) = parse_elements(&g, text) {
            for x in elems {
                assert!(x < g.order());
                let shown = g.format_element(x);
                assert_eq!(parse_elements(&g, &shown).unwrap(), vec![x]);
            }
        }
    }
});
