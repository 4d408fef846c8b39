#![no_main]

use ggraphs::algebra::{parse_elements, symmetric_group, GenMultiset};
use ggraphs::ggraph::build_phi;
use ggraphs::recognition::{check_simple, check_with_loops, RecognitionWitness};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let s3 = symmetric_group(3);
    let gens = parse_elements(&s3, "(1 2 3),(1 2),(2 3)").unwrap();
    let gg = build_phi(&s3, &GenMultiset::new(&s3, &gens).unwrap());
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(w) = RecognitionWitness::from_json(gg.graph(), text) {
            let _ = check_simple(gg.graph(), &w);
            let _ = check_with_loops(gg.graph(), &w);
        }
    }
});
