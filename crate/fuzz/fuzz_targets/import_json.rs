#![no_main]

use ggraphs::incidence::incidence_graph;
use ggraphs::multigraph::{export_json, import_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(g) = import_json(text) {
            let again = import_json(&export_json(&g)).expect("exported graph re-imports");
            assert_eq!(again.vertex_count(), g.vertex_count());
            assert_eq!(again.edge_count(), g.edge_count());
            let total: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
            assert_eq!(total, 2 * g.edge_count());
            let _ = incidence_graph(&g);
        }
    }
});
