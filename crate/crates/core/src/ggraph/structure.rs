//! The five structural properties of a G-graph, checked against the actual
//! edge labels rather than the construction.
//!
//! 1. `g ↦ δ_g` is injective and every `δ_g` is an automorphism, with
//!    `δ_{gh} = δ_h ∘ δ_g` (shifts act on the right).
//! 2. every shift maps each level onto itself.
//! 3. `δ_{g'}(C_g) = C_{gg'}`.
//! 4. between two distinct levels (and, with loops, on one level) the edge
//!    labels are in bijection with `G`.
//! 5. the label set of every multi-edge is a right coset of `⟨s⟩ ∩ ⟨t⟩`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::GGraph;
use crate::algebra::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub item: u8,
    pub name: &'static str,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub items: Vec<CheckItem>,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn item(&self, n: u8) -> &CheckItem {
        &self.items[usize::from(n) - 1]
    }
}

fn item(n: u8, name: &'static str, failure: Option<String>) -> CheckItem {
    CheckItem {
        item: n,
        name,
        passed: failure.is_none(),
        counterexample: failure,
    }
}

pub fn verify_structure(gg: &GGraph) -> StructureReport {
    let group = gg.group();
    let shifts = gg.shifts();
    let fmt = |x: Elem| group.format_element(x);

    let item1 = match &shifts {
        None => Some("some shift does not map labeled edges onto labeled edges".to_string()),
        Some(shifts) => (|| {
            for s in shifts {
                if let Err(e) = s.map.verify_automorphism(gg.graph()) {
                    return Some(format!("shift by {} is not an automorphism: {e}", fmt(s.element)));
                }
            }
            let mut seen = BTreeSet::new();
            for s in shifts {
                if !seen.insert(&s.map) {
                    return Some(format!("shift by {} coincides with another shift", fmt(s.element)));
                }
            }
            for g in group.elements() {
                for h in group.elements() {
                    let lhs = &shifts[group.mul(g, h)].map;
                    let rhs = shifts[h].map.compose(&shifts[g].map);
                    if *lhs != rhs {
                        return Some(format!("shift by {}·{} is not the composite", fmt(g), fmt(h)));
                    }
                }
            }
            None
        })(),
    };

    let item2 = shifts.as_ref().and_then(|shifts| {
        for s in shifts {
            for (li, level) in gg.levels().iter().enumerate() {
                for v in level.vertex_range() {
                    let w = s.map.vertex_map[v];
                    if !level.vertex_range().contains(&w) {
                        return Some(format!("shift by {} moves vertex {v} out of level {li}", fmt(s.element)));
                    }
                }
            }
        }
        None
    });
    let item2 = if shifts.is_none() {
        Some("shifts unavailable".to_string())
    } else {
        item2
    };

    let item3 = match &shifts {
        None => Some("shifts unavailable".to_string()),
        Some(shifts) => (|| {
            for g in group.elements() {
                let clique: BTreeSet<usize> = gg.colour_clique(g).into_iter().collect();
                for s in shifts {
                    let image: BTreeSet<usize> = clique.iter().map(|&v| s.map.vertex_map[v]).collect();
                    let target: BTreeSet<usize> =
                        gg.colour_clique(group.mul(g, s.element)).into_iter().collect();
                    if image != target {
                        return Some(format!("shift by {} does not send C_{} to C_{}", fmt(s.element), fmt(g), fmt(group.mul(g, s.element))));
                    }
                }
            }
            None
        })(),
    };

    let item4 = (|| {
        let level_of = |v: usize| gg.vertex_info(v).0;
        let mut labels: BTreeMap<(usize, usize), Vec<Elem>> = BTreeMap::new();
        for e in gg.edges() {
            let (a, b) = (level_of(e.u), level_of(e.v));
            if a == b && e.u != e.v {
                return Some(format!("edge between two vertices of level {a}"));
            }
            labels.entry((a.min(b), a.max(b))).or_default().push(e.label);
        }
        let nlev = gg.levels().len();
        for i in 0..nlev {
            let range = if gg.has_loops() { i..nlev } else { i + 1..nlev };
            for j in range {
                let mut ls = labels.remove(&(i, j)).unwrap_or_default();
                ls.sort_unstable();
                if ls.len() != group.order() || !ls.iter().copied().eq(group.elements()) {
                    return Some(format!(
                        "labels between levels {i} and {j} are not in bijection with G ({} edges)",
                        ls.len()
                    ));
                }
            }
        }
        if let Some(((i, j), _)) = labels.into_iter().next() {
            return Some(format!("unexpected edges between levels {i} and {j}"));
        }
        None
    })();

    let item5 = (|| {
        let mut multi: BTreeMap<(usize, usize), Vec<Elem>> = BTreeMap::new();
        for e in gg.edges() {
            multi.entry((e.u.min(e.v), e.u.max(e.v))).or_default().push(e.label);
        }
        for ((u, v), mut ls) in multi {
            let s = gg.levels()[gg.vertex_info(u).0].gen;
            let t = gg.levels()[gg.vertex_info(v).0].gen;
            let hs = group.cyclic_subgroup(s);
            let meet: Vec<Elem> = group
                .cyclic_subgroup(t)
                .into_iter()
                .filter(|x| hs.binary_search(x).is_ok())
                .collect();
            ls.sort_unstable();
            let h = ls[0];
            let mut coset: Vec<Elem> = meet.iter().map(|&w| group.mul(w, h)).collect();
            coset.sort_unstable();
            if coset != ls {
                let shown: Vec<String> = ls.iter().map(|&x| fmt(x)).collect();
                return Some(format!(
                    "labels {{{}}} on multi-edge {u}-{v} are not a right coset of <{}>∩<{}>",
                    shown.join(", "),
                    fmt(s),
                    fmt(t)
                ));
            }
        }
        None
    })();

    StructureReport {
        items: vec![
            item(1, "shift map is an injective homomorphism into Aut", item1),
            item(2, "shifts stabilize every level", item2),
            item(3, "shifts permute colour cliques", item3),
            item(4, "level-pair edges correspond to G", item4),
            item(5, "multi-edge labels form right cosets", item5),
        ],
    }
}
