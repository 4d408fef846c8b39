//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::panic;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use ggraphs::algebra::{
    dihedral_group, parse_elements, parse_group, quaternion_group, Elem, FiniteGroup, GenMultiset, Perm,
};
use ggraphs::ggraph::{build_phi, kmn_build, kmn_plan, verify_structure, GGraph};
use ggraphs::ikn::{
    build_and_verify, conjugate_tau, obstructions, orbit_structure, parse_tau, pi_map, search_tau, verify_tau,
    ObstructionKind, SearchMode, SearchOptions, SearchOutcome, TauCertificate, NON_EXISTENCE, KNOWN_CERTIFICATES,
};
use ggraphs::incidence::{incidence_graph, incidence_preimage};
use ggraphs::multigraph::{isomorphic, IsoOptions, Multigraph};
use ggraphs::recognition::{check_simple, reconstruct, shifts_of, ConditionKind, RecognitionWitness};
use ggraphs::arith::units_mod;
use serde_json::Value;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ggt(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ggt"))
        .args(args)
        .env_remove("GGRAPH_BUDGET")
        .output()
        .expect("ggt runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn ggt_json(args: &[&str]) -> Result<(i32, Value), String> {
    let mut full = args.to_vec();
    full.extend(["-o", "json"]);
    let (code, out, err) = ggt(&full);
    let v = serde_json::from_str(&out).map_err(|e| format!("ggt {args:?}: {e}; stderr: {err}"))?;
    Ok((code, v))
}

/// The six zoo groups. Five are given as group specs so the command line
/// can rebuild them; `Q_8` is the abstract Cayley table.
struct ZooGroup {
    spec: Option<&'static str>,
    group: FiniteGroup,
    seeds: [&'static str; 3],
}

fn zoo() -> Vec<ZooGroup> {
    let spec = |s: &'static str, seeds| ZooGroup {
        spec: Some(s),
        group: parse_group(s).expect("zoo spec parses"),
        seeds,
    };
    let d4 = spec("perm:4:(1 2 3 4),(2 4)", ["(1 2 3 4)", "(2 4)", "(1 3)"]);
    assert_eq!(d4.group, dihedral_group(4));
    vec![
        spec("Z6", ["1", "2", "3"]),
        spec("Z8", ["1", "2", "4"]),
        spec("Z2xZ4", ["(1,0)", "(0,1)", "(1,1)"]),
        spec("S3", ["(1 2)", "(1 2 3)", "(2 3)"]),
        d4,
        ZooGroup {
            spec: None,
            group: quaternion_group(),
            seeds: ["i", "j", "-1"],
        },
    ]
}

/// All multisets of size 1..=3 over the three seeds.
fn seed_multisets() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..3 {
        out.push(vec![a]);
        for b in a..3 {
            out.push(vec![a, b]);
            for c in b..3 {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

struct ZooGraph {
    spec: Option<&'static str>,
    gens_text: String,
    gg: GGraph,
}

fn zoo_graphs() -> Vec<ZooGraph> {
    let mut out = Vec::new();
    for z in zoo() {
        for ms in seed_multisets() {
            let texts: Vec<&str> = ms.iter().map(|&i| z.seeds[i]).collect();
            let gens_text = texts.join(",");
            let elems = parse_elements(&z.group, &gens_text).expect("seed parses");
            let gg = build_phi(&z.group, &GenMultiset::new(&z.group, &elems).expect("multiset"));
            out.push(ZooGraph { spec: z.spec, gens_text, gg });
        }
    }
    out
}

fn listed(n: usize) -> Option<Perm> {
    KNOWN_CERTIFICATES.iter().find(|e| e.0 == n).map(|e| parse_tau(n, e.1).expect("listed τ parses"))
}

fn c1_known_table() -> Outcome {
    let t = Instant::now();
    for (n, text) in KNOWN_CERTIFICATES {
        let v = verify_tau(n, &parse_tau(n, text).map_err(|e| e.to_string())?);
        ensure!(v.valid && v.detail.is_empty(), "n = {n}: {}", v.detail);
    }
    let lib = t.elapsed();
    ensure!(lib < Duration::from_secs(1), "library verification took {lib:?}");
    for (n, text) in KNOWN_CERTIFICATES {
        let (code, out, err) = ggt(&["ikn", "verify", &n.to_string(), "--tau", text]);
        ensure!(code == 0 && out.contains("valid certificate"), "ggt ikn verify {n}: exit {code}, {err}");
    }
    Ok(format!("12/12 listed certificates verify ({lib:.2?} in the library)"))
}

fn c2_non_existence() -> Outcome {
    let expected = |n: usize| match n {
        6 | 12 | 18 => ObstructionKind::Mod6,
        10 | 14 => ObstructionKind::Mod4,
        _ => ObstructionKind::Mod24,
    };
    let mut notes = Vec::new();
    for n in NON_EXISTENCE {
        let t = Instant::now();
        let (code, v) = ggt_json(&["ikn", "search", &n.to_string()])?;
        let kinds: Vec<&str> = v["obstructions"]
            .as_array()
            .map(|a| a.iter().filter_map(|o| o["kind"].as_str()).collect())
            .unwrap_or_default();
        ensure!(code == 1, "ikn search {n}: exit {code}");
        ensure!(
            kinds.contains(&format!("{:?}", expected(n)).as_str()),
            "ikn search {n}: obstructions {kinds:?}"
        );
        ensure!(obstructions(n).iter().all(|o| o.condition_holds(n)), "n = {n}: obstruction condition");
        if n <= 14 {
            let (code, v) = ggt_json(&["ikn", "search", &n.to_string(), "--all", "--exhaustive"])?;
            ensure!(code == 1, "exhaustive search {n}: exit {code}");
            ensure!(v["certificates"].as_array().is_some_and(|a| a.is_empty()), "n = {n}: certificates found");
            ensure!(v["exhaustive"] == Value::Bool(true), "n = {n}: search not exhaustive");
            ensure!(
                v["obstructions"]
                    .as_array()
                    .is_some_and(|a| a.iter().any(|o| o["kind"] == "ExhaustiveSearch")),
                "n = {n}: no exhaustive-search entry"
            );
        }
        let el = t.elapsed();
        ensure!(el < Duration::from_secs(60), "n = {n} took {el:?}");
        notes.push(format!("{n}:{:?}", expected(n)));
    }
    Ok(format!("all six obstructed ({}), exhaustive for n <= 14", notes.join(" ")))
}

fn c3_search_recovery() -> Outcome {
    for n in [2, 3, 4, 5, 7, 8, 9, 11, 13] {
        let t = Instant::now();
        let (code, v) = ggt_json(&["ikn", "search", &n.to_string(), "--first"])?;
        ensure!(code == 0, "ikn search {n} --first: exit {code}");
        let cert = &v["certificates"][0];
        let cert = TauCertificate::from_json(&cert.to_string()).map_err(|e| format!("n = {n}: {e}"))?;
        ensure!(verify_tau(n, &cert.tau).valid, "n = {n}: invalid certificate");
        ensure!(t.elapsed() < Duration::from_secs(60), "n = {n} took {:?}", t.elapsed());
    }
    for n in [16, 17, 19] {
        let tau = listed(n).expect("listed");
        let (code, out, _) = ggt(&["ikn", "verify", &n.to_string(), "--tau", &tau.to_string()]);
        ensure!(code == 0 && out.contains("valid certificate"), "listed τ for n = {n} rejected");
        let t = Instant::now();
        let (code, v) = ggt_json(&["ikn", "search", &n.to_string(), "--all"])?;
        ensure!(code == 0, "full search n = {n}: exit {code}");
        ensure!(t.elapsed() < Duration::from_secs(3600), "n = {n} took {:?}", t.elapsed());
        let images = tau.images();
        let found = v["certificates"]
            .as_array()
            .is_some_and(|a| a.iter().any(|c| c["tau"].as_array().map(|x| x.len()) == Some(n) && c["tau"] == serde_json::json!(images)));
        ensure!(found, "full search n = {n} misses the listed τ");
    }
    Ok("first certificate for 9 values of n; full search for 16, 17, 19 contains the listed τ".into())
}

fn c4_structure() -> Outcome {
    let graphs = zoo_graphs();
    ensure!(graphs.len() >= 50, "only {} graphs", graphs.len());
    let mut failures = Vec::new();
    for z in &graphs {
        let r = verify_structure(&z.gg);
        let bad: Vec<String> = r.items.iter().filter(|i| !i.passed).map(|i| i.item.to_string()).collect();
        if !bad.is_empty() {
            failures.push(format!(
                "{} {{{}}} (|S| = {}) items {}",
                z.gg.group().name(),
                z.gens_text,
                z.gg.gens().len(),
                bad.join(",")
            ));
        }
    }
    ensure!(
        failures.is_empty(),
        "{} of {} graphs fail: {}",
        failures.len(),
        graphs.len(),
        failures.join("; ")
    );
    Ok(format!("{} graphs over 6 groups, all 5 items pass", graphs.len()))
}

fn c5_kmn_grid() -> Outcome {
    let mut cases = 0;
    for m in 1..=6 {
        for n in 1..=6 {
            for l in 1..=4 {
                let plan = kmn_plan(m, n, l).map_err(|e| e.to_string())?;
                let gg = kmn_build(&plan).map_err(|e| format!("({m},{n},{l}): {e}"))?;
                let g = plan.group.clone();
                let kb = gg.graph().is_complete_bipartite_multi();
                ensure!(
                    kb.as_ref().is_some_and(|k| (k.m, k.n, k.l) == (m.min(n), m.max(n), l)),
                    "({m},{n},{l}): recognized as {kb:?}"
                );
                ensure!(gg.level(0).len() == n && gg.level(1).len() == m, "({m},{n},{l}): level sizes");
                ensure!(
                    g.element_order(plan.s) == m * l && g.element_order(plan.t) == n * l,
                    "({m},{n},{l}): generator orders"
                );
                cases += 1;
            }
        }
    }
    let (code, out, _) = ggt(&["kmn", "2", "3", "1", "-o", "summary"]);
    ensure!(
        code == 0 && out.contains("G: Z2xZ3") && out.contains("parts: (2,3)") && out.contains("multiplicity: 1"),
        "ggt kmn 2 3 1: exit {code}\n{out}"
    );
    Ok(format!("{cases} cases"))
}

fn recognize_via_cli(dir: &Path, i: usize, spec: &str, gens: &str) -> Result<(), String> {
    let gpath = dir.join(format!("g{i}.json"));
    let wpath = dir.join(format!("w{i}.json"));
    let (c1, graph, _) = ggt(&["ggraph", "build", "-g", spec, "-s", gens, "-o", "json"]);
    let (c2, witness, _) = ggt(&["ggraph", "shifts", "-g", spec, "-s", gens, "-o", "json"]);
    ensure!(c1 == 0 && c2 == 0, "{spec} {gens}: build/shifts exit {c1}/{c2}");
    std::fs::write(&gpath, graph).map_err(|e| e.to_string())?;
    std::fs::write(&wpath, witness).map_err(|e| e.to_string())?;
    let (code, v) = ggt_json(&[
        "recognize",
        "--graph",
        gpath.to_str().expect("utf-8 path"),
        "--witness",
        wpath.to_str().expect("utf-8 path"),
        "--reconstruct",
    ])?;
    ensure!(
        code == 0 && v["reconstruction"]["verified"] == Value::Bool(true),
        "{spec} {gens}: recognize exit {code}"
    );
    Ok(())
}

fn c6_recognition() -> Outcome {
    let graphs = zoo_graphs();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut via_cli = 0;
    for (i, z) in graphs.iter().enumerate() {
        let g = z.gg.graph();
        let w = shifts_of(&z.gg).map_err(|e| e.to_string())?;
        let r = reconstruct(g, &w, false).map_err(|e| format!("{} {}: {e}", z.gg.group().name(), z.gens_text))?;
        r.iso.verify(r.ggraph.graph(), g).map_err(|e| format!("{}: {e}", z.gens_text))?;
        // H is the set of distinct shifts; it is G itself once Φ has an edge
        ensure!(r.group.order() == w.h.len(), "{}: reconstructed order", z.gens_text);
        if z.gg.graph().edge_count() > 0 {
            ensure!(r.group.order() == z.gg.group().order(), "{}: reconstructed order", z.gens_text);
        }
        if let Some(spec) = z.spec {
            recognize_via_cli(dir.path(), i, spec, &z.gens_text)?;
            via_cli += 1;
        }
    }

    let mut mutations = 0;
    for z in graphs.iter().filter(|z| z.gg.levels().len() >= 2) {
        let name = format!("{} {}", z.gg.group().name(), z.gens_text);
        let w = shifts_of(&z.gg).map_err(|e| e.to_string())?;
        // edge 0 carries the identity label and touches the clique C_e
        let mut deleted = z.gg.graph().clone();
        deleted.remove_edge(0);
        let r = check_simple(&deleted, &w).map_err(|e| e.to_string())?;
        ensure!(
            !r.condition(ConditionKind::RegularAction).expect("present").passed,
            "{name}: deleted edge still regular"
        );
        let mut relabeled = z.gg.clone();
        let other = relabeled.edges()[0].label;
        let new_label = (other + 1) % relabeled.group().order();
        relabeled.set_edge_label(0, new_label);
        ensure!(shifts_of(&relabeled).is_err(), "{name}: relabeled edge still has shifts");
        // two edges between the same pair of levels now share a label
        ensure!(!verify_structure(&relabeled).item(4).passed, "{name}: item 4 survives relabeling");
        let shrunk = RecognitionWitness { h: w.h.clone(), c: w.c[..w.c.len() - 1].to_vec() };
        let r = check_simple(z.gg.graph(), &shrunk).map_err(|e| e.to_string())?;
        ensure!(
            !r.condition(ConditionKind::MeetsEveryOrbit).expect("present").passed,
            "{name}: shrunk C still meets every orbit"
        );
        mutations += 3;
    }
    Ok(format!(
        "{} round trips ({via_cli} through ggt recognize --reconstruct), {mutations} mutations rejected",
        graphs.len()
    ))
}

fn preimage_cases() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        ("S3", "(1 2 3)", "(1 2)"),
        ("S3", "(1 2)", "(2 3)"),
        ("Z6", "2", "3"),
        ("Z2xZ2", "(1,0)", "(0,1)"),
        ("Z2xZ4", "(0,1)", "(1,0)"),
        ("Z2xZ4", "(1,1)", "(1,0)"),
        ("Z2xZ4", "(0,1)", "(1,2)"),
        ("perm:4:(1 2 3 4),(2 4)", "(1 2 3 4)", "(2 4)"),
        ("perm:4:(1 2 3 4),(2 4)", "(1 2)(3 4)", "(1 3)"),
        ("S4", "(1 2 3 4)", "(1 2)"),
        ("S4", "(1 2 3)", "(3 4)"),
        ("perm:5:(1 2 3 4 5),(2 5)(3 4)", "(1 2 3 4 5)", "(2 5)(3 4)"),
        ("Z2xZ6", "(0,1)", "(1,0)"),
    ]
}

fn c7_incidence() -> Outcome {
    let ik3 = incidence_graph(&Multigraph::complete(3));
    let iso = isomorphic(&ik3.graph, &Multigraph::cycle(6), &IsoOptions::default()).map_err(|e| e.to_string())?;
    ensure!(iso.is_some(), "I(K3) is not C6");

    let mut round_trips = 0;
    for (spec, s, t) in preimage_cases() {
        let g = parse_group(spec).map_err(|e| e.to_string())?;
        let st: Vec<Elem> = parse_elements(&g, &format!("{s},{t}")).map_err(|e| e.to_string())?;
        ensure!(g.element_order(st[1]) == 2, "{spec}: o(t) != 2");
        let gg = build_phi(&g, &GenMultiset::new(&g, &st).map_err(|e| e.to_string())?);
        ensure!(gg.graph().is_simple() && gg.graph().is_bipartite().is_some(), "{spec} {s} {t}: not simple bipartite");
        let (pre, map) = incidence_preimage(&gg).map_err(|e| format!("{spec} {s} {t}: {e}"))?;
        let back = incidence_graph(&pre);
        map.verify(gg.graph(), &back.graph).map_err(|e| format!("{spec} {s} {t}: {e}"))?;
        let iso = isomorphic(gg.graph(), &back.graph, &IsoOptions::default()).map_err(|e| e.to_string())?;
        ensure!(iso.is_some(), "{spec} {s} {t}: incidence graph of the preimage differs");
        round_trips += 1;
    }
    ensure!(round_trips >= 10, "only {round_trips} preimage round trips");

    let mut built = 0;
    for n in 2..=13 {
        let opts = SearchOptions { mode: SearchMode::All, short_circuit: false, ..Default::default() };
        let r = search_tau(n, &opts).map_err(|e| e.to_string())?;
        if let SearchOutcome::Certificates(certs) = r.outcome {
            for c in certs {
                let b = build_and_verify(n, &c.tau).map_err(|e| format!("n = {n}, τ = {}: {e}", c.tau))?;
                ensure!(b.report.all_passed() && b.report.group_order == n * (n - 1), "n = {n}: report");
                built += 1;
            }
        }
    }
    Ok(format!("I(K3) = C6, {round_trips} preimage round trips, {built} certificates with n <= 13 build I(K_n)"))
}

fn c8_necessary_conditions() -> Outcome {
    let mut certs: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for (n, text) in KNOWN_CERTIFICATES {
        certs.insert((n, parse_tau(n, text).map_err(|e| e.to_string())?.images()));
    }
    for n in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19] {
        let opts = SearchOptions { mode: SearchMode::All, ..Default::default() };
        if let SearchOutcome::Certificates(found) = search_tau(n, &opts).map_err(|e| e.to_string())?.outcome {
            certs.extend(found.into_iter().map(|c| (n, c.tau.images())));
        }
    }
    let mut conjugates = 0;
    for (n, images) in &certs {
        let (n, tau) = (*n, Perm::from_images(images).map_err(|e| e.to_string())?);
        let o = orbit_structure(n, &tau).map_err(|e| e.to_string())?;
        ensure!(o.conforms, "n = {n}, τ = {tau}: orbits {:?}", o.sizes);
        let p = pi_map(n, &tau).map_err(|e| e.to_string())?;
        ensure!(p.conforms, "n = {n}, τ = {tau}: π misses {:?}", p.missing);
        for a in units_mod(n - 1) {
            let c = conjugate_tau(n, &tau, a).map_err(|e| e.to_string())?;
            ensure!(verify_tau(n, &c).valid, "n = {n}, τ = {tau}, a = {a}: conjugate invalid");
            conjugates += 1;
        }
    }
    Ok(format!("{} certificates conform, {conjugates} conjugates verified", certs.len()))
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "known τ table", limit: Duration::from_secs(60), run: c1_known_table },
        Criterion { id: 2, name: "non-existence set", limit: Duration::from_secs(360), run: c2_non_existence },
        Criterion { id: 3, name: "search recovery", limit: Duration::from_secs(3 * 3600), run: c3_search_recovery },
        Criterion { id: 4, name: "structure suite", limit: Duration::from_secs(30), run: c4_structure },
        Criterion { id: 5, name: "K^l_{m,n} grid", limit: Duration::from_secs(60), run: c5_kmn_grid },
        Criterion { id: 6, name: "recognition round trip", limit: Duration::from_secs(120), run: c6_recognition },
        Criterion { id: 7, name: "incidence suite", limit: Duration::from_secs(120), run: c7_incidence },
        Criterion { id: 8, name: "necessary conditions", limit: Duration::from_secs(30), run: c8_necessary_conditions },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(c.run);
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(Ok(d)) if elapsed <= c.limit => (true, d),
            Ok(Ok(d)) => (false, format!("{d}; over the {:?} limit", c.limit)),
            Ok(Err(e)) => (false, e),
            Err(p) => (
                false,
                p.downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panicked".into()),
            ),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {} ({}): {} in {:.2?}: {detail}",
            c.id,
            c.name,
            if pass { "PASS" } else { "FAIL" },
            elapsed
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
