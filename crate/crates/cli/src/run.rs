use std::collections::BTreeSet;
use std::fmt::Display;
use std::path::Path;

use ggraphs::algebra::{parse_element, parse_elements, parse_group, Elem, FiniteGroup, GenMultiset};
use ggraphs::ggraph::{
    build_phi, build_psi, component_analysis, kmn_build, kmn_plan, verify_structure, GGraph, GGraphError,
};
use ggraphs::ikn::{
    build_and_verify, canonical_tau, obstructions, orbit_structure, parse_tau, pi_map, search_tau, verify_tau,
    IknError, ObstructionKind, SearchMode, SearchOptions, SearchOutcome, TauCertificate, DEFAULT_SEARCH_BUDGET,
    NON_EXISTENCE, KNOWN_CERTIFICATES,
};
use ggraphs::incidence::{
    incidence_graph, incidence_preimage, necessary_bipartite_witness, sufficient_bipartite_test,
    sufficient_recognition_check, IncidenceError, NecessaryOutcome, DEFAULT_NODE_BUDGET,
};
use ggraphs::multigraph::{export_dot, import_json, GraphError, GraphJson, Multigraph};
use ggraphs::recognition::{
    check_simple, check_with_loops, reconstruct, shifts_of, RecognitionError, RecognitionWitness, WitnessJson,
};
use serde_json::{json, Value};

use crate::args::{Command, Format, GgraphCmd, GroupArgs, IknCmd, IncidenceCmd};
use crate::summary::{pass_fail, yes_no, Summary};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

pub const BUDGET_VAR: &str = "GGRAPH_BUDGET";

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(msg: impl Display) -> Self {
        Failure { code: EXIT_USAGE, message: msg.to_string() }
    }

    fn negative(msg: impl Display) -> Self {
        Failure { code: EXIT_NEGATIVE, message: msg.to_string() }
    }

    fn internal(msg: impl Display) -> Self {
        Failure { code: EXIT_NEGATIVE, message: format!("internal error: {msg}") }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::usage(e)
    }
}

impl From<GGraphError> for Failure {
    fn from(e: GGraphError) -> Self {
        match e {
            GGraphError::Assertion(_) => Failure::internal(e),
            _ => Failure::usage(e),
        }
    }
}

impl From<RecognitionError> for Failure {
    fn from(e: RecognitionError) -> Self {
        match e {
            RecognitionError::WitnessInvalid(m) => Failure::negative(format!("witness rejected: {m}")),
            RecognitionError::CapExceeded { .. } => Failure { code: EXIT_INCONCLUSIVE, message: e.to_string() },
            RecognitionError::Assertion(_) => Failure::internal(e),
            _ => Failure::usage(e),
        }
    }
}

impl From<IncidenceError> for Failure {
    fn from(e: IncidenceError) -> Self {
        match e {
            IncidenceError::CapExceeded { .. } => Failure { code: EXIT_INCONCLUSIVE, message: e.to_string() },
            IncidenceError::Assertion(_) => Failure::internal(e),
            IncidenceError::Recognition(r) => r.into(),
            _ => Failure::usage(e),
        }
    }
}

impl From<IknError> for Failure {
    fn from(e: IknError) -> Self {
        match e {
            IknError::Assertion(_) => Failure::internal(e),
            _ => Failure::usage(e),
        }
    }
}

/// Text for stdout and the exit code.
pub struct Output {
    pub text: String,
    pub code: u8,
}

type Res = Result<Output, Failure>;

fn emit(format: Format, summary: &Summary, json: &Value, dot: Option<String>, code: u8) -> Res {
    let text = match format {
        Format::Summary => summary.finish(),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(json).expect("json serializes")),
        Format::Dot => dot.ok_or_else(|| Failure::usage("dot output is only available for graphs"))?,
    };
    Ok(Output { text, code })
}

fn budget(flag: Option<u64>, default: u64) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{BUDGET_VAR} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(default),
    }
}

fn load_group(spec: &str) -> Result<FiniteGroup, Failure> {
    parse_group(spec).map_err(|e| Failure::usage(format!("group {spec:?}: {e}")))
}

fn load_gens(group: &FiniteGroup, text: &str) -> Result<GenMultiset, Failure> {
    let elems = parse_elements(group, text).map_err(|e| Failure::usage(format!("generators {text:?}: {e}")))?;
    GenMultiset::new(group, &elems).map_err(Failure::usage)
}

fn load_ggraph(args: &GroupArgs) -> Result<GGraph, Failure> {
    let group = load_group(&args.group)?;
    let gens = load_gens(&group, &args.gens)?;
    Ok(if args.loops {
        build_psi(&group, &gens)
    } else {
        build_phi(&group, &gens)
    })
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_graph_file(path: &Path) -> Result<Multigraph, Failure> {
    import_json(&read_file(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn elems(group: &FiniteGroup, xs: &[Elem]) -> String {
    xs.iter().map(|&x| group.format_element(x)).collect::<Vec<_>>().join(", ")
}

fn graph_json(g: &Multigraph) -> Value {
    serde_json::to_value(GraphJson::from_graph(g)).expect("graph json serializes")
}

fn describe_graph(s: &mut Summary, g: &Multigraph) {
    s.kv("vertices", g.vertex_count())
        .kv("edges", g.edge_count())
        .kv("simple", yes_no(g.is_simple()))
        .kv("connected", yes_no(g.is_connected()))
        .kv("bipartite", yes_no(g.is_bipartite().is_some()));
    match g.is_complete_bipartite_multi() {
        Some(k) => s.kv("complete bipartite", format!("K^{}_{{{},{}}}", k.l, k.m, k.n)),
        None => s.kv("complete bipartite", "no"),
    };
}

pub fn run(command: Command) -> Res {
    match command {
        Command::Ggraph(GgraphCmd::Build { g, out }) => ggraph_build(&g, out.format),
        Command::Ggraph(GgraphCmd::Verify { g, out }) => ggraph_verify(&g, out.format),
        Command::Ggraph(GgraphCmd::Shifts { g, out }) => ggraph_shifts(&g, out.format),
        Command::Components { g, out } => components(&g, out.format),
        Command::Kmn { m, n, l, out } => kmn(m, n, l, out.format),
        Command::Incidence(IncidenceCmd::Build { graph, group, gens, loops, out }) => {
            incidence_build(graph.as_deref(), group, gens, loops, out.format)
        }
        Command::Incidence(IncidenceCmd::Preimage { group, gens, out }) => incidence_pre(&group, &gens, out.format),
        Command::BipartiteTest { group, s, t, necessary, sufficient, budget, out } => {
            bipartite_test(&group, &s, &t, necessary, sufficient, budget, out.format)
        }
        Command::Recognize { graph, witness, loops, reconstruct, out } => {
            recognize(&graph, &witness, loops, reconstruct, out.format)
        }
        Command::Ikn(IknCmd::Verify { n, tau, build, out }) => ikn_verify(n, &tau, build, out.format),
        Command::Ikn(IknCmd::Search { n, first: _, all, canonical, budget, exhaustive, out }) => {
            let mode = match (all, canonical) {
                (true, _) => SearchMode::All,
                (_, true) => SearchMode::UpToConjugacy,
                _ => SearchMode::First,
            };
            ikn_search(n, mode, budget, exhaustive, out.format)
        }
        Command::Ikn(IknCmd::Table { nmax, budget, out }) => ikn_table(nmax, budget, out.format),
    }
}

fn ggraph_header(s: &mut Summary, gg: &GGraph) {
    let group = gg.group();
    s.kv("group", group.name())
        .kv("order", group.order())
        .kv("generators", elems(group, &gg.gens().elements()))
        .kv("loops", yes_no(gg.has_loops()));
}

fn ggraph_build(args: &GroupArgs, format: Format) -> Res {
    let gg = load_ggraph(args)?;
    let mut s = Summary::new("ggraph build");
    ggraph_header(&mut s, &gg);
    for (i, level) in gg.levels().iter().enumerate() {
        s.kv(
            &format!("level {i}"),
            format!(
                "generator {}, order {}, {} cosets",
                gg.group().format_element(level.gen),
                gg.group().element_order(level.gen),
                level.cosets.len()
            ),
        );
    }
    describe_graph(&mut s, gg.graph());
    let json = serde_json::to_value(gg.to_json()).expect("graph json serializes");
    emit(format, &s, &json, Some(export_dot(gg.graph())), EXIT_OK)
}

fn ggraph_verify(args: &GroupArgs, format: Format) -> Res {
    let gg = load_ggraph(args)?;
    let report = verify_structure(&gg);
    let mut s = Summary::new("ggraph verify");
    ggraph_header(&mut s, &gg);
    for item in &report.items {
        let mut v = format!("{} ({})", pass_fail(item.passed), item.name);
        if let Some(c) = &item.counterexample {
            v.push_str(&format!(": {c}"));
        }
        s.kv(&format!("item {}", item.item), v);
    }
    s.kv("result", pass_fail(report.all_passed()));
    let code = if report.all_passed() { EXIT_OK } else { EXIT_NEGATIVE };
    emit(format, &s, &serde_json::to_value(&report).expect("report serializes"), None, code)
}

fn ggraph_shifts(args: &GroupArgs, format: Format) -> Res {
    let gg = load_ggraph(args)?;
    let w = shifts_of(&gg)?;
    let mut s = Summary::new("ggraph shifts");
    ggraph_header(&mut s, &gg);
    s.kv("shifts", w.h.len()).kv(
        "clique",
        w.c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "),
    );
    emit(format, &s, &serde_json::to_value(w.to_doc()).expect("witness serializes"), None, EXIT_OK)
}

fn components(args: &GroupArgs, format: Format) -> Res {
    let gg = load_ggraph(args)?;
    let r = component_analysis(&gg)?;
    let mut s = Summary::new("components");
    ggraph_header(&mut s, &gg);
    s.kv("components", r.count)
        .kv("index of <S>", r.index)
        .kv("order of <S>", r.subgroup_order);
    for (i, c) in r.components.iter().enumerate() {
        s.kv(
            &format!("component {i}"),
            format!(
                "{} vertices, {} edges, coset {}, label coset {}, isomorphic to Φ(<S>,S) {}",
                c.vertices.len(),
                c.edge_count,
                elems(gg.group(), &c.label_coset),
                pass_fail(c.label_coset_ok),
                yes_no(c.isomorphic_to_subgroup_graph)
            ),
        );
    }
    s.kv("result", pass_fail(r.all_passed()));
    let code = if r.all_passed() { EXIT_OK } else { EXIT_NEGATIVE };
    emit(format, &s, &serde_json::to_value(&r).expect("report serializes"), None, code)
}

fn kmn(m: usize, n: usize, l: usize, format: Format) -> Res {
    let plan = kmn_plan(m, n, l)?;
    let g = &plan.group;
    let built = kmn_build(&plan);
    let mut s = Summary::new("kmn");
    s.kv("target", format!("K^{l}_{{{m},{n}}}"))
        .kv("G", g.name())
        .kv("order", g.order())
        .kv("I primes", format!("{:?}", plan.i_primes))
        .kv("J primes", format!("{:?}", plan.j_primes))
        .kv("l1, l2", format!("{}, {}", plan.l1, plan.l2))
        .kv("d1, d2", format!("{}, {}", plan.d1, plan.d2))
        .kv("s", format!("{} (order {})", g.format_element(plan.s), g.element_order(plan.s)))
        .kv("t", format!("{} (order {})", g.format_element(plan.t), g.element_order(plan.t)));
    let mut json = json!({ "plan": plan });
    let (code, dot) = match &built {
        Ok(gg) => {
            s.kv("parts", format!("({m},{n})"))
                .kv("multiplicity", l)
                .kv("|V_s|, |V_t|", format!("{}, {}", gg.level(0).len(), gg.level(1).len()))
                .kv("verified", "yes");
            json["verified"] = json!(true);
            json["graph"] = serde_json::to_value(gg.to_json()).expect("graph json serializes");
            (EXIT_OK, Some(export_dot(gg.graph())))
        }
        Err(e) => {
            s.kv("verified", format!("no: {e}"));
            json["verified"] = json!(false);
            json["error"] = json!(e.to_string());
            (EXIT_NEGATIVE, None)
        }
    };
    emit(format, &s, &json, dot, code)
}

fn incidence_build(
    graph: Option<&Path>,
    group: Option<String>,
    gens: Option<String>,
    loops: bool,
    format: Format,
) -> Res {
    let source = match (graph, group, gens) {
        (Some(p), _, _) => load_graph_file(p)?,
        (None, Some(group), Some(gens)) => load_ggraph(&GroupArgs { group, gens, loops })?.graph().clone(),
        _ => return Err(Failure::usage("give --graph or both -g and -s")),
    };
    let ig = incidence_graph(&source);
    let mut s = Summary::new("incidence build");
    s.kv("source vertices", ig.source_vertices)
        .kv("source edges", ig.source_edges)
        .kv("outside theory (source has loops)", yes_no(ig.outside_theory));
    describe_graph(&mut s, &ig.graph);
    emit(format, &s, &graph_json(&ig.graph), Some(export_dot(&ig.graph)), EXIT_OK)
}

fn incidence_pre(group: &str, gens: &str, format: Format) -> Res {
    let gg = load_ggraph(&GroupArgs { group: group.into(), gens: gens.into(), loops: false })?;
    let (pre, iso) = incidence_preimage(&gg)?;
    let back = incidence_graph(&pre);
    let verified = iso.verify(gg.graph(), &back.graph).is_ok();
    let mut s = Summary::new("incidence preimage");
    ggraph_header(&mut s, &gg);
    describe_graph(&mut s, &pre);
    s.kv("isomorphism onto its incidence graph", if verified { "verified" } else { "FAILED" });
    let code = if verified { EXIT_OK } else { EXIT_NEGATIVE };
    emit(format, &s, &graph_json(&pre), Some(export_dot(&pre)), code)
}

fn bipartite_test(
    group: &str,
    s_text: &str,
    t_text: &str,
    necessary_only: bool,
    sufficient_only: bool,
    budget_flag: Option<u64>,
    format: Format,
) -> Res {
    let g = load_group(group)?;
    let parse = |x: &str| parse_element(&g, x).map_err(|e| Failure::usage(format!("element {x:?}: {e}")));
    let (s, t) = (parse(s_text)?, parse(t_text)?);
    let mut sum = Summary::new("bipartite-test");
    sum.kv("group", g.name()).kv("s", g.format_element(s)).kv("t", g.format_element(t));
    let mut json = json!({ "s": g.format_element(s), "t": g.format_element(t) });

    let mut yes = false;
    if !necessary_only {
        match sufficient_bipartite_test(&g, s, t)? {
            Some(w) => {
                let report = sufficient_recognition_check(&g, s, t, &w)?;
                sum.kv("sufficient", format!("holds with f(s) = t^{}, f(t) = s^{}", w.m, w.n))
                    .kv("incidence graph recognition", pass_fail(report.passed()));
                if !report.passed() {
                    return Err(Failure::internal("sufficient witness does not pass recognition"));
                }
                yes = true;
                json["sufficient"] = json!({ "m": w.m, "n": w.n, "map": w.map, "recognition": report });
            }
            None => {
                sum.kv("sufficient", "no involutive homomorphism of the required form");
                json["sufficient"] = Value::Null;
            }
        }
    }
    let mut no = false;
    let mut inconclusive = false;
    if !sufficient_only {
        let gg = build_phi(&g, &GenMultiset::new(&g, &[s, t]).map_err(Failure::usage)?);
        let budget = budget(budget_flag, DEFAULT_NODE_BUDGET)?;
        match necessary_bipartite_witness(&gg, budget) {
            Ok(NecessaryOutcome::Witness { automorphism, map }) => {
                sum.kv("necessary", "holds: level-swapping involution found");
                json["necessary"] = json!({ "automorphism": automorphism, "map": map });
            }
            Ok(NecessaryOutcome::Obstruction { reason }) => {
                sum.kv("necessary", format!("fails: {reason}"));
                json["necessary"] = json!({ "obstruction": reason });
                no = true;
            }
            Err(IncidenceError::CapExceeded { budget }) => {
                sum.kv("necessary", format!("inconclusive: budget of {budget} nodes exhausted"));
                json["necessary"] = json!({ "inconclusive": budget });
                inconclusive = true;
            }
            Err(IncidenceError::Precondition(m)) if !necessary_only => {
                sum.kv("necessary", format!("not applicable: {m}"));
                json["necessary"] = json!({ "not_applicable": m });
            }
            Err(e) => return Err(e.into()),
        }
    }
    if yes && no {
        return Err(Failure::internal("the sufficient and necessary tests disagree"));
    }
    let (decision, code) = match (yes, no) {
        (true, _) => ("the incidence graph is a G-graph", EXIT_OK),
        (_, true) => ("the incidence graph is not a G-graph", EXIT_NEGATIVE),
        _ if necessary_only && !inconclusive => ("necessary condition holds", EXIT_OK),
        _ if sufficient_only => ("sufficient condition not met", EXIT_NEGATIVE),
        _ => ("undecided", EXIT_INCONCLUSIVE),
    };
    sum.kv("decision", decision);
    json["decision"] = json!(decision);
    emit(format, &sum, &json, None, code)
}

fn recognize(graph: &Path, witness: &Path, loops: bool, rebuild: bool, format: Format) -> Res {
    let g = load_graph_file(graph)?;
    let doc: WitnessJson = serde_json::from_str(&read_file(witness)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", witness.display())))?;
    let w = RecognitionWitness::from_doc(&g, &doc)?;
    let report = if loops { check_with_loops(&g, &w)? } else { check_simple(&g, &w)? };
    let mut s = Summary::new("recognize");
    s.kv("vertices", g.vertex_count())
        .kv("edges", g.edge_count())
        .kv("variant", if loops { "with loops" } else { "simple" })
        .kv("|H|", w.h.len())
        .kv("orbits", report.orbits.len());
    for c in &report.conditions {
        let mut v = pass_fail(c.passed).to_string();
        if let Some(d) = &c.detail {
            v.push_str(&format!(": {d}"));
        }
        s.kv(&format!("condition {:?}", c.kind), v);
    }
    let mut json = json!({ "report": report });
    let mut code = if report.passed() { EXIT_OK } else { EXIT_NEGATIVE };
    s.kv("result", pass_fail(report.passed()));
    if rebuild && report.passed() {
        let r = reconstruct(&g, &w, loops)?;
        let verified = r.iso.verify(r.ggraph.graph(), &g).is_ok();
        s.kv("reconstructed group order", r.group.order())
            .kv("abelian", yes_no(r.group.is_abelian()))
            .kv(
                "generator orders",
                r.gens
                    .elements()
                    .iter()
                    .map(|&x| r.group.element_order(x).to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
            )
            .kv("isomorphism", if verified { "verified" } else { "FAILED" });
        json["reconstruction"] = json!({
            "group_order": r.group.order(),
            "generators": r.gens.elements(),
            "iso": r.iso,
            "verified": verified,
        });
        if !verified {
            code = EXIT_NEGATIVE;
        }
    }
    emit(format, &s, &json, None, code)
}

fn ikn_verify(n: usize, tau_text: &str, build: bool, format: Format) -> Res {
    let tau = parse_tau(n, tau_text)?;
    let v = verify_tau(n, &tau);
    let mut s = Summary::new("ikn verify");
    s.kv("n", n).kv("tau", &tau);
    let mut json = json!({ "n": n, "valid": v.valid, "detail": v.detail });
    if !v.valid {
        s.kv("result", format!("not a certificate: {}", v.detail));
        return emit(format, &s, &json, None, EXIT_NEGATIVE);
    }
    let cert = TauCertificate::new(n, tau.clone())?;
    let orbits = orbit_structure(n, &tau)?;
    let pi = pi_map(n, &tau)?;
    s.kv("result", "valid certificate")
        .kv("canonical", yes_no(cert.is_canonical()))
        .kv("canonical form", canonical_tau(n, &tau)?)
        .kv(
            "orbit sizes",
            orbits.sizes.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
        )
        .kv("order of <rho,tau>", orbits.group_order)
        .kv("orbit structure", pass_fail(orbits.conforms))
        .kv("pi injective", yes_no(pi.injective))
        .kv("pi misses", format!("{:?}", pi.missing))
        .kv("pi structure", pass_fail(pi.conforms));
    for note in &orbits.notes {
        s.kv("note", note);
    }
    json["certificate"] = serde_json::to_value(cert.to_json()).expect("certificate serializes");
    json["orbits"] = serde_json::to_value(&orbits).expect("report serializes");
    json["pi"] = serde_json::to_value(&pi).expect("report serializes");
    let mut code = if orbits.conforms && pi.conforms { EXIT_OK } else { EXIT_NEGATIVE };
    let mut dot = None;
    if build {
        match build_and_verify(n, &tau) {
            Ok(b) => {
                let r = &b.report;
                s.kv("order of <sigma,tau>", r.group_order)
                    .kv("parts", format!("{}, {}", r.part_sizes.0, r.part_sizes.1))
                    .kv("incidence graph of K_n", pass_fail(r.all_passed()));
                json["build"] = serde_json::to_value(r).expect("report serializes");
                dot = Some(export_dot(b.ggraph.graph()));
            }
            Err(e) => {
                s.kv("incidence graph of K_n", format!("FAIL: {e}"));
                code = EXIT_NEGATIVE;
            }
        }
    }
    emit(format, &s, &json, dot, code)
}

fn mode_name(mode: SearchMode) -> &'static str {
    match mode {
        SearchMode::First => "first",
        SearchMode::All => "all",
        SearchMode::UpToConjugacy => "canonical",
    }
}

fn ikn_search(n: usize, mode: SearchMode, budget_flag: Option<u64>, exhaustive: bool, format: Format) -> Res {
    let budget = budget(budget_flag, DEFAULT_SEARCH_BUDGET)?;
    let opts = SearchOptions { mode, budget, short_circuit: !exhaustive };
    let r = search_tau(n, &opts)?;
    let mut s = Summary::new("ikn search");
    s.kv("n", n).kv("mode", mode_name(mode)).kv("nodes", r.nodes);
    let mut json = json!({
        "n": n,
        "mode": mode_name(mode),
        "nodes": r.nodes,
        "exhaustive": r.exhaustive,
        "certificates": [],
        "obstructions": [],
        "inconclusive": false,
    });
    let code = match &r.outcome {
        SearchOutcome::Certificates(certs) => {
            s.kv("result", format!("{} certificate(s)", certs.len()));
            for c in certs {
                s.kv("certificate", &c.tau);
            }
            json["certificates"] = certs.iter().map(|c| serde_json::to_value(c.to_json()).expect("serializes")).collect();
            EXIT_OK
        }
        SearchOutcome::Obstructed(obs) => {
            s.kv("result", "obstruction");
            for o in obs {
                s.kv("obstruction", format!("{:?} ({})", o.kind, o.detail));
            }
            json["obstructions"] = obs.iter().map(|o| serde_json::to_value(o.to_json(n)).expect("serializes")).collect();
            EXIT_NEGATIVE
        }
        SearchOutcome::Inconclusive => {
            s.kv("result", format!("inconclusive: budget of {budget} nodes exhausted"));
            json["inconclusive"] = json!(true);
            EXIT_INCONCLUSIVE
        }
    };
    emit(format, &s, &json, None, code)
}

fn ikn_table(nmax: usize, budget_flag: Option<u64>, format: Format) -> Res {
    if !(2..=ggraphs::ikn::MAX_N).contains(&nmax) {
        return Err(Failure::usage(format!("nmax must be in 2..={}", ggraphs::ikn::MAX_N)));
    }
    let budget = budget(budget_flag, DEFAULT_SEARCH_BUDGET)?;
    let known_max = KNOWN_CERTIFICATES.iter().map(|e| e.0).max().expect("non-empty");
    let mut s = Summary::new("ikn table");
    s.kv("nmax", nmax);
    let mut rows = Vec::new();
    let (mut agree, mut inconclusive) = (true, false);
    for n in 2..=nmax {
        let opts = SearchOptions { mode: SearchMode::All, budget, short_circuit: false };
        let r = search_tau(n, &opts)?;
        let arithmetic: Vec<ObstructionKind> = obstructions(n).iter().map(|o| o.kind).collect();
        let listed = KNOWN_CERTIFICATES.iter().find(|e| e.0 == n).map(|e| parse_tau(n, e.1)).transpose()?;
        let listed_valid = listed.as_ref().map(|t| verify_tau(n, t).valid);
        let mut row = json!({ "n": n, "arithmetic": arithmetic, "nodes": r.nodes });
        let mut text = String::new();
        match &r.outcome {
            SearchOutcome::Certificates(certs) => {
                let classes: BTreeSet<Vec<usize>> = certs
                    .iter()
                    .map(|c| canonical_tau(n, &c.tau).map(|p| p.images()))
                    .collect::<Result<_, _>>()?;
                let found = listed.as_ref().is_some_and(|t| certs.iter().any(|c| &c.tau == t));
                text.push_str(&format!(
                    "{} certificates, {} up to conjugacy, first {}",
                    certs.len(),
                    classes.len(),
                    certs[0].tau
                ));
                row["certificates"] = json!(certs.len());
                row["classes"] = json!(classes.len());
                if let Some(t) = &listed {
                    text.push_str(&format!("; listed {t} {}", if found { "found" } else { "NOT FOUND" }));
                    agree &= found;
                }
                if n <= known_max {
                    agree &= !NON_EXISTENCE.contains(&n);
                }
            }
            SearchOutcome::Obstructed(obs) => {
                let kinds: Vec<String> = obs.iter().map(|o| format!("{:?}", o.kind)).collect();
                text.push_str(&format!("none ({})", kinds.join(", ")));
                row["certificates"] = json!(0);
                if n <= known_max {
                    agree &= NON_EXISTENCE.contains(&n);
                }
            }
            SearchOutcome::Inconclusive => {
                text.push_str("inconclusive");
                row["inconclusive"] = json!(true);
                inconclusive = true;
            }
        }
        if let Some(valid) = listed_valid {
            text.push_str(&format!("; listed verifies {}", yes_no(valid)));
            row["listed_valid"] = json!(valid);
            agree &= valid;
        }
        s.kv(&format!("n={n}"), text);
        rows.push(row);
    }
    s.kv("agreement with the known list", yes_no(agree));
    let code = match (agree, inconclusive) {
        (false, _) => EXIT_NEGATIVE,
        (true, true) => EXIT_INCONCLUSIVE,
        _ => EXIT_OK,
    };
    let json = json!({ "nmax": nmax, "rows": rows, "agreement": agree });
    emit(format, &s, &json, None, code)
}
