//! When is the incidence graph of `K_n` a G-graph?
//!
//! With `σ = (1,…,n−1)` and `ρ` swapping `n−1 ↔ n` and `k ↔ n−1−k`, the
//! answer is yes exactly when there is an involution `τ ∈ S_n` with
//! `τ(n) = n−1` and `τσ^kτ = σ^{τ(k)} τ σ^{τρτ(k)}` for `1 ≤ k ≤ n−2`; then
//! `IK_n ≅ Φ(⟨σ,τ⟩,{σ,τ})`. Products are composed right-to-left.
//!
//! Internally `{1..n}` is identified with `Z/(n−1) ∪ {∞}`: point `k ≤ n−2`
//! is the residue `k`, `n−1` is `0` and `n` is `∞`. Then `σ` is `r ↦ r+1`
//! and `ρ` is `r ↦ −r` with `0 ↔ ∞`.

mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{perm_group, AlgebraError, GenMultiset, Perm};
use crate::arith::{gcd, units_mod};
use crate::ggraph::{build_phi, GGraph, GGraphError};
use crate::incidence::{incidence_preimage, IncidenceError};

pub use search::{search_tau, SearchMode, SearchOptions, SearchOutcome, SearchResult, DEFAULT_SEARCH_BUDGET};

/// Largest `n` accepted anywhere in this module. Groups of order `n(n−1)`
/// are materialized, so this keeps tables small.
pub const MAX_N: usize = 64;

/// The certificates listed for `IK_n` with small `n`, in cycle notation.
/// The `n = 16` entry keeps its stray comma between cycles.
pub const KNOWN_CERTIFICATES: [(usize, &str); 12] = [
    (2, "(1,2)"),
    (3, "(1)(2,3)"),
    (4, "(1,2)(3,4)"),
    (5, "(1)(2,3)(4,5)"),
    (7, "(2)(1,5)(3,4)(6,7)"),
    (8, "(1,3)(2,6)(4,5)(7,8)"),
    (9, "(4)(1,2)(3,6)(5,7)(8,9)"),
    (11, "(1)(2,4)(3,6)(5,9)(7,8)(10,11)"),
    (13, "(1)(2,10)(3,4)(5,8)(6,11)(7,9)(12,13)"),
    (16, "(1,12)(3,4)(11,14),(2,9)(6,8)(7,13)(5,10)(15,16)"),
    (17, "(14)(2,8)(1,13)(3,12)(4,15)(5,6)(7,10)(9,11)(16,17)"),
    (19, "(1)(9,17)(3,15)(2,7)(4,11)(14,16)(5,8)(6,10)(12,13)(18,19)"),
];

/// `n ≤ 19` for which `IK_n` is not a G-graph.
pub const NON_EXISTENCE: [usize; 6] = [6, 10, 12, 14, 15, 18];

#[derive(Debug, Error)]
pub enum IknError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    GGraph(#[from] GGraphError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

fn check_n(n: usize) -> Result<(), IknError> {
    if !(2..=MAX_N).contains(&n) {
        return Err(IknError::Precondition(format!("n must be in 2..={MAX_N}, got {n}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoSigma {
    pub n: usize,
    pub sigma: Perm,
    pub rho: Perm,
}

pub fn make_rho_sigma(n: usize) -> Result<RhoSigma, IknError> {
    check_n(n)?;
    let sigma = Perm::cycle_prefix(n, n - 1);
    let images: Vec<usize> = (1..=n)
        .map(|k| match k {
            _ if k == n => n - 1,
            _ if k == n - 1 => n,
            _ => n - 1 - k,
        })
        .collect();
    let rho = Perm::from_images(&images)?;
    Ok(RhoSigma { n, sigma, rho })
}

/// Point of `{1..n}` for a residue of `Z/m ∪ {∞}` (`∞ = m`).
pub(crate) fn point_of(m: usize, r: usize) -> usize {
    match r {
        0 => m,
        _ if r == m => m + 1,
        _ => r,
    }
}

pub(crate) fn residue_of(m: usize, p: usize) -> usize {
    match p {
        _ if p == m + 1 => m,
        _ if p == m => 0,
        _ => p,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauVerdict {
    pub valid: bool,
    /// Empty when valid.
    pub detail: String,
    /// The `k` at which the relation fails, if that is the reason.
    pub k: Option<usize>,
    /// A point where the two sides of the relation differ.
    pub point: Option<usize>,
}

impl TauVerdict {
    fn fail(detail: String) -> Self {
        TauVerdict { valid: false, detail, k: None, point: None }
    }
}

/// Checks a candidate certificate with plain permutation arithmetic.
pub fn verify_tau(n: usize, tau: &Perm) -> TauVerdict {
    if tau.degree() != n {
        return TauVerdict::fail(format!("τ has degree {}, expected {n}", tau.degree()));
    }
    let Ok(rs) = make_rho_sigma(n) else {
        return TauVerdict::fail(format!("n = {n} out of range"));
    };
    if tau.order() != 2 {
        return TauVerdict::fail(format!("τ has order {}, expected 2", tau.order()));
    }
    if tau.apply(n) != n - 1 {
        return TauVerdict::fail(format!("τ({n}) = {}, expected {}", tau.apply(n), n - 1));
    }
    let (sigma, rho) = (&rs.sigma, &rs.rho);
    for k in 1..=n.saturating_sub(2) {
        let tk = tau.apply(k);
        let e = tau.apply(rho.apply(tk));
        let lhs = tau.compose_unchecked(&sigma.pow(k as i64).compose_unchecked(tau));
        let rhs = sigma
            .pow(tk as i64)
            .compose_unchecked(&tau.compose_unchecked(&sigma.pow(e as i64)));
        if let Some(x) = (1..=n).find(|&x| lhs.apply(x) != rhs.apply(x)) {
            return TauVerdict {
                valid: false,
                detail: format!(
                    "relation fails at k = {k}: at point {x} the left side gives {} and the right side {}",
                    lhs.apply(x),
                    rhs.apply(x)
                ),
                k: Some(k),
                point: Some(x),
            };
        }
    }
    TauVerdict { valid: true, detail: String::new(), k: None, point: None }
}

fn require_valid(n: usize, tau: &Perm) -> Result<(), IknError> {
    let v = verify_tau(n, tau);
    if v.valid {
        Ok(())
    } else {
        Err(IknError::Precondition(format!("not a certificate: {}", v.detail)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ObstructionKind {
    Mod4,
    Mod6,
    Mod24,
    ExhaustiveSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub detail: String,
}

impl Obstruction {
    /// Whether the arithmetic condition behind this obstruction holds for
    /// `n`. An exhaustive-search obstruction has no such condition.
    pub fn condition_holds(&self, n: usize) -> bool {
        match self.kind {
            ObstructionKind::Mod4 => n > 2 && n % 4 == 2,
            ObstructionKind::Mod6 => n.is_multiple_of(6),
            ObstructionKind::Mod24 => matches!(n % 24, 15 | 21),
            ObstructionKind::ExhaustiveSearch => true,
        }
    }

    pub fn to_json(&self, n: usize) -> ObstructionJson {
        ObstructionJson { n, kind: self.kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionJson {
    pub n: usize,
    pub kind: ObstructionKind,
}

/// Arithmetic reasons for `IK_n` not to be a G-graph.
pub fn obstructions(n: usize) -> Vec<Obstruction> {
    let mut out = Vec::new();
    if n > 2 && n % 4 == 2 {
        out.push(Obstruction {
            kind: ObstructionKind::Mod4,
            detail: format!("n = {n} ≡ 2 mod 4: σ is even and τ is odd, so the relation cannot hold"),
        });
    }
    if n.is_multiple_of(6) {
        out.push(Obstruction {
            kind: ObstructionKind::Mod6,
            detail: format!("6 divides n = {n}"),
        });
    }
    if matches!(n % 24, 15 | 21) {
        out.push(Obstruction {
            kind: ObstructionKind::Mod24,
            detail: format!("n = {n} ≡ {} mod 24", n % 24),
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauCertificate {
    pub n: usize,
    pub tau: Perm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub n: usize,
    pub tau: Vec<usize>,
    pub cycles: String,
    pub canonical: bool,
}

impl TauCertificate {
    /// Validates `tau` before wrapping it.
    pub fn new(n: usize, tau: Perm) -> Result<Self, IknError> {
        require_valid(n, &tau)?;
        Ok(TauCertificate { n, tau })
    }

    pub fn is_canonical(&self) -> bool {
        canonical_tau(self.n, &self.tau).map(|c| c == self.tau).unwrap_or(false)
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            n: self.n,
            tau: self.tau.images(),
            cycles: self.tau.to_string(),
            canonical: self.is_canonical(),
        }
    }

    /// Reads a certificate document, rejecting inconsistent fields and
    /// invalid certificates.
    pub fn from_json(text: &str) -> Result<Self, IknError> {
        let doc: CertificateJson =
            serde_json::from_str(text).map_err(|e| IknError::Precondition(format!("bad certificate JSON: {e}")))?;
        check_n(doc.n)?;
        if doc.tau.len() != doc.n {
            return Err(IknError::Precondition(format!(
                "tau lists {} images for n = {}",
                doc.tau.len(),
                doc.n
            )));
        }
        let tau = Perm::from_images(&doc.tau)?;
        let from_cycles = crate::algebra::parse_cycles(doc.n, &doc.cycles)
            .map_err(|e| IknError::Precondition(format!("bad cycles: {e}")))?;
        if from_cycles != tau {
            return Err(IknError::Precondition("cycles and images disagree".into()));
        }
        let cert = TauCertificate::new(doc.n, tau)?;
        if cert.is_canonical() != doc.canonical {
            return Err(IknError::Precondition("canonical flag is wrong".into()));
        }
        Ok(cert)
    }
}

/// Parses one entry of [`KNOWN_CERTIFICATES`] or any cycle string for `IK_n`.
pub fn parse_tau(n: usize, text: &str) -> Result<Perm, IknError> {
    check_n(n)?;
    crate::algebra::parse_cycles(n, text).map_err(|e| IknError::Algebra(AlgebraError::Parse(e)))
}

/// `m_a τ m_a⁻¹`, where `m_a` multiplies residues by the unit `a` and fixes `n`.
pub fn conjugate_tau(n: usize, tau: &Perm, a: usize) -> Result<Perm, IknError> {
    check_n(n)?;
    require_valid(n, tau)?;
    let m = n - 1;
    if gcd(a % m, m) != 1 {
        return Err(IknError::Precondition(format!("{a} is not a unit mod {m}")));
    }
    let a = a % m;
    let a_inv = (0..m).find(|&b| (a * b) % m == 1 % m).expect("units are invertible");
    let mul = |c: usize, r: usize| if r == m { m } else { (c * r) % m };
    let images: Vec<usize> = (1..=n)
        .map(|p| {
            let r = residue_of(m, p);
            let t = residue_of(m, tau.apply(point_of(m, mul(a_inv, r))));
            point_of(m, mul(a, t))
        })
        .collect();
    Ok(Perm::from_images(&images)?)
}

/// The lexicographically least image array among all `m_a`-conjugates.
pub fn canonical_tau(n: usize, tau: &Perm) -> Result<Perm, IknError> {
    let mut best: Option<Perm> = None;
    for a in units_mod(n - 1) {
        let c = conjugate_tau(n, tau, a)?;
        if best.as_ref().is_none_or(|b| c.images() < b.images()) {
            best = Some(c);
        }
    }
    Ok(best.expect("there is always a unit"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub orbits: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
    pub group_order: usize,
    /// `ρτ` has order below 3, so `⟨ρ,τ⟩` is smaller than the generic 6.
    pub degenerate: bool,
    pub conforms: bool,
    pub notes: Vec<String>,
}

/// Orbits of `⟨ρ,τ⟩` on `{1..n}` and their conformance with the expected
/// shape: all of size 6 except one or two of size 2, plus exactly one of
/// size 1 or 3 when `n` is odd.
pub fn orbit_structure(n: usize, tau: &Perm) -> Result<OrbitReport, IknError> {
    require_valid(n, tau)?;
    let rs = make_rho_sigma(n)?;
    let mut seen = vec![false; n + 1];
    let mut orbits = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for y in [rs.rho.apply(x), tau.apply(x)] {
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    let sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    let group_order = perm_group(n, &[rs.rho.clone(), tau.clone()], 1000)?.order();
    let degenerate = rs.rho.compose(tau)?.order() < 3;

    let count = |s: usize| sizes.iter().filter(|&&x| x == s).count();
    let odd_ones = count(1) + count(3);
    let mut notes = Vec::new();
    let mut conforms = sizes.iter().all(|s| [1, 2, 3, 6].contains(s)) && (1..=2).contains(&count(2));
    if n % 2 == 1 {
        conforms &= odd_ones == 1;
    } else {
        conforms &= odd_ones == 0;
    }
    if group_order != 6 {
        if degenerate {
            notes.push(format!("⟨ρ,τ⟩ has order {group_order}: ρτ has order below 3 for n = {n}"));
        } else {
            notes.push(format!("⟨ρ,τ⟩ has order {group_order}, expected 6"));
            conforms = false;
        }
    }
    Ok(OrbitReport { orbits, sizes, group_order, degenerate, conforms, notes })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiReport {
    /// `values[k-1] = k − τ(k) mod n−1` for `k = 1..n−2`.
    pub values: Vec<usize>,
    pub injective: bool,
    pub missing: Vec<usize>,
    pub expected_missing: usize,
    pub conforms: bool,
}

pub fn pi_map(n: usize, tau: &Perm) -> Result<PiReport, IknError> {
    require_valid(n, tau)?;
    let m = n - 1;
    let values: Vec<usize> = (1..=n.saturating_sub(2))
        .map(|k| (k + m - residue_of(m, tau.apply(k)) % m) % m)
        .collect();
    let mut hit = vec![false; m];
    let mut injective = true;
    for &v in &values {
        injective &= !hit[v];
        hit[v] = true;
    }
    let missing: Vec<usize> = (0..m).filter(|&r| !hit[r]).collect();
    let expected_missing = if n.is_multiple_of(2) { 0 } else { m / 2 };
    let conforms = injective && missing == [expected_missing];
    Ok(PiReport { values, injective, missing, expected_missing, conforms })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IknReport {
    pub n: usize,
    pub group_order: usize,
    pub expected_order: usize,
    pub bipartite: bool,
    /// `|V_σ|`, `|V_τ|`.
    pub part_sizes: (usize, usize),
    /// Every vertex of `V_σ` has degree `n−1`.
    pub point_degrees_ok: bool,
    /// Every vertex of `V_τ` has degree 2.
    pub edge_degrees_ok: bool,
    pub simple: bool,
    /// Neighbour pairs of `V_τ` are exactly the 2-subsets of `V_σ`.
    pub pair_bijection: bool,
    /// The incidence preimage is `K_n`.
    pub preimage_is_kn: bool,
}

impl IknReport {
    pub fn all_passed(&self) -> bool {
        let n = self.n;
        self.group_order == self.expected_order
            && self.bipartite
            && self.part_sizes == (n, n * (n - 1) / 2)
            && self.point_degrees_ok
            && self.edge_degrees_ok
            && self.simple
            && self.pair_bijection
            && self.preimage_is_kn
    }
}

#[derive(Debug)]
pub struct IknBuild {
    pub ggraph: GGraph,
    pub report: IknReport,
}

/// Builds `Φ(⟨σ,τ⟩,{σ,τ})` and checks it is the incidence graph of `K_n`.
pub fn build_and_verify(n: usize, tau: &Perm) -> Result<IknBuild, IknError> {
    require_valid(n, tau)?;
    let rs = make_rho_sigma(n)?;
    let group = perm_group(n, &[rs.sigma.clone(), tau.clone()], n * n)?;
    let index = |p: &Perm| match group.repr() {
        crate::algebra::ElementRepr::Perm(t) => t.index_of(p),
        _ => None,
    };
    let (Some(s), Some(t)) = (index(&rs.sigma), index(tau)) else {
        return Err(IknError::Assertion("generators missing from their closure".into()));
    };
    let gg = build_phi(&group, &GenMultiset::new(&group, &[s, t])?);
    let g = gg.graph();
    let (vs, vt) = (gg.level(0), gg.level(1));

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &v in &vt {
        let nb: Vec<usize> = g.neighbor_multiplicities(v).into_keys().collect();
        if let [a, b] = nb[..] {
            pairs.push((a.min(b), a.max(b)));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let mut expected: Vec<(usize, usize)> = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            expected.push((a.min(b), a.max(b)));
        }
    }
    expected.sort_unstable();

    let (pre, _) = incidence_preimage(&gg)?;
    let pv = pre.vertex_count();
    let preimage_is_kn = pv == n
        && pre.is_simple()
        && pre.edge_count() == n * (n - 1) / 2
        && (0..pv).all(|u| (u + 1..pv).all(|v| pre.multiplicity(u, v) == 1));

    let report = IknReport {
        n,
        group_order: group.order(),
        expected_order: n * (n - 1),
        bipartite: g.is_bipartite().is_some(),
        part_sizes: (vs.len(), vt.len()),
        point_degrees_ok: vs.iter().all(|&v| g.degree(v) == n - 1),
        edge_degrees_ok: vt.iter().all(|&v| g.degree(v) == 2),
        simple: g.is_simple(),
        pair_bijection: pairs.len() == vt.len() && pairs == expected,
        preimage_is_kn,
    };
    if !report.all_passed() {
        return Err(IknError::Assertion(format!("Φ(⟨σ,τ⟩,{{σ,τ}}) is not I(K_{n}): {report:?}")));
    }
    Ok(IknBuild { ggraph: gg, report })
}
