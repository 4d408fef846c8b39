//! Backtracking over involutions of the residues `1..n−2`.
//!
//! `τ` always swaps `0 ↔ ∞`. The smallest unassigned residue `p` is paired
//! with each free `q > p` in turn, then (for odd `n`, while no fixed point
//! exists) with itself. Each node is pruned by
//! injectivity of `π(k) = k − τ(k)`, the braid relation `τρτ = ρτρ`, and the
//! defining relation evaluated wherever the needed values are assigned.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{canonical_tau, check_n, obstructions, point_of, verify_tau, IknError, Obstruction, ObstructionKind, TauCertificate};
use crate::algebra::Perm;

pub const DEFAULT_SEARCH_BUDGET: u64 = 200_000_000;

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    First,
    All,
    /// All solutions, reduced to one canonical representative per
    /// conjugacy class under the units mod `n−1`.
    UpToConjugacy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Maximum number of search nodes.
    pub budget: u64,
    /// Return arithmetic obstructions without searching.
    pub short_circuit: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: SearchMode::First,
            budget: DEFAULT_SEARCH_BUDGET,
            short_circuit: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Certificates(Vec<TauCertificate>),
    /// No certificate exists. Holds the arithmetic obstructions and, when the
    /// search ran to completion, an exhaustive-search entry.
    Obstructed(Vec<Obstruction>),
    /// The budget ran out first; nothing is claimed.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub outcome: SearchOutcome,
    pub nodes: u64,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Pruning {
    pub pi: bool,
    pub braid: bool,
    pub partial_relation: bool,
}

impl Pruning {
    pub(crate) const FULL: Pruning = Pruning { pi: true, braid: true, partial_relation: true };
    #[cfg(test)]
    pub(crate) const NONE: Pruning = Pruning { pi: false, braid: false, partial_relation: false };
}

struct Searcher {
    n: usize,
    m: usize,
    /// `t[r]` for residues `0..m` and `∞ = m`.
    t: Vec<usize>,
    pi_used: Vec<bool>,
    has_fixed: bool,
    prune: Pruning,
    first_only: bool,
    budget: u64,
    nodes: u64,
    found: Vec<Vec<usize>>,
    aborted: bool,
}

impl Searcher {
    fn new(n: usize, prune: Pruning, first_only: bool, budget: u64) -> Self {
        let m = n - 1;
        let mut t = vec![UNSET; m + 1];
        t[0] = m;
        t[m] = 0;
        Searcher {
            n,
            m,
            t,
            pi_used: vec![false; m],
            has_fixed: false,
            prune,
            first_only,
            budget,
            nodes: 0,
            found: Vec::new(),
            aborted: false,
        }
    }

    fn add(&self, r: usize, k: usize) -> usize {
        if r == self.m {
            r
        } else {
            (r + k) % self.m
        }
    }

    fn neg(&self, r: usize) -> usize {
        match r {
            0 => self.m,
            _ if r == self.m => 0,
            _ => self.m - r,
        }
    }

    fn get(&self, r: usize) -> usize {
        if r == UNSET {
            UNSET
        } else {
            self.t[r]
        }
    }

    /// `τρτ = ρτρ` wherever both sides are defined.
    fn braid_ok(&self) -> bool {
        (0..=self.m).all(|x| {
            let l = self.get(self.neg_opt(self.get(x)));
            let r = self.neg_opt(self.get(self.neg(x)));
            l == UNSET || r == UNSET || l == r
        })
    }

    fn neg_opt(&self, r: usize) -> usize {
        if r == UNSET {
            UNSET
        } else {
            self.neg(r)
        }
    }

    /// `τ(τ(x)+k) = τ(x+b)+a` with `a = τ(k)`, `b = τ(−a)`, for nonzero
    /// residues `k`, `x`, wherever all values involved are assigned.
    fn relation_ok(&self) -> bool {
        let m = self.m;
        for k in 1..m {
            let a = self.t[k];
            if a == UNSET {
                continue;
            }
            let b = self.get(self.neg(a));
            if b == UNSET {
                continue;
            }
            for x in 1..m {
                let tx = self.t[x];
                if tx == UNSET {
                    continue;
                }
                let lhs = self.get(self.add(tx, k));
                let z = self.get(self.add(x, b));
                if lhs == UNSET || z == UNSET {
                    continue;
                }
                if lhs != self.add(z, a) {
                    return false;
                }
            }
        }
        true
    }

    fn consistent(&self) -> bool {
        (!self.prune.braid || self.braid_ok()) && (!self.prune.partial_relation || self.relation_ok())
    }

    fn pi_values(&self, p: usize, q: usize) -> (usize, usize) {
        let m = self.m;
        ((p + m - q) % m, (q + m - p) % m)
    }

    /// Returns false to stop the whole search.
    fn run(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return false;
        }
        let Some(p) = (1..self.m).find(|&r| self.t[r] == UNSET) else {
            if self.prune.partial_relation || self.relation_ok() {
                self.found.push(self.t.clone());
            }
            return !self.first_only;
        };
        for q in p + 1..self.m {
            if self.t[q] != UNSET {
                continue;
            }
            let (u, v) = self.pi_values(p, q);
            if self.prune.pi && (u == v || self.pi_used[u] || self.pi_used[v]) {
                continue;
            }
            self.t[p] = q;
            self.t[q] = p;
            if self.prune.pi {
                self.pi_used[u] = true;
                self.pi_used[v] = true;
            }
            let keep_going = !self.consistent() || self.run();
            self.t[p] = UNSET;
            self.t[q] = UNSET;
            if self.prune.pi {
                self.pi_used[u] = false;
                self.pi_used[v] = false;
            }
            if !keep_going {
                return false;
            }
        }
        let self_allowed = if self.prune.pi {
            self.n % 2 == 1 && !self.has_fixed
        } else {
            true
        };
        if self_allowed {
            self.t[p] = p;
            let was = self.has_fixed;
            self.has_fixed = true;
            let keep_going = !self.consistent() || self.run();
            self.has_fixed = was;
            self.t[p] = UNSET;
            if !keep_going {
                return false;
            }
        }
        true
    }

    fn to_perm(&self, t: &[usize]) -> Perm {
        let images: Vec<usize> = (0..=self.m)
            .map(|r| (point_of(self.m, r), point_of(self.m, t[r])))
            .fold(vec![0; self.n], |mut acc, (p, q)| {
                acc[p - 1] = q;
                acc
            });
        Perm::from_images(&images).expect("an involution on residues is a permutation")
    }
}

pub(crate) fn raw_search(n: usize, prune: Pruning, first_only: bool, budget: u64) -> (Vec<Perm>, u64, bool) {
    let mut s = Searcher::new(n, prune, first_only, budget);
    s.run();
    let perms = s.found.iter().map(|t| s.to_perm(t)).collect();
    (perms, s.nodes, !s.aborted)
}

/// Searches for certificates of `IK_n`.
pub fn search_tau(n: usize, options: &SearchOptions) -> Result<SearchResult, IknError> {
    check_n(n)?;
    let arithmetic = obstructions(n);
    if options.short_circuit && !arithmetic.is_empty() {
        return Ok(SearchResult {
            n,
            outcome: SearchOutcome::Obstructed(arithmetic),
            nodes: 0,
            exhaustive: false,
        });
    }
    let first_only = options.mode == SearchMode::First;
    let (perms, nodes, complete) = raw_search(n, Pruning::FULL, first_only, options.budget);
    for p in &perms {
        let v = verify_tau(n, p);
        if !v.valid {
            return Err(IknError::Assertion(format!("search produced {p}, which fails: {}", v.detail)));
        }
    }
    if !perms.is_empty() && !arithmetic.is_empty() {
        return Err(IknError::Assertion(format!(
            "found {} for n = {n} despite {:?}",
            perms[0], arithmetic[0].kind
        )));
    }
    if perms.is_empty() {
        let outcome = if complete {
            let mut obs = arithmetic;
            obs.push(Obstruction {
                kind: ObstructionKind::ExhaustiveSearch,
                detail: format!("no certificate after {nodes} nodes"),
            });
            SearchOutcome::Obstructed(obs)
        } else {
            SearchOutcome::Inconclusive
        };
        return Ok(SearchResult { n, outcome, nodes, exhaustive: complete });
    }
    let mut perms: Vec<Perm> = match options.mode {
        SearchMode::UpToConjugacy => {
            let mut set = BTreeSet::new();
            for p in &perms {
                set.insert(canonical_tau(n, p)?.images());
            }
            set.into_iter()
                .map(|im| Perm::from_images(&im).expect("canonical form is a permutation"))
                .collect()
        }
        _ => perms,
    };
    perms.sort_by_key(Perm::images);
    let certs = perms.into_iter().map(|tau| TauCertificate { n, tau }).collect();
    Ok(SearchResult {
        n,
        outcome: SearchOutcome::Certificates(certs),
        nodes,
        exhaustive: complete && !first_only,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ikn::{parse_tau, KNOWN_CERTIFICATES};

    fn all() -> SearchOptions {
        SearchOptions { mode: SearchMode::All, short_circuit: false, ..Default::default() }
    }

    #[test]
    fn two_and_nine() {
        let r = search_tau(2, &SearchOptions::default()).unwrap();
        let SearchOutcome::Certificates(c) = r.outcome else { panic!() };
        assert_eq!(c[0].tau, parse_tau(2, "(1,2)").unwrap());
        let r = search_tau(9, &all()).unwrap();
        let SearchOutcome::Certificates(c) = r.outcome else { panic!() };
        let want = parse_tau(9, KNOWN_CERTIFICATES[6].1).unwrap();
        assert!(c.iter().any(|x| x.tau == want));
    }

    #[test]
    fn six_is_obstructed_both_ways() {
        let r = search_tau(6, &SearchOptions::default()).unwrap();
        assert_eq!(r.nodes, 0);
        assert!(matches!(&r.outcome, SearchOutcome::Obstructed(o) if o.iter().any(|x| x.kind == ObstructionKind::Mod6)));
        let r = search_tau(6, &all()).unwrap();
        let SearchOutcome::Obstructed(o) = r.outcome else { panic!() };
        assert_eq!(o.last().unwrap().kind, ObstructionKind::ExhaustiveSearch);
        assert!(r.exhaustive);
    }

    /// Pruning must not lose solutions: compare against a search that only
    /// checks complete assignments.
    #[test]
    fn pruning_is_sound() {
        for n in 2..=11 {
            let (mut a, _, ca) = raw_search(n, Pruning::FULL, false, u64::MAX);
            let (mut b, _, cb) = raw_search(n, Pruning::NONE, false, u64::MAX);
            assert!(ca && cb);
            a.sort();
            b.sort();
            assert_eq!(a, b, "n = {n}");
        }
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let opts = SearchOptions { budget: 3, ..all() };
        let r = search_tau(13, &opts).unwrap();
        assert_eq!(r.outcome, SearchOutcome::Inconclusive);
        assert!(!r.exhaustive);
    }

    #[test]
    fn canonical_mode_dedups() {
        let full = search_tau(13, &all()).unwrap();
        let canon = search_tau(13, &SearchOptions { mode: SearchMode::UpToConjugacy, ..all() }).unwrap();
        let (SearchOutcome::Certificates(f), SearchOutcome::Certificates(c)) = (full.outcome, canon.outcome) else {
            panic!()
        };
        assert!(c.len() <= f.len());
        assert!(c.iter().all(|x| x.is_canonical()));
        for x in &f {
            let k = canonical_tau(13, &x.tau).unwrap();
            assert!(c.iter().any(|y| y.tau == k));
        }
    }
}
