//! `K^l_{m,n}` as an abelian G-graph over `Z/(m·l₁) × Z/(n·l₂)`.
//!
//! The primes of `l` are split into `I` (those with `v_p(m) ≥ v_p(n)`) and
//! `J` (the rest). With `l₁`, `l₂` the `I`- and `J`-parts of `l`,
//! `d₁ = ∏_{q∈J} q^{v_q(m)}` and `d₂ = ∏_{p∈I} p^{v_p(n)}`, the generators
//! are `s = (1, n/d₁)` and `t = (m/d₂, 1)`.

use serde::Serialize;

use super::{build_phi, GGraph, GGraphError};
use crate::algebra::{cyclic_group, direct_product, Elem, FiniteGroup, GenMultiset};
use crate::arith::{prime_factors, valuation};

#[derive(Debug, Clone, Serialize)]
pub struct KmnPlan {
    pub m: usize,
    pub n: usize,
    pub l: usize,
    pub i_primes: Vec<usize>,
    pub j_primes: Vec<usize>,
    pub l1: usize,
    pub l2: usize,
    pub d1: usize,
    pub d2: usize,
    #[serde(skip)]
    pub group: FiniteGroup,
    pub group_name: String,
    pub s: Elem,
    pub t: Elem,
}

pub fn kmn_plan(m: usize, n: usize, l: usize) -> Result<KmnPlan, GGraphError> {
    if m == 0 || n == 0 || l == 0 {
        return Err(GGraphError::Precondition("m, n and l must be positive".into()));
    }
    let (mut i_primes, mut j_primes) = (Vec::new(), Vec::new());
    for p in prime_factors(l) {
        if valuation(p, m) >= valuation(p, n) {
            i_primes.push(p);
        } else {
            j_primes.push(p);
        }
    }
    let part = |primes: &[usize], of: usize| -> usize {
        primes.iter().map(|&p| p.pow(valuation(p, of))).product()
    };
    let l1 = part(&i_primes, l);
    let l2 = part(&j_primes, l);
    let d1 = part(&j_primes, m);
    let d2 = part(&i_primes, n);
    let (a, b) = (m * l1, n * l2);
    let group = direct_product(&cyclic_group(a), &cyclic_group(b));
    let s = (1 % a) * b + (n / d1) % b;
    let t = ((m / d2) % a) * b + 1 % b;
    Ok(KmnPlan {
        m,
        n,
        l,
        i_primes,
        j_primes,
        l1,
        l2,
        d1,
        d2,
        group_name: group.name().to_string(),
        group,
        s,
        t,
    })
}

/// Builds `Φ(G,{s,t})` and checks it is `K^l_{m,n}` with `|V_s| = n`,
/// `|V_t| = m`, `o(s) = ml` and `o(t) = nl`.
pub fn kmn_build(plan: &KmnPlan) -> Result<GGraph, GGraphError> {
    let g = &plan.group;
    let gg = build_phi(g, &GenMultiset::new(g, &[plan.s, plan.t])?);
    let (m, n, l) = (plan.m, plan.n, plan.l);
    let fail = |what: String| Err(GGraphError::Assertion(format!("K^{l}_{{{m},{n}}}: {what}")));
    if g.element_order(plan.s) != m * l || g.element_order(plan.t) != n * l {
        return fail(format!(
            "o(s) = {}, o(t) = {}",
            g.element_order(plan.s),
            g.element_order(plan.t)
        ));
    }
    let (vs, vt) = (gg.level(0).len(), gg.level(1).len());
    if vs != n || vt != m {
        return fail(format!("|V_s| = {vs}, |V_t| = {vt}"));
    }
    match gg.graph().is_complete_bipartite_multi() {
        Some(kb) if kb.m == m.min(n) && kb.n == m.max(n) && kb.l == l => Ok(gg),
        other => fail(format!("recognized as {other:?}")),
    }
}
