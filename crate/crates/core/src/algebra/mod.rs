//! Finite groups given by multiplication tables.
//!
//! Elements are dense indices `0..order` and the identity is always index 0.
//! Products of permutation groups follow the right-to-left convention of
//! [`Perm::compose`]: `mul(a, b)` is `a ∘ b`.

mod parse;
mod perm;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use parse::{parse_cycles, parse_element, parse_elements, parse_group, ParseError};
pub use perm::Perm;

/// Index of a group element.
pub type Elem = usize;

/// Default cap on the size of a permutation-group closure.
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

/// Groups up to this order get exhaustive associativity checks.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("invalid element {0}")]
    InvalidElement(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Permutations backing a permutation group, in element-index order.
#[derive(Debug)]
pub struct PermTable {
    degree: usize,
    perms: Vec<Perm>,
    index: HashMap<Perm, Elem>,
}

impl PermTable {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perm(&self, x: Elem) -> &Perm {
        &self.perms[x]
    }

    pub fn index_of(&self, p: &Perm) -> Option<Elem> {
        self.index.get(p).copied()
    }
}

/// How elements are written and read back.
#[derive(Debug, Clone)]
pub enum ElementRepr {
    /// `Z/nZ`, elements written as integers.
    Cyclic(usize),
    /// Product of cyclic factors with the given moduli; mixed-radix index,
    /// last factor fastest. Elements written as tuples `(a,b,...)`.
    Product(Vec<usize>),
    Perm(Arc<PermTable>),
    /// Abstract table; elements written by name.
    Table(Arc<Vec<String>>),
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Arc<Vec<Elem>>,
    inv: Arc<Vec<Elem>>,
    repr: ElementRepr,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table (`table[a][b] = a·b`),
    /// validating identity at index 0, inverses and associativity.
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<Vec<Elem>>,
        names: Option<Vec<String>>,
    ) -> Result<Self, AlgebraError> {
        let order = table.len();
        if order == 0 {
            return Err(AlgebraError::InvalidTable("empty table".into()));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(AlgebraError::InvalidTable(format!(
                    "row {a} has length {}",
                    row.len()
                )));
            }
            for &c in row {
                if c >= order {
                    return Err(AlgebraError::InvalidTable(format!("entry {c} out of range")));
                }
                mul.push(c);
            }
        }
        let names = match names {
            Some(n) if n.len() == order => n,
            Some(n) => {
                return Err(AlgebraError::InvalidTable(format!(
                    "{} names for {order} elements",
                    n.len()
                )))
            }
            None => (0..order).map(|i| format!("g{i}")).collect(),
        };
        let g = Self::from_flat(name.into(), order, mul, ElementRepr::Table(Arc::new(names)))?;
        g.verify_axioms()?;
        Ok(g)
    }

    fn from_flat(
        name: String,
        order: usize,
        mul: Vec<Elem>,
        repr: ElementRepr,
    ) -> Result<Self, AlgebraError> {
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == 0 {
                    inv[a] = b;
                    break;
                }
            }
            if inv[a] == usize::MAX {
                return Err(AlgebraError::InvalidTable(format!("element {a} has no inverse")));
            }
        }
        Ok(FiniteGroup {
            name,
            order,
            mul: Arc::new(mul),
            inv: Arc::new(inv),
            repr,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn repr(&self) -> &ElementRepr {
        &self.repr
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    pub fn pow(&self, x: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.order
    }

    pub fn check_element(&self, x: Elem) -> Result<(), AlgebraError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(AlgebraError::InvalidElement(format!(
                "index {x} in group {} of order {}",
                self.name, self.order
            )))
        }
    }

    /// The permutation behind `x` when this is a permutation group.
    pub fn perm(&self, x: Elem) -> Option<&Perm> {
        match &self.repr {
            ElementRepr::Perm(t) => Some(t.perm(x)),
            _ => None,
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least `k ≥ 1` with `x^k = e`.
    pub fn element_order(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Powers of `x`, sorted.
    pub fn cyclic_subgroup(&self, x: Elem) -> Vec<Elem> {
        let mut out = vec![0];
        let mut y = x;
        while y != 0 {
            out.push(y);
            y = self.mul(y, x);
        }
        out.sort_unstable();
        out
    }

    /// The right coset `⟨s⟩x`.
    pub fn right_coset(&self, s: Elem, x: Elem) -> Coset {
        let elements: Vec<Elem> = {
            let mut v: Vec<Elem> = self
                .cyclic_subgroup(s)
                .into_iter()
                .map(|h| self.mul(h, x))
                .collect();
            v.sort_unstable();
            v
        };
        Coset {
            generator: s,
            rep: elements[0],
            elements,
        }
    }

    /// All right cosets of `⟨s⟩`, ordered by representative, together with
    /// the coset index of every element.
    pub fn right_cosets(&self, s: Elem) -> (Vec<Coset>, Vec<usize>) {
        let mut coset_of = vec![usize::MAX; self.order];
        let mut cosets = Vec::new();
        for x in 0..self.order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = self.right_coset(s, x);
            for &y in &c.elements {
                coset_of[y] = cosets.len();
            }
            cosets.push(c);
        }
        (cosets, coset_of)
    }

    /// `⟨gens⟩` by worklist closure, sorted.
    pub fn generated_subgroup(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut out = vec![0];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Materializes a subgroup given by its (closed) element set. Returns the
    /// new group, whose element `i` is `embedding[i]` in `self`; the identity
    /// stays at index 0.
    pub fn subgroup(&self, elements: &[Elem]) -> Result<(FiniteGroup, Vec<Elem>), AlgebraError> {
        let mut embedding: Vec<Elem> = elements.to_vec();
        embedding.sort_unstable();
        embedding.dedup();
        if embedding.first() != Some(&0) {
            return Err(AlgebraError::InvalidTable("subgroup must contain the identity".into()));
        }
        let mut local = vec![usize::MAX; self.order];
        for (i, &x) in embedding.iter().enumerate() {
            local[x] = i;
        }
        let k = embedding.len();
        let mut mul = Vec::with_capacity(k * k);
        for &a in &embedding {
            for &b in &embedding {
                let c = local[self.mul(a, b)];
                if c == usize::MAX {
                    return Err(AlgebraError::InvalidTable("element set is not closed".into()));
                }
                mul.push(c);
            }
        }
        let names: Vec<String> = embedding.iter().map(|&x| self.format_element(x)).collect();
        let repr = match &self.repr {
            ElementRepr::Perm(t) => {
                let perms: Vec<Perm> = embedding.iter().map(|&x| t.perm(x).clone()).collect();
                let index = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
                ElementRepr::Perm(Arc::new(PermTable {
                    degree: t.degree,
                    perms,
                    index,
                }))
            }
            _ => ElementRepr::Table(Arc::new(names)),
        };
        let g = Self::from_flat(format!("<{}>", self.name), k, mul, repr)?;
        Ok((g, embedding))
    }

    /// Checks identity, inverse and associativity laws. Associativity is
    /// exhaustive up to order 256 and sampled (`10·order` seeded triples) above.
    pub fn verify_axioms(&self) -> Result<(), AlgebraError> {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(AlgebraError::InvalidTable(format!("index 0 is not an identity at {x}")));
            }
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                return Err(AlgebraError::InvalidTable(format!("no two-sided inverse for {x}")));
            }
        }
        let assoc = |a: Elem, b: Elem, c: Elem| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(AlgebraError::InvalidTable(format!(
                                "not associative at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6767);
            for _ in 0..10 * n {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(AlgebraError::InvalidTable(format!(
                        "not associative at ({a},{b},{c})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn format_element(&self, x: Elem) -> String {
        match &self.repr {
            ElementRepr::Cyclic(_) => x.to_string(),
            ElementRepr::Product(moduli) => {
                let parts: Vec<String> = product_digits(moduli, x)
                    .into_iter()
                    .map(|d| d.to_string())
                    .collect();
                format!("({})", parts.join(","))
            }
            ElementRepr::Perm(t) => t.perm(x).to_compact_string(),
            ElementRepr::Table(names) => names[x].clone(),
        }
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

fn product_digits(moduli: &[usize], mut x: usize) -> Vec<usize> {
    let mut digits = vec![0; moduli.len()];
    for (slot, &m) in digits.iter_mut().zip(moduli).rev() {
        *slot = x % m;
        x /= m;
    }
    digits
}

pub(crate) fn product_index(moduli: &[usize], digits: &[usize]) -> usize {
    digits
        .iter()
        .zip(moduli)
        .fold(0, |acc, (&d, &m)| acc * m + d)
}

/// A right coset `⟨generator⟩·rep`, elements sorted, `rep` the least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coset {
    pub generator: Elem,
    pub elements: Vec<Elem>,
    pub rep: Elem,
}

impl Coset {
    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Generator multiset: elements with per-element occurrence tags `0, 1, 2, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenMultiset {
    items: Vec<(Elem, usize)>,
}

impl GenMultiset {
    pub fn new(group: &FiniteGroup, elems: &[Elem]) -> Result<Self, AlgebraError> {
        if elems.is_empty() {
            return Err(AlgebraError::InvalidElement("empty generator multiset".into()));
        }
        let mut items = Vec::with_capacity(elems.len());
        for (i, &x) in elems.iter().enumerate() {
            group.check_element(x)?;
            let occ = elems[..i].iter().filter(|&&y| y == x).count();
            items.push((x, occ));
        }
        Ok(GenMultiset { items })
    }

    pub fn items(&self) -> &[(Elem, usize)] {
        &self.items
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.items.iter().map(|&(x, _)| x).collect()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

pub fn cyclic_group(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs n >= 1");
    let mul = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a + b) % n))
        .collect();
    FiniteGroup::from_flat(format!("Z{n}"), n, mul, ElementRepr::Cyclic(n))
        .expect("Z/nZ is a group")
}

/// `g1 × g2` with `(a, b)` at index `a·|g2| + b`.
pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> FiniteGroup {
    let (n1, n2) = (g1.order, g2.order);
    let n = n1 * n2;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a1, b1) = (x / n2, x % n2);
        for y in 0..n {
            let (a2, b2) = (y / n2, y % n2);
            mul.push(g1.mul(a1, a2) * n2 + g2.mul(b1, b2));
        }
    }
    let moduli = |g: &FiniteGroup| match &g.repr {
        ElementRepr::Cyclic(m) => Some(vec![*m]),
        ElementRepr::Product(ms) => Some(ms.clone()),
        _ => None,
    };
    let repr = match (moduli(g1), moduli(g2)) {
        (Some(mut a), Some(b)) => {
            a.extend(b);
            ElementRepr::Product(a)
        }
        _ => ElementRepr::Table(Arc::new(
            (0..n)
                .map(|x| {
                    format!(
                        "({},{})",
                        g1.format_element(x / n2),
                        g2.format_element(x % n2)
                    )
                })
                .collect(),
        )),
    };
    FiniteGroup::from_flat(format!("{}x{}", g1.name, g2.name), n, mul, repr)
        .expect("product of groups is a group")
}

/// Closure of `gens` in `S_degree`, elements in discovery order with the
/// identity at index 0. Fails once the closure exceeds `cap` elements.
pub fn perm_group(degree: usize, gens: &[Perm], cap: usize) -> Result<FiniteGroup, AlgebraError> {
    perm_group_named(format!("perm{degree}"), degree, gens, cap)
}

pub(crate) fn perm_group_named(
    name: String,
    degree: usize,
    gens: &[Perm],
    cap: usize,
) -> Result<FiniteGroup, AlgebraError> {
    for g in gens {
        if g.degree() != degree {
            return Err(AlgebraError::DegreeMismatch(degree, g.degree()));
        }
    }
    let id = Perm::identity(degree);
    let mut perms = vec![id.clone()];
    let mut index: HashMap<Perm, Elem> = HashMap::from([(id, 0)]);
    let mut head = 0;
    while head < perms.len() {
        let x = perms[head].clone();
        head += 1;
        for g in gens {
            let y = x.compose_unchecked(g);
            if !index.contains_key(&y) {
                if perms.len() >= cap {
                    return Err(AlgebraError::CapExceeded { cap });
                }
                index.insert(y.clone(), perms.len());
                perms.push(y);
            }
        }
    }
    let n = perms.len();
    let mut mul = Vec::with_capacity(n * n);
    for a in &perms {
        for b in &perms {
            mul.push(index[&a.compose_unchecked(b)]);
        }
    }
    let table = PermTable {
        degree,
        perms,
        index,
    };
    FiniteGroup::from_flat(name, n, mul, ElementRepr::Perm(Arc::new(table)))
}

/// `S_n` generated by `(1,2)` and `(1,…,n)`.
pub fn symmetric_group(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(n, &[vec![1, 2]]).expect("valid"));
        gens.push(Perm::cycle_prefix(n, n));
    }
    perm_group_named(format!("S{n}"), n, &gens, DEFAULT_CLOSURE_CAP).expect("S_n within cap")
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon (`n ≥ 3`).
pub fn dihedral_group(n: usize) -> FiniteGroup {
    assert!(n >= 3);
    let rot = Perm::cycle_prefix(n, n);
    let refl_imgs: Vec<usize> = (1..=n).map(|k| if k == 1 { 1 } else { n + 2 - k }).collect();
    let refl = Perm::from_images(&refl_imgs).expect("valid reflection");
    perm_group_named(format!("D{n}"), n, &[rot, refl], DEFAULT_CLOSURE_CAP).expect("within cap")
}

/// The quaternion group `Q_8` as an abstract Cayley table over
/// `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion_group() -> FiniteGroup {
    // units 0=1, 1=i, 2=j, 3=k; unit_mul[a][b] = (sign, unit)
    const UNIT_MUL: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let decode = |x: usize| (x % 2 == 1, x / 2);
    let encode = |neg: bool, u: usize| 2 * u + usize::from(neg);
    let table: Vec<Vec<Elem>> = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (na, ua) = decode(a);
                    let (nb, ub) = decode(b);
                    let (nu, u) = UNIT_MUL[ua][ub];
                    encode(na ^ nb ^ nu, u)
                })
                .collect()
        })
        .collect();
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_table("Q8", table, Some(names)).expect("Q8 is a group")
}
