//! Permutations of `{1..n}` in image-array form.
//!
//! Points are numbered from 1 in every public API and in cycle notation;
//! the image array is stored zero-based. Composition is right-to-left:
//! `p.compose(&q)` is the permutation `x ↦ p(q(x))`.

use std::fmt;

use super::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            img: (0..n).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[k - 1]` is the image of `k`.
    pub fn from_images(images: &[usize]) -> Result<Self, AlgebraError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut img = Vec::with_capacity(n);
        for &y in images {
            if y == 0 || y > n || seen[y - 1] {
                return Err(AlgebraError::NotAPermutation(format!("{images:?}")));
            }
            seen[y - 1] = true;
            img.push(y - 1);
        }
        Ok(Perm { img })
    }

    /// Builds a permutation of degree `n` from disjoint cycles given with 1-based points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > n {
                    return Err(AlgebraError::PointOutOfRange { point: p, degree: n });
                }
                if touched[p - 1] {
                    return Err(AlgebraError::NotAPermutation(format!(
                        "point {p} appears twice in {cycles:?}"
                    )));
                }
                touched[p - 1] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                let q = cycle[(i + 1) % cycle.len()];
                img[p - 1] = q - 1;
            }
        }
        Ok(Perm { img })
    }

    /// The cycle `(1, 2, …, len)` inside `S_n`.
    pub fn cycle_prefix(n: usize, len: usize) -> Self {
        let mut img: Vec<usize> = (0..n).collect();
        for (k, slot) in img.iter_mut().enumerate().take(len) {
            *slot = (k + 1) % len;
        }
        Perm { img }
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// Image of the 1-based point `p`.
    pub fn apply(&self, p: usize) -> usize {
        self.img[p - 1] + 1
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&y| y + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &y)| i == y)
    }

    fn check_degree(&self, other: &Perm) -> Result<(), AlgebraError> {
        if self.degree() != other.degree() {
            return Err(AlgebraError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(())
    }

    /// `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm, AlgebraError> {
        self.check_degree(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        Perm {
            img: other.img.iter().map(|&y| self.img[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0; self.img.len()];
        for (x, &y) in self.img.iter().enumerate() {
            img[y] = x;
        }
        Perm { img }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let n = self.degree();
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(n);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    /// `q · self · q⁻¹`.
    pub fn conjugate(&self, q: &Perm) -> Result<Perm, AlgebraError> {
        self.check_degree(q)?;
        Ok(q.compose_unchecked(&self.compose_unchecked(&q.inverse())))
    }

    /// Disjoint cycles including fixed points, each starting at its least
    /// point, ordered by that point. Points are 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.img[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1, |acc, c| crate::arith::lcm(acc, c.len()))
    }

    /// `(-1)^(n - #cycles)`.
    pub fn sign(&self) -> i8 {
        let parity = (self.degree() - self.cycles().len()) % 2;
        if parity == 0 {
            1
        } else {
            -1
        }
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.degree()).filter(|&p| self.apply(p) == p).collect()
    }

    /// Cycle notation without fixed points, with spaces: `(1 2 3)(4 5)`.
    pub fn to_compact_string(&self) -> String {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }
}

/// Full cycle notation with fixed points and commas: `(1)(2,3)(4,5)`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            let inner: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", inner.join(","))?;
        }
        Ok(())
    }
}
