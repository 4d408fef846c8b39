//! Small integer helpers: gcd, lcm, trial-division factorization and p-adic valuation.

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Distinct prime factors of `n` in ascending order. `prime_factors(1)` is empty.
pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exponent of the prime `p` in `n` (`n ≥ 1`).
pub fn valuation(p: usize, mut n: usize) -> u32 {
    debug_assert!(p >= 2 && n >= 1);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Units of `Z/mZ` in ascending order, as representatives in `1..=m`
/// (for `m = 1` this is `[1]`).
pub fn units_mod(m: usize) -> Vec<usize> {
    if m == 1 {
        return vec![1];
    }
    (1..m).filter(|&a| gcd(a, m) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_reconstructs() {
        for n in 1..500usize {
            let mut prod = 1;
            for p in prime_factors(n) {
                prod *= p.pow(valuation(p, n));
            }
            assert_eq!(prod, n);
        }
    }

    #[test]
    fn units() {
        assert_eq!(units_mod(12), vec![1, 5, 7, 11]);
        assert_eq!(units_mod(1), vec![1]);
        assert_eq!(units_mod(2), vec![1]);
    }

    #[test]
    fn gcd_lcm() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(gcd(0, 5), 5);
    }
}
