//! Exact binomial arithmetic and subset iteration helpers.
//!
//! Everything here is exact big-integer arithmetic except [`log_big`], which
//! exists so that bound formulas can take logarithms of sums too large for
//! `f64`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// `C(n, k)` as a big integer; 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `C(m, k)` extended to possibly-negative `m`: `C(m, 0) = 1` for every `m`,
/// and 0 whenever `k > 0` and the ordinary binomial is empty (`m < k`).
pub fn binomial_ext(m: i64, k: i64) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    if k < 0 || m < k {
        return BigUint::zero();
    }
    binomial(m as u64, k as u64)
}

/// `C(n, 0) + C(n, 1) + ... + C(n, min(d, n))`.
pub fn binomial_sum(n: u64, d: u64) -> BigUint {
    let mut acc = BigUint::zero();
    for i in 0..=d.min(n) {
        acc += binomial(n, i);
    }
    acc
}

/// Natural logarithm of a positive big integer, accurate enough for
/// threshold computations even when the value overflows `f64`.
pub fn log_big(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "log of zero");
    let bits = x.bits();
    if bits <= 52 {
        return x.to_f64().expect("small biguint fits f64").ln();
    }
    // Take the top 64 bits as mantissa and account for the shift.
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("top 64 bits") as f64;
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Visits every size-`k` subset of `{0, .., universe-1}` in lexicographic
/// order. The visitor returns `false` to stop early; the function returns
/// `true` iff the enumeration ran to completion.
pub fn for_each_subset_of_size(
    universe: usize,
    k: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> bool {
    if k > universe {
        return true;
    }
    if k == 0 {
        return visit(&[]);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return false;
        }
        // Advance the rightmost index that can still move.
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] != i + universe - k {
                break;
            }
            if i == 0 {
                return true;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Visits every function `{0,..,arity-1} -> {1,..,r}` in lexicographic order
/// (an odometer over total functions). Stops early when the visitor returns
/// `false`; returns `true` iff complete.
pub fn for_each_total_function(
    r: u8,
    arity: usize,
    mut visit: impl FnMut(&[u8]) -> bool,
) -> bool {
    let mut cur = vec![1u8; arity];
    loop {
        if !visit(&cur) {
            return false;
        }
        let mut i = arity;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if cur[i] < r {
                cur[i] += 1;
                break;
            }
            cur[i] = 1;
            if i == 0 {
                return true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(8, 2), BigUint::from(28u32));
        assert_eq!(binomial(8, 0), BigUint::one());
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial_sum(8, 2), BigUint::from(37u32));
        assert_eq!(binomial_sum(5, 9), BigUint::from(32u32));
    }

    #[test]
    fn binomial_ext_conventions() {
        assert_eq!(binomial_ext(-1, 0), BigUint::one());
        assert_eq!(binomial_ext(0, 1), BigUint::zero());
        assert_eq!(binomial_ext(-3, 2), BigUint::zero());
        assert_eq!(binomial_ext(4, 2), BigUint::from(6u32));
    }

    #[test]
    fn log_big_matches_f64_on_small_and_huge() {
        let x = BigUint::from(37u32);
        assert!((log_big(&x) - 37f64.ln()).abs() < 1e-12);
        let huge = BigUint::from(2u32).pow(3000);
        let expected = 3000.0 * std::f64::consts::LN_2;
        assert!((log_big(&huge) - expected).abs() < 1e-6 * expected);
    }

    #[test]
    fn subset_enumeration_counts() {
        let mut count = 0u64;
        for_each_subset_of_size(6, 3, |s| {
            assert_eq!(s.len(), 3);
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            count += 1;
            true
        });
        assert_eq!(count, 20);

        let mut seen = Vec::new();
        for_each_subset_of_size(4, 0, |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn total_function_enumeration_counts() {
        let mut count = 0;
        for_each_total_function(3, 4, |f| {
            assert!(f.iter().all(|&v| (1..=3).contains(&v)));
            count += 1;
            true
        });
        assert_eq!(count, 81);

        // arity 0: exactly the empty function.
        let mut n = 0;
        for_each_total_function(2, 0, |_| {
            n += 1;
            true
        });
        assert_eq!(n, 1);
    }
}
