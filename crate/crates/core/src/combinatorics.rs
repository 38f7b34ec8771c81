//! Small exact combinatorial helpers shared by the search and verification code.

use num_bigint::BigUint;

/// `C(n, k)` as `u128`; `None` on overflow. `C(n, k) = 0` for `k > n`.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

pub fn binomial_big(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= (n - i) as u64;
        acc /= (i + 1) as u64;
    }
    acc
}

/// `n (n-1) ... (n-k+1)`; zero when `k > n`.
pub fn falling_factorial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) as u64)
}

pub fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// All `k`-subsets of `0..n` as bit masks, in lexicographic order of their
/// sorted vertex lists.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for v in start..=n - left {
            rec(v + 1, n, left - 1, acc | (1u64 << v), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

/// Vertices of a mask in ascending order.
pub fn mask_vertices(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

pub fn vertices_mask(vs: &[usize]) -> u64 {
    vs.iter().fold(0u64, |m, &v| m | (1u64 << v))
}

/// Canonical edge order on masks: by size, then lexicographically on the
/// sorted vertex lists.
pub fn canonical_cmp(a: u64, b: u64) -> std::cmp::Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        let d = a ^ b;
        if d == 0 {
            std::cmp::Ordering::Equal
        } else if a & (d & d.wrapping_neg()) != 0 {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    })
}

pub fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u128, b: u128) -> Option<u128> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// Heap's algorithm over all permutations of `0..k`.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..k).collect();
    let mut out = vec![items.clone()];
    let mut c = vec![0usize; k];
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            out.push(items.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), Some(15));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(64, 32), Some(1_832_624_140_942_590_534));
        assert_eq!(binomial_big(10, 3), BigUint::from(120u32));
        assert_eq!(falling_factorial(5, 2), BigUint::from(20u32));
    }

    #[test]
    fn subsets_are_lex_ordered() {
        let s = subsets_of_size(4, 2);
        let lists: Vec<Vec<usize>> = s.iter().map(|&m| mask_vertices(m)).collect();
        assert_eq!(
            lists,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        for w in s.windows(2) {
            assert_eq!(canonical_cmp(w[0], w[1]), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        let mut all = permutations(3);
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 6);
    }
}
