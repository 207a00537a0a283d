//! Enumeration of neighbor tuples over state ranks `0..k`.

use alloc::vec;
use alloc::vec::Vec;

/// Calls `f` on every tuple of length `n` over `0..k`, in lexicographic order.
/// Stops early when `f` returns `false`; the return value says whether the
/// enumeration ran to completion.
pub fn for_each_tuple(k: usize, n: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k == 0 {
        return true;
    }
    let mut t = vec![0usize; n];
    loop {
        if !f(&t) {
            return false;
        }
        if !advance(&mut t, k) {
            return true;
        }
    }
}

fn advance(t: &mut [usize], k: usize) -> bool {
    for i in (0..t.len()).rev() {
        t[i] += 1;
        if t[i] < k {
            return true;
        }
        t[i] = 0;
    }
    false
}

/// Calls `f` on every non-decreasing tuple of length `n` over `0..k`
/// (one representative per multiset).
pub fn for_each_multiset(k: usize, n: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k == 0 {
        return true;
    }
    let mut t = vec![0usize; n];
    loop {
        if !f(&t) {
            return false;
        }
        // Rightmost position that can still grow.
        let Some(i) = (0..n).rev().find(|&i| t[i] + 1 < k) else {
            return true;
        };
        let v = t[i] + 1;
        for x in &mut t[i..] {
            *x = v;
        }
    }
}

/// Calls `f` on one representative (the lexicographically least rotation) of
/// every cyclic-rotation class of `n`-tuples over `0..k`.
pub fn for_each_rotation_class(k: usize, n: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    for_each_tuple(k, n, |t| if is_min_rotation(t) { f(t) } else { true })
}

pub fn is_min_rotation<T: Ord>(t: &[T]) -> bool {
    (1..t.len()).all(|r| {
        let rotated = t[r..].iter().chain(&t[..r]);
        t.iter().cmp(rotated) != core::cmp::Ordering::Greater
    })
}

/// Rotates `t` in place to its lexicographically least rotation.
pub fn min_rotation<T: Ord + Copy>(t: &mut [T]) {
    let n = t.len();
    let mut best = 0;
    for r in 1..n {
        let cand = t[r..].iter().chain(&t[..r]);
        let cur = t[best..].iter().chain(&t[..best]);
        if cand.cmp(cur) == core::cmp::Ordering::Less {
            best = r;
        }
    }
    t.rotate_left(best);
}

/// Number of tuples `k^n`, saturating.
pub fn count_tuples(k: usize, n: usize) -> u128 {
    (0..n).fold(1u128, |acc, _| acc.saturating_mul(k as u128))
}

/// Number of multisets of size `n` over `k` elements, `C(k + n - 1, n)`.
pub fn count_multisets(k: usize, n: usize) -> u128 {
    if k == 0 {
        return u128::from(n == 0);
    }
    let mut acc = 1u128;
    for i in 0..n as u128 {
        acc = acc * (k as u128 + i) / (i + 1);
    }
    acc
}

/// Collects tuples into owned vectors; test helper for small spaces.
pub fn collect_multisets(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_multiset(k, n, |t| {
        out.push(t.to_vec());
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_enumeration() {
        for k in 1..5 {
            for n in 0..5 {
                let mut tuples = 0u128;
                for_each_tuple(k, n, |_| {
                    tuples += 1;
                    true
                });
                assert_eq!(tuples, count_tuples(k, n));
                assert_eq!(collect_multisets(k, n).len() as u128, count_multisets(k, n));
            }
        }
        assert_eq!(count_multisets(7, 6), 924);
        assert_eq!(count_multisets(4, 3), 20);
    }

    #[test]
    fn rotation_classes_of_binary_triples() {
        let mut reps = Vec::new();
        for_each_rotation_class(2, 3, |t| {
            reps.push(t.to_vec());
            true
        });
        assert_eq!(
            reps,
            [vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]
        );

        let mut count = 0;
        for_each_rotation_class(3, 3, |_| {
            count += 1;
            true
        });
        // Necklaces of length 3 over 3 colors.
        assert_eq!(count, 11);
    }

    #[test]
    fn min_rotation_canonicalizes() {
        let mut t = [2, 0, 1];
        min_rotation(&mut t);
        assert_eq!(t, [0, 1, 2]);
        let mut t = [1, 0, 0];
        min_rotation(&mut t);
        assert_eq!(t, [0, 0, 1]);
        assert!(is_min_rotation(&[0, 2, 1]));
        assert!(!is_min_rotation(&[2, 1, 0]));
    }

    #[test]
    fn early_stop() {
        let mut seen = 0;
        assert!(!for_each_tuple(3, 3, |_| {
            seen += 1;
            seen < 5
        }));
        assert_eq!(seen, 5);
    }
}
