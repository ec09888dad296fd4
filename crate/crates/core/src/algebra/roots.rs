use alloc::vec::Vec;

use super::arith::{checked_pow, is_prime};

fn f_mod(x: u64, m: u64) -> u64 {
    let (x, m) = (x as u128, m as u128);
    ((x * x + 1 + m - x % m) % m) as u64
}

/// Sorted roots of `x^2 - x + 1` modulo `p^d`.
///
/// Roots modulo `p` are found by trial and lifted one power of `p` at a time:
/// each root `r` modulo `p^j` has candidate lifts `r + t p^j`, `0 <= t < p`.
/// A simple root lifts uniquely; the double root modulo 3 has no lift.
///
/// # Panics
/// If `p` is not prime, `d == 0`, or `p^d` overflows `u64`.
pub fn roots_of_f(p: u64, d: u32) -> Vec<u64> {
    assert!(is_prime(p), "{p} is not prime");
    assert!(d >= 1, "exponent must be positive");
    checked_pow(p, d).expect("p^d overflows u64");
    let mut roots: Vec<u64> = (0..p).filter(|&r| f_mod(r, p) == 0).collect();
    let mut m = p;
    for _ in 1..d {
        let next = m * p;
        roots = roots
            .iter()
            .flat_map(|&r| (0..p).map(move |t| r + t * m))
            .filter(|&x| f_mod(x, next) == 0)
            .collect();
        m = next;
    }
    roots.sort_unstable();
    roots
}
