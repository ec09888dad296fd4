use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::predicates::{check_medial, Law};
use super::{CayleyTable, QuasigroupError};

/// The transpose: `x ∘' y = y ∘ x`.
pub fn converse(q: &CayleyTable) -> CayleyTable {
    CayleyTable::from_fn(q.order(), |x, y| q.op(y, x)).expect("transpose of a Latin square")
}

/// Componentwise product on pairs; the pair `(a, b)` has index `a * n2 + b`.
pub fn direct_product(a: &CayleyTable, b: &CayleyTable) -> Result<CayleyTable, QuasigroupError> {
    let n2 = b.order();
    CayleyTable::from_fn(a.order() * n2, |x, y| {
        a.op(x / n2, y / n2) * n2 + b.op(x % n2, y % n2)
    })
}

/// Sorted elements of the subquasigroup generated by `gens`.
///
/// Closes under the operation, then under both divisions whenever the
/// restriction is not Latin, until nothing changes.
pub fn generated_sub(q: &CayleyTable, gens: &[usize]) -> Result<Vec<usize>, QuasigroupError> {
    let n = q.order();
    let mut member = vec![false; n];
    let mut list = Vec::new();
    for &g in gens {
        if g >= n {
            return Err(QuasigroupError::ElementOutOfRange(g));
        }
        if !core::mem::replace(&mut member[g], true) {
            list.push(g);
        }
    }
    loop {
        close_under(&mut member, &mut list, |a, b| [q.op(a, b), q.op(b, a)]);
        let mut sorted = list.clone();
        sorted.sort_unstable();
        if q.restrict(&sorted).is_ok() {
            return Ok(sorted);
        }
        close_under(&mut member, &mut list, |a, b| {
            [q.left_division(a, b), q.right_division(a, b)]
        });
    }
}

fn close_under<F>(member: &mut [bool], list: &mut Vec<usize>, f: F)
where
    F: Fn(usize, usize) -> [usize; 2],
{
    let mut i = 0;
    while i < list.len() {
        let a = list[i];
        for j in 0..=i {
            let b = list[j];
            for c in f(a, b).into_iter().chain(f(b, a)) {
                if !core::mem::replace(&mut member[c], true) {
                    list.push(c);
                }
            }
        }
        i += 1;
    }
}

/// Checks that every subquasigroup generated by at most three elements is
/// medial; the witness is the least generating triple `x < y < z` whose
/// subquasigroup is not.
pub fn belousov_distributive(q: &CayleyTable) -> Law<[usize; 3]> {
    let n = q.order();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut check = |gens: [usize; 3]| -> bool {
        let sub = generated_sub(q, &gens).expect("generators are in range");
        if seen.contains(&sub) {
            return true;
        }
        let ok = check_medial(&q.restrict(&sub).expect("closed subset")).holds();
        seen.insert(sub);
        ok
    };
    if n < 3 {
        let top = n - 1;
        return if check([0, top, top]) {
            Law::Holds
        } else {
            Law::Violated([0, top, top])
        };
    }
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if !check([x, y, z]) {
                    return Law::Violated([x, y, z]);
                }
            }
        }
    }
    Law::Holds
}
