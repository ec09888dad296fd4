//! Isomorphism search by backtracking over generator images.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{CayleyTable, QuasigroupError};
use crate::Budget;

const UNSET: usize = usize::MAX;

/// Sorted cycle lengths of a permutation.
fn cycle_type(perm: impl Fn(usize) -> usize, n: usize) -> Vec<u16> {
    let mut seen = vec![false; n];
    let mut lens = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0u16;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm(x);
            len += 1;
        }
        lens.push(len);
    }
    lens.sort_unstable();
    lens
}

type Invariant = (Vec<u16>, Vec<u16>);

fn invariants(q: &CayleyTable) -> Vec<Invariant> {
    let n = q.order();
    (0..n)
        .map(|x| (cycle_type(|y| q.op(x, y), n), cycle_type(|y| q.op(y, x), n)))
        .collect()
}

/// Both tables' elements labelled by a shared class id, or `None` when the
/// invariant multisets differ.
fn classify(a: &CayleyTable, b: &CayleyTable) -> Option<(Vec<usize>, Vec<usize>)> {
    let (ia, ib) = (invariants(a), invariants(b));
    let mut ids: BTreeMap<&Invariant, usize> = BTreeMap::new();
    let mut count: Vec<i64> = Vec::new();
    let mut class_a = Vec::with_capacity(ia.len());
    for inv in &ia {
        let next = ids.len();
        let id = *ids.entry(inv).or_insert(next);
        if id == count.len() {
            count.push(0);
        }
        count[id] += 1;
        class_a.push(id);
    }
    let mut class_b = Vec::with_capacity(ib.len());
    for inv in &ib {
        let id = *ids.get(inv)?;
        count[id] -= 1;
        class_b.push(id);
    }
    count.iter().all(|&c| c == 0).then_some((class_a, class_b))
}

/// Greedy generating sequence, preferring elements from small classes.
fn generators(q: &CayleyTable, class: &[usize]) -> Vec<usize> {
    let n = q.order();
    let mut freq = vec![0usize; n];
    for &c in class {
        freq[c] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (freq[class[x]], x));
    let mut member = vec![false; n];
    let mut list: Vec<usize> = Vec::new();
    let mut gens = Vec::new();
    for &g in &order {
        if member[g] {
            continue;
        }
        gens.push(g);
        member[g] = true;
        list.push(g);
        let mut i = 0;
        while i < list.len() {
            let u = list[i];
            for j in 0..=i {
                let w = list[j];
                for c in [q.op(u, w), q.op(w, u)] {
                    if !core::mem::replace(&mut member[c], true) {
                        list.push(c);
                    }
                }
            }
            i += 1;
        }
        if list.len() == n {
            break;
        }
    }
    gens
}

struct Search<'a> {
    a: &'a CayleyTable,
    b: &'a CayleyTable,
    class_a: Vec<usize>,
    class_b: Vec<usize>,
    phi: Vec<usize>,
    inv: Vec<usize>,
    trail: Vec<usize>,
}

impl Search<'_> {
    fn set(&mut self, x: usize, y: usize) -> bool {
        if self.phi[x] != UNSET {
            return self.phi[x] == y;
        }
        if self.inv[y] != UNSET || self.class_a[x] != self.class_b[y] {
            return false;
        }
        self.phi[x] = y;
        self.inv[y] = x;
        self.trail.push(x);
        true
    }

    /// Maps `x` to `y` and closes the partial map under the operation.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut p = self.trail.len();
        if !self.set(x, y) {
            return false;
        }
        while p < self.trail.len() {
            let u = self.trail[p];
            for j in 0..=p {
                let w = self.trail[j];
                let (pu, pw) = (self.phi[u], self.phi[w]);
                if !self.set(self.a.op(u, w), self.b.op(pu, pw))
                    || !self.set(self.a.op(w, u), self.b.op(pw, pu))
                {
                    return false;
                }
            }
            p += 1;
        }
        true
    }

    fn undo(&mut self, len: usize) {
        for x in self.trail.drain(len..) {
            self.inv[self.phi[x]] = UNSET;
            self.phi[x] = UNSET;
        }
    }

    fn run(&mut self, gens: &[usize], budget: &Budget) -> Result<bool, QuasigroupError> {
        let Some((&g, rest)) = gens.split_first() else {
            return Ok(self.trail.len() == self.phi.len());
        };
        if self.phi[g] != UNSET {
            return self.run(rest, budget);
        }
        for y in 0..self.b.order() {
            if self.inv[y] != UNSET || self.class_b[y] != self.class_a[g] {
                continue;
            }
            budget
                .tick()
                .map_err(|_| QuasigroupError::SearchBudgetExceeded)?;
            let len = self.trail.len();
            if self.assign(g, y) && self.run(rest, budget)? {
                return Ok(true);
            }
            self.undo(len);
        }
        Ok(false)
    }
}

/// A bijection `phi` with `phi(x ∘ y) = phi(x) ∘' phi(y)`, if one exists.
///
/// Elements are first partitioned by the cycle types of their left and right
/// translations; images of a generating sequence are then chosen within
/// matching classes, and each choice is propagated through the operation.
pub fn is_isomorphic(
    a: &CayleyTable,
    b: &CayleyTable,
    budget: &Budget,
) -> Result<Option<Vec<usize>>, QuasigroupError> {
    let n = a.order();
    if n != b.order() {
        return Ok(None);
    }
    let Some((class_a, class_b)) = classify(a, b) else {
        return Ok(None);
    };
    let gens = generators(a, &class_a);
    let mut s = Search {
        a,
        b,
        class_a,
        class_b,
        phi: vec![UNSET; n],
        inv: vec![UNSET; n],
        trail: Vec::with_capacity(n),
    };
    if !s.run(&gens, budget)? {
        return Ok(None);
    }
    let phi = s.phi;
    let ok = (0..n).all(|x| (0..n).all(|y| phi[a.op(x, y)] == b.op(phi[x], phi[y])));
    Ok(ok.then_some(phi))
}
