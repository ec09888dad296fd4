//! Conjugacy of automorphisms by search for a conjugating automorphism.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::tables::Tables;
use super::EnumerationError;
use crate::algebra::GroupAutomorphism;
use crate::{par, Budget};

const UNSET: usize = usize::MAX;

/// Per-element conjugacy invariant of `(G, k)`:
/// `(ord x, ord(kx - x), ord(kx + x), |<x, kx>|, c)` where `kx = c x` with
/// `0 < c < ord x` if `kx` lies in `<x>`, and `c = 0` otherwise.
pub(crate) type Signature = [u64; 5];

pub(crate) fn signatures_with(t: &Tables<'_>, k: &GroupAutomorphism) -> Vec<Signature> {
    let g = t.g;
    let mut stamp = vec![usize::MAX; g.order()];
    let mut pos = vec![0u64; g.order()];
    g.elements()
        .map(|x| {
            let kx = k.apply(x);
            let ox = t.order[x];
            // Mark <x>, then find the order of kx modulo <x>.
            let mut y = 0;
            for i in 0..ox {
                stamp[y] = x;
                pos[y] = i;
                y = t.add(y, x);
            }
            let c = if stamp[kx] == x { pos[kx] } else { 0 };
            let mut m = 1;
            let mut z = kx;
            while stamp[z] != x {
                z = t.add(z, kx);
                m += 1;
            }
            [ox, t.order[t.sub(kx, x)], t.order[t.add(kx, x)], ox * m, c]
        })
        .collect()
}

/// Multiset of signatures, as sorted `(signature, count)` pairs.
pub(crate) fn signature_profile(sigs: &[Signature]) -> Vec<(Signature, usize)> {
    let mut m: BTreeMap<Signature, usize> = BTreeMap::new();
    for &s in sigs {
        *m.entry(s).or_default() += 1;
    }
    m.into_iter().collect()
}

/// Generators of `G` as a module over `k`, preferring elements of large order.
fn module_generators(k: &GroupAutomorphism) -> Vec<usize> {
    let g = k.group();
    let n = g.order();
    let mut by_order: Vec<usize> = g.elements().collect();
    by_order.sort_by_key(|&x| (core::cmp::Reverse(g.element_order(x)), x));
    let mut member = vec![false; n];
    member[0] = true;
    let mut size = 1;
    let mut gens: Vec<usize> = Vec::new();
    for x in by_order {
        if size == n {
            break;
        }
        if member[x] {
            continue;
        }
        gens.push(x);
        member.fill(false);
        member[0] = true;
        let mut list = vec![0usize];
        let mut p = 0;
        while p < list.len() {
            let u = list[p];
            let next = core::iter::once(k.apply(u)).chain(gens.iter().map(|&s| g.add_idx(u, s)));
            for c in next {
                if !core::mem::replace(&mut member[c], true) {
                    list.push(c);
                }
            }
            p += 1;
        }
        size = list.len();
    }
    gens
}

struct Conj<'a> {
    t: &'a Tables<'a>,
    k1: &'a GroupAutomorphism,
    k2: &'a GroupAutomorphism,
    sig1: &'a [Signature],
    sig2: &'a [Signature],
    psi: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
    gens: Vec<usize>,
    c1: Vec<usize>,
    c2: Vec<usize>,
}

impl Conj<'_> {
    fn set(&mut self, x: usize, y: usize) -> bool {
        if self.psi[x] != UNSET {
            return self.psi[x] == y;
        }
        if self.used[y] || self.sig1[x] != self.sig2[y] {
            return false;
        }
        self.psi[x] = y;
        self.used[y] = true;
        self.trail.push(x);
        true
    }

    /// Closes under `psi(u + s) = psi(u) + psi(s)` for chosen generators `s`
    /// and `psi(k1 u) = k2 psi(u)`.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let t = self.t;
        let old = self.trail.len();
        if !self.set(x, y) {
            return false;
        }
        self.gens.push(x);
        for p in 0..old {
            let u = self.trail[p];
            if !self.set(t.add(u, x), t.add(self.psi[u], y)) {
                return false;
            }
        }
        let mut p = old;
        while p < self.trail.len() {
            let u = self.trail[p];
            let pu = self.psi[u];
            if !self.set(self.k1.apply(u), self.k2.apply(pu)) {
                return false;
            }
            for i in 0..self.gens.len() {
                let s = self.gens[i];
                if !self.set(t.add(u, s), t.add(pu, self.psi[s])) {
                    return false;
                }
            }
            p += 1;
        }
        true
    }

    /// Whether `psi(x) = y` extends `psi` from the current submodule `M`,
    /// judged on the combinations `a x + b k1(x)`: those inside `M` must map
    /// to `a y + b k2(y)`, and the others outside `psi(M)`.
    fn consistent(&mut self, x: usize, y: usize) -> bool {
        let o = self.t.order[x] as usize;
        if o * o > self.psi.len() {
            return true;
        }
        self.t.combinations(x, self.k1.apply(x), o, &mut self.c1);
        self.t.combinations(y, self.k2.apply(y), o, &mut self.c2);
        self.c1
            .iter()
            .zip(&self.c2)
            .all(|(&z, &w)| match self.psi[z] {
                UNSET => !self.used[w],
                v => v == w,
            })
    }

    fn undo(&mut self, len: usize, gens: usize) {
        for x in self.trail.drain(len..) {
            self.used[self.psi[x]] = false;
            self.psi[x] = UNSET;
        }
        self.gens.truncate(gens);
    }

    fn run(&mut self, order: &[usize], budget: &Budget) -> Result<bool, EnumerationError> {
        let Some((&x, rest)) = order.split_first() else {
            return Ok(self.trail.len() == self.t.g.order());
        };
        if self.psi[x] != UNSET {
            return self.run(rest, budget);
        }
        for y in 0..self.t.g.order() {
            if self.used[y] || self.sig1[x] != self.sig2[y] || !self.consistent(x, y) {
                continue;
            }
            budget
                .tick()
                .map_err(|_| EnumerationError::SearchBudgetExceeded)?;
            let (len, gens) = (self.trail.len(), self.gens.len());
            if self.assign(x, y) && self.run(rest, budget)? {
                return Ok(true);
            }
            self.undo(len, gens);
        }
        Ok(false)
    }
}

/// Everything about `k1` the conjugator search reuses across targets.
pub(crate) struct Source<'a> {
    pub k: &'a GroupAutomorphism,
    pub sig: &'a [Signature],
    gens: Vec<usize>,
}

impl<'a> Source<'a> {
    pub fn new(k: &'a GroupAutomorphism, sig: &'a [Signature]) -> Self {
        Source {
            k,
            sig,
            gens: module_generators(k),
        }
    }
}

/// The images of a conjugator from `src.k` to `k2`, if one exists.
pub(crate) fn conjugator_images(
    t: &Tables<'_>,
    src: &Source<'_>,
    k2: &GroupAutomorphism,
    sig2: &[Signature],
    budget: &Budget,
) -> Result<Option<Vec<usize>>, EnumerationError> {
    let n = t.g.order();
    let mut c = Conj {
        t,
        k1: src.k,
        k2,
        sig1: src.sig,
        sig2,
        psi: vec![UNSET; n],
        used: vec![false; n],
        trail: Vec::with_capacity(n),
        gens: Vec::new(),
        c1: Vec::new(),
        c2: Vec::new(),
    };
    c.set(0, 0);
    Ok(c.run(&src.gens, budget)?.then_some(c.psi))
}

/// An automorphism `psi` with `psi ∘ k1 = k2 ∘ psi`, if one exists.
///
/// Images of module generators of `(G, k1)` are chosen among elements with
/// equal signature and propagated along addition and `k1`.
pub fn find_conjugator(
    k1: &GroupAutomorphism,
    k2: &GroupAutomorphism,
    budget: &Budget,
) -> Result<Option<GroupAutomorphism>, EnumerationError> {
    if k1.group() != k2.group() {
        return Err(EnumerationError::GroupMismatch);
    }
    let t = Tables::new(k1.group());
    let (s1, s2) = (signatures_with(&t, k1), signatures_with(&t, k2));
    if signature_profile(&s1) != signature_profile(&s2) {
        return Ok(None);
    }
    let images = conjugator_images(&t, &Source::new(k1, &s1), k2, &s2, budget)?;
    Ok(images.map(|im| {
        let psi = GroupAutomorphism::from_images(k1.group(), &im)
            .expect("closure yields an automorphism");
        debug_assert!(k1
            .group()
            .elements()
            .all(|x| psi.apply(k1.apply(x)) == k2.apply(psi.apply(x))));
        psi
    }))
}

/// One conjugacy class: its members sorted by matrix; the first is the
/// representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub members: Vec<GroupAutomorphism>,
}

impl ConjugacyClass {
    /// The lexicographically least matrix of the class.
    pub fn representative(&self) -> &GroupAutomorphism {
        &self.members[0]
    }
}

/// Partitions automorphisms of one group into `Aut(G)`-conjugacy classes,
/// ordered by representative.
///
/// Automorphisms are bucketed by signature profile. Within a bucket the least
/// unclassified automorphism founds a class and every remaining one is tested
/// against it, in parallel when enabled.
pub fn conjugacy_classes(
    ks: &[GroupAutomorphism],
    budget: &Budget,
) -> Result<Vec<ConjugacyClass>, EnumerationError> {
    let Some(first) = ks.first() else {
        return Ok(Vec::new());
    };
    if ks.iter().any(|k| k.group() != first.group()) {
        return Err(EnumerationError::GroupMismatch);
    }
    let mut sorted: Vec<&GroupAutomorphism> = ks.iter().collect();
    sorted.sort_unstable();
    sorted.dedup();
    let t = Tables::new(first.group());
    let sigs: Vec<Vec<Signature>> = par::map(sorted.len(), |i| signatures_with(&t, sorted[i]));
    let mut buckets: BTreeMap<Vec<(Signature, usize)>, Vec<usize>> = BTreeMap::new();
    for (i, s) in sigs.iter().enumerate() {
        buckets.entry(signature_profile(s)).or_default().push(i);
    }
    let mut classes = Vec::new();
    for (_, mut rest) in buckets {
        while let Some((&rep, others)) = rest.split_first() {
            let src = Source::new(sorted[rep], &sigs[rep]);
            let hits: Vec<Result<bool, EnumerationError>> = par::map(others.len(), |j| {
                let o = others[j];
                conjugator_images(&t, &src, sorted[o], &sigs[o], budget).map(|c| c.is_some())
            });
            let mut members = vec![sorted[rep].clone()];
            let mut left = Vec::new();
            for (&o, hit) in others.iter().zip(hits) {
                if hit? {
                    members.push(sorted[o].clone());
                } else {
                    left.push(o);
                }
            }
            classes.push(ConjugacyClass { members });
            rest = left;
        }
    }
    classes.sort_unstable_by(|a, b| a.representative().cmp(b.representative()));
    Ok(classes)
}
