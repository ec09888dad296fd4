//! Commutative Moufang loops and affine quasigroups over them.
//!
//! Loops are plain Cayley tables with a distinguished identity. A loop
//! automorphism is passed as a permutation of element indices and validated
//! here, since imported tables carry no generator structure.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::AbelianGroup;
use crate::par::find_first;
use crate::quasigroup::{CayleyTable, QuasigroupError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopError {
    Table(QuasigroupError),
    /// `e` is not a two-sided identity.
    BadIdentity(usize),
    NotCML,
    /// `k` is not a permutation of the loop elements.
    NotPermutation,
    /// `k` is a permutation but not a loop automorphism.
    NotAutomorphism,
    /// Some `x + k(x)` lies outside the nucleus.
    NotNuclear,
    IminusKNotBijective,
}

impl fmt::Display for LoopError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopError::Table(e) => write!(f, "invalid loop table: {e}"),
            LoopError::BadIdentity(e) => write!(f, "element {e} is not an identity"),
            LoopError::NotCML => write!(f, "loop is not a commutative Moufang loop"),
            LoopError::NotPermutation => write!(f, "map is not a permutation of the loop"),
            LoopError::NotAutomorphism => write!(f, "map is not a loop automorphism"),
            LoopError::NotNuclear => write!(f, "automorphism is not nuclear"),
            LoopError::IminusKNotBijective => write!(f, "x - k(x) is not a bijection"),
        }
    }
}

impl core::error::Error for LoopError {}

impl From<QuasigroupError> for LoopError {
    fn from(e: QuasigroupError) -> Self {
        LoopError::Table(e)
    }
}

/// A finite loop: a Latin square with a two-sided identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopTable {
    table: CayleyTable,
    identity: usize,
    inverse: Vec<usize>,
}

impl LoopTable {
    pub fn new(table: CayleyTable, identity: usize) -> Result<Self, LoopError> {
        let n = table.order();
        if identity >= n || (0..n).any(|x| table.op(identity, x) != x || table.op(x, identity) != x)
        {
            return Err(LoopError::BadIdentity(identity));
        }
        // Left and right inverses agree in commutative loops; the right one
        // is stored and `is_commutative_moufang` rejects the rest.
        let inverse = (0..n).map(|x| table.left_division(x, identity)).collect();
        Ok(LoopTable {
            table,
            identity,
            inverse,
        })
    }

    /// The Cayley table of an abelian group, identity 0.
    pub fn from_group(g: &AbelianGroup) -> Self {
        let table = CayleyTable::from_fn(g.order(), |x, y| g.add_idx(x, y))
            .expect("group tables are Latin");
        LoopTable::new(table, 0).expect("0 is the group identity")
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.table.op(x, y)
    }

    /// The `y` with `x + y = e`.
    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }

    /// `x + (-y)`.
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.inverse(y))
    }
}

/// Commutativity and `(x+x)+(y+z) = (x+y)+(x+z)` on all triples.
pub fn is_commutative_moufang(l: &LoopTable) -> bool {
    let n = l.order();
    if !(0..n).all(|x| (0..x).all(|y| l.add(x, y) == l.add(y, x))) {
        return false;
    }
    find_first(n, |x| {
        let xx = l.add(x, x);
        (0..n)
            .any(|y| {
                let xy = l.add(x, y);
                (0..n).any(|z| l.add(xx, l.add(y, z)) != l.add(xy, l.add(x, z)))
            })
            .then_some(())
    })
    .is_none()
}

/// Elements that associate with every pair, in all three positions.
pub fn nucleus(l: &LoopTable) -> Vec<usize> {
    let n = l.order();
    let assoc = |x: usize, y: usize, z: usize| l.add(l.add(x, y), z) == l.add(x, l.add(y, z));
    (0..n)
        .filter(|&a| {
            (0..n).all(|x| (0..n).all(|y| assoc(a, x, y) && assoc(x, a, y) && assoc(x, y, a)))
        })
        .collect()
}

fn check_automorphism(l: &LoopTable, k: &[usize]) -> Result<(), LoopError> {
    let n = l.order();
    if k.len() != n {
        return Err(LoopError::NotPermutation);
    }
    let mut seen = vec![false; n];
    for &y in k {
        if y >= n || core::mem::replace(&mut seen[y], true) {
            return Err(LoopError::NotPermutation);
        }
    }
    let hom = (0..n).all(|x| (0..n).all(|y| k[l.add(x, y)] == l.add(k[x], k[y])));
    if hom {
        Ok(())
    } else {
        Err(LoopError::NotAutomorphism)
    }
}

fn check_nuclear(l: &LoopTable, k: &[usize], nuc: &[usize]) -> Result<(), LoopError> {
    check_automorphism(l, k)?;
    let mut in_nucleus = vec![false; l.order()];
    for &a in nuc {
        in_nucleus[a] = true;
    }
    if (0..l.order()).all(|x| in_nucleus[l.add(x, k[x])]) {
        Ok(())
    } else {
        Err(LoopError::NotNuclear)
    }
}

/// `k` is a loop automorphism with `x + k(x)` in the nucleus for all `x`.
pub fn is_nuclear_automorphism(l: &LoopTable, k: &[usize]) -> bool {
    check_nuclear(l, k, &nucleus(l)).is_ok()
}

/// The table `x * y = (x - k(x)) + k(y)` over a commutative Moufang loop.
///
/// The result is an idempotent quasigroup; it is Mendelsohn exactly when
/// `k^2 - k + I` vanishes.
pub fn affine_over_loop(l: &LoopTable, k: &[usize]) -> Result<CayleyTable, LoopError> {
    if !is_commutative_moufang(l) {
        return Err(LoopError::NotCML);
    }
    check_nuclear(l, k, &nucleus(l))?;
    let n = l.order();
    let i_minus_k: Vec<usize> = (0..n).map(|x| l.sub(x, k[x])).collect();
    let mut seen = vec![false; n];
    for &y in &i_minus_k {
        if core::mem::replace(&mut seen[y], true) {
            return Err(LoopError::IminusKNotBijective);
        }
    }
    Ok(CayleyTable::from_fn(n, |x, y| l.add(i_minus_k[x], k[y]))?)
}

/// Nuclear automorphisms `k` with `k(k(x)) = k(x) - x` for all `x`, found by
/// choosing images of a generating sequence and propagating them through the
/// operation.
///
/// Stops after `limit` solutions.
pub fn mendelsohn_automorphisms(l: &LoopTable, limit: usize) -> Vec<Vec<usize>> {
    let n = l.order();
    let mut s = AutSearch {
        l,
        order: (0..n).map(|x| element_order(l, x)).collect(),
        nucleus: nucleus(l),
        k: vec![UNSET; n],
        used: vec![false; n],
        trail: Vec::new(),
        limit,
        out: Vec::new(),
    };
    s.set(l.identity(), l.identity());
    let gens = loop_generators(l);
    s.run(&gens);
    s.out
}

const UNSET: usize = usize::MAX;

fn element_order(l: &LoopTable, x: usize) -> usize {
    let mut y = x;
    let mut m = 1;
    while y != l.identity() {
        y = l.add(y, x);
        m += 1;
    }
    m
}

fn loop_generators(l: &LoopTable) -> Vec<usize> {
    let n = l.order();
    let mut member = vec![false; n];
    member[l.identity()] = true;
    let mut list = vec![l.identity()];
    let mut gens = Vec::new();
    for g in 0..n {
        if member[g] {
            continue;
        }
        gens.push(g);
        member[g] = true;
        list.push(g);
        let mut i = 0;
        while i < list.len() {
            for j in 0..=i {
                let c = l.add(list[i], list[j]);
                if !core::mem::replace(&mut member[c], true) {
                    list.push(c);
                }
            }
            i += 1;
        }
    }
    gens
}

struct AutSearch<'a> {
    l: &'a LoopTable,
    order: Vec<usize>,
    nucleus: Vec<usize>,
    k: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
    limit: usize,
    out: Vec<Vec<usize>>,
}

impl AutSearch<'_> {
    fn set(&mut self, x: usize, y: usize) -> bool {
        if self.k[x] != UNSET {
            return self.k[x] == y;
        }
        if self.used[y] || self.order[x] != self.order[y] {
            return false;
        }
        self.k[x] = y;
        self.used[y] = true;
        self.trail.push(x);
        true
    }

    /// Sets `k(x) = y` and closes under additivity and `k(k(x)) = k(x) - x`.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let l = self.l;
        let mut p = self.trail.len();
        if !self.set(x, y) {
            return false;
        }
        while p < self.trail.len() {
            let u = self.trail[p];
            let ku = self.k[u];
            if !self.set(ku, l.sub(ku, u)) {
                return false;
            }
            for j in 0..=p {
                let w = self.trail[j];
                let kw = self.k[w];
                if !self.set(l.add(u, w), l.add(ku, kw)) || !self.set(l.add(w, u), l.add(kw, ku)) {
                    return false;
                }
            }
            p += 1;
        }
        true
    }

    fn undo(&mut self, len: usize) {
        for x in self.trail.drain(len..) {
            self.used[self.k[x]] = false;
            self.k[x] = UNSET;
        }
    }

    fn run(&mut self, gens: &[usize]) {
        if self.out.len() >= self.limit {
            return;
        }
        let Some((&g, rest)) = gens.split_first() else {
            if check_nuclear(self.l, &self.k, &self.nucleus).is_ok() {
                self.out.push(self.k.clone());
            }
            return;
        };
        if self.k[g] != UNSET {
            self.run(rest);
            return;
        }
        for w in 0..self.l.order() {
            let len = self.trail.len();
            if self.assign(g, w) {
                self.run(rest);
            }
            self.undo(len);
            if self.out.len() >= self.limit {
                return;
            }
        }
    }
}
