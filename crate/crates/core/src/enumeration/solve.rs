//! Automorphisms `k` of an abelian group with `k^2 - k + I = 0`.

use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use super::tables::Tables;
use crate::algebra::{AbelianGroup, GroupAutomorphism};
use crate::par;

const UNSET: usize = usize::MAX;

/// Partial solution on a `k`-invariant subgroup, grown one canonical
/// generator at a time.
#[derive(Clone)]
struct Partial<'a> {
    t: &'a Tables<'a>,
    k: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
    gens: Vec<usize>,
}

impl<'a> Partial<'a> {
    fn new(t: &'a Tables<'a>) -> Self {
        let n = t.g.order();
        let mut p = Partial {
            t,
            k: vec![UNSET; n],
            used: vec![false; n],
            trail: Vec::with_capacity(n),
            gens: Vec::new(),
        };
        p.set(0, 0);
        p
    }

    fn set(&mut self, x: usize, y: usize) -> bool {
        if self.k[x] != UNSET {
            return self.k[x] == y;
        }
        if self.used[y] {
            return false;
        }
        self.k[x] = y;
        self.used[y] = true;
        self.trail.push(x);
        true
    }

    /// Sets `k(g) = w`, hence `k(w) = w - g`, and closes under addition.
    fn extend(&mut self, g: usize, w: usize) -> bool {
        let t = self.t;
        let old = self.trail.len();
        let old_gens = self.gens.len();
        if !self.set(g, w) || !self.set(w, t.sub(w, g)) {
            return false;
        }
        self.gens.push(g);
        self.gens.push(w);
        for p in 0..old {
            let u = self.trail[p];
            for i in old_gens..self.gens.len() {
                let s = self.gens[i];
                if !self.set(t.add(u, s), t.add(self.k[u], self.k[s])) {
                    return false;
                }
            }
        }
        let mut p = old;
        while p < self.trail.len() {
            let u = self.trail[p];
            for i in 0..self.gens.len() {
                let s = self.gens[i];
                if !self.set(t.add(u, s), t.add(self.k[u], self.k[s])) {
                    return false;
                }
            }
            p += 1;
        }
        true
    }

    fn undo(&mut self, len: usize, gens: usize) {
        for x in self.trail.drain(len..) {
            self.used[self.k[x]] = false;
            self.k[x] = UNSET;
        }
        self.gens.truncate(gens);
    }

    fn pivot(&self) -> Option<usize> {
        let g = self.t.g;
        (0..g.rank())
            .map(|j| g.generator(j))
            .find(|&e| self.k[e] == UNSET)
    }

    fn candidates(&self, g: usize) -> impl Iterator<Item = usize> + '_ {
        let order = &self.t.order;
        let og = order[g];
        (0..self.t.g.order()).filter(move |&w| self.k[w] == UNSET && order[w] == og)
    }

    /// Whether `k(g) = w` extends `k` from `U` to `U + <g, w>`, judged on the
    /// combinations `a g + b w` alone: those inside `U` must map to
    /// `a w + b (w - g)` under the current `k`, and the others must map
    /// outside `U`. Skipped when that is no cheaper than closing.
    fn consistent(&self, g: usize, w: usize, c1: &mut Vec<usize>, c2: &mut Vec<usize>) -> bool {
        let o = self.t.order[g] as usize;
        if o * o > self.k.len() {
            return true;
        }
        self.t.combinations(g, w, o, c1);
        self.t.combinations(w, self.t.sub(w, g), o, c2);
        c1.iter().zip(c2.iter()).all(|(&z, &kz)| match self.k[z] {
            UNSET => self.k[kz] == UNSET,
            v => v == kz,
        })
    }

    /// Depth-first completion; false once `found` passes `cap`.
    fn collect(
        &mut self,
        out: &mut Vec<GroupAutomorphism>,
        found: &AtomicUsize,
        cap: usize,
    ) -> bool {
        let Some(g) = self.pivot() else {
            if found.fetch_add(1, Ordering::Relaxed) >= cap {
                return false;
            }
            out.push(GroupAutomorphism::from_images_unchecked(self.t.g, &self.k));
            return true;
        };
        let (mut c1, mut c2) = (Vec::new(), Vec::new());
        let cands: Vec<usize> = self
            .candidates(g)
            .filter(|&w| self.consistent(g, w, &mut c1, &mut c2))
            .collect();
        for w in cands {
            if found.load(Ordering::Relaxed) > cap {
                return false;
            }
            let (len, gens) = (self.trail.len(), self.gens.len());
            let ok = !self.extend(g, w) || self.collect(out, found, cap);
            self.undo(len, gens);
            if !ok {
                return false;
            }
        }
        true
    }
}

/// The solution count passed the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct TooMany;

/// All solutions, sorted by matrix, via invariant-subgroup extension.
///
/// With `U` the current domain, the pivot is the first canonical generator
/// `g` outside `U` and each candidate `w` for `k(g)` has the order of `g`.
/// Setting `k(w) = w - g` keeps the domain `k`-invariant, and closing under
/// addition detects inconsistent or non-injective extensions. Each solution
/// is reached exactly once, by the images of its pivots.
///
/// Fails once more than `cap` solutions have been found.
pub(crate) fn structured(g: &AbelianGroup, cap: usize) -> Result<Vec<GroupAutomorphism>, TooMany> {
    let tables = Tables::new(g);
    let root = Partial::new(&tables);
    let Some(g0) = root.pivot() else {
        return Ok(vec![GroupAutomorphism::identity(g)]);
    };
    let cands: Vec<usize> = root.candidates(g0).collect();
    let found = AtomicUsize::new(0);
    let parts: Vec<Option<Vec<GroupAutomorphism>>> = par::map(cands.len(), |i| {
        let mut p = root.clone();
        let mut out = Vec::new();
        let ok = !p.extend(g0, cands[i]) || p.collect(&mut out, &found, cap);
        ok.then_some(out)
    });
    let mut out: Vec<GroupAutomorphism> = Vec::new();
    for part in parts {
        out.extend(part.ok_or(TooMany)?);
    }
    out.sort_unstable();
    Ok(out)
}

/// All solutions by scanning matrix columns.
///
/// Column `j` ranges over the elements whose order divides `d_j`. As soon as
/// every column in the support of column `i` is fixed, `f(A) e_i = 0` is
/// checked.
pub(crate) fn brute(g: &AbelianGroup) -> Vec<GroupAutomorphism> {
    let m = g.rank();
    if m == 0 {
        return vec![GroupAutomorphism::identity(g)];
    }
    let cols: Vec<Vec<usize>> = g
        .factors()
        .iter()
        .map(|&d| {
            g.elements()
                .filter(|&x| d % g.element_order(x) == 0)
                .collect()
        })
        .collect();
    let support: Vec<Vec<usize>> = g
        .elements()
        .map(|x| (0..m).filter(|&i| g.coordinate(x, i) != 0).collect())
        .collect();
    let maps: Vec<Vec<usize>> = par::map(cols[0].len(), |i0| {
        let mut a = vec![0usize; m];
        a[0] = cols[0][i0];
        let mut out = Vec::new();
        brute_rec(g, &cols, &support, &mut a, 1, &mut out);
        out
    })
    .concat();
    let mut sols: Vec<GroupAutomorphism> = maps
        .into_iter()
        .filter_map(|a| {
            let images: Vec<usize> = g.elements().map(|x| apply_cols(g, &a, x)).collect();
            GroupAutomorphism::from_images(g, &images).ok()
        })
        .collect();
    sols.sort_unstable();
    sols
}

fn apply_cols(g: &AbelianGroup, a: &[usize], x: usize) -> usize {
    let mut y = 0;
    for (j, &col) in a.iter().enumerate() {
        let c = g.coordinate(x, j);
        if c != 0 {
            y = g.add_idx(y, g.smul_idx(c as i64, col));
        }
    }
    y
}

/// `f(A) e_i = 0` for every `i < fixed` whose column support is below `fixed`.
fn columns_ok(g: &AbelianGroup, support: &[Vec<usize>], a: &[usize], fixed: usize) -> bool {
    (0..fixed).all(|i| {
        let col = a[i];
        if support[col].iter().any(|&l| l >= fixed) {
            return true;
        }
        let kk = apply_cols(g, &a[..fixed], col);
        g.add_idx(g.sub_idx(kk, col), g.generator(i)) == 0
    })
}

fn brute_rec(
    g: &AbelianGroup,
    cols: &[Vec<usize>],
    support: &[Vec<usize>],
    a: &mut Vec<usize>,
    j: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if !columns_ok(g, support, a, j) {
        return;
    }
    if j == a.len() {
        out.push(a.clone());
        return;
    }
    for &c in &cols[j] {
        a[j] = c;
        brute_rec(g, cols, support, a, j + 1, out);
    }
}
