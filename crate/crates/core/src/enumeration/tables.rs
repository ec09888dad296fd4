//! Precomputed arithmetic for the searches over one group.

use alloc::vec::Vec;

use crate::algebra::AbelianGroup;

/// Largest order for which the full addition table is stored.
const ADD_TABLE_BOUND: usize = 1024;

pub(crate) struct Tables<'a> {
    pub g: &'a AbelianGroup,
    n: usize,
    add: Vec<u16>,
    neg: Vec<u32>,
    pub order: Vec<u64>,
}

impl<'a> Tables<'a> {
    pub fn new(g: &'a AbelianGroup) -> Self {
        let n = g.order();
        let add = if n <= ADD_TABLE_BOUND {
            let mut t = Vec::with_capacity(n * n);
            for x in 0..n {
                t.extend((0..n).map(|y| g.add_idx(x, y) as u16));
            }
            t
        } else {
            Vec::new()
        };
        Tables {
            g,
            n,
            add,
            neg: g.elements().map(|x| g.neg_idx(x) as u32).collect(),
            order: g.elements().map(|x| g.element_order(x)).collect(),
        }
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        if self.add.is_empty() {
            self.g.add_idx(x, y)
        } else {
            self.add[x * self.n + y] as usize
        }
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg[y] as usize)
    }

    /// `a x + b y` for `a, b < t`, tabulated row by row: entry `a t + b`.
    pub fn combinations(&self, x: usize, y: usize, t: usize, out: &mut Vec<usize>) {
        out.clear();
        let mut ax = 0;
        for _ in 0..t {
            let mut z = ax;
            for _ in 0..t {
                out.push(z);
                z = self.add(z, y);
            }
            ax = self.add(ax, x);
        }
    }
}
