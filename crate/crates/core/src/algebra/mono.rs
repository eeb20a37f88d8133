//! Exponent vectors with a cached weighted degree, compared by weighted
//! graded reverse lexicographic order.

use std::cmp::Ordering;

pub const MAX_VARS: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    pub exps: [u16; MAX_VARS],
    pub deg: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { exps: [0; MAX_VARS], deg: 0 };

    pub fn new(exps: &[u16], weights: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut e = [0u16; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Mono { exps: e, deg: weighted(&e, weights) }
    }

    pub fn var(i: usize, weights: &[u32]) -> Mono {
        let mut e = [0u16; MAX_VARS];
        e[i] = 1;
        Mono { exps: e, deg: weights[i] }
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(o.exps.iter()) {
            *a += *b;
        }
        Mono { exps: e, deg: self.deg + o.deg }
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        let mut e = o.exps;
        for (a, b) in e.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        Mono { exps: e, deg: o.deg - self.deg }
    }

    pub fn lcm(&self, o: &Mono, weights: &[u32]) -> Mono {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(o.exps.iter()) {
            *a = (*a).max(*b);
        }
        Mono { exps: e, deg: weighted(&e, weights) }
    }

    pub fn gcd(&self, o: &Mono, weights: &[u32]) -> Mono {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(o.exps.iter()) {
            *a = (*a).min(*b);
        }
        Mono { exps: e, deg: weighted(&e, weights) }
    }

    /// Degree in the variables `range` (each counted with weight one).
    pub fn block_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    pub fn graded_degree(&self, grading: &[i32]) -> i64 {
        self.exps.iter().zip(grading.iter()).map(|(&e, &g)| e as i64 * g as i64).sum()
    }

    pub fn order(&self, o: &Mono) -> Ordering {
        match self.deg.cmp(&o.deg) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..MAX_VARS).rev() {
            if self.exps[i] != o.exps[i] {
                return o.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }
}

fn weighted(e: &[u16; MAX_VARS], weights: &[u32]) -> u32 {
    e.iter().zip(weights.iter()).map(|(&a, &w)| a as u32 * w).sum()
}
