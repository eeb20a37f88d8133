//! Dense linear algebra over the coefficient field: incremental echelon
//! forms with tags, kernels and quotient coordinates.

use super::field::{Coeff, Field};

pub type Vector = Vec<Coeff>;

pub fn zeros(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zeros(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero(v: &[Coeff]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// `a += c b`.
pub fn axpy(a: &mut [Coeff], c: &Coeff, b: &[Coeff]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = &*x + &(c * y);
        }
    }
}

/// Rows in echelon form (distinct pivots, each row normalized at its pivot),
/// each carrying a tag that is transformed alongside it.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub field: Field,
    pub len: usize,
    pub tag_len: usize,
    rows: Vec<(usize, Vector, Vector)>,
}

impl Echelon {
    pub fn new(field: Field, len: usize, tag_len: usize) -> Echelon {
        Echelon { field, len, tag_len, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `(v - Σ c_r row_r, Σ c_r tag_r)` with the remainder zero on all pivots.
    pub fn reduce(&self, v: &[Coeff]) -> (Vector, Vector) {
        assert_eq!(v.len(), self.len, "vector has wrong length");
        let mut rem = v.to_vec();
        let mut acc = zeros(self.field, self.tag_len);
        for (p, row, tag) in &self.rows {
            let c = rem[*p].clone();
            if !c.is_zero() {
                axpy(&mut rem, &-&c, row);
                axpy(&mut acc, &c, tag);
            }
        }
        (rem, acc)
    }

    /// Inserts `v` with `tag`. Returns `None` when `v` was independent;
    /// otherwise `Some(tag - Σ c_r tag_r)` for `v = Σ c_r row_r`.
    pub fn insert(&mut self, v: &[Coeff], tag: &[Coeff]) -> Option<Vector> {
        assert_eq!(tag.len(), self.tag_len, "tag has wrong length");
        let (mut rem, acc) = self.reduce(v);
        let mut t = tag.to_vec();
        axpy(&mut t, &-&self.field.one(), &acc);
        match rem.iter().position(|c| !c.is_zero()) {
            None => Some(t),
            Some(p) => {
                let inv = rem[p].inv();
                rem.iter_mut().for_each(|c| *c = &*c * &inv);
                t.iter_mut().for_each(|c| *c = &*c * &inv);
                // Keep earlier rows reduced at the new pivot.
                for (_, row, tag) in self.rows.iter_mut() {
                    let c = row[p].clone();
                    if !c.is_zero() {
                        axpy(row, &-&c, &rem);
                        axpy(tag, &-&c, &t);
                    }
                }
                self.rows.push((p, rem, t));
                None
            }
        }
    }

    pub fn contains(&self, v: &[Coeff]) -> bool {
        is_zero(&self.reduce(v).0)
    }
}

/// Basis of `{c : Σ c_j cols[j] = 0}`.
pub fn kernel(field: Field, len: usize, cols: &[Vector]) -> Vec<Vector> {
    let n = cols.len();
    let mut e = Echelon::new(field, len, n);
    cols.iter().enumerate().filter_map(|(j, c)| e.insert(c, &unit(field, n, j))).collect()
}

pub fn rank(field: Field, len: usize, cols: &[Vector]) -> usize {
    let mut e = Echelon::new(field, len, 0);
    for c in cols {
        e.insert(c, &[]);
    }
    e.rank()
}

/// A quotient `Z / B` of subspaces of `k^len` with `B ⊆ Z`, with chosen
/// representatives of a basis of the quotient.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub reps: Vec<Vector>,
    ech: Echelon,
}

impl Quotient {
    pub fn new(field: Field, len: usize, z: &[Vector], b: &[Vector]) -> Quotient {
        let mut probe = Echelon::new(field, len, 0);
        for v in b {
            probe.insert(v, &[]);
        }
        let reps: Vec<Vector> = z.iter().filter(|v| probe.insert(v, &[]).is_none()).cloned().collect();
        let k = reps.len();
        let mut ech = Echelon::new(field, len, k);
        let zero = zeros(field, k);
        for v in b {
            ech.insert(v, &zero);
        }
        for (j, v) in reps.iter().enumerate() {
            ech.insert(v, &unit(field, k, j));
        }
        Quotient { reps, ech }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of `v`; `None` when `v ∉ Z`.
    pub fn coords(&self, v: &[Coeff]) -> Option<Vector> {
        let (rem, tag) = self.ech.reduce(v);
        is_zero(&rem).then_some(tag)
    }

    /// `Σ c_j reps_j`.
    pub fn lift(&self, c: &[Coeff]) -> Vector {
        let mut out = zeros(self.ech.field, self.ech.len);
        for (cj, r) in c.iter().zip(&self.reps) {
            axpy(&mut out, cj, r);
        }
        out
    }
}
