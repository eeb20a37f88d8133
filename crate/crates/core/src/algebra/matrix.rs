//! Dense polynomial matrices acting on column vectors.

use super::field::{Coeff, Field};
use super::poly::Poly;
use super::ring::{PolyRing, RingCtx};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Poly>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Mat {
        Mat::scalar(n, &Poly::constant(field.one()))
    }

    pub fn scalar(n: usize, p: &Poly) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(rows: usize, cols: &[Vec<Poly>]) -> Mat {
        let mut m = Mat::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, p) in c.iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn col(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Mat::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert!(self.rows == o.rows && self.cols == o.cols, "dimension mismatch in sum");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert!(self.rows == o.rows && self.cols == o.cols, "dimension mismatch in difference");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Mat {
        self.map(|p| p.neg())
    }

    pub fn scale(&self, c: &Coeff) -> Mat {
        self.map(|p| p.scale(c))
    }

    pub fn scale_poly(&self, q: &Poly) -> Mat {
        self.map(|p| p.mul(q))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn reduce(&self, ctx: &RingCtx) -> Mat {
        if ctx.gb.is_empty() {
            return self.clone();
        }
        self.map(|p| ctx.nf(p))
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Kronecker product; row index of the result is `(i, k)` with `i` outer.
    pub fn kron(&self, o: &Mat) -> Mat {
        let mut out = Mat::zero(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(parts: &[&Mat]) -> Mat {
        let rows = parts.first().map(|m| m.rows).unwrap_or(0);
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zero(rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            out.put_block(0, off, m);
            off += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Mat]) -> Mat {
        let cols = parts.first().map(|m| m.cols).unwrap_or(0);
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Mat::zero(rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            out.put_block(off, 0, m);
            off += m.rows;
        }
        out
    }

    /// Assembles a block matrix from a grid of optional blocks with given
    /// row and column block sizes.
    pub fn blocks(row_sizes: &[usize], col_sizes: &[usize], grid: &[Vec<Option<Mat>>]) -> Mat {
        let mut out = Mat::zero(row_sizes.iter().sum(), col_sizes.iter().sum());
        let mut r0 = 0;
        for (bi, rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, cs) in col_sizes.iter().enumerate() {
                if let Some(b) = &grid[bi][bj] {
                    assert!(b.rows == *rs && b.cols == *cs, "block size mismatch at ({bi},{bj})");
                    out.put_block(r0, c0, b);
                }
                c0 += cs;
            }
            r0 += rs;
        }
        out
    }

    pub fn block_diag(parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zero(rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.put_block(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    pub fn put_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Mat {
        let mut out = Mat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut out = Mat::zero(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Location of the first entry (row-major) that differs.
    pub fn first_difference(&self, o: &Mat) -> Option<(usize, usize)> {
        if self.rows != o.rows || self.cols != o.cols {
            return Some((usize::MAX, usize::MAX));
        }
        (0..self.data.len()).find(|&k| self.data[k] != o.data[k]).map(|k| (k / self.cols.max(1), k % self.cols.max(1)))
    }

    pub fn to_strings(&self, ring: &PolyRing) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string_in(ring)).collect()).collect()
    }

    pub fn parse(rows: &[Vec<String>], ring: &PolyRing) -> Result<Mat> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            out.push(r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?);
        }
        let c = out.first().map(|v| v.len()).unwrap_or(0);
        if out.iter().any(|v| v.len() != c) {
            return Err(Error::input("matrix rows have different lengths"));
        }
        Ok(Mat::from_rows(out))
    }

    /// Entry `(a, b)` must be homogeneous of degree `tgt[a] - src[b] + shift`.
    pub fn check_homogeneous(&self, src: &[i32], tgt: &[i32], shift: i64, grading: &[i32]) -> Result<()> {
        assert!(src.len() == self.cols && tgt.len() == self.rows);
        for a in 0..self.rows {
            for b in 0..self.cols {
                let p = self.get(a, b);
                if p.is_zero() {
                    continue;
                }
                let want = tgt[a] as i64 - src[b] as i64 + shift;
                let ok = p.is_homogeneous(grading) && p.graded_degree(grading) == Some(want);
                if !ok {
                    return Err(Error::InhomogeneousInput(format!("entry ({a},{b}) is not homogeneous of degree {want}")));
                }
            }
        }
        Ok(())
    }
}

/// Generator degrees forced by the columns of a homogeneous matrix: the
/// returned twists `s` satisfy `deg A[a][b] = tgt[a] - s[b]`. Zero columns
/// get twist 0.
pub fn column_twists(a: &Mat, tgt: &[i32], grading: &[i32]) -> Vec<i32> {
    (0..a.cols)
        .map(|b| {
            (0..a.rows)
                .find_map(|r| a.get(r, b).graded_degree(grading).map(|d| tgt[r] - d as i32))
                .unwrap_or(0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn ring() -> Arc<PolyRing> {
        Arc::new(PolyRing::new(Field::prime(101).unwrap(), &["x", "y"], &[1, 1]).unwrap())
    }

    fn m(r: &PolyRing, rows: &[&[&str]]) -> Mat {
        Mat::parse(&rows.iter().map(|v| v.iter().map(|s| s.to_string()).collect()).collect::<Vec<_>>(), r).unwrap()
    }

    #[test]
    fn product_and_transpose() {
        let r = ring();
        let a = m(&r, &[&["x", "y"]]);
        let z = m(&r, &[&["-y"], &["x"]]);
        assert!(a.mul(&z).is_zero());
        assert_eq!(a.transpose().mul(&a).to_strings(&r)[0], vec!["x^2", "x*y"]);
    }

    #[test]
    fn kronecker_ordering() {
        let r = ring();
        let a = m(&r, &[&["1", "0"], &["0", "2"]]);
        let b = m(&r, &[&["x", "y"]]);
        let k = a.kron(&b);
        assert_eq!(k.to_strings(&r), vec![vec!["x", "y", "0", "0"], vec!["0", "0", "2*x", "2*y"]]);
    }

    #[test]
    fn column_twists_from_degrees() {
        let r = ring();
        let a = m(&r, &[&["x", "y^2"]]);
        assert_eq!(column_twists(&a, &[0], &[1, 1]), vec![-1, -2]);
        a.check_homogeneous(&[-1, -2], &[0], 0, &[1, 1]).unwrap();
        assert!(a.check_homogeneous(&[-1, -1], &[0], 0, &[1, 1]).is_err());
    }
}
