//! Lifting, syzygies, minimal generators and free resolutions over a ring
//! context.

use super::gb::{GbEngine, Gb, Vector};
use super::matrix::Mat;
use super::poly::Poly;
use super::ring::{Ctx, RingCtx};
use crate::complexes::ChainComplex;
use crate::error::{Error, Result};

pub(crate) fn relation_vectors(ctx: &RingCtx, offset: usize, n: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for i in 0..n {
        for g in &ctx.gb {
            out.push(Vector::from_poly(offset + i, g));
        }
    }
    out
}

/// Solves `A X = b` for many right-hand sides against one Gröbner basis of
/// the columns of `A` (plus relations), tracking cofactors.
pub struct LiftSolver {
    ctx: Ctx,
    rows: usize,
    cols: usize,
    gb: Gb,
}

impl LiftSolver {
    pub fn new(a: &Mat, ctx: &Ctx) -> LiftSolver {
        let one = ctx.field().one();
        let mut e = GbEngine::new(&ctx.ring.weights, true);
        for j in 0..a.cols {
            let col: Vec<Poly> = a.col(j).iter().map(|p| ctx.nf(p)).collect();
            e.add(Vector::from_column(&col, 0), Vector::unit(j, one.clone()));
        }
        for v in relation_vectors(ctx, 0, a.rows) {
            e.add(v, Vector::zero());
        }
        e.complete();
        LiftSolver { ctx: ctx.clone(), rows: a.rows, cols: a.cols, gb: e.reduced() }
    }

    pub fn contains(&self, b: &[Poly]) -> bool {
        let v: Vec<Poly> = b.iter().map(|p| self.ctx.nf(p)).collect();
        self.gb.contains(&Vector::from_column(&v, 0))
    }

    pub fn solve(&self, b: &[Poly]) -> Result<Vec<Poly>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let v: Vec<Poly> = b.iter().map(|p| self.ctx.nf(p)).collect();
        let (r, pass) = self.gb.reduce(&Vector::from_column(&v, 0), &Vector::zero());
        if !r.is_zero() {
            return Err(Error::NotInImage);
        }
        Ok(pass.neg().to_column(0, self.cols).iter().map(|p| self.ctx.nf(p)).collect())
    }

    /// Column-by-column solution of `A X = B`.
    pub fn solve_matrix(&self, b: &Mat) -> Result<Mat> {
        let cols = (0..b.cols).map(|j| self.solve(&b.col(j))).collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_cols(self.cols, &cols))
    }
}

/// A solution `X` of `A X = b` in the context, computed by division against a
/// reduced Gröbner basis with cofactors.
pub fn lift(b: &[Poly], a: &Mat, ctx: &Ctx) -> Result<Vec<Poly>> {
    if b.iter().all(|p| ctx.nf(p).is_zero()) {
        return Ok(vec![Poly::zero(); a.cols]);
    }
    let x = LiftSolver::new(a, ctx).solve(b)?;
    debug_assert!(a.mul_vec(&x).iter().zip(b).all(|(l, r)| ctx.nf(&l.sub(r)).is_zero()));
    Ok(x)
}

pub fn lift_matrix(b: &Mat, a: &Mat, ctx: &Ctx) -> Result<Mat> {
    assert_eq!(a.rows, b.rows);
    if b.reduce(ctx).is_zero() {
        return Ok(Mat::zero(a.cols, b.cols));
    }
    let x = LiftSolver::new(a, ctx).solve_matrix(b)?;
    debug_assert!(a.mul(&x).sub(b).reduce(ctx).is_zero());
    Ok(x)
}

/// Generators of the kernel of `A`, not necessarily minimal.
pub fn syzygies(a: &Mat, ctx: &Ctx) -> Mat {
    let (m, n) = (a.rows, a.cols);
    let one = ctx.field().one();
    let mut e = GbEngine::new(&ctx.ring.weights, false);
    for j in 0..n {
        let col: Vec<Poly> = a.col(j).iter().map(|p| ctx.nf(p)).collect();
        let v = Vector::from_column(&col, 0).add(&Vector::unit(m + j, one.clone()));
        e.add(v, Vector::zero());
    }
    for v in relation_vectors(ctx, 0, m) {
        e.add(v, Vector::zero());
    }
    e.complete();
    let gb = e.reduced();
    let mut cols = Vec::new();
    for v in gb.vectors() {
        if v.min_pos().is_some_and(|p| p >= m) {
            let c: Vec<Poly> = v.to_column(m, n).iter().map(|p| ctx.nf(p)).collect();
            if c.iter().any(|p| !p.is_zero()) {
                cols.push(c);
            }
        }
    }
    Mat::from_cols(n, &cols)
}

/// Degree of a homogeneous column vector in a free module with the given
/// twists; `None` for the zero vector.
pub fn column_degree(col: &[Poly], twists: &[i32], grading: &[i32]) -> Option<i64> {
    col.iter().zip(twists).find_map(|(p, &t)| p.graded_degree(grading).map(|d| d - t as i64))
}

/// Minimal generators (graded Nakayama) of the submodule spanned by `cols`,
/// processed by increasing degree. Returns the kept columns, in that order,
/// with their degrees.
pub fn minimal_generators(cols: &[Vec<Poly>], twists: &[i32], ctx: &Ctx) -> (Vec<Vec<Poly>>, Vec<i64>) {
    let grading = ctx.ring.grading();
    let mut idx: Vec<(i64, usize)> = Vec::new();
    for (k, c) in cols.iter().enumerate() {
        let c: Vec<Poly> = c.iter().map(|p| ctx.nf(p)).collect();
        if let Some(d) = column_degree(&c, twists, &grading) {
            idx.push((d, k));
        }
    }
    idx.sort();
    let mut e = GbEngine::new(&ctx.ring.weights, false);
    for v in relation_vectors(ctx, 0, twists.len()) {
        e.add(v, Vector::zero());
    }
    e.complete();
    let mut kept = Vec::new();
    let mut degs = Vec::new();
    for (d, k) in idx {
        let c: Vec<Poly> = cols[k].iter().map(|p| ctx.nf(p)).collect();
        if e.add(Vector::from_column(&c, 0), Vector::zero()) {
            e.complete();
            kept.push(c);
            degs.push(d);
        }
    }
    (kept, degs)
}

/// Minimal generators of `ker A` where `A: F(src) -> F(tgt)` is homogeneous of
/// degree zero. Returns the syzygy matrix and the twists of its source.
pub fn syzygies_graded(a: &Mat, src: &[i32], ctx: &Ctx) -> (Mat, Vec<i32>) {
    let z = syzygies(a, ctx);
    let cols: Vec<Vec<Poly>> = (0..z.cols).map(|j| z.col(j)).collect();
    let (kept, degs) = minimal_generators(&cols, src, ctx);
    (Mat::from_cols(a.cols, &kept), degs.iter().map(|&d| -d as i32).collect())
}

/// Removes unit entries from a presentation without changing its cokernel.
pub fn prune_presentation(p: &Mat, tgt: &[i32], ctx: &Ctx) -> (Mat, Vec<i32>) {
    let mut p = p.reduce(ctx);
    let mut tgt = tgt.to_vec();
    loop {
        let mut found = None;
        'search: for j in 0..p.cols {
            for i in 0..p.rows {
                let e = p.get(i, j);
                if !e.is_zero() && e.is_constant() {
                    found = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((r, c)) = found else { break };
        let uinv = p.get(r, c).terms[0].1.inv();
        let rows: Vec<usize> = (0..p.rows).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..p.cols).filter(|&j| j != c).collect();
        let mut q = Mat::zero(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                let corr = p.get(i, c).mul(p.get(r, j)).scale(&uinv);
                q.set(a, b, ctx.nf(&p.get(i, j).sub(&corr)));
            }
        }
        tgt = rows.iter().map(|&i| tgt[i]).collect();
        p = q;
    }
    (p, tgt)
}

/// Minimal graded free resolution of `coker(pres)` with generators of the
/// target in degrees `-tgt_twists`. Over a quotient ring `max_len` bounds the
/// length; over a polynomial ring it may be omitted.
pub fn free_resolution(pres: &Mat, tgt_twists: &[i32], ctx: &Ctx, max_len: Option<usize>) -> Result<ChainComplex> {
    if max_len.is_none() && !ctx.is_polynomial() {
        return Err(Error::BudgetExceeded("resolutions over a quotient ring need a length bound".into()));
    }
    let grading = ctx.ring.grading();
    for j in 0..pres.cols {
        let col: Vec<Poly> = pres.col(j).iter().map(|p| ctx.nf(p)).collect();
        for p in &col {
            if !p.is_homogeneous(&grading) {
                return Err(Error::InhomogeneousInput(format!("presentation column {j}")));
            }
        }
    }
    let (p, tgt) = prune_presentation(pres, tgt_twists, ctx);
    let cols: Vec<Vec<Poly>> = (0..p.cols).map(|j| p.col(j)).collect();
    let (kept, degs) = minimal_generators(&cols, &tgt, ctx);
    let mut terms: Vec<Vec<i32>> = vec![tgt.clone()];
    let mut maps: Vec<Mat> = Vec::new();
    let limit = max_len.unwrap_or(usize::MAX);
    if !kept.is_empty() && limit >= 1 {
        maps.push(Mat::from_cols(tgt.len(), &kept));
        terms.push(degs.iter().map(|&d| -d as i32).collect());
        while maps.len() < limit {
            let last = maps.last().unwrap();
            let (z, tw) = syzygies_graded(last, terms.last().unwrap(), ctx);
            if z.cols == 0 {
                break;
            }
            maps.push(z);
            terms.push(tw);
        }
    }
    Ok(ChainComplex::from_resolution(ctx.clone(), terms, maps))
}

/// True when the Koszul complex on `f` has vanishing `H_1`, which for
/// homogeneous elements of positive degree means `f` is a regular sequence.
pub fn is_regular_sequence(f: &[Poly], ctx: &Ctx) -> bool {
    if f.is_empty() {
        return true;
    }
    let k = crate::complexes::koszul(f, ctx);
    crate::complexes::is_exact_at(&k.complex, -1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::ring::PolyRing;
    use std::sync::Arc;

    fn q2() -> Ctx {
        RingCtx::polynomial(Arc::new(PolyRing::new(Field::prime(101).unwrap(), &["x", "y"], &[1, 1]).unwrap()))
    }

    fn row(ctx: &Ctx, s: &[&str]) -> Mat {
        Mat::from_rows(vec![s.iter().map(|t| ctx.parse(t).unwrap()).collect()])
    }

    #[test]
    fn lift_examples() {
        let ctx = q2();
        let a = row(&ctx, &["x", "y"]);
        let x = lift(&[ctx.parse("x^2").unwrap()], &a, &ctx).unwrap();
        assert_eq!(x, vec![ctx.parse("x").unwrap(), Poly::zero()]);
        let z = lift(&[Poly::zero()], &a, &ctx).unwrap();
        assert!(z.iter().all(|p| p.is_zero()));
        assert_eq!(lift(&[ctx.one()], &a, &ctx), Err(Error::NotInImage));
    }

    #[test]
    fn koszul_syzygy() {
        let ctx = q2();
        let a = row(&ctx, &["x", "y"]);
        let z = syzygies(&a, &ctx);
        assert_eq!(z.cols, 1);
        assert!(a.mul(&z).is_zero());
        let c = z.col(0);
        let expect = [ctx.parse("-y").unwrap(), ctx.parse("x").unwrap()];
        let neg: Vec<Poly> = expect.iter().map(|p| p.neg()).collect();
        assert!(c == expect || c == neg);
    }

    #[test]
    fn identity_has_no_syzygies() {
        let ctx = q2();
        let z = syzygies(&Mat::identity(3, ctx.field()), &ctx);
        assert_eq!(z.cols, 0);
    }

    #[test]
    fn syzygies_over_quotient() {
        let base = q2();
        let ctx = base.quotient(&[base.parse("x^2").unwrap(), base.parse("y^2").unwrap()]);
        let a = row(&ctx, &["x", "y"]);
        let z = syzygies(&a, &ctx);
        assert!(a.mul(&z).reduce(&ctx).is_zero());
        let solver = LiftSolver::new(&z, &ctx);
        for want in [["x", "0"], ["0", "y"], ["-y", "x"]] {
            let v: Vec<Poly> = want.iter().map(|s| ctx.parse(s).unwrap()).collect();
            assert!(solver.contains(&v), "{want:?} not generated");
        }
        let (m, tw) = syzygies_graded(&a, &[-1, -1], &ctx);
        assert_eq!(m.cols, 3);
        assert_eq!(tw, vec![-2, -2, -2]);
    }

    #[test]
    fn resolutions() {
        let ctx = q2();
        let a = row(&ctx, &["x", "y"]);
        let r = free_resolution(&a, &[0], &ctx, None).unwrap();
        assert_eq!(r.resolution_ranks(), vec![1, 2, 1]);
        let free = free_resolution(&Mat::zero(2, 0), &[0, 0], &ctx, None).unwrap();
        assert_eq!(free.resolution_ranks(), vec![2]);
        let rq = ctx.quotient(&[ctx.parse("x^2").unwrap(), ctx.parse("y^2").unwrap()]);
        assert!(free_resolution(&a, &[0], &rq, None).is_err());
        let k = free_resolution(&row(&rq, &["x", "y"]), &[0], &rq, Some(10)).unwrap();
        assert_eq!(k.resolution_ranks(), (1..=11).collect::<Vec<_>>());
        assert!(k.check_d_squared().is_ok());
    }

    #[test]
    fn pruning_units() {
        let ctx = q2();
        let p = Mat::from_rows(vec![vec![ctx.one(), ctx.parse("x").unwrap()], vec![ctx.parse("y").unwrap(), Poly::zero()]]);
        let (q, t) = prune_presentation(&p, &[0, 1], &ctx);
        assert_eq!((q.rows, q.cols), (1, 1));
        assert_eq!(t, vec![1]);
        assert_eq!(ctx.show(q.get(0, 0)), "-x*y");
    }

    #[test]
    fn regular_sequences() {
        let ctx = q2();
        let p = |s: &str| ctx.parse(s).unwrap();
        assert!(is_regular_sequence(&[p("x^2"), p("y^2")], &ctx));
        assert!(!is_regular_sequence(&[p("x"), p("x")], &ctx));
        assert!(!is_regular_sequence(&[p("x*y"), p("x^2")], &ctx));
    }
}
