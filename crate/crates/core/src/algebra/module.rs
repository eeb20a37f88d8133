//! Ideals and finitely presented graded modules: quotients, intersections,
//! saturation, annihilators and radical membership.

use std::sync::Arc;

use super::gb::{GbEngine, Vector};
use super::matrix::Mat;
use super::ops::{minimal_generators, syzygies, LiftSolver};
use super::poly::Poly;
use super::ring::Ctx;
use crate::error::{Error, Result};

pub const DEFAULT_SATURATION_CAP: usize = 64;

/// `coker(rel: F(src) -> F(tgt))`; generator `i` of the target has degree
/// `-tgt[i]`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub ctx: Ctx,
    pub tgt: Vec<i32>,
    pub rel: Mat,
}

/// An ideal of a ring context, by generators.
#[derive(Clone, Debug)]
pub struct Ideal {
    pub ctx: Ctx,
    pub gens: Vec<Poly>,
}

fn cols_of(m: &Mat) -> Vec<Vec<Poly>> {
    (0..m.cols).map(|j| m.col(j)).collect()
}

/// Columns of `a` spanning the same submodule, minimal when the ring grading
/// makes them homogeneous.
fn trim(cols: Vec<Vec<Poly>>, rows: usize, twists: &[i32], ctx: &Ctx) -> Mat {
    let g = ctx.ring.grading();
    let homogeneous = cols.iter().all(|c| {
        let mut deg = None;
        c.iter().zip(twists).all(|(p, &t)| {
            if p.is_zero() {
                return true;
            }
            if !p.is_homogeneous(&g) {
                return false;
            }
            let d = p.graded_degree(&g).unwrap() - t as i64;
            match deg {
                None => {
                    deg = Some(d);
                    true
                }
                Some(e) => e == d,
            }
        })
    });
    if homogeneous {
        let (kept, _) = minimal_generators(&cols, twists, ctx);
        return Mat::from_cols(rows, &kept);
    }
    let mut e = GbEngine::new(&ctx.ring.weights, false);
    for i in 0..rows {
        for r in &ctx.gb {
            e.add(Vector::from_poly(i, r), Vector::zero());
        }
    }
    e.complete();
    let mut kept = Vec::new();
    for c in cols {
        let c: Vec<Poly> = c.iter().map(|p| ctx.nf(p)).collect();
        if e.add(Vector::from_column(&c, 0), Vector::zero()) {
            e.complete();
            kept.push(c);
        }
    }
    Mat::from_cols(rows, &kept)
}

/// Submodule-level operations on `F = ⊕ S(twists)`, submodules given by
/// generating columns.
pub mod submodule {
    use super::*;

    pub fn contains(u: &Mat, v: &[Poly], ctx: &Ctx) -> bool {
        LiftSolver::new(u, ctx).contains(v)
    }

    /// `a ⊆ b`.
    pub fn is_subset(a: &Mat, b: &Mat, ctx: &Ctx) -> bool {
        let s = LiftSolver::new(b, ctx);
        (0..a.cols).all(|j| s.contains(&a.col(j)))
    }

    /// `{v : g v ∈ U}`.
    pub fn quotient_by_element(u: &Mat, g: &Poly, twists: &[i32], ctx: &Ctx) -> Mat {
        let n = u.rows;
        let gi = Mat::scalar(n, g);
        let big = Mat::hstack(&[&gi, u]);
        let z = syzygies(&big, ctx);
        let cols: Vec<Vec<Poly>> = (0..z.cols).map(|j| z.col(j)[..n].to_vec()).collect();
        let mut all = cols;
        all.extend(cols_of(u));
        trim(all, n, twists, ctx)
    }

    pub fn intersect(a: &Mat, b: &Mat, twists: &[i32], ctx: &Ctx) -> Mat {
        let n = a.rows;
        let big = Mat::hstack(&[a, &b.neg()]);
        let z = syzygies(&big, ctx);
        let top = Mat::from_cols(a.cols, &(0..z.cols).map(|j| z.col(j)[..a.cols].to_vec()).collect::<Vec<_>>());
        let prod = a.mul(&top).reduce(ctx);
        trim(cols_of(&prod), n, twists, ctx)
    }

    /// `(U : J) = {v : J v ⊆ U}`.
    pub fn quotient_by_ideal(u: &Mat, j: &[Poly], twists: &[i32], ctx: &Ctx) -> Mat {
        let mut acc: Option<Mat> = None;
        for g in j {
            let q = quotient_by_element(u, g, twists, ctx);
            acc = Some(match acc {
                None => q,
                Some(a) => intersect(&a, &q, twists, ctx),
            });
        }
        acc.unwrap_or_else(|| Mat::identity(u.rows, ctx.field()))
    }

    /// `(U : J^∞)` and the number of quotient steps `s` with
    /// `(U : J^∞) = (U : J^s)`.
    pub fn saturate(u: &Mat, j: &[Poly], twists: &[i32], ctx: &Ctx, cap: usize) -> Result<(Mat, usize)> {
        let mut cur = u.clone();
        for s in 0..cap {
            let next = quotient_by_ideal(&cur, j, twists, ctx);
            if is_subset(&next, &cur, ctx) {
                return Ok((cur, s));
            }
            cur = next;
        }
        Err(Error::NonTermination(cap))
    }
}

impl Presentation {
    pub fn new(ctx: Ctx, tgt: Vec<i32>, rel: Mat) -> Presentation {
        assert_eq!(rel.rows, tgt.len());
        Presentation { ctx, tgt, rel }
    }

    pub fn free(ctx: Ctx, twists: Vec<i32>) -> Presentation {
        let n = twists.len();
        Presentation::new(ctx, twists, Mat::zero(n, 0))
    }

    /// `ctx / (gens)` as a cyclic module generated in degree 0.
    pub fn cyclic(ctx: Ctx, gens: &[Poly]) -> Presentation {
        let rel = Mat::from_rows(vec![gens.to_vec()]);
        let rel = if gens.is_empty() { Mat::zero(1, 0) } else { rel };
        Presentation::new(ctx, vec![0], rel)
    }

    pub fn rank(&self) -> usize {
        self.tgt.len()
    }

    pub fn is_zero(&self) -> bool {
        let s = LiftSolver::new(&self.rel, &self.ctx);
        let one = self.ctx.one();
        (0..self.rank()).all(|i| {
            let mut e = vec![Poly::zero(); self.rank()];
            e[i] = one.clone();
            s.contains(&e)
        })
    }

    /// Same module over a context with extra relations.
    pub fn over(&self, ctx: Ctx) -> Presentation {
        Presentation::new(ctx.clone(), self.tgt.clone(), self.rel.reduce(&ctx))
    }

    pub fn annihilator(&self) -> Ideal {
        annihilator(self)
    }

    /// Saturation with respect to `j`: the presentation of `F / (U : j^∞)`
    /// together with the number of quotient steps used.
    pub fn saturate(&self, j: &Ideal, cap: usize) -> Result<(Presentation, usize)> {
        let (u, s) = submodule::saturate(&self.rel, &j.gens, &self.tgt, &self.ctx, cap)?;
        Ok((Presentation::new(self.ctx.clone(), self.tgt.clone(), u), s))
    }
}

impl Ideal {
    pub fn new(ctx: Ctx, gens: Vec<Poly>) -> Ideal {
        let gens = gens.iter().map(|p| ctx.nf(p)).filter(|p| !p.is_zero()).collect();
        Ideal { ctx, gens }
    }

    pub fn unit(ctx: Ctx) -> Ideal {
        let one = ctx.one();
        Ideal::new(ctx, vec![one])
    }

    pub fn zero(ctx: Ctx) -> Ideal {
        Ideal { ctx, gens: Vec::new() }
    }

    fn as_row(&self) -> Mat {
        if self.gens.is_empty() {
            Mat::zero(1, 0)
        } else {
            Mat::from_rows(vec![self.gens.clone()])
        }
    }

    fn from_row(ctx: &Ctx, m: &Mat) -> Ideal {
        Ideal::new(ctx.clone(), m.row(0))
    }

    pub fn contains(&self, p: &Poly) -> bool {
        submodule::contains(&self.as_row(), &[p.clone()], &self.ctx)
    }

    pub fn is_unit(&self) -> bool {
        self.contains(&self.ctx.one())
    }

    pub fn is_subset(&self, o: &Ideal) -> bool {
        submodule::is_subset(&self.as_row(), &o.as_row(), &self.ctx)
    }

    pub fn equals(&self, o: &Ideal) -> bool {
        self.is_subset(o) && o.is_subset(self)
    }

    pub fn add(&self, o: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(o.gens.iter().cloned());
        Ideal::new(self.ctx.clone(), g).trimmed()
    }

    pub fn trimmed(&self) -> Ideal {
        Ideal::from_row(&self.ctx, &trim(cols_of(&self.as_row()), 1, &[0], &self.ctx))
    }

    pub fn intersect(&self, o: &Ideal) -> Ideal {
        Ideal::from_row(&self.ctx, &submodule::intersect(&self.as_row(), &o.as_row(), &[0], &self.ctx))
    }

    pub fn quotient(&self, o: &Ideal) -> Ideal {
        Ideal::from_row(&self.ctx, &submodule::quotient_by_ideal(&self.as_row(), &o.gens, &[0], &self.ctx))
    }

    pub fn saturate(&self, o: &Ideal, cap: usize) -> Result<Ideal> {
        let (u, _) = submodule::saturate(&self.as_row(), &o.gens, &[0], &self.ctx, cap)?;
        Ok(Ideal::from_row(&self.ctx, &u))
    }

    /// Reduced Gröbner basis of the ideal plus the context relations, printed.
    pub fn gb_strings(&self) -> Vec<String> {
        let mut all = self.ctx.relations.clone();
        all.extend(self.gens.iter().cloned());
        super::gb::ideal_groebner(&all, &self.ctx.ring.weights).iter().map(|p| self.ctx.show(p)).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.gens.iter().map(|p| self.ctx.show(p)).collect()
    }

    /// `g ∈ √(I + relations)`, decided by `1 ∈ I + (1 - t g)` in a ring with
    /// one extra variable `t`.
    pub fn radical_contains(&self, g: &Poly) -> bool {
        let ring = Arc::new(self.ctx.ring.with_extra_var("t_rab", 1));
        let w = &ring.weights;
        let t = ring.var(ring.nvars() - 1);
        let mut gens: Vec<Poly> = self.ctx.relations.iter().map(|p| p.reweight(w)).collect();
        gens.extend(self.gens.iter().map(|p| p.reweight(w)));
        gens.push(ring.one().sub(&t.mul(&g.reweight(w))));
        let gb = super::gb::ideal_groebner(&gens, w);
        gb.first().is_some_and(|p| p.terms[0].0.is_one())
    }

    pub fn radical_subset(&self, o: &Ideal) -> bool {
        self.gens.iter().all(|g| o.radical_contains(g))
    }

    pub fn radical_equals(&self, o: &Ideal) -> bool {
        self.radical_subset(o) && o.radical_subset(self)
    }

    /// The same generators viewed in another context over a ring that
    /// extends this one by appended variables.
    pub fn extend_to(&self, ctx: &Ctx) -> Ideal {
        Ideal::new(ctx.clone(), self.gens.iter().map(|p| p.reweight(&ctx.ring.weights)).collect())
    }
}

/// Exact annihilator: the intersection over generators `e_k` of `(U : e_k)`.
pub fn annihilator(m: &Presentation) -> Ideal {
    let ctx = &m.ctx;
    let n = m.rank();
    let mut acc: Option<Ideal> = None;
    for k in 0..n {
        let mut e = Mat::zero(n, 1);
        e.set(k, 0, ctx.one());
        let big = Mat::hstack(&[&e, &m.rel]);
        let z = syzygies(&big, ctx);
        let i = Ideal::new(ctx.clone(), z.row(0)).trimmed();
        acc = Some(match acc {
            None => i,
            Some(a) => a.intersect(&i),
        });
    }
    acc.unwrap_or_else(|| Ideal::unit(ctx.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::ring::{PolyRing, RingCtx};

    fn q2() -> Ctx {
        RingCtx::polynomial(Arc::new(PolyRing::new(Field::prime(101).unwrap(), &["x", "y"], &[1, 1]).unwrap()))
    }

    fn ideal(ctx: &Ctx, g: &[&str]) -> Ideal {
        Ideal::new(ctx.clone(), g.iter().map(|s| ctx.parse(s).unwrap()).collect())
    }

    #[test]
    fn quotient_and_intersection() {
        let ctx = q2();
        let i = ideal(&ctx, &["x^2", "x*y"]);
        let q = i.quotient(&ideal(&ctx, &["x"]));
        assert!(q.equals(&ideal(&ctx, &["x", "y"])));
        let a = ideal(&ctx, &["x"]).intersect(&ideal(&ctx, &["y"]));
        assert!(a.equals(&ideal(&ctx, &["x*y"])));
    }

    #[test]
    fn saturation_strips_torsion() {
        let ctx = q2();
        let i = ideal(&ctx, &["x^2", "x*y"]);
        let s = i.saturate(&ideal(&ctx, &["x", "y"]), DEFAULT_SATURATION_CAP).unwrap();
        assert!(s.equals(&ideal(&ctx, &["x"])));
    }

    #[test]
    fn annihilator_of_residue_field() {
        let ctx = q2();
        let r = ctx.quotient(&[ctx.parse("x^2").unwrap(), ctx.parse("y^2").unwrap()]);
        let k = Presentation::cyclic(r.clone(), &[r.parse("x").unwrap(), r.parse("y").unwrap()]);
        assert!(k.annihilator().equals(&ideal(&r, &["x", "y"])));
        let m = Presentation::cyclic(r.clone(), &[r.parse("x").unwrap()]);
        assert!(m.annihilator().equals(&ideal(&r, &["x"])));
        assert!(!m.is_zero());
        assert!(Presentation::cyclic(r.clone(), &[r.one()]).is_zero());
    }

    #[test]
    fn radical_membership() {
        let ctx = q2();
        let i = ideal(&ctx, &["x^3", "y^2"]);
        assert!(i.radical_contains(&ctx.parse("x").unwrap()));
        assert!(i.radical_contains(&ctx.parse("x + y").unwrap()));
        assert!(!i.radical_contains(&ctx.one()));
        assert!(i.radical_equals(&ideal(&ctx, &["x", "y"])));
        assert!(!i.radical_equals(&ideal(&ctx, &["x"])));
    }

    #[test]
    fn module_saturation_count() {
        let ctx = q2();
        // The torsion class of x is killed by (x, y) in one step.
        let p = Presentation::cyclic(ctx.clone(), &[ctx.parse("x^2").unwrap(), ctx.parse("x*y").unwrap()]);
        let (s, steps) = p.saturate(&ideal(&ctx, &["x", "y"]), 8).unwrap();
        assert_eq!(steps, 1);
        assert!(s.annihilator().equals(&ideal(&ctx, &["x"])));
    }
}
