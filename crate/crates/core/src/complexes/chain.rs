//! Cohomologically indexed complexes of graded free modules, maps between
//! them, and homotopies.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::matrix::Mat;
use crate::algebra::ring::Ctx;
use crate::error::{Error, Result};

/// Terms `C^lo .. C^hi` (twist lists) with `d^i: C^i -> C^{i+1}`. Terms
/// outside the window are zero.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub ctx: Ctx,
    pub lo: i64,
    pub terms: Vec<Vec<i32>>,
    /// `d[k]` is `d^{lo+k}`; there are `terms.len() - 1` of them.
    pub d: Vec<Mat>,
}

/// Same shape as a complex but with no `d^2 = 0` requirement.
#[derive(Clone, Debug)]
pub struct MapSequence(pub ChainComplex);

impl ChainComplex {
    pub fn new(ctx: Ctx, lo: i64, terms: Vec<Vec<i32>>, d: Vec<Mat>) -> ChainComplex {
        assert!(!terms.is_empty(), "a complex needs at least one term");
        assert_eq!(d.len() + 1, terms.len(), "one differential between consecutive terms");
        for (k, m) in d.iter().enumerate() {
            assert_eq!((m.rows, m.cols), (terms[k + 1].len(), terms[k].len()), "differential {k} has wrong shape");
        }
        ChainComplex { ctx, lo, terms, d }
    }

    pub fn zero(ctx: Ctx) -> ChainComplex {
        ChainComplex::new(ctx, 0, vec![Vec::new()], Vec::new())
    }

    /// From homological data `G_0..G_n` and `∂_1..∂_n` (`∂_j: G_j -> G_{j-1}`);
    /// `G_j` sits in cohomological degree `-j`.
    pub fn from_resolution(ctx: Ctx, g: Vec<Vec<i32>>, del: Vec<Mat>) -> ChainComplex {
        let n = g.len() - 1;
        let terms: Vec<Vec<i32>> = g.into_iter().rev().collect();
        let d: Vec<Mat> = del.into_iter().rev().collect();
        ChainComplex::new(ctx, -(n as i64), terms, d)
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, i: i64) -> &[i32] {
        if i < self.lo || i > self.hi() {
            &[]
        } else {
            &self.terms[(i - self.lo) as usize]
        }
    }

    pub fn rank(&self, i: i64) -> usize {
        self.term(i).len()
    }

    /// `d^i: C^i -> C^{i+1}`, a zero matrix of the right shape outside.
    pub fn d(&self, i: i64) -> Mat {
        if i >= self.lo && i < self.hi() {
            self.d[(i - self.lo) as usize].clone()
        } else {
            Mat::zero(self.rank(i + 1), self.rank(i))
        }
    }

    pub fn d_ref(&self, i: i64) -> Option<&Mat> {
        if i >= self.lo && i < self.hi() {
            Some(&self.d[(i - self.lo) as usize])
        } else {
            None
        }
    }

    /// `∂_j: G_j -> G_{j-1}` in homological notation.
    pub fn res_d(&self, j: i64) -> Mat {
        self.d(-j)
    }

    pub fn res_term(&self, j: i64) -> &[i32] {
        self.term(-j)
    }

    /// Ranks `rank C^0, rank C^-1, ..., rank C^lo`.
    pub fn resolution_ranks(&self) -> Vec<usize> {
        (self.lo..=0).rev().map(|i| self.rank(i)).collect()
    }

    /// Homological length of a resolution stored in degrees `lo..=0`.
    pub fn length(&self) -> i64 {
        -self.lo
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for i in self.lo..self.hi() - 1 {
            let p = self.d(i + 1).mul(&self.d(i)).reduce(&self.ctx);
            if let Some((r, c)) = p.first_difference(&Mat::zero(p.rows, p.cols)) {
                return Err(Error::VerificationFailure(format!("d^{} d^{} is nonzero at ({r},{c})", i + 1, i)));
            }
        }
        Ok(())
    }

    /// Every differential is homogeneous of degree zero for the ring grading.
    pub fn check_homogeneous(&self) -> Result<()> {
        let g = self.ctx.ring.grading();
        for i in self.lo..self.hi() {
            self.d(i).check_homogeneous(self.term(i), self.term(i + 1), 0, &g)?;
        }
        Ok(())
    }

    /// Restriction to the window `[a, b]` (clamped to the stored one).
    pub fn truncate(&self, a: i64, b: i64) -> ChainComplex {
        let a = a.max(self.lo);
        let b = b.min(self.hi()).max(a);
        let terms = (a..=b).map(|i| self.term(i).to_vec()).collect();
        let d = (a..b).map(|i| self.d(i)).collect();
        ChainComplex::new(self.ctx.clone(), a, terms, d)
    }

    /// `C[1]`: `C[1]^i = C^{i+1}`, differential negated.
    pub fn shift(&self) -> ChainComplex {
        ChainComplex::new(self.ctx.clone(), self.lo - 1, self.terms.clone(), self.d.iter().map(|m| m.neg()).collect())
    }

    /// Termwise equality of twists and matrices.
    pub fn same_as(&self, o: &ChainComplex) -> bool {
        self.lo == o.lo && self.terms == o.terms && self.d == o.d
    }
}

/// A map of cohomological degree `degree`: components `f^i: C^i -> D^{i+degree}`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: Arc<ChainComplex>,
    pub target: Arc<ChainComplex>,
    pub degree: i64,
    pub comps: BTreeMap<i64, Mat>,
}

impl ChainMap {
    pub fn new(source: Arc<ChainComplex>, target: Arc<ChainComplex>, degree: i64) -> ChainMap {
        ChainMap { source, target, degree, comps: BTreeMap::new() }
    }

    pub fn identity(c: Arc<ChainComplex>) -> ChainMap {
        let mut f = ChainMap::new(c.clone(), c.clone(), 0);
        for i in c.lo..=c.hi() {
            f.comps.insert(i, Mat::identity(c.rank(i), c.ctx.field()));
        }
        f
    }

    /// Component at `i`, zero of the right shape when absent.
    pub fn at(&self, i: i64) -> Mat {
        self.comps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Mat::zero(self.target.rank(i + self.degree), self.source.rank(i)))
    }

    pub fn set(&mut self, i: i64, m: Mat) {
        assert_eq!((m.rows, m.cols), (self.target.rank(i + self.degree), self.source.rank(i)), "component {i} has wrong shape");
        self.comps.insert(i, m);
    }

    pub fn sub(&self, o: &ChainMap) -> ChainMap {
        assert_eq!(self.degree, o.degree);
        let mut out = ChainMap::new(self.source.clone(), self.target.clone(), self.degree);
        for i in self.source.lo..=self.source.hi() {
            out.comps.insert(i, self.at(i).sub(&o.at(i)).reduce(&self.target.ctx));
        }
        out
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &ChainMap) -> ChainMap {
        let mut out = ChainMap::new(o.source.clone(), self.target.clone(), self.degree + o.degree);
        for i in o.source.lo..=o.source.hi() {
            let m = self.at(i + o.degree).mul(&o.at(i)).reduce(&self.target.ctx);
            out.comps.insert(i, m);
        }
        out
    }

    /// Checks `d f = (-1)^deg f d` in every degree of the source window.
    pub fn check_chain_map(&self) -> Result<()> {
        let ctx = &self.target.ctx;
        let sign = if self.degree % 2 == 0 { 1 } else { -1 };
        for i in self.source.lo - 1..=self.source.hi() {
            let lhs = self.target.d(i + self.degree).mul(&self.at(i));
            let rhs = self.at(i + 1).mul(&self.source.d(i)).scale(&ctx.field().from_i64(sign));
            let diff = lhs.sub(&rhs).reduce(ctx);
            if let Some((r, c)) = diff.first_difference(&Mat::zero(diff.rows, diff.cols)) {
                return Err(Error::VerificationFailure(format!("chain map condition fails in degree {i} at ({r},{c})")));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|m| m.reduce(&self.target.ctx).is_zero())
    }
}

/// `h` of degree `degree` certifying `g = d h + (-1)^{degree+1} h d` for a map
/// `g` of degree `degree + 1`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub map: ChainMap,
}

impl Homotopy {
    /// The boundary `d h - (-1)^{|h|} h d`.
    pub fn boundary(&self) -> ChainMap {
        let h = &self.map;
        let ctx = h.target.ctx.clone();
        let eps = if (h.degree + 1) % 2 == 0 { 1 } else { -1 };
        let mut out = ChainMap::new(h.source.clone(), h.target.clone(), h.degree + 1);
        for i in h.source.lo..=h.source.hi() {
            let a = h.target.d(i + h.degree).mul(&h.at(i));
            let b = h.at(i + 1).mul(&h.source.d(i)).scale(&ctx.field().from_i64(eps));
            out.comps.insert(i, a.add(&b).reduce(&ctx));
        }
        out
    }

    pub fn certifies(&self, g: &ChainMap) -> Result<()> {
        let b = self.boundary();
        for i in g.source.lo..=g.source.hi() {
            let diff = b.at(i).sub(&g.at(i)).reduce(&g.target.ctx);
            if let Some((r, c)) = diff.first_difference(&Mat::zero(diff.rows, diff.cols)) {
                return Err(Error::VerificationFailure(format!("homotopy identity fails in degree {i} at ({r},{c})")));
            }
        }
        Ok(())
    }
}
