//! Matrix factorizations: graded ones over `S = Q[T_1..T_c]`, classical
//! affine ones, the construction from a system of higher homotopies, and the
//! periodic unrolling.

pub mod ops;
pub mod support;

use std::sync::Arc;

use crate::algebra::matrix::Mat;
use crate::algebra::module::Presentation;
use crate::algebra::poly::Poly;
use crate::algebra::ring::{Ctx, RingCtx};
use crate::complexes::homotopies::{multi_indices, HigherHomotopySystem};
use crate::complexes::ChainComplex;
use crate::error::{Error, Result};

pub use ops::{canonical_isos, dual_mf, hom_mf, tensor_mf, unit_mf, IsoCertificate, MFMap};
pub use support::{supp_tpc, TpcSupport};

/// `g1: E1 -> E0` and `g0: E0 -> E1(l)` with `g0 g1 = W` and `g1 g0 = W`.
/// `l` is the degree of `W` (1 over `S`, `deg f` for affine factorizations
/// with the standard grading); it is kept when `W = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMF {
    pub ctx: Ctx,
    pub w: Poly,
    pub l: i32,
    pub e1: Vec<i32>,
    pub e0: Vec<i32>,
    pub g1: Mat,
    pub g0: Mat,
}

/// A twisted periodic complex: a factorization of zero.
pub type Tpc = GradedMF;

/// `A B = f I = B A`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMF {
    pub ctx: Ctx,
    pub f: Poly,
    pub a: Mat,
    pub b: Mat,
}

fn first_bad(m: &Mat) -> Option<(usize, usize)> {
    m.first_difference(&Mat::zero(m.rows, m.cols))
}

impl GradedMF {
    /// Builds and verifies a factorization.
    pub fn new(ctx: Ctx, w: Poly, l: i32, e1: Vec<i32>, e0: Vec<i32>, g1: Mat, g0: Mat) -> Result<GradedMF> {
        if (g1.rows, g1.cols) != (e0.len(), e1.len()) || (g0.rows, g0.cols) != (e1.len(), e0.len()) {
            return Err(Error::MfEquationFailure("matrix shapes do not match the modules".into()));
        }
        let e = GradedMF { w: ctx.nf(&w), g1: g1.reduce(&ctx), g0: g0.reduce(&ctx), ctx, l, e1, e0 };
        e.check()?;
        Ok(e)
    }

    pub fn zero(ctx: Ctx, w: Poly, l: i32) -> GradedMF {
        GradedMF { ctx, w, l, e1: Vec::new(), e0: Vec::new(), g1: Mat::zero(0, 0), g0: Mat::zero(0, 0) }
    }

    pub fn rank(&self) -> (usize, usize) {
        (self.e1.len(), self.e0.len())
    }

    /// Both composites equal `W`, and both maps are homogeneous.
    pub fn check(&self) -> Result<()> {
        let ctx = &self.ctx;
        let a = self.g0.mul(&self.g1).sub(&Mat::scalar(self.e1.len(), &self.w)).reduce(ctx);
        if let Some((r, c)) = first_bad(&a) {
            return Err(Error::MfEquationFailure(format!("g0 g1 - W differs at ({r},{c})")));
        }
        let b = self.g1.mul(&self.g0).sub(&Mat::scalar(self.e0.len(), &self.w)).reduce(ctx);
        if let Some((r, c)) = first_bad(&b) {
            return Err(Error::MfEquationFailure(format!("g1 g0 - W differs at ({r},{c})")));
        }
        let g = ctx.ring.grading();
        self.g1
            .check_homogeneous(&self.e1, &self.e0, 0, &g)
            .map_err(|e| Error::MfEquationFailure(format!("g1: {e}")))?;
        self.g0
            .check_homogeneous(&self.e0, &self.e1, self.l as i64, &g)
            .map_err(|e| Error::MfEquationFailure(format!("g0: {e}")))?;
        Ok(())
    }

    /// `coker(g1)` over `S/(W)`.
    pub fn coker(&self) -> Presentation {
        let r = self.ctx.quotient(&[self.w.clone()]);
        Presentation::new(r.clone(), self.e0.clone(), self.g1.reduce(&r))
    }

    /// `E0 -(-g0)-> E1(l) -(-g1)-> E0(l)`.
    pub fn shift(&self) -> GradedMF {
        GradedMF {
            ctx: self.ctx.clone(),
            w: self.w.clone(),
            l: self.l,
            e1: self.e0.clone(),
            e0: self.e1.iter().map(|t| t + self.l).collect(),
            g1: self.g0.neg(),
            g0: self.g1.neg(),
        }
    }

    /// Adds `n` to every twist.
    pub fn twist(&self, n: i32) -> GradedMF {
        let mut e = self.clone();
        e.e1.iter_mut().for_each(|t| *t += n);
        e.e0.iter_mut().for_each(|t| *t += n);
        e
    }

    pub fn same_ring(&self, o: &GradedMF) -> bool {
        self.ctx == o.ctx && self.l == o.l
    }

    /// The unrolling `C^{2m-1} = E1(ml)`, `C^{2m} = E0(ml)` over `S/(W)` on
    /// the window `[lo, hi]`.
    pub fn periodic_complex(&self, lo: i64, hi: i64) -> ChainComplex {
        let r = self.ctx.quotient(&[self.w.clone()]);
        let term = |i: i64| -> Vec<i32> {
            let m = i.div_euclid(2) + i.rem_euclid(2);
            let base = if i.rem_euclid(2) == 0 { &self.e0 } else { &self.e1 };
            base.iter().map(|t| t + (m as i32) * self.l).collect()
        };
        let terms = (lo..=hi).map(term).collect();
        let d = (lo..hi)
            .map(|i| if i.rem_euclid(2) == 0 { self.g0.reduce(&r) } else { self.g1.reduce(&r) })
            .collect();
        ChainComplex::new(r, lo, terms, d)
    }

    /// Sets every `T_i` to 1 (for `c = 1` this recovers the classical pair).
    pub fn collapse(&self, q: &Ctx) -> AffineMF {
        let ring = &self.ctx.ring;
        let one = ring.field.one();
        let vals: Vec<_> = ring.t_range().map(|i| (i, one.clone())).collect();
        let sub = |m: &Mat| m.map(|p| q.nf(&p.substitute(&vals, &q.ring.weights).reweight(&q.ring.weights)));
        AffineMF {
            ctx: q.clone(),
            f: q.nf(&self.w.substitute(&vals, &q.ring.weights)),
            a: sub(&self.g1),
            b: sub(&self.g0),
        }
    }

    pub fn to_strings(&self) -> (Vec<Vec<String>>, Vec<Vec<String>>) {
        (self.g1.to_strings(&self.ctx.ring), self.g0.to_strings(&self.ctx.ring))
    }
}

impl AffineMF {
    pub fn check(&self) -> Result<()> {
        let n = self.a.rows;
        let fi = Mat::scalar(n, &self.f);
        for (name, m) in [("AB", self.a.mul(&self.b)), ("BA", self.b.mul(&self.a))] {
            if let Some((r, c)) = first_bad(&m.sub(&fi).reduce(&self.ctx)) {
                return Err(Error::MfEquationFailure(format!("{name} - f differs at ({r},{c})")));
            }
        }
        Ok(())
    }
}

/// `S = Q[T_1..T_c]` over the polynomial ring of `q`.
pub fn s_ring(q: &Ctx, c: usize) -> Ctx {
    RingCtx::polynomial(Arc::new(q.ring.with_t_block(c)))
}

/// `W = Σ f_i T_i` in `s`.
pub fn potential(f: &[Poly], s: &Ctx) -> Poly {
    let w = &s.ring.weights;
    f.iter().enumerate().fold(Poly::zero(), |acc, (i, fi)| acc.add(&fi.reweight(w).mul(&s.ring.t_var(i))))
}

/// Internal (x-variable) degrees of the basis of `E1`, `E0`: the twists of
/// the underlying `G_i`, with `T_i` counted in x-degree `-deg f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XTwists {
    pub e1: Vec<i32>,
    pub e0: Vec<i32>,
}

pub fn x_twists(sys: &HigherHomotopySystem) -> XTwists {
    let len = sys.length() as i64;
    let pick = |p: i64| (0..=len).filter(|j| j % 2 == p).flat_map(|j| sys.base.res_term(j).to_vec()).collect();
    XTwists { e1: pick(1), e0: pick(0) }
}

/// `E1 = ⊕_j G_{2j+1} ⊗ S(j)`, `E0 = ⊕_j G_{2j} ⊗ S(j)`, with
/// `g1, g0 = Σ_J σ^J ⊗ T^J` blockwise.
pub fn build_mf(sys: &HigherHomotopySystem) -> Result<GradedMF> {
    let s = s_ring(sys.ctx(), sys.c());
    let w = potential(&sys.f, &s);
    let len = sys.length() as i64;
    let odd: Vec<i64> = (0..=len).filter(|j| j % 2 == 1).collect();
    let even: Vec<i64> = (0..=len).filter(|j| j % 2 == 0).collect();
    let twists = |idx: &[i64]| -> Vec<i32> {
        idx.iter().flat_map(|&j| std::iter::repeat((j / 2) as i32).take(sys.rank(j))).collect()
    };
    let (e1, e0) = (twists(&odd), twists(&even));
    let block = |src: i64, tgt: i64| -> Option<Mat> {
        // σ^J maps G_src -> G_{src + 2|J| - 1}.
        let diff = tgt - src + 1;
        if diff < 0 || diff % 2 != 0 {
            return None;
        }
        let n = (diff / 2) as usize;
        let mut acc = Mat::zero(sys.rank(tgt), sys.rank(src));
        for jj in multi_indices(sys.c(), n) {
            let comp = sys.component(&jj, src);
            if comp.is_zero() {
                continue;
            }
            let mut mono = s.one();
            for (i, &e) in jj.iter().enumerate() {
                mono = mono.mul(&s.ring.t_var(i).pow(e as u32, s.field()));
            }
            acc = acc.add(&comp.map(|p| p.reweight(&s.ring.weights).mul(&mono)));
        }
        Some(acc)
    };
    let assemble = |srcs: &[i64], tgts: &[i64]| -> Mat {
        let rs: Vec<usize> = tgts.iter().map(|&j| sys.rank(j)).collect();
        let cs: Vec<usize> = srcs.iter().map(|&j| sys.rank(j)).collect();
        let grid: Vec<Vec<Option<Mat>>> = tgts.iter().map(|&t| srcs.iter().map(|&sj| block(sj, t)).collect()).collect();
        Mat::blocks(&rs, &cs, &grid)
    };
    let g1 = assemble(&odd, &even);
    let g0 = assemble(&even, &odd);
    GradedMF::new(s, w, 1, e1, e0, g1, g0)
}

/// The Koszul factorization of `Σ a_i b_i` on the exterior algebra, odd part
/// `E1`, even part `E0`: the differential is `Σ a_i (e_i ∧ -) + b_i ι_i`.
/// Generator `e_S` gets twist `Σ_{i∈S} deg a_i - l⌈|S|/2⌉`.
pub fn koszul_mf(a: &[Poly], b: &[Poly], ctx: &Ctx) -> Result<GradedMF> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::input("need equally many nonzero a_i and b_i"));
    }
    let g = ctx.ring.grading();
    let da: Vec<i64> = a.iter().map(|p| p.graded_degree(&g).ok_or_else(|| Error::input("a_i must be nonzero"))).collect::<Result<_>>()?;
    let w = a.iter().zip(b).fold(Poly::zero(), |acc, (x, y)| acc.add(&x.mul(y)));
    let l = w.graded_degree(&g).ok_or_else(|| Error::input("Σ a_i b_i is zero"))? as i32;
    let k = crate::complexes::koszul(a, ctx);
    let n = a.len();
    let dim: Vec<usize> = k.subsets.iter().map(|s| s.len()).collect();
    let offsets = |parity: usize| -> Vec<Option<usize>> {
        let mut off = 0;
        (0..=n)
            .map(|d| {
                if d % 2 == parity {
                    let o = off;
                    off += dim[d];
                    Some(o)
                } else {
                    None
                }
            })
            .collect()
    };
    let (o1, o0) = (offsets(1), offsets(0));
    let twist = |s: &Vec<usize>| -> i32 { s.iter().map(|&i| da[i] as i32).sum::<i32>() - l * ((s.len() as i32 + 1) / 2) };
    let e1: Vec<i32> = (0..=n).filter(|d| d % 2 == 1).flat_map(|d| k.subsets[d].iter().map(twist)).collect();
    let e0: Vec<i32> = (0..=n).filter(|d| d % 2 == 0).flat_map(|d| k.subsets[d].iter().map(twist)).collect();
    let delta = |from_parity: usize, rows: usize, cols: usize| -> Mat {
        let (src_off, tgt_off) = if from_parity == 1 { (&o1, &o0) } else { (&o0, &o1) };
        let mut m = Mat::zero(rows, cols);
        for d in (0..=n).filter(|d| d % 2 == from_parity) {
            let c0 = src_off[d].unwrap();
            if d < n {
                let r0 = tgt_off[d + 1].unwrap();
                let mut acc = Mat::zero(dim[d + 1], dim[d]);
                for (i, ai) in a.iter().enumerate() {
                    acc = acc.add(&k.mult(i, d).scale_poly(ai));
                }
                m.put_block(r0, c0, &acc);
            }
            if d > 0 {
                let r0 = tgt_off[d - 1].unwrap();
                let mut acc = Mat::zero(dim[d - 1], dim[d]);
                for (i, bi) in b.iter().enumerate() {
                    acc = acc.add(&k.mult(i, d - 1).transpose().scale_poly(bi));
                }
                m.put_block(r0, c0, &acc);
            }
        }
        m
    };
    let g1 = delta(1, e0.len(), e1.len());
    let g0 = delta(0, e1.len(), e0.len());
    GradedMF::new(ctx.clone(), w, l, e1, e0, g1, g0)
}
