//! The resolution recovered from a graded matrix factorization through the
//! cohomology of twists of `O` on `P^{c-1}`, and the syzygy identification.
//!
//! `H^{c-1}(P^{c-1}, O(d))` is modelled by the dual of `k[T]_{-d-c}`; a
//! summand `S(a)` of `E_p` contributes `D_m` with `m = ⌊n/2⌋ - a` to term `n`
//! of parity `p`, and multiplication by `T^J` dualizes to contraction by `χ^J`.

use std::sync::Arc;

use crate::algebra::matrix::Mat;
use crate::algebra::module::Presentation;
use crate::algebra::ops::free_resolution;
use crate::algebra::poly::Poly;
use crate::complexes::homology::exactness_window;
use crate::complexes::{minimize, ChainComplex};
use crate::error::{Error, Result};
use crate::mf::{GradedMF, XTwists};

use super::{degrees, x_ring, DividedPowerDual};

#[derive(Clone, Debug)]
pub struct CohomologyResolution {
    pub complex: Arc<ChainComplex>,
    pub dual: DividedPowerDual,
    /// `blocks[n]` lists `(b, m)`: basis element `b` of `E_{n mod 2}` with `D_m`.
    pub blocks: Vec<Vec<(usize, i64)>>,
    pub f: Vec<Poly>,
}

/// Rank of the model of `H^{c-1}(O(d))`: monomials of degree `-d-c`.
pub fn model_rank(d: i64, c: usize) -> usize {
    DividedPowerDual::new(vec![1; c]).rank(-d - c as i64)
}

impl CohomologyResolution {
    /// Multiplication by `T_i` on the model: `D_m -> D_{m-1}` on each summand,
    /// from term `n` to term `n - 2`.
    pub fn t_action(&self, i: usize, n: usize) -> Mat {
        let field = self.complex.ctx.field();
        let mut e = vec![0; self.dual.c];
        e[i] = 1;
        let parts: Vec<Mat> = self.blocks[n].iter().map(|&(_, m)| self.dual.contraction(&e, m, field)).collect();
        let refs: Vec<&Mat> = parts.iter().collect();
        Mat::block_diag(&refs)
    }
}

pub fn cohomology_resolution(e: &GradedMF, xt: &XTwists, n_max: usize) -> Result<CohomologyResolution> {
    let s = &e.ctx;
    let ring = &s.ring;
    let c = ring.c();
    if c == 0 || e.l != 1 {
        return Err(Error::input("need a factorization over S = Q[T_1..T_c] with l = 1"));
    }
    if (xt.e1.len(), xt.e0.len()) != e.rank() {
        return Err(Error::input("x-twists do not match the factorization"));
    }
    let q = x_ring(s);
    let tr = ring.t_range();
    let unit = |i: usize| -> Vec<u16> { (0..c).map(|k| (k == i) as u16).collect() };
    let f: Vec<Poly> = (0..c).map(|i| e.w.block_coeff(tr.clone(), &unit(i), &q.ring.weights)).collect();
    let r = q.quotient(&f);
    let field = q.field();
    let dual = DividedPowerDual::new(degrees(&f, &q)?);
    let parity = |n: usize| if n % 2 == 0 { (&e.e0, &xt.e0) } else { (&e.e1, &xt.e1) };
    let blocks: Vec<Vec<(usize, i64)>> = (0..=n_max)
        .map(|n| {
            let (tw, _) = parity(n);
            tw.iter().enumerate().map(|(b, &a)| (b, (n / 2) as i64 - a as i64)).filter(|&(_, m)| m >= 0).collect()
        })
        .collect();
    let terms: Vec<Vec<i32>> = (0..=n_max)
        .map(|n| {
            let (_, xw) = parity(n);
            blocks[n].iter().flat_map(|&(b, m)| dual.twists(m).into_iter().map(move |d| xw[b] + d)).collect()
        })
        .collect();
    let mut del = Vec::new();
    for n in 1..=n_max {
        // Even n: E0 -> E1 through g0; odd n: E1 -> E0 through g1.
        let g = if n % 2 == 0 { &e.g0 } else { &e.g1 };
        let (src, tgt) = (&blocks[n], &blocks[n - 1]);
        let grid: Vec<Vec<Option<Mat>>> = tgt
            .iter()
            .map(|&(tb, tm)| {
                src.iter()
                    .map(|&(sb, sm)| {
                        let p = g.get(tb, sb);
                        if p.is_zero() {
                            return None;
                        }
                        let mut acc = Mat::zero(dual.rank(tm), dual.rank(sm));
                        for t in p.block_support(tr.clone()) {
                            let jj: Vec<usize> = t.iter().map(|&x| x as usize).collect();
                            if sm - jj.iter().sum::<usize>() as i64 != tm {
                                return Some(Err(Error::input("factorization is not homogeneous in T")));
                            }
                            let coef = r.nf(&p.block_coeff(tr.clone(), &t, &q.ring.weights));
                            acc = acc.add(&dual.contraction(&jj, sm, field).scale_poly(&coef));
                        }
                        Some(Ok(acc))
                    })
                    .map(|o| o.transpose())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let rs: Vec<usize> = tgt.iter().map(|&(_, m)| dual.rank(m)).collect();
        let cs: Vec<usize> = src.iter().map(|&(_, m)| dual.rank(m)).collect();
        del.push(Mat::blocks(&rs, &cs, &grid).reduce(&r));
    }
    let complex = Arc::new(ChainComplex::from_resolution(r, terms, del));
    Ok(CohomologyResolution { complex, dual, blocks, f })
}

/// `α` bounds the twists of `E`; `n_E = 2α + e - 1` with `e` the number of
/// x-variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityBound {
    pub alpha: i64,
    pub n_e: i64,
    /// The model of `H^{c-1}(O(-a)(m-c+1))` vanishes for every twist `a` and
    /// all `m` in `α+1 ..= α+c+1`.
    pub consistent: bool,
}

pub fn regularity_bound(e: &GradedMF) -> RegularityBound {
    let top = e.e1.iter().chain(&e.e0).copied().max().unwrap_or(0) as i64;
    let alpha = (top - 1).max(0);
    let ex = e.ctx.ring.n_x() as i64;
    let c = e.ctx.ring.c();
    let consistent = e.e1.iter().chain(&e.e0).all(|&a| {
        (alpha + 1..=alpha + c as i64 + 1).all(|m| model_rank(-(a as i64) + m - (c as i64 - 1), c) == 0)
    });
    RegularityBound { alpha, n_e: (2 * alpha + ex - 1).max(0), consistent }
}

#[derive(Clone, Debug)]
pub struct SyzygyReport {
    pub n_e: i64,
    /// Graded Betti numbers (sorted twists) of the minimized tail from `n_E`.
    pub tail_betti: Vec<Vec<i32>>,
    /// Same for the minimal resolution of `Ω^{n_E}(M)`.
    pub syzygy_betti: Vec<Vec<i32>>,
}

/// Truncates the cohomology resolution at `n_E`, minimizes it and compares
/// its graded Betti numbers in `degrees` consecutive degrees with those of
/// the `n_E`-th syzygy of `m`.
pub fn syzygy_resolution(e: &GradedMF, xt: &XTwists, m: &Presentation, degrees: usize) -> Result<SyzygyReport> {
    let n_e = regularity_bound(e).n_e;
    let top = n_e as usize + degrees + 1;
    let cr = cohomology_resolution(e, xt, top)?;
    let fc = &cr.complex;
    fc.check_d_squared()?;
    if !exactness_window(fc, -(top as i64) + 1, -1)? {
        return Err(Error::IdentificationFailure("the reconstructed complex is not exact".into()));
    }
    let tail = fc.truncate(-(top as i64), -n_e);
    let mm = minimize(&tail);
    let sorted = |t: &[i32]| {
        let mut v = t.to_vec();
        v.sort();
        v
    };
    let tail_betti: Vec<Vec<i32>> = (0..degrees as i64).map(|k| sorted(mm.complex.term(-n_e - k))).collect();
    if m.ctx != fc.ctx {
        return Err(Error::RingMismatch);
    }
    let res = free_resolution(&m.rel, &m.tgt, &m.ctx, Some(n_e as usize + degrees))?;
    let syzygy_betti: Vec<Vec<i32>> = (0..degrees as i64).map(|k| sorted(res.res_term(n_e + k))).collect();
    if tail_betti != syzygy_betti {
        let k = tail_betti.iter().zip(&syzygy_betti).position(|(a, b)| a != b).unwrap_or(0);
        return Err(Error::IdentificationFailure(format!(
            "Betti numbers differ in degree {}: {:?} vs {:?}",
            n_e + k as i64,
            tail_betti[k],
            syzygy_betti[k]
        )));
    }
    Ok(SyzygyReport { n_e, tail_betti, syzygy_betti })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mf::{build_mf, x_twists};
    use crate::operators::standard_resolution;
    use crate::operators::tests::{ps, residue_system};

    #[test]
    fn matches_standard_resolution() {
        for names in [&["x"][..], &["x", "y"], &["x", "y", "z"]] {
            let sys = residue_system(names);
            let e = build_mf(&sys).unwrap();
            let cr = cohomology_resolution(&e, &x_twists(&sys), 5).unwrap();
            let st = standard_resolution(&sys, 5).unwrap();
            assert!(cr.complex.same_as(&st.complex), "{names:?}");
            for i in 0..names.len() {
                for n in 2..=5 {
                    assert_eq!(cr.t_action(i, n), st.ops[i].at(-(n as i64)));
                }
            }
        }
    }

    #[test]
    fn model_ranks() {
        assert_eq!(model_rank(-2, 2), 1);
        assert_eq!(model_rank(-3, 2), 2);
        assert_eq!(model_rank(-1, 2), 0);
        assert_eq!(model_rank(-5, 3), 6);
    }

    #[test]
    fn regularity_of_fixtures() {
        let e = build_mf(&residue_system(&["x", "y"])).unwrap();
        assert_eq!(regularity_bound(&e), RegularityBound { alpha: 0, n_e: 1, consistent: true });
        let e = build_mf(&residue_system(&["x"])).unwrap();
        assert_eq!(regularity_bound(&e), RegularityBound { alpha: 0, n_e: 0, consistent: true });
    }

    #[test]
    fn ci2_first_syzygy() {
        let sys = residue_system(&["x", "y"]);
        let e = build_mf(&sys).unwrap();
        let r = sys.ctx().quotient(&sys.f);
        let k = Presentation::cyclic(r.clone(), &ps(&r, &["x", "y"]));
        let rep = syzygy_resolution(&e, &x_twists(&sys), &k, 8).unwrap();
        assert_eq!(rep.n_e, 1);
        let ranks: Vec<usize> = rep.tail_betti.iter().map(|v| v.len()).collect();
        assert_eq!(ranks, (2..10).collect::<Vec<_>>());
    }

    #[test]
    fn wrong_module_is_rejected() {
        let sys = residue_system(&["x", "y"]);
        let e = build_mf(&sys).unwrap();
        let r = sys.ctx().quotient(&sys.f);
        let m = Presentation::cyclic(r.clone(), &ps(&r, &["x"]));
        assert!(matches!(syzygy_resolution(&e, &x_twists(&sys), &m, 3), Err(Error::IdentificationFailure(_))));
    }
}
