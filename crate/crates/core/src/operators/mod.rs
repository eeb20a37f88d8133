//! Eisenbud operators, the standard resolution built from a system of higher
//! homotopies, and its reconstruction from a graded matrix factorization.

pub mod chi;
pub mod cohomology;
pub mod eisenbud;

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::field::Field;
use crate::algebra::matrix::Mat;
use crate::algebra::poly::Poly;
use crate::algebra::ring::{Ctx, PolyRing, RingCtx};
use crate::complexes::homotopies::{multi_indices, HigherHomotopySystem};
use crate::complexes::{ChainComplex, ChainMap};
use crate::error::{Error, Result};

pub use chi::{verify_chi_equals_t, ChiReport};
pub use cohomology::{cohomology_resolution, regularity_bound, syzygy_resolution, CohomologyResolution, RegularityBound, SyzygyReport};
pub use eisenbud::{alternative_lift, canonical_lift, eisenbud_operators, EisenbudOperators};

/// The graded dual of `k[χ_1..χ_c]` restricted to one degree at a time:
/// `D_m` has the dual basis of degree-`m` monomials, ordered by descending
/// grevlex, and `χ_i` acts by contraction `D_m -> D_{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividedPowerDual {
    pub c: usize,
    /// Internal degrees `deg f_i`; `(χ^α)*` has twist `-Σ α_i deg f_i`.
    pub degs: Vec<i32>,
}

fn grevlex_desc(a: &[u16], b: &[u16]) -> std::cmp::Ordering {
    for k in (0..a.len()).rev() {
        if a[k] != b[k] {
            // Smaller exponent on the last differing variable is larger.
            return a[k].cmp(&b[k]);
        }
    }
    std::cmp::Ordering::Equal
}

impl DividedPowerDual {
    pub fn new(degs: Vec<i32>) -> DividedPowerDual {
        DividedPowerDual { c: degs.len(), degs }
    }

    /// Exponent vectors of degree `m`, largest first; empty for `m < 0`.
    pub fn basis(&self, m: i64) -> Vec<Vec<u16>> {
        if m < 0 {
            return Vec::new();
        }
        let mut out: Vec<Vec<u16>> =
            multi_indices(self.c, m as usize).into_iter().map(|v| v.into_iter().map(|e| e as u16).collect()).collect();
        out.sort_by(|a, b| grevlex_desc(a, b));
        out
    }

    pub fn rank(&self, m: i64) -> usize {
        self.basis(m).len()
    }

    pub fn twist(&self, a: &[u16]) -> i32 {
        -a.iter().zip(&self.degs).map(|(&e, &d)| e as i32 * d).sum::<i32>()
    }

    pub fn twists(&self, m: i64) -> Vec<i32> {
        self.basis(m).iter().map(|a| self.twist(a)).collect()
    }

    /// Contraction by `χ^J`: `D_m -> D_{m-|J|}`, sending `(χ^α)*` to
    /// `(χ^{α-J})*` when `α ≥ J` and to zero otherwise.
    pub fn contraction(&self, j: &[usize], m: i64, field: Field) -> Mat {
        let n: i64 = j.iter().sum::<usize>() as i64;
        let src = self.basis(m);
        let tgt = self.basis(m - n);
        let pos: HashMap<&Vec<u16>, usize> = tgt.iter().enumerate().map(|(k, a)| (a, k)).collect();
        let mut out = Mat::zero(tgt.len(), src.len());
        for (col, a) in src.iter().enumerate() {
            if a.iter().zip(j).all(|(&x, &y)| x as usize >= y) {
                let b: Vec<u16> = a.iter().zip(j).map(|(&x, &y)| x - y as u16).collect();
                out.set(pos[&b], col, Poly::constant(field.one()));
            }
        }
        out
    }
}

/// The polynomial ring under `s` with the T-block removed.
pub(crate) fn x_ring(s: &Ctx) -> Ctx {
    let r = &s.ring;
    let n = r.n_x();
    let names: Vec<&str> = r.names[..n].iter().map(|s| s.as_str()).collect();
    RingCtx::polynomial(Arc::new(PolyRing::new(r.field, &names, &r.weights[..n]).expect("subring of a valid ring")))
}

pub(crate) fn degrees(f: &[Poly], q: &Ctx) -> Result<Vec<i32>> {
    let g = q.ring.grading();
    f.iter()
        .map(|p| p.graded_degree(&g).map(|d| d as i32).ok_or_else(|| Error::input("f_i must be nonzero and homogeneous")))
        .collect()
}

/// `F_n = ⊕_{i+2m=n} G_i ⊗ D_m` over `R = Q/(f)`, blocks by ascending `i`,
/// `G` basis outer and `D` basis inner, with `∂ = Σ_J σ^J ⊗ χ^J`.
#[derive(Clone, Debug)]
pub struct StandardResolution {
    pub complex: Arc<ChainComplex>,
    pub dual: DividedPowerDual,
    /// `blocks[n]` lists `(i, m)`.
    pub blocks: Vec<Vec<(i64, i64)>>,
    /// `1 ⊗ χ_i`, of cohomological degree 2.
    pub ops: Vec<ChainMap>,
}

impl StandardResolution {
    pub fn ranks(&self) -> Vec<usize> {
        self.complex.resolution_ranks()
    }
}

pub fn standard_resolution(sys: &HigherHomotopySystem, n_max: usize) -> Result<StandardResolution> {
    let q = sys.ctx().clone();
    let r = q.quotient(&sys.f);
    let field = q.field();
    let dual = DividedPowerDual::new(degrees(&sys.f, &q)?);
    let len = sys.length() as i64;
    let blocks: Vec<Vec<(i64, i64)>> = (0..=n_max as i64)
        .map(|n| (0..=len.min(n)).filter(|i| (n - i) % 2 == 0).map(|i| (i, (n - i) / 2)).collect())
        .collect();
    let size = |&(i, m): &(i64, i64)| sys.rank(i) * dual.rank(m);
    let terms: Vec<Vec<i32>> = blocks
        .iter()
        .map(|bl| {
            bl.iter()
                .flat_map(|&(i, m)| {
                    let dt = dual.twists(m);
                    sys.base.res_term(i).iter().flat_map(|&g| dt.iter().map(move |&d| g + d)).collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    let mut del = Vec::new();
    for n in 1..=n_max {
        let (src, tgt) = (&blocks[n], &blocks[n - 1]);
        let grid: Vec<Vec<Option<Mat>>> = tgt
            .iter()
            .map(|&(ti, tm)| {
                src.iter()
                    .map(|&(si, sm)| {
                        // σ^J: G_si -> G_{si+2|J|-1} with |J| = sm - tm.
                        let nj = sm - tm;
                        if nj < 0 || ti != si + 2 * nj - 1 {
                            return None;
                        }
                        let mut acc = Mat::zero(sys.rank(ti) * dual.rank(tm), sys.rank(si) * dual.rank(sm));
                        for jj in multi_indices(sys.c(), nj as usize) {
                            let s = sys.component(&jj, si).reduce(&r);
                            if !s.is_zero() {
                                acc = acc.add(&s.kron(&dual.contraction(&jj, sm, field)));
                            }
                        }
                        Some(acc)
                    })
                    .collect()
            })
            .collect();
        let rs: Vec<usize> = tgt.iter().map(size).collect();
        let cs: Vec<usize> = src.iter().map(size).collect();
        del.push(Mat::blocks(&rs, &cs, &grid).reduce(&r));
    }
    let complex = Arc::new(ChainComplex::from_resolution(r.clone(), terms, del));
    let mut ops = Vec::new();
    for i in 0..sys.c() {
        let mut e = vec![0; sys.c()];
        e[i] = 1;
        let mut map = ChainMap::new(complex.clone(), complex.clone(), 2);
        for n in 2..=n_max {
            let parts: Vec<Mat> =
                blocks[n].iter().filter(|&&(_, m)| m >= 1).map(|&(gi, m)| Mat::identity(sys.rank(gi), field).kron(&dual.contraction(&e, m, field))).collect();
            // Blocks with m = 0 map to zero; the others land on (i, m-1) in order.
            let mut full = Mat::zero(complex.rank(-(n as i64) + 2), complex.rank(-(n as i64)));
            let (mut r0, mut c0, mut k) = (0, 0, 0);
            for &(gi, m) in &blocks[n] {
                let w = size(&(gi, m));
                if m >= 1 {
                    full.put_block(r0, c0, &parts[k]);
                    r0 += parts[k].rows;
                    k += 1;
                }
                c0 += w;
            }
            map.set(-(n as i64), full);
        }
        ops.push(map);
    }
    Ok(StandardResolution { complex, dual, blocks, ops })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::complexes::homotopies::higher_homotopies;
    use crate::complexes::homology::{exactness_window, homology};
    use crate::complexes::koszul;

    pub(crate) fn q(names: &[&str]) -> Ctx {
        let w = vec![1; names.len()];
        RingCtx::polynomial(Arc::new(PolyRing::new(Field::prime(101).unwrap(), names, &w).unwrap()))
    }

    pub(crate) fn ps(ctx: &Ctx, s: &[&str]) -> Vec<Poly> {
        s.iter().map(|x| ctx.parse(x).unwrap()).collect()
    }

    /// Resolution of the residue field over `x_i^2`.
    pub(crate) fn residue_system(names: &[&str]) -> HigherHomotopySystem {
        let ctx = q(names);
        let g = koszul(&ps(&ctx, names), &ctx).complex;
        let f: Vec<String> = names.iter().map(|n| format!("{n}^2")).collect();
        let fr: Vec<&str> = f.iter().map(|s| s.as_str()).collect();
        higher_homotopies(&g, &ps(&ctx, &fr)).unwrap()
    }

    #[test]
    fn dual_basis_order_and_contraction() {
        let d = DividedPowerDual::new(vec![2, 2]);
        assert_eq!(d.basis(2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        let d3 = DividedPowerDual::new(vec![2, 2, 2]);
        assert_eq!(d3.basis(2), vec![vec![2, 0, 0], vec![1, 1, 0], vec![0, 2, 0], vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 2]]);
        let f = Field::prime(101).unwrap();
        let c = d.contraction(&[1, 0], 2, f);
        assert_eq!((c.rows, c.cols), (2, 3));
        assert!(c.get(0, 0).is_constant() && c.get(1, 1).is_constant() && c.get(0, 1).is_zero() && c.col(2).iter().all(|p| p.is_zero()));
        assert_eq!(d.twists(1), vec![-2, -2]);
        assert_eq!(d.rank(-1), 0);
    }

    #[test]
    fn ci2_residue_field() {
        let sys = residue_system(&["x", "y"]);
        let st = standard_resolution(&sys, 10).unwrap();
        assert_eq!(st.ranks(), (1..=11).collect::<Vec<_>>());
        let c = &st.complex;
        c.check_d_squared().unwrap();
        c.check_homogeneous().unwrap();
        assert!(exactness_window(c, -9, -1).unwrap());
        let h0 = homology(c, 0).unwrap();
        assert_eq!(h0.rank(), 1);
        assert!(h0.annihilator().equals(&crate::algebra::Ideal::new(c.ctx.clone(), ps(&c.ctx, &["x", "y"]))));
        for op in &st.ops {
            op.check_chain_map().unwrap();
        }
    }

    #[test]
    fn h1_is_periodic() {
        let sys = residue_system(&["x"]);
        let st = standard_resolution(&sys, 6).unwrap();
        assert_eq!(st.ranks(), vec![1; 7]);
        for n in 1..=6 {
            assert_eq!(st.complex.ctx.show(st.complex.res_d(n).get(0, 0)), "x");
        }
        assert!(exactness_window(&st.complex, -5, -1).unwrap());
    }

    #[test]
    fn ci3_ranks() {
        let sys = residue_system(&["x", "y", "z"]);
        let st = standard_resolution(&sys, 5).unwrap();
        assert_eq!(st.ranks(), vec![1, 3, 6, 10, 15, 21]);
        st.complex.check_d_squared().unwrap();
    }
}
