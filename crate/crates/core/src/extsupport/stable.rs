//! Stable Ext: the stabilization degree from the `(T)`-torsion of the Ext
//! modules, the stable table, and complete resolutions over hypersurfaces.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::linalg::rank;
use crate::algebra::matrix::Mat;
use crate::algebra::module::{submodule, Presentation, DEFAULT_SATURATION_CAP};
use crate::algebra::ops::{column_degree, lift_matrix};
use crate::algebra::poly::Poly;
use crate::complexes::homology::exactness_window;
use crate::complexes::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::operators::standard_resolution;

use super::{CiModule, ExtData, FiniteModule, GradedPresentation, HomComplex};

/// Top T-degree of the `(T)`-torsion of a presented module, `None` when it
/// is torsion-free.
fn torsion_top(gp: &GradedPresentation) -> Result<Option<i64>> {
    let p = &gp.pres;
    if p.rank() == 0 {
        return Ok(None);
    }
    let ctx = &p.ctx;
    let ring = &ctx.ring;
    let t: Vec<Poly> = ring.t_range().map(|i| ring.var(i)).collect();
    let (sat, _) = submodule::saturate(&p.rel, &t, &p.tgt, ctx, DEFAULT_SATURATION_CAP)?;
    let g = ring.grading();
    let mut top: Option<i64> = None;
    for j in 0..sat.cols {
        let w = sat.col(j);
        let Some(d) = column_degree(&w, &p.tgt, &g) else { continue };
        let mut layer = vec![w];
        let mut k = 0;
        loop {
            layer.retain(|v| !submodule::contains(&p.rel, v, ctx));
            if layer.is_empty() {
                break;
            }
            top = Some(top.map_or(d + k, |x: i64| x.max(d + k)));
            if k as usize > DEFAULT_SATURATION_CAP {
                return Err(Error::NonTermination(DEFAULT_SATURATION_CAP));
            }
            layer = layer.iter().flat_map(|v| t.iter().map(move |ti| v.iter().map(|e| ctx.mul(e, ti)).collect::<Vec<_>>())).collect();
            k += 1;
        }
    }
    Ok(top)
}

/// `q₀ = 2 (1 + top T-degree of the torsion of Ext^ev ⊕ Ext^odd)`, and 0
/// when both are torsion-free.
pub fn stabilization_degree(ext: &ExtData) -> Result<i64> {
    let mut top: Option<i64> = None;
    for parity in [0, 1] {
        if let Some(t) = torsion_top(&ext.parity_presentation(parity))? {
            top = Some(top.map_or(t, |x| x.max(t)));
        }
    }
    let q0 = top.map_or(0, |t| 2 * (1 + t));
    if q0 > ext.n_max as i64 - 2 {
        return Err(Error::WindowTooSmall { degree: q0, lo: 0, hi: ext.n_max as i64 - 2 });
    }
    Ok(q0)
}

/// Hilbert functions (internal degree to dimension) of stable Ext.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableExtTable {
    pub q0: i64,
    pub entries: BTreeMap<i64, BTreeMap<i64, usize>>,
}

impl StableExtTable {
    pub fn dim(&self, q: i64) -> Option<usize> {
        self.entries.get(&q).map(|h| h.values().sum())
    }
}

/// Stable Ext for `q` in `[q_lo, q_hi]`. For `q ≥ q₀` the entry is `Ext^q`;
/// for `c = 1` every `q` is moved into `[q₀, n_max]` along the `T`-action,
/// which is checked to be bijective there.
pub fn stable_ext(ext: &ExtData, q_lo: i64, q_hi: i64) -> Result<StableExtTable> {
    let q0 = stabilization_degree(ext)?;
    let n_max = ext.n_max as i64;
    let field = ext.m.q.field();
    if ext.c() == 1 {
        for n in q0..=n_max - 2 {
            let (a, b) = (ext.dim(n), ext.dim(n + 2));
            let cols = ext.t_matrix(0, n);
            if a != b || rank(field, b, &cols) != a {
                return Err(Error::VerificationFailure(format!("T is not bijective from degree {n}")));
            }
        }
    }
    let mut entries = BTreeMap::new();
    for q in q_lo..=q_hi {
        let h = if q >= q0 && q <= n_max {
            ext.hilbert(q)
        } else if ext.c() == 1 {
            // Smallest q' ≡ q (mod 2) with q' ≥ q₀; T^k lowers degree by k deg f.
            let qq = q0 + (q - q0).rem_euclid(2);
            let k = (qq - q) / 2;
            ext.hilbert(qq).into_iter().map(|(d, v)| (d + k * ext.f_degs[0], v)).collect()
        } else if q < q0 {
            return Err(Error::NegativeDegreeUnsupported { q, q0 });
        } else {
            return Err(Error::WindowTooSmall { degree: q, lo: q0, hi: n_max });
        };
        entries.insert(q, h);
    }
    Ok(StableExtTable { q0, entries })
}

/// A complete resolution `T -> P` of `M` over a hypersurface, on the
/// homological window `[lo, hi]` of `T`.
#[derive(Clone, Debug)]
pub struct CompleteResolution {
    /// `T_n` at cohomological degree `-n`.
    pub t: Arc<ChainComplex>,
    pub p: Arc<ChainComplex>,
    pub gamma: ChainMap,
    /// `γ_n` is the identity for `n ≥ splice`.
    pub splice: i64,
    pub lo: i64,
    pub hi: i64,
}

fn dual(c: &ChainComplex) -> ChainComplex {
    let terms: Vec<Vec<i32>> = c.terms.iter().rev().map(|t| t.iter().map(|x| -x).collect()).collect();
    let d: Vec<Mat> = c.d.iter().rev().map(|m| m.transpose()).collect();
    ChainComplex::new(c.ctx.clone(), -c.hi(), terms, d)
}

/// Unrolls the collapsed factorization of `M` into `T`, compares it with the
/// standard resolution where both are periodic, lifts `γ` below that, and
/// checks that `T` and `Hom(T, R)` are exact inside the window.
pub fn complete_resolution_c1(m: &CiModule, lo: i64, hi: i64) -> Result<CompleteResolution> {
    if m.c() != 1 {
        return Err(Error::input("complete resolutions are built for hypersurfaces only"));
    }
    let sys = &m.sys;
    let len = sys.length() as i64;
    let hi = hi.max(len + 2);
    let st = standard_resolution(sys, (hi + 1) as usize)?;
    let fc = st.complex.clone();
    let r = m.r.clone();
    let e = m.mf()?;
    let aff = e.collapse(&m.q);
    let d = st.dual.degs[0];
    let tw = |n: i64| -> Vec<i32> {
        let k = if n >= len { 0 } else { (len - n + 1) / 2 };
        fc.res_term(n + 2 * k).iter().map(|t| t + k as i32 * d).collect()
    };
    let del = |n: i64| -> Mat { if n.rem_euclid(2) == 0 { aff.b.reduce(&r) } else { aff.a.reduce(&r) } };
    for n in len..=hi + 1 {
        if tw(n) != fc.res_term(n) || (n > len && del(n) != fc.res_d(n)) {
            return Err(Error::VerificationFailure(format!("unrolled factorization differs from the standard resolution at {n}")));
        }
    }
    // Cohomological storage over [-(hi+1), -(lo-1)].
    let terms: Vec<Vec<i32>> = (lo - 1..=hi + 1).rev().map(tw).collect();
    let ds: Vec<Mat> = (lo..=hi + 1).rev().map(del).collect();
    let t = Arc::new(ChainComplex::new(r.clone(), -(hi + 1), terms, ds));
    let p = Arc::new(fc.truncate(-(hi + 1), 0));
    let mut gamma = ChainMap::new(t.clone(), p.clone(), 0);
    for n in len..=hi + 1 {
        gamma.set(-n, Mat::identity(fc.res_term(n).len(), r.field()));
    }
    for n in (0..len).rev() {
        let rhs = p.res_d(n + 1).mul(&gamma.at(-(n + 1))).reduce(&r);
        let x = lift_matrix(&rhs.transpose(), &t.res_d(n + 1).transpose(), &r)
            .map_err(|_| Error::VerificationFailure(format!("comparison map does not lift at {n}")))?;
        gamma.set(-n, x.transpose());
    }
    gamma.check_chain_map()?;
    t.check_d_squared()?;
    if !exactness_window(&t, t.lo + 1, t.hi() - 1)? || !exactness_window(&dual(&t), -t.hi() + 1, -t.lo - 1)? {
        return Err(Error::VerificationFailure("T is not totally acyclic in the window".into()));
    }
    Ok(CompleteResolution { t, p, gamma, splice: len, lo, hi })
}

/// `H^q Hom(T, N)` as Hilbert functions for `q ∈ [q_lo, q_hi]`.
pub fn stable_ext_via_compres(cr: &CompleteResolution, n: &Presentation, q_lo: i64, q_hi: i64) -> Result<BTreeMap<i64, BTreeMap<i64, usize>>> {
    if q_lo <= cr.lo - 1 || q_hi >= cr.hi + 1 {
        return Err(Error::WindowTooSmall { degree: if q_lo <= cr.lo - 1 { q_lo } else { q_hi }, lo: cr.lo, hi: cr.hi });
    }
    let fm = FiniteModule::new(n)?;
    let hom = HomComplex::new(&cr.t, &fm, q_lo, q_hi);
    Ok((q_lo..=q_hi).map(|q| (q, hom.hilbert(q))).collect())
}
