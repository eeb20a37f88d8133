//! Ext over a complete intersection as graded `R[T]`-modules, stable Ext,
//! and stable support sets.
//!
//! The second argument `N` must have finite length: every Ext group is then
//! a finite-dimensional bigraded vector space, computed from `Hom(F, N)`
//! with `F` the standard resolution, and module structure is assembled from
//! the operator action by linear algebra.

pub mod present;
pub mod stable;
pub mod support;

use std::collections::{BTreeMap, HashMap};

use crate::algebra::field::{Coeff, Field};
use crate::algebra::gb::{Gb, GbEngine, Vector as GVec};
use crate::algebra::linalg::{kernel, zeros, Quotient, Vector};
use crate::algebra::matrix::Mat;
use crate::algebra::module::Presentation;
use crate::algebra::mono::Mono;
use crate::algebra::ops::{free_resolution, relation_vectors};
use crate::algebra::poly::Poly;
use crate::algebra::ring::{Ctx, RingCtx};
use crate::complexes::homotopies::{higher_homotopies, HigherHomotopySystem};
use crate::complexes::ChainComplex;
use crate::error::{Error, Result};
use crate::mf::{build_mf, s_ring, GradedMF};
use crate::operators::{standard_resolution, StandardResolution};

pub use present::{present, Action, GradedPresentation, Key};
pub use stable::{complete_resolution_c1, stabilization_degree, stable_ext, stable_ext_via_compres, CompleteResolution, StableExtTable};
pub use support::{ab_support, check_support_properties, support_set, PropertyReport, SupportIdeal};

/// A graded module over `R = Q/(f)` with its resolution over `Q` and a
/// system of higher homotopies.
#[derive(Clone, Debug)]
pub struct CiModule {
    pub q: Ctx,
    pub r: Ctx,
    pub f: Vec<Poly>,
    pub pres: Presentation,
    pub sys: HigherHomotopySystem,
}

impl CiModule {
    /// `pres` lives over `R`; `f` are the defining equations in `Q`.
    pub fn new(pres: &Presentation, f: &[Poly]) -> Result<CiModule> {
        let q = RingCtx::polynomial(pres.ctx.ring.clone());
        let r = q.quotient(f);
        if pres.ctx != r {
            return Err(Error::RingMismatch);
        }
        let n = pres.rank();
        let mut cols: Vec<Vec<Poly>> = (0..pres.rel.cols).map(|j| pres.rel.col(j)).collect();
        for fi in f {
            for k in 0..n {
                let mut c = vec![Poly::zero(); n];
                c[k] = fi.clone();
                cols.push(c);
            }
        }
        let g = free_resolution(&Mat::from_cols(n, &cols), &pres.tgt, &q, None)?;
        CiModule::with_resolution(pres, f, g)
    }

    /// As `new`, with `g` a given `Q`-free resolution of the module.
    pub fn with_resolution(pres: &Presentation, f: &[Poly], g: ChainComplex) -> Result<CiModule> {
        let q = RingCtx::polynomial(pres.ctx.ring.clone());
        let r = q.quotient(f);
        if pres.ctx != r {
            return Err(Error::RingMismatch);
        }
        if g.ctx != q || g.res_term(0) != pres.tgt.as_slice() {
            return Err(Error::input("the resolution does not match the presentation"));
        }
        let sys = higher_homotopies(&g, f)?;
        Ok(CiModule { q, r, f: f.to_vec(), pres: pres.clone(), sys })
    }

    pub fn c(&self) -> usize {
        self.f.len()
    }

    pub fn mf(&self) -> Result<GradedMF> {
        build_mf(&self.sys)
    }

    /// `Q[x, T_1..T_c]`, where Ext modules and supports live.
    pub fn p_ring(&self) -> Ctx {
        s_ring(&self.q, self.c())
    }
}

/// A finite-length module as a vector space: standard monomials of a
/// Gröbner basis of its relations over `Q`.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    pub ctx: Ctx,
    gb: Gb,
    pub basis: Vec<(usize, Mono)>,
    index: HashMap<(usize, Mono), usize>,
    /// Degree `-tgt[pos] + deg(mono)` of each basis element.
    pub degs: Vec<i64>,
}

const FINITE_LENGTH_CAP: u32 = 200;

impl FiniteModule {
    pub fn new(n: &Presentation) -> Result<FiniteModule> {
        let ctx = n.ctx.clone();
        let ring = &ctx.ring;
        let mut e = GbEngine::new(&ring.weights, false);
        for j in 0..n.rel.cols {
            let col: Vec<Poly> = n.rel.col(j).iter().map(|p| ctx.nf(p)).collect();
            e.add(GVec::from_column(&col, 0), GVec::zero());
        }
        for v in relation_vectors(&ctx, 0, n.rank()) {
            e.add(v, GVec::zero());
        }
        e.complete();
        let gb = e.reduced();
        let leads: Vec<(usize, Mono)> = gb.vectors().filter_map(|v| v.lead().map(|(p, m, _)| (*p as usize, *m))).collect();
        let vars: Vec<usize> = (0..ring.n_x()).collect();
        let wmax = vars.iter().map(|&v| ring.weights[v]).max().unwrap_or(1);
        let mut basis = Vec::new();
        for pos in 0..n.rank() {
            let mut empty_run = 0;
            let mut d = 0;
            while empty_run < wmax {
                if d > FINITE_LENGTH_CAP {
                    return Err(Error::input("the second module must have finite length"));
                }
                let found: Vec<Mono> = ring
                    .monomials_of_degree(&vars, d)
                    .into_iter()
                    .filter(|m| !leads.iter().any(|(p, l)| *p == pos && l.divides(m)))
                    .collect();
                empty_run = if found.is_empty() { empty_run + 1 } else { 0 };
                basis.extend(found.into_iter().map(|m| (pos, m)));
                d += 1;
            }
        }
        let index = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let degs = basis.iter().map(|(p, m)| -(n.tgt[*p] as i64) + m.deg as i64).collect();
        Ok(FiniteModule { ctx, gb, basis, index, degs })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> Field {
        self.ctx.field()
    }

    /// Coordinates of `p · b_j`.
    pub fn mul(&self, p: &Poly, j: usize) -> Vector {
        let (pos, m) = self.basis[j];
        let v = GVec::from_poly(pos, &p.mul(&Poly::term(m, self.field().one())));
        let (rem, _) = self.gb.reduce(&v, &GVec::zero());
        let mut out = zeros(self.field(), self.dim());
        for (p, mm, c) in &rem.terms {
            out[self.index[&(*p as usize, *mm)]] = c.clone();
        }
        out
    }
}

/// `Hom(C, N)` for a complex of free `R`-modules (homological indexing) and
/// its cohomology, sliced by internal degree.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub complex: ChainComplex,
    pub module: FiniteModule,
    pub lo: i64,
    pub hi: i64,
    slices: BTreeMap<Key, Slice>,
}

#[derive(Clone, Debug)]
struct Slice {
    coords: Vec<usize>,
    local: HashMap<usize, usize>,
    q: Quotient,
}

impl HomComplex {
    fn coord_deg(c: &ChainComplex, m: &FiniteModule, n: i64, g: usize) -> i64 {
        let dn = m.dim();
        c.res_term(n)[g / dn] as i64 + m.degs[g % dn]
    }

    fn groups(c: &ChainComplex, m: &FiniteModule, n: i64) -> BTreeMap<i64, Vec<usize>> {
        let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for g in 0..c.res_term(n).len() * m.dim() {
            out.entry(Self::coord_deg(c, m, n, g)).or_default().push(g);
        }
        out
    }

    /// `φ ↦ φ ∘ ∂_{n+1}` on the global coordinate `g` of `Hom(C_n, N)`.
    fn dual_d(c: &ChainComplex, m: &FiniteModule, n: i64, g: usize) -> Vec<(usize, Coeff)> {
        let dn = m.dim();
        let (a, b) = (g / dn, g % dn);
        let d = c.res_d(n + 1);
        let mut out = Vec::new();
        for col in 0..d.cols {
            let p = d.get(a, col);
            if p.is_zero() {
                continue;
            }
            for (bb, v) in m.mul(p, b).into_iter().enumerate() {
                if !v.is_zero() {
                    out.push((col * dn + bb, v));
                }
            }
        }
        out
    }

    /// Cohomology `H^n` for `n` in `[lo, hi]`; `C` must be stored on
    /// `[lo-1, hi+1]` homologically (or be zero outside it).
    pub fn new(c: &ChainComplex, m: &FiniteModule, lo: i64, hi: i64) -> HomComplex {
        let field = m.field();
        let mut slices = BTreeMap::new();
        for n in lo..=hi {
            let here = Self::groups(c, m, n);
            let next = Self::groups(c, m, n + 1);
            let prev = Self::groups(c, m, n - 1);
            for (&deg, coords) in &here {
                let local: HashMap<usize, usize> = coords.iter().enumerate().map(|(i, &g)| (g, i)).collect();
                let tgt_local: HashMap<usize, usize> = next.get(&deg).map(|v| v.iter().enumerate().map(|(i, &g)| (g, i)).collect()).unwrap_or_default();
                let tlen = tgt_local.len();
                let cols: Vec<Vector> = coords
                    .iter()
                    .map(|&g| {
                        let mut v = zeros(field, tlen);
                        for (t, x) in Self::dual_d(c, m, n, g) {
                            v[tgt_local[&t]] = &v[tgt_local[&t]] + &x;
                        }
                        v
                    })
                    .collect();
                let z: Vec<Vector> = kernel(field, tlen, &cols);
                let b: Vec<Vector> = prev
                    .get(&deg)
                    .into_iter()
                    .flatten()
                    .map(|&g| {
                        let mut v = zeros(field, coords.len());
                        for (t, x) in Self::dual_d(c, m, n - 1, g) {
                            v[local[&t]] = &v[local[&t]] + &x;
                        }
                        v
                    })
                    .collect();
                let q = Quotient::new(field, coords.len(), &z, &b);
                slices.insert((n, deg), Slice { coords: coords.clone(), local, q });
            }
        }
        HomComplex { complex: c.clone(), module: m.clone(), lo, hi, slices }
    }

    pub fn dim(&self, n: i64) -> usize {
        self.slices.range((n, i64::MIN)..=(n, i64::MAX)).map(|(_, s)| s.q.dim()).sum()
    }

    /// Nonzero pieces of `H^n` by internal degree.
    pub fn hilbert(&self, n: i64) -> BTreeMap<i64, usize> {
        self.slices.range((n, i64::MIN)..=(n, i64::MAX)).filter(|(_, s)| s.q.dim() > 0).map(|(k, s)| (k.1, s.q.dim())).collect()
    }

    pub fn piece_dim(&self, k: Key) -> usize {
        self.slices.get(&k).map(|s| s.q.dim()).unwrap_or(0)
    }

    pub fn dims(&self) -> BTreeMap<Key, usize> {
        self.slices.iter().map(|(k, s)| (*k, s.q.dim())).collect()
    }

    /// Transports a class at `k` through a map on global coordinates and
    /// returns its class at `target`.
    fn transport(&self, k: Key, v: &[Coeff], target: Key, image: impl Fn(usize) -> Vec<(usize, Coeff)>) -> Vector {
        let field = self.module.field();
        let Some(t) = self.slices.get(&target) else {
            return Vec::new();
        };
        let s = &self.slices[&k];
        let rep = s.q.lift(v);
        let mut out = zeros(field, t.coords.len());
        for (i, x) in rep.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (g, y) in image(s.coords[i]) {
                let li = *t.local.get(&g).expect("map is not homogeneous");
                out[li] = &out[li] + &(x * &y);
            }
        }
        t.q.coords(&out).expect("image of a cycle is a cycle")
    }

    /// `[φ] ↦ [φ ∘ g]` for `g: C_m -> C_n` (rows indexed by `C_n`).
    pub fn precompose(&self, k: Key, v: &[Coeff], g: &Mat, m: i64, target_deg: i64) -> Vector {
        let dn = self.module.dim();
        self.transport(k, v, (m, target_deg), |gl| {
            let (a, b) = (gl / dn, gl % dn);
            let mut out = Vec::new();
            for e in 0..g.cols {
                let p = g.get(a, e);
                if p.is_zero() {
                    continue;
                }
                for (bb, x) in self.module.mul(p, b).into_iter().enumerate() {
                    if !x.is_zero() {
                        out.push((e * dn + bb, x));
                    }
                }
            }
            out
        })
    }

    /// `[φ] ↦ [p φ]`.
    pub fn postmultiply(&self, k: Key, v: &[Coeff], p: &Poly, target_deg: i64) -> Vector {
        let dn = self.module.dim();
        self.transport(k, v, (k.0, target_deg), |gl| {
            let (a, b) = (gl / dn, gl % dn);
            self.module.mul(p, b).into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(bb, x)| (a * dn + bb, x)).collect()
        })
    }
}

/// `Ext^n_R(M, N)` for `n ≤ n_max` with the `x` and `T` actions.
#[derive(Clone, Debug)]
pub struct ExtData {
    pub m: CiModule,
    pub n: Presentation,
    pub n_max: usize,
    pub res: StandardResolution,
    pub hom: HomComplex,
    pub x_weights: Vec<i64>,
    pub f_degs: Vec<i64>,
}

pub fn ext_modules(m: &CiModule, n: &Presentation, n_max: usize) -> Result<ExtData> {
    if n.ctx != m.r {
        return Err(Error::RingMismatch);
    }
    let module = FiniteModule::new(n)?;
    let res = standard_resolution(&m.sys, n_max + 1)?;
    let hom = HomComplex::new(&res.complex, &module, 0, n_max as i64);
    let ring = &m.q.ring;
    let x_weights = (0..ring.n_x()).map(|i| ring.weights[i] as i64).collect();
    let f_degs = res.dual.degs.iter().map(|&d| d as i64).collect();
    Ok(ExtData { m: m.clone(), n: n.clone(), n_max, res, hom, x_weights, f_degs })
}

impl ExtData {
    pub fn dim(&self, n: i64) -> usize {
        self.hom.dim(n)
    }

    pub fn hilbert(&self, n: i64) -> BTreeMap<i64, usize> {
        self.hom.hilbert(n)
    }

    pub fn c(&self) -> usize {
        self.m.c()
    }

    /// `x_j: Ext^n_δ -> Ext^n_{δ+w_j}`.
    pub fn act_x(&self, j: usize, k: Key, v: &[Coeff]) -> Vector {
        let x = self.m.q.ring.var(j);
        self.hom.postmultiply(k, v, &x, k.1 + self.x_weights[j])
    }

    /// `T_i: Ext^n_δ -> Ext^{n+2}_{δ - deg f_i}`, induced by `χ_i`.
    pub fn act_t(&self, i: usize, k: Key, v: &[Coeff]) -> Vector {
        if k.0 + 2 > self.n_max as i64 {
            return Vec::new();
        }
        let op = self.res.ops[i].at(-(k.0 + 2));
        self.hom.precompose(k, v, &op, k.0 + 2, k.1 - self.f_degs[i])
    }

    /// Matrix of `T_i` from `Ext^n` to `Ext^{n+2}` in the bases of the
    /// degree slices, concatenated in increasing internal degree.
    pub fn t_matrix(&self, i: usize, n: i64) -> Vec<Vector> {
        let field = self.m.q.field();
        let src = self.hom.hilbert(n);
        let tgt = self.hom.hilbert(n + 2);
        let offsets: BTreeMap<i64, usize> = tgt.iter().scan(0, |acc, (&d, &k)| {
            let o = *acc;
            *acc += k;
            Some((d, o))
        }).collect();
        let total: usize = tgt.values().sum();
        let mut cols = Vec::new();
        for (&d, &k) in &src {
            for u in 0..k {
                let img = self.act_t(i, (n, d), &crate::algebra::linalg::unit(field, k, u));
                let mut col = zeros(field, total);
                if let Some(&o) = offsets.get(&(d - self.f_degs[i])) {
                    for (j, x) in img.into_iter().enumerate() {
                        col[o + j] = x;
                    }
                }
                cols.push(col);
            }
        }
        cols
    }

    /// `Ext^ev` (`parity = 0`) or `Ext^odd` as a graded module over
    /// `Q[x, T]`, with T-degree `⌊n/2⌋`.
    pub fn parity_presentation(&self, parity: i64) -> GradedPresentation {
        let p = self.m.p_ring();
        let nx = self.x_weights.len();
        let mut actions: Vec<Action> = Vec::new();
        for j in 0..nx {
            actions.push(Action { var: j, shift: (0, self.x_weights[j]), apply: Box::new(move |k, v| self.act_x(j, k, v)) });
        }
        for i in 0..self.c() {
            actions.push(Action { var: nx + i, shift: (2, -self.f_degs[i]), apply: Box::new(move |k, v| self.act_t(i, k, v)) });
        }
        let dims: BTreeMap<Key, usize> = self.hom.dims().into_iter().filter(|(k, _)| k.0.rem_euclid(2) == parity).collect();
        present(&p, &dims, &actions, self.n_max as i64, |k| (k.0 / 2) as i32)
    }

    /// `Ext^n` as a graded `R`-module.
    pub fn degree_presentation(&self, n: i64) -> Presentation {
        let nx = self.x_weights.len();
        let actions: Vec<Action> = (0..nx)
            .map(|j| Action { var: j, shift: (0, self.x_weights[j]), apply: Box::new(move |k: Key, v: &[Coeff]| self.act_x(j, k, v)) as Box<dyn Fn(Key, &[Coeff]) -> Vector> })
            .collect();
        let dims: BTreeMap<Key, usize> = self.hom.dims().into_iter().filter(|(k, _)| k.0 == n).collect();
        let gp = present(&self.m.q, &dims, &actions, n, |k| k.1 as i32);
        gp.pres.over(self.m.r.clone())
    }

    /// No generator of `Ext^ev` or `Ext^odd` in the top third of `[0, n_max]`.
    pub fn gulliksen_witness(&self) -> bool {
        let cut = self.n_max as i64 - (self.n_max as i64 + 1) / 3;
        [0, 1].iter().all(|&p| self.parity_presentation(p).gen_keys.iter().all(|k| k.0 <= cut))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::module::Ideal;
    use crate::operators::tests::{ps, q};

    /// `R = Q/(squares)` and the module `R/(gens)`.
    pub(crate) fn ci_module(names: &[&str], gens: &[&str]) -> CiModule {
        let ctx = q(names);
        let sq: Vec<String> = names.iter().map(|n| format!("{n}^2")).collect();
        let sq: Vec<&str> = sq.iter().map(|s| s.as_str()).collect();
        let f = ps(&ctx, &sq);
        let r = ctx.quotient(&f);
        CiModule::new(&Presentation::cyclic(r.clone(), &ps(&r, gens)), &f).unwrap()
    }

    pub(crate) fn residue(m: &CiModule) -> Presentation {
        let r = &m.r;
        let xs: Vec<Poly> = (0..r.ring.n_x()).map(|i| r.ring.var(i)).collect();
        Presentation::cyclic(r.clone(), &xs)
    }

    #[test]
    fn finite_module_basis() {
        let m = ci_module(&["x", "y"], &["x"]);
        let fm = FiniteModule::new(&m.pres).unwrap();
        assert_eq!(fm.dim(), 2);
        assert_eq!(fm.degs, vec![0, 1]);
        let y = m.r.ring.var(1);
        assert_eq!(fm.mul(&y, 0), vec![m.r.field().zero(), m.r.field().one()]);
        assert!(fm.mul(&y, 1).iter().all(|c| c.is_zero()));
        let r = m.r.clone();
        assert!(FiniteModule::new(&Presentation::cyclic(RingCtx::polynomial(r.ring.clone()), &[])).is_err());
    }

    #[test]
    fn ci2_residue_field_dims() {
        let m = ci_module(&["x", "y"], &["x", "y"]);
        let e = ext_modules(&m, &residue(&m), 8).unwrap();
        let dims: Vec<usize> = (0..=8).map(|n| e.dim(n)).collect();
        assert_eq!(dims, (1..=9).collect::<Vec<_>>());
        assert_eq!(e.hilbert(2), BTreeMap::from([(-2, 3)]));
        assert!(e.gulliksen_witness());
        let ev = e.parity_presentation(0);
        assert_eq!(ev.gen_keys, vec![(0, 0), (2, -2)]);
        let xy = Ideal::new(e.m.p_ring(), ps(&e.m.p_ring(), &["x", "y"]));
        assert!(ev.pres.annihilator().equals(&xy));
    }

    #[test]
    fn h1_operator_is_iso() {
        let m = ci_module(&["x"], &["x"]);
        let e = ext_modules(&m, &residue(&m), 8).unwrap();
        for n in 0..=8 {
            assert_eq!(e.dim(n), 1);
        }
        for n in 0..=6 {
            assert_eq!(crate::algebra::linalg::rank(m.q.field(), 1, &e.t_matrix(0, n)), 1, "n = {n}");
        }
    }

    #[test]
    fn zero_second_argument() {
        let m = ci_module(&["x", "y"], &["x", "y"]);
        let zero = Presentation::cyclic(m.r.clone(), &[m.r.one()]);
        let e = ext_modules(&m, &zero, 4).unwrap();
        assert!((0..=4).all(|n| e.dim(n) == 0));
    }

    #[test]
    fn periodic_module_degree_presentation() {
        let m = ci_module(&["x", "y"], &["x"]);
        let e = ext_modules(&m, &m.pres, 5).unwrap();
        // Ext^n(R/(x), R/(x)) has dimension 2 in every degree.
        assert!((0..=5).all(|n| e.dim(n) == 2));
        let p = e.degree_presentation(3);
        assert_eq!(p.rank(), 1);
    }
}
