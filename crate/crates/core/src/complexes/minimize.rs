//! Minimization by cancelling unit entries, and mapping cones.

use std::sync::Arc;

use crate::algebra::matrix::Mat;

use super::chain::{ChainComplex, ChainMap, Homotopy};

/// `complex` is homotopy equivalent to the input `C` via `f: complex -> C`
/// and `g: C -> complex`, with `g f = id` and `id - f g = d h + h d`.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub complex: Arc<ChainComplex>,
    pub f: ChainMap,
    pub g: ChainMap,
    pub h: Homotopy,
}

fn find_unit(c: &ChainComplex) -> Option<(i64, usize, usize)> {
    for i in c.lo..c.hi() {
        let d = c.d_ref(i)?;
        for col in 0..d.cols {
            for row in 0..d.rows {
                let e = d.get(row, col);
                if !e.is_zero() && e.is_constant() {
                    return Some((i, row, col));
                }
            }
        }
    }
    None
}

fn drop_index(n: usize, k: usize) -> Vec<usize> {
    (0..n).filter(|&x| x != k).collect()
}

/// One cancellation of the unit `u = d^i[r][c]`. Returns the smaller complex
/// and the matrices of `f^i, f^{i+1}, g^i, g^{i+1}, h^{i+1}`.
fn cancel(c: &ChainComplex, i: i64, r: usize, col: usize) -> (ChainComplex, [Mat; 5]) {
    let ctx = &c.ctx;
    let field = ctx.field();
    let d = c.d(i);
    let (n_i, n_j) = (c.rank(i), c.rank(i + 1));
    let keep_c = drop_index(n_i, col);
    let keep_r = drop_index(n_j, r);
    let uinv = d.get(r, col).terms[0].1.inv();
    let v = d.select(&[r], &keep_c);
    let w = d.select(&keep_r, &[col]);
    let z = d.select(&keep_r, &keep_c);
    let new_d = z.sub(&w.mul(&v).scale(&uinv)).reduce(ctx);

    let mut terms = c.terms.clone();
    let ii = (i - c.lo) as usize;
    terms[ii] = keep_c.iter().map(|&k| c.terms[ii][k]).collect();
    terms[ii + 1] = keep_r.iter().map(|&k| c.terms[ii + 1][k]).collect();
    let mut ds = c.d.clone();
    ds[ii] = new_d;
    if ii >= 1 {
        let prev = &c.d[ii - 1];
        ds[ii - 1] = prev.select(&keep_c, &(0..prev.cols).collect::<Vec<_>>());
    }
    if ii + 1 < c.d.len() {
        let next = &c.d[ii + 1];
        ds[ii + 1] = next.select(&(0..next.rows).collect::<Vec<_>>(), &keep_r);
    }
    let small = ChainComplex::new(ctx.clone(), c.lo, terms, ds);

    // f^i(a) = (a, -u^{-1} v a) in the dropped slot.
    let mut fi = Mat::zero(n_i, keep_c.len());
    for (k, &orig) in keep_c.iter().enumerate() {
        fi.set(orig, k, ctx.one());
        fi.set(col, k, ctx.nf(&v.get(0, k).scale(&uinv).neg()));
    }
    let mut fj = Mat::zero(n_j, keep_r.len());
    for (k, &orig) in keep_r.iter().enumerate() {
        fj.set(orig, k, ctx.one());
    }
    let gi = fi_projection(n_i, &keep_c, field);
    // g^{i+1}(c', b) = b - w u^{-1} c'.
    let mut gj = fi_projection(n_j, &keep_r, field);
    for k in 0..keep_r.len() {
        gj.set(k, r, ctx.nf(&w.get(k, 0).scale(&uinv).neg()));
    }
    // h^{i+1}(c', b) = u^{-1} c' in the dropped slot.
    let mut h = Mat::zero(n_i, n_j);
    h.set(col, r, crate::algebra::poly::Poly::constant(uinv));
    (small, [fi, fj, gi, gj, h])
}

fn fi_projection(n: usize, keep: &[usize], field: crate::algebra::field::Field) -> Mat {
    let mut g = Mat::zero(keep.len(), n);
    for (k, &orig) in keep.iter().enumerate() {
        g.set(k, orig, crate::algebra::poly::Poly::constant(field.one()));
    }
    g
}

/// Cancels unit entries until every differential entry is a non-unit.
pub fn minimize(c: &ChainComplex) -> Minimized {
    let orig = Arc::new(c.clone());
    let field = c.ctx.field();
    let ctx = c.ctx.clone();
    let mut cur = c.clone();
    // Totals as component matrices indexed by degree.
    let idx = |i: i64| (i - c.lo) as usize;
    let n = c.terms.len();
    let mut big_f: Vec<Mat> = (0..n).map(|k| Mat::identity(c.terms[k].len(), field)).collect();
    let mut big_g = big_f.clone();
    // big_h[k]: C^{lo+k} -> C^{lo+k-1}.
    let mut big_h: Vec<Mat> = (0..n).map(|k| Mat::zero(if k == 0 { 0 } else { c.terms[k - 1].len() }, c.terms[k].len())).collect();
    while let Some((i, r, col)) = find_unit(&cur) {
        let (small, [fi, fj, gi, gj, h]) = cancel(&cur, i, r, col);
        let (a, b) = (idx(i), idx(i + 1));
        // H' = H + F h G at degree i+1.
        big_h[b] = big_h[b].add(&big_f[a].mul(&h).mul(&big_g[b])).reduce(&ctx);
        big_f[a] = big_f[a].mul(&fi).reduce(&ctx);
        big_f[b] = big_f[b].mul(&fj).reduce(&ctx);
        big_g[a] = gi.mul(&big_g[a]).reduce(&ctx);
        big_g[b] = gj.mul(&big_g[b]).reduce(&ctx);
        cur = small;
    }
    let small = Arc::new(cur);
    let mut f = ChainMap::new(small.clone(), orig.clone(), 0);
    let mut g = ChainMap::new(orig.clone(), small.clone(), 0);
    let mut h = ChainMap::new(orig.clone(), orig.clone(), -1);
    for k in 0..n {
        let i = c.lo + k as i64;
        f.set(i, big_f[k].clone());
        g.set(i, big_g[k].clone());
        if k > 0 {
            h.set(i, big_h[k].clone());
        }
    }
    Minimized { complex: small, f, g, h: Homotopy { map: h } }
}

impl Minimized {
    /// Checks that `f`, `g` are chain maps, `g f = id` and `h` certifies
    /// `id - f g`.
    pub fn verify(&self) -> crate::error::Result<()> {
        self.f.check_chain_map()?;
        self.g.check_chain_map()?;
        let gf = self.g.compose(&self.f);
        let id = ChainMap::identity(self.complex.clone());
        if !gf.sub(&id).is_zero() {
            return Err(crate::error::Error::VerificationFailure("g f is not the identity".into()));
        }
        let idc = ChainMap::identity(self.f.target.clone());
        self.h.certifies(&idc.sub(&self.f.compose(&self.g)))
    }
}

/// `Cone(f)^i = A^{i+1} ⊕ B^i` with `d = [[-d_A, 0], [f, d_B]]`.
pub fn cone(f: &ChainMap) -> ChainComplex {
    assert_eq!(f.degree, 0, "cone needs a degree-zero map");
    let (a, b) = (&f.source, &f.target);
    let ctx = b.ctx.clone();
    let lo = (a.lo - 1).min(b.lo);
    let hi = (a.hi() - 1).max(b.hi());
    let terms: Vec<Vec<i32>> = (lo..=hi)
        .map(|i| {
            let mut t = a.term(i + 1).to_vec();
            t.extend_from_slice(b.term(i));
            t
        })
        .collect();
    let d = (lo..hi)
        .map(|i| {
            let rows = [a.rank(i + 2), b.rank(i + 1)];
            let cols = [a.rank(i + 1), b.rank(i)];
            Mat::blocks(&rows, &cols, &[vec![Some(a.d(i + 1).neg()), None], vec![Some(f.at(i + 1)), Some(b.d(i))]])
        })
        .collect();
    ChainComplex::new(ctx, lo, terms, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::ops::free_resolution;
    use crate::algebra::ring::{Ctx, PolyRing, RingCtx};
    use crate::complexes::homology::exactness_window;
    use crate::complexes::koszul::koszul;

    fn q(names: &[&str]) -> Ctx {
        let w = vec![1; names.len()];
        RingCtx::polynomial(Arc::new(PolyRing::new(Field::prime(101).unwrap(), names, &w).unwrap()))
    }

    #[test]
    fn unit_cancels_to_zero() {
        let ctx = q(&["x"]);
        let c = ChainComplex::new(ctx.clone(), 0, vec![vec![0], vec![0]], vec![Mat::identity(1, ctx.field())]);
        let m = minimize(&c);
        assert_eq!(m.complex.terms, vec![Vec::<i32>::new(), Vec::new()]);
        m.verify().unwrap();
    }

    #[test]
    fn minimal_complex_is_untouched() {
        let ctx = q(&["x", "y"]);
        let k = koszul(&[ctx.parse("x").unwrap(), ctx.parse("y").unwrap()], &ctx).complex;
        let m = minimize(&k);
        assert!(m.complex.same_as(&k));
        m.verify().unwrap();
    }

    #[test]
    fn mixed_cancellation() {
        let ctx = q(&["x", "y"]);
        let p = |s: &str| ctx.parse(s).unwrap();
        // Koszul on (x, y) plus a trivial summand S -1-> S glued in.
        let d1 = Mat::from_rows(vec![vec![p("x"), p("y"), p("0")], vec![p("0"), p("0"), p("1")]]);
        let d0 = Mat::from_rows(vec![vec![p("-y")], vec![p("x")], vec![p("0")]]);
        let c = ChainComplex::new(ctx.clone(), -2, vec![vec![-2], vec![-1, -1, -1], vec![0, -1]], vec![d0, d1]);
        c.check_d_squared().unwrap();
        let m = minimize(&c);
        assert_eq!(m.complex.terms, vec![vec![-2], vec![-1, -1], vec![0]]);
        m.verify().unwrap();
    }

    #[test]
    fn cone_of_identity_is_exact() {
        let ctx = q(&["x", "y"]);
        let m = crate::algebra::Mat::from_rows(vec![vec![ctx.parse("x").unwrap(), ctx.parse("y^2").unwrap()]]);
        let r = Arc::new(free_resolution(&m, &[0], &ctx, None).unwrap());
        let cn = cone(&ChainMap::identity(r.clone()));
        cn.check_d_squared().unwrap();
        assert!(exactness_window(&cn, cn.lo, cn.hi()).unwrap());
        let mm = minimize(&cn);
        assert!(mm.complex.terms.iter().all(|t| t.is_empty()));
        mm.verify().unwrap();
    }
}
