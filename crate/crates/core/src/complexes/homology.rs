//! Homology presentations, exactness checks and nullhomotopies.

use std::sync::Arc;

use crate::algebra::matrix::Mat;
use crate::algebra::module::{submodule, Presentation};
use crate::algebra::ops::{lift_matrix, syzygies, syzygies_graded, LiftSolver};
use crate::error::{Error, Result};

use super::chain::{ChainComplex, ChainMap, Homotopy};

fn in_window(c: &ChainComplex, i: i64) -> Result<()> {
    if i < c.lo || i > c.hi() {
        return Err(Error::WindowTooSmall { degree: i, lo: c.lo, hi: c.hi() });
    }
    Ok(())
}

/// `H^i = ker d^i / im d^{i-1}` presented over the complex's context on the
/// minimal generators of `ker d^i`.
pub fn homology(c: &ChainComplex, i: i64) -> Result<Presentation> {
    in_window(c, i)?;
    let ctx = &c.ctx;
    let (k, tw) = syzygies_graded(&c.d(i), c.term(i), ctx);
    if k.cols == 0 {
        return Ok(Presentation::free(ctx.clone(), Vec::new()));
    }
    let b = c.d(i - 1);
    let l = if b.cols == 0 { Mat::zero(k.cols, 0) } else { lift_matrix(&b, &k, ctx)? };
    let rel = syzygies(&k, ctx);
    Ok(Presentation::new(ctx.clone(), tw, Mat::hstack(&[&l, &rel])))
}

/// `ker d^i ⊆ im d^{i-1}`.
pub fn is_exact_at(c: &ChainComplex, i: i64) -> bool {
    let k = syzygies(&c.d(i), &c.ctx);
    submodule::is_subset(&k, &c.d(i - 1), &c.ctx)
}

pub fn exactness_window(c: &ChainComplex, a: i64, b: i64) -> Result<bool> {
    in_window(c, a)?;
    in_window(c, b)?;
    Ok((a..=b).all(|i| is_exact_at(c, i)))
}

/// Solves `g = d h + (-1)^{deg g} h d` degree by degree from the top of the
/// source window down. When the equation in some degree leaves `h^i`
/// unconstrained (its target differential lands in a zero module), `h^i` is
/// solved jointly with the next lower degree.
pub fn nullhomotopy(g: &ChainMap) -> Result<Homotopy> {
    let (src, tgt) = (g.source.clone(), g.target.clone());
    let ctx = tgt.ctx.clone();
    let hd = g.degree - 1;
    let eps = ctx.field().from_i64(if g.degree % 2 == 0 { 1 } else { -1 });
    let mut h = ChainMap::new(src.clone(), tgt.clone(), hd);
    let mut pending: Option<i64> = None;
    for i in (src.lo..=src.hi()).rev() {
        let (m_i, n_i) = (tgt.rank(i + hd), src.rank(i));
        let rhs = g.at(i).sub(&h.at(i + 1).mul(&src.d(i)).scale(&eps)).reduce(&ctx);
        let a = tgt.d(i + hd);
        if let Some(p) = pending.take() {
            debug_assert_eq!(p, i + 1);
            let y_rows = tgt.rank(i + 1 + hd);
            let y_cols = src.rank(i + 1);
            let b = src.d(i);
            let left = a.kron(&Mat::identity(n_i, ctx.field()));
            let right = Mat::identity(y_rows, ctx.field()).kron(&b.transpose()).scale(&eps);
            let big = Mat::hstack(&[&left, &right]);
            let gi = g.at(i);
            let vecg: Vec<_> = (0..gi.rows).flat_map(|r| gi.row(r)).collect();
            let sol = LiftSolver::new(&big, &ctx)
                .solve(&vecg)
                .map_err(|_| Error::NotNullhomotopic(format!("joint step at degree {i}")))?;
            let mut x = Mat::zero(m_i, n_i);
            for r in 0..m_i {
                for s in 0..n_i {
                    x.set(r, s, sol[r * n_i + s].clone());
                }
            }
            let off = m_i * n_i;
            let mut y = Mat::zero(y_rows, y_cols);
            for r in 0..y_rows {
                for s in 0..y_cols {
                    y.set(r, s, sol[off + r * y_cols + s].clone());
                }
            }
            h.set(i, x);
            h.set(i + 1, y);
            continue;
        }
        if m_i == 0 || n_i == 0 {
            continue;
        }
        if a.rows == 0 {
            pending = Some(i);
            continue;
        }
        let x = lift_matrix(&rhs, &a, &ctx).map_err(|_| Error::NotNullhomotopic(format!("lift fails at degree {i}")))?;
        h.set(i, x);
    }
    let hom = Homotopy { map: h };
    hom.certifies(g).map_err(|e| Error::NotNullhomotopic(e.to_string()))?;
    Ok(hom)
}

/// `x·id` on a complex, a degree-zero chain map.
pub fn scalar_map(c: Arc<ChainComplex>, x: &crate::algebra::poly::Poly) -> ChainMap {
    let mut f = ChainMap::new(c.clone(), c.clone(), 0);
    for i in c.lo..=c.hi() {
        f.set(i, Mat::scalar(c.rank(i), &c.ctx.nf(x)));
    }
    f
}
