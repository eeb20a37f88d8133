//! Eisenbud operators `t_i` from a lift of the differential to `Q`:
//! `∂̃² = Σ f_i t̃_i` and `t_i = t̃_i mod (f)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::matrix::Mat;
use crate::algebra::ops::LiftSolver;
use crate::algebra::poly::Poly;
use crate::algebra::ring::{Ctx, RingCtx};
use crate::complexes::{ChainComplex, ChainMap, MapSequence};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct EisenbudOperators {
    pub base: Arc<ChainComplex>,
    pub lifting: MapSequence,
    /// `t_tilde[i][k]: F^k -> F^{k+2}` over `Q`.
    pub t_tilde: Vec<BTreeMap<i64, Mat>>,
    pub t: Vec<ChainMap>,
}

fn ambient(r: &Ctx) -> Ctx {
    RingCtx::polynomial(r.ring.clone())
}

/// Entries already in normal form, read as polynomials over `Q`.
pub fn canonical_lift(f: &ChainComplex) -> MapSequence {
    MapSequence(ChainComplex::new(ambient(&f.ctx), f.lo, f.terms.clone(), f.d.clone()))
}

/// The canonical lift plus `Σ f_i B_i` with seeded random constant `B_i`.
/// The result is a valid lift but generally not homogeneous.
pub fn alternative_lift(fc: &ChainComplex, f: &[Poly], seed: u64) -> MapSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = ambient(&fc.ctx);
    let field = q.field();
    let d = fc
        .d
        .iter()
        .map(|m| {
            let mut out = m.clone();
            for r in 0..m.rows {
                for c in 0..m.cols {
                    let mut e = out.get(r, c).clone();
                    for fi in f {
                        if rng.gen_bool(0.5) {
                            e = e.add(&fi.scale(&field.from_i64(rng.gen_range(1..50))));
                        }
                    }
                    out.set(r, c, e);
                }
            }
            out
        })
        .collect();
    MapSequence(ChainComplex::new(q, fc.lo, fc.terms.clone(), d))
}

pub fn eisenbud_operators(fc: Arc<ChainComplex>, f: &[Poly], lifting: Option<&MapSequence>) -> Result<EisenbudOperators> {
    let lifting = match lifting {
        Some(l) => l.clone(),
        None => canonical_lift(&fc),
    };
    let lc = &lifting.0;
    if lc.lo != fc.lo || lc.terms != fc.terms {
        return Err(Error::input("lifting has a different shape"));
    }
    for i in fc.lo..fc.hi() {
        if lc.d(i).reduce(&fc.ctx) != fc.d(i) {
            return Err(Error::input(format!("lifting does not reduce to d^{i}")));
        }
    }
    let q = lc.ctx.clone();
    let c = f.len();
    let solver = LiftSolver::new(&Mat::from_rows(vec![f.to_vec()]), &q);
    let mut t_tilde: Vec<BTreeMap<i64, Mat>> = vec![BTreeMap::new(); c];
    for k in fc.lo..fc.hi() - 1 {
        let sq = lc.d(k + 1).mul(&lc.d(k)).reduce(&q);
        let mut parts = vec![Mat::zero(sq.rows, sq.cols); c];
        for r in 0..sq.rows {
            for col in 0..sq.cols {
                let e = sq.get(r, col);
                if e.is_zero() {
                    continue;
                }
                let coeffs = solver
                    .solve(std::slice::from_ref(e))
                    .map_err(|_| Error::DecompositionFailure(format!("degree {k}, entry ({r},{col}): {}", q.show(e))))?;
                for (i, p) in coeffs.into_iter().enumerate() {
                    parts[i].set(r, col, p);
                }
            }
        }
        for (i, m) in parts.into_iter().enumerate() {
            t_tilde[i].insert(k, m);
        }
    }
    let mut t = Vec::with_capacity(c);
    for (i, tt) in t_tilde.iter().enumerate() {
        let mut m = ChainMap::new(fc.clone(), fc.clone(), 2);
        for (&k, mat) in tt {
            m.set(k, mat.reduce(&fc.ctx));
        }
        m.check_chain_map().map_err(|e| Error::VerificationFailure(format!("t_{} is not a chain map: {e}", i + 1)))?;
        t.push(m);
    }
    Ok(EisenbudOperators { base: fc, lifting, t_tilde, t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ops::free_resolution;
    use crate::complexes::nullhomotopy;
    use crate::operators::standard_resolution;
    use crate::operators::tests::{ps, q, residue_system};

    #[test]
    fn h1_operator_is_identity() {
        let ctx = q(&["x"]);
        let r = ctx.quotient(&ps(&ctx, &["x^2"]));
        let m = Mat::from_rows(vec![ps(&r, &["x"])]);
        let fc = Arc::new(free_resolution(&m, &[0], &r, Some(6)).unwrap());
        let ops = eisenbud_operators(fc.clone(), &ps(&ctx, &["x^2"]), None).unwrap();
        for k in fc.lo..fc.hi() - 1 {
            assert_eq!(ops.t[0].at(k), Mat::identity(1, ctx.field()));
        }
    }

    #[test]
    fn ci2_canonical_lift_gives_contractions() {
        let sys = residue_system(&["x", "y"]);
        let st = standard_resolution(&sys, 6).unwrap();
        let ops = eisenbud_operators(st.complex.clone(), &sys.f, None).unwrap();
        for i in 0..2 {
            for (&k, m) in &ops.t_tilde[i] {
                assert_eq!(m, &st.ops[i].at(k), "t_{i} at {k}");
            }
        }
    }

    #[test]
    fn operators_commute_up_to_homotopy_and_lifts_agree() {
        let sys = residue_system(&["x", "y"]);
        let st = standard_resolution(&sys, 5).unwrap();
        let a = eisenbud_operators(st.complex.clone(), &sys.f, None).unwrap();
        let alt = alternative_lift(&st.complex, &sys.f, 7);
        let b = eisenbud_operators(st.complex.clone(), &sys.f, Some(&alt)).unwrap();
        for i in 0..2 {
            nullhomotopy(&b.t[i].sub(&a.t[i])).unwrap();
        }
        let comm = a.t[0].compose(&a.t[1]).sub(&a.t[1].compose(&a.t[0]));
        nullhomotopy(&comm).unwrap();
    }

    #[test]
    fn entries_outside_f_are_reported() {
        let sys = residue_system(&["x", "y"]);
        let st = standard_resolution(&sys, 3).unwrap();
        let err = eisenbud_operators(st.complex.clone(), &ps(sys.ctx(), &["x^2"]), None).unwrap_err();
        assert!(matches!(err, Error::DecompositionFailure(_)));
    }
}
