//! Supports of twisted periodic complexes via annihilators of homology.

use crate::algebra::module::{Ideal, Presentation, DEFAULT_SATURATION_CAP};
use crate::complexes::homology;
use crate::error::{Error, Result};

use super::Tpc;

#[derive(Clone, Debug)]
pub struct TpcSupport {
    pub h0: Presentation,
    pub h1: Presentation,
    pub ann0: Ideal,
    pub ann1: Ideal,
}

impl TpcSupport {
    /// `V(ann H0) ∪ V(ann H1) = V(ann H0 ∩ ann H1)`.
    pub fn ideal(&self) -> Ideal {
        self.ann0.intersect(&self.ann1)
    }
}

/// Homology of one period and its annihilators; when `projective` is set and
/// the ring has a T-block, annihilators are saturated by `(T_1..T_c)`.
pub fn supp_tpc(p: &Tpc, projective: bool) -> Result<TpcSupport> {
    if !p.ctx.is_polynomial() {
        return Err(Error::NonRegularContext);
    }
    if !p.w.is_zero() {
        return Err(Error::input("a twisted periodic complex factorizes zero"));
    }
    // C^{-1} = E1, C^0 = E0, C^1 = E1(l), C^2 = E0(l).
    let c = p.periodic_complex(-1, 2);
    let h0 = homology(&c, 0)?;
    let h1 = homology(&c, 1)?;
    let mut ann0 = h0.annihilator();
    let mut ann1 = h1.annihilator();
    let ring = &p.ctx.ring;
    if projective && ring.c() > 0 {
        let t = Ideal::new(p.ctx.clone(), ring.t_range().map(|i| ring.var(i)).collect());
        ann0 = ann0.saturate(&t, DEFAULT_SATURATION_CAP)?;
        ann1 = ann1.saturate(&t, DEFAULT_SATURATION_CAP)?;
    }
    Ok(TpcSupport { h0, h1, ann0, ann1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mf::tests::h1_mf;
    use crate::mf::{hom_mf, GradedMF};
    use crate::algebra::matrix::Mat;

    #[test]
    fn endomorphisms_of_residue_field_mf() {
        let e = h1_mf();
        let s = supp_tpc(&hom_mf(&e, &e).unwrap(), true).unwrap();
        let x = e.ctx.parse("x").unwrap();
        assert!(s.ann0.contains(&x));
        assert!(s.ideal().radical_contains(&x));
        assert!(!s.ideal().is_unit());
    }

    #[test]
    fn exact_tpc_has_empty_support() {
        let e = h1_mf();
        let ctx = e.ctx.clone();
        let one = Mat::identity(1, ctx.field());
        let z = Mat::zero(1, 1);
        let p = GradedMF::new(ctx, crate::algebra::Poly::zero(), 1, vec![0], vec![0], one, z).unwrap();
        let s = supp_tpc(&p, true).unwrap();
        assert!(s.ann0.is_unit() && s.ann1.is_unit());
    }

    #[test]
    fn cyclic_homology() {
        let e = h1_mf();
        let ctx = e.ctx.clone();
        let x = Mat::from_rows(vec![vec![ctx.parse("x").unwrap()]]);
        let z = Mat::zero(1, 1);
        let p = GradedMF::new(ctx.clone(), crate::algebra::Poly::zero(), 1, vec![0], vec![0], x, z).unwrap();
        let s = supp_tpc(&p, false).unwrap();
        assert!(s.ann0.equals(&Ideal::new(ctx.clone(), vec![ctx.parse("x").unwrap()])));
    }

    #[test]
    fn quotient_context_is_rejected() {
        let e = h1_mf();
        let mut p = hom_mf(&e, &e).unwrap();
        p.ctx = p.ctx.quotient(&[p.ctx.parse("x^2").unwrap()]);
        assert_eq!(supp_tpc(&p, true).unwrap_err(), Error::NonRegularContext);
    }
}
