//! Koszul complexes with their exterior multiplication maps.

use crate::algebra::matrix::Mat;
use crate::algebra::poly::Poly;
use crate::algebra::ring::Ctx;

use super::chain::ChainComplex;

#[derive(Clone, Debug)]
pub struct KoszulComplex {
    pub complex: ChainComplex,
    pub f: Vec<Poly>,
    /// Basis of `K_k`: subsets of size `k`, lexicographic.
    pub subsets: Vec<Vec<Vec<usize>>>,
}

/// Size-`k` subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..n {
            cur.push(s);
            rec(s + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The Koszul complex on `f`, with `K_k` in cohomological degree `-k` and
/// `∂(e_{j_0} ∧ … ∧ e_{j_{k-1}}) = Σ_t (-1)^t f_{j_t} e_{S \ j_t}`.
pub fn koszul(f: &[Poly], ctx: &Ctx) -> KoszulComplex {
    let c = f.len();
    let g = ctx.ring.grading();
    let degs: Vec<i64> = f.iter().map(|p| p.graded_degree(&g).unwrap_or(0)).collect();
    let subs: Vec<Vec<Vec<usize>>> = (0..=c).map(|k| subsets(c, k)).collect();
    let twists: Vec<Vec<i32>> =
        subs.iter().map(|l| l.iter().map(|s| -(s.iter().map(|&i| degs[i]).sum::<i64>() as i32)).collect()).collect();
    let mut maps = Vec::new();
    for k in 1..=c {
        let (src, tgt) = (&subs[k], &subs[k - 1]);
        let mut m = Mat::zero(tgt.len(), src.len());
        for (b, s) in src.iter().enumerate() {
            for t in 0..s.len() {
                let mut rest = s.clone();
                let j = rest.remove(t);
                let a = tgt.iter().position(|u| *u == rest).unwrap();
                let p = if t % 2 == 0 { f[j].clone() } else { f[j].neg() };
                m.set(a, b, ctx.nf(&p));
            }
        }
        maps.push(m);
    }
    KoszulComplex { complex: ChainComplex::from_resolution(ctx.clone(), twists, maps), f: f.to_vec(), subsets: subs }
}

impl KoszulComplex {
    pub fn c(&self) -> usize {
        self.f.len()
    }

    /// Left multiplication by `e_i`, `K_k -> K_{k+1}`.
    pub fn mult(&self, i: usize, k: usize) -> Mat {
        let field = self.complex.ctx.field();
        let src = &self.subsets[k];
        let empty = Vec::new();
        let tgt = self.subsets.get(k + 1).unwrap_or(&empty);
        let mut m = Mat::zero(tgt.len(), src.len());
        for (b, s) in src.iter().enumerate() {
            if s.contains(&i) {
                continue;
            }
            let before = s.iter().filter(|&&x| x < i).count();
            let mut u = s.clone();
            u.push(i);
            u.sort();
            let a = tgt.iter().position(|t| *t == u).unwrap();
            m.set(a, b, Poly::constant(field.from_i64(if before % 2 == 0 { 1 } else { -1 })));
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::ring::{PolyRing, RingCtx};
    use std::sync::Arc;

    fn q2() -> Ctx {
        RingCtx::polynomial(Arc::new(PolyRing::new(Field::prime(101).unwrap(), &["x", "y"], &[1, 1]).unwrap()))
    }

    #[test]
    fn koszul_on_two_squares() {
        let ctx = q2();
        let f = vec![ctx.parse("x^2").unwrap(), ctx.parse("y^2").unwrap()];
        let k = koszul(&f, &ctx);
        assert_eq!(k.complex.resolution_ranks(), vec![1, 2, 1]);
        let r = &ctx.ring;
        assert_eq!(k.complex.res_d(1).to_strings(r), vec![vec!["x^2", "y^2"]]);
        assert_eq!(k.complex.res_d(2).to_strings(r), vec![vec!["-y^2"], vec!["x^2"]]);
        assert_eq!(k.complex.res_term(2), &[-4]);
        k.complex.check_d_squared().unwrap();
        k.complex.check_homogeneous().unwrap();
    }

    #[test]
    fn exterior_multiplication() {
        let ctx = q2();
        let f = vec![ctx.parse("x^2").unwrap(), ctx.parse("y^2").unwrap()];
        let k = koszul(&f, &ctx);
        assert_eq!(k.mult(0, 0).to_strings(&ctx.ring), vec![vec!["1"], vec!["0"]]);
        for i in 0..2 {
            for j in 0..2 {
                let a = k.mult(i, 1).mul(&k.mult(j, 0));
                let b = k.mult(j, 1).mul(&k.mult(i, 0));
                assert!(a.add(&b).is_zero());
            }
        }
    }

    #[test]
    fn single_element() {
        let ctx = q2();
        let k = koszul(&[ctx.parse("x^2").unwrap()], &ctx);
        assert_eq!(k.complex.resolution_ranks(), vec![1, 1]);
        assert_eq!(k.complex.res_d(1).to_strings(&ctx.ring), vec![vec!["x^2"]]);
    }
}
