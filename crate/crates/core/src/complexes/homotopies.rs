//! Systems of higher homotopies on a finite free resolution over `Q`.
//!
//! Components are indexed homologically: `σ^J_j: G_j -> G_{j+2|J|-1}`, with
//! `σ^0_j = ∂_j`. The defining identities are
//! `Σ_{J'+J''=J} σ^{J'} σ^{J''} = f_i·1` for `J = e_i` and `0` for `|J| ≥ 2`.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::matrix::Mat;
use crate::algebra::ops::{lift, LiftSolver};
use crate::algebra::poly::Poly;
use crate::algebra::ring::Ctx;
use crate::error::{Error, Result};

use super::chain::ChainComplex;
use super::koszul::KoszulComplex;

#[derive(Clone, Debug)]
pub struct HigherHomotopySystem {
    /// The resolution `G` (cohomological storage, `G_j` at degree `-j`).
    pub base: ChainComplex,
    pub f: Vec<Poly>,
    /// `sigma[J][j] = σ^J_j` for `J ≠ 0` and `j = 0..=L`.
    pub sigma: BTreeMap<Vec<usize>, Vec<Mat>>,
    /// All `σ^J` with `|J| > j_max` vanish.
    pub j_max: usize,
}

/// Multi-indices in `ℕ^c` of total degree `n`, ascending lexicographic.
pub fn multi_indices(c: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(k - 1, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if c == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(c, n, &mut Vec::new(), &mut out);
    out
}

/// All splittings `J = J' + J''` with both parts nonzero.
fn splittings(j: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut cur = vec![0; j.len()];
    loop {
        let total: usize = cur.iter().sum();
        let whole: usize = j.iter().sum();
        if total != 0 && total != whole {
            let rest: Vec<usize> = j.iter().zip(&cur).map(|(a, b)| a - b).collect();
            out.push((cur.clone(), rest));
        }
        let mut k = 0;
        while k < j.len() {
            if cur[k] < j[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = 0;
            k += 1;
        }
        if k == j.len() {
            break;
        }
    }
    out
}

fn unit_index(j: &[usize]) -> Option<usize> {
    (j.iter().sum::<usize>() == 1).then(|| j.iter().position(|&a| a == 1).unwrap())
}

impl HigherHomotopySystem {
    pub fn ctx(&self) -> &Ctx {
        &self.base.ctx
    }

    pub fn c(&self) -> usize {
        self.f.len()
    }

    /// Length `L` of the resolution.
    pub fn length(&self) -> usize {
        self.base.length() as usize
    }

    pub fn rank(&self, j: i64) -> usize {
        self.base.rank(-j)
    }

    /// `σ^J_j`, with `σ^0_j = ∂_j` and zero matrices where nothing is stored.
    pub fn component(&self, jj: &[usize], j: i64) -> Mat {
        let n: usize = jj.iter().sum();
        if n == 0 {
            return self.base.res_d(j);
        }
        let tgt = j + 2 * n as i64 - 1;
        match self.sigma.get(jj) {
            Some(v) if j >= 0 && (j as usize) < v.len() => v[j as usize].clone(),
            _ => Mat::zero(self.rank(tgt), self.rank(j)),
        }
    }

    /// `Σ_{J'+J''=J} σ^{J'} σ^{J''}` at `G_j`, including the `∂`-terms.
    pub fn convolution(&self, jj: &[usize], j: i64) -> Mat {
        let zero = vec![0; jj.len()];
        let n: i64 = jj.iter().sum::<usize>() as i64;
        let mut acc = self.component(&zero, j + 2 * n - 1).mul(&self.component(jj, j));
        acc = acc.add(&self.component(jj, j - 1).mul(&self.component(&zero, j)));
        for (a, b) in splittings(jj) {
            let nb: i64 = b.iter().sum::<usize>() as i64;
            acc = acc.add(&self.component(&a, j + 2 * nb - 1).mul(&self.component(&b, j)));
        }
        acc.reduce(self.ctx())
    }

    /// Re-verifies every defining identity for `1 ≤ |J| ≤ j_max + 1`.
    pub fn check(&self) -> Result<()> {
        for n in 1..=self.j_max + 1 {
            for jj in multi_indices(self.c(), n) {
                for j in 0..=self.length() as i64 {
                    let got = self.convolution(&jj, j);
                    let want = match unit_index(&jj) {
                        Some(i) => Mat::scalar(self.rank(j), &self.f[i]),
                        None => Mat::zero(got.rows, got.cols),
                    };
                    if let Some((r, c)) = got.first_difference(&want.reduce(self.ctx())) {
                        return Err(Error::VerificationFailure(format!(
                            "higher homotopy identity for J = {jj:?} fails on G_{j} at ({r},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds `σ^J` by induction on `|J|`, lifting through `∂` degree by degree.
pub fn higher_homotopies(g: &ChainComplex, f: &[Poly]) -> Result<HigherHomotopySystem> {
    let ctx = g.ctx.clone();
    let len = g.length().max(0) as usize;
    let c = f.len();
    let j_max = (len + 1) / 2;
    let mut sys = HigherHomotopySystem { base: g.clone(), f: f.to_vec(), sigma: BTreeMap::new(), j_max };
    let mut solvers: HashMap<i64, LiftSolver> = HashMap::new();
    let d1 = solvers.entry(1).or_insert_with(|| LiftSolver::new(&g.res_d(1), &ctx));
    for fi in f {
        let s = Mat::scalar(g.rank(0), fi);
        if (0..s.cols).any(|k| !d1.contains(&s.col(k))) {
            return Err(Error::NotAnRModule);
        }
    }
    for n in 1..=j_max {
        for jj in multi_indices(c, n) {
            let mut comps: Vec<Mat> = Vec::with_capacity(len + 1);
            for j in 0..=len as i64 {
                let tgt = j + 2 * n as i64 - 1;
                let (rows, cols) = (sys.rank(tgt), sys.rank(j));
                if cols == 0 {
                    comps.push(Mat::zero(rows, cols));
                    continue;
                }
                // RHS_J minus everything already known, at G_j -> G_{tgt-1}.
                let mut rhs = match unit_index(&jj) {
                    Some(i) => Mat::scalar(sys.rank(j), &f[i]),
                    None => Mat::zero(sys.rank(tgt - 1), cols),
                };
                for (a, b) in splittings(&jj) {
                    let nb = b.iter().sum::<usize>() as i64;
                    rhs = rhs.sub(&sys.component(&a, j + 2 * nb - 1).mul(&sys.component(&b, j)));
                }
                if j > 0 {
                    rhs = rhs.sub(&comps[j as usize - 1].mul(&g.res_d(j)));
                }
                let rhs = rhs.reduce(&ctx);
                let a = g.res_d(tgt);
                let solver = solvers.entry(tgt).or_insert_with(|| LiftSolver::new(&a, &ctx));
                let x = if rhs.is_zero() {
                    Mat::zero(rows, cols)
                } else {
                    solver.solve_matrix(&rhs).map_err(|_| {
                        if n == 1 && j == 0 {
                            Error::NotAnRModule
                        } else {
                            Error::LiftObstruction(format!("J = {jj:?}, component at G_{j}"))
                        }
                    })?
                };
                comps.push(x);
            }
            sys.sigma.insert(jj, comps);
        }
    }
    sys.check().map_err(|e| Error::LiftObstruction(e.to_string()))?;
    Ok(sys)
}

/// The DG shortcut for a Koszul resolution `K(g)` of `Q/(g)`: writing
/// `f_i = Σ_j a_ij g_j`, take `σ^i = Σ_j a_ij·(e_j ∧ -)` and `σ^J = 0` for
/// `|J| ≥ 2`.
pub fn koszul_dg_homotopies(k: &KoszulComplex, f: &[Poly]) -> Result<HigherHomotopySystem> {
    let ctx = k.complex.ctx.clone();
    let m = k.c();
    let row = if m == 0 { Mat::zero(1, 0) } else { Mat::from_rows(vec![k.f.clone()]) };
    let len = m;
    let j_max = (len + 1) / 2;
    let mut sigma = BTreeMap::new();
    for (i, fi) in f.iter().enumerate() {
        let a = lift(&[fi.clone()], &row, &ctx).map_err(|_| Error::NotAnRModule)?;
        let mut comps = Vec::new();
        for deg in 0..=len {
            let mut acc = Mat::zero(k.subsets.get(deg + 1).map_or(0, |s| s.len()), k.subsets[deg].len());
            for (j, aij) in a.iter().enumerate() {
                if !aij.is_zero() {
                    acc = acc.add(&k.mult(j, deg).scale_poly(aij));
                }
            }
            comps.push(acc.reduce(&ctx));
        }
        let mut jj = vec![0; f.len()];
        jj[i] = 1;
        sigma.insert(jj, comps);
    }
    let sys = HigherHomotopySystem { base: k.complex.clone(), f: f.to_vec(), sigma, j_max };
    sys.check()?;
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::ring::{PolyRing, RingCtx};
    use crate::complexes::koszul::koszul;
    use std::sync::Arc;

    fn q(names: &[&str]) -> Ctx {
        let w = vec![1; names.len()];
        RingCtx::polynomial(Arc::new(PolyRing::new(Field::prime(101).unwrap(), names, &w).unwrap()))
    }

    fn polys(ctx: &Ctx, s: &[&str]) -> Vec<Poly> {
        s.iter().map(|t| ctx.parse(t).unwrap()).collect()
    }

    #[test]
    fn index_enumeration() {
        assert_eq!(multi_indices(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(multi_indices(3, 1).len(), 3);
        assert_eq!(splittings(&[1, 1]).len(), 2);
        assert_eq!(splittings(&[2, 0]), vec![(vec![1, 0], vec![1, 0])]);
    }

    #[test]
    fn ci2_generic_lift() {
        let ctx = q(&["x", "y"]);
        let g = koszul(&polys(&ctx, &["x", "y"]), &ctx).complex;
        let s = higher_homotopies(&g, &polys(&ctx, &["x^2", "y^2"])).unwrap();
        let r = &ctx.ring;
        assert_eq!(s.component(&[1, 0], 0).to_strings(r), vec![vec!["x"], vec!["0"]]);
        assert_eq!(s.component(&[1, 0], 1).to_strings(r), vec![vec!["0", "x"]]);
        assert_eq!(s.component(&[0, 1], 0).to_strings(r), vec![vec!["0"], vec!["y"]]);
        assert_eq!(s.component(&[0, 1], 1).to_strings(r), vec![vec!["-y", "0"]]);
        for jj in multi_indices(2, 2) {
            for j in 0..=2 {
                assert!(s.component(&jj, j).is_zero());
            }
        }
    }

    #[test]
    fn ci2_dg_matches_generic() {
        let ctx = q(&["x", "y"]);
        let k = koszul(&polys(&ctx, &["x", "y"]), &ctx);
        let f = polys(&ctx, &["x^2", "y^2"]);
        let a = koszul_dg_homotopies(&k, &f).unwrap();
        let b = higher_homotopies(&k.complex, &f).unwrap();
        assert_eq!(a.sigma, b.sigma);
    }

    #[test]
    fn hypersurface() {
        let ctx = q(&["x"]);
        let g = koszul(&polys(&ctx, &["x"]), &ctx).complex;
        let s = higher_homotopies(&g, &polys(&ctx, &["x^2"])).unwrap();
        assert_eq!(s.component(&[1], 0).to_strings(&ctx.ring), vec![vec!["x"]]);
    }

    #[test]
    fn free_module_has_no_room() {
        let ctx = q(&["x", "y"]);
        let g = ChainComplex::from_resolution(ctx.clone(), vec![vec![0]], vec![]);
        // A free Q-module is not an R-module unless f = 0.
        assert_eq!(higher_homotopies(&g, &polys(&ctx, &["x^2"])).unwrap_err(), Error::NotAnRModule);
        let s = higher_homotopies(&g, &[Poly::zero()]).unwrap();
        assert!(s.sigma.values().flatten().all(|m| m.is_zero()));
    }

    #[test]
    fn not_an_r_module() {
        let ctx = q(&["x", "y"]);
        let g = koszul(&polys(&ctx, &["x"]), &ctx).complex;
        assert_eq!(higher_homotopies(&g, &polys(&ctx, &["y^2"])).unwrap_err(), Error::NotAnRModule);
    }

    #[test]
    fn ci3_nontrivial_higher_terms_vanish_consistently() {
        let ctx = q(&["x", "y", "z"]);
        let g = koszul(&polys(&ctx, &["x", "y", "z"]), &ctx).complex;
        let s = higher_homotopies(&g, &polys(&ctx, &["x^2", "y^2", "z^2"])).unwrap();
        assert_eq!(s.j_max, 2);
        s.check().unwrap();
    }
}
