//! Stable support sets as saturated annihilators of the Ext modules, the
//! fiber support over `k[T]`, and the standard properties of supports.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::field::Coeff;
use crate::algebra::linalg::{unit, zeros, Quotient, Vector};
use crate::algebra::module::{Ideal, DEFAULT_SATURATION_CAP};
use crate::algebra::ring::{Ctx, PolyRing, RingCtx};
use crate::error::{Error, Result};
use crate::mf::{hom_mf, supp_tpc};

use super::stable::stabilization_degree;
use super::{ext_modules, present, Action, CiModule, ExtData, Key};

#[derive(Clone, Debug)]
pub struct SupportIdeal {
    /// `(ann Ext^ev ∩ ann Ext^odd) : (T)^∞` in `Q[x, T]`.
    pub ideal: Ideal,
    pub ann_ev: Ideal,
    pub ann_odd: Ideal,
    /// Support of `Hom(E_M, E_N)` when computed.
    pub mf_route: Option<Ideal>,
}

impl SupportIdeal {
    pub fn is_empty(&self) -> bool {
        self.ideal.is_unit()
    }
}

fn t_ideal(p: &Ctx) -> Ideal {
    let ring = &p.ring;
    Ideal::new(p.clone(), ring.t_range().map(|i| ring.var(i)).collect())
}

/// The annihilator route. With `n_mod` the factorization route is computed
/// too; the two must agree up to radical.
pub fn support_from_ext(ext: &ExtData, n_mod: Option<&CiModule>) -> Result<SupportIdeal> {
    let ann_ev = ext.parity_presentation(0).pres.annihilator();
    let ann_odd = ext.parity_presentation(1).pres.annihilator();
    let p = ext.m.p_ring();
    let ideal = ann_ev.intersect(&ann_odd).saturate(&t_ideal(&p), DEFAULT_SATURATION_CAP)?;
    let mf_route = match n_mod {
        None => None,
        Some(n) => {
            let h = hom_mf(&ext.m.mf()?, &n.mf()?)?;
            let s = supp_tpc(&h, true)?.ideal();
            if !s.radical_equals(&ideal) {
                return Err(Error::RouteMismatch(format!(
                    "annihilator route {:?} vs factorization route {:?}",
                    ideal.to_strings(),
                    s.to_strings()
                )));
            }
            Some(s)
        }
    };
    Ok(SupportIdeal { ideal, ann_ev, ann_odd, mf_route })
}

pub fn support_set(m: &CiModule, n: &CiModule, n_max: usize) -> Result<SupportIdeal> {
    let ext = ext_modules(m, &n.pres, n_max)?;
    support_from_ext(&ext, Some(n))
}

/// `k[T_1..T_c]` on its own, all weights 1.
pub fn fiber_ring(ext: &ExtData) -> Ctx {
    let c = ext.c();
    let names: Vec<String> = (1..=c).map(|i| format!("T_{i}")).collect();
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ring = PolyRing::new(ext.m.q.field(), &names, &vec![1; c]).expect("distinct names");
    RingCtx::polynomial(Arc::new(ring))
}

/// Annihilator over `k[T]` of `Ext ⊗_R k` in degrees `≥ q₀`. Classes below
/// `q₀` are `(T)`-torsion and only contribute the irrelevant ideal.
pub fn ab_support(ext: &ExtData) -> Result<Ideal> {
    let q0 = stabilization_degree(ext)?;
    let field = ext.m.q.field();
    let kt = fiber_ring(ext);
    // Ext^n_δ / Σ_j x_j Ext^n_{δ-w_j}.
    let mut quots: BTreeMap<Key, Quotient> = BTreeMap::new();
    for (k, d) in ext.hom.dims() {
        if k.0 < q0 || d == 0 {
            continue;
        }
        let mut img: Vec<Vector> = Vec::new();
        for (j, &w) in ext.x_weights.iter().enumerate() {
            let src = (k.0, k.1 - w);
            let ds = ext.hom.piece_dim(src);
            for u in 0..ds {
                img.push(ext.act_x(j, src, &unit(field, ds, u)));
            }
        }
        let all: Vec<Vector> = (0..d).map(|u| unit(field, d, u)).collect();
        quots.insert(k, Quotient::new(field, d, &all, &img));
    }
    let quots = &quots;
    let mut ideal = Ideal::unit(kt.clone());
    for parity in [0, 1] {
        let actions: Vec<Action> = (0..ext.c())
            .map(|i| {
                let apply = move |k: Key, v: &[Coeff]| -> Vector {
                    let tk = (k.0 + 2, k.1 - ext.f_degs[i]);
                    let Some(tq) = quots.get(&tk) else { return Vec::new() };
                    let img = ext.act_t(i, k, &quots[&k].lift(v));
                    if img.is_empty() {
                        return zeros(field, tq.dim());
                    }
                    tq.coords(&img).expect("every vector has a class")
                };
                Action { var: i, shift: (2, -ext.f_degs[i]), apply: Box::new(apply) as Box<dyn Fn(Key, &[Coeff]) -> Vector> }
            })
            .collect();
        let dims: BTreeMap<Key, usize> =
            quots.iter().filter(|(k, q)| k.0.rem_euclid(2) == parity && q.dim() > 0).map(|(k, q)| (*k, q.dim())).collect();
        let gp = present(&kt, &dims, &actions, ext.n_max as i64, |k| (k.0 / 2) as i32);
        ideal = ideal.intersect(&gp.pres.annihilator());
    }
    Ok(ideal)
}

#[derive(Clone, Debug)]
pub struct PropertyCheck {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub supports: Vec<(String, String, Vec<String>)>,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Over all combinations of the given modules:
/// (1) `V(M,N)` is empty iff `Ext^n(M,N) = 0` for `n ∈ [q₀, q₀+6]`;
/// (2) `V(M,N) ∩ V(M',N') = V(M,N') ∩ V(M',N)`;
/// (3) `V(M,N) = V(M,M) ∩ V(N,N) = V(N,M)`.
/// Needs `n_max ≥ q₀ + 6` for (1) to see the whole range.
pub fn check_support_properties(mods: &[(String, CiModule)], n_max: usize) -> Result<PropertyReport> {
    let k = mods.len();
    let mut v: Vec<Vec<Ideal>> = Vec::new();
    let mut checks = Vec::new();
    let mut supports = Vec::new();
    for (na, ma) in mods {
        let mut row = Vec::new();
        for (nb, mb) in mods {
            let ext = ext_modules(ma, &mb.pres, n_max)?;
            let s = support_from_ext(&ext, Some(mb))?;
            let q0 = stabilization_degree(&ext)?;
            let top = q0 + 6;
            if top > n_max as i64 {
                return Err(Error::WindowTooSmall { degree: top, lo: 0, hi: n_max as i64 });
            }
            let vanish = (q0..=top).all(|n| ext.dim(n) == 0);
            checks.push(PropertyCheck {
                name: format!("(1) V({na},{nb}) empty iff Ext vanishes"),
                pass: s.is_empty() == vanish,
                witness: format!("support {:?}; Ext zero on [{q0},{top}]: {vanish}", s.ideal.to_strings()),
            });
            supports.push((na.clone(), nb.clone(), s.ideal.to_strings()));
            row.push(s.ideal);
        }
        v.push(row);
    }
    let names: Vec<&str> = mods.iter().map(|(n, _)| n.as_str()).collect();
    // Intersection of projective supports: the sum, saturated again.
    let meet = |a: &Ideal, b: &Ideal| a.add(b).saturate(&t_ideal(&a.ctx), DEFAULT_SATURATION_CAP);
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for d in 0..k {
                    let lhs = meet(&v[a][b], &v[c][d])?;
                    let rhs = meet(&v[a][d], &v[c][b])?;
                    checks.push(PropertyCheck {
                        name: format!(
                            "(2) V({},{}) ∩ V({},{}) = V({},{}) ∩ V({},{})",
                            names[a], names[b], names[c], names[d], names[a], names[d], names[c], names[b]
                        ),
                        pass: lhs.radical_equals(&rhs),
                        witness: format!("{:?} vs {:?}", lhs.to_strings(), rhs.to_strings()),
                    });
                }
            }
            let both = meet(&v[a][a], &v[b][b])?;
            checks.push(PropertyCheck {
                name: format!("(3) V({0},{1}) = V({0},{0}) ∩ V({1},{1}) = V({1},{0})", names[a], names[b]),
                pass: v[a][b].radical_equals(&both) && v[a][b].radical_equals(&v[b][a]),
                witness: format!("{:?}, {:?}, {:?}", v[a][b].to_strings(), both.to_strings(), v[b][a].to_strings()),
            });
        }
    }
    Ok(PropertyReport { supports, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extsupport::tests::{ci_module, residue};
    use crate::operators::tests::ps;

    fn ideal(p: &Ctx, gens: &[&str]) -> Ideal {
        Ideal::new(p.clone(), ps(p, gens))
    }

    #[test]
    fn fixture_supports() {
        let k = ci_module(&["x", "y"], &["x", "y"]);
        let rx = ci_module(&["x", "y"], &["x"]);
        let ry = ci_module(&["x", "y"], &["y"]);
        let p = k.p_ring();
        let s = support_set(&k, &k, 6).unwrap();
        assert!(s.ideal.radical_equals(&ideal(&p, &["x", "y"])));
        assert!(s.mf_route.is_some());
        let s = support_set(&rx, &rx, 6).unwrap();
        assert!(s.ideal.radical_equals(&ideal(&p, &["x", "y", "T_2"])));
        let s = support_set(&ry, &ry, 6).unwrap();
        assert!(s.ideal.radical_equals(&ideal(&p, &["x", "y", "T_1"])));
        assert!(support_set(&rx, &ry, 8).unwrap().is_empty());
    }

    #[test]
    fn fiber_supports() {
        let k = ci_module(&["x", "y"], &["x", "y"]);
        let rx = ci_module(&["x", "y"], &["x"]);
        let free = ci_module(&["x", "y"], &[]);
        let e = ext_modules(&k, &residue(&k), 8).unwrap();
        let a = ab_support(&e).unwrap();
        assert!(a.equals(&Ideal::zero(a.ctx.clone())));
        let e = ext_modules(&rx, &rx.pres, 8).unwrap();
        let a = ab_support(&e).unwrap();
        assert!(a.equals(&ideal(&a.ctx, &["T_2"])));
        let e = ext_modules(&free, &residue(&free), 8).unwrap();
        assert!(ab_support(&e).unwrap().is_unit());
    }

    #[test]
    fn properties_on_the_pair_family() {
        let mods = vec![
            ("k".to_string(), ci_module(&["x", "y"], &["x", "y"])),
            ("R/(x)".to_string(), ci_module(&["x", "y"], &["x"])),
            ("R/(y)".to_string(), ci_module(&["x", "y"], &["y"])),
        ];
        let rep = check_support_properties(&mods, 8).unwrap();
        let bad: Vec<_> = rep.checks.iter().filter(|c| !c.pass).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
}
