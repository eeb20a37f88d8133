#![allow(dead_code)]

use std::sync::Arc;

use mfci::algebra::{Ctx, Field, Poly, PolyRing, RingCtx};
use mfci::extsupport::CiModule;
use mfci::fixtures::{fixture, ModuleSpec, ProblemSpec};
use mfci::mf::{koszul_mf, GradedMF};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q2() -> Ctx {
    RingCtx::polynomial(Arc::new(PolyRing::new(Field::prime(101).unwrap(), &["x", "y"], &[1, 1]).unwrap()))
}

pub fn module(name: &str) -> CiModule {
    fixture(name).unwrap().ci_module().unwrap()
}

/// The residue field over the ring of `spec`.
pub fn residue_spec(spec: &ProblemSpec) -> ProblemSpec {
    let vars: Vec<&str> = spec.ring.variables.iter().map(|v| v.as_str()).collect();
    spec.with_module("k", ModuleSpec::koszul(&vars))
}

pub fn residue(name: &str) -> CiModule {
    residue_spec(&fixture(name).unwrap()).ci_module().unwrap()
}

/// A nonzero form of degree `d`.
pub fn random_form(rng: &mut ChaCha8Rng, ctx: &Ctx, d: u32) -> Poly {
    let ring = &ctx.ring;
    let monos = ring.monomials_of_degree(&(0..ring.nvars()).collect::<Vec<_>>(), d);
    loop {
        let mut p = Poly::zero();
        for m in &monos {
            if rng.gen_bool(0.5) {
                p = p.add(&Poly::term(*m, ring.coeff(rng.gen_range(1..101))));
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// Pairs `(a_i, b_i)` with every `a_i b_i` of degree `total`.
pub fn random_pairs(rng: &mut ChaCha8Rng, ctx: &Ctx, n: usize, total: u32) -> (Vec<Poly>, Vec<Poly>) {
    (0..n)
        .map(|_| {
            let da = rng.gen_range(1..total);
            (random_form(rng, ctx, da), random_form(rng, ctx, total - da))
        })
        .unzip()
}

/// Operations need a common potential degree, so `total` is fixed by the caller.
pub fn random_koszul_mf(rng: &mut ChaCha8Rng, ctx: &Ctx, total: u32) -> GradedMF {
    let n = rng.gen_range(1..=2);
    let (a, b) = random_pairs(rng, ctx, n, total);
    koszul_mf(&a, &b, ctx).unwrap()
}

/// Koszul factorizations of the same potential, by swapping `a_i` and `b_i`.
pub fn same_potential(rng: &mut ChaCha8Rng, a: &[Poly], b: &[Poly], ctx: &Ctx) -> GradedMF {
    let (x, y): (Vec<Poly>, Vec<Poly>) = a.iter().zip(b).map(|(p, q)| if rng.gen_bool(0.5) { (q.clone(), p.clone()) } else { (p.clone(), q.clone()) }).unzip();
    koszul_mf(&x, &y, ctx).unwrap()
}
