mod common;

use common::{module, random_form, residue, residue_spec};
use mfci::algebra::{Ideal, Presentation};
use mfci::extsupport::{ab_support, ext_modules, stabilization_degree, stable_ext, support_set, CiModule};
use mfci::fixtures::{fixture, FIXTURE_NAMES};
use mfci::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn routes_agree_on_fixtures() {
    for name in FIXTURE_NAMES {
        let m = module(name);
        let k = residue_spec(&fixture(name).unwrap()).ci_module().unwrap();
        let s = support_set(&m, &k, 6).unwrap();
        assert!(s.mf_route.unwrap().radical_equals(&s.ideal), "{name}");
    }
}

/// `R/(l)` over `F_101[x,y]/(x^2, y^2)` for a random linear form `l`.
fn random_cyclic(rng: &mut ChaCha8Rng) -> CiModule {
    let base = module("ci2");
    let l = random_form(rng, &base.q, 1);
    let r = base.r.clone();
    CiModule::new(&Presentation::cyclic(r.clone(), &[r.nf(&l)]), &base.f).unwrap()
}

#[test]
fn routes_agree_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let (m, n) = (random_cyclic(&mut rng), random_cyclic(&mut rng));
        // The cross-check inside support_set raises RouteMismatch on disagreement.
        let s = support_set(&m, &n, 6).unwrap();
        assert!(s.mf_route.is_some());
    }
}

#[test]
fn stable_range_agreement() {
    for name in FIXTURE_NAMES {
        let m = module(name);
        let k = residue_spec(&fixture(name).unwrap()).ci_module().unwrap();
        let c = m.c() as i64;
        let probe = ext_modules(&m, &k.pres, 4).unwrap();
        let q0 = stabilization_degree(&probe).unwrap();
        let top = q0 + 2 * c + 4;
        let ext = ext_modules(&m, &k.pres, top as usize).unwrap();
        let table = stable_ext(&ext, q0, top).unwrap();
        for q in q0..=top {
            assert_eq!(table.entries[&q], ext.hilbert(q), "{name} at {q}");
        }
    }
}

#[test]
fn residue_field_ext_over_ci2() {
    let k = residue("ci2");
    let ext = ext_modules(&k, &k.pres, 8).unwrap();
    for n in 0..=8 {
        assert_eq!(ext.dim(n), n as usize + 1);
    }
    let p = k.p_ring();
    let s = support_set(&k, &k, 6).unwrap();
    assert!(s.ideal.radical_equals(&Ideal::new(p.clone(), vec![p.parse("x").unwrap(), p.parse("y").unwrap()])));
    let a = ab_support(&ext).unwrap();
    assert!(a.equals(&Ideal::zero(a.ctx.clone())));
}

#[test]
fn negative_degrees_need_a_hypersurface() {
    let k = residue("ci2");
    let ext = ext_modules(&k, &k.pres, 6).unwrap();
    assert!(matches!(stable_ext(&ext, -1, 4), Err(Error::NegativeDegreeUnsupported { .. })));
}

#[test]
fn second_module_must_have_finite_length() {
    let m = module("ci2");
    let q = m.q.clone();
    let other = Presentation::cyclic(q.clone(), &[q.parse("x").unwrap()]);
    assert!(ext_modules(&m, &other, 4).is_err());
}
