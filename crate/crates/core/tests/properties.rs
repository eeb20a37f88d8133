mod common;

use common::{q2, random_koszul_mf};
use mfci::algebra::linalg::{kernel, rank};
use mfci::algebra::mono::Mono;
use mfci::algebra::{Coeff, Ctx, Field, Ideal, Poly};
use mfci::fixtures::{random_ci, ProblemSpec};
use mfci::mf::{canonical_isos, dual_mf, tensor_mf};
use mfci::operators::standard_resolution;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly(ctx: &Ctx, terms: &[((u16, u16), i64)]) -> Poly {
    let w = &ctx.ring.weights;
    Poly::from_terms(terms.iter().map(|((a, b), c)| (Mono::new(&[*a, *b], w), ctx.ring.coeff(*c))).collect())
}

fn terms() -> impl Strategy<Value = Vec<((u16, u16), i64)>> {
    prop::collection::vec(((0u16..4, 0u16..4), -50i64..50), 0..5)
}

fn field_vec(f: Field, v: &[i64]) -> Vec<Coeff> {
    v.iter().map(|&x| f.from_i64(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in terms(), b in terms(), c in terms()) {
        let ctx = q2();
        let (a, b, c) = (poly(&ctx, &a), poly(&ctx, &b), poly(&ctx, &c));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn print_parse_round_trip(a in terms()) {
        let ctx = q2();
        let p = poly(&ctx, &a);
        prop_assert_eq!(ctx.parse(&ctx.show(&p)).unwrap(), p);
    }

    #[test]
    fn kernel_vectors_are_annihilated(cols in prop::collection::vec(prop::collection::vec(-3i64..4, 3), 1..6)) {
        let f = Field::prime(101).unwrap();
        let cols: Vec<Vec<Coeff>> = cols.iter().map(|c| field_vec(f, c)).collect();
        let ker = kernel(f, 3, &cols);
        prop_assert_eq!(ker.len() + rank(f, 3, &cols), cols.len());
        for k in &ker {
            for row in 0..3 {
                let s = cols.iter().zip(k).fold(f.zero(), |acc, (c, x)| &acc + &(&c[row] * x));
                prop_assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn ideal_sum_contains_summands(a in terms(), b in terms()) {
        let ctx = q2();
        let (p, q) = (poly(&ctx, &a), poly(&ctx, &b));
        let i = Ideal::new(ctx.clone(), vec![p.clone()]);
        let j = Ideal::new(ctx.clone(), vec![q.clone()]);
        let s = i.add(&j);
        prop_assert!(s.contains(&p) && s.contains(&q));
        prop_assert!(i.intersect(&j).is_subset(&i));
        prop_assert!(s.radical_equals(&s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn random_instances_satisfy_all_equations(seed in 0u64..10_000) {
        let spec = random_ci(seed);
        prop_assert_eq!(ProblemSpec::from_json(&spec.to_json()).unwrap(), spec.clone());
        let m = spec.ci_module().unwrap();
        m.sys.check().unwrap();
        m.mf().unwrap().check().unwrap();
        let sr = standard_resolution(&m.sys, 4).unwrap();
        sr.complex.check_d_squared().unwrap();
        for op in &sr.ops {
            op.check_chain_map().unwrap();
        }
    }

    #[test]
    fn operations_preserve_factorizations(seed in 0u64..10_000) {
        let ctx = q2();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_koszul_mf(&mut rng, &ctx, 2);
        let f = random_koszul_mf(&mut rng, &ctx, 2);
        tensor_mf(&e, &f).unwrap().check().unwrap();
        dual_mf(&e).check().unwrap();
        prop_assert_eq!(dual_mf(&dual_mf(&e)).rank(), e.rank());
        for c in canonical_isos(&e, &f, &f, &e).unwrap() {
            c.verify().unwrap();
        }
    }
}
