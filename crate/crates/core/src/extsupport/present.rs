//! Presentations of bigraded modules known only through finite-dimensional
//! pieces `V_{(n,δ)}` and the action of ring variables between them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::algebra::linalg::{unit, zeros, Echelon, Vector};
use crate::algebra::matrix::Mat;
use crate::algebra::module::Presentation;
use crate::algebra::mono::{Mono, MAX_VARS};
use crate::algebra::poly::Poly;
use crate::algebra::ring::Ctx;

pub type Key = (i64, i64);

/// Ring variable `var` maps `V_K -> V_{K+shift}`.
pub struct Action<'a> {
    pub var: usize,
    pub shift: Key,
    pub apply: Box<dyn Fn(Key, &[crate::algebra::field::Coeff]) -> Vector + 'a>,
}

#[derive(Clone, Debug)]
pub struct GradedPresentation {
    pub pres: Presentation,
    pub gen_keys: Vec<Key>,
    pub rel_keys: Vec<Key>,
}

type Entry = (usize, Vec<u16>);
type Sparse = Vec<(Entry, crate::algebra::field::Coeff)>;

/// Minimal generators and relations, key by key in increasing order, for
/// keys with `n ≤ n_bound`. A key's generator twist is `-tdeg(key)`.
/// Relations are complete for the module truncated at `n_bound`.
pub fn present(ctx: &Ctx, dims: &BTreeMap<Key, usize>, actions: &[Action], n_bound: i64, tdeg: impl Fn(Key) -> i32) -> GradedPresentation {
    let field = ctx.field();
    let d_hi = dims.iter().filter(|(_, &d)| d > 0).map(|(k, _)| k.1).max();
    let Some(d_hi) = d_hi else {
        return GradedPresentation { pres: Presentation::new(ctx.clone(), Vec::new(), Mat::zero(0, 0)), gen_keys: Vec::new(), rel_keys: Vec::new() };
    };
    let d_hi = d_hi + actions.iter().map(|a| a.shift.1).max().unwrap_or(0).max(0);
    let dim = |k: &Key| dims.get(k).copied().unwrap_or(0);

    let mut queue: BTreeSet<Key> = dims.iter().filter(|(_, &d)| d > 0).map(|(k, _)| *k).collect();
    let mut pending: HashMap<Key, (Vec<Entry>, Vec<Vector>, HashMap<Entry, usize>)> = HashMap::new();
    let mut kernels: HashMap<Key, Vec<Sparse>> = HashMap::new();
    let mut gen_keys = Vec::new();
    let mut rels: Vec<(Key, Sparse)> = Vec::new();

    while let Some(k) = queue.pop_first() {
        let (mut entries, mut evals, mut index) = pending.remove(&k).unwrap_or_default();
        let dk = dim(&k);
        let m = entries.len();
        let mut ech = Echelon::new(field, dk, m);
        let kernel: Vec<Vector> = evals.iter().enumerate().filter_map(|(j, v)| ech.insert(v, &unit(field, m, j))).collect();
        for u in 0..dk {
            let e = unit(field, dk, u);
            if ech.insert(&e, &zeros(field, m)).is_none() {
                let g = gen_keys.len();
                gen_keys.push(k);
                let ent = (g, vec![0u16; actions.len()]);
                index.insert(ent.clone(), entries.len());
                entries.push(ent);
                evals.push(e);
            }
        }
        // Relations implied by those at predecessor keys.
        let mut implied = Echelon::new(field, m, 0);
        for (ai, a) in actions.iter().enumerate() {
            let pred = (k.0 - a.shift.0, k.1 - a.shift.1);
            for kv in kernels.get(&pred).into_iter().flatten() {
                let mut v = zeros(field, m);
                for ((g, ex), c) in kv {
                    let mut ex = ex.clone();
                    ex[ai] += 1;
                    v[index[&(*g, ex)]] = c.clone();
                }
                implied.insert(&v, &[]);
            }
        }
        let mut stored = Vec::new();
        for kv in &kernel {
            let sparse: Sparse = kv.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (entries[j].clone(), c.clone())).collect();
            if implied.insert(kv, &[]).is_none() {
                rels.push((k, sparse.clone()));
            }
            stored.push(sparse);
        }
        kernels.insert(k, stored);
        for (ai, a) in actions.iter().enumerate() {
            let nk = (k.0 + a.shift.0, k.1 + a.shift.1);
            if nk.0 > n_bound || nk.1 > d_hi {
                continue;
            }
            let slot = pending.entry(nk).or_default();
            for (ent, ev) in entries.iter().zip(&evals) {
                let mut ex = ent.1.clone();
                ex[ai] += 1;
                let ne = (ent.0, ex);
                if slot.2.contains_key(&ne) {
                    continue;
                }
                slot.2.insert(ne.clone(), slot.0.len());
                slot.0.push(ne);
                slot.1.push((a.apply)(k, ev));
            }
            queue.insert(nk);
        }
    }

    let weights = &ctx.ring.weights;
    let mono = |ex: &[u16]| {
        let mut e = [0u16; MAX_VARS];
        for (ai, a) in actions.iter().enumerate() {
            e[a.var] += ex[ai];
        }
        Mono::new(&e, weights)
    };
    let ngens = gen_keys.len();
    let cols: Vec<Vec<Poly>> = rels
        .iter()
        .map(|(_, sp)| {
            let mut col = vec![Poly::zero(); ngens];
            for ((g, ex), c) in sp {
                col[*g] = col[*g].add(&Poly::term(mono(ex), c.clone()));
            }
            col.iter().map(|p| ctx.nf(p)).collect()
        })
        .collect();
    let tgt: Vec<i32> = gen_keys.iter().map(|&k| -tdeg(k)).collect();
    let rel = Mat::from_cols(ngens, &cols);
    GradedPresentation { pres: Presentation::new(ctx.clone(), tgt, rel), rel_keys: rels.iter().map(|(k, _)| *k).collect(), gen_keys }
}
