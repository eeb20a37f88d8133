//! Buchberger's algorithm for submodules of free modules, position over
//! term (position 0 largest), with optional cofactor tracking.

use std::cmp::Ordering;

use super::field::Coeff;
use super::mono::Mono;
use super::poly::Poly;

pub type Term = (u32, Mono, Coeff);

fn key_cmp(ap: u32, am: &Mono, bp: u32, bm: &Mono) -> Ordering {
    if ap != bp {
        bp.cmp(&ap)
    } else {
        am.order(bm)
    }
}

/// A sparse element of a free module, terms sorted strictly descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Vector {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn unit(pos: usize, one: Coeff) -> Vector {
        Vector { terms: vec![(pos as u32, Mono::ONE, one)] }
    }

    pub fn from_poly(pos: usize, p: &Poly) -> Vector {
        Vector { terms: p.terms.iter().map(|(m, c)| (pos as u32, *m, c.clone())).collect() }
    }

    /// Column vector with entry `i` at position `offset + i`.
    pub fn from_column(col: &[Poly], offset: usize) -> Vector {
        let mut terms = Vec::new();
        for (i, p) in col.iter().enumerate() {
            for (m, c) in &p.terms {
                terms.push(((offset + i) as u32, *m, c.clone()));
            }
        }
        Vector { terms }
    }

    /// Entries at positions `offset..offset+n`.
    pub fn to_column(&self, offset: usize, n: usize) -> Vec<Poly> {
        let mut out = vec![Vec::new(); n];
        for (p, m, c) in &self.terms {
            let p = *p as usize;
            if p >= offset && p < offset + n {
                out[p - offset].push((*m, c.clone()));
            }
        }
        out.into_iter().map(|terms| Poly { terms }).collect()
    }

    pub fn scale(&self, c: &Coeff) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|(p, m, a)| (*p, *m, a * c)).collect() }
    }

    pub fn neg(&self) -> Vector {
        Vector { terms: self.terms.iter().map(|(p, m, a)| (*p, *m, -a)).collect() }
    }

    pub fn add(&self, o: &Vector) -> Vector {
        match o.terms.first() {
            None => self.clone(),
            Some((_, _, c)) => self.sub_scaled(&(-&c.field().one()), &Mono::ONE, o),
        }
    }

    /// `self - c*m*o`.
    pub fn sub_scaled(&self, c: &Coeff, m: &Mono, o: &Vector) -> Vector {
        let a = &self.terms;
        let b = &o.terms;
        let nc = -c;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bm = b[j].1.mul(m);
            match key_cmp(a[i].0, &a[i].1, b[j].0, &bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, bm, &b[j].2 * &nc));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].2 + &(&b[j].2 * &nc);
                    if !s.is_zero() {
                        out.push((a[i].0, bm, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            out.push((t.0, t.1.mul(m), &t.2 * &nc));
        }
        Vector { terms: out }
    }

    pub fn max_pos(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.0 as usize).max()
    }

    pub fn min_pos(&self) -> Option<usize> {
        self.terms.first().map(|t| t.0 as usize)
    }
}

struct Elem {
    v: Vector,
    pass: Vector,
    sugar: i64,
    redundant: bool,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: i64,
}

/// Incremental Buchberger engine. Generators may be added between calls to
/// `complete`; after `complete` the stored elements form a Gröbner basis.
pub struct GbEngine {
    weights: Vec<u32>,
    track: bool,
    elems: Vec<Elem>,
    pairs: Vec<Pair>,
    pos_deg: Vec<i64>,
}

impl GbEngine {
    pub fn new(weights: &[u32], track: bool) -> GbEngine {
        GbEngine { weights: weights.to_vec(), track, elems: Vec::new(), pairs: Vec::new(), pos_deg: Vec::new() }
    }

    /// Per-position degree offsets, used only for the sugar heuristic.
    pub fn with_position_degrees(mut self, d: Vec<i64>) -> GbEngine {
        self.pos_deg = d;
        self
    }

    fn sugar_of(&self, v: &Vector) -> i64 {
        v.terms
            .iter()
            .map(|(p, m, _)| m.deg as i64 + self.pos_deg.get(*p as usize).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Full reduction of `v` (with cofactor `pass`) by the current elements,
    /// scanning candidate divisors in insertion order.
    pub fn reduce(&self, v: &Vector, pass: &Vector) -> (Vector, Vector) {
        reduce_by(self.elems.iter().map(|e| (&e.v, &e.pass)), v, pass, self.track)
    }

    /// Reduces and adds a generator. Returns false when it reduced to zero.
    pub fn add(&mut self, v: Vector, pass: Vector) -> bool {
        let sugar = self.sugar_of(&v);
        let (v, pass) = self.reduce(&v, &pass);
        if v.is_zero() {
            return false;
        }
        self.insert(v, pass, sugar);
        true
    }

    fn insert(&mut self, v: Vector, pass: Vector, sugar: i64) {
        let inv = v.terms[0].2.inv();
        let v = v.scale(&inv);
        let pass = if self.track { pass.scale(&inv) } else { pass };
        let (pos, lt) = (v.terms[0].0, v.terms[0].1);
        let k = self.elems.len();
        let ideal_mode = pos == 0 && v.max_pos() == Some(0);
        let w = self.weights.clone();

        // Chain criterion on pairs already queued.
        let elems = &self.elems;
        self.pairs.retain(|p| {
            let pe = &elems[p.i].v.terms[0];
            if pe.0 != pos || !lt.divides(&p.lcm) || elems[p.i].redundant || elems[p.j].redundant {
                return true;
            }
            let li = elems[p.i].v.terms[0].1.lcm(&lt, &w);
            let lj = elems[p.j].v.terms[0].1.lcm(&lt, &w);
            li == p.lcm || lj == p.lcm
        });

        let mut cand: Vec<(usize, Mono, bool)> = Vec::new();
        for (i, e) in self.elems.iter().enumerate() {
            if e.redundant {
                continue;
            }
            let (ep, em) = (e.v.terms[0].0, e.v.terms[0].1);
            if ep != pos {
                continue;
            }
            let l = em.lcm(&lt, &w);
            let coprime = ideal_mode && e.v.max_pos() == Some(0) && em.gcd(&lt, &w).is_one();
            cand.push((i, l, coprime));
        }
        let mut keep = vec![true; cand.len()];
        for a in 0..cand.len() {
            for b in 0..cand.len() {
                if a != b && cand[b].1.divides(&cand[a].1) && cand[b].1 != cand[a].1 {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut chosen: Vec<(usize, Mono, bool)> = Vec::new();
        for (a, c) in cand.iter().enumerate() {
            if !keep[a] {
                continue;
            }
            if let Some(prev) = chosen.iter_mut().find(|p| p.1 == c.1) {
                prev.2 |= c.2;
                continue;
            }
            chosen.push(*c);
        }
        for (i, l, coprime) in chosen {
            if coprime {
                continue;
            }
            let e = &self.elems[i];
            let si = e.sugar + (l.deg - e.v.terms[0].1.deg) as i64;
            let sk = sugar + (l.deg - lt.deg) as i64;
            self.pairs.push(Pair { i, j: k, lcm: l, sugar: si.max(sk) });
        }
        for e in self.elems.iter_mut() {
            if !e.redundant && e.v.terms[0].0 == pos && lt.divides(&e.v.terms[0].1) {
                e.redundant = true;
            }
        }
        self.elems.push(Elem { v, pass, sugar, redundant: false });
    }

    pub fn complete(&mut self) {
        while !self.pairs.is_empty() {
            let mut best = 0;
            for k in 1..self.pairs.len() {
                let (a, b) = (&self.pairs[k], &self.pairs[best]);
                let ord = a
                    .sugar
                    .cmp(&b.sugar)
                    .then_with(|| a.lcm.order(&b.lcm))
                    .then_with(|| a.j.cmp(&b.j))
                    .then_with(|| a.i.cmp(&b.i));
                if ord == Ordering::Less {
                    best = k;
                }
            }
            let p = self.pairs.swap_remove(best);
            let (ei, ej) = (&self.elems[p.i], &self.elems[p.j]);
            let qi = ei.v.terms[0].1.quotient_of(&p.lcm);
            let qj = ej.v.terms[0].1.quotient_of(&p.lcm);
            let one = ei.v.terms[0].2.field().one();
            let s = Vector::zero().sub_scaled(&(-&one), &qi, &ei.v).sub_scaled(&one, &qj, &ej.v);
            let sp = if self.track {
                Vector::zero().sub_scaled(&(-&one), &qi, &ei.pass).sub_scaled(&one, &qj, &ej.pass)
            } else {
                Vector::zero()
            };
            let (r, rp) = self.reduce(&s, &sp);
            if !r.is_zero() {
                self.insert(r, rp, p.sugar);
            }
        }
    }

    /// The reduced Gröbner basis, in insertion order.
    pub fn reduced(&self) -> Gb {
        let n = self.elems.len();
        let mut keep = Vec::new();
        for i in 0..n {
            let (pi, mi) = (self.elems[i].v.terms[0].0, self.elems[i].v.terms[0].1);
            let dominated = (0..n).any(|j| {
                if j == i {
                    return false;
                }
                let (pj, mj) = (self.elems[j].v.terms[0].0, self.elems[j].v.terms[0].1);
                pj == pi && mj.divides(&mi) && (mj != mi || j < i)
            });
            if !dominated {
                keep.push(i);
            }
        }
        let mut out: Vec<(Vector, Vector)> = Vec::with_capacity(keep.len());
        for &i in &keep {
            let e = &self.elems[i];
            let head = Vector { terms: vec![e.v.terms[0].clone()] };
            let tail = Vector { terms: e.v.terms[1..].to_vec() };
            let others = keep.iter().filter(|&&j| j != i).map(|&j| (&self.elems[j].v, &self.elems[j].pass));
            let (rt, rp) = reduce_by(others, &tail, &e.pass, self.track);
            let mut v = head;
            v.terms.extend(rt.terms);
            out.push((v, rp));
        }
        Gb { elems: out, track: self.track }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

fn reduce_by<'a>(
    basis: impl Iterator<Item = (&'a Vector, &'a Vector)> + Clone,
    v: &Vector,
    pass: &Vector,
    track: bool,
) -> (Vector, Vector) {
    let basis: Vec<(&Vector, &Vector)> = basis.collect();
    let mut rest = v.clone();
    let mut pass = pass.clone();
    let mut done: Vec<Term> = Vec::new();
    while !rest.terms.is_empty() {
        let (p, m, c) = rest.terms[0].clone();
        let mut hit = false;
        for (g, gp) in &basis {
            let (gpos, gm, _) = &g.terms[0];
            if *gpos == p && gm.divides(&m) {
                let q = gm.quotient_of(&m);
                rest = rest.sub_scaled(&c, &q, g);
                if track {
                    pass = pass.sub_scaled(&c, &q, gp);
                }
                hit = true;
                break;
            }
        }
        if !hit {
            done.push(rest.terms.remove(0));
        }
    }
    (Vector { terms: done }, pass)
}

/// A reduced Gröbner basis with (optional) cofactors.
#[derive(Clone, Debug)]
pub struct Gb {
    pub elems: Vec<(Vector, Vector)>,
    track: bool,
}

impl Gb {
    pub fn reduce(&self, v: &Vector, pass: &Vector) -> (Vector, Vector) {
        reduce_by(self.elems.iter().map(|(a, b)| (a, b)), v, pass, self.track)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v, &Vector::zero()).0.is_zero()
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vector> {
        self.elems.iter().map(|(v, _)| v)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

pub fn module_groebner(gens: &[Vector], weights: &[u32]) -> Gb {
    let mut e = GbEngine::new(weights, false);
    for g in gens {
        e.add(g.clone(), Vector::zero());
        e.complete();
    }
    e.reduced()
}

/// Reduced Gröbner basis of an ideal, monic, in insertion order.
pub fn ideal_groebner(gens: &[Poly], weights: &[u32]) -> Vec<Poly> {
    let vs: Vec<Vector> = gens.iter().map(|p| Vector::from_poly(0, p)).collect();
    module_groebner(&vs, weights).vectors().map(|v| v.to_column(0, 1).remove(0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::ring::PolyRing;

    fn ring() -> PolyRing {
        PolyRing::new(Field::prime(101).unwrap(), &["x", "y"], &[1, 1]).unwrap()
    }

    fn gb_strings(r: &PolyRing, gens: &[&str]) -> Vec<String> {
        let ps: Vec<Poly> = gens.iter().map(|s| r.parse(s).unwrap()).collect();
        ideal_groebner(&ps, &r.weights).iter().map(|p| r.show(p)).collect()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring();
        assert_eq!(gb_strings(&r, &["x^2", "y^2"]), vec!["x^2", "y^2"]);
    }

    #[test]
    fn interreduction() {
        let r = ring();
        let mut g = gb_strings(&r, &["x^2 + y^2", "y^2"]);
        g.sort();
        assert_eq!(g, vec!["x^2", "y^2"]);
    }

    #[test]
    fn empty_input() {
        let r = ring();
        assert!(gb_strings(&r, &[]).is_empty());
    }

    #[test]
    fn s_pair_produces_new_element() {
        let r = ring();
        let g = gb_strings(&r, &["x*y - 1", "x^2 - y"]);
        let gp: Vec<Poly> = g.iter().map(|s| r.parse(s).unwrap()).collect();
        let t = r.parse("x - y^2").unwrap();
        assert!(t.reduce(&gp).is_zero());
        assert!(!r.one().reduce(&gp).is_zero());
    }

    #[test]
    fn module_membership() {
        let r = ring();
        let x = r.var(0);
        let y = r.var(1);
        let u = Vector::from_column(&[x.clone(), y.clone()], 0);
        let v = Vector::from_column(&[y.clone(), Poly::zero()], 0);
        let gb = module_groebner(&[u.clone(), v.clone()], &r.weights);
        let w = Vector::from_column(&[x.mul(&y).add(&y.mul(&y)), y.mul(&y)], 0);
        assert!(gb.contains(&w));
        let z = Vector::from_column(&[Poly::zero(), x.clone()], 0);
        assert!(!gb.contains(&z));
    }
}
