//! Tensor products, Hom objects and duals of factorizations, strict
//! morphisms, and the canonical isomorphisms between them.
//!
//! Basis vectors carry labels: a label is a list of atoms
//! `(factor, dual, parity, index)`, one per tensor factor. Canonical maps
//! match basis vectors with equal atom sets.

use crate::algebra::matrix::Mat;
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

use super::GradedMF;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Atom {
    factor: usize,
    dual: bool,
    parity: u8,
    index: usize,
}

type Label = Vec<Atom>;

#[derive(Clone, Debug)]
struct Labeled {
    mf: GradedMF,
    l1: Vec<Label>,
    l0: Vec<Label>,
}

fn atoms(factor: usize, parity: u8, n: usize) -> Vec<Label> {
    (0..n).map(|index| vec![Atom { factor, dual: false, parity, index }]).collect()
}

fn leaf(e: &GradedMF, factor: usize) -> Labeled {
    Labeled { mf: e.clone(), l1: atoms(factor, 1, e.e1.len()), l0: atoms(factor, 0, e.e0.len()) }
}

fn pair_labels(a: &[Label], b: &[Label]) -> Vec<Label> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let mut v = x.clone();
            v.extend(y.iter().cloned());
            out.push(v);
        }
    }
    out
}

fn pair_twists(a: &[i32], b: &[i32], shift: i32) -> Vec<i32> {
    a.iter().flat_map(|x| b.iter().map(move |y| x + y + shift)).collect()
}

fn toggled(ls: &[Label]) -> Vec<Label> {
    ls.iter().map(|l| l.iter().map(|a| Atom { dual: !a.dual, ..a.clone() }).collect()).collect()
}

fn check_compatible(e: &GradedMF, f: &GradedMF) -> Result<()> {
    if e.same_ring(f) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

fn tensor_l(e: &Labeled, f: &Labeled) -> Result<Labeled> {
    let (a, b) = (&e.mf, &f.mf);
    check_compatible(a, b)?;
    let ctx = a.ctx.clone();
    let fld = ctx.field();
    let id = |n: usize| Mat::identity(n, fld);
    let (a1, a0, b1, b0) = (a.e1.len(), a.e0.len(), b.e1.len(), b.e0.len());
    // Degree 1: E0⊗F1 ⊕ E1⊗F0. Degree 0: E0⊗F0 ⊕ E1⊗F1(l).
    let t1 = [pair_twists(&a.e0, &b.e1, 0), pair_twists(&a.e1, &b.e0, 0)].concat();
    let t0 = [pair_twists(&a.e0, &b.e0, 0), pair_twists(&a.e1, &b.e1, a.l)].concat();
    let r1 = [a0 * b1, a1 * b0];
    let r0 = [a0 * b0, a1 * b1];
    let d1 = Mat::blocks(
        &r0,
        &r1,
        &[
            vec![Some(id(a0).kron(&b.g1)), Some(a.g1.kron(&id(b0)))],
            vec![Some(a.g0.kron(&id(b1))), Some(id(a1).kron(&b.g0).neg())],
        ],
    );
    let d0 = Mat::blocks(
        &r1,
        &r0,
        &[
            vec![Some(id(a0).kron(&b.g0)), Some(a.g1.kron(&id(b1)))],
            vec![Some(a.g0.kron(&id(b0))), Some(id(a1).kron(&b.g1).neg())],
        ],
    );
    let w = a.w.add(&b.w);
    let mf = GradedMF::new(ctx, w, a.l, t1, t0, d1, d0)?;
    let l1 = [pair_labels(&e.l0, &f.l1), pair_labels(&e.l1, &f.l0)].concat();
    let l0 = [pair_labels(&e.l0, &f.l0), pair_labels(&e.l1, &f.l1)].concat();
    Ok(Labeled { mf, l1, l0 })
}

/// `Hom(A, B)` as a free module with basis `(k, i)` (target index outer), so
/// post-composition is `f ⊗ I` and pre-composition is `I ⊗ eᵀ`.
fn hom_twists(src: &[i32], tgt: &[i32], shift: i32) -> Vec<i32> {
    tgt.iter().flat_map(|t| src.iter().map(move |s| t - s + shift)).collect()
}

fn hom_l(e: &Labeled, f: &Labeled) -> Result<Labeled> {
    let (a, b) = (&e.mf, &f.mf);
    check_compatible(a, b)?;
    let ctx = a.ctx.clone();
    let fld = ctx.field();
    let id = |n: usize| Mat::identity(n, fld);
    let l = a.l;
    let (a1, a0, b1, b0) = (a.e1.len(), a.e0.len(), b.e1.len(), b.e0.len());
    // H1 = Hom(E0, F1) ⊕ Hom(E1, F0(-l)); H0 = Hom(E0, F0) ⊕ Hom(E1, F1).
    let t1 = [hom_twists(&a.e0, &b.e1, 0), hom_twists(&a.e1, &b.e0, -l)].concat();
    let t0 = [hom_twists(&a.e0, &b.e0, 0), hom_twists(&a.e1, &b.e1, 0)].concat();
    let r1 = [b1 * a0, b0 * a1];
    let r0 = [b0 * a0, b1 * a1];
    let post = |m: &Mat, n: usize| m.kron(&id(n));
    let pre = |m: &Mat, n: usize| id(n).kron(&m.transpose());
    let d1 = Mat::blocks(
        &r0,
        &r1,
        &[
            vec![Some(post(&b.g1, a0)), Some(pre(&a.g0, b0).neg())],
            vec![Some(pre(&a.g1, b1).neg()), Some(post(&b.g0, a1))],
        ],
    );
    let d0 = Mat::blocks(
        &r1,
        &r0,
        &[
            vec![Some(post(&b.g0, a0)), Some(pre(&a.g0, b1))],
            vec![Some(pre(&a.g1, b0)), Some(post(&b.g1, a1))],
        ],
    );
    let w = b.w.sub(&a.w);
    let mf = GradedMF::new(ctx, w, l, t1, t0, d1, d0)?;
    let l1 = [pair_labels(&f.l1, &toggled(&e.l0)), pair_labels(&f.l0, &toggled(&e.l1))].concat();
    let l0 = [pair_labels(&f.l0, &toggled(&e.l0)), pair_labels(&f.l1, &toggled(&e.l1))].concat();
    Ok(Labeled { mf, l1, l0 })
}

/// `E^∨`: `Hom(E1, S(-l)) -(-g0ᵀ)-> Hom(E0, S) -(g1ᵀ)-> Hom(E1, S)`.
fn dual_l(e: &Labeled) -> Labeled {
    let a = &e.mf;
    let mf = GradedMF {
        ctx: a.ctx.clone(),
        w: a.w.neg(),
        l: a.l,
        e1: a.e1.iter().map(|t| -t - a.l).collect(),
        e0: a.e0.iter().map(|t| -t).collect(),
        g1: a.g0.transpose().neg(),
        g0: a.g1.transpose(),
    };
    debug_assert!(mf.check().is_ok());
    Labeled { mf, l1: toggled(&e.l1), l0: toggled(&e.l0) }
}

pub fn tensor_mf(e: &GradedMF, f: &GradedMF) -> Result<GradedMF> {
    Ok(tensor_l(&leaf(e, 0), &leaf(f, 1))?.mf)
}

pub fn hom_mf(e: &GradedMF, f: &GradedMF) -> Result<GradedMF> {
    Ok(hom_l(&leaf(e, 0), &leaf(f, 1))?.mf)
}

pub fn dual_mf(e: &GradedMF) -> GradedMF {
    dual_l(&leaf(e, 0)).mf
}

/// The unit: `E1 = 0`, `E0 = S`, factorizing zero.
pub fn unit_mf(like: &GradedMF) -> GradedMF {
    GradedMF {
        ctx: like.ctx.clone(),
        w: Poly::zero(),
        l: like.l,
        e1: Vec::new(),
        e0: vec![0],
        g1: Mat::zero(1, 0),
        g0: Mat::zero(0, 1),
    }
}

/// A strict morphism `(α1, α0)`: `f1 α1 = α0 e1` and `f0 α0 = α1 e0`.
#[derive(Clone, Debug)]
pub struct MFMap {
    pub source: GradedMF,
    pub target: GradedMF,
    pub a1: Mat,
    pub a0: Mat,
}

impl MFMap {
    pub fn identity(e: &GradedMF) -> MFMap {
        let f = e.ctx.field();
        MFMap { source: e.clone(), target: e.clone(), a1: Mat::identity(e.e1.len(), f), a0: Mat::identity(e.e0.len(), f) }
    }

    pub fn check(&self) -> Result<()> {
        let ctx = &self.target.ctx;
        let (e, f) = (&self.source, &self.target);
        let s1 = f.g1.mul(&self.a1).sub(&self.a0.mul(&e.g1)).reduce(ctx);
        if let Some((r, c)) = s1.first_difference(&Mat::zero(s1.rows, s1.cols)) {
            return Err(Error::VerificationFailure(format!("square through g1 fails at ({r},{c})")));
        }
        let s0 = f.g0.mul(&self.a0).sub(&self.a1.mul(&e.g0)).reduce(ctx);
        if let Some((r, c)) = s0.first_difference(&Mat::zero(s0.rows, s0.cols)) {
            return Err(Error::VerificationFailure(format!("square through g0 fails at ({r},{c})")));
        }
        let g = ctx.ring.grading();
        self.a1.check_homogeneous(&e.e1, &f.e1, 0, &g)?;
        self.a0.check_homogeneous(&e.e0, &f.e0, 0, &g)?;
        Ok(())
    }

    pub fn compose(&self, o: &MFMap) -> MFMap {
        let ctx = &self.target.ctx;
        MFMap {
            source: o.source.clone(),
            target: self.target.clone(),
            a1: self.a1.mul(&o.a1).reduce(ctx),
            a0: self.a0.mul(&o.a0).reduce(ctx),
        }
    }

    pub fn is_identity(&self) -> bool {
        let f = self.source.ctx.field();
        self.a1 == Mat::identity(self.a1.rows, f) && self.a0 == Mat::identity(self.a0.rows, f)
    }
}

/// An isomorphism together with its verified two-sided inverse.
#[derive(Clone, Debug)]
pub struct IsoCertificate {
    pub name: String,
    pub forward: MFMap,
    pub inverse: MFMap,
}

impl IsoCertificate {
    pub fn verify(&self) -> Result<()> {
        let ctx = |m: &str| Error::VerificationFailure(format!("{}: {m}", self.name));
        self.forward.check().map_err(|e| ctx(&e.to_string()))?;
        self.inverse.check().map_err(|e| ctx(&e.to_string()))?;
        if !self.inverse.compose(&self.forward).is_identity() || !self.forward.compose(&self.inverse).is_identity() {
            return Err(ctx("maps are not mutually inverse"));
        }
        Ok(())
    }
}

fn key(l: &Label) -> Label {
    let mut v = l.clone();
    v.sort();
    v
}

/// Sign of moving the atoms of `from` into the order of `to`, counting
/// transpositions of odd atoms.
fn koszul_sign(from: &Label, to: &Label) -> i64 {
    let pos: Vec<usize> = from.iter().map(|a| to.iter().position(|b| b == a).unwrap()).collect();
    let mut s = 0;
    for i in 0..from.len() {
        for j in i + 1..from.len() {
            if pos[i] > pos[j] && from[i].parity % 2 == 1 && from[j].parity % 2 == 1 {
                s += 1;
            }
        }
    }
    if s % 2 == 0 {
        1
    } else {
        -1
    }
}

fn permutation(src: &[Label], tgt: &[Label]) -> Result<Vec<usize>> {
    let keys: Vec<Label> = tgt.iter().map(key).collect();
    src.iter()
        .map(|l| keys.iter().position(|k| *k == key(l)).ok_or_else(|| Error::VerificationFailure("basis labels do not match".into())))
        .collect()
}

/// Signs making the matched permutation a strict morphism, by propagating
/// `s_x s_y = ±1` constraints along nonzero entries.
fn solve_signs(x: &GradedMF, y: &GradedMF, p1: &[usize], p0: &[usize]) -> Result<(Vec<i64>, Vec<i64>)> {
    let n1 = p1.len();
    let n = n1 + p0.len();
    let mut edges: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    let mut relate = |u: usize, v: usize, xe: &Poly, ye: &Poly| -> Result<()> {
        if xe.is_zero() && ye.is_zero() {
            return Ok(());
        }
        let s = if *xe == *ye {
            1
        } else if *xe == ye.neg() {
            -1
        } else {
            return Err(Error::VerificationFailure("no signed permutation intertwines the differentials".into()));
        };
        edges[u].push((v, s));
        edges[v].push((u, s));
        Ok(())
    };
    // y.g1[p0(a), p1(b)] s1_b = s0_a x.g1[a, b].
    for a in 0..p0.len() {
        for b in 0..n1 {
            relate(n1 + a, b, x.g1.get(a, b), y.g1.get(p0[a], p1[b]))?;
        }
    }
    // y.g0[p1(a), p0(b)] s0_b = s1_a x.g0[a, b].
    for a in 0..n1 {
        for b in 0..p0.len() {
            relate(a, n1 + b, x.g0.get(a, b), y.g0.get(p1[a], p0[b]))?;
        }
    }
    let mut sign = vec![0i64; n];
    for root in 0..n {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &(v, s) in &edges[u] {
                let want = sign[u] * s;
                if sign[v] == 0 {
                    sign[v] = want;
                    stack.push(v);
                } else if sign[v] != want {
                    return Err(Error::VerificationFailure("inconsistent signs".into()));
                }
            }
        }
    }
    Ok((sign[..n1].to_vec(), sign[n1..].to_vec()))
}

fn signed_perm(p: &[usize], signs: &[i64], x: &GradedMF, rows: usize) -> Mat {
    let f = x.ctx.field();
    let mut m = Mat::zero(rows, p.len());
    for (b, &a) in p.iter().enumerate() {
        m.set(a, b, Poly::constant(f.from_i64(signs[b])));
    }
    m
}

enum SignRule {
    Koszul,
    Solve,
}

fn iso(name: &str, x: &Labeled, y: &Labeled, rule: SignRule) -> Result<IsoCertificate> {
    let fail = |e: Error| Error::VerificationFailure(format!("{name}: {e}"));
    let p1 = permutation(&x.l1, &y.l1).map_err(fail)?;
    let p0 = permutation(&x.l0, &y.l0).map_err(fail)?;
    for (p, tx, ty) in [(&p1, &x.mf.e1, &y.mf.e1), (&p0, &x.mf.e0, &y.mf.e0)] {
        if p.iter().enumerate().any(|(b, &a)| tx[b] != ty[a]) {
            return Err(fail(Error::VerificationFailure("twists do not match".into())));
        }
    }
    let (s1, s0) = match rule {
        SignRule::Koszul => (
            x.l1.iter().zip(&p1).map(|(l, &a)| koszul_sign(l, &y.l1[a])).collect(),
            x.l0.iter().zip(&p0).map(|(l, &a)| koszul_sign(l, &y.l0[a])).collect(),
        ),
        SignRule::Solve => solve_signs(&x.mf, &y.mf, &p1, &p0).map_err(fail)?,
    };
    let a1 = signed_perm(&p1, &s1, &x.mf, y.mf.e1.len());
    let a0 = signed_perm(&p0, &s0, &x.mf, y.mf.e0.len());
    let forward = MFMap { source: x.mf.clone(), target: y.mf.clone(), a1: a1.clone(), a0: a0.clone() };
    let inverse = MFMap { source: y.mf.clone(), target: x.mf.clone(), a1: a1.transpose(), a0: a0.transpose() };
    let cert = IsoCertificate { name: name.to_string(), forward, inverse };
    cert.verify()?;
    Ok(cert)
}

/// Builds and certifies: `E⊗F ≅ F⊗E`, `(E⊗F)⊗G ≅ E⊗(F⊗G)`,
/// `E^∨⊗F ≅ Hom(E,F)`, `(E⊗F)^∨ ≅ E^∨⊗F^∨`, `Hom(E,F)^∨ ≅ Hom(F,E)`,
/// `E^∨∨ ≅ E` and `Hom(E,F)⊗Hom(G,H) ≅ Hom(E⊗G, F⊗H)`.
pub fn canonical_isos(e: &GradedMF, f: &GradedMF, g: &GradedMF, h: &GradedMF) -> Result<Vec<IsoCertificate>> {
    let (le, lf, lg, lh) = (leaf(e, 0), leaf(f, 1), leaf(g, 2), leaf(h, 3));
    let mut out = Vec::new();
    out.push(iso("comm", &tensor_l(&le, &lf)?, &tensor_l(&lf, &le)?, SignRule::Koszul)?);
    out.push(iso("assoc", &tensor_l(&tensor_l(&le, &lf)?, &lg)?, &tensor_l(&le, &tensor_l(&lf, &lg)?)?, SignRule::Koszul)?);
    out.push(iso("hom-tensor", &tensor_l(&dual_l(&le), &lf)?, &hom_l(&le, &lf)?, SignRule::Koszul)?);
    out.push(iso("dual-tensor", &dual_l(&tensor_l(&le, &lf)?), &tensor_l(&dual_l(&le), &dual_l(&lf))?, SignRule::Solve)?);
    out.push(iso("hom-dual-swap", &dual_l(&hom_l(&le, &lf)?), &hom_l(&lf, &le)?, SignRule::Solve)?);
    out.push(iso("double-dual", &dual_l(&dual_l(&le)), &le, SignRule::Solve)?);
    out.push(iso(
        "switch",
        &tensor_l(&hom_l(&le, &lf)?, &hom_l(&lg, &lh)?)?,
        &hom_l(&tensor_l(&le, &lg)?, &tensor_l(&lf, &lh)?)?,
        SignRule::Solve,
    )?);
    Ok(out)
}
