//! Graded polynomial rings and quotient-ring contexts.

use std::sync::Arc;

use super::field::{Coeff, Field};
use super::gb;
use super::mono::{Mono, MAX_VARS};
use super::poly::{parse_poly, Poly};
use crate::error::{Error, Result};

/// A polynomial ring with positive integer weights and an optional block of
/// weight-one variables `T_1..T_c` appended at the end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: Field,
    pub names: Vec<String>,
    pub weights: Vec<u32>,
    /// `(start, len)` of the T-block.
    pub tblock: Option<(usize, usize)>,
}

impl PolyRing {
    pub fn new(field: Field, names: &[&str], weights: &[u32]) -> Result<PolyRing> {
        if names.len() != weights.len() {
            return Err(Error::input("one weight per variable is required"));
        }
        if names.len() > MAX_VARS {
            return Err(Error::input(format!("at most {MAX_VARS} variables are supported")));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::input("variable weights must be positive"));
        }
        for (i, n) in names.iter().enumerate() {
            let ok = !n.is_empty()
                && n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::input(format!("invalid variable name '{n}'")));
            }
            if names[..i].contains(n) {
                return Err(Error::input(format!("duplicate variable '{n}'")));
            }
        }
        Ok(PolyRing {
            field,
            names: names.iter().map(|s| s.to_string()).collect(),
            weights: weights.to_vec(),
            tblock: None,
        })
    }

    /// Appends `T_1..T_c` of weight one. Panics when a T-block already exists.
    pub fn with_t_block(&self, c: usize) -> PolyRing {
        assert!(self.tblock.is_none(), "ring already has a T-block");
        assert!(self.nvars() + c <= MAX_VARS, "too many variables");
        let mut r = self.clone();
        let start = r.names.len();
        for i in 1..=c {
            r.names.push(format!("T_{i}"));
            r.weights.push(1);
        }
        r.tblock = Some((start, c));
        r
    }

    /// Appends one extra variable (used for Rabinowitsch-style tests).
    pub fn with_extra_var(&self, name: &str, weight: u32) -> PolyRing {
        assert!(self.nvars() < MAX_VARS, "too many variables");
        let mut r = self.clone();
        r.names.push(name.to_string());
        r.weights.push(weight);
        r
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// Number of variables before the T-block.
    pub fn n_x(&self) -> usize {
        self.tblock.map(|(s, _)| s).unwrap_or(self.names.len())
    }

    pub fn c(&self) -> usize {
        self.tblock.map(|(_, l)| l).unwrap_or(0)
    }

    pub fn t_range(&self) -> std::ops::Range<usize> {
        match self.tblock {
            Some((s, l)) => s..s + l,
            None => 0..0,
        }
    }

    /// The grading used for homogeneity and twists: T-degree when a T-block
    /// exists, the weighted degree otherwise.
    pub fn grading(&self) -> Vec<i32> {
        match self.tblock {
            Some((s, l)) => (0..self.nvars()).map(|i| if i >= s && i < s + l { 1 } else { 0 }).collect(),
            None => self.weights.iter().map(|&w| w as i32).collect(),
        }
    }

    /// The weighted grading on the x-variables only.
    pub fn x_grading(&self) -> Vec<i32> {
        let n = self.n_x();
        (0..self.nvars()).map(|i| if i < n { self.weights[i] as i32 } else { 0 }).collect()
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::term(Mono::var(i, &self.weights), self.field.one())
    }

    pub fn t_var(&self, i: usize) -> Poly {
        let (s, l) = self.tblock.expect("ring has no T-block");
        assert!(i < l);
        self.var(s + i)
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self.field.one())
    }

    pub fn constant(&self, v: i64) -> Poly {
        Poly::constant(self.field.from_i64(v))
    }

    pub fn coeff(&self, v: i64) -> Coeff {
        self.field.from_i64(v)
    }

    pub fn mono(&self, exps: &[u16]) -> Mono {
        Mono::new(exps, &self.weights)
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        parse_poly(s, self)
    }

    pub fn show(&self, p: &Poly) -> String {
        p.to_string_in(self)
    }

    /// All monomials of weighted degree `d` in the variables `vars`, in
    /// descending monomial order.
    pub fn monomials_of_degree(&self, vars: &[usize], d: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut e = [0u16; MAX_VARS];
        fn rec(r: &PolyRing, vars: &[usize], k: usize, left: u32, e: &mut [u16; MAX_VARS], out: &mut Vec<Mono>) {
            if k == vars.len() {
                if left == 0 {
                    out.push(Mono::new(e, &r.weights));
                }
                return;
            }
            let w = r.weights[vars[k]];
            let mut a = 0u32;
            while a * w <= left {
                e[vars[k]] = a as u16;
                rec(r, vars, k + 1, left - a * w, e, out);
                a += 1;
            }
            e[vars[k]] = 0;
        }
        rec(self, vars, 0, d, &mut e, &mut out);
        out.sort_by(|a, b| b.order(a));
        out
    }
}

/// A ring `ambient / (relations)`, with the relations' reduced Gröbner basis
/// cached. Normal forms with respect to that basis are canonical.
#[derive(Debug, PartialEq, Eq)]
pub struct RingCtx {
    pub ring: Arc<PolyRing>,
    pub relations: Vec<Poly>,
    pub gb: Vec<Poly>,
}

pub type Ctx = Arc<RingCtx>;

impl RingCtx {
    pub fn new(ring: Arc<PolyRing>, relations: Vec<Poly>) -> Ctx {
        let relations: Vec<Poly> = relations.into_iter().filter(|p| !p.is_zero()).collect();
        let gb = gb::ideal_groebner(&relations, &ring.weights);
        Arc::new(RingCtx { ring, relations, gb })
    }

    pub fn polynomial(ring: Arc<PolyRing>) -> Ctx {
        RingCtx::new(ring, Vec::new())
    }

    pub fn is_polynomial(&self) -> bool {
        self.gb.is_empty()
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn nf(&self, p: &Poly) -> Poly {
        if self.gb.is_empty() {
            p.clone()
        } else {
            p.reduce(&self.gb)
        }
    }

    pub fn one(&self) -> Poly {
        self.ring.one()
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.nf(&a.mul(b))
    }

    /// True when the quotient is the zero ring.
    pub fn is_zero_ring(&self) -> bool {
        self.gb.first().is_some_and(|g| g.terms[0].0.is_one())
    }

    /// The same ambient ring with extra relations.
    pub fn quotient(&self, extra: &[Poly]) -> Ctx {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        RingCtx::new(self.ring.clone(), rels)
    }

    /// Same relations viewed in an extension ring that appends variables.
    pub fn extend(&self, ring: Arc<PolyRing>) -> Ctx {
        let rels = self.relations.iter().map(|p| p.reweight(&ring.weights)).collect();
        RingCtx::new(ring, rels)
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        Ok(self.nf(&self.ring.parse(s)?))
    }

    pub fn show(&self, p: &Poly) -> String {
        self.ring.show(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_normal_forms() {
        let r = Arc::new(PolyRing::new(Field::prime(101).unwrap(), &["x", "y"], &[1, 1]).unwrap());
        let ctx = RingCtx::new(r.clone(), vec![r.parse("x^2").unwrap(), r.parse("y^2").unwrap()]);
        let p = ctx.parse("(x+y)^3").unwrap();
        assert!(p.is_zero());
        let q = ctx.parse("(x+y)^2").unwrap();
        assert_eq!(ctx.show(&q), "2*x*y");
    }

    #[test]
    fn t_block_grading() {
        let r = PolyRing::new(Field::prime(101).unwrap(), &["x", "y"], &[1, 1]).unwrap().with_t_block(2);
        assert_eq!(r.grading(), vec![0, 0, 1, 1]);
        let w = r.parse("x^2*T_1 + y^2*T_2").unwrap();
        assert!(w.is_homogeneous(&r.grading()));
        assert!(!r.parse("x + T_1").unwrap().is_homogeneous(&r.grading()));
    }

    #[test]
    fn monomial_enumeration() {
        let r = PolyRing::new(Field::prime(101).unwrap(), &["x", "y", "z"], &[1, 1, 1]).unwrap();
        let ms = r.monomials_of_degree(&[0, 1, 2], 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0], r.mono(&[2, 0, 0]));
    }

    #[test]
    fn rejects_bad_rings() {
        let f = Field::prime(101).unwrap();
        assert!(PolyRing::new(f, &["x", "x"], &[1, 1]).is_err());
        assert!(PolyRing::new(f, &["x"], &[0]).is_err());
        assert!(PolyRing::new(f, &["1x"], &[1]).is_err());
    }
}
