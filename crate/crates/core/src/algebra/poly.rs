//! Sparse polynomials. A `Poly` carries no ring handle; operations that need
//! weights, names or the field receive the ring explicitly.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;

use super::field::{Coeff, Field};
use super::mono::Mono;
use super::ring::PolyRing;
use crate::error::{Error, Result};

/// Terms are kept sorted strictly descending in monomial order, with no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub terms: Vec<(Mono, Coeff)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: Coeff) -> Poly {
        Poly::term(Mono::ONE, c)
    }

    pub fn term(m: Mono, c: Coeff) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds from unsorted terms, combining duplicates.
    pub fn from_terms(mut t: Vec<(Mono, Coeff)>) -> Poly {
        t.sort_by(|a, b| b.0.order(&a.0));
        let mut out: Vec<(Mono, Coeff)> = Vec::with_capacity(t.len());
        for (m, c) in t {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Mono, Coeff)> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant coefficient, if the polynomial has one.
    pub fn constant_term(&self) -> Option<&Coeff> {
        self.terms.last().filter(|(m, _)| m.is_one()).map(|(_, c)| c)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.deg).max()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        merge(&self.terms, &o.terms, None, None)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        if o.is_zero() {
            return self.clone();
        }
        let minus_one = -&o.terms[0].1.field().one();
        merge(&self.terms, &o.terms, Some(&minus_one), None)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect() }
    }

    /// `self - c*m*o`.
    pub fn sub_scaled(&self, c: &Coeff, m: &Mono, o: &Poly) -> Poly {
        let nc = -c;
        merge(&self.terms, &o.terms, Some(&nc), Some(m))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        let mut acc = Poly::zero();
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        for (m, c) in &small.terms {
            acc = merge(&acc.terms, &big.terms, Some(c), Some(m));
        }
        acc
    }

    pub fn pow(&self, e: u32, field: Field) -> Poly {
        let mut r = Poly::constant(field.one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn is_homogeneous(&self, grading: &[i32]) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.graded_degree(grading));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Degree under `grading`, `None` for zero. Meaningful for homogeneous input.
    pub fn graded_degree(&self, grading: &[i32]) -> Option<i64> {
        self.terms.first().map(|(m, _)| m.graded_degree(grading))
    }

    /// Full reduction by a list of polynomials with monic leading terms,
    /// scanning divisors in list order.
    pub fn reduce(&self, basis: &[Poly]) -> Poly {
        if basis.is_empty() {
            return self.clone();
        }
        let mut rest = self.clone();
        let mut done: Vec<(Mono, Coeff)> = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            let mut hit = false;
            for g in basis {
                let (gm, _) = &g.terms[0];
                if gm.divides(&m) {
                    let q = gm.quotient_of(&m);
                    rest = rest.sub_scaled(&c, &q, g);
                    hit = true;
                    break;
                }
            }
            if !hit {
                done.push((m, c));
                rest.terms.remove(0);
            }
        }
        Poly { terms: done }
    }

    /// Applies `f` to every monomial; the result is re-sorted.
    pub fn map_monos(&self, f: impl Fn(&Mono) -> Option<Mono>) -> Poly {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| f(m).map(|n| (n, c.clone()))).collect())
    }

    /// Coefficient of the monomial `t` in the variables `range`: the sum of
    /// terms whose exponents on `range` equal `t`, with those exponents removed.
    pub fn block_coeff(&self, range: std::ops::Range<usize>, t: &[u16], weights: &[u32]) -> Poly {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            if m.exps[range.clone()] == *t {
                let mut e = m.exps;
                for i in range.clone() {
                    e[i] = 0;
                }
                out.push((Mono::new(&e, weights), c.clone()));
            }
        }
        Poly::from_terms(out)
    }

    /// Distinct exponent patterns on `range` that occur, in first-seen order.
    pub fn block_support(&self, range: std::ops::Range<usize>) -> Vec<Vec<u16>> {
        let mut out: Vec<Vec<u16>> = Vec::new();
        for (m, _) in &self.terms {
            let t = m.exps[range.clone()].to_vec();
            if !out.contains(&t) {
                out.push(t);
            }
        }
        out
    }

    /// Substitutes field constants for the variables listed in `vals`.
    pub fn substitute(&self, vals: &[(usize, Coeff)], weights: &[u32]) -> Poly {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let mut e = m.exps;
            let mut cc = c.clone();
            for (i, v) in vals {
                for _ in 0..e[*i] {
                    cc = &cc * v;
                }
                e[*i] = 0;
            }
            if !cc.is_zero() {
                out.push((Mono::new(&e, weights), cc));
            }
        }
        Poly::from_terms(out)
    }

    /// Re-computes cached degrees for a ring with different weights.
    pub fn reweight(&self, weights: &[u32]) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (Mono::new(&m.exps, weights), c.clone())).collect())
    }

    pub fn to_string_in(&self, ring: &PolyRing) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = c.sign_and_magnitude();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = mono_string(m, ring);
            if mono.is_empty() {
                s.push_str(&mag);
            } else {
                if mag != "1" {
                    s.push_str(&mag);
                    s.push('*');
                }
                s.push_str(&mono);
            }
        }
        s
    }
}

fn mono_string(m: &Mono, ring: &PolyRing) -> String {
    let mut s = String::new();
    for (i, name) in ring.names.iter().enumerate() {
        let e = m.exps[i];
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(name);
        if e > 1 {
            let _ = write!(s, "^{e}");
        }
    }
    s
}

/// `a + c * m * b`, with `c` and `m` defaulting to one.
fn merge(a: &[(Mono, Coeff)], b: &[(Mono, Coeff)], c: Option<&Coeff>, m: Option<&Mono>) -> Poly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let tb = |k: usize| -> (Mono, Coeff) {
        let (bm, bc) = &b[k];
        let mm = match m {
            Some(m) => bm.mul(m),
            None => *bm,
        };
        let cc = match c {
            Some(c) => bc * c,
            None => bc.clone(),
        };
        (mm, cc)
    };
    while i < a.len() && j < b.len() {
        let (bm, bc) = tb(j);
        match a[i].0.order(&bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                if !bc.is_zero() {
                    out.push((bm, bc));
                }
                j += 1;
            }
            Ordering::Equal => {
                let s = &a[i].1 + &bc;
                if !s.is_zero() {
                    out.push((bm, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        let (bm, bc) = tb(j);
        if !bc.is_zero() {
            out.push((bm, bc));
        }
        j += 1;
    }
    Poly { terms: out }
}

/// Parser for the ASCII grammar `c*x^a*y^b*T_1^d` joined by `+`/`-`;
/// parentheses, `/` by constants and integer powers of subexpressions are
/// also accepted.
pub fn parse_poly(src: &str, ring: &PolyRing) -> Result<Poly> {
    let mut p = Parser { s: src.as_bytes(), i: 0, ring };
    p.ws();
    let v = p.expr()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    ring: &'a PolyRing,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        let before = &self.s[..self.i.min(self.s.len())];
        let line = 1 + before.iter().filter(|&&b| b == b'\n').count();
        let col = 1 + before.iter().rev().take_while(|&&b| b != b'\n').count();
        Error::Parse { msg: msg.to_string(), line, col }
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && (self.s[self.i] as char).is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.signed_term()?;
        loop {
            self.ws();
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    self.ws();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.i += 1;
                    self.ws();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed_term(&mut self) -> Result<Poly> {
        self.ws();
        match self.peek() {
            Some(b'-') => {
                self.i += 1;
                self.ws();
                Ok(self.term()?.neg())
            }
            Some(b'+') => {
                self.i += 1;
                self.ws();
                self.term()
            }
            _ => self.term(),
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            self.ws();
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    self.ws();
                    let f = self.power()?;
                    acc = acc.mul(&f);
                }
                Some(b'/') => {
                    self.i += 1;
                    self.ws();
                    let n = self.integer()?;
                    let c = self.ring.field.from_ratio(&BigInt::from(1), &n).map_err(|_| self.err("invalid divisor"))?;
                    acc = acc.scale(&c);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        self.ws();
        if self.peek() == Some(b'^') {
            self.i += 1;
            self.ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            if e > u16::MAX as u32 {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(e, self.ring.field));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.i;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.i]).map_err(|_| self.err("bad utf8"))?;
        txt.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<Poly> {
        self.ws();
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let v = self.expr()?;
                self.ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(v)
            }
            Some(b) if b.is_ascii_digit() => {
                let n = self.integer()?;
                let c = self.ring.field.from_ratio(&n, &BigInt::from(1))?;
                Ok(Poly::constant(c))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.i;
                while self.peek().is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_') {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).unwrap_or("");
                match self.ring.names.iter().position(|n| n == name) {
                    Some(k) => Ok(self.ring.var(k)),
                    None => {
                        self.i = start;
                        Err(self.err(&format!("unknown variable '{name}'")))
                    }
                }
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PolyRing {
        PolyRing::new(Field::prime(101).unwrap(), &["x", "y"], &[1, 1]).unwrap().with_t_block(2)
    }

    #[test]
    fn parse_print_canonical() {
        let r = ring();
        let p = parse_poly("x^2*T_1 + y^2*T_2", &r).unwrap();
        assert_eq!(p.to_string_in(&r), "x^2*T_1 + y^2*T_2");
        let q = parse_poly("-(y) * T_2 + 3 - 1", &r).unwrap();
        assert_eq!(q.to_string_in(&r), "-y*T_2 + 2");
        let z = parse_poly("x - x", &r).unwrap();
        assert_eq!(z.to_string_in(&r), "0");
        let n = parse_poly("100*x", &r).unwrap();
        assert_eq!(n.to_string_in(&r), "-x");
    }

    #[test]
    fn parse_errors_carry_position() {
        let r = ring();
        match parse_poly("x + q", &r) {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("x +", &r).is_err());
        assert!(parse_poly("(x", &r).is_err());
    }

    #[test]
    fn rational_coefficients() {
        let r = PolyRing::new(Field::Rationals, &["x"], &[1]).unwrap();
        let p = parse_poly("3/4*x - 1/2", &r).unwrap();
        assert_eq!(p.to_string_in(&r), "3/4*x - 1/2");
    }

    #[test]
    fn multiplication_and_reduction() {
        let r = ring();
        let x = r.var(0);
        let y = r.var(1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.to_string_in(&r), "x^2 + 2*x*y + y^2");
        let basis = vec![parse_poly("x^2", &r).unwrap(), parse_poly("y^2", &r).unwrap()];
        assert_eq!(sq.reduce(&basis).to_string_in(&r), "2*x*y");
    }

    #[test]
    fn block_coefficients() {
        let r = ring();
        let g = parse_poly("x*T_1 - y*T_2 + y*T_1", &r).unwrap();
        let c = g.block_coeff(2..4, &[1, 0], &r.weights);
        assert_eq!(c.to_string_in(&r), "x + y");
        assert_eq!(g.block_support(2..4).len(), 2);
    }
}
