//! Problem descriptions in serializable form, the named fixtures and a
//! seeded generator of random complete intersections.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::field::Field;
use crate::algebra::matrix::Mat;
use crate::algebra::ops::is_regular_sequence;
use crate::algebra::module::Presentation;
use crate::algebra::poly::Poly;
use crate::algebra::ring::{Ctx, PolyRing, RingCtx};
use crate::complexes::koszul;
use crate::error::{Error, Result};
use crate::extsupport::CiModule;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    /// 0 for the rationals.
    pub characteristic: u32,
    pub variables: Vec<String>,
    pub degrees: Vec<u32>,
}

/// A module by generators and relations; `relations` is a grid of rows, one
/// per generator, and generator `i` sits in degree `-twists[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub relations: Vec<Vec<String>>,
    pub twists: Vec<i32>,
    /// Resolve over `Q` by the Koszul complex on the relations of a cyclic
    /// module; they must form a regular sequence.
    #[serde(default)]
    pub koszul: bool,
}

impl ModuleSpec {
    pub fn cyclic(gens: &[&str]) -> ModuleSpec {
        ModuleSpec { relations: vec![gens.iter().map(|s| s.to_string()).collect()], twists: vec![0], koszul: false }
    }

    pub fn koszul(gens: &[&str]) -> ModuleSpec {
        ModuleSpec { koszul: true, ..ModuleSpec::cyclic(gens) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    pub n_max: usize,
    pub q_lo: i64,
    pub q_hi: i64,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { n_max: 8, q_lo: -4, q_hi: 8, seed: 7 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub name: String,
    pub ring: RingSpec,
    pub f: Vec<String>,
    pub module: ModuleSpec,
    #[serde(default)]
    pub options: Options,
}

impl ProblemSpec {
    pub fn from_json(s: &str) -> Result<ProblemSpec> {
        serde_json::from_str(s).map_err(|e| Error::Parse { msg: e.to_string(), line: e.line(), col: e.column() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn c(&self) -> usize {
        self.f.len()
    }

    /// The ambient polynomial ring `Q`.
    pub fn ring(&self) -> Result<Ctx> {
        let field = match self.ring.characteristic {
            0 => Field::Rationals,
            p => Field::prime(p)?,
        };
        let names: Vec<&str> = self.ring.variables.iter().map(|s| s.as_str()).collect();
        Ok(RingCtx::polynomial(Arc::new(PolyRing::new(field, &names, &self.ring.degrees)?)))
    }

    /// The defining sequence, checked homogeneous and nonzero.
    pub fn f_polys(&self, q: &Ctx) -> Result<Vec<Poly>> {
        let g = q.ring.grading();
        self.f
            .iter()
            .map(|s| {
                let p = q.parse(s)?;
                if p.is_zero() {
                    return Err(Error::input(format!("defining equation '{s}' is zero")));
                }
                if !p.is_homogeneous(&g) {
                    return Err(Error::InhomogeneousInput(s.clone()));
                }
                Ok(p)
            })
            .collect()
    }

    /// The module over `ctx` (either `Q` or `R`).
    pub fn presentation(&self, ctx: &Ctx) -> Result<Presentation> {
        let m = &self.module;
        if m.relations.len() != m.twists.len() {
            return Err(Error::input("one relation row per generator twist is required"));
        }
        let cols = m.relations.first().map(|r| r.len()).unwrap_or(0);
        if m.relations.iter().any(|r| r.len() != cols) {
            return Err(Error::input("relation rows must have equal length"));
        }
        let rows: Vec<Vec<Poly>> = m.relations.iter().map(|r| r.iter().map(|s| ctx.parse(s)).collect::<Result<_>>()).collect::<Result<_>>()?;
        let rel = if rows.is_empty() { Mat::zero(0, 0) } else { Mat::from_rows(rows) };
        let g = ctx.ring.grading();
        for j in 0..rel.cols {
            let mut deg = None;
            for i in 0..rel.rows {
                let p = rel.get(i, j);
                if p.is_zero() {
                    continue;
                }
                if !p.is_homogeneous(&g) {
                    return Err(Error::InhomogeneousInput(m.relations[i][j].clone()));
                }
                let d = p.graded_degree(&g).unwrap() - m.twists[i] as i64;
                if deg.is_some_and(|e| e != d) {
                    return Err(Error::InhomogeneousInput(format!("relation column {j}")));
                }
                deg = Some(d);
            }
        }
        Ok(Presentation::new(ctx.clone(), m.twists.clone(), rel))
    }

    /// `Q`, `f`, and `M` over `R = Q/(f)` with its homotopy data.
    pub fn ci_module(&self) -> Result<CiModule> {
        let q = self.ring()?;
        let f = self.f_polys(&q)?;
        let r = q.quotient(&f);
        let pres = self.presentation(&r)?;
        if !self.module.koszul {
            return CiModule::new(&pres, &f);
        }
        if self.module.relations.len() != 1 || self.module.twists != [0] {
            return Err(Error::input("a Koszul resolution needs a cyclic module with twist 0"));
        }
        let gens: Vec<Poly> = self.module.relations[0].iter().map(|s| q.parse(s)).collect::<Result<_>>()?;
        if !is_regular_sequence(&gens, &q) {
            return Err(Error::input("the relations do not form a regular sequence"));
        }
        CiModule::with_resolution(&pres, &f, koszul(&gens, &q).complex)
    }

    /// The same ring and `f` with another module.
    pub fn with_module(&self, name: &str, module: ModuleSpec) -> ProblemSpec {
        ProblemSpec { name: name.to_string(), module, ..self.clone() }
    }
}

fn squares(name: &str, vars: &[&str], module: &[&str]) -> ProblemSpec {
    ProblemSpec {
        name: name.to_string(),
        ring: RingSpec { characteristic: 101, variables: vars.iter().map(|s| s.to_string()).collect(), degrees: vec![1; vars.len()] },
        f: vars.iter().map(|v| format!("{v}^2")).collect(),
        // The residue field is resolved by the Koszul complex on the variables.
        module: if module == vars { ModuleSpec::koszul(module) } else { ModuleSpec::cyclic(module) },
        options: Options::default(),
    }
}

pub const FIXTURE_NAMES: [&str; 5] = ["h1", "ci2", "ci2-rx", "ci2-ry", "ci3"];

/// Named fixtures; `random-<seed>` gives a random complete intersection.
pub fn fixture(name: &str) -> Result<ProblemSpec> {
    match name {
        "h1" => Ok(squares(name, &["x"], &["x"])),
        "ci2" => Ok(squares(name, &["x", "y"], &["x", "y"])),
        "ci2-rx" => Ok(squares(name, &["x", "y"], &["x"])),
        "ci2-ry" => Ok(squares(name, &["x", "y"], &["y"])),
        "ci3" => Ok(squares(name, &["x", "y", "z"], &["x", "y", "z"])),
        _ => match name.strip_prefix("random-").and_then(|s| s.parse::<u64>().ok()) {
            Some(seed) => Ok(random_ci(seed)),
            None => Err(Error::UnknownFixture(name.to_string())),
        },
    }
}

fn random_form(rng: &mut ChaCha8Rng, ring: &PolyRing, vars: &[usize], d: u32, p: u32) -> Poly {
    let mut out = Poly::zero();
    for m in ring.monomials_of_degree(vars, d) {
        if rng.gen_bool(0.5) {
            out = out.add(&Poly::term(m, ring.coeff(rng.gen_range(1..p) as i64)));
        }
    }
    out
}

/// A random complete intersection in at most 3 variables with equations of
/// degree at most 3 and a cyclic module. Equation `i` is monic in `x_i` over
/// the later variables, which makes the sequence regular.
pub fn random_ci(seed: u64) -> ProblemSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = 101;
    let all = ["x", "y", "z"];
    let n = rng.gen_range(1..=3);
    let vars = &all[..n];
    let ring = PolyRing::new(Field::prime(p).unwrap(), vars, &vec![1; n]).unwrap();
    let c = rng.gen_range(1..=n);
    let mut f = Vec::new();
    for i in 0..c {
        let d = rng.gen_range(2..=3);
        let later: Vec<usize> = (i..n).collect();
        let lead = ring.var(i).pow(d, ring.field);
        let tail: Poly = random_form(&mut rng, &ring, &later, d, p);
        // Drop any x_i^d in the tail so the leading coefficient stays 1.
        let tail = Poly::from_terms(tail.terms.into_iter().filter(|(m, _)| m.exps[i] < d as u16).collect());
        f.push(lead.add(&tail));
    }
    let k = rng.gen_range(1..=n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let gens: Vec<String> = order[..k]
        .iter()
        .map(|&v| {
            let lin = random_form(&mut rng, &ring, &(v..n).collect::<Vec<_>>(), 1, p);
            ring.show(&ring.var(v).add(&Poly::from_terms(lin.terms.into_iter().filter(|(m, _)| m.exps[v] == 0).collect())))
        })
        .collect();
    ProblemSpec {
        name: format!("random-{seed}"),
        ring: RingSpec { characteristic: p, variables: vars.iter().map(|s| s.to_string()).collect(), degrees: vec![1; n] },
        f: f.iter().map(|g| ring.show(g)).collect(),
        module: ModuleSpec { relations: vec![gens], twists: vec![0], koszul: false },
        options: Options { seed, ..Options::default() },
    }
}
