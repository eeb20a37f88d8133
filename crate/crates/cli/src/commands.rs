//! One function per subcommand; each fills a report and leaves exit codes
//! to the caller.

use std::collections::BTreeMap;

use mfci::algebra::module::DEFAULT_SATURATION_CAP;
use mfci::algebra::{free_resolution, Ideal, Mat};
use mfci::complexes::{exactness_window, koszul};
use mfci::extsupport::{
    ab_support, check_support_properties, complete_resolution_c1, ext_modules, stabilization_degree, stable_ext, stable_ext_via_compres,
    support_set, CiModule, ExtData,
};
use mfci::fixtures::{fixture, ModuleSpec, ProblemSpec};
use mfci::mf::{canonical_isos, dual_mf, hom_mf, supp_tpc, tensor_mf, x_twists, GradedMF};
use mfci::operators::{
    cohomology_resolution, eisenbud_operators, regularity_bound, standard_resolution, syzygy_resolution, verify_chi_equals_t,
};
use mfci::{Error, Result};
use serde_json::{json, Value};

use crate::report::{self, Check, Report};

pub struct Job {
    pub spec: ProblemSpec,
    pub other: Option<ProblemSpec>,
    pub n_max: usize,
    pub q_lo: i64,
    pub q_hi: i64,
    /// False when the range came from defaults and may be clamped.
    pub q_explicit: bool,
    pub seed: u64,
    pub full: bool,
    pub op: String,
}

impl Job {
    fn second(&self) -> &ProblemSpec {
        self.other.as_ref().unwrap_or(&self.spec)
    }

    fn inputs(&self) -> Vec<ProblemSpec> {
        let mut v = vec![self.spec.clone()];
        v.extend(self.other.clone());
        v
    }
}

/// Splits at commas outside parentheses.
fn split_top(s: &str) -> Vec<String> {
    let (mut out, mut cur, mut depth) = (Vec::new(), String::new(), 0i32);
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// `k`, `R`, `R/(g1, g2, ...)`, or the name of a fixture over the same ring.
pub fn module_from_str(base: &ProblemSpec, s: &str) -> Result<ProblemSpec> {
    let s = s.trim();
    if s == "k" {
        let vars: Vec<&str> = base.ring.variables.iter().map(|v| v.as_str()).collect();
        return Ok(base.with_module(s, ModuleSpec::koszul(&vars)));
    }
    if s == "R" {
        return Ok(base.with_module(s, ModuleSpec::cyclic(&[])));
    }
    if let Some(inner) = s.strip_prefix("R/(").and_then(|t| t.strip_suffix(')')) {
        let gens = split_top(inner);
        let gens: Vec<&str> = gens.iter().map(|g| g.as_str()).collect();
        return Ok(base.with_module(s, ModuleSpec::cyclic(&gens)));
    }
    let other = fixture(s)?;
    if other.ring != base.ring || other.f != base.f {
        return Err(Error::RingMismatch);
    }
    Ok(other)
}

fn resolve(job: &Job, r: &mut Report) -> Result<()> {
    let q = job.spec.ring()?;
    let f = job.spec.f_polys(&q)?;
    let pres = job.spec.presentation(&q)?;
    // M as a Q-module: the relations together with f times each generator.
    let n = pres.rank();
    let mut cols: Vec<Vec<_>> = (0..pres.rel.cols).map(|j| pres.rel.col(j)).collect();
    for fi in &f {
        for k in 0..n {
            let mut c = vec![mfci::algebra::Poly::zero(); n];
            c[k] = fi.clone();
            cols.push(c);
        }
    }
    let g = free_resolution(&Mat::from_cols(n, &cols), &pres.tgt, &q, None)?;
    r.out("resolution", report::complex(&g));
    r.out("ranks", json!(g.resolution_ranks()));
    r.out("length", json!(g.length()));
    r.check(Check::from_result("d^2 = 0", &g.check_d_squared()));
    r.check(Check::from_result("homogeneous", &g.check_homogeneous()));
    Ok(())
}

fn koszul_cmd(job: &Job, r: &mut Report) -> Result<()> {
    let q = job.spec.ring()?;
    let f = job.spec.f_polys(&q)?;
    let k = koszul(&f, &q).complex;
    r.out("complex", report::complex(&k));
    r.out("ranks", json!(k.resolution_ranks()));
    r.check(Check::from_result("d^2 = 0", &k.check_d_squared()));
    if job.full && k.length() >= 1 {
        let exact = exactness_window(&k, -k.length(), -1)?;
        r.check(Check::new("exact in positive homological degrees", exact, ""));
    }
    Ok(())
}

fn homotopies(m: &CiModule, r: &mut Report) -> Result<()> {
    let sys = &m.sys;
    let sigma: Vec<Value> = sys
        .sigma
        .iter()
        .map(|(j, comps)| json!({"J": j, "components": comps.iter().map(|c| report::mat(c, &m.q)).collect::<Vec<_>>()}))
        .collect();
    r.out("resolution", report::complex(&sys.base));
    r.out("sigma", json!(sigma));
    r.check(Check::from_result("higher homotopy equations", &sys.check()));
    Ok(())
}

fn mf_build(m: &CiModule, r: &mut Report, full_output: bool) -> Result<GradedMF> {
    let e = m.mf()?;
    if full_output {
        r.out("mf", report::mf(&e));
    } else {
        r.out("rank", json!([e.rank().0, e.rank().1]));
        r.out("potential", json!(e.ctx.show(&e.w)));
    }
    r.check(Check::from_result("g0 g1 = W and g1 g0 = W", &e.check()));
    Ok(e)
}

fn mf_op(job: &Job, m: &CiModule, r: &mut Report) -> Result<()> {
    let e = m.mf()?;
    let out = match job.op.as_str() {
        "shift" => e.shift(),
        "twist" => e.twist(1),
        "dual" => dual_mf(&e),
        "tensor" | "hom" => {
            let f = job.second().ci_module()?.mf()?;
            if job.op == "tensor" {
                tensor_mf(&e, &f)?
            } else {
                hom_mf(&e, &f)?
            }
        }
        o => return Err(Error::input(format!("unknown operation '{o}' (shift, twist, dual, tensor, hom)"))),
    };
    r.out("operation", json!(job.op));
    r.out("mf", report::mf(&out));
    r.check(Check::from_result("factorization equations", &out.check()));
    Ok(())
}

fn standard_res(job: &Job, m: &CiModule, r: &mut Report) -> Result<()> {
    let sr = standard_resolution(&m.sys, job.n_max)?;
    r.out("resolution", report::complex(&sr.complex));
    r.out("ranks", json!(sr.ranks()));
    r.out("blocks", json!(sr.blocks));
    r.check(Check::from_result("d^2 = 0", &sr.complex.check_d_squared()));
    r.check(Check::from_result("homogeneous", &sr.complex.check_homogeneous()));
    if job.full && job.n_max >= 2 {
        let exact = exactness_window(&sr.complex, -(job.n_max as i64 - 1), -1)?;
        r.check(Check::new(format!("exact in degrees 1..{}", job.n_max - 1), exact, ""));
    }
    Ok(())
}

fn cohres(job: &Job, m: &CiModule, r: &mut Report) -> Result<()> {
    let e = m.mf()?;
    let xt = x_twists(&m.sys);
    let cr = cohomology_resolution(&e, &xt, job.n_max)?;
    let sr = standard_resolution(&m.sys, job.n_max)?;
    let rb = regularity_bound(&e);
    r.out("resolution", report::complex(&cr.complex));
    r.out("regularity", json!({"alpha": rb.alpha, "n_E": rb.n_e, "consistent": rb.consistent}));
    r.check(Check::new("equals the standard resolution", cr.complex.same_as(&sr.complex), ""));
    if job.full {
        let degrees = job.n_max.saturating_sub(rb.n_e.max(0) as usize).max(1);
        let syz = syzygy_resolution(&e, &xt, &m.pres, degrees);
        if let Ok(s) = &syz {
            r.out("syzygy", json!({"n_E": s.n_e, "tail_betti": s.tail_betti, "syzygy_betti": s.syzygy_betti}));
        }
        r.check(Check::from_result("end cokernel matches the syzygy module", &syz));
    }
    Ok(())
}

fn eisenbud(job: &Job, m: &CiModule, r: &mut Report) -> Result<()> {
    let sr = standard_resolution(&m.sys, job.n_max)?;
    let eo = eisenbud_operators(sr.complex.clone(), &m.f, None)?;
    let ops: Vec<Value> = eo
        .t
        .iter()
        .map(|t| {
            let comps: BTreeMap<String, Value> =
                (0..=job.n_max as i64 - 2).map(|n| (format!("{n}"), report::mat(&t.at(-(n + 2)), &m.r))).collect();
            json!(comps)
        })
        .collect();
    r.out("operators", json!(ops));
    for (i, t) in eo.t.iter().enumerate() {
        r.check(Check::from_result(format!("t_{} is a chain map", i + 1), &t.check_chain_map()));
        let same = (0..=job.n_max as i64 - 2).all(|n| t.at(-(n + 2)) == sr.ops[i].at(-(n + 2)));
        r.check(Check::new(format!("t_{} equals 1 ⊗ χ_{}", i + 1, i + 1), same, ""));
    }
    Ok(())
}

fn verify_chi(job: &Job, m: &CiModule, r: &mut Report) -> Result<()> {
    let rep = verify_chi_equals_t(&m.sys, job.n_max, job.seed);
    if let Ok(rep) = &rep {
        r.out("comparisons", json!(rep.comparisons));
        let hs: Vec<Value> = rep
            .homotopies
            .iter()
            .map(|h| {
                let comps: BTreeMap<String, Value> =
                    (0..=job.n_max as i64).map(|n| (format!("{n}"), report::mat(&h.map.at(-n), &m.r))).collect();
                json!(comps)
            })
            .collect();
        r.out("homotopies", json!(hs));
    }
    r.check(Check::from_result("χ_i = T_i and lift independence", &rep));
    Ok(())
}

fn ext_json(ext: &ExtData) -> Value {
    let dims: Vec<usize> = (0..=ext.n_max as i64).map(|n| ext.dim(n)).collect();
    let hilbert: BTreeMap<String, BTreeMap<i64, usize>> = (0..=ext.n_max as i64).map(|n| (format!("{n}"), ext.hilbert(n))).collect();
    json!({"dims": dims, "hilbert": hilbert})
}

fn ext_cmd(job: &Job, m: &CiModule, r: &mut Report) -> Result<()> {
    let n = job.second().ci_module()?;
    let ext = ext_modules(m, &n.pres, job.n_max)?;
    r.out("ext", ext_json(&ext));
    for (name, p) in [("even", 0), ("odd", 1)] {
        let gp = ext.parity_presentation(p);
        r.out(&format!("{name}_generators"), json!(gp.gen_keys));
        r.out(&format!("{name}_annihilator"), report::ideal(&gp.pres.annihilator()));
    }
    r.check(Check::new("no generators in the top third of the window", ext.gulliksen_witness(), ""));
    Ok(())
}

fn stable_ext_cmd(job: &Job, m: &CiModule, r: &mut Report) -> Result<()> {
    let n = job.second().ci_module()?;
    let ext = ext_modules(m, &n.pres, job.n_max)?;
    let (mut q_lo, mut q_hi) = (job.q_lo, job.q_hi);
    if !job.q_explicit && m.c() > 1 {
        q_lo = q_lo.max(stabilization_degree(&ext)?);
        q_hi = q_hi.min(job.n_max as i64).max(q_lo);
    }
    let table = stable_ext(&ext, q_lo, q_hi)?;
    let dims: BTreeMap<String, usize> = table.entries.iter().map(|(q, h)| (format!("{q}"), h.values().sum())).collect();
    r.out("q0", json!(table.q0));
    r.out("dims", json!(dims));
    r.out("hilbert", json!(table.entries.iter().map(|(q, h)| (format!("{q}"), h.clone())).collect::<BTreeMap<_, _>>()));
    let agree = (table.q0.max(q_lo)..=q_hi.min(job.n_max as i64)).all(|q| table.entries.get(&q) == Some(&ext.hilbert(q)));
    r.check(Check::new("stable range agrees with Ext", agree, ""));
    if job.full && m.c() == 1 {
        let cr = complete_resolution_c1(m, q_lo - 1, q_hi.max(job.n_max as i64) + 1);
        let via = cr.and_then(|cr| stable_ext_via_compres(&cr, &n.pres, q_lo, q_hi));
        match via {
            Ok(v) => r.check(Check::new("complete resolution route agrees", v == table.entries, "")),
            Err(e) => r.check(Check::new("complete resolution route agrees", false, e.to_string())),
        }
    }
    Ok(())
}

fn support_cmd(job: &Job, m: &CiModule, r: &mut Report) -> Result<()> {
    let n = job.second().ci_module()?;
    let s = support_set(m, &n, job.n_max);
    let Ok(s) = s else {
        r.check(Check::from_result("annihilator and factorization routes agree", &s));
        return Ok(());
    };
    r.out("support", report::ideal(&s.ideal));
    r.out("annihilator_even", report::ideal(&s.ann_ev));
    r.out("annihilator_odd", report::ideal(&s.ann_odd));
    r.out("empty", json!(s.is_empty()));
    if let Some(mf) = &s.mf_route {
        r.out("factorization_route", report::ideal(mf));
    }
    r.check(Check::new("annihilator and factorization routes agree", true, ""));
    let ext = ext_modules(m, &n.pres, job.n_max)?;
    let q0 = stabilization_degree(&ext)?;
    let top = (q0 + 6).min(job.n_max as i64);
    let vanish = (q0..=top).all(|k| ext.dim(k) == 0);
    r.out("ext_vanishes", json!({"from": q0, "to": top, "vanishes": vanish}));
    r.check(Check::new("empty support iff Ext vanishes", vanish == s.is_empty(), format!("[{q0}, {top}]")));
    Ok(())
}

fn ab_support_cmd(job: &Job, m: &CiModule, r: &mut Report) -> Result<()> {
    let n = job.second().ci_module()?;
    let ext = ext_modules(m, &n.pres, job.n_max)?;
    let a = ab_support(&ext)?;
    r.out("support", report::ideal(&a));
    r.out("unit", json!(a.is_unit()));
    Ok(())
}

fn t_sat(i: &Ideal) -> Result<Ideal> {
    let ring = &i.ctx.ring;
    let t = Ideal::new(i.ctx.clone(), ring.t_range().map(|k| ring.var(k)).collect());
    i.saturate(&t, DEFAULT_SATURATION_CAP)
}

fn verify_identities(job: &Job, m: &CiModule, r: &mut Report) -> Result<()> {
    let e = m.mf()?;
    let f = job.second().ci_module()?.mf()?;
    let isos = canonical_isos(&e, &f, &e, &f)?;
    let names: Vec<String> = isos.iter().map(|c| c.name.clone()).collect();
    r.out("isomorphisms", json!(names));
    for c in &isos {
        r.check(Check::from_result(format!("{} is an invertible strict morphism", c.name), &c.verify()));
    }
    let p = hom_mf(&e, &f)?;
    let q = hom_mf(&f, &e)?;
    let sp = supp_tpc(&p, true)?.ideal();
    let sq = supp_tpc(&q, true)?.ideal();
    let spq = supp_tpc(&tensor_mf(&p, &q)?, true)?.ideal();
    let meet = t_sat(&sp.add(&sq))?;
    r.check(Check::new("supp(P ⊗ Q) = supp P ∩ supp Q", spq.radical_equals(&meet), ""));
    let sd = supp_tpc(&dual_mf(&p), true)?.ideal();
    r.check(Check::new("supp(P*) = supp P", sd.radical_equals(&sp), ""));
    r.out("supports", json!({"P": report::ideal(&sp), "Q": report::ideal(&sq), "P⊗Q": report::ideal(&spq)}));
    Ok(())
}

fn verify_supports(job: &Job, r: &mut Report) -> Result<()> {
    let mut specs = vec![module_from_str(&job.spec, "k")?, job.spec.clone()];
    specs.extend(job.other.clone());
    let mut mods: Vec<(String, CiModule)> = Vec::new();
    for s in &specs {
        if mods.iter().any(|(n, _)| *n == s.name) {
            continue;
        }
        mods.push((s.name.clone(), s.ci_module()?));
    }
    let rep = check_support_properties(&mods, job.n_max)?;
    let sup: Vec<Value> = rep.supports.iter().map(|(a, b, i)| json!({"M": a, "N": b, "support": i})).collect();
    r.out("supports", json!(sup));
    for c in rep.checks {
        r.check(Check::new(c.name, c.pass, c.witness));
    }
    Ok(())
}

pub const COMMANDS: [&str; 16] = [
    "resolve",
    "koszul",
    "homotopies",
    "mf-build",
    "mf-check",
    "mf-op",
    "standard-res",
    "cohres",
    "eisenbud",
    "verify-chi",
    "ext",
    "stable-ext",
    "support",
    "ab-support",
    "verify-identities",
    "verify-supports",
];

pub fn run(command: &str, job: &Job) -> Result<Report> {
    let mut r = Report::new(command, job.inputs());
    match command {
        "resolve" => resolve(job, &mut r)?,
        "koszul" => koszul_cmd(job, &mut r)?,
        "verify-supports" => verify_supports(job, &mut r)?,
        _ => {
            let m = job.spec.ci_module()?;
            match command {
                "homotopies" => homotopies(&m, &mut r)?,
                "mf-build" => drop(mf_build(&m, &mut r, true)?),
                "mf-check" => drop(mf_build(&m, &mut r, false)?),
                "mf-op" => mf_op(job, &m, &mut r)?,
                "standard-res" => standard_res(job, &m, &mut r)?,
                "cohres" => cohres(job, &m, &mut r)?,
                "eisenbud" => eisenbud(job, &m, &mut r)?,
                "verify-chi" => verify_chi(job, &m, &mut r)?,
                "ext" => ext_cmd(job, &m, &mut r)?,
                "stable-ext" => stable_ext_cmd(job, &m, &mut r)?,
                "support" => support_cmd(job, &m, &mut r)?,
                "ab-support" => ab_support_cmd(job, &m, &mut r)?,
                "verify-identities" => verify_identities(job, &m, &mut r)?,
                c => return Err(Error::input(format!("unknown command '{c}'"))),
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci2() -> ProblemSpec {
        fixture("ci2").unwrap()
    }

    #[test]
    fn module_strings() {
        assert_eq!(module_from_str(&ci2(), "k").unwrap().module, ModuleSpec::koszul(&["x", "y"]));
        assert_eq!(module_from_str(&ci2(), "R/(x, x*y)").unwrap().module, ModuleSpec::cyclic(&["x", "x*y"]));
        assert_eq!(module_from_str(&ci2(), "R").unwrap().module, ModuleSpec::cyclic(&[]));
        assert_eq!(module_from_str(&ci2(), "ci2-ry").unwrap().name, "ci2-ry");
        assert_eq!(module_from_str(&ci2(), "h1").unwrap_err(), Error::RingMismatch);
        assert!(matches!(module_from_str(&ci2(), "nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn split_respects_parentheses() {
        assert_eq!(split_top("x, (x+y)*(x-y),y"), vec!["x", "(x+y)*(x-y)", "y"]);
    }
}
