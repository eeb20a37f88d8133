//! Report assembly and the two renderers.

use mfci::algebra::{Ctx, Ideal, Mat};
use mfci::complexes::ChainComplex;
use mfci::fixtures::ProblemSpec;
use mfci::mf::GradedMF;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), pass, detail: detail.into() }
    }

    /// A check that passes exactly when `r` is `Ok`.
    pub fn from_result<T>(name: impl Into<String>, r: &mfci::Result<T>) -> Check {
        match r {
            Ok(_) => Check::new(name, true, ""),
            Err(e) => Check::new(name, false, e.to_string()),
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<ProblemSpec>,
    pub outputs: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, inputs: Vec<ProblemSpec>) -> Report {
        Report { command: command.to_string(), inputs, outputs: Map::new(), checks: Vec::new() }
    }

    pub fn out(&mut self, key: &str, v: Value) {
        self.outputs.insert(key.to_string(), v);
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let inputs: Vec<Value> = self.inputs.iter().map(|s| serde_json::to_value(s).expect("plain data")).collect();
        let checks: Vec<Value> = self.checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect();
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": inputs,
            "outputs": Value::Object(self.outputs.clone()),
            "verification": {
                "status": if self.passed() { "pass" } else { "fail" },
                "checks": checks,
            },
        })
    }
}

pub fn error_json(command: &str, kind: &str, msg: &str) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": {"kind": kind, "message": msg},
    })
}

pub fn mat(m: &Mat, ctx: &Ctx) -> Value {
    json!(m.to_strings(&ctx.ring))
}

/// Terms by cohomological degree, with the differential leaving each one.
pub fn complex(c: &ChainComplex) -> Value {
    let terms: Vec<Value> = (0..c.terms.len())
        .map(|k| {
            let deg = c.lo + k as i64;
            let mut t = json!({"degree": deg, "twists": c.terms[k]});
            if k < c.d.len() {
                t["d"] = mat(&c.d[k], &c.ctx);
            }
            t
        })
        .collect();
    json!({"lo": c.lo, "terms": terms})
}

pub fn mf(e: &GradedMF) -> Value {
    json!({
        "potential": e.ctx.show(&e.w),
        "twist_degree": e.l,
        "e1": e.e1,
        "e0": e.e0,
        "g1": mat(&e.g1, &e.ctx),
        "g0": mat(&e.g0, &e.ctx),
        "rank": [e.rank().0, e.rank().1],
    })
}

pub fn ideal(i: &Ideal) -> Value {
    json!(i.to_strings())
}

/// Indented `key: value` rendering of the JSON tree.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(a) if a.iter().all(|x| x.as_array().is_some_and(|r| r.iter().all(|y| !y.is_object() && !y.is_array()))) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join("; ")))
        }
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar(x).unwrap())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering_is_flat_for_scalars() {
        let v = json!({"a": 1, "b": [1, 2], "c": {"d": "x"}, "m": [["x", "0"], ["0", "y"]]});
        assert_eq!(text(&v), "a: 1\nb: [1, 2]\nc:\n  d: x\nm: [[x, 0]; [0, y]]\n");
    }

    #[test]
    fn failing_check_fails_report() {
        let mut r = Report::new("x", vec![]);
        r.check(Check::new("ok", true, ""));
        assert!(r.passed());
        r.check(Check::from_result::<()>("bad", &Err(mfci::Error::input("no"))));
        assert!(!r.passed());
        assert_eq!(r.to_json()["verification"]["status"], "fail");
    }
}
