//! The verification battery and its reports.
//!
//! | id | asserts |
//! |----|---------|
//! | `table1` | dimensions of the restricted simple modules and of the `G_1` PIMs |
//! | `st-tensor` | dimension and `T_1`-fixed-point balance of every `St ⊗ L(λ)` |
//! | `tq` | `dim T(ρ+λ) = dim Q_1(ρ−λ)` and the `λ̂` pairings |
//! | `socle-radical` | the second socle layer of `T(2,1)` against the Ext¹ data |
//! | `no-2-good` | head obstruction for `∇(2,1)` |
//! | `nabla02` | head obstruction for `∇(0,2)` |
//! | `nogood` | head obstruction in the Steinberg block of `St ⊗ rad ∇(2,1)` |
//! | `module-m` | bookkeeping for `M = T(2,1)/rad² T(2,1)` and `St ⊗ M` |
//! | `tmc-counterexample` | the tilting hypothesis for `T(2,2)` contradicts `dim Hom_G(St, St ⊗ M) = 1` |
//! | `t22-socle` | `soc_G Δ(2,2)` has two `G_1`-simple constituents |
//!
//! A check passes only if every identity and claim in its certificate
//! holds. Missing data yields `data-missing`; any other error is a failure.

mod certificate;
mod checks;

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::modular::Dataset;

pub use certificate::{replay, Certificate, Claim, Identity, Relation};

/// Check ids in report order.
pub const CHECK_IDS: [&str; 10] = [
    "table1",
    "st-tensor",
    "tq",
    "socle-radical",
    "no-2-good",
    "nabla02",
    "nogood",
    "module-m",
    "tmc-counterexample",
    "t22-socle",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "data-missing")]
    DataMissing,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::DataMissing => "data-missing",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub status: CheckStatus,
    #[serde(serialize_with = "labelled_values")]
    pub computed_values: Vec<(String, Value)>,
    pub certificate: Certificate,
    pub citations: Vec<String>,
}

fn labelled_values<S: serde::Serializer>(v: &[(String, Value)], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Value> = v.iter().map(|(l, x)| json!({"label": l, "value": x})).collect();
    rows.serialize(s)
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn value(&self, label: &str) -> Option<&Value> {
        self.computed_values.iter().find(|(l, _)| l == label).map(|(_, v)| v)
    }
}

/// Runs one check; unknown ids are an error, everything else is a report.
pub fn run_check(id: &str, ds: &Dataset) -> Result<CheckReport> {
    let f: fn(&mut checks::Ctx) -> Result<()> = match id {
        "table1" => checks::table1,
        "st-tensor" => checks::st_tensor,
        "tq" => checks::tq,
        "socle-radical" => checks::socle_radical,
        "no-2-good" => checks::no_2_good,
        "nabla02" => checks::nabla02,
        "nogood" => checks::nogood,
        "module-m" => checks::module_m,
        "tmc-counterexample" => checks::tmc_counterexample,
        "t22-socle" => checks::t22_socle,
        other => return Err(Error::MissingData(format!("check `{other}`"))),
    };
    let mut ctx = checks::Ctx::new(ds);
    let outcome = f(&mut ctx);
    let status = match &outcome {
        Ok(()) if ctx.cert.all_hold() && !ctx.cert.identities.is_empty() => CheckStatus::Pass,
        Ok(()) => CheckStatus::Fail,
        Err(Error::MissingData(_)) => CheckStatus::DataMissing,
        Err(_) => CheckStatus::Fail,
    };
    if let Err(e) = outcome {
        ctx.cert.error = Some(e.to_string());
    }
    Ok(CheckReport {
        id: id.to_string(),
        status,
        computed_values: ctx.values,
        certificate: ctx.cert,
        citations: ctx.citations,
    })
}

/// Runs the checks concurrently and returns their reports in catalog order.
pub fn run_checks(ids: &[&str], ds: &Dataset) -> Result<Vec<CheckReport>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = ids.iter().map(|id| s.spawn(move || run_check(id, ds))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    })
}

pub fn run_all(ds: &Dataset) -> Vec<CheckReport> {
    run_checks(&CHECK_IDS, ds).expect("catalog ids are known")
}

pub fn render_json(reports: &[CheckReport]) -> String {
    let mut s = serde_json::to_string_pretty(&json!({ "checks": reports })).expect("reports serialize");
    s.push('\n');
    s
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(Value::is_number) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            format!("({})", parts.join(","))
        }
        Value::Array(items) => items.iter().map(render_value).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

pub fn render_text(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "{:<20} {}", r.id, r.status.as_str());
        for (label, v) in &r.computed_values {
            let _ = writeln!(out, "    {label}: {}", render_value(v));
        }
        for id in &r.certificate.identities {
            let mark = if id.holds { "ok " } else { "BAD" };
            let _ = writeln!(out, "    [{mark}] {}: {}", id.label, id.render());
        }
        for c in &r.certificate.claims {
            let mark = if c.holds { "ok " } else { "BAD" };
            if c.detail.is_empty() {
                let _ = writeln!(out, "    [{mark}] {}", c.label);
            } else {
                let _ = writeln!(out, "    [{mark}] {} ({})", c.label, c.detail);
            }
        }
        for v in &r.certificate.verdicts {
            let _ = writeln!(out, "    verdict: {}", v["status"].as_str().unwrap_or("?"));
        }
        if let Some(e) = &r.certificate.error {
            let _ = writeln!(out, "    error: {e}");
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let _ = writeln!(out, "{passed}/{} checks passed", reports.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::BUILTIN_DATA;

    #[test]
    fn builtin_passes_every_check() {
        let ds = Dataset::builtin().unwrap();
        for r in run_all(&ds) {
            assert!(r.passed(), "{}", render_text(std::slice::from_ref(&r)));
            assert!(!r.citations.is_empty(), "{} has no citations", r.id);
        }
    }

    #[test]
    fn reports_are_deterministic_and_replayable() {
        let ds = Dataset::builtin().unwrap();
        let a = render_json(&run_all(&ds));
        let b = render_json(&run_all(&ds));
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        let checks = v["checks"].as_array().unwrap();
        assert_eq!(checks.len(), 10);
        for c in checks {
            assert!(replay(c).unwrap(), "{}", c["id"]);
        }
    }

    #[test]
    fn table1_values() {
        let ds = Dataset::builtin().unwrap();
        let r = run_check("table1", &ds).unwrap();
        assert_eq!(r.value("dim Q1(0,0)"), Some(&json!(2304)));
        assert_eq!(r.value("dim L(0,1)"), Some(&json!(14)));
    }

    #[test]
    fn altered_st_multiplicity_fails_st_tensor() {
        let text = BUILTIN_DATA.replace(
            r#"{"module": "Q1(1,0)", "mult": 1}, {"module": "St", "mult": 2}"#,
            r#"{"module": "Q1(1,0)", "mult": 1}, {"module": "St", "mult": 3}"#,
        );
        let ds = Dataset::from_json_str(&text).unwrap();
        let r = run_check("st-tensor", &ds).unwrap();
        assert_eq!(r.status, CheckStatus::Fail);
        let bad = r.certificate.identities.iter().find(|i| !i.holds).unwrap();
        assert_eq!(bad.render(), "64·14 = 1·768 + 3·64  [896 != 960]");
        assert_eq!(run_check("table1", &ds).unwrap().status, CheckStatus::Fail);
    }

    #[test]
    fn empty_registry_is_data_missing() {
        let text = r#"{"type":"G2","p":2,"decomposition":[
            {"lambda":[0,0],"factors":[[[0,0],1]],"provenance":"x"}]}"#;
        let ds = Dataset::from_json_str(text).unwrap();
        for r in run_all(&ds) {
            assert_eq!(r.status, CheckStatus::DataMissing, "{}", r.id);
        }
    }

    #[test]
    fn unknown_check_is_an_error() {
        let ds = Dataset::builtin().unwrap();
        assert!(run_check("nope", &ds).is_err());
    }
}
