//! Machine-readable run reports.
//!
//! Every invocation emits one JSON object: the subcommand, a digest of its
//! input, the parameters, the result payload, any requested oracle
//! cross-checks, wall time and the library version. The result payload is
//! deterministic given (digest, parameters, seed); wall time lives outside
//! it on purpose.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use shattering::bound::{BoundReport, BoundValue};

pub struct OracleCheck {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl OracleCheck {
    pub fn new(name: &str, pass: bool, details: impl Into<String>) -> OracleCheck {
        OracleCheck { name: name.to_string(), pass, details: details.into() }
    }
}

pub struct RunReport {
    pub subcommand: String,
    pub input_digest: String,
    pub parameters: Value,
    pub result: Value,
    pub oracle_checks: Vec<OracleCheck>,
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn to_json(&self, wall_time_ms: f64) -> Value {
        let checks: Vec<Value> = self
            .oracle_checks
            .iter()
            .map(|c| json!({ "name": c.name, "pass": c.pass, "details": c.details }))
            .collect();
        let mut obj = json!({
            "subcommand": self.subcommand,
            "input_digest": self.input_digest,
            "parameters": self.parameters,
            "result": self.result,
            "oracle_checks": checks,
            "wall_time_ms": wall_time_ms,
            "version": env!("CARGO_PKG_VERSION"),
        });
        if let Some(seed) = self.seed {
            obj["seed"] = json!(seed);
        }
        obj
    }
}

pub fn digest_bytes(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Digest for parameter-only commands: hash of a canonical parameter string.
pub fn digest_params(canonical: &str) -> String {
    digest_bytes(canonical.as_bytes())
}

pub fn bound_report_json(rep: &BoundReport) -> Value {
    let rhs = match &rep.value {
        BoundValue::Exact(v) => json!({ "exact": v.to_string() }),
        BoundValue::Approx(x) => json!({ "approx": x }),
    };
    let mut obj = json!({
        "formula": rep.formula.id(),
        "n": rep.n,
        "r": rep.r,
        "d": rep.d,
        "threshold": rep.threshold,
        "rhs": rhs,
        "notes": rep.notes,
    });
    if let Some(k) = rep.k {
        obj["k"] = json!(k);
    }
    obj
}

/// Rows for `--csv` output of tabular subcommands.
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
