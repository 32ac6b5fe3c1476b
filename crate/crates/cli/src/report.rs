use std::collections::BTreeMap;
use std::fmt::Write as _;

use ainfty::ainf_core::{AInfAlgebra, MultiOp};
use ainfty::grlin::GradedSpace;
use serde::Serialize;

/// One structure constant: `op(inputs) ∋ coefficient · output`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub arity: usize,
    pub inputs: Vec<String>,
    pub output: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dimensions {
    pub name: String,
    pub by_degree: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub field: String,
    pub ok: bool,
    pub verdicts: Vec<Verdict>,
    pub dimensions: Vec<Dimensions>,
    pub tables: Vec<Table>,
    pub values: BTreeMap<String, String>,
}

impl Report {
    pub fn new(command: &str, field: String) -> Self {
        Report {
            command: command.to_string(),
            field,
            ok: true,
            ..Default::default()
        }
    }

    pub fn verdict(&mut self, name: &str, holds: bool, witness: Option<String>, message: impl Into<String>) {
        self.ok &= holds;
        self.verdicts.push(Verdict {
            name: name.to_string(),
            holds,
            witness,
            message: message.into(),
        });
    }

    pub fn dims(&mut self, name: &str, by_degree: BTreeMap<i64, usize>) {
        self.dimensions.push(Dimensions {
            name: name.to_string(),
            by_degree,
        });
    }

    pub fn value(&mut self, key: &str, v: impl ToString) {
        self.values.insert(key.to_string(), v.to_string());
    }

    pub fn ops(&mut self, name: &str, a: &AInfAlgebra) {
        let mut entries = Vec::new();
        for (_, op) in a.ops() {
            entries.extend(op_entries(a.space(), a.space(), op));
        }
        self.tables.push(Table {
            name: name.to_string(),
            entries,
        });
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} over {}: {}", self.command, self.field, if self.ok { "ok" } else { "FAILED" });
        for v in &self.verdicts {
            let mark = if v.holds { "pass" } else { "FAIL" };
            let _ = write!(s, "  [{mark}] {}: {}", v.name, v.message);
            if let Some(w) = &v.witness {
                let _ = write!(s, " (witness {w})");
            }
            s.push('\n');
        }
        for (k, v) in &self.values {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for d in &self.dimensions {
            let cells: Vec<String> = d.by_degree.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            let _ = writeln!(s, "  dim {} by degree  {}", d.name, cells.join("  "));
        }
        for t in &self.tables {
            let _ = writeln!(s, "  {} ({} entries)", t.name, t.entries.len());
            for e in &t.entries {
                let _ = writeln!(
                    s,
                    "    b{}({}) = {} {}",
                    e.arity,
                    e.inputs.join(", "),
                    e.coefficient,
                    e.output
                );
            }
        }
        s
    }
}

/// Structure constants of one operation, in the order of its sparse table.
pub fn op_entries(source: &GradedSpace, target: &GradedSpace, op: &MultiOp) -> Vec<Entry> {
    let mut out = Vec::new();
    for (w, v) in op.entries() {
        for (&y, c) in v {
            out.push(Entry {
                arity: op.arity(),
                inputs: w.iter().map(|&x| source.name(x).to_string()).collect(),
                output: target.name(y).to_string(),
                coefficient: c.to_string(),
            });
        }
    }
    out
}
