use serde::Serialize;

pub const SCHEMA: &str = "weilcoh/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    pub n: usize,
    pub k: usize,
    pub ell: Option<String>,
    pub max_degree: u32,
    pub buffer: u32,
    pub part: String,
    pub model: Option<String>,
    pub format: String,
    pub seed: u64,
    pub suite: String,
    pub max_entries: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub ell: usize,
    pub degree: u32,
    pub dim: usize,
    pub stabilized: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
}

impl Cell {
    pub fn new(ell: usize, degree: u32, dim: usize, stabilized: bool) -> Self {
        Cell {
            ell,
            degree,
            dim,
            stabilized,
            p: None,
            q: None,
            r: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub command: String,
    /// Serialized [`Params`]; an empty object when the arguments did not parse.
    pub params: serde_json::Value,
    pub tables: Vec<Table>,
    pub verdicts: Vec<Verdict>,
    pub timing: Timing,
}

#[derive(Serialize)]
struct Untimed<'a> {
    schema: &'static str,
    command: &'a str,
    params: &'a serde_json::Value,
    tables: &'a [Table],
    verdicts: &'a [Verdict],
}

impl ReportDocument {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The document without its timing field; identical runs give identical strings.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string_pretty(&Untimed {
            schema: self.schema,
            command: &self.command,
            params: &self.params,
            tables: &self.tables,
            verdicts: &self.verdicts,
        })
        .expect("report serializes")
    }

    /// Tables only, one row per cell.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("table,ell,degree,dim,stabilized,p,q,r\n");
        let opt = |x: Option<i64>| x.map(|v| v.to_string()).unwrap_or_default();
        for t in &self.tables {
            for c in &t.cells {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    t.name,
                    c.ell,
                    c.degree,
                    c.dim,
                    c.stabilized,
                    opt(c.p),
                    opt(c.q),
                    opt(c.r.map(i64::from))
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(ms: u128) -> ReportDocument {
        ReportDocument {
            schema: SCHEMA,
            command: "hilbert".into(),
            params: serde_json::json!({"k": 1}),
            tables: vec![Table {
                name: "t".into(),
                cells: vec![Cell {
                    p: Some(-1),
                    ..Cell::new(1, 2, 3, true)
                }],
            }],
            verdicts: vec![Verdict::new("v", true, "")],
            timing: Timing { elapsed_ms: ms },
        }
    }

    #[test]
    fn canonical_form_ignores_timing() {
        assert_eq!(doc(1).canonical_json(), doc(900).canonical_json());
        assert_ne!(doc(1).to_json(), doc(900).to_json());
        assert!(!doc(1).canonical_json().contains("timing"));
    }

    #[test]
    fn csv_projection() {
        assert_eq!(doc(0).to_csv(), "table,ell,degree,dim,stabilized,p,q,r\nt,1,2,3,true,-1,,\n");
    }
}
