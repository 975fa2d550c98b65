//! Report records and their text and JSON-lines renderings.

use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub kind: &'static str,
    pub fields: Map<String, Value>,
}

impl Record {
    pub fn new(kind: &'static str) -> Record {
        Record {
            kind,
            fields: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Record {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    /// Values that do not fit a JSON number exactly are kept as strings.
    pub fn text(self, key: &str, value: impl ToString) -> Record {
        self.with(key, value.to_string())
    }
}

#[derive(Debug, Default, Clone, PartialEq)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let mut obj = Map::new();
            obj.insert("record".into(), Value::from(r.kind));
            obj.extend(r.fields.clone());
            out.push_str(&Value::Object(obj).to_string());
            out.push('\n');
        }
        out
    }

    /// A single record prints as `key  value` lines; runs of records of the
    /// same kind print as one table.
    pub fn text(&self) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < self.records.len() {
            let kind = self.records[i].kind;
            let run = self.records[i..]
                .iter()
                .take_while(|r| r.kind == kind)
                .count();
            if !out.is_empty() {
                out.push('\n');
            }
            let group = &self.records[i..i + run];
            if run == 1 {
                key_values(&mut out, &group[0]);
            } else {
                table(&mut out, group);
            }
            i += run;
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

fn key_values(out: &mut String, r: &Record) {
    let width = r.fields.keys().map(String::len).max().unwrap_or(0);
    out.push_str(&format!("[{}]\n", r.kind));
    for (k, v) in &r.fields {
        out.push_str(&format!("{k:<width$}  {}\n", plain(v)));
    }
}

fn table(out: &mut String, rows: &[Record]) {
    let keys: Vec<&String> = rows[0].fields.keys().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            keys.iter()
                .map(|k| r.fields.get(*k).map(plain).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(j, k)| {
            cells
                .iter()
                .map(|c| c[j].len())
                .max()
                .unwrap_or(0)
                .max(k.len())
        })
        .collect();
    // Numbers and flags align right, text aligns left.
    let right: Vec<bool> = keys
        .iter()
        .map(|k| {
            matches!(
                rows[0].fields.get(*k),
                Some(Value::Number(_) | Value::Bool(_))
            )
        })
        .collect();
    let line = |items: Vec<&str>| {
        items
            .iter()
            .zip(widths.iter().zip(&right))
            .map(|(s, (w, r))| {
                if *r {
                    format!("{s:>w$}")
                } else {
                    format!("{s:<w$}")
                }
            })
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    out.push_str(&format!("[{}]\n", rows[0].kind));
    out.push_str(&line(keys.iter().map(|k| k.as_str()).collect()));
    out.push('\n');
    for c in &cells {
        out.push_str(&line(c.iter().map(String::as_str).collect()));
        out.push('\n');
    }
}
