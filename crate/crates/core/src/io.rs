//! Array files: sparse JSON triples (canonical) and a CSV grid.
//!
//! Both writers are canonical, so write, read, write is byte-identical.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::array::PFArray;
use crate::error::{Error, Result};
use crate::params::Parameters;

const FORMAT: &str = "heffter-array";
const VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// `.csv` means CSV, anything else JSON.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

/// An array together with its parameters and the branches that built it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayFile {
    pub params: Parameters,
    pub trace: Vec<String>,
    pub array: PFArray,
}

#[derive(Serialize, Deserialize)]
struct Cell {
    row: usize,
    col: usize,
    value: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonFile {
    format: String,
    version: u32,
    m: u64,
    n: u64,
    s: u64,
    k: u64,
    t: u64,
    #[serde(default)]
    trace: Vec<String>,
    cells: Vec<Cell>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn fill(params: &Parameters, cells: impl IntoIterator<Item = (usize, usize, i64)>) -> Result<PFArray> {
    let (m, n) = (params.m() as usize, params.n() as usize);
    let mut a = PFArray::new(m, n);
    for (row, col, value) in cells {
        if row == 0 || col == 0 || row > m || col > n {
            return Err(parse_err(format!("cell ({row}, {col}) outside a {m} x {n} array")));
        }
        if value == 0 {
            return Err(parse_err(format!("cell ({row}, {col}) holds 0")));
        }
        if a.get(row, col).is_some() {
            return Err(parse_err(format!("cell ({row}, {col}) listed twice")));
        }
        a.set(row, col, Some(value));
    }
    Ok(a)
}

impl ArrayFile {
    pub fn new(params: Parameters, trace: Vec<String>, array: PFArray) -> Self {
        ArrayFile { params, trace, array }
    }

    pub fn to_json(&self) -> String {
        let p = &self.params;
        let trace = serde_json::to_string(&self.trace).expect("strings serialize");
        let mut out = format!(
            "{{\"format\":\"{FORMAT}\",\"version\":{VERSION},\"m\":{},\"n\":{},\"s\":{},\"k\":{},\"t\":{},\"trace\":{trace},\"cells\":[",
            p.m(),
            p.n(),
            p.s(),
            p.k(),
            p.t()
        );
        let mut first = true;
        for (row, col, value) in self.array.entries() {
            out.push_str(if first { "\n" } else { ",\n" });
            first = false;
            let cell = serde_json::to_string(&Cell { row, col, value }).expect("cell serializes");
            out.push_str(&cell);
        }
        out.push_str("\n]}\n");
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: JsonFile = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        if f.format != FORMAT || f.version != VERSION {
            return Err(parse_err(format!("unsupported format {} v{}", f.format, f.version)));
        }
        let params = Parameters::derive(f.m, f.n, f.s, f.k, f.t).map_err(|e| parse_err(e.to_string()))?;
        let array = fill(&params, f.cells.into_iter().map(|c| (c.row, c.col, c.value)))?;
        Ok(ArrayFile { params, trace: f.trace, array })
    }

    pub fn to_csv(&self) -> String {
        let p = &self.params;
        let mut out = format!("# {FORMAT} v{VERSION}\n");
        let _ = writeln!(out, "# m={},n={},s={},k={},t={}", p.m(), p.n(), p.s(), p.k(), p.t());
        let _ = writeln!(out, "# trace={}", self.trace.join(";"));
        for r in 1..=self.array.rows() {
            let line: Vec<String> = self
                .array
                .row(r)
                .iter()
                .map(|c| c.map(|v| v.to_string()).unwrap_or_default())
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some(&format!("# {FORMAT} v{VERSION}")) {
            return Err(parse_err("missing CSV header line"));
        }
        let dims = lines
            .next()
            .and_then(|l| l.strip_prefix("# "))
            .ok_or_else(|| parse_err("missing parameter line"))?;
        let mut vals = [None; 5];
        for part in dims.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(|| parse_err(format!("bad field {part:?}")))?;
            let slot = ["m", "n", "s", "k", "t"]
                .iter()
                .position(|k| *k == key.trim())
                .ok_or_else(|| parse_err(format!("unknown key {key:?}")))?;
            vals[slot] = Some(value.trim().parse::<u64>().map_err(|e| parse_err(format!("{key}: {e}")))?);
        }
        let [Some(m), Some(n), Some(s), Some(k), Some(t)] = vals else {
            return Err(parse_err("parameter line needs m, n, s, k, t"));
        };
        let params = Parameters::derive(m, n, s, k, t).map_err(|e| parse_err(e.to_string()))?;
        let trace = lines
            .next()
            .and_then(|l| l.strip_prefix("# trace="))
            .ok_or_else(|| parse_err("missing trace line"))?;
        let trace = trace.split(';').filter(|s| !s.is_empty()).map(String::from).collect();

        let mut cells = Vec::new();
        let mut rows = 0;
        for (i, line) in lines.filter(|l| !l.trim().is_empty()).enumerate() {
            rows += 1;
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() as u64 != n {
                return Err(parse_err(format!("row {} has {} fields, expected {n}", i + 1, fields.len())));
            }
            for (j, f) in fields.iter().enumerate() {
                let f = f.trim();
                if !f.is_empty() {
                    let v = f.parse::<i64>().map_err(|e| parse_err(format!("row {}: {e}", i + 1)))?;
                    cells.push((i + 1, j + 1, v));
                }
            }
        }
        if rows != m {
            return Err(parse_err(format!("{rows} rows, expected {m}")));
        }
        let array = fill(&params, cells)?;
        Ok(ArrayFile { params, trace, array })
    }

    /// Parses either encoding, choosing by the first non-blank character.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_csv(text)
        }
    }

    pub fn encode(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.encode(Format::from_path(path)))?;
        Ok(())
    }
}
