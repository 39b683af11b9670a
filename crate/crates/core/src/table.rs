//! Curated knot-table records, table loading, and connected-sum
//! expressions.
//!
//! A [`KnotRecord`] carries the attributes screening consumes: crossing
//! number, an optional DT code, the alternating and fibred flags, the
//! genus, and (where curated) a Seifert matrix.  Genus and fibredness are
//! authoritative table data — the library computes only bounds and uses
//! them to cross-check rows, never to overwrite them.
//!
//! Tables load from CSV (header `name,crossings,dt,alternating,genus,
//! fibred,seifert`) or from a JSON array of objects with the same keys;
//! [`bundled_table`] returns the built-in data set.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Deserialize;
use thiserror::Error;

use crate::alexander::SeifertMatrix;
use crate::diagram::parse_dt_entries;
use crate::matrix::IntMatrix;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("line {line}: {msg}")]
    Schema { line: usize, msg: String },
    #[error("knot {name}: {msg}")]
    Invariant { name: String, msg: String },
    #[error("{0}")]
    Io(String),
    #[error("unknown knot `{0}`")]
    UnknownKnot(String),
    #[error("expression: {0}")]
    Expression(String),
}

fn schema(line: usize, msg: impl Into<String>) -> TableError {
    TableError::Schema { line, msg: msg.into() }
}

fn invariant(name: &str, msg: impl Into<String>) -> TableError {
    TableError::Invariant { name: name.into(), msg: msg.into() }
}

/// One table row: curated attributes of a prime knot.
#[derive(Clone, Debug)]
pub struct KnotRecord {
    name: String,
    crossing_number: u32,
    dt_code: Option<Vec<i64>>,
    alternating: bool,
    genus: u32,
    fibred: bool,
    seifert: Option<SeifertMatrix>,
}

impl KnotRecord {
    pub fn new(
        name: impl Into<String>,
        crossing_number: u32,
        dt_code: Option<Vec<i64>>,
        alternating: bool,
        genus: u32,
        fibred: bool,
        seifert: Option<SeifertMatrix>,
    ) -> Result<Self, TableError> {
        let name = name.into();
        if name.is_empty() || name.contains(char::is_whitespace) || name.contains('#') {
            return Err(invariant(&name, "name must be a single `#`-free token"));
        }
        if crossing_number == 0 {
            return Err(invariant(&name, "crossing number must be positive"));
        }
        if let Some(dt) = &dt_code {
            validate_dt(&name, dt, crossing_number)?;
        }
        if let Some(s) = &seifert {
            if s.genus() as u32 != genus {
                return Err(invariant(
                    &name,
                    format!(
                        "seifert matrix is {n}x{n} but genus is {genus}",
                        n = s.matrix().rows()
                    ),
                ));
            }
        }
        let rec = Self { name, crossing_number, dt_code, alternating, genus, fibred, seifert };
        // a fibred knot's polynomial is monic of degree 2g; a curated row
        // claiming otherwise is bad data
        if rec.fibred && rec.seifert.is_some() && !crate::alexander::fibred_necessary(&rec) {
            return Err(invariant(
                &rec.name,
                "fibred flag contradicts the polynomial (not monic of degree 2g)",
            ));
        }
        Ok(rec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn crossing_number(&self) -> u32 {
        self.crossing_number
    }

    pub fn dt_code(&self) -> Option<&[i64]> {
        self.dt_code.as_deref()
    }

    pub fn alternating(&self) -> bool {
        self.alternating
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn fibred(&self) -> bool {
        self.fibred
    }

    pub fn seifert(&self) -> Option<&SeifertMatrix> {
        self.seifert.as_ref()
    }
}

// a DT code for a c-crossing knot pairs odd positions 1,3,..,2c-1 with the
// signed even labels; cheap structural checks only — realizability is
// decided when a diagram is actually built
fn validate_dt(name: &str, dt: &[i64], crossings: u32) -> Result<(), TableError> {
    if dt.len() != crossings as usize {
        return Err(invariant(
            name,
            format!("dt code has {} entries, expected {}", dt.len(), crossings),
        ));
    }
    let mut seen = BTreeSet::new();
    for &e in dt {
        if e == 0 || e % 2 != 0 {
            return Err(invariant(name, format!("dt entry {e} is not a nonzero even number")));
        }
        let a = e.unsigned_abs();
        if a > 2 * crossings as u64 || !seen.insert(a) {
            return Err(invariant(name, format!("dt entry {e} out of range or repeated")));
        }
    }
    Ok(())
}

/// Looks a knot up by name.
pub fn find<'a>(records: &'a [KnotRecord], name: &str) -> Option<&'a KnotRecord> {
    records.iter().find(|r| r.name == name)
}

/// Parses table text, CSV or JSON (detected by a leading `[`), and
/// validates every record.
pub fn parse_table(text: &str) -> Result<Vec<KnotRecord>, TableError> {
    let records =
        if text.trim_start().starts_with('[') { parse_json(text)? } else { parse_csv(text)? };
    let mut seen = BTreeSet::new();
    for r in &records {
        if !seen.insert(r.name.clone()) {
            return Err(invariant(&r.name, "duplicate record"));
        }
    }
    Ok(records)
}

/// Reads and validates a table file.
pub fn load_table(path: impl AsRef<Path>) -> Result<Vec<KnotRecord>, TableError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|e| TableError::Io(format!("{}: {e}", path.display())))?;
    parse_table(&text)
}

const BUNDLED: &str = include_str!("../data/knot_table.csv");

/// The built-in table: prime knots at low crossing number, with a Seifert
/// matrix curated for every genus-one row.
pub fn bundled_table() -> Vec<KnotRecord> {
    parse_table(BUNDLED).expect("bundled table is validated by the test suite")
}

const COLUMNS: [&str; 7] =
    ["name", "crossings", "dt", "alternating", "genus", "fibred", "seifert"];

fn parse_csv(text: &str) -> Result<Vec<KnotRecord>, TableError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| schema(1, e.to_string()))?
        .clone();
    let mut idx = [0usize; 7];
    for (k, want) in COLUMNS.iter().enumerate() {
        idx[k] = headers
            .iter()
            .position(|h| h == *want)
            .ok_or_else(|| schema(1, format!("missing column `{want}`")))?;
    }
    if headers.len() != COLUMNS.len() {
        return Err(schema(1, format!("expected {} columns, got {}", COLUMNS.len(), headers.len())));
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            schema(line, e.to_string())
        })?;
        let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
        let field = |k: usize| rec.get(idx[k]).unwrap_or("");
        let name = field(0).to_string();
        if name.is_empty() {
            return Err(schema(line, "empty name"));
        }
        let crossings = parse_count(field(1), line, "crossings")?;
        let dt = if field(2).is_empty() {
            None
        } else {
            Some(parse_dt_entries(field(2)).map_err(|e| schema(line, e.to_string()))?)
        };
        let alternating = parse_flag(field(3), line, "alternating")?;
        let genus = parse_count(field(4), line, "genus")?;
        let fibred = parse_flag(field(5), line, "fibred")?;
        let seifert = parse_seifert_field(field(6), &name)?;
        out.push(KnotRecord::new(name, crossings, dt, alternating, genus, fibred, seifert)?);
    }
    Ok(out)
}

fn parse_count(s: &str, line: usize, col: &str) -> Result<u32, TableError> {
    s.parse()
        .map_err(|_| schema(line, format!("column `{col}`: expected a nonnegative integer, got `{s}`")))
}

fn parse_flag(s: &str, line: usize, col: &str) -> Result<bool, TableError> {
    match s {
        "true" | "1" => Ok(true),
        "false" | "0" => Ok(false),
        _ => Err(schema(line, format!("column `{col}`: expected true/false, got `{s}`"))),
    }
}

// `[a, b, c, d]` row-major, comma or whitespace separated; empty means no
// curated matrix
fn parse_seifert_field(s: &str, name: &str) -> Result<Option<SeifertMatrix>, TableError> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
    if body.is_empty() {
        return Ok(None);
    }
    let mut entries = Vec::new();
    for tok in body.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let v: i64 = tok
            .parse()
            .map_err(|_| invariant(name, format!("seifert entry `{tok}` is not an integer")))?;
        entries.push(BigInt::from(v));
    }
    let n = entries.len();
    let side = (1..).find(|s| s * s >= n).unwrap();
    if side * side != n {
        return Err(invariant(name, format!("seifert list has {n} entries, not a square count")));
    }
    seifert_from_entries(name, side, entries).map(Some)
}

fn seifert_from_entries(
    name: &str,
    side: usize,
    entries: Vec<BigInt>,
) -> Result<SeifertMatrix, TableError> {
    SeifertMatrix::new(IntMatrix::new(side, side, entries))
        .map_err(|e| invariant(name, e.to_string()))
}

#[derive(Deserialize)]
struct RawRow {
    name: String,
    crossings: u32,
    #[serde(default)]
    dt: Option<ListField>,
    alternating: bool,
    genus: u32,
    fibred: bool,
    #[serde(default)]
    seifert: Option<ListField>,
}

// JSON accepts either the CSV string form or a plain integer array
#[derive(Deserialize)]
#[serde(untagged)]
enum ListField {
    Text(String),
    List(Vec<i64>),
}

fn parse_json(text: &str) -> Result<Vec<KnotRecord>, TableError> {
    let rows: Vec<RawRow> =
        serde_json::from_str(text).map_err(|e| schema(e.line(), e.to_string()))?;
    let mut out = Vec::new();
    for row in rows {
        let dt = match row.dt {
            None => None,
            Some(ListField::List(v)) if v.is_empty() => None,
            Some(ListField::List(v)) => Some(v),
            Some(ListField::Text(t)) if t.trim().is_empty() => None,
            Some(ListField::Text(t)) => {
                Some(parse_dt_entries(&t).map_err(|e| invariant(&row.name, e.to_string()))?)
            }
        };
        let seifert = match row.seifert {
            None => None,
            Some(ListField::List(v)) if v.is_empty() => None,
            Some(ListField::List(v)) => {
                let n = v.len();
                let side = (1..).find(|s| s * s >= n).unwrap();
                if side * side != n {
                    return Err(invariant(
                        &row.name,
                        format!("seifert list has {n} entries, not a square count"),
                    ));
                }
                Some(seifert_from_entries(
                    &row.name,
                    side,
                    v.into_iter().map(BigInt::from).collect(),
                )?)
            }
            Some(ListField::Text(t)) => parse_seifert_field(&t, &row.name)?,
        };
        out.push(KnotRecord::new(
            row.name,
            row.crossings,
            dt,
            row.alternating,
            row.genus,
            row.fibred,
            seifert,
        )?);
    }
    Ok(out)
}

/// A connected sum of named table knots, written `9_46 # 9_46`; a single
/// name is the trivial sum.  Connected sum is associative and commutative
/// here, so the expression is kept as a flat list of summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotExpression {
    summands: Vec<String>,
}

impl KnotExpression {
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut summands = Vec::new();
        for part in text.split('#') {
            let name = part.trim();
            if name.is_empty() {
                return Err(TableError::Expression("empty summand".into()));
            }
            if name.contains(char::is_whitespace) {
                return Err(TableError::Expression(format!("`{name}` is not a knot name")));
            }
            summands.push(name.to_string());
        }
        Ok(Self { summands })
    }

    pub fn summands(&self) -> &[String] {
        &self.summands
    }

    /// Looks every leaf up in the table, in expression order.
    pub fn resolve<'a>(&self, table: &'a [KnotRecord]) -> Result<Vec<&'a KnotRecord>, TableError> {
        self.summands
            .iter()
            .map(|n| find(table, n).ok_or_else(|| TableError::UnknownKnot(n.clone())))
            .collect()
    }
}

impl fmt::Display for KnotExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.summands.join(" # "))
    }
}

impl FromStr for KnotExpression {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}
