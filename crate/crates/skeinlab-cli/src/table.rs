//! Batch computation over a list of links, with an optional on-disk cache keyed by the
//! canonical diagram key.

use std::collections::{BTreeMap, HashMap};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use skeinlab::data::{LinkTable, LinkTableEntry};
use skeinlab::diagram::LinkDiagram;
use skeinlab::exec;
use skeinlab::poly::{parse_fraction, LaurentFraction};
use skeinlab::Error;

use crate::invariant::{compute, Invariant, Route};
use crate::output::status;

/// Reads a table: the versioned TOML format, or plain lines `name PD-code` with `#` comments.
pub fn read_entries(path: &Path) -> std::io::Result<Vec<LinkTableEntry>> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "toml") {
        return LinkTable::from_toml(&text, &path.display().to_string())
            .map(|t| t.entries)
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e.to_string()));
    }
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, pd) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
            LinkTableEntry {
                name: name.to_string(),
                pd: Some(pd.trim().to_string()),
                braid: None,
                strands: None,
                orientation: String::new(),
                jones: None,
                source: path.display().to_string(),
            }
        })
        .collect())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CacheRecord {
    key: String,
    invariant: String,
    normalization: String,
    value: String,
}

fn cache_id(key: &str, inv: Invariant, norm: &str) -> String {
    format!("{key}/{inv}/{norm}")
}

pub struct Cache {
    values: HashMap<String, LaurentFraction>,
    fresh: Vec<CacheRecord>,
}

impl Cache {
    /// Unreadable or malformed lines are skipped; a missing file is an empty cache.
    pub fn load(path: Option<&Path>) -> Self {
        let mut values = HashMap::new();
        if let Some(file) = path.and_then(|p| std::fs::File::open(p).ok()) {
            for line in BufReader::new(file).lines().map_while(|l| l.ok()) {
                let Ok(rec) = serde_json::from_str::<CacheRecord>(&line) else { continue };
                let Ok(inv) = rec.invariant.parse::<Invariant>() else { continue };
                if let Ok(v) = parse_fraction(&rec.value) {
                    values.insert(cache_id(&rec.key, inv, &rec.normalization), v);
                }
            }
        }
        Cache {
            values,
            fresh: Vec::new(),
        }
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        if self.fresh.is_empty() {
            return Ok(());
        }
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        for rec in &self.fresh {
            writeln!(f, "{}", serde_json::to_string(rec).expect("plain record"))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub name: String,
    pub status: String,
    pub crossings: Option<usize>,
    pub components: Option<usize>,
    /// Invariant name → canonical text.
    pub values: BTreeMap<String, String>,
    /// `match` or `mismatch` against the recorded Jones polynomial, empty when none.
    pub jones_check: String,
    pub message: String,
}

struct Computed {
    row: Row,
    fresh: Vec<CacheRecord>,
}

fn compute_row(
    entry: &LinkTableEntry,
    invariants: &[Invariant],
    route: Route,
    norm: &str,
    cache: &HashMap<String, LaurentFraction>,
) -> Computed {
    let mut row = Row {
        name: entry.label(),
        status: "ok".into(),
        crossings: None,
        components: None,
        values: BTreeMap::new(),
        jones_check: String::new(),
        message: String::new(),
    };
    let mut fresh = Vec::new();
    let fail = |row: &mut Row, e: &Error| {
        row.status = status(e).to_string();
        row.message = e.to_string();
    };
    let d: LinkDiagram = match entry.diagram() {
        Ok(d) => d,
        Err(e) => {
            fail(&mut row, &e);
            return Computed { row, fresh };
        }
    };
    row.crossings = Some(d.n_crossings());
    row.components = Some(d.n_components());
    let key = hex::encode(d.canonical_key());
    let normalization = norm.parse().unwrap_or_default();
    for &inv in invariants {
        let id = cache_id(&key, inv, norm);
        let value = match cache.get(&id) {
            Some(v) => Ok(v.clone()),
            None => compute(Some(&d), None, inv, route, normalization).inspect(|v| {
                fresh.push(CacheRecord {
                    key: key.clone(),
                    invariant: inv.to_string(),
                    normalization: norm.to_string(),
                    value: v.to_string(),
                })
            }),
        };
        match value {
            Ok(v) => {
                if inv == Invariant::V {
                    match entry.expected_jones() {
                        Ok(Some(want)) => {
                            row.jones_check = if want == v { "match" } else { "mismatch" }.into();
                            if want != v {
                                row.status = "jones-mismatch".into();
                            }
                        }
                        Ok(None) => {}
                        Err(e) => fail(&mut row, &e),
                    }
                }
                row.values.insert(inv.to_string(), v.to_string());
            }
            Err(e) => {
                fail(&mut row, &e);
                row.values.insert(inv.to_string(), String::new());
            }
        }
    }
    Computed { row, fresh }
}

/// Rows come back in input order whatever the degree of parallelism.
pub fn run(
    entries: &[LinkTableEntry],
    invariants: &[Invariant],
    route: Route,
    norm: &str,
    cache: &mut Cache,
) -> Vec<Row> {
    let known = &cache.values;
    let out = exec::map(entries, |e| compute_row(e, invariants, route, norm, known));
    let mut rows = Vec::with_capacity(out.len());
    for c in out {
        for rec in c.fresh {
            if let (Ok(inv), Ok(v)) = (rec.invariant.parse::<Invariant>(), parse_fraction(&rec.value)) {
                cache.values.insert(cache_id(&rec.key, inv, &rec.normalization), v);
            }
            cache.fresh.push(rec);
        }
        rows.push(c.row);
    }
    rows
}

pub fn write_csv<W: Write>(rows: &[Row], invariants: &[Invariant], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        return w.flush().map_err(Into::into);
    }
    let mut header: Vec<String> = ["name", "status", "crossings", "components"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend(invariants.iter().map(|i| i.to_string()));
    header.extend(["jones_check".to_string(), "message".to_string()]);
    w.write_record(&header)?;
    for r in rows {
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        let mut rec = vec![r.name.clone(), r.status.clone(), opt(r.crossings), opt(r.components)];
        rec.extend(
            invariants
                .iter()
                .map(|i| r.values.get(&i.to_string()).cloned().unwrap_or_default()),
        );
        rec.extend([r.jones_check.clone(), r.message.clone()]);
        w.write_record(&rec)?;
    }
    w.flush().map_err(Into::into)
}
