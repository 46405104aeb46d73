//! Knot tables: CSV ingestion and batch reports.

use std::collections::BTreeMap;
use std::io::Read;

use anyhow::Result;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use solvcert_core::gate::{certify, CriterionChoice, Verdict};
use solvcert_core::int_serde::Int;
use solvcert_core::seifert::MetabolizerSearch;

use crate::spec::{load, KnotSpec};

#[derive(Debug, Default)]
pub struct Ingested {
    pub knots: Vec<KnotSpec>,
    pub warnings: Vec<String>,
}

fn parse_flag(s: &str) -> Option<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "" | "false" | "0" | "no" | "n" | "f" => Some(false),
        "true" | "1" | "yes" | "y" | "t" => Some(true),
        _ => None,
    }
}

/// Reads rows `name, genus, coefficients, [algebraically_slice]`, coefficients
/// low degree first and separated by spaces. Only genus-2 rows are usable without
/// a Seifert matrix; anything else is skipped with a warning.
pub fn ingest<R: Read>(reader: R) -> Result<Ingested> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).comment(Some(b'#')).trim(csv::Trim::All).from_reader(reader);
    let mut out = Ingested::default();
    for (n, record) in rdr.records().enumerate() {
        let line = n + 1;
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                out.warnings.push(format!("row {line}: {e}"));
                continue;
            }
        };
        if record.iter().all(str::is_empty) {
            continue;
        }
        if n == 0 && record.get(1).is_some_and(|f| f.eq_ignore_ascii_case("genus")) {
            continue;
        }
        if !(3..=4).contains(&record.len()) {
            out.warnings.push(format!("row {line}: expected 3 or 4 fields, found {}", record.len()));
            continue;
        }
        let name = record[0].to_string();
        let Ok(genus) = record[1].parse::<usize>() else {
            out.warnings.push(format!("row {line} ({name}): bad genus {:?}", &record[1]));
            continue;
        };
        let coeffs: Result<Vec<BigInt>, _> = record[2].split_whitespace().map(str::parse::<BigInt>).collect();
        let Ok(coeffs) = coeffs else {
            out.warnings.push(format!("row {line} ({name}): bad coefficients {:?}", &record[2]));
            continue;
        };
        let Some(slice) = parse_flag(record.get(3).unwrap_or("")) else {
            out.warnings.push(format!("row {line} ({name}): bad algebraically_slice flag {:?}", &record[3]));
            continue;
        };
        if genus != 2 {
            out.warnings.push(format!("row {line} ({name}): genus {genus} needs a Seifert matrix, skipped"));
            continue;
        }
        let spec = KnotSpec {
            name: name.clone(),
            genus,
            seifert: None,
            profile: None,
            alexander: Some(coeffs.into_iter().map(Int).collect()),
            algebraically_slice: slice,
        };
        if let Err(e) = load(&spec, None, MetabolizerSearch::default()) {
            out.warnings.push(format!("row {line} ({name}): {e:#}"));
            continue;
        }
        out.knots.push(spec);
    }
    out.knots.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub name: String,
    pub genus: usize,
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criterion: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reasons: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchReport {
    pub total: usize,
    pub certified: usize,
    pub errors: usize,
    pub by_criterion: BTreeMap<String, usize>,
    pub not_determined: Vec<String>,
    pub entries: Vec<BatchEntry>,
}

fn run_entry(spec: &KnotSpec, search: MetabolizerSearch) -> BatchEntry {
    let mut entry = BatchEntry { name: spec.name.clone(), genus: spec.genus, verdict: None, criterion: None, reasons: Vec::new(), error: None };
    let cert = load(spec, None, search).and_then(|k| Ok(certify(&k.input, CriterionChoice::Auto)?));
    match cert {
        Ok(c) => {
            entry.verdict = Some(c.verdict);
            entry.criterion = c.criterion.map(|c| c.to_string());
            if c.criterion.is_none() {
                entry.reasons = c.failures.iter().map(|f| format!("{}: {}", f.criterion, f.reason)).collect();
            }
        }
        Err(e) => entry.error = Some(format!("{e:#}")),
    }
    entry
}

/// Certifies every knot in parallel; the report is ordered by name.
pub fn batch(knots: &[KnotSpec], search: MetabolizerSearch) -> BatchReport {
    let mut sorted: Vec<&KnotSpec> = knots.iter().collect();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    let entries: Vec<BatchEntry> = sorted.par_iter().map(|s| run_entry(s, search)).collect();
    let mut report = BatchReport { total: entries.len(), ..Default::default() };
    for e in &entries {
        match (&e.verdict, &e.criterion) {
            (Some(Verdict::OneSolvable), Some(c)) => {
                report.certified += 1;
                *report.by_criterion.entry(c.clone()).or_default() += 1;
            }
            (Some(_), _) => report.not_determined.push(e.name.clone()),
            (None, _) => report.errors += 1,
        }
    }
    report.entries = entries;
    report
}
