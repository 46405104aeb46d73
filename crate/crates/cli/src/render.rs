//! Plain-text output.

use std::fmt::Write;

use solvcert_core::gate::{Certificate, Verdict, Witness};

use crate::table::BatchReport;

pub fn witness(w: &Witness) -> String {
    match w {
        Witness::BlockForm { genus } => format!("block Seifert form with a genus-{genus} derivative"),
        Witness::DetDifference { det_a, det_b, difference } => format!("det A = {det_a}, det B = {det_b}, det A − det B = {difference}"),
        Witness::SatoLevine { value } => format!("μ̄1122 = {value}"),
        Witness::Divisibility { divisor, dividend, quotient } => format!("μ̄123 = {dividend} = {divisor} · {quotient}"),
        Witness::F2Rank { rank, dimension } => format!("Λ²A − Λ²Bᵀ has rank {rank} of {dimension} mod 2"),
        Witness::TripleImage { solution } => {
            let xs: Vec<String> = solution.iter().map(|x| x.to_string()).collect();
            format!("T.L. = (Λ³A − Λ³Bᵀ)·x with x = ({})", xs.join(", "))
        }
        Witness::Plan { plan } => {
            let mut s = String::from("move plan:\n");
            for line in plan.to_string().lines() {
                let _ = writeln!(s, "      {line}");
            }
            s.trim_end().to_string()
        }
        Witness::LeadingCoefficient { a4, residue } => format!("leading coefficient a4 = {a4}, |a4| mod 4 = {residue}"),
        Witness::ConnectedSum { flipped, assembled, .. } => format!(
            "connected sum{} with det A − det B = {}",
            if *flipped { " after re-basing the second summand" } else { "" },
            assembled.det_difference()
        ),
    }
}

pub fn certificate(name: &str, c: &Certificate, notes: &[String]) -> String {
    let mut s = String::new();
    match (c.verdict, c.criterion) {
        (Verdict::OneSolvable, Some(crit)) => {
            let _ = writeln!(s, "{name}: 1-solvable ({crit})");
        }
        _ => {
            let _ = writeln!(s, "{name}: not determined");
        }
    }
    for w in &c.witnesses {
        let _ = writeln!(s, "  {}", witness(w));
    }
    if c.verdict == Verdict::NotDetermined {
        for f in &c.failures {
            let _ = writeln!(s, "  {}: {}", f.criterion, f.reason);
        }
    }
    for n in notes.iter().chain(&c.notes) {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}

pub fn report(r: &BatchReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} knots, {} certified, {} not determined, {} errors", r.total, r.certified, r.not_determined.len(), r.errors);
    for (crit, n) in &r.by_criterion {
        let _ = writeln!(s, "  {crit}: {n}");
    }
    for e in &r.entries {
        let status = match (&e.criterion, &e.error) {
            (Some(c), _) => format!("1-solvable ({c})"),
            (None, Some(err)) => format!("error: {err}"),
            (None, None) => format!("not determined; {}", e.reasons.join("; ")),
        };
        let _ = writeln!(s, "{}\t{}", e.name, status);
    }
    s
}
