//! Aligned plain-text tables.

use crate::run::{Outcome, Report};
use crate::table::Row;

pub fn aligned(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(headers.to_vec())];
    out.push(line(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    ));
    for r in rows {
        out.push(line(r.iter().map(String::as_str).collect()));
    }
    out.join("\n") + "\n"
}

fn outcome(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "FAIL",
        Outcome::Undetermined => "undetermined",
    }
}

pub fn reports(rs: &[Report]) -> String {
    let rows: Vec<Vec<String>> = rs
        .iter()
        .flat_map(|r| {
            r.checks.iter().map(move |c| {
                vec![
                    r.id.clone(),
                    c.name.as_str().to_string(),
                    outcome(c.outcome).into(),
                    c.witness.clone().unwrap_or_default(),
                ]
            })
        })
        .collect();
    aligned(&["scenario", "check", "outcome", "witness"], &rows)
}

pub fn verdict_table(rows: &[Row]) -> String {
    let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.matrix.clone(),
                format!("{:?}", r.perm),
                r.period.to_string(),
                if r.transitive { "yes" } else { "no" }.into(),
                opt(r.verdict.map(|v| {
                    serde_json::to_value(v)
                        .unwrap()
                        .as_str()
                        .unwrap()
                        .to_string()
                })),
                opt(r.type_label.map(|t| t.to_string())),
                opt(r.nullity.map(|n| n.to_string())),
                if r.agrees { "yes" } else { "NO" }.into(),
            ]
        })
        .collect();
    aligned(
        &[
            "matrix",
            "perm",
            "period",
            "transitive",
            "verdict",
            "type",
            "nullity",
            "agrees",
        ],
        &body,
    )
}
