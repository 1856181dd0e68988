//! Plain-text rendering. Every check appears on its own line as
//! `PASS <section>/<id>` or `FAIL <section>/<id>`, so the verdicts can be
//! compared with the JSON form line by line.

use std::fmt::Write;

use crate::report::{Document, MatrixDto, Monomial, Report};

fn monomial(m: &Monomial) -> String {
    let mut s = m.coeff.strip_suffix("/1").unwrap_or(&m.coeff).to_string();
    match m.x_exp {
        0 => {}
        1 => s.push_str("*x"),
        e => write!(s, "*x^{e}").unwrap(),
    }
    match m.theta_exp {
        0 => {}
        1 => s.push_str("*θ"),
        e => write!(s, "*θ^{e}").unwrap(),
    }
    s
}

fn matrix(out: &mut String, m: &MatrixDto) {
    let cells: Vec<Vec<String>> = m
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    if e.is_empty() {
                        "0".into()
                    } else {
                        e.iter().map(monomial).collect::<Vec<_>>().join(" + ")
                    }
                })
                .collect()
        })
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(|c| c.chars().count())
        .max()
        .unwrap_or(1);
    writeln!(out, "  {} ({}x{}):", m.name, m.rows, m.cols).unwrap();
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(out, "    [ {} ]", padded.join("  ")).unwrap();
    }
}

fn report(out: &mut String, r: &Report) {
    let w: Vec<String> = r.weights.iter().map(u32::to_string).collect();
    writeln!(
        out,
        "# {} weights=({}) mu={} n={}",
        r.command,
        w.join(","),
        r.mu,
        r.n
    )
    .unwrap();
    for s in &r.sections {
        writeln!(out, "## {}", s.name).unwrap();
        for c in &s.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            match &c.detail {
                Some(d) => writeln!(out, "{tag} {}/{} ({d})", s.name, c.id),
                None => writeln!(out, "{tag} {}/{}", s.name, c.id),
            }
            .unwrap();
        }
        for f in &s.flags {
            writeln!(out, "  {} = {}", f.name, f.value).unwrap();
        }
        for v in &s.vectors {
            writeln!(out, "  {} = ({})", v.name, v.values.join(", ")).unwrap();
        }
        for m in &s.matrices {
            matrix(out, m);
        }
        for p in &s.polynomials {
            writeln!(out, "  {} = {}", p.name, p.display).unwrap();
        }
        for note in &s.notes {
            writeln!(out, "  note: {note}").unwrap();
        }
    }
    if let Some(o) = &r.obstruction {
        writeln!(out, "OBSTRUCTION {o}").unwrap();
    }
    writeln!(out, "RESULT {}", if r.passed { "PASS" } else { "FAIL" }).unwrap();
}

pub fn render(doc: &Document) -> String {
    let mut out = String::new();
    for (i, r) in doc.reports().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        report(&mut out, r);
    }
    if let Document::Batch(b) = doc {
        writeln!(
            out,
            "\nGRID nmax={} wmax={}: {} reports, {}",
            b.grid[0],
            b.grid[1],
            b.reports.len(),
            if b.passed { "PASS" } else { "FAIL" }
        )
        .unwrap();
    }
    out
}

/// Reads back the `(section, id, passed)` triples from rendered text.
pub fn parse_check_lines(text: &str) -> Vec<(String, String, bool)> {
    text.lines()
        .filter_map(|line| {
            let (passed, rest) = if let Some(r) = line.strip_prefix("PASS ") {
                (true, r)
            } else {
                (false, line.strip_prefix("FAIL ")?)
            };
            let key = rest.split(" (").next().unwrap_or(rest);
            let (section, id) = key.split_once('/')?;
            Some((section.to_string(), id.to_string(), passed))
        })
        .collect()
}
