use std::fmt::Write as _;
use std::path::Path;

use super::{read_json, EvaluationReport, HarnessError, MetricValues};

/// Two decimals; exact ties round to even.
pub fn format_score(percent: f64) -> String {
    format!("{percent:.2}")
}

fn table(out: &mut String, title: &str, reports: &[EvaluationReport], columns: &[usize]) {
    let system_width = reports
        .iter()
        .map(|r| r.system.chars().count())
        .chain(["System".len()])
        .max()
        .unwrap_or(0);
    let widths: Vec<usize> = columns
        .iter()
        .map(|&c| {
            reports
                .iter()
                .map(|r| format_score(r.scores.as_array()[c]).len())
                .chain([MetricValues::LABELS[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();

    writeln!(out, "{title}").unwrap();
    let mut header = format!("{:<system_width$}", "System");
    for (&c, w) in columns.iter().zip(&widths) {
        write!(header, "  {:>w$}", MetricValues::LABELS[c]).unwrap();
    }
    writeln!(out, "{}", header.trim_end()).unwrap();
    writeln!(out, "{}", "-".repeat(header.trim_end().chars().count())).unwrap();
    for r in reports {
        let mut row = format!("{:<system_width$}", r.system);
        for (&c, w) in columns.iter().zip(&widths) {
            write!(row, "  {:>w$}", format_score(r.scores.as_array()[c])).unwrap();
        }
        writeln!(out, "{row}").unwrap();
    }
}

/// Word-overlap and semantic tables, one row per report in input order.
pub fn render_text(reports: &[EvaluationReport]) -> String {
    let mut out = String::new();
    table(&mut out, "Word-overlap measures", reports, &[0, 1]);
    out.push('\n');
    table(&mut out, "Semantic measures", reports, &[2, 3, 4]);

    let mut notes = Vec::new();
    for r in reports.iter().filter(|r| r.uncovered > 0) {
        notes.push(format!(
            "{}: {} of {} pairs uncovered by the embeddings, excluded from semantic means",
            r.system, r.uncovered, r.pairs
        ));
    }
    if let Some(first) = reports.first() {
        for r in reports.iter().filter(|r| r.fingerprint != first.fingerprint) {
            notes.push(format!(
                "{}: fingerprint {} differs from {} ({}); rows are not comparable",
                r.system,
                &r.fingerprint[..r.fingerprint.len().min(12)],
                first.system,
                &first.fingerprint[..first.fingerprint.len().min(12)],
            ));
        }
    }
    if !notes.is_empty() {
        out.push_str("\nNotes\n");
        for n in notes {
            writeln!(out, "- {n}").unwrap();
        }
    }
    out
}

pub fn render_csv(reports: &[EvaluationReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "system",
        "bleu2",
        "rouge_l",
        "embedding_average",
        "greedy_matching",
        "vector_extrema",
        "pairs",
        "uncovered",
        "fingerprint",
    ])
    .expect("in-memory write");
    for r in reports {
        let mut row = vec![r.system.clone()];
        row.extend(r.scores.as_array().iter().map(|v| format_score(*v)));
        row.extend([r.pairs.to_string(), r.uncovered.to_string(), r.fingerprint.clone()]);
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedReport {
    pub text: String,
    pub csv: String,
}

/// Loads `report.json` files and renders them in the given order.
pub fn cmd_report<P: AsRef<Path>>(paths: &[P]) -> Result<RenderedReport, HarnessError> {
    if paths.is_empty() {
        return Err(HarnessError::EmptyInput("report list".into()));
    }
    let reports = paths
        .iter()
        .map(|p| read_json::<EvaluationReport>(p.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RenderedReport {
        text: render_text(&reports),
        csv: render_csv(&reports),
    })
}
