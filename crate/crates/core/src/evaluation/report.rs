use std::fmt::Write;

use super::{AblationRow, ComparisonMatrix, MetricPoint, ReportRow, SweepPoint};

/// Rendering of an undefined correlation.
pub const NOT_EVALUABLE: &str = "-----";

pub fn format_r(r: Option<f64>) -> String {
    match r {
        // avoid printing -0.0000
        Some(v) if v.abs() < 5e-5 => "0.0000".to_string(),
        Some(v) => format!("{v:.4}"),
        None => NOT_EVALUABLE.to_string(),
    }
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn rows_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("dataset_id,method,config_digest,r,n_answers,flagged\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            quote(&r.dataset_id),
            r.method,
            r.config_digest,
            format_r(r.r),
            r.n_answers,
            r.flagged.len()
        );
    }
    out
}

pub fn fig2_csv(curve: &[SweepPoint]) -> String {
    let mut out = String::from("x,y\n");
    for p in curve {
        let _ = writeln!(out, "{},{}", p.max_n, format_r(p.r));
    }
    out
}

pub fn fig3_csv(points: &[MetricPoint]) -> String {
    let mut out = String::from("x,y\n");
    for p in points {
        let _ = writeln!(out, "{},{}", p.component, format_r(p.r));
    }
    out
}

pub fn table1_csv(rows: &[AblationRow]) -> String {
    let mut out = String::from("experiment,mapping_modules,correlation,reference_target\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.2}",
            r.experiment,
            quote(r.label),
            format_r(r.r),
            r.reference_target
        );
    }
    out.push_str("# reference_target: target correlations, annotations only\n");
    out
}

pub fn table2_csv(m: &ComparisonMatrix) -> String {
    let mut out = String::from("dataset");
    for method in &m.methods {
        let _ = write!(out, ",{method}");
    }
    out.push('\n');
    let line = |out: &mut String, label: &str, values: &[Option<f64>]| {
        out.push_str(&quote(label));
        for v in values {
            let _ = write!(out, ",{}", format_r(*v));
        }
        out.push('\n');
    };
    for row in &m.rows {
        line(&mut out, &row.dataset_id, &row.r);
    }
    line(&mut out, "average", &m.average);
    let targets: Vec<String> = m.reference_targets.iter().map(|t| format!("{t:.2}")).collect();
    let _ = writeln!(out, "# reference targets, annotations only: {}", targets.join(","));
    out
}
