//! Text and CSV rendering. All numbers print with 9 significant digits
//! and a `.` decimal separator regardless of locale.

use crate::docs::{
    labels_summary, side_label, CompareDoc, GraphBoundsDoc, MatrixBoundsDoc, ReportDoc, SearchDoc,
};
use spectrabound::{BoundResult, EqualityDiagnosis, SpectralResult, SpectrumKind};

/// 9 significant digits; scientific notation outside a readable range.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..9).contains(&exp) {
        format!("{x:.8e}")
    } else {
        let decimals = (8 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    }
}

pub fn opt_sig9(x: Option<f64>) -> String {
    x.map(sig9).unwrap_or_default()
}

fn kind_line(kind: SpectrumKind) -> String {
    format!(
        "{} ({})",
        kind.matrix,
        if kind.directed { "directed" } else { "undirected" }
    )
}

fn bounds_block(out: &mut String, bounds: &BoundResult, rho: &SpectralResult) {
    out.push_str(&format!(
        "lower: {}  (pair {} {})\n",
        sig9(bounds.lower),
        bounds.argmin.0 + 1,
        bounds.argmin.1 + 1
    ));
    out.push_str(&format!(
        "upper: {}  (pair {} {})\n",
        sig9(bounds.upper),
        bounds.argmax.0 + 1,
        bounds.argmax.1 + 1
    ));
    out.push_str(&format!(
        "rho:   {}  (residual {:.2e}, {} iterations)\n",
        sig9(rho.rho),
        rho.residual,
        rho.iterations
    ));
}

fn diagnosis_block(out: &mut String, diagnosis: &EqualityDiagnosis) {
    out.push_str(&format!("side: {}\n", side_label(diagnosis.side)));
    out.push_str(&format!("condition (i): {}\n", diagnosis.condition_i));
    match &diagnosis.condition_ii {
        Some(rec) => {
            let part = |p: &[usize]| {
                p.iter()
                    .map(|&v| (v + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            out.push_str(&format!(
                "condition (ii): scale {} at level {} with parts {{{}}} / {{{}}}\n",
                sig9(rec.scale),
                sig9(rec.level),
                part(&rec.part_u),
                part(&rec.part_w)
            ));
        }
        None => out.push_str("condition (ii): none\n"),
    }
}

pub fn graph_bounds_text(doc: &GraphBoundsDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!("input: {}\n", doc.input));
    out.push_str(&format!("kind: {}\n", kind_line(doc.report.kind)));
    bounds_block(&mut out, &doc.report.bounds, &doc.report.rho);
    diagnosis_block(&mut out, &doc.report.diagnosis);
    let labels = labels_summary(&doc.report.classification);
    if !labels.is_empty() {
        let line: Vec<String> = labels
            .iter()
            .map(|(name, value)| format!("{name}={value}"))
            .collect();
        out.push_str(&format!("classification: {}\n", line.join(" ")));
    }
    out
}

pub fn matrix_bounds_text(doc: &MatrixBoundsDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!("input: {}\n", doc.input));
    out.push_str(&format!("order: {}  shift: {}\n", doc.n, doc.shift_mode));
    bounds_block(&mut out, &doc.bounds, &doc.rho);
    diagnosis_block(&mut out, &doc.diagnosis);
    if let Some(prior) = doc.prior_criterion {
        out.push_str(&format!("prior equality criterion: {prior}\n"));
    }
    out
}

pub fn report_text(doc: &ReportDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "input: {} ({})\n",
        doc.input,
        if doc.directed { "directed" } else { "undirected" }
    ));
    for section in &doc.sections {
        out.push_str(&format!("\n== {} ==\n", kind_line(section.report.kind)));
        bounds_block(&mut out, &section.report.bounds, &section.report.rho);
        diagnosis_block(&mut out, &section.report.diagnosis);
        let labels = labels_summary(&section.report.classification);
        if !labels.is_empty() {
            let line: Vec<String> = labels
                .iter()
                .map(|(name, value)| format!("{name}={value}"))
                .collect();
            out.push_str(&format!("classification: {}\n", line.join(" ")));
        }
        for baseline in &section.baselines {
            out.push_str(&format!(
                "baseline {}: [{}, {}]\n",
                baseline.id,
                opt_sig9(baseline.lower),
                opt_sig9(baseline.upper)
            ));
        }
        for baseline in &section.baselines {
            if let Some(note) = &baseline.note {
                out.push_str(&format!("note {}: {}\n", baseline.id, note));
            }
        }
    }
    out
}

pub fn compare_text(tables: &[CompareDoc]) -> String {
    let mut out = String::new();
    for doc in tables {
        out.push_str(&format!(
            "{} {} rho={}\n",
            doc.input,
            kind_line(doc.kind),
            sig9(doc.rho)
        ));
        for row in &doc.rows {
            out.push_str(&format!(
                "  {:<8} lower={:<15} upper={:<15} lower-gap={:<15} upper-gap={}\n",
                row.id,
                opt_sig9(row.lower),
                opt_sig9(row.upper),
                opt_sig9(row.lower_gap),
                opt_sig9(row.upper_gap)
            ));
        }
        for row in &doc.rows {
            if let Some(note) = &row.note {
                out.push_str(&format!("  note {}: {}\n", row.id, note));
            }
        }
    }
    out
}

pub fn compare_csv(tables: &[CompareDoc]) -> Result<String, csv::Error> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record([
        "graph-id",
        "kind",
        "bound-id",
        "lower",
        "upper",
        "rho",
        "lower-gap",
        "upper-gap",
    ])?;
    for doc in tables {
        for row in &doc.rows {
            writer.write_record([
                doc.input.as_str(),
                doc.kind.matrix.label(),
                row.id.as_str(),
                &opt_sig9(row.lower),
                &opt_sig9(row.upper),
                &sig9(doc.rho),
                &opt_sig9(row.lower_gap),
                &opt_sig9(row.upper_gap),
            ])?;
        }
    }
    let bytes = writer.into_inner().expect("vec writer cannot fail");
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn search_text(doc: &SearchDoc) -> String {
    let summary = &doc.summary;
    let mut out = format!(
        "examined={} witnesses={}\n",
        summary.examined,
        summary.witnesses.len()
    );
    out.push_str(&format!(
        "max-n={} enumerated={} chain-solvable={} semiregular={} elapsed-ms={}\n",
        summary.max_n,
        summary.enumerated,
        summary.chain_solvable,
        summary.semiregular,
        summary.elapsed_ms
    ));
    for (idx, witness) in summary.witnesses.iter().enumerate() {
        out.push_str(&format!(
            "witness {}: n={} scale={} level={} degrees={:?}\n",
            idx + 1,
            witness.graph.n(),
            sig9(witness.scale),
            sig9(witness.level),
            witness.degrees
        ));
    }
    for path in &doc.witness_files {
        out.push_str(&format!("wrote {path}\n"));
    }
    out
}
