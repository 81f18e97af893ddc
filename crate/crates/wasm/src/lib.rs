//! Browser bindings for the bounds engine. Every export takes plain
//! strings and returns a JSON envelope (`{"ok":true,...}` or
//! `{"ok":false,"error":...}`), so the page needs no glue beyond
//! `JSON.parse`. The same functions compile natively for testing.

use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

use spectrabound::{
    baseline_catalog, bounds_for_with, generate, parse_graph, search_p34, spectral_radius,
    theorem_bounds, AnyGraph, BaselineValue, BoundResult, EqualityDiagnosis, Family, MatrixKind,
    NonnegMatrix, SearchSummary, ShiftedSystem, SpectralResult, SpectrumReport, Tolerances,
};

#[derive(Serialize)]
#[serde(untagged)]
enum Envelope<T: Serialize> {
    Ok {
        ok: bool,
        #[serde(flatten)]
        payload: T,
    },
    Err {
        ok: bool,
        error: String,
    },
}

fn respond<T: Serialize>(result: Result<T, String>) -> String {
    let envelope = match result {
        Ok(payload) => Envelope::Ok { ok: true, payload },
        Err(error) => Envelope::Err { ok: false, error },
    };
    serde_json::to_string(&envelope).unwrap_or_else(|err| {
        format!("{{\"ok\":false,\"error\":\"serialization failed: {err}\"}}")
    })
}

#[derive(Serialize)]
struct GraphAnalysis {
    report: SpectrumReport,
    baselines: Vec<BaselineValue>,
}

/// Full bounds report for an edge-list graph and a matrix kind.
#[wasm_bindgen]
pub fn analyze_graph(edge_list: &str, kind: &str) -> String {
    respond(analyze_graph_inner(edge_list, kind))
}

fn analyze_graph_inner(edge_list: &str, kind: &str) -> Result<GraphAnalysis, String> {
    let kind: MatrixKind = kind.parse()?;
    let graph = parse_graph(edge_list).map_err(|e| e.to_string())?;
    let report =
        bounds_for_with(&graph, kind, &Tolerances::default()).map_err(|e| e.to_string())?;
    let baselines = baseline_catalog(&graph, kind).map_err(|e| e.to_string())?;
    Ok(GraphAnalysis { report, baselines })
}

#[derive(Serialize)]
struct MatrixAnalysis {
    n: usize,
    bounds: BoundResult,
    rho: SpectralResult,
    diagnosis: EqualityDiagnosis,
}

/// Bounds for a raw matrix in the text format. `shift_mode` is "zero",
/// "row-sums", or "vector" (whitespace-separated reals in
/// `shift_text`).
#[wasm_bindgen]
pub fn analyze_matrix(matrix_text: &str, shift_mode: &str, shift_text: &str) -> String {
    respond(analyze_matrix_inner(matrix_text, shift_mode, shift_text))
}

fn analyze_matrix_inner(
    matrix_text: &str,
    shift_mode: &str,
    shift_text: &str,
) -> Result<MatrixAnalysis, String> {
    let matrix = NonnegMatrix::parse(matrix_text).map_err(|e| e.to_string())?;
    let system = match shift_mode {
        "zero" => {
            let n = matrix.n();
            ShiftedSystem::new(matrix, vec![0.0; n])
        }
        "row-sums" => ShiftedSystem::from_row_sum_shift(matrix),
        "vector" => {
            let shift =
                spectrabound::matcore::parse_vector(shift_text).map_err(|e| e.to_string())?;
            ShiftedSystem::new(matrix, shift)
        }
        other => return Err(format!("unknown shift mode `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    let bounds = theorem_bounds(&system);
    let rho = spectral_radius(
        &system.matrix(),
        1e-12,
        spectrabound::matcore::default_max_iter(system.n()),
    )
    .map_err(|e| e.to_string())?;
    let diagnosis = spectrabound::bounds::diagnose_equality_with(&system, &bounds, rho.rho, 1e-7)
        .map_err(|e| e.to_string())?;
    Ok(MatrixAnalysis {
        n: system.n(),
        bounds,
        rho,
        diagnosis,
    })
}

#[derive(Serialize)]
struct GeneratedGraph {
    edge_list: String,
}

/// Edge-list text for a named family; `a`/`b` are the integer
/// parameters, `p` the edge probability for the random families.
#[wasm_bindgen]
pub fn generate_edge_list(family: &str, a: u32, b: u32, p: f64, seed: u32) -> String {
    respond(generate_edge_list_inner(family, a, b, p, seed))
}

fn generate_edge_list_inner(
    family: &str,
    a: u32,
    b: u32,
    p: f64,
    seed: u32,
) -> Result<GeneratedGraph, String> {
    let family = match family {
        "path" => Family::Path { n: a as usize },
        "cycle" => Family::Cycle { n: a as usize },
        "star" => Family::Star { leaves: a as usize },
        "complete" => Family::Complete { n: a as usize },
        "complete-bipartite" => Family::CompleteBipartite {
            a: a as usize,
            b: b as usize,
        },
        "petersen" => Family::Petersen,
        "directed-cycle" => Family::DirectedCycle { n: a as usize },
        "gnp" => Family::RandomConnected {
            n: a as usize,
            p,
            seed: seed as u64,
        },
        "strong-gnp" => Family::RandomStrongDigraph {
            n: a as usize,
            p,
            seed: seed as u64,
        },
        other => return Err(format!("unknown family `{other}`")),
    };
    let graph: AnyGraph = generate(&family).map_err(|e| e.to_string())?;
    Ok(GeneratedGraph {
        edge_list: graph.to_edge_list_text(),
    })
}

#[derive(Serialize)]
struct SearchAnalysis {
    summary: SearchSummary,
}

/// Exhaustive bipartite degree-chain search; browser-sized `max_n`
/// (4 to 8) keeps the page responsive.
#[wasm_bindgen]
pub fn search_chain_witnesses(max_n: u32) -> String {
    respond(search_inner(max_n))
}

fn search_inner(max_n: u32) -> Result<SearchAnalysis, String> {
    if !(4..=8).contains(&max_n) {
        return Err(format!("max_n must lie in 4..=8 for the demo, got {max_n}"));
    }
    let summary = search_p34(max_n as usize, 1e-9).map_err(|e| e.to_string())?;
    Ok(SearchAnalysis { summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_analysis_envelope() {
        let edges = generate_edge_list("path", 3, 0, 0.0, 0);
        let parsed: serde_json::Value = serde_json::from_str(&edges).unwrap();
        assert_eq!(parsed["ok"], true);
        let text = parsed["edge_list"].as_str().unwrap();
        assert_eq!(text, "directed: false\nn: 3\n1 2\n2 3\n");

        let out = analyze_graph(text, "distance");
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed["ok"], true);
        let lower = parsed["report"]["bounds"]["lower"].as_f64().unwrap();
        assert!((lower - 8.0 / 3.0).abs() < 1e-9);
        assert_eq!(parsed["baselines"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn matrix_analysis_recovers_the_scale() {
        let out = analyze_matrix("2\n0 2\n1 0\n", "vector", "4.5 1");
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed["ok"], true);
        let scale = parsed["diagnosis"]["condition_ii"]["scale"].as_f64().unwrap();
        assert!((scale - 0.5).abs() < 1e-9);
    }

    #[test]
    fn errors_come_back_in_the_envelope() {
        let out = analyze_graph("directed: false\nn: 2\n1 1\n", "adjacency");
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed["ok"], false);
        assert!(parsed["error"].as_str().unwrap().contains("self-loop"));

        let out = search_chain_witnesses(3);
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed["ok"], false);
    }

    #[test]
    fn search_summary_reports_counts() {
        let out = search_chain_witnesses(5);
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed["ok"], true);
        assert!(parsed["summary"]["examined"].as_u64().unwrap() > 0);
    }
}
