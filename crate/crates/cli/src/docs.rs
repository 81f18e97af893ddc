//! Serializable documents emitted by the commands. Every JSON document
//! round-trips: parsing what was emitted reproduces the value.

use serde::{Deserialize, Serialize};

use spectrabound::{
    BaselineValue, BoundResult, CompareRow, EqualityDiagnosis, EqualityLabels, SearchSummary,
    SpectralResult, SpectrumKind, SpectrumReport,
};

/// `bounds --graph` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphBoundsDoc {
    pub input: String,
    pub report: SpectrumReport,
}

/// `bounds --matrix` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixBoundsDoc {
    pub input: String,
    /// "zero", "file", or "row-sums".
    pub shift_mode: String,
    pub n: usize,
    pub bounds: BoundResult,
    pub rho: SpectralResult,
    pub diagnosis: EqualityDiagnosis,
    /// The earlier published criterion (`r_i + s_i/r_i` constant),
    /// reported on row-sum-shift runs so the two diagnoses can be
    /// contrasted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prior_criterion: Option<bool>,
}

/// One per-kind section of the `report` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSection {
    pub report: SpectrumReport,
    pub baselines: Vec<BaselineValue>,
}

/// `report` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub input: String,
    pub directed: bool,
    pub sections: Vec<ReportSection>,
}

/// One graph's comparison table inside the `compare` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareDoc {
    pub input: String,
    pub kind: SpectrumKind,
    pub rho: f64,
    pub rows: Vec<CompareRow>,
}

/// `search-p34` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchDoc {
    pub summary: SearchSummary,
    /// Paths of witness edge-list files, when an output directory was
    /// given.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witness_files: Vec<String>,
}

// re-exported so render code can name them without reaching into the
// library paths
pub use spectrabound::AttainedSide;

pub fn side_label(side: AttainedSide) -> &'static str {
    match side {
        AttainedSide::LowerAttained => "lower-attained",
        AttainedSide::UpperAttained => "upper-attained",
        AttainedSide::BothAttained => "both-attained",
        AttainedSide::NeitherAttained => "neither-attained",
    }
}

pub fn labels_summary(labels: &EqualityLabels) -> Vec<(&'static str, bool)> {
    let mut out = Vec::new();
    let mut push = |name, value: Option<bool>| {
        if let Some(v) = value {
            out.push((name, v));
        }
    };
    push("regular", labels.regular);
    push("bipartite", labels.bipartite);
    push("semiregular-bipartite", labels.semiregular_bipartite);
    push(
        "same-partition-average-degree",
        labels.same_partition_average_degree,
    );
    push(
        "average-neighbor-degree-constant",
        labels.average_neighbor_degree_constant,
    );
    push(
        "degree-plus-average-constant",
        labels.degree_plus_average_constant,
    );
    push("transmission-regular", labels.transmission_regular);
    push(
        "transmission-ratio-constant",
        labels.transmission_ratio_constant,
    );
    push(
        "transmission-plus-ratio-constant",
        labels.transmission_plus_ratio_constant,
    );
    out
}
