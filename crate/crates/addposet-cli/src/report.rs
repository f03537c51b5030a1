//! JSON report types. Field order is fixed by declaration, all maps are
//! ordered, and nothing time-dependent is emitted, so output bytes are
//! identical across runs on the same input.

use serde::Serialize;

use addposet::gf2::BitMatrix;
use addposet::plainness::{SeparatingCertificate, SeparatingOutcome};
use addposet::poset::AxiomReport;
use addposet::{AdditivePoset, BitVec, HomologyPoset, InvariantReport, IsoOutcome};

pub fn bits(v: &BitVec) -> String {
    v.to_string()
}

pub fn bit_list(vs: &[BitVec]) -> Vec<String> {
    vs.iter().map(bits).collect()
}

/// A matrix as its rows, each a bit string.
pub fn matrix_rows(m: &BitMatrix) -> Vec<String> {
    m.rows().iter().map(|r| r.to_string()).collect()
}

#[derive(Serialize)]
pub struct AxiomCheckJson {
    pub axiom: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<String>>,
}

#[derive(Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum AxiomsJson {
    Exhaustive {
        checks: Vec<AxiomCheckJson>,
        all_pass: bool,
    },
    FunctionalCertified {
        functional_count: usize,
    },
}

pub fn axioms_json(report: &AxiomReport) -> AxiomsJson {
    match report {
        AxiomReport::Exhaustive { checks } => AxiomsJson::Exhaustive {
            checks: checks
                .iter()
                .map(|c| AxiomCheckJson {
                    axiom: c.axiom.to_string(),
                    passed: c.counterexample.is_none(),
                    counterexample: c.counterexample.as_ref().map(|ce| bit_list(ce)),
                })
                .collect(),
            all_pass: report.all_pass(),
        },
        AxiomReport::FunctionalCertified { functional_count } => AxiomsJson::FunctionalCertified {
            functional_count: *functional_count,
        },
    }
}

#[derive(Serialize)]
pub struct AnalyzeJson {
    pub kind: &'static str,
    pub dim: usize,
    pub elements: usize,
    pub backend: &'static str,
    pub axioms: AxiomsJson,
    pub atom_count: usize,
    pub atoms: Vec<String>,
    pub tile_count: usize,
    pub tiles: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_checks: Option<OracleJson>,
}

#[derive(Serialize)]
pub struct OracleJson {
    pub checks: Vec<(String, String)>,
    pub all_agree: bool,
}

#[derive(Serialize)]
pub struct InvariantsJson {
    pub kind: &'static str,
    pub height: usize,
    pub dim: usize,
    pub weight: usize,
    pub width: usize,
    pub max_chain: Vec<String>,
    pub atoms: Vec<String>,
    pub max_antichain: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_checks: Option<OracleJson>,
}

pub fn invariants_json(report: &InvariantReport, oracle: Option<OracleJson>) -> InvariantsJson {
    InvariantsJson {
        kind: "poset-invariants",
        height: report.height,
        dim: report.dim,
        weight: report.weight,
        width: report.width,
        max_chain: bit_list(&report.max_chain),
        atoms: bit_list(&report.atoms),
        max_antichain: bit_list(&report.max_antichain),
        oracle_checks: oracle,
    }
}

#[derive(Serialize)]
pub struct SpernerJson {
    pub complexity: usize,
    pub width: usize,
    pub binomial: u64,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct ComplexityJson {
    pub kind: &'static str,
    pub complexity: usize,
    pub minimal_set: Vec<String>,
    pub sperner: SpernerJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_checks: Option<OracleJson>,
}

#[derive(Serialize)]
pub struct CoverageJson {
    pub pair: [String; 2],
    pub witness: usize,
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub functionals: Vec<String>,
    pub coverage: Vec<CoverageJson>,
}

pub fn certificate_json(cert: &SeparatingCertificate) -> CertificateJson {
    CertificateJson {
        functionals: bit_list(&cert.functionals),
        coverage: cert
            .coverage
            .iter()
            .map(|(a, b, i)| CoverageJson {
                pair: [bits(a), bits(b)],
                witness: *i,
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct PlainJson {
    pub kind: &'static str,
    pub plain: bool,
    pub order_preserving: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    /// Image of each element (by index) under the canonical embedding.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedding_images: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncovered_pair: Option<[String; 2]>,
}

pub fn plain_json(poset: &AdditivePoset) -> PlainJson {
    let report = poset.is_plain();
    let certificate = match poset.is_separating(&report.order_preserving) {
        SeparatingOutcome::Separating(cert) => Some(certificate_json(&cert)),
        _ => None,
    };
    PlainJson {
        kind: "poset-plainness",
        plain: report.plain,
        order_preserving: bit_list(&report.order_preserving),
        certificate,
        embedding_images: report.embedding.as_ref().map(|e| bit_list(&e.images)),
        uncovered_pair: report.uncovered.map(|(a, b)| [bits(&a), bits(&b)]),
    }
}

#[derive(Serialize)]
pub struct HasseJson {
    pub kind: &'static str,
    pub dim: usize,
    pub edge_count: usize,
    /// Directed pairs `[a, b]` with `a` covering `b`.
    pub edges: Vec<[String; 2]>,
}

#[derive(Serialize)]
pub struct IsoJson {
    pub kind: &'static str,
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<String>>,
}

pub fn iso_json(outcome: &IsoOutcome) -> IsoJson {
    match outcome {
        IsoOutcome::Isomorphic(m) => IsoJson {
            kind: "poset-isomorphism",
            outcome: "isomorphic",
            matrix: Some(matrix_rows(m)),
        },
        IsoOutcome::NotIsomorphic => IsoJson {
            kind: "poset-isomorphism",
            outcome: "not-isomorphic",
            matrix: None,
        },
        IsoOutcome::Unknown => IsoJson {
            kind: "poset-isomorphism",
            outcome: "unknown",
            matrix: None,
        },
    }
}

#[derive(Serialize)]
pub struct HomologyJson {
    pub kind: &'static str,
    pub top_cells: usize,
    pub dim: usize,
    /// Cycle representatives of the basis classes, over top cells.
    pub basis: Vec<String>,
    pub order_trivial: bool,
    /// Functional backend of the induced order.
    pub functionals: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_checks: Option<OracleJson>,
}

pub fn homology_json(hp: &HomologyPoset, oracle: Option<OracleJson>) -> HomologyJson {
    HomologyJson {
        kind: "homology-poset",
        top_cells: hp.top_cells(),
        dim: hp.dim(),
        basis: bit_list(hp.basis()),
        order_trivial: hp.nontrivial_relation().is_none(),
        functionals: bit_list(hp.poset().functionals().unwrap_or(&[])),
        oracle_checks: oracle,
    }
}

#[derive(Serialize)]
pub struct ClassJson {
    pub coeffs: String,
    pub cycle: String,
}

#[derive(Serialize)]
pub struct ClassListJson {
    pub kind: &'static str,
    pub dim: usize,
    pub count: usize,
    pub classes: Vec<ClassJson>,
    /// Geometric and order-theoretic recognition agreed on every class.
    pub geometric_matches_order: bool,
}

#[derive(Serialize)]
pub struct CircleJson {
    pub kind: &'static str,
    pub class: String,
    pub circle: String,
}

#[derive(Serialize)]
pub struct ScanJson {
    pub kind: &'static str,
    pub seed: u64,
    pub requested: usize,
    pub min_dim: usize,
    pub graphs_scanned: usize,
    pub witnesses_found: usize,
    pub counterexamples: usize,
}

#[derive(Serialize)]
pub struct ComplexCheckJson {
    pub kind: &'static str,
    pub top_degree: usize,
    pub cells: Vec<usize>,
    pub boundary_square_zero: bool,
    pub homology_dim: usize,
}

#[derive(Serialize)]
pub struct RealizeJson {
    pub kind: &'static str,
    pub degree: usize,
    pub top_cells: usize,
    pub relation_cells: usize,
    pub functionals: Vec<String>,
    /// Poset coordinates to homology coefficients, as matrix rows.
    pub isomorphism: Vec<String>,
    pub verified: bool,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports serialize");
    out.push('\n');
    out
}
