//! Output documents for the `liebranch` command line tool, and the commands
//! that build them.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use liebranch_core::branching::{branch_with_capacity, BranchTarget};
use liebranch_core::fixture::ProjectionFixture;
use liebranch_core::golden::{run_all, Fixtures};
use liebranch_core::lie_core::{extended_diagram, Series};
use liebranch_core::subalgebra::{
    centralizer, delete_node, infer_kind, CentralizerKind, EmbeddingKind,
};
use liebranch_core::torus::{center_generators, center_of, eigenvalue_form};
use liebranch_core::weyl_weights::weight_system_with_capacity;
use liebranch_core::{Error, FiniteAbelianGroup, SimpleAlgebra, Weight};

pub const FORMAT_VERSION: u32 = 1;
pub const DEFAULT_MAX_WEIGHTS: usize = 2_000_000;

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;
pub const EXIT_FIXTURE: i32 = 4;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ParseAlgebra(_) | Error::ParseWeight(_) | Error::RankOutOfBounds { .. } => {
            EXIT_USAGE
        }
        Error::Fixture(_) => EXIT_FIXTURE,
        _ => EXIT_COMPUTATION,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub format_version: u32,
    pub command: Vec<String>,
    pub algebra: Option<AlgebraInfo>,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraInfo {
    pub name: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Marks and comarks, node 0 first.
    pub marks: Vec<i64>,
    pub comarks: Vec<i64>,
    pub det: i64,
    pub extended_adjacency: Vec<String>,
}

impl AlgebraInfo {
    pub fn of(alg: &SimpleAlgebra) -> Self {
        AlgebraInfo {
            name: alg.name(),
            rank: alg.rank(),
            cartan: alg.cartan().to_vec(),
            marks: alg.marks().to_vec(),
            comarks: alg.comarks().to_vec(),
            det: alg.det_cartan(),
            extended_adjacency: extended_diagram(alg).adjacency_lines(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub structure: String,
    pub invariant_factors: Vec<u64>,
    /// Generators in α̂-coordinates modulo the coroot lattice.
    pub generators: Vec<Vec<String>>,
}

impl From<&FiniteAbelianGroup> for GroupInfo {
    fn from(g: &FiniteAbelianGroup) -> Self {
        GroupInfo {
            structure: g.to_string(),
            invariant_factors: g.invariant_factors.clone(),
            generators: g
                .generators
                .iter()
                .map(|t| t.coords().iter().map(|c| c.to_string()).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeForm {
    pub node: usize,
    pub form: String,
    pub coefficients: Vec<i64>,
    pub modulus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterPayload {
    pub group: GroupInfo,
    pub forms: Vec<NodeForm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorFormInfo {
    pub factor: usize,
    pub factor_type: String,
    pub node: usize,
    pub form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerPayload {
    pub node: usize,
    pub mark: i64,
    pub kind: String,
    pub subalgebra: String,
    pub projection: Vec<Vec<i64>>,
    pub h1: Option<Vec<i64>>,
    pub structure: String,
    pub finite_part: GroupInfo,
    pub has_u1: bool,
    pub relative_form: String,
    /// The form as printed in a projection fixture, when one was given.
    pub printed_relative_form: Option<String>,
    pub quotient_by_center: Option<GroupInfo>,
    pub u1_quotient: Option<GroupInfo>,
    pub center_in_u1: Option<GroupInfo>,
    pub ambient_center: GroupInfo,
    pub sub_center: GroupInfo,
    pub sub_center_forms: Vec<FactorFormInfo>,
    pub sigma_coweight: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub weight: Weight,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsPayload {
    pub highest: Weight,
    pub dimension: u64,
    pub weights: Vec<WeightRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandInfo {
    pub text: String,
    pub sub_highest: Weight,
    pub label: i64,
    pub multiplicity: u64,
    pub dimension: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionRow {
    pub weight: Weight,
    pub multiplicity: u64,
    pub label: i64,
    pub image: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingPayload {
    pub rule: String,
    pub highest: Weight,
    pub dimension: u64,
    pub subalgebra: String,
    pub label_modulus: Option<i64>,
    pub summands: Vec<SummandInfo>,
    pub projection: Vec<ProjectionRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Payload {
    Info { notes: Vec<String> },
    Center(CenterPayload),
    Centralizer(Box<CentralizerPayload>),
    Weights(WeightsPayload),
    Branching(BranchingPayload),
    Verify(VerifyPayload),
}

fn document(command: &[String], alg: Option<&SimpleAlgebra>, payload: Payload) -> OutputDocument {
    OutputDocument {
        format_version: FORMAT_VERSION,
        command: command.to_vec(),
        algebra: alg.map(AlgebraInfo::of),
        payload,
    }
}

pub fn cmd_info(command: &[String], alg: &SimpleAlgebra) -> OutputDocument {
    let mut notes = Vec::new();
    if alg.rank() == 2 && matches!(alg.series(), Series::B | Series::C) {
        notes.push("B2 and C2 are isomorphic; their nodes 1 and 2 are interchanged".to_string());
    }
    document(command, Some(alg), Payload::Info { notes })
}

pub fn cmd_center(command: &[String], alg: &SimpleAlgebra) -> OutputDocument {
    let forms = center_generators(alg)
        .into_iter()
        .map(|(node, t)| {
            let f = eigenvalue_form(&t);
            NodeForm {
                node,
                form: f.to_string(),
                coefficients: f.coefficients.clone(),
                modulus: f.modulus,
            }
        })
        .collect();
    let payload = CenterPayload {
        group: (&center_of(alg)).into(),
        forms,
    };
    document(command, Some(alg), Payload::Center(payload))
}

fn load_projection(path: &Path) -> liebranch_core::Result<ProjectionFixture> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
    ProjectionFixture::parse(&text)
}

fn check_fixture_matches(
    alg: &SimpleAlgebra,
    node: usize,
    f: &ProjectionFixture,
) -> liebranch_core::Result<()> {
    if f.ambient != *alg || f.node != node {
        return Err(Error::Fixture(format!(
            "projection is for {} node {}, not {} node {node}",
            f.ambient.name(),
            f.node,
            alg.name()
        )));
    }
    Ok(())
}

fn resolve(
    alg: &SimpleAlgebra,
    node: usize,
    kind: Option<EmbeddingKind>,
    projection: Option<&Path>,
) -> liebranch_core::Result<(liebranch_core::Embedding, Option<ProjectionFixture>)> {
    match projection {
        Some(p) => {
            let f = load_projection(p)?;
            check_fixture_matches(alg, node, &f)?;
            Ok((f.embedding()?, Some(f)))
        }
        None => {
            let kind = match kind {
                Some(k) => k,
                None => infer_kind(alg, node)?,
            };
            Ok((delete_node(alg, node, kind)?.1, None))
        }
    }
}

pub fn cmd_centralizer(
    command: &[String],
    alg: &SimpleAlgebra,
    node: usize,
    kind: Option<EmbeddingKind>,
    projection: Option<&Path>,
) -> liebranch_core::Result<OutputDocument> {
    let (emb, fixture) = resolve(alg, node, kind, projection)?;
    let d = centralizer(alg, node, &emb)?;
    let payload = CentralizerPayload {
        node,
        mark: d.mark,
        kind: match d.kind {
            CentralizerKind::Discrete => "discrete".into(),
            CentralizerKind::Continuous => "continuous".into(),
        },
        subalgebra: emb.sub().to_string(),
        projection: emb.coroot_rows().to_vec(),
        h1: emb.h1_row().map(<[i64]>::to_vec),
        structure: d.structure(),
        finite_part: (&d.finite_part).into(),
        has_u1: d.has_u1,
        relative_form: d.relative_form.to_string(),
        printed_relative_form: fixture
            .as_ref()
            .and_then(|f| f.get("relative").map(str::to_string)),
        quotient_by_center: d.quotient_by_center.as_ref().map(Into::into),
        u1_quotient: d.u1_quotient.as_ref().map(Into::into),
        center_in_u1: d.center_in_u1.as_ref().map(Into::into),
        ambient_center: (&d.ambient_center).into(),
        sub_center: (&d.sub_center).into(),
        sub_center_forms: d
            .sub_center_forms
            .iter()
            .map(|f| FactorFormInfo {
                factor: f.factor,
                factor_type: f.factor_type.to_string(),
                node: f.node,
                form: f.form.to_string(),
            })
            .collect(),
        sigma_coweight: d
            .sigma_coweight
            .as_ref()
            .map(|v| v.iter().map(|c| c.to_string()).collect()),
    };
    Ok(document(
        command,
        Some(alg),
        Payload::Centralizer(Box::new(payload)),
    ))
}

pub fn cmd_weights(
    command: &[String],
    alg: &SimpleAlgebra,
    highest: &Weight,
    max_weights: usize,
) -> liebranch_core::Result<OutputDocument> {
    let ws = weight_system_with_capacity(alg, highest, max_weights)?;
    let payload = WeightsPayload {
        highest: highest.clone(),
        dimension: ws.dimension(),
        weights: ws
            .entries()
            .iter()
            .map(|(w, m)| WeightRow {
                weight: w.clone(),
                multiplicity: *m,
            })
            .collect(),
    };
    Ok(document(command, Some(alg), Payload::Weights(payload)))
}

pub fn cmd_branch(
    command: &[String],
    alg: &SimpleAlgebra,
    node: usize,
    kind: Option<EmbeddingKind>,
    projection: Option<&Path>,
    highest: &Weight,
    max_weights: usize,
) -> liebranch_core::Result<OutputDocument> {
    let target = match projection {
        Some(_) => {
            let (emb, _) = resolve(alg, node, kind, projection)?;
            BranchTarget::Embedding {
                node,
                embedding: Box::new(emb),
            }
        }
        None => BranchTarget::Node { node, kind },
    };
    let r = branch_with_capacity(alg, &target, highest, max_weights)?;
    let payload = BranchingPayload {
        rule: r.to_string(),
        highest: r.ambient_highest.clone(),
        dimension: r.ambient_dimension,
        subalgebra: r.sub.to_string(),
        label_modulus: r.label_modulus,
        summands: r
            .summands
            .iter()
            .map(|s| SummandInfo {
                text: r.format_summand(s),
                sub_highest: s.sub_highest.clone(),
                label: s.label,
                multiplicity: s.multiplicity,
                dimension: s.dimension,
            })
            .collect(),
        projection: r
            .projection
            .iter()
            .map(|p| ProjectionRow {
                weight: p.weight.clone(),
                multiplicity: p.multiplicity,
                label: p.label,
                image: p.image.clone(),
            })
            .collect(),
    };
    Ok(document(command, Some(alg), Payload::Branching(payload)))
}

/// Runs the golden checks from `dir`, or from the embedded fixtures.
pub fn cmd_verify(
    command: &[String],
    dir: Option<&Path>,
    only: Option<&str>,
) -> liebranch_core::Result<OutputDocument> {
    let fx = match dir {
        Some(d) => Fixtures::load_dir(d)?,
        None => Fixtures::embedded(),
    };
    let checks: Vec<CheckResult> = run_all(&fx, only)?
        .into_iter()
        .map(|r| CheckResult {
            name: r.name,
            passed: r.passed,
            cases: r.cases,
            failures: r.failures,
        })
        .collect();
    let payload = VerifyPayload {
        passed: checks.iter().all(|c| c.passed),
        checks,
    };
    Ok(document(command, None, Payload::Verify(payload)))
}

fn matrix_lines(out: &mut String, m: &[Vec<i64>]) {
    for row in m {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(out, "  {}", cells.join(""));
    }
}

fn indexed(values: &[i64]) -> String {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{i}:{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn group_line(g: &GroupInfo) -> String {
    g.structure.clone()
}

/// Plain-text rendering; deterministic for a given document.
pub fn render_text(doc: &OutputDocument) -> String {
    let mut out = String::new();
    match &doc.payload {
        Payload::Info { notes } => {
            let a = doc.algebra.as_ref().expect("info carries an algebra");
            let _ = writeln!(out, "{} (rank {})", a.name, a.rank);
            let _ = writeln!(out, "Cartan matrix:");
            matrix_lines(&mut out, &a.cartan);
            let _ = writeln!(out, "marks: {}", indexed(&a.marks));
            let _ = writeln!(out, "comarks: {}", indexed(&a.comarks));
            let _ = writeln!(out, "det: {}", a.det);
            let _ = writeln!(out, "extended diagram:");
            for l in &a.extended_adjacency {
                let _ = writeln!(out, "  {l}");
            }
            for n in notes {
                let _ = writeln!(out, "note: {n}");
            }
        }
        Payload::Center(c) => {
            let generator = c
                .forms
                .iter()
                .find(|f| Some(&(f.modulus as u64)) == c.group.invariant_factors.last());
            match generator {
                None => {
                    let _ = writeln!(out, "trivial center");
                }
                Some(f) => {
                    let _ = writeln!(out, "{}; form: {}", c.group.structure, f.form);
                    for f in &c.forms {
                        let _ = writeln!(out, "  node {}: {}", f.node, f.form);
                    }
                }
            }
        }
        Payload::Centralizer(c) => {
            let _ = writeln!(out, "{}; relative: {}", c.structure, c.relative_form);
            if let Some(p) = &c.printed_relative_form {
                let _ = writeln!(out, "printed relative form: {p}");
            }
            let _ = writeln!(
                out,
                "node {} (mark {}), {} deletion, subalgebra {}",
                c.node, c.mark, c.kind, c.subalgebra
            );
            let _ = writeln!(out, "projection matrix:");
            matrix_lines(&mut out, &c.projection);
            if let Some(h) = &c.h1 {
                let cells: Vec<String> = h.iter().map(|x| format!("{x:>3}")).collect();
                let _ = writeln!(out, "  {}  (H_1)", cells.join(""));
            }
            let _ = writeln!(out, "center: {}", group_line(&c.ambient_center));
            let _ = writeln!(out, "subgroup center: {}", group_line(&c.sub_center));
            if let Some(g) = &c.quotient_by_center {
                let _ = writeln!(out, "C/Z: {}", group_line(g));
            }
            if let Some(g) = &c.u1_quotient {
                let _ = writeln!(out, "C/U_1: {}", group_line(g));
            }
            if let Some(g) = &c.center_in_u1 {
                let _ = writeln!(out, "Z ∩ U_1: {}", group_line(g));
            }
            if let Some(s) = &c.sigma_coweight {
                let _ = writeln!(out, "sigma(omega_{}): ({})", c.node, s.join(","));
            }
            for f in &c.sub_center_forms {
                let _ = writeln!(
                    out,
                    "factor {} {} node {}: {}",
                    f.factor, f.factor_type, f.node, f.form
                );
            }
        }
        Payload::Weights(w) => {
            let _ = writeln!(
                out,
                "{}: dimension {}, {} distinct weights",
                w.highest,
                w.dimension,
                w.weights.len()
            );
            for r in &w.weights {
                let _ = writeln!(out, "{}\t{}", r.weight, r.multiplicity);
            }
        }
        Payload::Branching(b) => {
            let _ = writeln!(out, "{}", b.rule);
            let _ = writeln!(out, "dimension {} into {}", b.dimension, b.subalgebra);
            for s in &b.summands {
                let _ = writeln!(out, "  {}\tdim {}", s.text, s.dimension);
            }
        }
        Payload::Verify(v) => {
            for c in &v.checks {
                let _ = writeln!(
                    out,
                    "{} {} ({} cases)",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.cases
                );
                for f in &c.failures {
                    let _ = writeln!(out, "  {f}");
                }
            }
            let _ = writeln!(out, "{}", if v.passed { "all checks passed" } else { "some checks failed" });
        }
    }
    out
}

pub fn render_json(doc: &OutputDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}
