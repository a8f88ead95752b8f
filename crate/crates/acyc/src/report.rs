//! Structured reports, their provenance block and the text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::formats::InputDigest;

/// An integer that prints as a JSON number when it fits in `u64`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Integer {
    Small(u64),
    Big(String),
}

impl Integer {
    pub fn from_decimal(s: String) -> Self {
        s.parse().map(Integer::Small).unwrap_or(Integer::Big(s))
    }
}

impl std::fmt::Display for Integer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Integer::Small(n) => write!(f, "{n}"),
            Integer::Big(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<Integer>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyPayload {
    pub ring: String,
    pub reduced: bool,
    pub vertices: usize,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub acyclic: bool,
    pub degrees: Vec<DegreeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub element: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subgroup: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub component: Option<usize>,
    pub chi: i64,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicRecord {
    pub element: String,
    pub order: usize,
    pub chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub subgroup: String,
    pub subgroup_order: usize,
    pub component: usize,
    pub vertices: usize,
    pub chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictPayload {
    pub verdict: String,
    pub witness: Option<Witness>,
    pub group_order: usize,
    pub scope: String,
    pub regularized_f_vector: Vec<usize>,
    pub cyclic: Vec<CyclicRecord>,
    pub table: Vec<TableRow>,
    /// Whether the component-indexed Euler characteristic vector vanishes
    /// away from the trivial subgroup.
    pub wall_vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub component: usize,
    pub vertices: Vec<String>,
    pub f_vector: Vec<usize>,
    pub chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub subgroup: String,
    pub order: usize,
    pub total_chi: i64,
    pub components: Vec<ComponentRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub element: String,
    pub order: usize,
    pub lefschetz: i64,
    pub fixed_chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedSetsPayload {
    pub group_order: usize,
    pub scope: String,
    pub regularized_f_vector: Vec<usize>,
    pub subgroups: Vec<SubgroupRecord>,
    pub elements: Vec<ElementRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub simplex: String,
    pub dim: usize,
    pub support: usize,
    pub copies: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicConstructionPayload {
    pub input_vertices: usize,
    pub subdivided: bool,
    pub mirror_count: usize,
    pub copy_count: u64,
    pub f_vector: Vec<usize>,
    pub dimension: Option<usize>,
    pub chi_by_formula: i64,
    pub chi_direct: i64,
    pub pseudomanifold: bool,
    pub support_census: Vec<CensusRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimLine {
    pub claim: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BbPayload {
    pub flag: bool,
    pub reduced_homology: Vec<DegreeRecord>,
    pub acyclic_z: bool,
    pub acyclic_q: bool,
    pub asserted_simply_connected: bool,
    pub lines: Vec<ClaimLine>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SalvettiPayload {
    pub ring: String,
    pub generators: usize,
    pub f_vector: Vec<usize>,
    pub degrees: Vec<DegreeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub label: String,
    pub printed: bool,
    pub augmentation_vanishes: bool,
    pub composite_vanishes: bool,
    pub tensor_homology: [usize; 3],
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionRecord {
    pub n: u32,
    pub selected: Option<String>,
    pub printed_passes: bool,
    pub left_inverse: bool,
    pub candidates: Vec<CandidateRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionPayload {
    pub orders: Vec<ResolutionRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectRecord {
    pub subgroup: String,
    pub order: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCategoryPayload {
    pub group_order: usize,
    pub objects: Vec<ObjectRecord>,
    /// `hom_counts[h][k]` = |Hom(G/H, G/K)|.
    pub hom_counts: Vec<Vec<usize>>,
    pub axioms_hold: bool,
    pub morphisms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Homology(HomologyPayload),
    CheckFh(VerdictPayload),
    FixedSets(FixedSetsPayload),
    BasicConstruction(BasicConstructionPayload),
    BbReport(BbPayload),
    Salvetti(SalvettiPayload),
    VerifyResolution(ResolutionPayload),
    OrbitCategory(OrbitCategoryPayload),
}

/// The flags a report was computed with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings {
    pub ring: String,
    pub reduced: bool,
    pub all_subgroups: bool,
    pub max_group_order: usize,
    pub max_cells: u64,
    pub assert_simply_connected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub inputs: Vec<InputDigest>,
    /// Excluded from the determinism hash.
    pub elapsed_us: u64,
    /// SHA-256 of everything in the report except timing.
    pub determinism_hash: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub settings: Settings,
    pub result: Payload,
    pub provenance: Provenance,
}

#[derive(Serialize)]
struct Hashed<'a> {
    command: &'a str,
    settings: &'a Settings,
    result: &'a Payload,
    version: &'a str,
    inputs: &'a [InputDigest],
}

impl Report {
    pub fn new(command: &str, settings: Settings, result: Payload, inputs: Vec<InputDigest>, elapsed_us: u64) -> Self {
        let mut r = Report {
            command: command.into(),
            settings,
            result,
            provenance: Provenance {
                version: env!("CARGO_PKG_VERSION").into(),
                inputs,
                elapsed_us,
                determinism_hash: String::new(),
            },
        };
        r.provenance.determinism_hash = r.content_hash();
        r
    }

    pub fn content_hash(&self) -> String {
        let h = Hashed {
            command: &self.command,
            settings: &self.settings,
            result: &self.result,
            version: &self.provenance.version,
            inputs: &self.provenance.inputs,
        };
        hex::encode(Sha256::digest(serde_json::to_vec(&h).expect("serializable")))
    }

    pub fn to_json(&self) -> String {
        crate::formats::to_pretty(self)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render(&mut out, &self.result);
        let _ = writeln!(
            out,
            "({} {}, {:.3} s, hash {})",
            self.command,
            self.provenance.version,
            self.provenance.elapsed_us as f64 / 1e6,
            &self.provenance.determinism_hash[..12]
        );
        out
    }
}

fn group_text(d: &DegreeRecord, ring: &str) -> String {
    let mut parts = Vec::new();
    match d.betti {
        0 => {}
        1 => parts.push(ring.to_string()),
        b => parts.push(format!("{ring}^{b}")),
    }
    parts.extend(d.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn degrees_text(out: &mut String, degrees: &[DegreeRecord], ring: &str, prefix: &str) {
    for d in degrees {
        let _ = writeln!(out, "  {prefix}{}: {}", d.degree, group_text(d, ring));
    }
}

fn render(out: &mut String, p: &Payload) {
    match p {
        Payload::Homology(h) => {
            let h_name = if h.reduced { "reduced H" } else { "H" };
            let _ = writeln!(out, "{} vertices, f-vector {:?}, Euler characteristic {}", h.vertices, h.f_vector, h.euler_characteristic);
            let _ = writeln!(out, "{h_name} with {} coefficients:", h.ring);
            degrees_text(out, &h.degrees, &h.ring, "H_");
            let _ = writeln!(out, "acyclic over {}: {}", h.ring, h.acyclic);
        }
        Payload::CheckFh(v) => {
            let _ = writeln!(out, "verdict: {}", v.verdict);
            if let Some(w) = &v.witness {
                let _ = writeln!(out, "witness: {}", w.description);
            }
            let _ = writeln!(out, "group order {}, subgroups: {}, regularized f-vector {:?}", v.group_order, v.scope, v.regularized_f_vector);
            let _ = writeln!(out, "{:<24} {:>5} {:>9} {:>8} {:>5}", "subgroup", "order", "component", "vertices", "chi");
            for r in &v.table {
                let _ = writeln!(out, "{:<24} {:>5} {:>9} {:>8} {:>5}", r.subgroup, r.subgroup_order, r.component, r.vertices, r.chi);
            }
        }
        Payload::FixedSets(f) => {
            let _ = writeln!(out, "group order {}, subgroups: {}, regularized f-vector {:?}", f.group_order, f.scope, f.regularized_f_vector);
            for s in &f.subgroups {
                let _ = writeln!(out, "{} (order {}): {} component(s), total chi {}", s.subgroup, s.order, s.components.len(), s.total_chi);
                for c in &s.components {
                    let _ = writeln!(out, "  component {}: f-vector {:?}, chi {}", c.component, c.f_vector, c.chi);
                }
            }
            let _ = writeln!(out, "{:<24} {:>5} {:>9} {:>9}", "element", "order", "lefschetz", "fixed chi");
            for e in &f.elements {
                let _ = writeln!(out, "{:<24} {:>5} {:>9} {:>9}", e.element, e.order, e.lefschetz, e.fixed_chi);
            }
        }
        Payload::BasicConstruction(b) => {
            let _ = writeln!(
                out,
                "{} mirrors, {} copies{}",
                b.mirror_count,
                b.copy_count,
                if b.subdivided { " (input subdivided)" } else { "" }
            );
            let _ = writeln!(out, "glued complex: f-vector {:?}, dimension {:?}", b.f_vector, b.dimension);
            let _ = writeln!(out, "chi by support count: {}", b.chi_by_formula);
            let _ = writeln!(out, "chi direct:           {}", b.chi_direct);
            let _ = writeln!(out, "closed pseudomanifold: {}", b.pseudomanifold);
        }
        Payload::BbReport(b) => {
            let _ = writeln!(out, "flag: {}", b.flag);
            degrees_text(out, &b.reduced_homology, "Z", "reduced H_");
            for l in &b.lines {
                let _ = writeln!(out, "[{}] {}", l.claim, l.text);
            }
            for w in &b.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
        }
        Payload::Salvetti(s) => {
            let _ = writeln!(out, "{} generators, flag complex f-vector {:?}", s.generators, s.f_vector);
            degrees_text(out, &s.degrees, &s.ring, "H_");
        }
        Payload::VerifyResolution(r) => {
            for o in &r.orders {
                let _ = writeln!(
                    out,
                    "n = {}: selected {}, printed formulas pass: {}, d2 split injective: {}",
                    o.n,
                    o.selected.as_deref().unwrap_or("none"),
                    o.printed_passes,
                    o.left_inverse
                );
                let _ = writeln!(out, "  {:<72} {:>7} {:>5} {:>5} {:>9} {:>6}", "candidate", "printed", "e.d1", "d1.d2", "Q (x) F", "passes");
                for c in &o.candidates {
                    let _ = writeln!(
                        out,
                        "  {:<72} {:>7} {:>5} {:>5} {:>9} {:>6}",
                        c.label,
                        c.printed,
                        c.augmentation_vanishes,
                        c.composite_vanishes,
                        format!("{:?}", c.tensor_homology),
                        c.passes
                    );
                }
            }
        }
        Payload::OrbitCategory(o) => {
            let _ = writeln!(out, "group order {}, {} objects, {} morphisms, axioms hold: {}", o.group_order, o.objects.len(), o.morphisms, o.axioms_hold);
            for (h, row) in o.objects.iter().zip(&o.hom_counts) {
                let _ = writeln!(out, "  G/{:<20} {:?}", h.subgroup, row);
            }
        }
    }
}
