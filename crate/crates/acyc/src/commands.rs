//! The command implementations behind the CLI.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use acyc_core::action::{
    component_rows, fixed_vertex_subcomplex, regularize, subgroup_generated, subgroups_in_scope, ActionError, FixedSetRow, FixedSetTable,
    FiniteGroup, GroupAction, Subgroup, SubgroupScope, DEFAULT_MAX_GROUP_ORDER,
};
use acyc_core::constructions::{
    basic_construction, bb_report, salvetti_homology, BbClaim, ConstructionError, DEFAULT_MAX_CELLS,
};
use acyc_core::homology::{homology, HomologyBasis, HomologyProfile};
use acyc_core::orbit::{decide, orbit_category, wall_vector, Verdict};
use acyc_core::resolution::{
    candidate_differentials, check_candidate, report_from_checks, ResolutionError, MAX_TORSION_ORDER,
};
use acyc_core::simplicial::{euler_characteristic, is_pseudomanifold};
use acyc_core::Ring;
use rayon::prelude::*;

use crate::formats::{resolve, InputError, InputSet};
use crate::report::*;

/// Exit status of a run, part of the stable interface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    InputError = 1,
    Internal = 2,
    Obstructed = 3,
    Indeterminate = 4,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Invalid(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Input(_) | CliError::Invalid(_) => Status::InputError,
            CliError::Internal(_) => Status::Internal,
        }
    }
}

impl From<ActionError> for CliError {
    fn from(e: ActionError) -> Self {
        match e {
            ActionError::RegularizationFailed => CliError::Internal(e.to_string()),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<ResolutionError> for CliError {
    fn from(e: ResolutionError) -> Self {
        match e {
            ResolutionError::OrderOutOfRange(_) => CliError::Invalid(e.to_string()),
            e => CliError::Internal(e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Homology { input: String },
    CheckFh { input: String },
    FixedSets { input: String },
    BasicConstruction { input: String },
    BbReport { input: String },
    Salvetti { input: String },
    VerifyResolution { orders: Vec<u32> },
    OrbitCategory { input: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Homology { .. } => "homology",
            Command::CheckFh { .. } => "check-fh",
            Command::FixedSets { .. } => "fixed-sets",
            Command::BasicConstruction { .. } => "basic-construction",
            Command::BbReport { .. } => "bb-report",
            Command::Salvetti { .. } => "salvetti",
            Command::VerifyResolution { .. } => "verify-resolution",
            Command::OrbitCategory { .. } => "orbit-category",
        }
    }
}

/// One invocation: a command plus every flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub ring: Ring,
    pub reduced: bool,
    pub scope: SubgroupScope,
    pub max_group_order: usize,
    pub max_cells: u64,
    pub assert_simply_connected: bool,
    pub json: bool,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            ring: Ring::Z,
            reduced: false,
            scope: SubgroupScope::Conjugacy,
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
            max_cells: DEFAULT_MAX_CELLS,
            assert_simply_connected: false,
            json: false,
            jobs: None,
        }
    }

    fn settings(&self) -> Settings {
        Settings {
            ring: self.ring.to_string(),
            reduced: self.reduced,
            all_subgroups: self.scope == SubgroupScope::All,
            max_group_order: self.max_group_order,
            max_cells: self.max_cells,
            assert_simply_connected: self.assert_simply_connected,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub status: Status,
}

/// Runs a command on a dedicated thread pool of `config.jobs` workers.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    if config.max_group_order == 0 || config.max_cells == 0 || config.jobs == Some(0) {
        return Err(CliError::Invalid("bounds must be positive".into()));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| CliError::Internal(e.to_string()))?;
    pool.install(|| run_here(config))
}

fn run_here(config: &RunConfig) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut inputs = InputSet::new(config.max_group_order);
    let (payload, status) = match &config.command {
        Command::Homology { input } => (Payload::Homology(cmd_homology(&mut inputs, input, config)?), Status::Success),
        Command::CheckFh { input } => {
            let v = cmd_check_fh(&mut inputs, input, config)?;
            let status = match v.verdict.as_str() {
                "obstructed" => Status::Obstructed,
                "indeterminate" => Status::Indeterminate,
                _ => Status::Success,
            };
            (Payload::CheckFh(v), status)
        }
        Command::FixedSets { input } => (Payload::FixedSets(cmd_fixed_sets(&mut inputs, input, config)?), Status::Success),
        Command::BasicConstruction { input } => (
            Payload::BasicConstruction(cmd_basic_construction(&mut inputs, input, config)?),
            Status::Success,
        ),
        Command::BbReport { input } => (Payload::BbReport(cmd_bb_report(&mut inputs, input, config)?), Status::Success),
        Command::Salvetti { input } => (Payload::Salvetti(cmd_salvetti(&mut inputs, input, config)?), Status::Success),
        Command::VerifyResolution { orders } => (Payload::VerifyResolution(cmd_verify_resolution(orders)?), Status::Success),
        Command::OrbitCategory { input } => (Payload::OrbitCategory(cmd_orbit_category(&mut inputs, input)?), Status::Success),
    };
    let elapsed = start.elapsed().as_micros() as u64;
    let report = Report::new(config.command.name(), config.settings(), payload, inputs.into_digests(), elapsed);
    Ok(Outcome { report, status })
}

fn path(input: &str) -> PathBuf {
    resolve(input)
}

pub fn degree_records(h: &HomologyProfile, ring: Ring) -> Vec<DegreeRecord> {
    h.degrees
        .iter()
        .map(|d| DegreeRecord {
            degree: d.degree,
            betti: d.betti,
            torsion: match ring {
                Ring::Z => d.torsion.iter().map(|t| Integer::from_decimal(t.to_string())).collect(),
                Ring::Q => Vec::new(),
            },
        })
        .collect()
}

fn cmd_homology(inputs: &mut InputSet, input: &str, config: &RunConfig) -> Result<HomologyPayload, CliError> {
    let c = inputs.complex(&path(input))?;
    let h = homology(&c, config.reduced);
    let chi = euler_characteristic(&c);
    let from_homology = h.euler_characteristic() + if config.reduced && !c.is_empty() { 1 } else { 0 };
    if from_homology != chi {
        return Err(CliError::Internal(format!(
            "alternating Betti sum {from_homology} differs from alternating cell count {chi}"
        )));
    }
    Ok(HomologyPayload {
        ring: config.ring.to_string(),
        reduced: config.reduced,
        vertices: c.vertex_count(),
        f_vector: c.f_vector(),
        euler_characteristic: chi,
        acyclic: homology(&c, true).vanishes(config.ring),
        degrees: degree_records(&h, config.ring),
    })
}

/// Fixed-set components of every subgroup in scope, one subgroup per task.
pub fn parallel_table(a: &GroupAction, scope: SubgroupScope) -> FixedSetTable {
    if a.complex().is_empty() {
        return FixedSetTable {
            subgroups: Vec::new(),
            rows: Vec::new(),
        };
    }
    let subgroups = subgroups_in_scope(a.group(), scope, false);
    let rows: Vec<FixedSetRow> = subgroups
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, h)| component_rows(a, i, h))
        .collect();
    FixedSetTable { subgroups, rows }
}

/// χ of the fixed set of each element's cyclic subgroup, one task per
/// distinct cyclic subgroup.
pub fn parallel_cyclic_chis(a: &GroupAction) -> Vec<i64> {
    let g = a.group();
    let cyclic: Vec<Subgroup> = (0..g.order()).map(|x| subgroup_generated(g, &[x])).collect();
    let mut index: BTreeMap<&[usize], usize> = BTreeMap::new();
    let mut reps: Vec<&Subgroup> = Vec::new();
    for h in &cyclic {
        index.entry(h.elements()).or_insert_with(|| {
            reps.push(h);
            reps.len() - 1
        });
    }
    let chis: Vec<i64> = reps
        .par_iter()
        .map(|h| euler_characteristic(&fixed_vertex_subcomplex(a, h)))
        .collect();
    cyclic.iter().map(|h| chis[index[h.elements()]]).collect()
}

fn scope_name(s: SubgroupScope) -> String {
    match s {
        SubgroupScope::Conjugacy => "conjugacy classes".into(),
        SubgroupScope::All => "all".into(),
    }
}

fn cmd_check_fh(inputs: &mut InputSet, input: &str, config: &RunConfig) -> Result<VerdictPayload, CliError> {
    let a = regularize(&inputs.action(&path(input))?)?;
    let table = parallel_table(&a, config.scope);
    let cyclic_chi = parallel_cyclic_chis(&a);
    let verdict = decide(&cyclic_chi, &table);
    let wall = wall_vector(&a)?;
    let witness = match &verdict {
        Verdict::Obstructed { element, chi } => Some(Witness {
            element: Some(a.element_name(*element)),
            subgroup: Some(a.subgroup_name(&subgroup_generated(a.group(), &[*element]))),
            component: None,
            chi: *chi,
            description: format!(
                "the fixed set of {} has Euler characteristic {chi}",
                a.element_name(*element)
            ),
        }),
        Verdict::SufficientHolds => None,
        Verdict::Indeterminate { row, chi } => {
            let r = &table.rows[*row];
            let name = a.subgroup_name(&table.subgroups[r.class]);
            Some(Witness {
                element: None,
                subgroup: Some(name.clone()),
                component: Some(r.component),
                chi: *chi,
                description: format!("component {} of the fixed set of {name} has Euler characteristic {chi}", r.component),
            })
        }
    };
    if matches!(verdict, Verdict::SufficientHolds) && !wall.vanishes_at_nontrivial() {
        return Err(CliError::Internal("sufficient verdict with a nonvanishing component vector".into()));
    }
    Ok(VerdictPayload {
        verdict: verdict.keyword().into(),
        witness,
        group_order: a.group().order(),
        scope: scope_name(config.scope),
        regularized_f_vector: a.complex().f_vector(),
        cyclic: (1..a.group().order())
            .map(|g| CyclicRecord {
                element: a.element_name(g),
                order: a.group().element_order(g),
                chi: cyclic_chi[g],
            })
            .collect(),
        table: table
            .rows
            .iter()
            .map(|r| TableRow {
                subgroup: a.subgroup_name(&table.subgroups[r.class]),
                subgroup_order: table.subgroups[r.class].order(),
                component: r.component,
                vertices: r.complex.vertex_count(),
                chi: r.chi,
            })
            .collect(),
        wall_vanishes: wall.vanishes_at_nontrivial(),
    })
}

fn cmd_fixed_sets(inputs: &mut InputSet, input: &str, config: &RunConfig) -> Result<FixedSetsPayload, CliError> {
    let a = regularize(&inputs.action(&path(input))?)?;
    let table = parallel_table(&a, config.scope);
    let totals = table.totals();
    let cyclic_chi = parallel_cyclic_chis(&a);
    let basis = HomologyBasis::new(a.complex());
    let lefschetz: Vec<i64> = (0..a.group().order())
        .into_par_iter()
        .map(|g| basis.lefschetz_number(&a.element_map(g)))
        .collect();
    if let Some(g) = (0..a.group().order()).find(|g| lefschetz[*g] != cyclic_chi[*g]) {
        return Err(CliError::Internal(format!(
            "Lefschetz number {} of {} differs from fixed-set Euler characteristic {}",
            lefschetz[g],
            a.element_name(g),
            cyclic_chi[g]
        )));
    }
    let subgroups = table
        .subgroups
        .iter()
        .enumerate()
        .map(|(i, h)| SubgroupRecord {
            subgroup: a.subgroup_name(h),
            order: h.order(),
            total_chi: totals[i],
            components: table
                .rows
                .iter()
                .filter(|r| r.class == i)
                .map(|r| ComponentRecord {
                    component: r.component,
                    vertices: r.complex.labels().to_vec(),
                    f_vector: r.complex.f_vector(),
                    chi: r.chi,
                })
                .collect(),
        })
        .collect();
    Ok(FixedSetsPayload {
        group_order: a.group().order(),
        scope: scope_name(config.scope),
        regularized_f_vector: a.complex().f_vector(),
        subgroups,
        elements: (0..a.group().order())
            .map(|g| ElementRecord {
                element: a.element_name(g),
                order: a.group().element_order(g),
                lefschetz: lefschetz[g],
                fixed_chi: cyclic_chi[g],
            })
            .collect(),
    })
}

fn cmd_basic_construction(
    inputs: &mut InputSet,
    input: &str,
    config: &RunConfig,
) -> Result<BasicConstructionPayload, CliError> {
    let m = inputs.mirrored(&path(input))?;
    let r = basic_construction(&m, config.max_cells)?;
    if r.chi_by_formula != r.chi_direct {
        return Err(CliError::Internal(format!(
            "support count gives {} but the glued complex has Euler characteristic {}",
            r.chi_by_formula, r.chi_direct
        )));
    }
    let dimension = r.complex.dimension();
    Ok(BasicConstructionPayload {
        input_vertices: m.input().vertex_count(),
        subdivided: m.is_subdivided(),
        mirror_count: m.mirror_count(),
        copy_count: r.copy_count,
        f_vector: r.complex.f_vector(),
        dimension,
        chi_by_formula: r.chi_by_formula,
        chi_direct: r.chi_direct,
        pseudomanifold: dimension.is_some_and(|d| is_pseudomanifold(&r.complex, d)),
        support_census: r
            .support_census
            .iter()
            .map(|e| CensusRecord {
                simplex: e.simplex.clone(),
                dim: e.dim,
                support: e.support,
                copies: e.copies,
            })
            .collect(),
    })
}

fn claim_name(c: BbClaim) -> String {
    match c {
        BbClaim::Fh(r) => format!("FH({r})"),
        BbClaim::FinitelyPresented => "finitely presented".into(),
        BbClaim::NotFp(r) => format!("not FP({r})"),
    }
}

fn cmd_bb_report(inputs: &mut InputSet, input: &str, config: &RunConfig) -> Result<BbPayload, CliError> {
    let l = inputs.complex(&path(input))?;
    let r = bb_report(&l, config.assert_simply_connected)?;
    Ok(BbPayload {
        flag: r.flag,
        reduced_homology: degree_records(&r.homology_z, Ring::Z),
        acyclic_z: r.acyclic_z,
        acyclic_q: r.acyclic_q,
        asserted_simply_connected: r.asserted_simply_connected,
        lines: r
            .lines
            .iter()
            .map(|l| ClaimLine {
                claim: claim_name(l.claim),
                text: l.text.clone(),
            })
            .collect(),
        warnings: r.warnings,
    })
}

fn cmd_salvetti(inputs: &mut InputSet, input: &str, config: &RunConfig) -> Result<SalvettiPayload, CliError> {
    let l = inputs.complex(&path(input))?;
    let h = salvetti_homology(&l)?;
    Ok(SalvettiPayload {
        ring: config.ring.to_string(),
        generators: l.vertex_count(),
        f_vector: l.f_vector(),
        degrees: degree_records(&h, config.ring),
    })
}

/// Verifies each order, candidates checked in parallel.
fn cmd_verify_resolution(orders: &[u32]) -> Result<ResolutionPayload, CliError> {
    if orders.is_empty() {
        return Err(CliError::Invalid("no torsion order given".into()));
    }
    if let Some(n) = orders.iter().find(|n| !(1..=MAX_TORSION_ORDER).contains(*n)) {
        return Err(ResolutionError::OrderOutOfRange(*n).into());
    }
    let records = orders
        .par_iter()
        .map(|&n| {
            let candidates = candidate_differentials(n);
            let checks = candidates.par_iter().map(check_candidate).collect();
            let r = report_from_checks(n, &candidates, checks)?;
            if !r.left_inverse {
                return Err(CliError::Internal(format!("selected d2 for n = {n} has no left inverse")));
            }
            Ok(ResolutionRecord {
                n,
                selected: r.selected().map(|c| c.label.clone()),
                printed_passes: r.printed_passes,
                left_inverse: r.left_inverse,
                candidates: r
                    .candidates
                    .iter()
                    .map(|c| CandidateRecord {
                        label: c.label.clone(),
                        printed: c.printed,
                        augmentation_vanishes: c.augmentation_vanishes,
                        composite_vanishes: c.composite_vanishes,
                        tensor_homology: c.tensor_homology,
                        passes: c.passes,
                    })
                    .collect(),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(ResolutionPayload { orders: records })
}

/// Word in generator names, `e` for the identity.
pub fn element_word(g: &FiniteGroup, names: &[String], x: usize) -> String {
    let w = g.word(x);
    if w.is_empty() {
        return "e".into();
    }
    w.iter().map(|i| names[*i].as_str()).collect::<Vec<_>>().join("*")
}

pub fn subgroup_word(g: &FiniteGroup, names: &[String], h: &Subgroup) -> String {
    if h.is_trivial() {
        return "<e>".into();
    }
    let gens: Vec<String> = h.generators().iter().map(|x| element_word(g, names, *x)).collect();
    format!("<{}>", gens.join(","))
}

fn cmd_orbit_category(inputs: &mut InputSet, input: &str) -> Result<OrbitCategoryPayload, CliError> {
    let ng = inputs.group(&path(input))?;
    let cat = orbit_category(&ng.group);
    let axioms_hold = cat.check_axioms();
    if !axioms_hold {
        return Err(CliError::Internal("orbit category fails the category axioms".into()));
    }
    let n = cat.object_count();
    let hom_counts: Vec<Vec<usize>> = (0..n).map(|h| (0..n).map(|k| cat.hom(h, k).len()).collect()).collect();
    Ok(OrbitCategoryPayload {
        group_order: ng.group.order(),
        objects: cat
            .objects()
            .iter()
            .map(|h| ObjectRecord {
                subgroup: subgroup_word(&ng.group, &ng.generator_names, h),
                order: h.order(),
                index: ng.group.order() / h.order(),
            })
            .collect(),
        morphisms: hom_counts.iter().flatten().sum(),
        hom_counts,
        axioms_hold,
    })
}
