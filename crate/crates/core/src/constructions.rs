//! Mirrors and the finite basic construction, Salvetti complex homology,
//! the Bestvina–Brady classification and equivariant joins.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::action::{group_closure, ActionError, Generator, GroupAction, Permutation, DEFAULT_MAX_GROUP_ORDER};
use crate::homology::{homology, homology_of, HomologyProfile, IntegerMatrix};
use crate::simplicial::{
    barycenter_label, barycentric_subdivision, barycentric_subdivision_with_origin, euler_characteristic,
    is_flag, join_with_embeddings, star, ComplexError, Simplex, SimplicialComplex, VertexId,
};
use crate::Ring;

pub const DEFAULT_MAX_CELLS: u64 = 10_000_000;

/// Mirrors are tracked in a 64-bit mask; in practice the cell bound bites
/// long before this.
pub const MAX_MIRRORS: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("complex is not flag: {0}")]
    NotFlag(String),
    #[error("complex is empty")]
    EmptyComplex,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("boundary simplex {0} has no counterpart in the space")]
    BoundaryNotEmbedded(String),
    #[error("construction needs {cells} cells, above the limit {limit}")]
    SizeBound { cells: u128, limit: u64 },
    #[error("{0} mirrors exceed the supported maximum")]
    TooManyMirrors(usize),
    #[error("groups do not match: {0}")]
    GroupMismatch(String),
    #[error(transparent)]
    Action(#[from] ActionError),
}

fn require_flag(l: &SimplicialComplex) -> Result<(), ConstructionError> {
    if is_flag(l) {
        return Ok(());
    }
    // Name a missing clique for the message.
    let g = l.one_skeleton();
    let missing = crate::simplicial::flag_complex(&g)
        .iter()
        .find(|s| !l.contains(s))
        .map(|s| l.simplex_name(s))
        .unwrap_or_default();
    Err(ConstructionError::NotFlag(format!("clique {missing} spans no simplex")))
}

/// The mirror of each vertex `v` of `l`: the closed star of `v` in the
/// barycentric subdivision, in the order of `l`'s vertices.
pub fn mirrors(l: &SimplicialComplex) -> Result<Vec<SimplicialComplex>, ConstructionError> {
    require_flag(l)?;
    let sd = barycentric_subdivision(l);
    (0..l.vertex_count() as VertexId)
        .map(|v| Ok(star(&sd, &barycenter_label(l, &Simplex::vertex(v)))?))
        .collect()
}

/// A space `N` with boundary `L` and the mirror structure on it.
#[derive(Clone, Debug)]
pub struct MirroredComplex {
    input: SimplicialComplex,
    space: SimplicialComplex,
    boundary: SimplicialComplex,
    subdivided: bool,
    /// Vertices of `space` lying in each mirror, indexed by vertex of `L`.
    mirror_vertices: Vec<BTreeSet<VertexId>>,
}

impl MirroredComplex {
    /// `boundary` is the flag complex `L`. The barycentric subdivision of
    /// `L` must sit inside `space`: the barycenter of a boundary simplex
    /// `τ` is the vertex labelled `b{…}` (see [`barycenter_label`]), or for
    /// a boundary vertex `v` possibly the vertex labelled `v`.
    ///
    /// If some mirror is not a full subcomplex of `space`, the space is
    /// subdivided once so that gluing along mirrors stays simplicial.
    pub fn new(space: SimplicialComplex, boundary: SimplicialComplex) -> Result<Self, ConstructionError> {
        require_flag(&boundary)?;
        if boundary.is_empty() {
            return Err(ConstructionError::EmptyComplex);
        }
        if boundary.vertex_count() > MAX_MIRRORS {
            return Err(ConstructionError::TooManyMirrors(boundary.vertex_count()));
        }
        let (sd_l, origin) = barycentric_subdivision_with_origin(&boundary);
        let place: Vec<VertexId> = origin
            .iter()
            .map(|tau| {
                let name = barycenter_label(&boundary, tau);
                space
                    .vertex_id(&name)
                    .or_else(|| (tau.dim() == 0).then(|| space.vertex_id(boundary.label(tau.vertices()[0]))).flatten())
                    .ok_or(ConstructionError::BoundaryNotEmbedded(boundary.simplex_name(tau)))
            })
            .collect::<Result<_, _>>()?;
        for s in sd_l.iter() {
            let image = Simplex::new(s.vertices().iter().map(|v| place[*v as usize]).collect());
            if !image.is_some_and(|t| space.contains(&t)) {
                return Err(ConstructionError::BoundaryNotEmbedded(sd_l.simplex_name(s)));
            }
        }
        let stars: Vec<SimplicialComplex> = mirrors(&boundary)?;
        let mut mirror_cells: Vec<Vec<Simplex>> = stars
            .iter()
            .map(|d| {
                d.iter()
                    .map(|s| {
                        let sd_ids = s.vertices().iter().map(|v| sd_l.vertex_id(d.label(*v)).unwrap());
                        Simplex::new(sd_ids.map(|v| place[v as usize]).collect()).unwrap()
                    })
                    .collect()
            })
            .collect();
        let full = mirror_cells.iter().all(|cells| {
            let verts: BTreeSet<VertexId> = cells.iter().flat_map(|s| s.vertices().iter().copied()).collect();
            let cells: BTreeSet<&Simplex> = cells.iter().collect();
            space
                .iter()
                .filter(|s| s.vertices().iter().all(|v| verts.contains(v)))
                .all(|s| cells.contains(s))
        });
        if full {
            let mirror_vertices = mirror_cells
                .iter()
                .map(|cells| cells.iter().flat_map(|s| s.vertices().iter().copied()).collect())
                .collect();
            return Ok(MirroredComplex {
                input: space.clone(),
                space,
                boundary,
                subdivided: false,
                mirror_vertices,
            });
        }
        let (sd_space, sd_origin) = barycentric_subdivision_with_origin(&space);
        let position: BTreeMap<&Simplex, VertexId> =
            sd_origin.iter().enumerate().map(|(i, s)| (s, i as VertexId)).collect();
        let mirror_vertices = mirror_cells
            .iter_mut()
            .map(|cells| cells.iter().map(|s| position[s]).collect())
            .collect();
        Ok(MirroredComplex {
            input: space,
            space: sd_space,
            boundary,
            subdivided: true,
            mirror_vertices,
        })
    }

    /// The cone over the barycentric subdivision of `l`: a disk when `l`
    /// is a circle, and in general a space with boundary `l`.
    pub fn cone_over(l: &SimplicialComplex) -> Result<Self, ConstructionError> {
        require_flag(l)?;
        let sd = barycentric_subdivision(l);
        let apex = "apex";
        let facets: Vec<Vec<String>> = sd
            .labelled_facets()
            .into_iter()
            .map(|mut f| {
                f.push(apex.to_string());
                f
            })
            .collect();
        let facets = if facets.is_empty() { vec![vec![apex.to_string()]] } else { facets };
        let space = SimplicialComplex::from_labelled_facets(&facets)?;
        Self::new(space, l.clone())
    }

    pub fn input(&self) -> &SimplicialComplex {
        &self.input
    }

    /// The space the gluing happens in: the input, or its subdivision.
    pub fn space(&self) -> &SimplicialComplex {
        &self.space
    }

    pub fn boundary(&self) -> &SimplicialComplex {
        &self.boundary
    }

    pub fn is_subdivided(&self) -> bool {
        self.subdivided
    }

    pub fn mirror_count(&self) -> usize {
        self.mirror_vertices.len()
    }

    pub fn mirror(&self, v: usize) -> SimplicialComplex {
        self.space.full_subcomplex(&self.mirror_vertices[v])
    }

    /// Bit `v` set iff vertex `x` of the space lies in mirror `v`.
    fn vertex_masks(&self) -> Vec<u64> {
        let mut masks = vec![0u64; self.space.vertex_count()];
        for (v, verts) in self.mirror_vertices.iter().enumerate() {
            for x in verts {
                masks[*x as usize] |= 1 << v;
            }
        }
        masks
    }

    /// Mirrors containing `s`.
    pub fn support(&self, s: &Simplex) -> u64 {
        let masks = self.vertex_masks();
        s.vertices().iter().fold(u64::MAX >> (64 - self.mirror_count()), |acc, x| acc & masks[*x as usize])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportEntry {
    pub simplex: String,
    pub dim: usize,
    /// Number of mirrors containing the simplex.
    pub support: usize,
    /// Copies of the simplex in the glued space.
    pub copies: u64,
}

#[derive(Clone, Debug)]
pub struct BasicConstructionResult {
    pub complex: SimplicialComplex,
    pub copy_count: u64,
    pub support_census: Vec<SupportEntry>,
    pub chi_by_formula: i64,
    pub chi_direct: i64,
    /// For each glued vertex, the space vertex and copy it comes from
    /// (copy bits in mirrors through that vertex cleared).
    pub vertex_origin: Vec<(VertexId, u64)>,
    mirrors: usize,
}

impl BasicConstructionResult {
    /// (Z/2)^V acting by relabelling copies: generator `v` flips bit `v`.
    pub fn copy_action(&self, names: &[String]) -> Result<GroupAction, ActionError> {
        let index: BTreeMap<(VertexId, u64), VertexId> =
            self.vertex_origin.iter().enumerate().map(|(i, o)| (*o, i as VertexId)).collect();
        let gens = (0..self.mirrors)
            .map(|v| {
                let map = self
                    .vertex_origin
                    .iter()
                    .map(|(x, h)| {
                        // Copies glued along a mirror through x have no flipped twin.
                        let flipped = h ^ (1 << v);
                        *index.get(&(*x, flipped)).unwrap_or(&index[&(*x, *h)])
                    })
                    .collect();
                Generator {
                    name: names.get(v).cloned().unwrap_or_else(|| format!("r{v}")),
                    vertex_map: map,
                    order: None,
                }
            })
            .collect();
        GroupAction::from_generators(self.complex.clone(), gens, DEFAULT_MAX_GROUP_ORDER.max(1 << self.mirrors))
    }
}

fn copy_label(label: &str, h: u64, bits: usize) -> String {
    let mut s = String::with_capacity(label.len() + bits + 1);
    s.push_str(label);
    s.push('@');
    for v in 0..bits {
        s.push(if h >> v & 1 == 1 { '1' } else { '0' });
    }
    s
}

/// Glues `2^|V|` copies of the space, identifying copies `g` and `g + e_v`
/// along mirror `v`. Glued vertices are labelled `x@bits`, with bit `v`
/// of the copy index at position `v` and bits of mirrors through `x`
/// cleared.
pub fn basic_construction(m: &MirroredComplex, max_cells: u64) -> Result<BasicConstructionResult, ConstructionError> {
    let nv = m.mirror_count();
    let copies: u64 = 1 << nv;
    let cells = copies as u128 * m.space.simplex_count() as u128;
    if cells > max_cells as u128 {
        return Err(ConstructionError::SizeBound { cells, limit: max_cells });
    }
    let masks = m.vertex_masks();
    let all = copies - 1;
    let support_of =
        |s: &Simplex| -> u64 { s.vertices().iter().fold(all, |acc, x| acc & masks[*x as usize]) };

    let mut support_census = Vec::with_capacity(m.space.simplex_count());
    let mut chi_by_formula = 0i64;
    for s in m.space.iter() {
        let support = support_of(s).count_ones() as usize;
        let n = 1u64 << (nv - support);
        chi_by_formula += if s.dim() % 2 == 0 { n as i64 } else { -(n as i64) };
        support_census.push(SupportEntry {
            simplex: m.space.simplex_name(s),
            dim: s.dim(),
            support,
            copies: n,
        });
    }

    let mut vertex_origin: Vec<(VertexId, u64)> = Vec::new();
    for x in 0..m.space.vertex_count() {
        let free = all & !masks[x];
        for h in 0..copies {
            if h & !free == 0 {
                vertex_origin.push((x as VertexId, h));
            }
        }
    }
    let labels: Vec<String> = vertex_origin
        .iter()
        .map(|(x, h)| copy_label(m.space.label(*x), *h, nv))
        .collect();
    let mut facets: Vec<Vec<usize>> = Vec::new();
    let id_of: BTreeMap<(VertexId, u64), usize> =
        vertex_origin.iter().enumerate().map(|(i, o)| (*o, i)).collect();
    for f in m.space.facets() {
        let s = support_of(&f);
        for g in 0..copies {
            if g & s != 0 {
                continue;
            }
            facets.push(f.vertices().iter().map(|x| id_of[&(*x, g & !masks[*x as usize])]).collect());
        }
    }
    let complex = SimplicialComplex::from_facets(&labels, &facets_as_labels(&labels, &facets))?;
    let vertex_origin = complex
        .labels()
        .iter()
        .map(|l| {
            let i = labels.iter().position(|x| x == l).unwrap();
            vertex_origin[i]
        })
        .collect();
    let chi_direct = euler_characteristic(&complex);
    Ok(BasicConstructionResult {
        complex,
        copy_count: copies,
        support_census,
        chi_by_formula,
        chi_direct,
        vertex_origin,
        mirrors: nv,
    })
}

fn facets_as_labels<'a>(labels: &'a [String], facets: &[Vec<usize>]) -> Vec<Vec<&'a str>> {
    facets.iter().map(|f| f.iter().map(|i| labels[*i].as_str()).collect()).collect()
}

/// Number of orbits of `k`-simplices for each `k`.
pub fn orbit_f_vector(a: &GroupAction) -> Vec<usize> {
    let c = a.complex();
    let d = c.dimension().map_or(0, |d| d + 1);
    let mut out = vec![0; d];
    let mut seen: BTreeSet<Simplex> = BTreeSet::new();
    for s in c.iter() {
        if seen.contains(s) {
            continue;
        }
        out[s.dim()] += 1;
        for g in 0..a.group().order() {
            seen.insert(a.act_on_simplex(g, s));
        }
    }
    out
}

/// The finite quotient used in place of a torsion-free finite-index
/// subgroup of the right-angled Coxeter group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPolicy {
    pub index: u64,
    pub description: &'static str,
}

pub fn quotient_group_choice(l: &SimplicialComplex) -> QuotientPolicy {
    QuotientPolicy {
        index: 1u64 << l.vertex_count().min(63),
        description: "kernel of the map from the right-angled Coxeter group onto (Z/2)^V \
                      sending each generator to its basis vector",
    }
}

/// Homology of the union of tori `∏_{v∈σ} S¹` over simplices `σ` of `l`
/// (the empty simplex included), from its cubical chain complex.
pub fn salvetti_homology(l: &SimplicialComplex) -> Result<HomologyProfile, ConstructionError> {
    require_flag(l)?;
    let dim = l.dimension().map_or(0, |d| d + 1);
    // Cells of degree k are the simplices with k vertices, the empty one included.
    let mut cells: Vec<Vec<&[VertexId]>> = vec![Vec::new(); dim + 1];
    cells[0].push(&[]);
    for s in l.iter() {
        cells[s.dim() + 1].push(s.vertices());
    }
    let ranks: Vec<usize> = cells.iter().map(Vec::len).collect();
    let mut boundaries = Vec::with_capacity(dim);
    for k in 1..=dim {
        let index: BTreeMap<&[VertexId], usize> = cells[k - 1].iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let columns = cells[k]
            .iter()
            .map(|s| {
                let mut col: BTreeMap<usize, BigInt> = BTreeMap::new();
                for i in 0..s.len() {
                    let mut face = s.to_vec();
                    face.remove(i);
                    let row = index[face.as_slice()];
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    // Front and back faces of the cube in direction i are the
                    // same cell with opposite orientations.
                    *col.entry(row).or_default() += BigInt::from(sign);
                    *col.entry(row).or_default() -= BigInt::from(sign);
                }
                col.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        boundaries.push(IntegerMatrix::from_columns(ranks[k - 1], columns));
    }
    Ok(homology_of(&ranks, &boundaries, false))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BbClaim {
    /// The kernel is of type FH over the ring.
    Fh(Ring),
    FinitelyPresented,
    /// The kernel is not of type FP over the ring.
    NotFp(Ring),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BbLine {
    pub claim: BbClaim,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BbReport {
    pub flag: bool,
    /// Reduced integral homology of `L`.
    pub homology_z: HomologyProfile,
    pub acyclic_z: bool,
    pub acyclic_q: bool,
    pub asserted_simply_connected: bool,
    pub lines: Vec<BbLine>,
    pub warnings: Vec<String>,
}

/// Classifies the kernel of the map from the right-angled Artin group of
/// `l` onto Z, from the homology of `l` and an optional assertion that `l`
/// is simply connected.
pub fn bb_report(l: &SimplicialComplex, asserts_simply_connected: bool) -> Result<BbReport, ConstructionError> {
    require_flag(l)?;
    if l.is_empty() {
        return Err(ConstructionError::EmptyComplex);
    }
    let h = homology(l, true);
    let acyclic_z = h.vanishes(Ring::Z);
    let acyclic_q = h.vanishes(Ring::Q);
    let mut lines = Vec::new();
    let mut warnings = Vec::new();
    for (ring, acyclic) in [(Ring::Z, acyclic_z), (Ring::Q, acyclic_q)] {
        if acyclic {
            lines.push(BbLine {
                claim: BbClaim::Fh(ring),
                text: format!("L is {ring}-acyclic, so the kernel is FH({ring})"),
            });
        } else {
            lines.push(BbLine {
                claim: BbClaim::NotFp(ring),
                text: format!("L is not {ring}-acyclic, so the kernel is not FP({ring})"),
            });
        }
    }
    if asserts_simply_connected {
        lines.push(BbLine {
            claim: BbClaim::FinitelyPresented,
            text: "L is simply connected (asserted), so the kernel is finitely presented".into(),
        });
        if h.betti(1) != 0 || !h.torsion(1).is_empty() {
            warnings.push("H1(L) is nonzero, which contradicts the simple connectivity assertion".into());
        }
        if h.betti(0) != 0 {
            warnings.push("L is disconnected, which contradicts the simple connectivity assertion".into());
        }
    }
    Ok(BbReport {
        flag: true,
        homology_z: h,
        acyclic_z,
        acyclic_q,
        asserted_simply_connected: asserts_simply_connected,
        lines,
        warnings,
    })
}

/// The diagonal action on the join. Generators are paired by position; a
/// side whose group is trivial acts trivially.
pub fn equivariant_join(a: &GroupAction, b: &GroupAction) -> Result<GroupAction, ConstructionError> {
    let j = join_with_embeddings(a.complex(), b.complex());
    let nv = j.complex.vertex_count();
    let aux_a = a.group().degree() - a.complex().vertex_count();
    let aux_b = b.group().degree() - b.complex().vertex_count();
    let degree = nv + aux_a + aux_b;
    let (ga, gb) = (a.group(), b.group());
    let pairs: Vec<(usize, usize)> = match (ga.order(), gb.order()) {
        (_, 1) => ga.generators().iter().map(|g| (*g, 0)).collect(),
        (1, _) => gb.generators().iter().map(|g| (0, *g)).collect(),
        _ if ga.generators().len() == gb.generators().len() => {
            ga.generators().iter().copied().zip(gb.generators().iter().copied()).collect()
        }
        _ => {
            return Err(ConstructionError::GroupMismatch(format!(
                "{} generators against {}",
                ga.generators().len(),
                gb.generators().len()
            )))
        }
    };
    let na = a.complex().vertex_count();
    let nb = b.complex().vertex_count();
    let perms: Vec<Permutation> = pairs
        .iter()
        .map(|(x, y)| {
            let (pa, pb) = (ga.element(*x), gb.element(*y));
            let mut images = vec![0u32; degree];
            for v in 0..na {
                images[j.left[v] as usize] = j.left[pa.apply(v as u32) as usize];
            }
            for v in 0..nb {
                images[j.right[v] as usize] = j.right[pb.apply(v as u32) as usize];
            }
            for i in 0..aux_a {
                images[nv + i] = (nv + pa.apply((na + i) as u32) as usize - na) as u32;
            }
            for i in 0..aux_b {
                images[nv + aux_a + i] = (nv + aux_a + pb.apply((nb + i) as u32) as usize - nb) as u32;
            }
            Permutation::new(images).expect("product of permutations")
        })
        .collect();
    let bound = ga.order().max(gb.order());
    let group = group_closure(degree, &perms, bound).map_err(|_| {
        ConstructionError::GroupMismatch("paired generators do not define an isomorphism".into())
    })?;
    if (ga.order() > 1 && group.order() != ga.order()) || (gb.order() > 1 && group.order() != gb.order()) {
        return Err(ConstructionError::GroupMismatch(format!(
            "diagonal group has order {}, sides have {} and {}",
            group.order(),
            ga.order(),
            gb.order()
        )));
    }
    let names = if ga.order() > 1 { a.generator_names() } else { b.generator_names() };
    Ok(GroupAction::new(j.complex, group, names.to_vec())?)
}
