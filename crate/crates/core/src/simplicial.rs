//! Finite abstract simplicial complexes.
//!
//! A [`SimplicialComplex`] keeps its vertex labels sorted, so the vertex ids
//! (`u32` indices into the label list) order simplices exactly as the
//! lexicographic order on labels would. Simplices are stored explicitly and
//! face-closed, grouped by dimension.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub type VertexId = u32;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("facet {facet} mentions unknown vertex `{vertex}`")]
    UnknownVertex { facet: String, vertex: String },
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("facet {0} repeats a vertex")]
    RepeatedVertex(String),
    #[error("empty facet")]
    EmptyFacet,
    #[error("facet {facet} has {size} vertices; at most {max} are supported")]
    FacetTooLarge { facet: String, size: usize, max: usize },
    #[error("edge {0} is a loop")]
    Loop(String),
    #[error("no vertex labelled `{0}`")]
    NoSuchVertex(String),
}

/// Largest facet (in vertices) accepted on ingestion.
pub const MAX_FACET_SIZE: usize = 24;

/// A nonempty, strictly increasing list of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Sorts the vertices; `None` if empty or if a vertex repeats.
    pub fn new(mut vertices: Vec<VertexId>) -> Option<Self> {
        if vertices.is_empty() {
            return None;
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Simplex(vertices))
    }

    /// Sorts and deduplicates, which is what a simplicial map does to a simplex.
    pub fn from_image(mut vertices: Vec<VertexId>) -> Option<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            None
        } else {
            Some(Simplex(vertices))
        }
    }

    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(!vertices.is_empty() && vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// Codimension-one faces; the `i`-th one omits the `i`-th vertex.
    pub fn boundary_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut f = self.0.clone();
            f.remove(i);
            Simplex(f)
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |mask| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, v)| *v)
                    .collect(),
            )
        })
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v: Vec<VertexId> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }
}

/// A simple undirected graph with labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<BTreeSet<VertexId>>,
}

impl Graph {
    /// Duplicate edges collapse; loops and unknown endpoints are errors.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self, ComplexError> {
        let labels = sorted_labels(vertices.iter().map(|s| s.as_ref().to_string()))?;
        let mut adjacency = vec![BTreeSet::new(); labels.len()];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let name = format!("{{{a},{b}}}");
            let ia = lookup(&labels, a).ok_or_else(|| ComplexError::UnknownVertex {
                facet: name.clone(),
                vertex: a.to_string(),
            })?;
            let ib = lookup(&labels, b).ok_or_else(|| ComplexError::UnknownVertex {
                facet: name.clone(),
                vertex: b.to_string(),
            })?;
            if ia == ib {
                return Err(ComplexError::Loop(name));
            }
            adjacency[ia as usize].insert(ib);
            adjacency[ib as usize].insert(ia);
        }
        Ok(Graph { labels, adjacency })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.adjacency[v as usize]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(a, nb)| {
            nb.iter()
                .filter(move |b| **b > a as VertexId)
                .map(move |b| (a as VertexId, *b))
        })
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    by_dim: Vec<BTreeSet<Simplex>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.labels)
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

fn lookup(labels: &[String], label: &str) -> Option<VertexId> {
    labels
        .binary_search_by(|l| l.as_str().cmp(label))
        .ok()
        .map(|i| i as VertexId)
}

fn sorted_labels(labels: impl Iterator<Item = String>) -> Result<Vec<String>, ComplexError> {
    let mut labels: Vec<String> = labels.collect();
    labels.sort();
    for w in labels.windows(2) {
        if w[0] == w[1] {
            return Err(ComplexError::DuplicateLabel(w[0].clone()));
        }
    }
    Ok(labels)
}

/// Builds complexes from arbitrary (unsorted) labels and facets given in
/// terms of input positions.
pub(crate) struct ComplexBuilder {
    labels: Vec<String>,
    remap: Vec<VertexId>,
    facets: Vec<Simplex>,
}

impl ComplexBuilder {
    /// Labels must be distinct.
    pub(crate) fn new(input_labels: Vec<String>) -> Self {
        let mut order: Vec<usize> = (0..input_labels.len()).collect();
        order.sort_by(|a, b| input_labels[*a].cmp(&input_labels[*b]));
        let mut remap = vec![0; input_labels.len()];
        for (new, old) in order.iter().enumerate() {
            remap[*old] = new as VertexId;
        }
        let mut slots: Vec<Option<String>> = input_labels.into_iter().map(Some).collect();
        let labels = order.iter().map(|i| slots[*i].take().unwrap()).collect();
        ComplexBuilder {
            labels,
            remap,
            facets: Vec::new(),
        }
    }

    /// Canonical id of the vertex given at input position `i`.
    pub(crate) fn id(&self, i: usize) -> VertexId {
        self.remap[i]
    }

    pub(crate) fn add(&mut self, input_vertices: impl IntoIterator<Item = usize>) {
        let v: Vec<VertexId> = input_vertices.into_iter().map(|i| self.remap[i]).collect();
        if let Some(s) = Simplex::new(v) {
            self.facets.push(s);
        }
    }

    pub(crate) fn build(self) -> SimplicialComplex {
        SimplicialComplex::close(self.labels, self.facets)
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            by_dim: Vec::new(),
        }
    }

    /// Face closure of `facets` on the given vertex list. Every listed vertex
    /// becomes a 0-simplex even when no facet mentions it.
    pub fn from_facets<V: AsRef<str>, S: AsRef<str>, F: AsRef<[S]>>(
        vertices: &[V],
        facets: &[F],
    ) -> Result<Self, ComplexError> {
        let labels = sorted_labels(vertices.iter().map(|s| s.as_ref().to_string()))?;
        let mut simplices = Vec::with_capacity(facets.len());
        for facet in facets {
            let facet = facet.as_ref();
            let name = format!(
                "[{}]",
                facet.iter().map(|s| s.as_ref()).collect::<Vec<_>>().join(",")
            );
            if facet.is_empty() {
                return Err(ComplexError::EmptyFacet);
            }
            if facet.len() > MAX_FACET_SIZE {
                return Err(ComplexError::FacetTooLarge {
                    facet: name,
                    size: facet.len(),
                    max: MAX_FACET_SIZE,
                });
            }
            let mut ids = Vec::with_capacity(facet.len());
            for v in facet {
                let id = lookup(&labels, v.as_ref()).ok_or_else(|| ComplexError::UnknownVertex {
                    facet: name.clone(),
                    vertex: v.as_ref().to_string(),
                })?;
                ids.push(id);
            }
            simplices.push(Simplex::new(ids).ok_or(ComplexError::RepeatedVertex(name))?);
        }
        Ok(Self::close(labels, simplices))
    }

    /// Like [`from_facets`](Self::from_facets) with the vertex set implied by
    /// the facets.
    pub fn from_labelled_facets<S: AsRef<str>, F: AsRef<[S]>>(
        facets: &[F],
    ) -> Result<Self, ComplexError> {
        let vertices: BTreeSet<&str> = facets
            .iter()
            .flat_map(|f| f.as_ref().iter().map(|s| s.as_ref()))
            .collect();
        let vertices: Vec<&str> = vertices.into_iter().collect();
        Self::from_facets::<&str, S, F>(&vertices, facets)
    }

    /// `labels` must be sorted and distinct; facets refer to positions in it.
    pub(crate) fn close(labels: Vec<String>, facets: Vec<Simplex>) -> Self {
        let top = facets.iter().map(Simplex::dim).max();
        let mut by_dim: Vec<BTreeSet<Simplex>> = match top {
            Some(d) => vec![BTreeSet::new(); d + 1],
            None if labels.is_empty() => Vec::new(),
            None => vec![BTreeSet::new()],
        };
        for f in facets {
            let d = f.dim();
            by_dim[d].insert(f);
        }
        for d in (1..by_dim.len()).rev() {
            let faces: Vec<Simplex> = by_dim[d].iter().flat_map(|s| s.boundary_faces()).collect();
            by_dim[d - 1].extend(faces);
        }
        if !labels.is_empty() {
            for v in 0..labels.len() as VertexId {
                by_dim[0].insert(Simplex::vertex(v));
            }
        }
        SimplicialComplex { labels, by_dim }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v as usize]
    }

    pub fn vertex_id(&self, label: &str) -> Option<VertexId> {
        lookup(&self.labels, label)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    /// The `k`-simplices in canonical order.
    pub fn simplices(&self, k: usize) -> impl ExactSizeIterator<Item = &Simplex> + '_ {
        static EMPTY: BTreeSet<Simplex> = BTreeSet::new();
        self.by_dim.get(k).unwrap_or(&EMPTY).iter()
    }

    /// All simplices ordered by dimension, then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.by_dim.iter().flat_map(|s| s.iter())
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.by_dim.get(s.dim()).is_some_and(|set| set.contains(s))
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(BTreeSet::len).collect()
    }

    pub fn simplex_count(&self) -> usize {
        self.by_dim.iter().map(BTreeSet::len).sum()
    }

    /// Simplex from labels, if present.
    pub fn simplex_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Option<Simplex> {
        let ids: Option<Vec<VertexId>> = labels.iter().map(|l| self.vertex_id(l.as_ref())).collect();
        let s = Simplex::new(ids?)?;
        self.contains(&s).then_some(s)
    }

    pub fn simplex_labels(&self, s: &Simplex) -> Vec<&str> {
        s.vertices().iter().map(|v| self.label(*v)).collect()
    }

    /// Canonical rendering such as `{a,b}`.
    pub fn simplex_name(&self, s: &Simplex) -> String {
        format!("{{{}}}", self.simplex_labels(s).join(","))
    }

    /// Maximal simplices in canonical order.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..self.by_dim.len() {
            let covered: BTreeSet<Simplex> = match self.by_dim.get(d + 1) {
                Some(up) => up.iter().flat_map(|s| s.boundary_faces()).collect(),
                None => BTreeSet::new(),
            };
            out.extend(self.by_dim[d].iter().filter(|s| !covered.contains(*s)).cloned());
        }
        out
    }

    pub fn one_skeleton(&self) -> Graph {
        let mut adjacency = vec![BTreeSet::new(); self.labels.len()];
        for e in self.simplices(1) {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            adjacency[a as usize].insert(b);
            adjacency[b as usize].insert(a);
        }
        Graph {
            labels: self.labels.clone(),
            adjacency,
        }
    }

    /// Subcomplex spanned by the faces of `simplices`, on the vertices they use.
    pub fn subcomplex<'a>(&self, simplices: impl IntoIterator<Item = &'a Simplex>) -> Self {
        let simplices: Vec<&Simplex> = simplices.into_iter().collect();
        let used: BTreeSet<VertexId> = simplices
            .iter()
            .flat_map(|s| s.vertices().iter().copied())
            .collect();
        self.restrict(&used, simplices.into_iter().cloned())
    }

    /// Full subcomplex on `vertices`: every simplex of `self` all of whose
    /// vertices are listed.
    pub fn full_subcomplex(&self, vertices: &BTreeSet<VertexId>) -> Self {
        let kept = self
            .iter()
            .filter(|s| s.vertices().iter().all(|v| vertices.contains(v)))
            .cloned();
        self.restrict(vertices, kept)
    }

    fn restrict(&self, vertices: &BTreeSet<VertexId>, simplices: impl Iterator<Item = Simplex>) -> Self {
        let mut new_id = BTreeMap::new();
        let mut labels = Vec::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            new_id.insert(*v, i as VertexId);
            labels.push(self.labels[*v as usize].clone());
        }
        let facets = simplices
            .map(|s| Simplex::from_sorted(s.vertices().iter().map(|v| new_id[v]).collect()))
            .collect();
        Self::close(labels, facets)
    }

    /// True when every simplex of `self` (by labels) is a simplex of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        let map: Option<Vec<VertexId>> = self.labels.iter().map(|l| other.vertex_id(l)).collect();
        let Some(map) = map else { return false };
        self.iter().all(|s| {
            let image = Simplex::from_sorted({
                let mut v: Vec<VertexId> = s.vertices().iter().map(|v| map[*v as usize]).collect();
                v.sort_unstable();
                v
            });
            other.contains(&image)
        })
    }

    /// The facets written with labels, in canonical order.
    pub fn labelled_facets(&self) -> Vec<Vec<String>> {
        self.facets()
            .iter()
            .map(|s| self.simplex_labels(s).into_iter().map(String::from).collect())
            .collect()
    }
}

/// Every clique of `g` as a simplex.
pub fn flag_complex(g: &Graph) -> SimplicialComplex {
    let mut facets = Vec::new();
    // Extend cliques by larger neighbours only, so each clique is met once.
    let mut stack: Vec<Vec<VertexId>> = (0..g.vertex_count() as VertexId).map(|v| vec![v]).collect();
    while let Some(clique) = stack.pop() {
        let last = *clique.last().unwrap();
        let mut maximal = true;
        for w in g.neighbors(last).range(last + 1..) {
            if clique[..clique.len() - 1].iter().all(|u| g.neighbors(*u).contains(w)) {
                let mut next = clique.clone();
                next.push(*w);
                stack.push(next);
                maximal = false;
            }
        }
        if maximal {
            facets.push(Simplex::from_sorted(clique));
        }
    }
    SimplicialComplex::close(g.labels.clone(), facets)
}

/// True iff every set of pairwise adjacent vertices spans a simplex.
pub fn is_flag(c: &SimplicialComplex) -> bool {
    let g = c.one_skeleton();
    // Every clique arises from a smaller clique by adding a vertex larger
    // than all of its members, so checking one-step extensions of the
    // existing simplices covers all cliques inductively.
    for s in c.iter() {
        let last = *s.vertices().last().unwrap();
        for w in g.neighbors(last).range(last + 1..) {
            if s.vertices().iter().all(|u| g.neighbors(*u).contains(w)) {
                let mut v = s.vertices().to_vec();
                v.push(*w);
                if !c.contains(&Simplex::from_sorted(v)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Label used for the barycenter of `s` in a subdivision.
pub fn barycenter_label(c: &SimplicialComplex, s: &Simplex) -> String {
    format!("b{}", c.simplex_name(s))
}

/// Barycentric subdivision together with, for every new vertex id, the
/// simplex of `c` it is the barycenter of.
pub fn barycentric_subdivision_with_origin(c: &SimplicialComplex) -> (SimplicialComplex, Vec<Simplex>) {
    let origin_input: Vec<Simplex> = c.iter().cloned().collect();
    let position: BTreeMap<&Simplex, usize> =
        origin_input.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut builder = ComplexBuilder::new(origin_input.iter().map(|s| barycenter_label(c, s)).collect());
    for facet in c.facets() {
        // Maximal chains of faces of `facet`, built by deleting vertices.
        let mut stack = vec![(facet.clone(), vec![position[&facet]])];
        while let Some((s, chain)) = stack.pop() {
            if s.dim() == 0 {
                builder.add(chain);
                continue;
            }
            for f in s.boundary_faces() {
                let mut next = chain.clone();
                next.push(position[&f]);
                stack.push((f, next));
            }
        }
    }
    let mut origin = vec![Simplex::vertex(0); origin_input.len()];
    for (i, s) in origin_input.iter().enumerate() {
        origin[builder.id(i) as usize] = s.clone();
    }
    (builder.build(), origin)
}

pub fn barycentric_subdivision(c: &SimplicialComplex) -> SimplicialComplex {
    barycentric_subdivision_with_origin(c).0
}

/// `{ σ : v ∉ σ, σ ∪ {v} ∈ c }`.
pub fn link(c: &SimplicialComplex, v: &str) -> Result<SimplicialComplex, ComplexError> {
    let id = c.vertex_id(v).ok_or_else(|| ComplexError::NoSuchVertex(v.to_string()))?;
    let faces: Vec<Simplex> = c
        .iter()
        .filter(|s| s.dim() > 0 && s.contains(id))
        .map(|s| Simplex::from_sorted(s.vertices().iter().copied().filter(|u| *u != id).collect()))
        .collect();
    Ok(c.subcomplex(faces.iter()))
}

/// Closed star: all faces of simplices containing `v`.
pub fn star(c: &SimplicialComplex, v: &str) -> Result<SimplicialComplex, ComplexError> {
    let id = c.vertex_id(v).ok_or_else(|| ComplexError::NoSuchVertex(v.to_string()))?;
    Ok(c.subcomplex(c.iter().filter(|s| s.contains(id))))
}

/// A join together with where each side's vertices went.
#[derive(Clone, Debug)]
pub struct Join {
    pub complex: SimplicialComplex,
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
}

/// Join of two complexes. If the label sets collide, every left label is
/// prefixed with `L:` and every right label with `R:`.
pub fn join_with_embeddings(a: &SimplicialComplex, b: &SimplicialComplex) -> Join {
    let collide = a.labels.iter().any(|l| b.vertex_id(l).is_some());
    let (left_labels, right_labels): (Vec<String>, Vec<String>) = if collide {
        (
            a.labels.iter().map(|l| format!("L:{l}")).collect(),
            b.labels.iter().map(|l| format!("R:{l}")).collect(),
        )
    } else {
        (a.labels.clone(), b.labels.clone())
    };
    let na = a.vertex_count();
    let mut builder = ComplexBuilder::new(left_labels.into_iter().chain(right_labels).collect());
    let fa = a.facets();
    let fb = b.facets();
    if fa.is_empty() {
        for t in &fb {
            builder.add(t.vertices().iter().map(|v| na + *v as usize));
        }
    } else if fb.is_empty() {
        for s in &fa {
            builder.add(s.vertices().iter().map(|v| *v as usize));
        }
    } else {
        for s in &fa {
            for t in &fb {
                builder.add(
                    s.vertices()
                        .iter()
                        .map(|v| *v as usize)
                        .chain(t.vertices().iter().map(|v| na + *v as usize)),
                );
            }
        }
    }
    let left = (0..na).map(|i| builder.id(i)).collect();
    let right = (0..b.vertex_count()).map(|i| builder.id(na + i)).collect();
    Join {
        complex: builder.build(),
        left,
        right,
    }
}

pub fn join(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    join_with_embeddings(a, b).complex
}

/// Vertex sets of the connected components, ordered by smallest vertex.
pub fn component_vertex_sets(c: &SimplicialComplex) -> Vec<BTreeSet<VertexId>> {
    let n = c.vertex_count();
    let mut uf = UnionFind::new(n);
    for e in c.simplices(1) {
        uf.union(e.vertices()[0] as usize, e.vertices()[1] as usize);
    }
    let mut groups: BTreeMap<usize, BTreeSet<VertexId>> = BTreeMap::new();
    let mut first_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..n {
        let r = uf.find(v);
        let key = *first_of_root.entry(r).or_insert(v);
        groups.entry(key).or_default().insert(v as VertexId);
    }
    groups.into_values().collect()
}

pub fn connected_components(c: &SimplicialComplex) -> Vec<SimplicialComplex> {
    component_vertex_sets(c)
        .iter()
        .map(|vs| c.full_subcomplex(vs))
        .collect()
}

/// Alternating simplex count; 0 for the empty complex.
pub fn euler_characteristic(c: &SimplicialComplex) -> i64 {
    c.by_dim
        .iter()
        .enumerate()
        .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
        .sum()
}

/// Closed pseudomanifold test: pure of dimension `d`, every (d−1)-simplex in
/// exactly two d-simplices, and strongly connected.
pub fn is_pseudomanifold(c: &SimplicialComplex, d: usize) -> bool {
    if c.dimension() != Some(d) {
        return false;
    }
    if d == 0 {
        return c.vertex_count() == 2;
    }
    let top: Vec<&Simplex> = c.simplices(d).collect();
    let covered: BTreeSet<Simplex> = top.iter().flat_map(|s| s.boundary_faces()).collect();
    // Purity: every lower simplex sits below some d-simplex. It suffices to
    // check the (d−1)-simplices, since every simplex lies in one of those or
    // is itself of dimension d.
    if c.simplices(d - 1).any(|s| !covered.contains(s)) {
        return false;
    }
    let mut cofaces: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
    for (i, s) in top.iter().enumerate() {
        for f in s.boundary_faces() {
            cofaces.entry(f).or_default().push(i);
        }
    }
    let mut uf = UnionFind::new(top.len());
    for owners in cofaces.values() {
        if owners.len() != 2 {
            return false;
        }
        uf.union(owners[0], owners[1]);
    }
    let root = uf.find(0);
    (1..top.len()).all(|i| uf.find(i) == root)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller root.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
