//! Finite groups acting simplicially on complexes.
//!
//! Groups are permutation groups. The first `n` points of each permutation
//! are the vertices of the complex being acted on; any further points are
//! auxiliary and let a group act non-faithfully (for instance Z/n acting
//! trivially is the n-cycle on n auxiliary points and the identity on the
//! vertices).

use alloc::borrow::Cow;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::homology::{HomologyBasis, SimplicialMap};
use crate::simplicial::{
    barycentric_subdivision_with_origin, component_vertex_sets, euler_characteristic, Simplex,
    SimplicialComplex, VertexId,
};

pub const DEFAULT_MAX_GROUP_ORDER: usize = 10_000;

/// Multiplication tables are kept only up to this order.
const TABLE_LIMIT: usize = 2048;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("generator `{0}` is not a bijection")]
    NotBijection(String),
    #[error("generator `{name}` acts on {got} points, expected {expected}")]
    DegreeMismatch { name: String, expected: usize, got: usize },
    #[error("group order exceeds the bound {0}")]
    OrderExceeded(usize),
    #[error("generator `{generator}` maps simplex {simplex} to a non-simplex")]
    NotSimplicial { generator: String, simplex: String },
    #[error("generator `{0}` moves a vertex outside the complex")]
    LeavesComplex(String),
    #[error("generator `{name}` has vertex order {vertex_order}, which does not divide the declared order {declared}")]
    OrderMismatch {
        name: String,
        vertex_order: usize,
        declared: usize,
    },
    #[error("declared order of `{0}` must be positive")]
    ZeroOrder(String),
    #[error("regularized action still moves points of an invariant simplex")]
    RegularizationFailed,
}

/// A permutation of `0..degree`, stored as its list of images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(images: Vec<u32>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for x in &images {
            let x = *x as usize;
            if x >= images.len() || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    /// `self ∘ rhs`: apply `rhs` first.
    pub fn compose(&self, rhs: &Permutation) -> Permutation {
        Permutation(rhs.0.iter().map(|x| self.0[*x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, x) in self.0.iter().enumerate() {
            inv[*x as usize] = i as u32;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, x)| i as u32 == *x)
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        let mut order = 1usize;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            order = order.lcm(&len);
        }
        order
    }
}

/// A finite permutation group with its elements enumerated. Element 0 is
/// the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    lookup: BTreeMap<Permutation, usize>,
    words: Vec<Vec<usize>>,
    generators: Vec<usize>,
    inverses: Vec<usize>,
    table: Option<Vec<u32>>,
}

/// Smallest group containing `generators`, enumerated breadth first so that
/// every element carries a shortest word in the generators.
pub fn group_closure(
    degree: usize,
    generators: &[Permutation],
    max_order: usize,
) -> Result<FiniteGroup, ActionError> {
    for (i, g) in generators.iter().enumerate() {
        if g.degree() != degree {
            return Err(ActionError::DegreeMismatch {
                name: format!("#{i}"),
                expected: degree,
                got: g.degree(),
            });
        }
    }
    let mut elements = vec![Permutation::identity(degree)];
    let mut words = vec![Vec::new()];
    let mut lookup = BTreeMap::new();
    lookup.insert(elements[0].clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        for (gi, g) in generators.iter().enumerate() {
            let y = g.compose(&elements[head]);
            if !lookup.contains_key(&y) {
                if elements.len() >= max_order {
                    return Err(ActionError::OrderExceeded(max_order));
                }
                let mut w = vec![gi];
                w.extend_from_slice(&words[head]);
                lookup.insert(y.clone(), elements.len());
                elements.push(y);
                words.push(w);
            }
        }
        head += 1;
    }
    let generator_ids = generators.iter().map(|g| lookup[g]).collect();
    Ok(FiniteGroup::assemble(degree, elements, lookup, words, generator_ids))
}

impl FiniteGroup {
    fn assemble(
        degree: usize,
        elements: Vec<Permutation>,
        lookup: BTreeMap<Permutation, usize>,
        words: Vec<Vec<usize>>,
        generators: Vec<usize>,
    ) -> Self {
        let inverses = elements.iter().map(|e| lookup[&e.inverse()]).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(lookup[&a.compose(b)] as u32);
                }
            }
            t
        });
        FiniteGroup {
            degree,
            elements,
            lookup,
            words,
            generators,
            inverses,
            table,
        }
    }

    /// Same abstract group with every permutation replaced by `f(perm)`.
    /// `f` must be injective and multiplicative.
    fn relabel(&self, degree: usize, f: impl Fn(&Permutation) -> Permutation) -> Self {
        let elements: Vec<Permutation> = self.elements.iter().map(f).collect();
        let lookup = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        FiniteGroup {
            degree,
            elements,
            lookup,
            words: self.words.clone(),
            generators: self.generators.clone(),
            inverses: self.inverses.clone(),
            table: self.table.clone(),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    /// Shortest word (as generator positions, leftmost applied last).
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    /// Element index of each generator, in the order given.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Index of `a · b` (apply `b` first).
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.lookup[&self.elements[a].compose(&self.elements[b])],
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn conjugate_element(&self, x: usize, h: usize) -> usize {
        self.multiply(self.multiply(x, h), self.inverse(x))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.multiply(a, x);
            k += 1;
        }
        k
    }
}

/// A subgroup as a sorted list of element indices, with generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|x| other.contains(*x))
    }

    fn sort_key(&self) -> (usize, &[usize]) {
        (self.elements.len(), &self.elements)
    }
}

/// Subgroup generated by the given elements.
pub fn subgroup_generated(g: &FiniteGroup, generators: &[usize]) -> Subgroup {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut list = vec![0];
    let mut head = 0;
    while head < list.len() {
        for s in generators {
            let y = g.multiply(*s, list[head]);
            if !seen[y] {
                seen[y] = true;
                list.push(y);
            }
        }
        head += 1;
    }
    list.sort_unstable();
    let mut gens: Vec<usize> = generators.iter().copied().filter(|x| *x != 0).collect();
    gens.dedup();
    Subgroup {
        elements: list,
        generators: gens,
    }
}

pub fn trivial_subgroup(_g: &FiniteGroup) -> Subgroup {
    Subgroup {
        elements: vec![0],
        generators: Vec::new(),
    }
}

pub fn conjugate_subgroup(g: &FiniteGroup, h: &Subgroup, x: usize) -> Subgroup {
    let mut elements: Vec<usize> = h.elements.iter().map(|y| g.conjugate_element(x, *y)).collect();
    elements.sort_unstable();
    Subgroup {
        elements,
        generators: h.generators.iter().map(|y| g.conjugate_element(x, *y)).collect(),
    }
}

/// All subgroups, or one representative per conjugacy class, ordered by
/// (order, sorted elements). Cyclic subgroups seed the search; joins of
/// pairs are added until nothing new appears.
pub fn enumerate_subgroups(g: &FiniteGroup, up_to_conjugacy: bool) -> Vec<Subgroup> {
    let mut found: BTreeMap<Vec<usize>, Subgroup> = BTreeMap::new();
    let mut frontier = Vec::new();
    for x in 0..g.order() {
        let h = subgroup_generated(g, &[x]);
        if !found.contains_key(&h.elements) {
            found.insert(h.elements.clone(), h.clone());
            frontier.push(h);
        }
    }
    while !frontier.is_empty() {
        let known: Vec<Subgroup> = found.values().cloned().collect();
        let mut next = Vec::new();
        for b in &frontier {
            for a in &known {
                if a.is_subgroup_of(b) || b.is_subgroup_of(a) {
                    continue;
                }
                let mut gens = a.generators.clone();
                gens.extend(b.generators.iter().copied().filter(|x| !a.generators.contains(x)));
                let j = subgroup_generated(g, &gens);
                if !found.contains_key(&j.elements) {
                    found.insert(j.elements.clone(), j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut all: Vec<Subgroup> = found.into_values().collect();
    all.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    if !up_to_conjugacy {
        return all;
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut reps = Vec::new();
    for h in all {
        if seen.contains(&h.elements) {
            continue;
        }
        for x in 0..g.order() {
            seen.insert(conjugate_subgroup(g, &h, x).elements);
        }
        reps.push(h);
    }
    reps
}

/// A generator as read from input: a vertex map plus an optional abstract
/// order for generators that should act non-faithfully.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub vertex_map: Vec<VertexId>,
    pub order: Option<usize>,
}

/// A finite group acting on a complex by simplicial automorphisms.
#[derive(Clone, Debug)]
pub struct GroupAction {
    complex: SimplicialComplex,
    group: FiniteGroup,
    generator_names: Vec<String>,
    certified: bool,
}

impl GroupAction {
    /// Builds the group from generators and validates the action. A
    /// generator with a declared order `n` also cycles its own block of `n`
    /// auxiliary points, so its abstract order is exactly `n`.
    pub fn from_generators(
        complex: SimplicialComplex,
        generators: Vec<Generator>,
        max_order: usize,
    ) -> Result<Self, ActionError> {
        let nv = complex.vertex_count();
        let aux: usize = generators.iter().filter_map(|g| g.order).sum();
        let degree = nv + aux;
        let mut perms = Vec::with_capacity(generators.len());
        let mut offset = nv;
        for g in &generators {
            if g.vertex_map.len() != nv {
                return Err(ActionError::DegreeMismatch {
                    name: g.name.clone(),
                    expected: nv,
                    got: g.vertex_map.len(),
                });
            }
            let vertex_perm =
                Permutation::new(g.vertex_map.clone()).ok_or_else(|| ActionError::NotBijection(g.name.clone()))?;
            let mut images = g.vertex_map.clone();
            images.extend((nv..degree).map(|x| x as u32));
            if let Some(n) = g.order {
                if n == 0 {
                    return Err(ActionError::ZeroOrder(g.name.clone()));
                }
                let vo = vertex_perm.order();
                if n % vo != 0 {
                    return Err(ActionError::OrderMismatch {
                        name: g.name.clone(),
                        vertex_order: vo,
                        declared: n,
                    });
                }
                for i in 0..n {
                    images[offset + i] = (offset + (i + 1) % n) as u32;
                }
                offset += n;
            }
            perms.push(Permutation(images));
        }
        let group = group_closure(degree, &perms, max_order)?;
        Self::new(complex, group, generators.into_iter().map(|g| g.name).collect())
    }

    /// Checks that every generator preserves the vertex range and maps
    /// simplices to simplices.
    pub fn new(
        complex: SimplicialComplex,
        group: FiniteGroup,
        generator_names: Vec<String>,
    ) -> Result<Self, ActionError> {
        let nv = complex.vertex_count();
        for (pos, gi) in group.generators().iter().enumerate() {
            let name = generator_names.get(pos).cloned().unwrap_or_else(|| format!("#{pos}"));
            let p = group.element(*gi);
            if p.degree() < nv {
                return Err(ActionError::DegreeMismatch {
                    name,
                    expected: nv,
                    got: p.degree(),
                });
            }
            if p.images()[..nv].iter().any(|x| *x as usize >= nv) {
                return Err(ActionError::LeavesComplex(name));
            }
            for s in complex.iter() {
                let image = Simplex::from_image(s.vertices().iter().map(|v| p.apply(*v)).collect()).unwrap();
                if !complex.contains(&image) {
                    return Err(ActionError::NotSimplicial {
                        generator: name,
                        simplex: complex.simplex_name(s),
                    });
                }
            }
        }
        Ok(GroupAction {
            complex,
            group,
            generator_names,
            certified: false,
        })
    }

    /// `Z/n` acting trivially on `complex`.
    pub fn trivial_cyclic(complex: SimplicialComplex, n: usize) -> Result<Self, ActionError> {
        let id = (0..complex.vertex_count() as VertexId).collect();
        Self::from_generators(
            complex,
            vec![Generator {
                name: "s".into(),
                vertex_map: id,
                order: Some(n),
            }],
            DEFAULT_MAX_GROUP_ORDER,
        )
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    /// True once [`regularize`] has produced this action.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn act(&self, g: usize, v: VertexId) -> VertexId {
        self.group.element(g).apply(v)
    }

    pub fn act_on_simplex(&self, g: usize, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|v| self.act(g, *v)).collect()).unwrap()
    }

    /// The vertex map of element `g`.
    pub fn element_map(&self, g: usize) -> SimplicialMap {
        let images = (0..self.complex.vertex_count() as VertexId).map(|v| self.act(g, v)).collect();
        SimplicialMap::new(&self.complex, images).expect("group elements act simplicially")
    }

    /// Word in generator names, `e` for the identity.
    pub fn element_name(&self, g: usize) -> String {
        let w = self.group.word(g);
        if w.is_empty() {
            return "e".to_string();
        }
        w.iter()
            .map(|i| self.generator_names.get(*i).map_or("?", String::as_str))
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn subgroup_name(&self, h: &Subgroup) -> String {
        if h.is_trivial() {
            return "<e>".into();
        }
        let gens: Vec<String> = h.generators().iter().map(|g| self.element_name(*g)).collect();
        format!("<{}>", gens.join(","))
    }
}

/// Every element that maps a simplex onto itself fixes it vertexwise.
pub fn is_regular(a: &GroupAction) -> bool {
    for g in 1..a.group.order() {
        for s in a.complex.iter() {
            let image = a.act_on_simplex(g, s);
            if &image == s && s.vertices().iter().any(|v| a.act(g, *v) != *v) {
                return false;
            }
        }
    }
    true
}

fn subdivide_action(complex: &SimplicialComplex, group: &FiniteGroup) -> (SimplicialComplex, FiniteGroup) {
    let nv = complex.vertex_count();
    let (sd, origin) = barycentric_subdivision_with_origin(complex);
    let position: BTreeMap<&Simplex, u32> = origin.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
    let new_nv = sd.vertex_count();
    let aux = group.degree() - nv;
    let induced = group.relabel(new_nv + aux, |p| {
        let mut images: Vec<u32> = origin
            .iter()
            .map(|s| {
                let image = Simplex::new(s.vertices().iter().map(|v| p.apply(*v)).collect()).unwrap();
                position[&image]
            })
            .collect();
        images.extend(p.images()[nv..].iter().map(|x| *x - nv as u32 + new_nv as u32));
        Permutation(images)
    });
    (sd, induced)
}

/// The induced action on the barycentric subdivision. Subdividing keeps a
/// regular action regular, so certification carries over.
pub fn subdivide(a: &GroupAction) -> GroupAction {
    let (complex, group) = subdivide_action(&a.complex, &a.group);
    GroupAction {
        complex,
        group,
        generator_names: a.generator_names.clone(),
        certified: a.certified,
    }
}

/// The induced action on the second barycentric subdivision, certified
/// regular. Already certified actions are returned unchanged.
pub fn regularize(a: &GroupAction) -> Result<GroupAction, ActionError> {
    if a.certified {
        return Ok(a.clone());
    }
    let (c1, g1) = subdivide_action(&a.complex, &a.group);
    let (c2, g2) = subdivide_action(&c1, &g1);
    let out = GroupAction {
        complex: c2,
        group: g2,
        generator_names: a.generator_names.clone(),
        certified: true,
    };
    if !is_regular(&out) {
        return Err(ActionError::RegularizationFailed);
    }
    Ok(out)
}

fn regular(a: &GroupAction) -> Result<Cow<'_, GroupAction>, ActionError> {
    if a.certified {
        Ok(Cow::Borrowed(a))
    } else {
        regularize(a).map(Cow::Owned)
    }
}

/// Vertices fixed by all of `h`.
pub fn fixed_vertices(a: &GroupAction, h: &Subgroup) -> BTreeSet<VertexId> {
    (0..a.complex.vertex_count() as VertexId)
        .filter(|v| h.generators().iter().all(|g| a.act(*g, *v) == *v))
        .collect()
}

/// Full subcomplex on the vertices fixed by `h`, without regularizing. This
/// is the geometric fixed set only for regular actions.
pub fn fixed_vertex_subcomplex(a: &GroupAction, h: &Subgroup) -> SimplicialComplex {
    a.complex.full_subcomplex(&fixed_vertices(a, h))
}

/// Fixed set of `h`. Uncertified actions are regularized first, in which
/// case the result lives in the double subdivision.
pub fn fixed_subcomplex(a: &GroupAction, h: &Subgroup) -> Result<SimplicialComplex, ActionError> {
    Ok(fixed_vertex_subcomplex(&*regular(a)?, h))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SubgroupScope {
    #[default]
    Conjugacy,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSetRow {
    /// Position of the subgroup in [`FixedSetTable::subgroups`].
    pub class: usize,
    pub component: usize,
    pub complex: SimplicialComplex,
    pub chi: i64,
}

/// Connected components of fixed sets and their Euler characteristics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSetTable {
    pub subgroups: Vec<Subgroup>,
    pub rows: Vec<FixedSetRow>,
}

impl FixedSetTable {
    /// Sum of component Euler characteristics of each subgroup's fixed set.
    pub fn totals(&self) -> Vec<i64> {
        let mut t = vec![0; self.subgroups.len()];
        for r in &self.rows {
            t[r.class] += r.chi;
        }
        t
    }
}

/// Components of the fixed set of `h` in a certified action, tagged `class`.
pub fn component_rows(a: &GroupAction, class: usize, h: &Subgroup) -> Vec<FixedSetRow> {
    let fixed = fixed_vertex_subcomplex(a, h);
    component_vertex_sets(&fixed)
        .iter()
        .enumerate()
        .map(|(i, vs)| {
            let complex = fixed.full_subcomplex(vs);
            let chi = euler_characteristic(&complex);
            FixedSetRow {
                class,
                component: i,
                complex,
                chi,
            }
        })
        .collect()
}

pub fn subgroups_in_scope(g: &FiniteGroup, scope: SubgroupScope, include_trivial: bool) -> Vec<Subgroup> {
    enumerate_subgroups(g, scope == SubgroupScope::Conjugacy)
        .into_iter()
        .filter(|h| include_trivial || !h.is_trivial())
        .collect()
}

/// Fixed-set components for every nontrivial subgroup, one per conjugacy
/// class.
pub fn fixed_components_euler(a: &GroupAction) -> Result<FixedSetTable, ActionError> {
    fixed_components_euler_in(a, SubgroupScope::Conjugacy)
}

pub fn fixed_components_euler_in(a: &GroupAction, scope: SubgroupScope) -> Result<FixedSetTable, ActionError> {
    let a = regular(a)?;
    if a.complex.is_empty() {
        return Ok(FixedSetTable {
            subgroups: Vec::new(),
            rows: Vec::new(),
        });
    }
    let subgroups = subgroups_in_scope(&a.group, scope, false);
    let rows = subgroups
        .iter()
        .enumerate()
        .flat_map(|(i, h)| component_rows(&a, i, h))
        .collect();
    Ok(FixedSetTable { subgroups, rows })
}

/// Lefschetz number of every group element, computed on rational homology
/// of the action's complex.
pub fn lefschetz_numbers(a: &GroupAction) -> Vec<i64> {
    let basis = HomologyBasis::new(&a.complex);
    (0..a.group.order())
        .map(|g| basis.lefschetz_number(&a.element_map(g)))
        .collect()
}
