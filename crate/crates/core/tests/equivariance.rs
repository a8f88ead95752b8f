//! Group actions, fixed sets and orbit diagrams.

use std::collections::BTreeSet;

use acyc_core::action::{
    conjugate_subgroup, enumerate_subgroups, fixed_components_euler, fixed_vertices, lefschetz_numbers, regularize,
    subdivide, subgroup_generated, Generator, GroupAction, DEFAULT_MAX_GROUP_ORDER,
};
use acyc_core::constructions::equivariant_join;
use acyc_core::groups::small_groups;
use acyc_core::orbit::{fh_verdict, nabla, orbit_category, round_trip, wall_vector, GSet, OrbitCategory};
use acyc_core::simplicial::{euler_characteristic, join, SimplicialComplex, VertexId};
use proptest::prelude::*;

fn polygon(n: usize) -> SimplicialComplex {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let facets: Vec<[String; 2]> = (0..n).map(|i| [labels[i].clone(), labels[(i + 1) % n].clone()]).collect();
    SimplicialComplex::from_facets(&labels, &facets).unwrap()
}

fn octahedron() -> SimplicialComplex {
    let mut facets = Vec::new();
    for x in ["x+", "x-"] {
        for y in ["y+", "y-"] {
            for z in ["z+", "z-"] {
                facets.push([x, y, z]);
            }
        }
    }
    SimplicialComplex::from_labelled_facets(&facets).unwrap()
}

fn gen(name: &str, map: Vec<VertexId>) -> Generator {
    Generator {
        name: name.into(),
        vertex_map: map,
        order: None,
    }
}

fn by_labels(c: &SimplicialComplex, f: impl Fn(&str) -> String) -> Vec<VertexId> {
    (0..c.vertex_count() as VertexId).map(|v| c.vertex_id(&f(c.label(v))).unwrap()).collect()
}

fn flip(l: &str, axes: &[char]) -> String {
    let mut s: Vec<char> = l.chars().collect();
    if axes.contains(&s[0]) {
        s[1] = if s[1] == '+' { '-' } else { '+' };
    }
    s.into_iter().collect()
}

fn actions() -> Vec<(&'static str, GroupAction)> {
    let hex = polygon(6);
    let rot = |k: usize| (0..6).map(|i| ((i + k) % 6) as VertexId).collect::<Vec<_>>();
    let refl: Vec<VertexId> = (0..6).map(|i| ((6 - i) % 6) as VertexId).collect();
    let oct = octahedron();
    let half_z = by_labels(&oct, |l| flip(l, &['x', 'y']));
    let half_x = by_labels(&oct, |l| flip(l, &['y', 'z']));
    let antipodal = by_labels(&oct, |l| flip(l, &['x', 'y', 'z']));
    let tri = SimplicialComplex::from_labelled_facets(&[["a", "b"], ["b", "c"], ["a", "c"]]).unwrap();
    let max = DEFAULT_MAX_GROUP_ORDER;
    vec![
        ("hexagon reflection", GroupAction::from_generators(hex.clone(), vec![gen("r", refl.clone())], max).unwrap()),
        ("hexagon rotation", GroupAction::from_generators(hex.clone(), vec![gen("t", rot(1))], max).unwrap()),
        (
            "hexagon dihedral",
            GroupAction::from_generators(hex, vec![gen("t", rot(1)), gen("r", refl)], max).unwrap(),
        ),
        (
            "triangle S3",
            GroupAction::from_generators(tri, vec![gen("a", vec![1, 0, 2]), gen("b", vec![0, 2, 1])], max).unwrap(),
        ),
        (
            "octahedron Klein four",
            GroupAction::from_generators(oct.clone(), vec![gen("z", half_z), gen("x", half_x)], max).unwrap(),
        ),
        ("octahedron antipodal", GroupAction::from_generators(oct, vec![gen("a", antipodal)], max).unwrap()),
        ("pentagon trivial Z/3", GroupAction::trivial_cyclic(polygon(5), 3).unwrap()),
    ]
}

#[test]
fn lefschetz_numbers_are_fixed_set_euler_characteristics() {
    for (name, a) in actions() {
        let r = regularize(&a).unwrap();
        let l = lefschetz_numbers(&r);
        for g in 0..r.group().order() {
            let h = subgroup_generated(r.group(), &[g]);
            let fixed = r.complex().full_subcomplex(&fixed_vertices(&r, &h));
            assert_eq!(l[g], euler_characteristic(&fixed), "{name}, element {}", r.element_name(g));
        }
    }
}

#[test]
fn fixed_sets_shrink_as_subgroups_grow() {
    for (name, a) in actions() {
        let r = regularize(&a).unwrap();
        let subs = enumerate_subgroups(r.group(), false);
        for h in &subs {
            for k in &subs {
                if h.is_subgroup_of(k) {
                    assert!(fixed_vertices(&r, k).is_subset(&fixed_vertices(&r, h)), "{name}");
                }
            }
        }
    }
}

#[test]
fn fixed_sets_are_conjugation_equivariant() {
    for (name, a) in actions() {
        let r = regularize(&a).unwrap();
        for h in enumerate_subgroups(r.group(), false) {
            let fh = fixed_vertices(&r, &h);
            for g in 0..r.group().order() {
                let moved: BTreeSet<VertexId> = fh.iter().map(|v| r.act(g, *v)).collect();
                assert_eq!(fixed_vertices(&r, &conjugate_subgroup(r.group(), &h, g)), moved, "{name}");
            }
        }
    }
}

#[test]
fn sufficiency_excludes_cyclic_obstructions() {
    for (name, a) in actions() {
        let analysis = fh_verdict(&a).unwrap();
        if analysis.verdict.keyword() == "sufficient" {
            assert!(analysis.cyclic_chi.iter().skip(1).all(|c| *c == 0), "{name}");
        }
        if analysis.verdict.keyword() != "obstructed" {
            let table = fixed_components_euler(&a).unwrap();
            for (h, total) in table.subgroups.iter().zip(table.totals()) {
                if h.generators().len() == 1 {
                    assert_eq!(total, 0, "{name}");
                }
            }
        }
    }
}

#[test]
fn wall_vectors_survive_further_subdivision() {
    for (name, a) in actions() {
        let r = regularize(&a).unwrap();
        let once = wall_vector(&r).unwrap();
        let twice = wall_vector(&subdivide(&r)).unwrap();
        let profile = |w: &acyc_core::orbit::WallVector| {
            let mut v: Vec<(usize, i64)> = w.objects.iter().zip(&w.coefficients).map(|(o, c)| (o.class, *c)).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(profile(&once), profile(&twice), "{name}");
    }
}

#[test]
fn join_fixed_sets_are_joins_of_fixed_sets() {
    let acts = actions();
    let refl = &acts[0].1;
    let anti = &acts[5].1;
    let j = equivariant_join(refl, anti).unwrap();
    let h = subgroup_generated(j.group(), &[1]);
    let fixed = j.complex().full_subcomplex(&fixed_vertices(&j, &h));
    let fa = refl.complex().full_subcomplex(&fixed_vertices(refl, &subgroup_generated(refl.group(), &[1])));
    let fb = anti.complex().full_subcomplex(&fixed_vertices(anti, &subgroup_generated(anti.group(), &[1])));
    assert_eq!(fixed, join(&fa, &fb));
}

/// Relabels vertices through `perm` of the label list and transports the
/// action along the bijection.
fn relabel(a: &GroupAction, perm: &[usize]) -> GroupAction {
    let c = a.complex();
    let nv = c.vertex_count();
    let new_label = |v: VertexId| format!("w{}", perm[v as usize]);
    let labels: Vec<String> = (0..nv as VertexId).map(new_label).collect();
    let facets: Vec<Vec<String>> =
        c.facets().iter().map(|f| f.vertices().iter().map(|v| new_label(*v)).collect()).collect();
    let d = SimplicialComplex::from_facets(&labels, &facets).unwrap();
    let old_of: Vec<VertexId> =
        (0..nv as VertexId).map(|w| labels.iter().position(|l| l == d.label(w)).unwrap() as VertexId).collect();
    let gens = a
        .group()
        .generators()
        .iter()
        .zip(a.generator_names())
        .map(|(g, name)| {
            let p = a.group().element(*g);
            let map = (0..nv)
                .map(|w| d.vertex_id(&new_label(p.apply(old_of[w]))).unwrap())
                .collect();
            Generator {
                name: name.clone(),
                vertex_map: map,
                order: (a.group().degree() > nv).then(|| a.group().element_order(*g)),
            }
        })
        .collect();
    GroupAction::from_generators(d, gens, DEFAULT_MAX_GROUP_ORDER).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdicts_ignore_vertex_names(which in 0usize..7, seed in prop::collection::vec(any::<u32>(), 8)) {
        let (_, a) = actions().swap_remove(which);
        let nv = a.complex().vertex_count();
        let mut perm: Vec<usize> = (0..nv).collect();
        perm.sort_by_key(|i| (seed[i % seed.len()].rotate_left(*i as u32), *i));
        let b = relabel(&a, &perm);
        prop_assert_eq!(b.group().order(), a.group().order());
        prop_assert_eq!(fh_verdict(&a).unwrap().verdict.keyword(), fh_verdict(&b).unwrap().verdict.keyword());
        let totals = |x: &GroupAction| {
            let mut t = fixed_components_euler(x).unwrap().totals();
            t.sort_unstable();
            t
        };
        prop_assert_eq!(totals(&a), totals(&b));
    }

    #[test]
    fn g_sets_round_trip(which in 0usize..24, picks in prop::collection::vec(any::<prop::sample::Index>(), 0..6)) {
        let (_, g) = small_groups(12).swap_remove(which);
        let cat: OrbitCategory = orbit_category(&g);
        let mut s = GSet::empty(&g);
        for p in picks {
            let h = &cat.objects()[p.index(cat.object_count())];
            let orbit = GSet::coset_space(&g, h);
            if s.size() + orbit.size() <= 12 {
                s = s.disjoint_union(&orbit);
            }
        }
        let (back, eval) = round_trip(&s, &cat, &nabla(&cat));
        prop_assert!(back.is_isomorphism(&s, &eval));
    }
}
