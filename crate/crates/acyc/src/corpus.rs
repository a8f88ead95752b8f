//! The fixture corpus: generators for every shipped input file.
//!
//! The files under `fixtures/` are the frozen output of [`fixtures`]; the
//! `corpus` integration test checks them byte for byte and runs the
//! independent oracles, and `cargo run -p acyc --example gen_fixtures`
//! rewrites them.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::{env, fs, io};

use acyc_core::constructions::MirroredComplex;
use acyc_core::simplicial::{barycentric_subdivision, join, SimplicialComplex};

use crate::formats::{to_pretty, ActionFile, ComplexFile, ComplexRef, GeneratorFile, GroupFile, MirroredFile};

pub const FIXTURES_ENV: &str = "ACYC_FIXTURES";

/// The corpus directory: `$ACYC_FIXTURES` if set, else the one shipped with
/// the crate sources.
pub fn corpus_dir() -> PathBuf {
    match env::var_os(FIXTURES_ENV) {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => shipped_dir(),
    }
}

pub fn shipped_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Complex,
    Mirrored,
    Action,
    Group,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub kind: FixtureKind,
    pub contents: String,
}

impl Fixture {
    pub fn file_name(&self) -> String {
        format!("{}.json", self.name)
    }
}

pub fn polygon(n: usize) -> SimplicialComplex {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let facets: Vec<[&String; 2]> = (0..n).map(|i| [&labels[i], &labels[(i + 1) % n]]).collect();
    SimplicialComplex::from_facets(&labels, &facets).expect("polygon")
}

/// Boundary of the cross-polytope in R^3.
pub fn octahedron() -> SimplicialComplex {
    let mut facets = Vec::new();
    for x in ["x+", "x-"] {
        for y in ["y+", "y-"] {
            for z in ["z+", "z-"] {
                facets.push([x, y, z]);
            }
        }
    }
    SimplicialComplex::from_labelled_facets(&facets).expect("octahedron")
}

/// The 6-vertex real projective plane (hemi-icosahedron).
pub fn rp2() -> SimplicialComplex {
    let t = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ];
    let facets: Vec<Vec<String>> = t.iter().map(|f| f.iter().map(|v| v.to_string()).collect()).collect();
    SimplicialComplex::from_labelled_facets(&facets).expect("rp2")
}

/// Suspension of the subdivided projective plane: the mapping cone of a
/// degree-2 self-map of the 2-sphere, as a flag complex.
pub fn mapping_cone() -> SimplicialComplex {
    let poles = SimplicialComplex::from_labelled_facets(&[["north"], ["south"]]).expect("poles");
    join(&barycentric_subdivision(&rp2()), &poles)
}

/// The 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
pub fn torus7() -> SimplicialComplex {
    let facets: Vec<Vec<String>> = (0..7)
        .flat_map(|i| [[i, i + 1, i + 3], [i, i + 2, i + 3]])
        .map(|f| f.iter().map(|v| (v % 7).to_string()).collect())
        .collect();
    SimplicialComplex::from_labelled_facets(&facets).expect("torus")
}

/// A figure-eight through `x`, an isolated-in-the-fixed-set point `p`, and
/// two vertices `a`, `b` each joined to `p` and `x`.
pub fn figure_eight_with_handles() -> SimplicialComplex {
    SimplicialComplex::from_labelled_facets(&[
        ["x", "y1"], ["y1", "y2"], ["x", "y2"],
        ["x", "z1"], ["z1", "z2"], ["x", "z2"],
        ["a", "p"], ["a", "x"], ["b", "p"], ["b", "x"],
    ])
    .expect("indeterminate complex")
}

fn complex(c: &SimplicialComplex) -> String {
    to_pretty(&ComplexFile::from_complex(c))
}

fn map<const N: usize>(pairs: [(&str, &str); N]) -> BTreeMap<String, String> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn map_fn(c: &SimplicialComplex, f: impl Fn(&str) -> String) -> BTreeMap<String, String> {
    c.labels()
        .iter()
        .filter_map(|l| {
            let image = f(l);
            (image != *l).then(|| (l.clone(), image))
        })
        .collect()
}

fn gen(name: &str, map: BTreeMap<String, String>) -> GeneratorFile {
    GeneratorFile {
        name: name.into(),
        map,
        order: None,
    }
}

fn action(complex: ComplexRef, generators: Vec<GeneratorFile>) -> String {
    to_pretty(&ActionFile { complex, generators })
}

fn file(name: &str) -> ComplexRef {
    ComplexRef::File(format!("{name}.json"))
}

fn flip_axes(l: &str, axes: &str) -> String {
    let (axis, sign) = l.split_at(1);
    if axes.contains(axis) {
        format!("{axis}{}", if sign == "+" { "-" } else { "+" })
    } else {
        l.to_string()
    }
}

fn cyclic_shift(n: usize, k: usize) -> impl Fn(&str) -> String {
    move |l| ((l.parse::<usize>().expect("numeric label") + k) % n).to_string()
}

fn negate(n: usize) -> impl Fn(&str) -> String {
    move |l| ((n - l.parse::<usize>().expect("numeric label")) % n).to_string()
}

fn mirrored(space: &SimplicialComplex, boundary: Vec<Vec<String>>) -> String {
    to_pretty(&MirroredFile {
        vertices: space.labels().to_vec(),
        facets: space.labelled_facets(),
        boundary_facets: boundary,
    })
}

/// Every fixture, in a fixed order.
pub fn fixtures() -> Vec<Fixture> {
    use FixtureKind::*;
    let hexagon = polygon(6);
    let pentagon = polygon(5);
    let oct = octahedron();
    let torus = torus7();
    let hollow = SimplicialComplex::from_labelled_facets(&[["a", "b"], ["b", "c"], ["a", "c"]]).expect("triangle");
    let full = SimplicialComplex::from_labelled_facets(&[["a", "b", "c"]]).expect("triangle");
    let disk = MirroredComplex::cone_over(&pentagon).expect("pentagon is flag");
    let trivial = |n: usize| {
        action(
            file("pentagon"),
            vec![GeneratorFile {
                name: "t".into(),
                map: BTreeMap::new(),
                order: Some(n),
            }],
        )
    };

    let out = vec![
        ("octahedron", Complex, complex(&oct)),
        ("hexagon", Complex, complex(&hexagon)),
        ("pentagon", Complex, complex(&pentagon)),
        ("rp2", Complex, complex(&rp2())),
        ("mapping-cone", Complex, complex(&mapping_cone())),
        ("torus", Complex, complex(&torus)),
        ("pentagon-disk", Mirrored, mirrored(disk.input(), pentagon.labelled_facets())),
        (
            "interval-path",
            Mirrored,
            mirrored(&SimplicialComplex::from_labelled_facets(&[["a", "apex"]]).expect("edge"), vec![vec!["a".into()]]),
        ),
        (
            "interval-circle",
            Mirrored,
            mirrored(
                &SimplicialComplex::from_labelled_facets(&[["a", "apex"], ["apex", "b"]]).expect("path"),
                vec![vec!["a".into()], vec!["b".into()]],
            ),
        ),
        ("hexagon-reflection", Action, action(file("hexagon"), vec![gen("r", map_fn(&hexagon, negate(6)))])),
        ("hexagon-rotation", Action, action(file("hexagon"), vec![gen("t", map_fn(&hexagon, cyclic_shift(6, 1)))])),
        (
            "hexagon-dihedral",
            Action,
            action(
                file("hexagon"),
                vec![gen("t", map_fn(&hexagon, cyclic_shift(6, 1))), gen("r", map_fn(&hexagon, negate(6)))],
            ),
        ),
        ("pentagon-trivial-2", Action, trivial(2)),
        ("pentagon-trivial-3", Action, trivial(3)),
        ("pentagon-trivial-5", Action, trivial(5)),
        (
            "octahedron-halfturn",
            Action,
            action(file("octahedron"), vec![gen("z", map_fn(&oct, |l| flip_axes(l, "xy")))]),
        ),
        (
            "octahedron-klein",
            Action,
            action(
                file("octahedron"),
                vec![gen("z", map_fn(&oct, |l| flip_axes(l, "xy"))), gen("x", map_fn(&oct, |l| flip_axes(l, "yz")))],
            ),
        ),
        (
            "octahedron-antipodal",
            Action,
            action(file("octahedron"), vec![gen("a", map_fn(&oct, |l| flip_axes(l, "xyz")))]),
        ),
        (
            "square-halfturn",
            Action,
            action(
                ComplexRef::Inline(ComplexFile::from_complex(&polygon(4))),
                vec![gen("h", map_fn(&polygon(4), cyclic_shift(4, 2)))],
            ),
        ),
        (
            "triangle-s3",
            Action,
            action(
                ComplexRef::Inline(ComplexFile::from_complex(&hollow)),
                vec![gen("u", map([("a", "b"), ("b", "a")])), gen("v", map([("b", "c"), ("c", "b")]))],
            ),
        ),
        (
            "simplex-rotation",
            Action,
            action(
                ComplexRef::Inline(ComplexFile::from_complex(&full)),
                vec![gen("c", map([("a", "b"), ("b", "c"), ("c", "a")]))],
            ),
        ),
        (
            "torus-z3",
            Action,
            action(file("torus"), vec![gen("m", map_fn(&torus, |l| (2 * l.parse::<usize>().unwrap() % 7).to_string()))]),
        ),
        (
            "indeterminate-1",
            Action,
            action(
                ComplexRef::Inline(ComplexFile::from_complex(&figure_eight_with_handles())),
                vec![gen("w", map([("a", "b"), ("b", "a")]))],
            ),
        ),
        ("group-s3", Group, to_pretty(&GroupFile::Named { name: "S3".into() })),
        (
            "group-z2xz2",
            Group,
            to_pretty(&GroupFile::Permutations {
                generators: vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]],
            }),
        ),
    ];
    out.into_iter()
        .map(|(name, kind, contents)| Fixture { name, kind, contents })
        .collect()
}

/// Writes every fixture into `dir`.
pub fn write_corpus(dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    for f in fixtures() {
        fs::write(dir.join(f.file_name()), &f.contents)?;
    }
    Ok(())
}
