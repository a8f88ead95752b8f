//! Independent oracles over raw fixture data (label lists), sharing no
//! code with the library's algorithms.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::{Path, PathBuf};

use serde_json::Value;

pub type Cell = Vec<String>;

pub fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

pub fn read_json(name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

fn labels(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

/// Facets of a complex object, or of the complex an action file points at.
pub fn raw_facets(complex: &Value) -> Vec<Cell> {
    let complex = match complex.as_str() {
        Some(file) => read_json(file.trim_end_matches(".json")),
        None => complex.clone(),
    };
    complex["facets"].as_array().unwrap().iter().map(labels).collect()
}

/// All nonempty faces, sorted within and across.
pub fn all_cells(facets: &[Cell]) -> BTreeSet<Cell> {
    let mut out = BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort();
        for mask in 1u32..(1 << f.len()) {
            out.insert((0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i].clone()).collect());
        }
    }
    out
}

pub fn euler(cells: &BTreeSet<Cell>) -> i64 {
    cells.iter().map(|c| if c.len() % 2 == 1 { 1 } else { -1 }).sum()
}

fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..m.len()).find(|r| !m[*r][c].is_multiple_of(p)) else { continue };
        m.swap(rank, r);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + p * p - f * m[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Reduced Betti numbers over GF(p), p prime, degrees 0..=dim.
pub fn reduced_betti_mod_p(facets: &[Cell], p: u64) -> Vec<usize> {
    let cells = all_cells(facets);
    let dim = cells.iter().map(Vec::len).max().unwrap() - 1;
    let by_dim: Vec<Vec<&Cell>> = (0..=dim).map(|k| cells.iter().filter(|c| c.len() == k + 1).collect()).collect();
    // rank of the boundary from degree k to k - 1; degree 0 maps onto the
    // augmentation.
    let boundary_rank = |k: usize| -> usize {
        if k == 0 {
            return usize::from(!by_dim[0].is_empty());
        }
        let index: BTreeMap<&Cell, usize> = by_dim[k - 1].iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut m = vec![vec![0u64; by_dim[k].len()]; by_dim[k - 1].len()];
        for (j, c) in by_dim[k].iter().enumerate() {
            for i in 0..c.len() {
                let mut face = (*c).clone();
                face.remove(i);
                m[index[&face]][j] = if i % 2 == 0 { 1 } else { p - 1 };
            }
        }
        rank_mod_p(m, p)
    };
    let ranks: Vec<usize> = (0..=dim + 1).map(|k| if k <= dim { boundary_rank(k) } else { 0 }).collect();
    (0..=dim).map(|k| by_dim[k].len() - ranks[k] - ranks[k + 1]).collect()
}

/// Every clique of the 1-skeleton spans a cell.
pub fn is_flag_by_cliques(facets: &[Cell]) -> bool {
    let cells = all_cells(facets);
    let vertices: Vec<&String> = cells.iter().filter(|c| c.len() == 1).map(|c| &c[0]).collect();
    let edge = |a: &String, b: &String| {
        let mut e = vec![a.clone(), b.clone()];
        e.sort();
        cells.contains(&e)
    };
    // Extend cliques one vertex at a time; a clique that is not a cell
    // refutes flagness, and a non-cell has no cell supersets.
    let mut frontier: Vec<Vec<usize>> = (0..vertices.len()).map(|i| vec![i]).collect();
    while let Some(c) = frontier.pop() {
        for j in c.last().unwrap() + 1..vertices.len() {
            if c.iter().all(|i| edge(vertices[*i], vertices[j])) {
                let mut d = c.clone();
                d.push(j);
                let mut labels: Vec<String> = d.iter().map(|i| vertices[*i].clone()).collect();
                labels.sort();
                if !cells.contains(&labels) {
                    return false;
                }
                frontier.push(d);
            }
        }
    }
    true
}

pub type VertexMap = BTreeMap<String, String>;

/// Generator maps of an action file, extended by the identity.
pub fn raw_generators(action: &Value, vertices: &BTreeSet<String>) -> Vec<VertexMap> {
    action["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| {
            let mut m: VertexMap = vertices.iter().map(|v| (v.clone(), v.clone())).collect();
            for (k, v) in g["map"].as_object().unwrap() {
                m.insert(k.clone(), v.as_str().unwrap().to_string());
            }
            m
        })
        .collect()
}

/// Closure of vertex maps under composition.
pub fn closure(gens: &[VertexMap], vertices: &BTreeSet<String>) -> Vec<VertexMap> {
    let id: VertexMap = vertices.iter().map(|v| (v.clone(), v.clone())).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: VertexMap = x.iter().map(|(k, v)| (k.clone(), g[v].clone())).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Euler characteristic of the geometric fixed set of a simplicial
/// automorphism: each invariant cell contributes the open cell of points
/// with constant barycentric coordinates on vertex orbits, of dimension
/// (number of orbits) - 1.
pub fn fixed_chi_by_cells(cells: &BTreeSet<Cell>, g: &VertexMap) -> i64 {
    let mut chi = 0;
    for c in cells {
        let mut image: Vec<String> = c.iter().map(|v| g[v].clone()).collect();
        image.sort();
        if image != *c {
            continue;
        }
        let mut orbits = 0;
        let mut done = BTreeSet::new();
        for v in c {
            if done.insert(v.clone()) {
                orbits += 1;
                let mut w = g[v].clone();
                while done.insert(w.clone()) {
                    w = g[&w].clone();
                }
            }
        }
        chi += if orbits % 2 == 1 { 1 } else { -1 };
    }
    chi
}

/// Components of the subcomplex spanned by `vertices`, with their Euler
/// characteristics, sorted.
pub fn spanned_component_chis(cells: &BTreeSet<Cell>, vertices: &BTreeSet<String>) -> Vec<i64> {
    let sub: Vec<&Cell> = cells.iter().filter(|c| c.iter().all(|v| vertices.contains(v))).collect();
    let mut parent: BTreeMap<&String, &String> = vertices.iter().map(|v| (v, v)).collect();
    fn find<'a>(p: &BTreeMap<&'a String, &'a String>, mut x: &'a String) -> &'a String {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for c in &sub {
        for w in c.windows(2) {
            let (a, b) = (find(&parent, &w[0]), find(&parent, &w[1]));
            parent.insert(a, b);
        }
    }
    let mut chis: BTreeMap<&String, i64> = BTreeMap::new();
    for c in &sub {
        *chis.entry(find(&parent, &c[0])).or_default() += if c.len() % 2 == 1 { 1 } else { -1 };
    }
    let mut out: Vec<i64> = chis.into_values().collect();
    out.sort_unstable();
    out
}
