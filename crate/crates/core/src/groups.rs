//! A small catalogue of finite groups as permutation groups.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::action::{group_closure, FiniteGroup, Permutation, DEFAULT_MAX_GROUP_ORDER};

fn closure(degree: usize, gens: Vec<Vec<u32>>) -> FiniteGroup {
    let gens: Vec<Permutation> = gens.into_iter().map(|g| Permutation::new(g).expect("permutation")).collect();
    group_closure(degree, &gens, DEFAULT_MAX_GROUP_ORDER).expect("small group")
}

pub fn trivial() -> FiniteGroup {
    closure(1, Vec::new())
}

/// Z/n acting on n points by rotation.
pub fn cyclic(n: usize) -> FiniteGroup {
    closure(n, vec![(0..n).map(|i| ((i + 1) % n) as u32).collect()])
}

/// Symmetries of the regular n-gon (order 2n), n ≥ 3.
pub fn dihedral(n: usize) -> FiniteGroup {
    closure(
        n,
        vec![
            (0..n).map(|i| ((i + 1) % n) as u32).collect(),
            (0..n).map(|i| ((n - i) % n) as u32).collect(),
        ],
    )
}

pub fn alternating4() -> FiniteGroup {
    closure(4, vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

/// ⟨a, x | a^{2m} = 1, x² = a^m, xax⁻¹ = a⁻¹⟩ of order 4m, in its left
/// regular representation. `m = 2` is the quaternion group.
pub fn dicyclic(m: usize) -> FiniteGroup {
    let n = 2 * m;
    let index = |i: usize, j: usize| (j * n + i) as u32;
    let mul = |(i, j): (usize, usize), (k, l): (usize, usize)| -> (usize, usize) {
        let k = if j == 1 { (n - k) % n } else { k };
        let extra = if j == 1 && l == 1 { m } else { 0 };
        ((i + k + extra) % n, j ^ l)
    };
    let elements: Vec<(usize, usize)> = (0..2).flat_map(|j| (0..n).map(move |i| (i, j))).collect();
    let left = |g: (usize, usize)| -> Vec<u32> {
        elements
            .iter()
            .map(|e| {
                let (i, j) = mul(g, *e);
                index(i, j)
            })
            .collect()
    };
    closure(2 * n, vec![left((1, 0)), left((0, 1))])
}

/// Acts on the disjoint union of the two point sets.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (da, db) = (a.degree(), b.degree());
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut p: Vec<u32> = a.element(*g).images().to_vec();
        p.extend((da..da + db).map(|x| x as u32));
        gens.push(p);
    }
    for g in b.generators() {
        let mut p: Vec<u32> = (0..da as u32).collect();
        p.extend(b.element(*g).images().iter().map(|x| x + da as u32));
        gens.push(p);
    }
    closure(da + db, gens)
}

/// One group of each isomorphism type of order at most `max_order`
/// (supported up to 12), with names.
pub fn small_groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
    let z = cyclic;
    let all: Vec<(String, FiniteGroup)> = vec![
        ("1".into(), trivial()),
        ("Z2".into(), z(2)),
        ("Z3".into(), z(3)),
        ("Z4".into(), z(4)),
        ("Z2xZ2".into(), direct_product(&z(2), &z(2))),
        ("Z5".into(), z(5)),
        ("Z6".into(), z(6)),
        ("S3".into(), dihedral(3)),
        ("Z7".into(), z(7)),
        ("Z8".into(), z(8)),
        ("Z4xZ2".into(), direct_product(&z(4), &z(2))),
        ("Z2xZ2xZ2".into(), direct_product(&direct_product(&z(2), &z(2)), &z(2))),
        ("D4".into(), dihedral(4)),
        ("Q8".into(), dicyclic(2)),
        ("Z9".into(), z(9)),
        ("Z3xZ3".into(), direct_product(&z(3), &z(3))),
        ("Z10".into(), z(10)),
        ("D5".into(), dihedral(5)),
        ("Z11".into(), z(11)),
        ("Z12".into(), z(12)),
        ("Z6xZ2".into(), direct_product(&z(6), &z(2))),
        ("A4".into(), alternating4()),
        ("D6".into(), dihedral(6)),
        ("Dic3".into(), dicyclic(3)),
    ];
    all.into_iter().filter(|(_, g)| g.order() <= max_order).collect()
}

/// Looks up a catalogue group by name, e.g. `Z5`, `D4`, `Q8`, `Z2xZ2`.
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    if let Some(n) = name.strip_prefix('Z').and_then(|r| r.parse::<usize>().ok()) {
        return (n >= 1).then(|| cyclic(n));
    }
    if let Some(n) = name.strip_prefix('D').and_then(|r| r.parse::<usize>().ok()) {
        return (n >= 3).then(|| dihedral(n));
    }
    small_groups(12).into_iter().find(|(n, _)| n == name).map(|(_, g)| g).or_else(|| {
        let parts: Vec<&str> = name.split('x').collect();
        if parts.len() < 2 {
            return None;
        }
        let mut g = by_name(parts[0])?;
        for p in &parts[1..] {
            g = direct_product(&g, &by_name(&format!("Z{}", p.trim_start_matches('Z')))?);
        }
        Some(g)
    })
}
