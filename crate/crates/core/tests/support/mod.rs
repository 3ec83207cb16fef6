#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use incomp_core::corpus::{self, Variant};
use incomp_core::mutate::{apply, candidates, is_embedded};
use incomp_core::solver::PolygonSystem;
use incomp_core::SurfaceComplex;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn corpus_surfaces() -> Vec<(String, SurfaceComplex)> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push((format!("saddle-pair n={n}"), corpus::saddle_pair(n, Variant::Original).unwrap()));
    }
    for n in 2..=3 {
        for v in [Variant::Rerouted, Variant::Doubled, Variant::Raw] {
            out.push((format!("saddle-pair n={n} {}", v.name()), corpus::saddle_pair(n, v).unwrap()));
        }
    }
    for n in 1..=4 {
        out.push((format!("tripod n={n}"), corpus::tripod(n).unwrap()));
    }
    out.push(("collar".into(), corpus::collar()));
    out.push(("collar mutated".into(), corpus::mutated_collar()));
    out
}

/// Applies up to `steps` random mutations, keeping only embedded results.
pub fn mutate_chain(s: &SurfaceComplex, rng: &mut impl Rng, steps: usize) -> Option<SurfaceComplex> {
    let mut cur = s.clone();
    let mut applied = 0;
    for _ in 0..steps {
        let mut cands = candidates(&cur);
        cands.shuffle(rng);
        let next = cands
            .into_iter()
            .filter_map(|m| apply(&cur, m).ok())
            .find(is_embedded);
        match next {
            Some(t) => {
                cur = t;
                applied += 1;
            }
            None => break,
        }
    }
    (applied > 0).then_some(cur)
}

/// Small random polygon system: a few D-edge keys, classes of one to three
/// edges, caps of one or two and sparse conflicts.
pub fn random_system(rng: &mut impl Rng) -> PolygonSystem {
    let keys = rng.gen_range(1..=3);
    let count = rng.gen_range(2..=5);
    let mut classes = Vec::new();
    for i in 0..count {
        let m = if i == 0 { 1 } else { rng.gen_range(1..=3) };
        classes.push((0..m).map(|_| (rng.gen_range(0..keys), rng.gen_bool(0.5))).collect::<Vec<_>>());
    }
    let caps = (0..count).map(|_| rng.gen_range(1..=2)).collect();
    let mut conflicts = BTreeSet::new();
    for a in 0..count {
        for b in a + 1..count {
            if rng.gen_bool(0.15) {
                conflicts.insert((a, b));
            }
        }
    }
    PolygonSystem { classes, caps, conflicts }
}

/// Twice the Euler characteristic of a disk built from polygons with the
/// given D-edge counts, from the pull-back graph. The graph is 3-valent;
/// a polygon with `m` D-edges has `2m` corners, each shared with one other
/// polygon, so it contributes `m` vertices, `3m / 2` edges and one face.
pub fn pullback_twice_euler(sizes: &BTreeMap<usize, usize>) -> i64 {
    sizes
        .iter()
        .map(|(&m, &n)| {
            let (m, n) = (m as i64, n as i64);
            (2 * m - 3 * m + 2) * n
        })
        .sum()
}

/// Feasibility by enumerating every multiset of classes within the caps
/// that satisfies the Euler and edge-balance equations, then every perfect
/// matching of D-edges, looking for a connected gluing.
pub fn brute_force_feasible(sys: &PolygonSystem) -> bool {
    let n = sys.classes.len();
    let mut counts = vec![0usize; n];
    loop {
        if check_multiset(sys, &counts) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            if counts[i] < sys.caps[i] {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

fn check_multiset(sys: &PolygonSystem, counts: &[usize]) -> bool {
    let present: Vec<usize> = (0..counts.len()).filter(|&c| counts[c] > 0).collect();
    if !present.iter().any(|&c| sys.classes[c].len() == 1) {
        return false;
    }
    for (i, &a) in present.iter().enumerate() {
        for &b in &present[i + 1..] {
            if sys.conflicts.contains(&(a, b)) {
                return false;
            }
        }
    }
    let mut sizes = BTreeMap::new();
    for &c in &present {
        *sizes.entry(sys.classes[c].len()).or_insert(0) += counts[c];
    }
    if pullback_twice_euler(&sizes) != 2 {
        return false;
    }
    // edge balance: every key has as many A sides as B sides
    let mut ends: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    let mut inst = 0;
    for &c in &present {
        for _ in 0..counts[c] {
            for &(k, b) in &sys.classes[c] {
                let e = ends.entry(k).or_default();
                if b {
                    e.1.push(inst);
                } else {
                    e.0.push(inst);
                }
            }
            inst += 1;
        }
    }
    if ends.values().any(|(a, b)| a.len() != b.len()) {
        return false;
    }
    let groups: Vec<(Vec<usize>, Vec<usize>)> = ends.into_values().collect();
    let mut pairs = Vec::new();
    any_connected_matching(&groups, 0, &mut pairs, inst)
}

fn any_connected_matching(
    groups: &[(Vec<usize>, Vec<usize>)],
    g: usize,
    pairs: &mut Vec<(usize, usize)>,
    instances: usize,
) -> bool {
    if g == groups.len() {
        return connected(instances, pairs);
    }
    let (a, b) = &groups[g];
    let mut perm: Vec<usize> = (0..b.len()).collect();
    permutations(&mut perm, 0, &mut |p| {
        let base = pairs.len();
        for (i, &j) in p.iter().enumerate() {
            pairs.push((a[i], b[j]));
        }
        let ok = any_connected_matching(groups, g + 1, pairs, instances);
        pairs.truncate(base);
        ok
    })
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == v.len() {
        return f(v);
    }
    for i in k..v.len() {
        v.swap(k, i);
        if permutations(v, k + 1, f) {
            v.swap(k, i);
            return true;
        }
        v.swap(k, i);
    }
    false
}

fn connected(n: usize, pairs: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(x, y) in pairs {
        adj[x].push(y);
        adj[y].push(x);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
