//! Assembles polygons into a compressing disk.
//!
//! Every D-edge of an assembled disk is glued to exactly one D-edge on the
//! other side of the same disk, and the gluing pattern is a tree, so the
//! Euler characteristic is 1 by construction. The search grows trees from
//! bigon seeds, attaching one new polygon instance to an open D-edge at a
//! time, with per-class multiplicity caps and a lower bound on the number of
//! instances still needed to close every open edge.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{SurfaceComplex, UnionFind};
use crate::handlebody::{ArcId, Side};
use crate::polygon::{Polygon, PolygonCensus};

/// Polygon classes reduced to what the search needs: each D-edge is a
/// `(key, side)` pair and matches the same key on the other side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonSystem {
    pub classes: Vec<Vec<(usize, bool)>>,
    pub caps: Vec<usize>,
    pub conflicts: BTreeSet<(usize, usize)>,
}

impl PolygonSystem {
    pub fn from_census(census: &PolygonCensus, cap: usize) -> PolygonSystem {
        let mut keys = BTreeMap::new();
        let classes = census
            .polygons
            .iter()
            .map(|p| {
                p.d_edges
                    .iter()
                    .map(|d| {
                        let n = keys.len();
                        (*keys.entry(d.key()).or_insert(n), d.slot.side == Side::B)
                    })
                    .collect()
            })
            .collect();
        PolygonSystem {
            classes,
            caps: vec![cap.max(1); census.polygons.len()],
            conflicts: census.conflicts.clone(),
        }
    }

    pub fn is_bigon(&self, c: usize) -> bool {
        self.classes[c].len() == 1
    }

    fn conflict(&self, a: usize, b: usize) -> bool {
        self.conflicts.contains(&(a.min(b), a.max(b)))
    }

    /// Product over classes of (cap + 1), saturating.
    pub fn search_bound(&self) -> u128 {
        self.caps.iter().fold(1u128, |acc, &c| acc.saturating_mul(c as u128 + 1))
    }
}

/// Instances and the D-edge pairs glued together.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assembly {
    pub instances: Vec<usize>,
    /// `(instance, edge, instance, edge)`.
    pub gluing: Vec<(usize, usize, usize, usize)>,
}

impl Assembly {
    /// Number of instances of each class size, keyed by D-edge count.
    pub fn size_counts(&self, sys: &PolygonSystem) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &c in &self.instances {
            *out.entry(sys.classes[c].len()).or_insert(0) += 1;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchOutcome {
    Found(Assembly),
    Infeasible,
    /// Node budget ran out before the search finished.
    Exhausted,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub completed_trees: u64,
    pub rejected_trees: u64,
    pub max_depth: usize,
}

pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

struct Search<'a> {
    sys: &'a PolygonSystem,
    partners: BTreeMap<(usize, bool), Vec<(usize, usize)>>,
    cost: BTreeMap<(usize, bool), usize>,
    counts: Vec<usize>,
    instances: Vec<usize>,
    gluing: Vec<(usize, usize, usize, usize)>,
    open: Vec<(usize, usize)>,
    min_class: Vec<bool>,
    limit: usize,
    hit_limit: bool,
    budget: u64,
    stats: SearchStats,
}

const INF: usize = usize::MAX / 4;

impl<'a> Search<'a> {
    fn new(sys: &'a PolygonSystem, budget: u64) -> Search<'a> {
        let mut partners: BTreeMap<(usize, bool), Vec<(usize, usize)>> = BTreeMap::new();
        for (c, edges) in sys.classes.iter().enumerate() {
            if sys.caps[c] == 0 {
                continue;
            }
            for (j, &(k, side)) in edges.iter().enumerate() {
                // an open edge of type (k, !side) is closed by this edge
                partners.entry((k, !side)).or_default().push((c, j));
            }
        }
        let mut s = Search {
            sys,
            partners,
            cost: BTreeMap::new(),
            counts: vec![0; sys.classes.len()],
            instances: Vec::new(),
            gluing: Vec::new(),
            open: Vec::new(),
            min_class: vec![true; sys.classes.len()],
            limit: 0,
            hit_limit: false,
            budget,
            stats: SearchStats::default(),
        };
        s.cost = s.closing_costs();
        s
    }

    /// Fewest instances needed to close an open edge of each type, ignoring
    /// caps and conflicts.
    fn closing_costs(&self) -> BTreeMap<(usize, bool), usize> {
        let mut types: BTreeSet<(usize, bool)> = BTreeSet::new();
        for edges in &self.sys.classes {
            for &(k, s) in edges {
                types.insert((k, s));
                types.insert((k, !s));
            }
        }
        let mut cost: BTreeMap<(usize, bool), usize> = types.iter().map(|&t| (t, INF)).collect();
        loop {
            let mut changed = false;
            for &t in &types {
                let Some(list) = self.partners.get(&t) else { continue };
                for &(c, j) in list {
                    let mut total = 1usize;
                    for (i, &e) in self.sys.classes[c].iter().enumerate() {
                        if i != j {
                            total = total.saturating_add(cost[&e]);
                        }
                    }
                    if total < cost[&t] {
                        cost.insert(t, total);
                        changed = true;
                    }
                }
            }
            if !changed {
                return cost;
            }
        }
    }

    fn needed(&self) -> usize {
        self.open
            .iter()
            .map(|&(inst, e)| self.cost[&self.sys.classes[self.instances[inst]][e]])
            .fold(0usize, |a, b| a.saturating_add(b))
    }

    fn allowed(&self, c: usize) -> bool {
        self.min_class[c]
            && self.counts[c] < self.sys.caps[c]
            && !self.instances.iter().any(|&d| d != c && self.sys.conflict(c, d))
    }

    fn push(&mut self, c: usize, skip: Option<usize>) -> usize {
        let inst = self.instances.len();
        self.instances.push(c);
        self.counts[c] += 1;
        for e in 0..self.sys.classes[c].len() {
            if Some(e) != skip {
                self.open.push((inst, e));
            }
        }
        inst
    }

    fn pop(&mut self) {
        let c = self.instances.pop().expect("nonempty");
        self.counts[c] -= 1;
        let inst = self.instances.len();
        self.open.retain(|&(i, _)| i != inst);
    }

    fn dfs(&mut self, accept: &mut dyn FnMut(&Assembly) -> bool) -> Option<Option<Assembly>> {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(self.instances.len());
        if self.stats.nodes > self.budget {
            return None;
        }
        if self.open.is_empty() {
            self.stats.completed_trees += 1;
            let a = Assembly { instances: self.instances.clone(), gluing: self.gluing.clone() };
            if accept(&a) {
                return Some(Some(a));
            }
            self.stats.rejected_trees += 1;
            return Some(None);
        }
        let room = self.limit - self.instances.len();
        let need = self.needed();
        if need > room {
            if need < INF {
                self.hit_limit = true;
            }
            return Some(None);
        }
        // most constrained open edge first
        let (slot, _) = self
            .open
            .iter()
            .enumerate()
            .map(|(i, &(inst, e))| {
                let t = self.sys.classes[self.instances[inst]][e];
                (i, self.partners.get(&t).map_or(0, |v| v.len()))
            })
            .min_by_key(|&(i, n)| (n, i))
            .expect("open nonempty");
        let (inst, e) = self.open.remove(slot);
        let t = self.sys.classes[self.instances[inst]][e];
        let cands = self.partners.get(&t).cloned().unwrap_or_default();
        for (c, j) in cands {
            if !self.allowed(c) {
                continue;
            }
            let new = self.push(c, Some(j));
            self.gluing.push((inst, e, new, j));
            let r = self.dfs(accept);
            self.gluing.pop();
            self.pop();
            match r {
                None => {
                    self.open.insert(slot, (inst, e));
                    return None;
                }
                Some(Some(a)) => return Some(Some(a)),
                Some(None) => {}
            }
        }
        self.open.insert(slot, (inst, e));
        Some(None)
    }
}

/// Finds a tree assembly accepted by `accept`, smallest instance count first.
pub fn search(
    sys: &PolygonSystem,
    accept: &mut dyn FnMut(&Assembly) -> bool,
    budget: u64,
) -> (SearchOutcome, SearchStats) {
    let mut s = Search::new(sys, budget);
    let total: usize = sys.caps.iter().sum();
    let seeds: Vec<usize> = (0..sys.classes.len()).filter(|&c| sys.is_bigon(c) && sys.caps[c] > 0).collect();
    let mut limit = 2;
    while limit <= total.max(2) {
        s.limit = limit;
        s.hit_limit = false;
        for (i, &b) in seeds.iter().enumerate() {
            // trees holding an earlier bigon were covered by that seed
            for &earlier in &seeds[..i] {
                s.min_class[earlier] = false;
            }
            s.push(b, None);
            let r = s.dfs(accept);
            s.pop();
            for &earlier in &seeds[..i] {
                s.min_class[earlier] = true;
            }
            match r {
                None => return (SearchOutcome::Exhausted, s.stats),
                Some(Some(a)) => return (SearchOutcome::Found(a), s.stats),
                Some(None) => {}
            }
        }
        if !s.hit_limit {
            break;
        }
        limit += 1;
    }
    (SearchOutcome::Infeasible, s.stats)
}

/// A compressing disk assembled from polygons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Polygon of each instance.
    pub polygons: Vec<Polygon>,
    pub gluing: Vec<(usize, usize, usize, usize)>,
    pub bigon_bound: usize,
    /// Arcs crossed by the boundary, with the side it leaves from.
    pub boundary: Vec<(ArcId, Side)>,
}

/// Corner of an instance: (instance, link index in the polygon).
type Corner = (usize, usize);

/// Closed boundary walks of an assembly as arc crossings, one walk per
/// boundary component.
pub fn boundary_walks(polys: &[&Polygon], gluing: &[(usize, usize, usize, usize)]) -> Vec<Vec<(ArcId, Side)>> {
    let mut ids: BTreeMap<Corner, usize> = BTreeMap::new();
    for (i, p) in polys.iter().enumerate() {
        for k in 0..p.links.len() {
            let n = ids.len();
            ids.insert((i, k), n);
        }
    }
    let mut uf = UnionFind::new(ids.len());
    for &(a, ea, b, eb) in gluing {
        // D-edge j of a polygon lies between links 2j and 2j+1
        for ka in [2 * ea, 2 * ea + 1] {
            let arc = polys[a].links[ka].edge.arc;
            for kb in [2 * eb, 2 * eb + 1] {
                if polys[b].links[kb].edge.arc == arc {
                    uf.union(ids[&(a, ka)], ids[&(b, kb)]);
                }
            }
        }
    }
    // S-edge j of a polygon runs from link 2j-1 to link 2j
    let mut at: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    let mut edges = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        let len = p.links.len();
        for j in 0..p.s_edges.len() {
            let (k0, k1) = ((2 * j + len - 1) % len, 2 * j);
            let (c0, c1) = (uf.find(ids[&(i, k0)]), uf.find(ids[&(i, k1)]));
            let idx = edges.len();
            edges.push((i, k0, k1, c0, c1));
            at.entry(c0).or_default().push((idx, 0));
            at.entry(c1).or_default().push((idx, 1));
        }
    }
    let mut used = vec![false; edges.len()];
    let mut walks = Vec::new();
    for start in 0..edges.len() {
        if used[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = start;
        let mut end = 1usize;
        loop {
            used[cur] = true;
            let (i, k0, k1, c0, c1) = edges[cur];
            let corner = if end == 1 { c1 } else { c0 };
            let leave = if end == 1 { k1 } else { k0 };
            let e = polys[i].links[leave].edge;
            walk.push((e.arc, e.side));
            let next = at[&corner].iter().find(|&&(x, _)| x != cur).copied();
            match next {
                Some((x, which)) if !used[x] => {
                    cur = x;
                    end = 1 - which;
                }
                _ => break,
            }
        }
        walks.push(walk);
    }
    walks
}

/// Free cyclic reduction of a crossing sequence in the face/arc graph.
pub fn reduce_crossings(walk: &[(ArcId, Side)]) -> Vec<(ArcId, Side)> {
    let mut st: Vec<(ArcId, Side)> = Vec::new();
    for &x in walk {
        match st.last() {
            Some(&(a, s)) if a == x.0 && s != x.1 => {
                st.pop();
            }
            _ => st.push(x),
        }
    }
    while st.len() >= 2 {
        let (f, l) = (st[0], st[st.len() - 1]);
        if f.0 == l.0 && f.1 != l.1 {
            st.pop();
            st.remove(0);
        } else {
            break;
        }
    }
    st
}

/// Euler characteristic of the assembled disk from its corners.
pub fn assembly_euler(polys: &[&Polygon], gluing: &[(usize, usize, usize, usize)]) -> i64 {
    let mut ids: BTreeMap<Corner, usize> = BTreeMap::new();
    for (i, p) in polys.iter().enumerate() {
        for k in 0..p.links.len() {
            let n = ids.len();
            ids.insert((i, k), n);
        }
    }
    let mut uf = UnionFind::new(ids.len());
    for &(a, ea, b, eb) in gluing {
        for ka in [2 * ea, 2 * ea + 1] {
            for kb in [2 * eb, 2 * eb + 1] {
                if polys[a].links[ka].edge.arc == polys[b].links[kb].edge.arc {
                    uf.union(ids[&(a, ka)], ids[&(b, kb)]);
                }
            }
        }
    }
    let v = uf.classes() as i64;
    let s_edges: usize = polys.iter().map(|p| p.s_edges.len()).sum();
    let d_edges: usize = polys.iter().map(|p| p.d_edges.len()).sum();
    let e = (s_edges + d_edges - gluing.len()) as i64;
    v - e + polys.len() as i64
}

/// Solves over the polygon census of a surface; a tree is accepted when its
/// boundary is a single curve that does not bound in the surface.
pub fn solve(census: &PolygonCensus, bigon_bound: usize, budget: u64) -> (Option<Certificate>, bool, SearchStats) {
    let sys = PolygonSystem::from_census(census, bigon_bound);
    let mut accept = |a: &Assembly| {
        let polys: Vec<&Polygon> = a.instances.iter().map(|&c| &census.polygons[c]).collect();
        let walks = boundary_walks(&polys, &a.gluing);
        walks.len() == 1 && !reduce_crossings(&walks[0]).is_empty()
    };
    let (out, stats) = search(&sys, &mut accept, budget);
    match out {
        SearchOutcome::Found(a) => {
            let polygons: Vec<Polygon> = a.instances.iter().map(|&c| census.polygons[c].clone()).collect();
            let refs: Vec<&Polygon> = polygons.iter().collect();
            let boundary = boundary_walks(&refs, &a.gluing).remove(0);
            (Some(Certificate { polygons, gluing: a.gluing, bigon_bound, boundary }), true, stats)
        }
        SearchOutcome::Infeasible => (None, true, stats),
        SearchOutcome::Exhausted => (None, false, stats),
    }
}

/// Clause of the certificate check that failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateFailure {
    UnknownPolygon(usize),
    BadGluing(usize),
    UnmatchedEdge(usize, usize),
    Disconnected,
    EulerMismatch { corners: i64, formula: i64 },
    BigonCap { count: usize, cap: usize },
    Conflict(usize, usize),
    BoundaryComponents(usize),
    InessentialBoundary,
}

/// Checks a certificate against a fresh polygon census of `s`.
pub fn verify_certificate(c: &Certificate, s: &SurfaceComplex) -> Result<(), CertificateFailure> {
    let census = crate::polygon::enumerate_polygons(s).map_err(|_| CertificateFailure::UnknownPolygon(0))?;
    let mut class_of = Vec::new();
    for (i, p) in c.polygons.iter().enumerate() {
        let found = census
            .polygons
            .iter()
            .find(|q| q.ball == p.ball && q.cells == p.cells && q.links == p.links)
            .ok_or(CertificateFailure::UnknownPolygon(i))?;
        class_of.push(found.id);
    }
    let n = c.polygons.len();
    let mut matched: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut uf = UnionFind::new(n);
    for (g, &(a, ea, b, eb)) in c.gluing.iter().enumerate() {
        let (Some(pa), Some(pb)) = (c.polygons.get(a), c.polygons.get(b)) else {
            return Err(CertificateFailure::BadGluing(g));
        };
        let (Some(da), Some(db)) = (pa.d_edges.get(ea), pb.d_edges.get(eb)) else {
            return Err(CertificateFailure::BadGluing(g));
        };
        if a == b || !da.matches(db) || !matched.insert((a, ea)) || !matched.insert((b, eb)) {
            return Err(CertificateFailure::BadGluing(g));
        }
        uf.union(a, b);
    }
    for (i, p) in c.polygons.iter().enumerate() {
        for j in 0..p.d_edges.len() {
            if !matched.contains(&(i, j)) {
                return Err(CertificateFailure::UnmatchedEdge(i, j));
            }
        }
    }
    if n == 0 || uf.classes() != 1 {
        return Err(CertificateFailure::Disconnected);
    }
    let refs: Vec<&Polygon> = c.polygons.iter().collect();
    let corners = assembly_euler(&refs, &c.gluing);
    let twice: i64 = c.polygons.iter().map(|p| 2 - p.m() as i64).sum();
    if corners != 1 || twice != 2 {
        return Err(CertificateFailure::EulerMismatch { corners, formula: twice });
    }
    let cap = s.census().bigon_bound().max(1);
    let mut per_class: BTreeMap<usize, usize> = BTreeMap::new();
    for &k in &class_of {
        *per_class.entry(k).or_insert(0) += 1;
    }
    for (&k, &count) in &per_class {
        if count > cap && census.polygons[k].is_bigon() {
            return Err(CertificateFailure::BigonCap { count, cap });
        }
    }
    for &a in per_class.keys() {
        for &b in per_class.keys() {
            if a < b && census.conflict(a, b) {
                return Err(CertificateFailure::Conflict(a, b));
            }
        }
    }
    let walks = boundary_walks(&refs, &c.gluing);
    if walks.len() != 1 {
        return Err(CertificateFailure::BoundaryComponents(walks.len()));
    }
    if reduce_crossings(&walks[0]).is_empty() {
        return Err(CertificateFailure::InessentialBoundary);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(classes: Vec<Vec<(usize, bool)>>, cap: usize) -> PolygonSystem {
        let n = classes.len();
        PolygonSystem { classes, caps: vec![cap; n], conflicts: BTreeSet::new() }
    }

    #[test]
    fn test_two_bigons_close() {
        let s = sys(vec![vec![(0, false)], vec![(0, true)]], 1);
        let (out, _) = search(&s, &mut |_| true, 1000);
        let SearchOutcome::Found(a) = out else { panic!("expected a disk") };
        assert_eq!(a.instances.len(), 2);
        assert_eq!(a.gluing.len(), 1);
    }

    #[test]
    fn test_chain_through_rectangle() {
        let s = sys(vec![vec![(0, false)], vec![(0, true), (1, false)], vec![(1, true)]], 1);
        let (out, _) = search(&s, &mut |_| true, 1000);
        assert!(matches!(out, SearchOutcome::Found(a) if a.instances.len() == 3));
    }

    #[test]
    fn test_lonely_bigon_infeasible() {
        let s = sys(vec![vec![(0, false)], vec![(1, true), (2, false)]], 3);
        assert_eq!(search(&s, &mut |_| true, 1000).0, SearchOutcome::Infeasible);
    }

    #[test]
    fn test_reduce_crossings_cancels_backtrack() {
        let w = vec![(1, Side::A), (1, Side::B)];
        assert!(reduce_crossings(&w).is_empty());
        let w = vec![(1, Side::A), (2, Side::B)];
        assert_eq!(reduce_crossings(&w).len(), 2);
    }
}
