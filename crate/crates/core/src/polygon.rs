//! Polygons: disks in a complement region whose boundary alternates between
//! S-edges (across a face side) and D-edges (across a D-face).
//!
//! A polygon is a simple cycle in the bipartite cell graph of a region. Each
//! cycle found is one parallelism class; parallel copies share the same
//! chord sequence and are counted by multiplicity in the solver.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{ArcSite, DEdge, PieceKind, SurfaceComplex, UnionFind};
use crate::error::RegionError;
use crate::faces::FaceMap;
use crate::handlebody::{ArcId, BallId, DiskId, PieceId, Side, Slot};
use crate::region::{cell_order, complement_regions, Cell, ComplementRegion, DFace, Link};
use crate::standard::movable_saddles;

/// Upper bound on cycles listed per region before the census is marked
/// truncated.
pub const CYCLE_LIMIT: usize = 200_000;

/// D-edge of a polygon: a segment across a D-face between two chords.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PolyDEdge {
    pub slot: Slot,
    pub inside: Option<ArcId>,
    pub chords: (ArcId, ArcId),
}

impl PolyDEdge {
    /// Identity of the segment on the disk, shared by both sides.
    pub fn key(&self) -> (DiskId, Option<ArcId>, ArcId, ArcId) {
        (self.slot.disk, self.inside, self.chords.0, self.chords.1)
    }

    pub fn matches(&self, other: &PolyDEdge) -> bool {
        self.key() == other.key() && self.slot.side != other.slot.side
    }
}

/// S-edge of a polygon: a path across one side of a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySEdge {
    pub face: usize,
    pub minus: bool,
    pub from: DEdge,
    pub to: DEdge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polygon {
    pub id: usize,
    pub ball: BallId,
    pub region: usize,
    /// Cells in cyclic order, starting with a face side.
    pub cells: Vec<Cell>,
    /// `links[i]` joins `cells[i]` to `cells[i + 1]`.
    pub links: Vec<Link>,
    pub s_edges: Vec<PolySEdge>,
    pub d_edges: Vec<PolyDEdge>,
    /// Four D-edges alternate between two distinct disks.
    pub saddle: bool,
}

impl Polygon {
    /// Number of D-edges; the polygon is a 2m-gon.
    pub fn m(&self) -> usize {
        self.d_edges.len()
    }

    pub fn is_bigon(&self) -> bool {
        self.m() == 1
    }
}

/// A compatible pair of D-edges on opposite sides of a disk:
/// `(polygon, edge, polygon, edge)` with the side-A polygon first.
pub type Compat = (usize, usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonCensus {
    pub polygons: Vec<Polygon>,
    pub compat: Vec<Compat>,
    /// Pairs of classes that cannot be embedded together.
    pub conflicts: BTreeSet<(usize, usize)>,
    pub truncated: bool,
    /// Regions per ball, kept for certificate checks.
    pub region_counts: Vec<usize>,
}

impl PolygonCensus {
    /// Class ids grouped by the number of D-edges.
    pub fn by_size(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for p in &self.polygons {
            out.entry(p.m()).or_default().push(p.id);
        }
        out
    }

    pub fn bigons(&self) -> Vec<usize> {
        self.polygons.iter().filter(|p| p.is_bigon()).map(|p| p.id).collect()
    }

    pub fn bigons_in_ball(&self, ball: BallId) -> usize {
        self.polygons.iter().filter(|p| p.is_bigon() && p.ball == ball).count()
    }

    /// Pairs `(I, J)` of sizes such that some I-gon shares a D-edge with some J-gon.
    pub fn adjacency_sizes(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for &(p, _, q, _) in &self.compat {
            let (a, b) = (self.polygons[p].m(), self.polygons[q].m());
            out.insert((a.min(b), a.max(b)));
        }
        out
    }

    pub fn conflict(&self, a: usize, b: usize) -> bool {
        self.conflicts.contains(&(a.min(b), a.max(b)))
    }
}

/// Disk arcs that cut a disk off the surface.
pub fn inessential_arcs(s: &SurfaceComplex) -> BTreeSet<ArcId> {
    let ids: Vec<PieceId> = s.pieces.keys().copied().collect();
    let index: BTreeMap<PieceId, usize> = ids.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut ends = Vec::new();
    for a in s.arcs.values() {
        let (Some(x), Some(y)) = (s.end(a.id, Side::A), s.end(a.id, Side::B)) else { continue };
        ends.push((a.id, index[&x.piece], index[&y.piece]));
    }
    let mut out = BTreeSet::new();
    for &(arc, x, y) in &ends {
        if s.arcs[&arc].disk().is_none() {
            continue;
        }
        let mut uf = UnionFind::new(ids.len());
        for &(b, u, v) in &ends {
            if b != arc {
                uf.union(u, v);
            }
        }
        let (rx, ry) = (uf.find(x), uf.find(y));
        if rx == ry {
            continue;
        }
        for r in [rx, ry] {
            let nodes = (0..ids.len()).filter(|&i| uf.find(i) == r).count();
            let links = ends.iter().filter(|&&(b, u, _)| b != arc && uf.find(u) == r).count();
            if links + 1 == nodes {
                out.insert(arc);
                break;
            }
        }
    }
    out
}

pub fn enumerate_polygons(s: &SurfaceComplex) -> Result<PolygonCensus, RegionError> {
    let fm = FaceMap::build(s);
    let balls = complement_regions(s)?;
    let inessential = inessential_arcs(s);
    let movable: BTreeSet<PieceId> = movable_saddles(s).into_iter().map(|w| w.saddle).collect();
    let mut polygons = Vec::new();
    let mut truncated = false;
    let mut by_region: BTreeMap<(BallId, usize), Vec<usize>> = BTreeMap::new();
    for br in &balls {
        for region in &br.regions {
            let (cycles, cut) = region_cycles(region);
            truncated |= cut;
            for (cells, links) in cycles {
                if links.iter().any(|l| inessential.contains(&l.edge.arc)) {
                    continue;
                }
                let mut p = assemble(br.ball, region.id, cells, links);
                if p.is_bigon() && !bigon_meets_saddle(s, &fm, &p.s_edges[0], &movable) {
                    continue;
                }
                p.id = polygons.len();
                by_region.entry((br.ball, region.id)).or_default().push(p.id);
                polygons.push(p);
            }
        }
    }
    let compat = compatible_pairs(&polygons);
    let conflicts = conflicting_pairs(s, &fm, &polygons, &by_region);
    let region_counts = balls.iter().map(|b| b.regions.len()).collect();
    Ok(PolygonCensus { polygons, compat, conflicts, truncated, region_counts })
}

type Cycle = (Vec<Cell>, Vec<Link>);

/// Simple cycles of the bipartite cell graph, each listed once.
fn region_cycles(region: &ComplementRegion) -> (Vec<Cycle>, bool) {
    let cells = &region.cells;
    let idx: BTreeMap<Cell, usize> = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cells.len()];
    for (k, (_, fc, dc)) in region.links.iter().enumerate() {
        let (a, b) = (idx[fc], idx[dc]);
        adj[a].push((k, b));
        adj[b].push((k, a));
    }
    let mut out = Vec::new();
    let mut truncated = false;
    for start in 0..cells.len() {
        let mut on_path = vec![false; cells.len()];
        let mut path_cells = vec![start];
        let mut path_links: Vec<usize> = Vec::new();
        on_path[start] = true;
        // explicit stack of neighbor cursors
        let mut cursor = vec![0usize];
        while let Some(top) = cursor.last_mut() {
            let v = *path_cells.last().expect("path nonempty");
            if *top >= adj[v].len() {
                cursor.pop();
                on_path[v] = false;
                path_cells.pop();
                path_links.pop();
                continue;
            }
            let (k, w) = adj[v][*top];
            *top += 1;
            if path_links.last() == Some(&k) {
                continue;
            }
            if w == start {
                if !path_links.is_empty() && path_links[0] < k && path_links[0] != k {
                    let mut cs: Vec<Cell> = path_cells.iter().map(|&i| cells[i]).collect();
                    let mut ls: Vec<Link> = path_links.iter().map(|&i| region.links[i].0).collect();
                    ls.push(region.links[k].0);
                    if matches!(cs[0], Cell::DFace(_)) {
                        cs.rotate_left(1);
                        ls.rotate_left(1);
                    }
                    out.push((cs, ls));
                    if out.len() >= CYCLE_LIMIT {
                        truncated = true;
                        return (out, truncated);
                    }
                }
                continue;
            }
            if w < start || on_path[w] {
                continue;
            }
            on_path[w] = true;
            path_cells.push(w);
            path_links.push(k);
            cursor.push(0);
        }
    }
    (out, truncated)
}

fn assemble(ball: BallId, region: usize, cells: Vec<Cell>, links: Vec<Link>) -> Polygon {
    let len = cells.len();
    let mut s_edges = Vec::new();
    let mut d_edges = Vec::new();
    for i in 0..len {
        let prev = links[(i + len - 1) % len];
        let next = links[i];
        match cells[i] {
            Cell::FaceSide(face, minus) => {
                s_edges.push(PolySEdge { face, minus, from: prev.edge, to: next.edge })
            }
            Cell::DFace(DFace { slot, inside }) => {
                let (a, b) = (prev.edge.arc, next.edge.arc);
                d_edges.push(PolyDEdge { slot, inside, chords: (a.min(b), a.max(b)) });
            }
        }
    }
    let disks: Vec<DiskId> = d_edges.iter().map(|d| d.slot.disk).collect();
    let saddle = alternates(&disks);
    Polygon { id: 0, ball, region, cells, links, s_edges, d_edges, saddle }
}

/// True when four cyclically ordered entries alternate between two disks.
fn alternates(disks: &[DiskId]) -> bool {
    let m = disks.len();
    if m < 4 {
        return false;
    }
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                for l in k + 1..m {
                    let (a, b, c, d) = (disks[i], disks[j], disks[k], disks[l]);
                    if a == c && b == d && a != b {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// The S-edge of a bigon must pass through a saddle that cannot be moved.
fn bigon_meets_saddle(s: &SurfaceComplex, fm: &FaceMap, e: &PolySEdge, movable: &BTreeSet<PieceId>) -> bool {
    let (Some(&from), Some(&to)) = (fm.owner.get(&e.from), fm.owner.get(&e.to)) else {
        return false;
    };
    let path = face_path(s, fm, from, to);
    path.iter()
        .any(|p| s.pieces[p].kind == PieceKind::Saddle && !movable.contains(p))
}

/// Pieces on the path between two pieces of one face, along level arcs.
fn face_path(s: &SurfaceComplex, fm: &FaceMap, from: PieceId, to: PieceId) -> Vec<PieceId> {
    let mut prev: BTreeMap<PieceId, PieceId> = BTreeMap::new();
    let mut stack = vec![from];
    let mut seen = BTreeSet::from([from]);
    while let Some(p) = stack.pop() {
        if p == to {
            break;
        }
        for e in &s.pieces[&p].word {
            if !matches!(s.arcs[&e.arc].site, ArcSite::Level(_)) {
                continue;
            }
            let Some(&q) = fm.owner.get(&DEdge::new(e.arc, e.side.flip())) else { continue };
            if seen.insert(q) {
                prev.insert(q, p);
                stack.push(q);
            }
        }
    }
    let mut out = vec![to];
    let mut cur = to;
    while cur != from {
        match prev.get(&cur) {
            Some(&p) => {
                out.push(p);
                cur = p;
            }
            None => return vec![from],
        }
    }
    out
}

fn compatible_pairs(polygons: &[Polygon]) -> Vec<Compat> {
    let mut by_key: BTreeMap<_, [Vec<(usize, usize)>; 2]> = BTreeMap::new();
    for p in polygons {
        for (i, d) in p.d_edges.iter().enumerate() {
            let side = usize::from(d.slot.side == Side::B);
            by_key.entry(d.key()).or_insert_with(|| [Vec::new(), Vec::new()])[side].push((p.id, i));
        }
    }
    let mut out = Vec::new();
    for [a, b] in by_key.values() {
        for &(p, i) in a {
            for &(q, j) in b {
                out.push((p, i, q, j));
            }
        }
    }
    out
}

fn conflicting_pairs(
    s: &SurfaceComplex,
    fm: &FaceMap,
    polygons: &[Polygon],
    by_region: &BTreeMap<(BallId, usize), Vec<usize>>,
) -> BTreeSet<(usize, usize)> {
    let mut orders: BTreeMap<Cell, BTreeMap<Link, usize>> = BTreeMap::new();
    let mut out = BTreeSet::new();
    for ids in by_region.values() {
        // positions of each polygon's two links at each of its cells
        let mut at: BTreeMap<Cell, Vec<(usize, usize, usize)>> = BTreeMap::new();
        for &id in ids {
            let p = &polygons[id];
            let len = p.cells.len();
            for i in 0..len {
                let cell = p.cells[i];
                let ord = orders.entry(cell).or_insert_with(|| {
                    cell_order(s, fm, cell).into_iter().enumerate().map(|(k, l)| (l, k)).collect()
                });
                let (Some(&x), Some(&y)) = (ord.get(&p.links[(i + len - 1) % len]), ord.get(&p.links[i])) else {
                    continue;
                };
                at.entry(cell).or_default().push((id, x.min(y), x.max(y)));
            }
        }
        for list in at.values() {
            for (i, &(p, a, b)) in list.iter().enumerate() {
                for &(q, c, d) in &list[i + 1..] {
                    if p == q {
                        continue;
                    }
                    let distinct = a != c && a != d && b != c && b != d;
                    let inside = |x: usize| a < x && x < b;
                    if distinct && inside(c) != inside(d) {
                        out.insert((p.min(q), p.max(q)));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_alternation() {
        assert!(alternates(&[0, 1, 0, 1]));
        assert!(!alternates(&[0, 0, 1, 1]));
        assert!(alternates(&[2, 0, 1, 0, 2, 1]));
    }
}
