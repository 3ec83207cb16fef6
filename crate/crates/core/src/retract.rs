//! The graph the surface retracts onto: one node per piece, one link per arc.
//!
//! Critical pieces are the vertices proper; trivial 4-disks subdivide the
//! edges running between them. Cutting along the disk system leaves the
//! level links only, and a cycle there means the surface is trivial.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::{ArcSite, DEdge, SurfaceComplex, UnionFind};
use crate::handlebody::{ArcId, BallId, DiskId, PieceId, Side};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractNode {
    pub piece: PieceId,
    pub ball: BallId,
    pub critical: bool,
    pub valence: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractLink {
    pub arc: ArcId,
    /// Node on side A and node on side B.
    pub ends: (usize, usize),
    pub disk: Option<DiskId>,
}

/// A chain of links between critical vertices, with its disk crossings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractEdge {
    pub from: Option<usize>,
    pub to: Option<usize>,
    pub links: Vec<usize>,
    pub crossings: Vec<DiskId>,
}

/// Cycle inside one ball, proving the surface is trivial there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub ball: BallId,
    pub pieces: Vec<PieceId>,
    pub arcs: Vec<ArcId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractGraph {
    pub nodes: Vec<RetractNode>,
    pub links: Vec<RetractLink>,
}

impl RetractGraph {
    pub fn build(s: &SurfaceComplex) -> RetractGraph {
        let index: BTreeMap<PieceId, usize> = s.pieces.keys().enumerate().map(|(i, &p)| (p, i)).collect();
        let nodes = s
            .pieces
            .values()
            .map(|p| RetractNode { piece: p.id, ball: p.ball, critical: p.kind.is_critical(), valence: p.n() })
            .collect();
        let mut owner = BTreeMap::new();
        for p in s.pieces.values() {
            for e in &p.word {
                owner.insert(*e, index[&p.id]);
            }
        }
        let links = s
            .arcs
            .values()
            .filter_map(|a| {
                let x = *owner.get(&DEdge::new(a.id, Side::A))?;
                let y = *owner.get(&DEdge::new(a.id, Side::B))?;
                Some(RetractLink { arc: a.id, ends: (x, y), disk: a.disk() })
            })
            .collect();
        RetractGraph { nodes, links }
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].critical)
    }

    /// First Betti number of the graph.
    pub fn betti(&self) -> i64 {
        let mut uf = UnionFind::new(self.nodes.len());
        for l in &self.links {
            uf.union(l.ends.0, l.ends.1);
        }
        self.links.len() as i64 - self.nodes.len() as i64 + uf.classes() as i64
    }

    /// Maximal chains through trivial nodes. Closed chains without a
    /// critical vertex have no endpoints.
    pub fn edges(&self) -> Vec<RetractEdge> {
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for (i, l) in self.links.iter().enumerate() {
            incident[l.ends.0].push(i);
            incident[l.ends.1].push(i);
        }
        let mut used = vec![false; self.links.len()];
        let mut out = Vec::new();
        let walk = |start_node: usize, first: usize, used: &mut Vec<bool>| {
            let mut links = Vec::new();
            let mut crossings = Vec::new();
            let mut node = start_node;
            let mut link = first;
            loop {
                used[link] = true;
                links.push(link);
                let l = &self.links[link];
                crossings.extend(l.disk);
                node = if l.ends.0 == node { l.ends.1 } else { l.ends.0 };
                if self.nodes[node].critical {
                    return (links, crossings, Some(node));
                }
                match incident[node].iter().find(|&&k| !used[k]) {
                    Some(&k) => link = k,
                    None => return (links, crossings, None),
                }
            }
        };
        for v in self.vertices().collect::<Vec<_>>() {
            for &k in &incident[v] {
                if used[k] {
                    continue;
                }
                let (links, crossings, to) = walk(v, k, &mut used);
                out.push(RetractEdge { from: Some(v), to, links, crossings });
            }
        }
        for k in 0..self.links.len() {
            if !used[k] {
                let (links, crossings, _) = walk(self.links[k].ends.0, k, &mut used);
                out.push(RetractEdge { from: None, to: None, links, crossings });
            }
        }
        out
    }

    /// Components left after deleting the links that cross the disk system.
    pub fn cut_components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.nodes.len());
        for l in self.links.iter().filter(|l| l.disk.is_none()) {
            uf.union(l.ends.0, l.ends.1);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.nodes.len() {
            groups.entry(uf.find(i)).or_default().push(i);
        }
        groups.into_values().collect()
    }

    /// A cycle in the cut graph, if any.
    pub fn trivial_cycle(&self) -> Option<CycleWitness> {
        let mut uf = UnionFind::new(self.nodes.len());
        let mut tree_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.nodes.len()];
        for (i, l) in self.links.iter().enumerate().filter(|(_, l)| l.disk.is_none()) {
            let (a, b) = l.ends;
            if !uf.union(a, b) {
                let mut path = tree_path(&tree_adj, b, a)?;
                path.push((i, a));
                let mut pieces = vec![self.nodes[b].piece];
                let mut arcs = Vec::new();
                for (link, node) in path {
                    arcs.push(self.links[link].arc);
                    pieces.push(self.nodes[node].piece);
                }
                pieces.pop();
                return Some(CycleWitness { ball: self.nodes[a].ball, pieces, arcs });
            }
            tree_adj[a].push((i, b));
            tree_adj[b].push((i, a));
        }
        None
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial_cycle().is_some()
    }

    /// One line per link: `p<x> p<y> <arc> <site>`.
    pub fn edge_list(&self, s: &SurfaceComplex) -> String {
        let mut out = String::new();
        for l in &self.links {
            let site = match s.arcs[&l.arc].site {
                ArcSite::Disk(d) => format!("D{d}"),
                ArcSite::Level(b) => format!("L{b}"),
            };
            let (x, y) = l.ends;
            let _ = writeln!(out, "p{} p{} a{} {}", self.nodes[x].piece, self.nodes[y].piece, l.arc, site);
        }
        out
    }
}

/// Path from `from` to `to` in a forest, as (link, node reached) steps.
fn tree_path(adj: &[Vec<(usize, usize)>], from: usize, to: usize) -> Option<Vec<(usize, usize)>> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        if v == to {
            break;
        }
        for &(link, w) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((link, v));
                stack.push(w);
            }
        }
    }
    if from == to {
        return Some(Vec::new());
    }
    let mut steps = Vec::new();
    let mut cur = to;
    while cur != from {
        let (link, p) = prev[cur]?;
        steps.push((link, cur));
        cur = p;
    }
    steps.reverse();
    Some(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::handlebody::{handcuff_spine, ps_balls};

    #[test]
    fn test_level_cycle_is_trivial() {
        let mut s = SurfaceComplex::new(ps_balls(&handcuff_spine()));
        let l1 = s.add_level_arc(0);
        let l2 = s.add_level_arc(0);
        s.add_piece(0, vec![DEdge::new(l1, Side::A), DEdge::new(l2, Side::A)], vec![]);
        s.add_piece(0, vec![DEdge::new(l1, Side::B), DEdge::new(l2, Side::B)], vec![]);
        let g = RetractGraph::build(&s);
        let w = g.trivial_cycle().expect("cycle");
        assert_eq!(w.pieces, vec![1, 0]);
        assert_eq!(w.arcs.len(), 2);
        assert_eq!(g.betti(), 1);
    }

    #[test]
    fn test_collar_loop_edge() {
        let mut s = SurfaceComplex::new(ps_balls(&handcuff_spine()));
        let a = s.add_disk_arc(1, None);
        s.add_piece(0, vec![DEdge::new(a, Side::A), DEdge::new(a, Side::B)], vec![]);
        let g = RetractGraph::build(&s);
        assert!(!g.is_trivial());
        let e = g.edges();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].from, None);
        assert_eq!(e[0].crossings, vec![1]);
    }
}
