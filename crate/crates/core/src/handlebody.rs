//! Spines, meridian disk systems and the pair-of-pants balls they cut out.
//!
//! Every spine edge carries one meridian disk. Side `A` of a disk faces the
//! ball of the edge's first endpoint, side `B` faces the second endpoint.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::SpineError;

pub type DiskId = usize;
pub type BallId = usize;
pub type ArcId = usize;
pub type PieceId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// One side of one meridian disk, as seen from inside a ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub disk: DiskId,
    pub side: Side,
}

/// A connected 3-valent multigraph with a chosen spanning tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineGraph {
    pub genus: usize,
    pub vertex_count: usize,
    /// Edge `i` joins `edges[i].0` (side A) to `edges[i].1` (side B).
    pub edges: Vec<(usize, usize)>,
    /// Edge ids of the spanning tree, sorted.
    pub tree: Vec<usize>,
    /// Free name of the layout (`ladder`, `handcuff`, `custom`).
    pub layout: String,
}

impl SpineGraph {
    /// Checks degrees and connectivity, derives the genus and, when `tree`
    /// is `None`, picks a breadth-first spanning tree.
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        tree: Option<Vec<usize>>,
        layout: &str,
    ) -> Result<SpineGraph, SpineError> {
        let mut degree = vec![0usize; vertex_count];
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(SpineError::BadVertex { edge: i, vertex: w, count: vertex_count });
                }
                degree[w] += 1;
            }
        }
        if let Some((vertex, &degree)) = degree.iter().enumerate().find(|(_, &d)| d != 3) {
            return Err(SpineError::NotTrivalent { vertex, degree });
        }
        let bfs = bfs_tree(vertex_count, &edges).ok_or(SpineError::Disconnected)?;
        let tree = match tree {
            Some(mut t) => {
                t.sort_unstable();
                t.dedup();
                check_tree(vertex_count, &edges, &t)?;
                t
            }
            None => bfs,
        };
        let genus = edges.len() + 1 - vertex_count;
        Ok(SpineGraph { genus, vertex_count, edges, tree, layout: layout.to_string() })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn in_tree(&self, edge: usize) -> bool {
        self.tree.binary_search(&edge).is_ok()
    }

    /// Free-group generator index carried by an edge, `None` for tree edges.
    pub fn generator(&self, edge: usize) -> Option<usize> {
        if self.in_tree(edge) {
            return None;
        }
        Some((0..edge).filter(|e| !self.in_tree(*e)).count())
    }

    /// Edge carrying generator `g`.
    pub fn generator_edge(&self, g: usize) -> Option<usize> {
        (0..self.edges.len()).filter(|e| !self.in_tree(*e)).nth(g)
    }
}

fn bfs_tree(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    if n == 0 {
        return None;
    }
    let mut seen = vec![false; n];
    let mut tree = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for (i, &(a, b)) in edges.iter().enumerate() {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                tree.push(i);
                queue.push_back(w);
            }
        }
    }
    if seen.iter().all(|&s| s) {
        tree.sort_unstable();
        Some(tree)
    } else {
        None
    }
}

fn check_tree(n: usize, edges: &[(usize, usize)], tree: &[usize]) -> Result<(), SpineError> {
    if tree.len() + 1 != n {
        return Err(SpineError::BadTree(format!("{} edges for {} vertices", tree.len(), n)));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &e in tree {
        let &(u, v) = edges
            .get(e)
            .ok_or_else(|| SpineError::BadTree(format!("unknown edge {e}")))?;
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return Err(SpineError::BadTree(format!("edge {e} closes a cycle")));
        }
        parent[ru] = rv;
    }
    Ok(())
}

/// Canonical spine of genus `g`: a ring of `g - 1` doubled edges joined by
/// single rungs. Genus 2 gives two vertices joined by three parallel edges.
pub fn build_spine(genus: usize) -> Result<SpineGraph, SpineError> {
    if genus < 2 {
        return Err(SpineError::GenusTooSmall(genus));
    }
    let pairs = genus - 1;
    let n = 2 * pairs;
    let mut edges = Vec::with_capacity(3 * genus - 3);
    for i in 0..pairs {
        edges.push((2 * i, 2 * i + 1));
        edges.push((2 * i, 2 * i + 1));
    }
    for i in 0..pairs {
        let (u, v) = (2 * i + 1, (2 * i + 2) % n);
        edges.push((u.min(v), u.max(v)));
    }
    SpineGraph::new(n, edges, None, "ladder")
}

/// Genus-2 spine made of two loops joined by a separating edge. Edge 0 is the
/// separating edge, edges 1 and 2 are the loops.
pub fn handcuff_spine() -> SpineGraph {
    SpineGraph::new(2, vec![(0, 1), (0, 0), (1, 1)], Some(vec![0]), "handcuff")
        .expect("handcuff spine is valid")
}

/// One ball of the decomposition: a neighborhood of a spine vertex whose
/// boundary sphere meets the disk system in three slots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsBall {
    pub id: BallId,
    pub vertex: usize,
    pub slots: [Slot; 3],
}

impl PsBall {
    pub fn slot_index(&self, slot: Slot) -> Option<usize> {
        self.slots.iter().position(|s| *s == slot)
    }
}

/// Spine plus the balls cut out by its disk system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Handlebody {
    pub spine: SpineGraph,
    pub balls: Vec<PsBall>,
}

impl Handlebody {
    pub fn genus(&self) -> usize {
        self.spine.genus
    }

    pub fn disk_count(&self) -> usize {
        self.spine.edge_count()
    }

    /// Ball facing the given side of a disk.
    pub fn ball_of(&self, slot: Slot) -> BallId {
        let (u, v) = self.spine.edges[slot.disk];
        match slot.side {
            Side::A => u,
            Side::B => v,
        }
    }

    /// Index of `slot` among the three slots of its ball.
    pub fn slot_index(&self, slot: Slot) -> usize {
        self.balls[self.ball_of(slot)]
            .slot_index(slot)
            .expect("every slot belongs to its ball")
    }
}

/// Cuts the handlebody along one disk per spine edge. Slots of each ball are
/// listed by disk id, side `A` first.
pub fn ps_balls(spine: &SpineGraph) -> Handlebody {
    let mut balls = Vec::with_capacity(spine.vertex_count);
    for v in 0..spine.vertex_count {
        let mut slots = Vec::with_capacity(3);
        for (e, &(a, b)) in spine.edges.iter().enumerate() {
            if a == v {
                slots.push(Slot { disk: e, side: Side::A });
            }
            if b == v {
                slots.push(Slot { disk: e, side: Side::B });
            }
        }
        let slots: [Slot; 3] = slots.try_into().expect("spine is 3-valent");
        balls.push(PsBall { id: v, vertex: v, slots });
    }
    Handlebody { spine: spine.clone(), balls }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_counts_for_small_genus() {
        for g in 2..8 {
            let s = build_spine(g).unwrap();
            assert_eq!(s.vertex_count, 2 * g - 2);
            assert_eq!(s.edge_count(), 3 * g - 3);
            assert_eq!(s.genus, g);
            assert_eq!(s.tree.len(), s.vertex_count - 1);
        }
    }

    #[test]
    fn test_genus_two_is_theta() {
        let s = build_spine(2).unwrap();
        assert!(s.edges.iter().all(|&(u, v)| (u, v) == (0, 1)));
    }

    #[test]
    fn test_genus_one_rejected() {
        assert_eq!(build_spine(1), Err(SpineError::GenusTooSmall(1)));
    }

    #[test]
    fn test_handcuff_slots() {
        let h = ps_balls(&handcuff_spine());
        let p1 = &h.balls[0];
        let d = |disk, side| Slot { disk, side };
        let mut got = p1.slots.to_vec();
        got.sort();
        assert_eq!(got, vec![d(0, Side::A), d(1, Side::A), d(1, Side::B)]);
        assert_eq!(h.spine.generator(0), None);
        assert_eq!(h.spine.generator(1), Some(0));
        assert_eq!(h.spine.generator(2), Some(1));
    }

    #[test]
    fn test_not_trivalent() {
        let err = SpineGraph::new(2, vec![(0, 1), (0, 1)], None, "custom").unwrap_err();
        assert!(matches!(err, SpineError::NotTrivalent { .. }));
    }
}
