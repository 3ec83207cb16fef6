//! Independent check through the fundamental group.
//!
//! Loops of the surface are read off a spanning tree of the piece graph and
//! mapped into the free group of the handlebody, one letter per crossing of
//! a non-tree meridian disk. The image is folded into a Stallings graph;
//! since free groups are Hopfian, the inclusion is injective exactly when
//! the folded rank equals `1 - χ`.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{DEdge, SurfaceComplex, UnionFind};
use crate::error::OracleError;
use crate::faces::FaceMap;
use crate::handlebody::{ArcId, PieceId, Side};

/// Generator `g` is `g + 1`, its inverse `-(g + 1)`.
pub type Letter = i32;

pub fn reduce_word(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|x| -x).collect()
}

/// Letters `a, b, c, ...` with capitals for inverses; `1` for the identity.
pub fn format_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|&x| {
            let c = (b'a' + (x.unsigned_abs() - 1) as u8) as char;
            if x > 0 {
                c
            } else {
                c.to_ascii_uppercase()
            }
        })
        .collect()
}

/// A loop as the arcs it crosses, each with the side it leaves from.
pub type Crossings = Vec<(ArcId, Side)>;

/// One loop per arc outside a breadth-first spanning tree of the pieces.
pub fn surface_loops(s: &SurfaceComplex) -> Result<Vec<Crossings>, OracleError> {
    if s.pieces.is_empty() {
        return Err(OracleError::Empty);
    }
    let comps = s.components().len();
    if comps != 1 {
        return Err(OracleError::Disconnected(comps));
    }
    let mut adj: BTreeMap<PieceId, Vec<(ArcId, Side, PieceId)>> = BTreeMap::new();
    let mut ends = Vec::new();
    for a in s.arcs.values() {
        let (Some(x), Some(y)) = (s.end(a.id, Side::A), s.end(a.id, Side::B)) else { continue };
        adj.entry(x.piece).or_default().push((a.id, Side::A, y.piece));
        adj.entry(y.piece).or_default().push((a.id, Side::B, x.piece));
        ends.push((a.id, x.piece, y.piece));
    }
    let root = *s.pieces.keys().next().expect("nonempty");
    let mut path: BTreeMap<PieceId, Crossings> = BTreeMap::from([(root, Vec::new())]);
    let mut tree_arcs = std::collections::BTreeSet::new();
    let mut queue = VecDeque::from([root]);
    while let Some(p) = queue.pop_front() {
        for &(arc, side, q) in adj.get(&p).map_or(&[][..], |v| v.as_slice()) {
            if path.contains_key(&q) {
                continue;
            }
            let mut w = path[&p].clone();
            w.push((arc, side));
            path.insert(q, w);
            tree_arcs.insert(arc);
            queue.push_back(q);
        }
    }
    let mut loops = Vec::new();
    for (arc, x, y) in ends {
        if tree_arcs.contains(&arc) {
            continue;
        }
        let mut w = path[&x].clone();
        w.push((arc, Side::A));
        for &(a, side) in path[&y].iter().rev() {
            w.push((a, side.flip()));
        }
        loops.push(w);
    }
    Ok(loops)
}

/// Image of a loop in the free group.
pub fn loop_word(s: &SurfaceComplex, crossings: &[(ArcId, Side)]) -> Vec<Letter> {
    let spine = &s.handlebody.spine;
    let mut w = Vec::new();
    for &(arc, side) in crossings {
        let Some(disk) = s.arcs.get(&arc).and_then(|a| a.disk()) else { continue };
        if let Some(g) = spine.generator(disk) {
            let l = g as Letter + 1;
            w.push(if side == Side::A { l } else { -l });
        }
    }
    reduce_word(&w)
}

/// Folded core graph of a subgroup. Edges carry positive generator labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldedGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, Letter)>,
}

impl FoldedGraph {
    pub fn rank(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.vertices)
    }

    /// No vertex has two edges with the same label and direction.
    pub fn is_folded(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.edges
            .iter()
            .all(|&(u, v, l)| seen.insert((u, l, true)) && seen.insert((v, l, false)))
    }
}

/// Stallings folding of the wedge of the given words.
pub fn fold(words: &[Vec<Letter>]) -> FoldedGraph {
    fold_in_order(words, |_| 0)
}

/// Folding where `pick(k)` chooses which of `k` pending collisions to fold
/// next. The result does not depend on the choice.
pub fn fold_in_order(words: &[Vec<Letter>], mut pick: impl FnMut(usize) -> usize) -> FoldedGraph {
    let mut uf = UnionFind::new(1);
    let mut edges: Vec<(usize, usize, Letter)> = Vec::new();
    for w in words {
        let w = reduce_word(w);
        if w.is_empty() {
            continue;
        }
        let mut cur = 0;
        for (i, &x) in w.iter().enumerate() {
            let next = if i + 1 == w.len() { 0 } else { uf.add() };
            if x > 0 {
                edges.push((cur, next, x));
            } else {
                edges.push((next, cur, -x));
            }
            cur = next;
        }
    }
    let mut alive = vec![true; edges.len()];
    loop {
        let mut first: BTreeMap<(usize, Letter, bool), usize> = BTreeMap::new();
        let mut pending = Vec::new();
        for (i, &(u, v, l)) in edges.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            let (u, v) = (uf.find(u), uf.find(v));
            for key in [(u, l, true), (v, l, false)] {
                match first.get(&key) {
                    Some(&j) => pending.push((j, i, key.2)),
                    None => {
                        first.insert(key, i);
                    }
                }
            }
        }
        if pending.is_empty() {
            break;
        }
        let (j, i, out) = pending[pick(pending.len()) % pending.len()];
        let (a, b) = if out { (edges[j].1, edges[i].1) } else { (edges[j].0, edges[i].0) };
        uf.union(a, b);
        alive[i] = false;
    }
    let mut label: BTreeMap<usize, usize> = BTreeMap::new();
    let base = uf.find(0);
    label.insert(base, 0);
    let mut out_edges = Vec::new();
    for (i, &(u, v, l)) in edges.iter().enumerate() {
        if !alive[i] {
            continue;
        }
        let mut id = |x: usize| {
            let r = uf.find(x);
            let n = label.len();
            *label.entry(r).or_insert(n)
        };
        let (a, b) = (id(u), id(v));
        out_edges.push((a, b, l));
    }
    out_edges.sort_unstable();
    FoldedGraph { vertices: label.len(), edges: out_edges }
}

/// The words generate a free subgroup of rank `n`.
pub fn is_injective(words: &[Vec<Letter>], n: usize) -> bool {
    fold(words).rank() == n
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub words: Vec<String>,
    pub rank: usize,
    pub expected_rank: usize,
    pub injective: bool,
}

pub fn check_surface(s: &SurfaceComplex) -> Result<OracleReport, OracleError> {
    let loops = surface_loops(s)?;
    if !FaceMap::build(s).orientable(s) {
        return Err(OracleError::NonOrientable);
    }
    let words: Vec<Vec<Letter>> = loops.iter().map(|l| loop_word(s, l)).collect();
    let expected_rank = (1 - s.euler_characteristic()).max(0) as usize;
    let rank = fold(&words).rank();
    Ok(OracleReport {
        words: words.iter().map(|w| format_word(w)).collect(),
        rank,
        expected_rank,
        injective: rank == expected_rank,
    })
}

/// Crossing of one D-edge, used by callers that build loops by hand.
pub fn crossing(e: DEdge) -> (ArcId, Side) {
    (e.arc, e.side)
}
