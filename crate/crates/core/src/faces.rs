//! Faces: pieces of one ball glued along level arcs.
//!
//! A face has a `+` side (the side facing the spine vertex when nothing
//! intervenes) and a `-` side. For a D-edge on slot `x`, the outer part of
//! the disk lies on the `-` side exactly when the face's own arcs enclosing
//! that D-edge on the same slot, plus the face's crossings of leg `x`, are odd.

use std::collections::BTreeMap;

use crate::complex::{ArcSite, DEdge, SurfaceComplex, UnionFind};
use crate::handlebody::{ArcId, BallId, PieceId, Side, Slot};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub ball: BallId,
    pub pieces: Vec<PieceId>,
    /// False when the level arcs inside the face close a cycle.
    pub is_disk: bool,
    /// Parity of leg crossings, by slot index of the ball.
    pub legs: [bool; 3],
    /// D-edges on the disk system in boundary order.
    pub boundary: Vec<DEdge>,
}

#[derive(Debug, Clone)]
pub struct FaceMap {
    pub faces: Vec<Face>,
    pub face_of: BTreeMap<PieceId, usize>,
    /// Piece owning each D-edge.
    pub owner: BTreeMap<DEdge, PieceId>,
}

impl FaceMap {
    pub fn build(s: &SurfaceComplex) -> FaceMap {
        let ids: Vec<PieceId> = s.pieces.keys().copied().collect();
        let index: BTreeMap<PieceId, usize> = ids.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut owner = BTreeMap::new();
        for p in s.pieces.values() {
            for e in &p.word {
                owner.insert(*e, p.id);
            }
        }
        let mut uf = UnionFind::new(ids.len());
        let mut cyclic = vec![false; ids.len()];
        let mut level_arcs = Vec::new();
        for a in s.arcs.values() {
            if let ArcSite::Level(_) = a.site {
                let (Some(&p), Some(&q)) =
                    (owner.get(&DEdge::new(a.id, Side::A)), owner.get(&DEdge::new(a.id, Side::B)))
                else {
                    continue;
                };
                level_arcs.push((index[&p], index[&q]));
            }
        }
        for &(i, j) in &level_arcs {
            if !uf.union(i, j) {
                cyclic[i] = true;
            }
        }
        let mut groups: BTreeMap<usize, Vec<PieceId>> = BTreeMap::new();
        for (i, &p) in ids.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(p);
        }
        let mut cyclic_root = vec![false; ids.len()];
        for (i, _) in cyclic.iter().enumerate().filter(|(_, c)| **c) {
            let r = uf.find(i);
            cyclic_root[r] = true;
        }
        let mut faces = Vec::new();
        let mut face_of = BTreeMap::new();
        for (root, pieces) in groups {
            let id = faces.len();
            let ball = s.pieces[&pieces[0]].ball;
            let mut legs = [false; 3];
            for p in &pieces {
                face_of.insert(*p, id);
                for &l in &s.pieces[p].legs {
                    if l < 3 {
                        legs[l] ^= true;
                    }
                }
            }
            let boundary = walk_boundary(s, &owner, &pieces);
            faces.push(Face { id, ball, pieces, is_disk: !cyclic_root[root], legs, boundary });
        }
        FaceMap { faces, face_of, owner }
    }

    pub fn face_of_edge(&self, e: DEdge) -> Option<usize> {
        self.owner.get(&e).and_then(|p| self.face_of.get(p)).copied()
    }

    /// True when the outer part of the disk next to `e` lies on the `-`
    /// side of its face.
    pub fn outer_is_minus(&self, s: &SurfaceComplex, e: DEdge) -> bool {
        let Some(slot) = s.slot_of(e) else { return false };
        let Some(face) = self.face_of_edge(e) else { return false };
        let mut parity = self.leg_parity(s, face, slot);
        let chain = s.ancestry(e.arc);
        for &anc in &chain[..chain.len() - 1] {
            if self.face_of_edge(DEdge::new(anc, e.side)) == Some(face) {
                parity ^= true;
            }
        }
        parity
    }

    pub fn leg_parity(&self, s: &SurfaceComplex, face: usize, slot: Slot) -> bool {
        let f = &self.faces[face];
        s.handlebody.balls[f.ball].slot_index(slot).is_some_and(|i| f.legs[i])
    }

    /// Two-colors faces so that the co-orientation extends across every
    /// disk arc. Level arcs keep the co-orientation of their face.
    pub fn orientable(&self, s: &SurfaceComplex) -> bool {
        let n = self.faces.len();
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for a in s.arcs.values() {
            if a.disk().is_none() {
                continue;
            }
            let (ea, eb) = (DEdge::new(a.id, Side::A), DEdge::new(a.id, Side::B));
            let (Some(f), Some(g)) = (self.face_of_edge(ea), self.face_of_edge(eb)) else {
                continue;
            };
            let twist = self.outer_is_minus(s, ea) ^ self.outer_is_minus(s, eb);
            if f == g && twist {
                return false;
            }
            adj[f].push((g, twist));
            adj[g].push((f, twist));
        }
        let mut color: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut stack = vec![start];
            while let Some(f) = stack.pop() {
                let cf = color[f].expect("colored before push");
                for &(g, twist) in &adj[f] {
                    let want = cf ^ twist;
                    match color[g] {
                        None => {
                            color[g] = Some(want);
                            stack.push(g);
                        }
                        Some(c) if c != want => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Disk arcs whose two ends lie on the given face.
    pub fn arcs_of_face(&self, face: usize) -> Vec<ArcId> {
        self.faces[face].boundary.iter().map(|e| e.arc).collect()
    }
}

/// Walks around the union of the pieces, jumping across level arcs, and
/// lists the D-edges on the disk system in the order met.
fn walk_boundary(
    s: &SurfaceComplex,
    owner: &BTreeMap<DEdge, PieceId>,
    pieces: &[PieceId],
) -> Vec<DEdge> {
    let is_level = |e: &DEdge| matches!(s.arcs.get(&e.arc).map(|a| a.site), Some(ArcSite::Level(_)));
    let start = pieces.iter().find_map(|&p| {
        s.pieces[&p].word.iter().position(|e| !is_level(e)).map(|pos| (p, pos))
    });
    let Some(start) = start else { return Vec::new() };
    let total: usize = pieces.iter().map(|p| s.pieces[p].n()).sum();
    let mut out = Vec::new();
    let (mut p, mut pos) = start;
    for _ in 0..=2 * total {
        let e = s.pieces[&p].word[pos];
        if is_level(&e) {
            let other = DEdge::new(e.arc, e.side.flip());
            let Some(&q) = owner.get(&other) else { break };
            let qpos = s.pieces[&q].word.iter().position(|x| *x == other).expect("owner is consistent");
            p = q;
            pos = (qpos + 1) % s.pieces[&q].n();
        } else {
            out.push(e);
            pos = (pos + 1) % s.pieces[&p].n();
        }
        if (p, pos) == start {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::handlebody::{handcuff_spine, ps_balls};

    #[test]
    fn test_level_arc_joins_pieces_into_one_face() {
        let mut s = SurfaceComplex::new(ps_balls(&handcuff_spine()));
        let a = s.add_disk_arc(1, None);
        let l = s.add_level_arc(0);
        s.add_piece(0, vec![DEdge::new(a, Side::A), DEdge::new(l, Side::A)], vec![]);
        s.add_piece(0, vec![DEdge::new(a, Side::B), DEdge::new(l, Side::B)], vec![]);
        let fm = FaceMap::build(&s);
        assert_eq!(fm.faces.len(), 1);
        assert!(fm.faces[0].is_disk);
        assert_eq!(fm.faces[0].boundary.len(), 2);
    }

    #[test]
    fn test_nested_own_arc_flips_side() {
        let mut s = SurfaceComplex::new(ps_balls(&handcuff_spine()));
        let a = s.add_disk_arc(1, None);
        let b = s.add_disk_arc(1, Some(a));
        s.add_piece(0, vec![DEdge::new(a, Side::A), DEdge::new(b, Side::A)], vec![]);
        s.add_piece(0, vec![DEdge::new(a, Side::B), DEdge::new(b, Side::B)], vec![]);
        let fm = FaceMap::build(&s);
        assert!(!fm.outer_is_minus(&s, DEdge::new(a, Side::A)));
        assert!(fm.outer_is_minus(&s, DEdge::new(b, Side::A)));
    }
}
