//! Complement regions of the faces inside each ball.
//!
//! Nodes are the two sides of every face and the D-faces (pieces of the
//! disk slots cut by arcs). A chord joins the side of its face facing a
//! D-face to that D-face. Legs of the spine tie the central D-faces to the
//! region holding the spine vertex. The result is accepted only when every
//! face separates and there is exactly one more region than faces.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{DEdge, SurfaceComplex, UnionFind};
use crate::error::RegionError;
use crate::faces::FaceMap;
use crate::handlebody::{ArcId, BallId, Slot};

/// Piece of a disk slot: the central part or the part just inside an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DFace {
    pub slot: Slot,
    pub inside: Option<ArcId>,
}

/// Cell of a region boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cell {
    /// Face id and whether this is its `-` side.
    FaceSide(usize, bool),
    DFace(DFace),
}

/// A chord joining a face side to a D-face. `inner` marks the link into the
/// D-face enclosed by the chord.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Link {
    pub edge: DEdge,
    pub inner: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementRegion {
    pub id: usize,
    pub ball: BallId,
    pub cells: Vec<Cell>,
    /// Each link with its face-side cell and D-face cell.
    pub links: Vec<(Link, Cell, Cell)>,
    pub holds_vertex: bool,
}

impl ComplementRegion {
    pub fn face_sides(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.cells.iter().filter_map(|c| match c {
            Cell::FaceSide(f, m) => Some((*f, *m)),
            Cell::DFace(_) => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallRegions {
    pub ball: BallId,
    pub faces: usize,
    pub regions: Vec<ComplementRegion>,
}

/// Cyclic order of links around a cell, for crossing tests.
pub fn cell_order(s: &SurfaceComplex, fm: &FaceMap, cell: Cell) -> Vec<Link> {
    match cell {
        Cell::FaceSide(f, minus) => fm.faces[f]
            .boundary
            .iter()
            .map(|&e| Link { edge: e, inner: fm.outer_is_minus(s, e) != minus })
            .collect(),
        Cell::DFace(d) => {
            let nest = s.nesting();
            let kids: Vec<ArcId> = match d.inside {
                Some(a) => nest.children_of(a).to_vec(),
                None => nest.roots_of(d.slot.disk).to_vec(),
            };
            let mut out = Vec::new();
            if let Some(a) = d.inside {
                out.push(Link { edge: DEdge::new(a, d.slot.side), inner: true });
            }
            out.extend(kids.into_iter().map(|a| Link { edge: DEdge::new(a, d.slot.side), inner: false }));
            out
        }
    }
}

pub fn complement_regions(s: &SurfaceComplex) -> Result<Vec<BallRegions>, RegionError> {
    let fm = FaceMap::build(s);
    (0..s.handlebody.balls.len()).map(|b| ball_regions(s, &fm, b)).collect()
}

pub fn ball_regions(s: &SurfaceComplex, fm: &FaceMap, ball: BallId) -> Result<BallRegions, RegionError> {
    let pb = &s.handlebody.balls[ball];
    let faces: Vec<usize> = fm.faces.iter().filter(|f| f.ball == ball).map(|f| f.id).collect();
    for &f in &faces {
        if !fm.faces[f].is_disk {
            return Err(RegionError::FaceNotDisk(fm.faces[f].pieces[0]));
        }
    }
    let mut index: BTreeMap<Cell, usize> = BTreeMap::new();
    let mut uf = UnionFind::new(1);
    let anchor = 0;
    let mut node = |c: Cell, uf: &mut UnionFind| *index.entry(c).or_insert_with(|| uf.add());
    for &f in &faces {
        node(Cell::FaceSide(f, false), &mut uf);
        node(Cell::FaceSide(f, true), &mut uf);
    }
    let mut slot_has_arcs = [false; 3];
    for (i, &slot) in pb.slots.iter().enumerate() {
        node(Cell::DFace(DFace { slot, inside: None }), &mut uf);
        for a in s.arcs.values() {
            if a.disk() == Some(slot.disk) {
                slot_has_arcs[i] = true;
                node(Cell::DFace(DFace { slot, inside: Some(a.id) }), &mut uf);
            }
        }
    }
    let mut links = Vec::new();
    for &f in &faces {
        for &e in &fm.faces[f].boundary {
            let slot = s.slot_of(e).expect("face boundary holds disk arcs");
            let minus = fm.outer_is_minus(s, e);
            let outer = Cell::DFace(DFace { slot, inside: s.arcs[&e.arc].parent });
            let inner = Cell::DFace(DFace { slot, inside: Some(e.arc) });
            let (so, si) = (Cell::FaceSide(f, minus), Cell::FaceSide(f, !minus));
            let (a, b, c, d) = (index[&so], index[&outer], index[&si], index[&inner]);
            uf.union(a, b);
            uf.union(c, d);
            links.push((Link { edge: e, inner: false }, so, outer));
            links.push((Link { edge: e, inner: true }, si, inner));
        }
    }
    for (i, &slot) in pb.slots.iter().enumerate() {
        let central = index[&Cell::DFace(DFace { slot, inside: None })];
        let crossing: Vec<usize> = faces.iter().copied().filter(|&f| fm.faces[f].legs[i]).collect();
        match crossing.len() {
            0 => {
                uf.union(anchor, central);
            }
            1 => {
                let f = crossing[0];
                uf.union(central, index[&Cell::FaceSide(f, true)]);
                uf.union(anchor, index[&Cell::FaceSide(f, false)]);
            }
            _ if !slot_has_arcs[i] => return Err(RegionError::AmbiguousLeg { ball, slot: i }),
            _ => {}
        }
    }
    for &f in &faces {
        if uf.find(index[&Cell::FaceSide(f, false)]) == uf.find(index[&Cell::FaceSide(f, true)]) {
            return Err(RegionError::SidesMerged { ball, piece: fm.faces[f].pieces[0] });
        }
    }
    let mut groups: BTreeMap<usize, Vec<Cell>> = BTreeMap::new();
    for (&c, &i) in &index {
        groups.entry(uf.find(i)).or_default().push(c);
    }
    let root_anchor = uf.find(anchor);
    let expected = faces.len() + 1;
    if groups.len() != expected {
        return Err(RegionError::RegionCount { ball, found: groups.len(), expected });
    }
    let mut regions = Vec::new();
    let mut region_of_root = BTreeMap::new();
    for (root, cells) in groups {
        region_of_root.insert(root, regions.len());
        regions.push(ComplementRegion {
            id: regions.len(),
            ball,
            cells,
            links: Vec::new(),
            holds_vertex: root == root_anchor,
        });
    }
    for (link, fc, dc) in links {
        let r = region_of_root[&uf.find(index[&fc])];
        regions[r].links.push((link, fc, dc));
    }
    Ok(BallRegions { ball, faces: faces.len(), regions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::handlebody::{handcuff_spine, ps_balls, Side};

    fn collar() -> SurfaceComplex {
        let mut s = SurfaceComplex::new(ps_balls(&handcuff_spine()));
        let a = s.add_disk_arc(1, None);
        s.add_piece(0, vec![DEdge::new(a, Side::A), DEdge::new(a, Side::B)], vec![]);
        s
    }

    #[test]
    fn test_one_face_two_regions() {
        let s = collar();
        let r = complement_regions(&s).unwrap();
        assert_eq!(r[0].regions.len(), 2);
        assert_eq!(r[1].regions.len(), 1);
        assert!(r[1].regions[0].holds_vertex);
    }

    #[test]
    fn test_crossing_face_must_separate_leg() {
        let mut s = collar();
        let slot_y = s.handlebody.slot_index(Slot { disk: 1, side: Side::A });
        s.pieces.get_mut(&0).unwrap().legs = vec![slot_y];
        assert!(complement_regions(&s).is_ok());
        let b = s.add_disk_arc(1, None);
        s.add_piece(0, vec![DEdge::new(b, Side::A), DEdge::new(b, Side::B)], vec![]);
        assert!(matches!(complement_regions(&s), Err(RegionError::SidesMerged { .. })));
    }
}
