//! Local isotopies that move a complex away from standard position, used to
//! generate test inputs for the reducer.

use serde::{Deserialize, Serialize};

use crate::complex::{normalize_word, validate, DEdge, SurfaceComplex};
use crate::error::MoveError;
use crate::handlebody::{ArcId, PieceId, Side, Slot};
use crate::region::complement_regions;
use crate::standard::{insert_piece, owner_map, rotate_to, xor_legs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mutation {
    /// Inverse of a boundary compression: `piece` carries sibling arcs
    /// `outer`, `inner` on the same side; it is cut between them and the two
    /// far pieces are fused into one piece with `inner` nested in `outer`.
    Uncompress { piece: PieceId, outer: ArcId, inner: ArcId },
    /// Pushes a finger of the surface across the disk at `arc`, adding two
    /// parallel arcs and a strip on each side.
    Finger { arc: ArcId },
}

/// All mutations whose preconditions hold. The results still have to pass
/// [`is_embedded`].
pub fn candidates(s: &SurfaceComplex) -> Vec<Mutation> {
    let nest = s.nesting();
    let mut out = Vec::new();
    for p in s.pieces.values() {
        for x in &p.word {
            for y in &p.word {
                if x.arc == y.arc || x.side != y.side {
                    continue;
                }
                let (Some(sx), Some(sy)) = (s.slot_of(*x), s.slot_of(*y)) else { continue };
                if sx != sy
                    || s.arcs[&x.arc].parent != s.arcs[&y.arc].parent
                    || !nest.children_of(x.arc).is_empty()
                    || !nest.children_of(y.arc).is_empty()
                {
                    continue;
                }
                out.push(Mutation::Uncompress { piece: p.id, outer: x.arc, inner: y.arc });
            }
        }
    }
    for a in s.arcs.values() {
        if a.disk().is_some() {
            out.push(Mutation::Finger { arc: a.id });
        }
    }
    out
}

pub fn apply(s: &SurfaceComplex, m: Mutation) -> Result<SurfaceComplex, MoveError> {
    match m {
        Mutation::Uncompress { piece, outer, inner } => uncompress(s, piece, outer, inner),
        Mutation::Finger { arc } => finger(s, arc),
    }
}

/// Passes validation and every ball has a consistent complement.
pub fn is_embedded(s: &SurfaceComplex) -> bool {
    validate(s).is_valid() && complement_regions(s).is_ok()
}

fn uncompress(s: &SurfaceComplex, piece: PieceId, outer: ArcId, inner: ArcId) -> Result<SurfaceComplex, MoveError> {
    let g = s.pieces.get(&piece).ok_or(MoveError::UnknownPiece(piece))?;
    let eo = *g.word.iter().find(|e| e.arc == outer).ok_or(MoveError::UnknownArc(outer))?;
    let ei = DEdge::new(inner, eo.side);
    if !g.word.contains(&ei) {
        return Err(MoveError::UnknownArc(inner));
    }
    let owner = owner_map(s);
    let (fo, fi) = (eo.flipped(), ei.flipped());
    let far_o = *owner.get(&fo).ok_or(MoveError::UnknownArc(outer))?;
    let far_i = *owner.get(&fi).ok_or(MoveError::UnknownArc(inner))?;
    if far_o == far_i || far_o == piece || far_i == piece {
        return Err(MoveError::FarSidesCoincide(outer, inner));
    }
    let w = rotate_to(&g.word, eo).expect("edge present");
    let k = w.iter().position(|e| *e == ei).expect("edge present");
    let mut merged = vec![fo];
    merged.extend_from_slice(&rotate_to(&s.pieces[&far_o].word, fo).expect("edge present")[1..]);
    merged.push(fi);
    merged.extend_from_slice(&rotate_to(&s.pieces[&far_i].word, fi).expect("edge present")[1..]);
    let halves = [w[..k].to_vec(), w[k..].to_vec()];
    for n in [merged.len(), halves[0].len(), halves[1].len()] {
        if n >= 5 && n % 2 == 1 {
            return Err(MoveError::BadMergedValence(n));
        }
    }

    let mut t = s.clone();
    t.arcs.get_mut(&inner).expect("arc exists").parent = Some(outer);
    let fball = s.pieces[&far_o].ball;
    let legs = xor_legs(&s.pieces[&far_o].legs, &s.pieces[&far_i].legs);
    let [h1, h2] = halves;
    insert_piece(&mut t, far_o, fball, merged, legs);
    insert_piece(&mut t, piece, g.ball, h1, g.legs.clone());
    insert_piece(&mut t, far_i, g.ball, h2, Vec::new());
    Ok(t)
}

fn finger(s: &SurfaceComplex, arc: ArcId) -> Result<SurfaceComplex, MoveError> {
    let a = s.arcs.get(&arc).ok_or(MoveError::UnknownArc(arc))?;
    let disk = a.disk().ok_or(MoveError::UnknownArc(arc))?;
    let owner = owner_map(s);
    let q = *owner.get(&DEdge::new(arc, Side::B)).ok_or(MoveError::UnknownArc(arc))?;
    let kids = s.nesting().children_of(arc).to_vec();
    let mut t = s.clone();
    let mid = t.add_disk_arc(disk, Some(arc));
    let tip = t.add_disk_arc(disk, Some(mid));
    for k in kids {
        t.arcs.get_mut(&k).expect("child exists").parent = Some(tip);
    }
    let qp = t.pieces.get_mut(&q).expect("owner exists");
    for e in qp.word.iter_mut() {
        if *e == DEdge::new(arc, Side::B) {
            *e = DEdge::new(tip, Side::B);
        }
    }
    normalize_word(&mut qp.word);
    let h = &s.handlebody;
    let far = h.ball_of(Slot { disk, side: Side::B });
    let near = h.ball_of(Slot { disk, side: Side::A });
    t.add_piece(far, vec![DEdge::new(arc, Side::B), DEdge::new(mid, Side::B)], Vec::new());
    t.add_piece(near, vec![DEdge::new(mid, Side::A), DEdge::new(tip, Side::A)], Vec::new());
    Ok(t)
}
