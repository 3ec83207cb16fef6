//! Complexity, movable saddles, the reduction moves and the standard-position
//! properties.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{normalize_word, ArcSite, DEdge, DiskPiece, PieceKind, SurfaceComplex};
use crate::error::MoveError;
use crate::handlebody::{ArcId, PieceId, Side, Slot};
use crate::retract::RetractGraph;

/// Lexicographic complexity: disk arcs, chain-length histogram read from the
/// longest chain down, then the number of movable saddles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complexity {
    pub disk_arcs: usize,
    /// Number of maximal chains of each length `>= 2`.
    pub chains: BTreeMap<usize, usize>,
    pub movable: usize,
}

impl Ord for Complexity {
    fn cmp(&self, other: &Self) -> Ordering {
        self.disk_arcs.cmp(&other.disk_arcs).then_with(|| {
            let top = self
                .chains
                .keys()
                .chain(other.chains.keys())
                .copied()
                .max()
                .unwrap_or(0);
            for l in (2..=top).rev() {
                let a = self.chains.get(&l).copied().unwrap_or(0);
                let b = other.chains.get(&l).copied().unwrap_or(0);
                if a != b {
                    return a.cmp(&b);
                }
            }
            self.movable.cmp(&other.movable)
        })
    }
}

impl PartialOrd for Complexity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Complexity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let hist: Vec<String> = self.chains.iter().rev().map(|(l, c)| format!("{l}:{c}")).collect();
        write!(f, "({}, [{}], {})", self.disk_arcs, hist.join(" "), self.movable)
    }
}

/// Root-to-leaf chains of nested disk arcs, longest first.
pub fn maximal_arc_sets(s: &SurfaceComplex) -> Vec<Vec<ArcId>> {
    let nest = s.nesting();
    let mut out = Vec::new();
    for a in s.arcs.values() {
        if a.disk().is_some() && nest.children_of(a.id).is_empty() {
            out.push(s.ancestry(a.id));
        }
    }
    out.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
    out
}

pub fn complexity(s: &SurfaceComplex) -> Complexity {
    let mut chains = BTreeMap::new();
    for c in maximal_arc_sets(s) {
        if c.len() >= 2 {
            *chains.entry(c.len()).or_insert(0) += 1;
        }
    }
    Complexity { disk_arcs: s.disk_arc_count(), chains, movable: movable_saddles(s).len() }
}

/// A saddle with two legs ending at nested arcs on one slot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovableWitness {
    pub saddle: PieceId,
    pub slot: Slot,
    pub outer: ArcId,
    pub inner: ArcId,
    /// Trivial strips crossed by the leg ending at `outer` and at `inner`.
    pub outer_path: Vec<(ArcId, PieceId)>,
    pub inner_path: Vec<(ArcId, PieceId)>,
}

impl MovableWitness {
    pub fn is_direct(&self) -> bool {
        self.outer_path.is_empty() && self.inner_path.is_empty()
    }
}

/// End of a leg leaving a saddle: the disk D-edge reached and the level
/// arcs and strips crossed on the way.
#[derive(Debug, Clone)]
struct LegEnd {
    edge: DEdge,
    path: Vec<(ArcId, PieceId)>,
}

pub(crate) fn owner_map(s: &SurfaceComplex) -> BTreeMap<DEdge, PieceId> {
    let mut m = BTreeMap::new();
    for p in s.pieces.values() {
        for e in &p.word {
            m.insert(*e, p.id);
        }
    }
    m
}

fn is_level(s: &SurfaceComplex, arc: ArcId) -> bool {
    matches!(s.arcs.get(&arc).map(|a| a.site), Some(ArcSite::Level(_)))
}

fn leg_ends(s: &SurfaceComplex, owner: &BTreeMap<DEdge, PieceId>, piece: PieceId) -> Vec<LegEnd> {
    let mut out = Vec::new();
    for &e in &s.pieces[&piece].word {
        let mut edge = e;
        let mut path = Vec::new();
        let mut ok = true;
        while is_level(s, edge.arc) {
            let across = DEdge::new(edge.arc, edge.side.flip());
            let Some(&q) = owner.get(&across) else {
                ok = false;
                break;
            };
            let qp = &s.pieces[&q];
            if qp.kind != PieceKind::Trivial || path.iter().any(|(_, x)| *x == q) || q == piece {
                ok = false;
                break;
            }
            path.push((edge.arc, q));
            edge = *qp.word.iter().find(|x| **x != across).expect("strip has two D-edges");
        }
        if ok {
            out.push(LegEnd { edge, path });
        }
    }
    out
}

/// Witnesses for one saddle, direct pairs first.
pub fn saddle_witnesses(s: &SurfaceComplex, piece: PieceId) -> Vec<MovableWitness> {
    let p = &s.pieces[&piece];
    if p.kind != PieceKind::Saddle {
        return Vec::new();
    }
    let owner = owner_map(s);
    let ends = leg_ends(s, &owner, piece);
    let mut out = Vec::new();
    for x in &ends {
        for y in &ends {
            if x.edge.side != y.edge.side || x.edge.arc == y.edge.arc {
                continue;
            }
            let (Some(sx), Some(sy)) = (s.slot_of(x.edge), s.slot_of(y.edge)) else { continue };
            if sx != sy {
                continue;
            }
            let chain = s.ancestry(y.edge.arc);
            if chain[..chain.len() - 1].contains(&x.edge.arc) {
                out.push(MovableWitness {
                    saddle: piece,
                    slot: sx,
                    outer: x.edge.arc,
                    inner: y.edge.arc,
                    outer_path: x.path.clone(),
                    inner_path: y.path.clone(),
                });
            }
        }
    }
    out.sort_by_key(|w| (!w.is_direct(), w.outer_path.len() + w.inner_path.len(), w.outer, w.inner));
    out
}

/// Saddles with at least one movable witness.
pub fn movable_saddles(s: &SurfaceComplex) -> Vec<MovableWitness> {
    s.pieces
        .keys()
        .filter_map(|&p| saddle_witnesses(s, p).into_iter().next())
        .collect()
}

pub(crate) fn rotate_to(word: &[DEdge], e: DEdge) -> Option<Vec<DEdge>> {
    let i = word.iter().position(|x| *x == e)?;
    let mut w = word.to_vec();
    w.rotate_left(i);
    Some(w)
}

/// Re-kinds a piece by valence; an odd valence of at least 5 is split into
/// a 6-disk and an even saddle joined by a new level arc.
fn place_piece(s: &mut SurfaceComplex, id: PieceId, ball: usize, mut word: Vec<DEdge>, legs: Vec<usize>) {
    let n = word.len();
    if n >= 5 && n % 2 == 1 {
        let l = s.add_level_arc(ball);
        let rest: Vec<DEdge> = word.drain(2..).collect();
        word.push(DEdge::new(l, Side::A));
        let mut big = vec![DEdge::new(l, Side::B)];
        big.extend(rest);
        insert_piece(s, id, ball, big, legs);
        let small = s.next_piece_id();
        insert_piece(s, small, ball, word, Vec::new());
    } else {
        insert_piece(s, id, ball, word, legs);
    }
}

pub(crate) fn insert_piece(s: &mut SurfaceComplex, id: PieceId, ball: usize, mut word: Vec<DEdge>, mut legs: Vec<usize>) {
    normalize_word(&mut word);
    legs.sort_unstable();
    let kind = PieceKind::for_valence(word.len());
    s.pieces.insert(id, DiskPiece { id, ball, word, kind, legs });
}

pub(crate) fn xor_legs(a: &[usize], b: &[usize]) -> Vec<usize> {
    let x: BTreeSet<usize> = a.iter().copied().collect();
    let y: BTreeSet<usize> = b.iter().copied().collect();
    x.symmetric_difference(&y).copied().collect()
}

/// Pushes the band of a saddle between nested arcs `outer ⊃ inner` across
/// the disk. `inner` must be the only child of `outer` and both must sit
/// directly on the saddle. The saddle splits in two and the far-side pieces
/// of the two arcs merge. Arc ids are kept: `outer` and `inner` become the
/// two new sibling arcs; the split-off half reuses the id of the far-side
/// piece that disappears.
pub fn boundary_compress(
    s: &SurfaceComplex,
    saddle: PieceId,
    outer: ArcId,
    inner: ArcId,
) -> Result<SurfaceComplex, MoveError> {
    let x = s.pieces.get(&saddle).ok_or(MoveError::UnknownPiece(saddle))?;
    let oa = s.arcs.get(&outer).ok_or(MoveError::UnknownArc(outer))?;
    s.arcs.get(&inner).ok_or(MoveError::UnknownArc(inner))?;
    if x.kind != PieceKind::Saddle {
        return Err(MoveError::NotMovable(saddle));
    }
    let side = x
        .word
        .iter()
        .find(|e| e.arc == outer)
        .map(|e| e.side)
        .ok_or(MoveError::NotMovable(saddle))?;
    let eo = DEdge::new(outer, side);
    let ei = DEdge::new(inner, side);
    if !x.word.contains(&ei) || s.arcs[&inner].parent != Some(outer) {
        return Err(MoveError::NotMovable(saddle));
    }
    if s.nesting().children_of(outer) != [inner] {
        return Err(MoveError::NotOutermost(outer));
    }
    let owner = owner_map(s);
    let far_o = *owner.get(&DEdge::new(outer, side.flip())).ok_or(MoveError::UnknownArc(outer))?;
    let far_i = *owner.get(&DEdge::new(inner, side.flip())).ok_or(MoveError::UnknownArc(inner))?;
    if far_o == far_i || far_o == saddle || far_i == saddle {
        return Err(MoveError::FarSidesCoincide(outer, inner));
    }
    let w = rotate_to(&x.word, eo).expect("edge present");
    let k = w.iter().position(|e| *e == ei).expect("edge present");
    let w1 = w[1..k].to_vec();
    let w2 = w[k + 1..].to_vec();
    let fo = &s.pieces[&far_o];
    let fi = &s.pieces[&far_i];
    let u1 = rotate_to(&fo.word, DEdge::new(outer, side.flip())).expect("edge present")[1..].to_vec();
    let u2 = rotate_to(&fi.word, DEdge::new(inner, side.flip())).expect("edge present")[1..].to_vec();

    let mut t = s.clone();
    let parent = oa.parent;
    let kids: Vec<ArcId> = s.nesting().children_of(inner).to_vec();
    for k in kids {
        t.arcs.get_mut(&k).expect("child exists").parent = parent;
    }
    t.arcs.get_mut(&outer).expect("arc exists").parent = parent;
    t.arcs.get_mut(&inner).expect("arc exists").parent = parent;

    let (xball, xlegs) = (x.ball, x.legs.clone());
    let (gball, glegs) = (fo.ball, xor_legs(&fo.legs, &fi.legs));
    t.pieces.remove(&saddle);
    t.pieces.remove(&far_o);
    t.pieces.remove(&far_i);

    let mut f1 = vec![eo];
    f1.extend(w1);
    let mut f2 = vec![ei];
    f2.extend(w2);
    let mut g = vec![DEdge::new(outer, side.flip())];
    g.extend(u1);
    g.push(DEdge::new(inner, side.flip()));
    g.extend(u2);
    place_piece(&mut t, saddle, xball, f1, xlegs);
    place_piece(&mut t, far_i, xball, f2, Vec::new());
    place_piece(&mut t, far_o, gball, g, glegs);
    Ok(t)
}

/// Merges a saddle with a critical piece across a level arc.
pub fn merge_vertices(
    s: &SurfaceComplex,
    saddle: PieceId,
    other: PieceId,
    level: ArcId,
) -> Result<SurfaceComplex, MoveError> {
    let x = s.pieces.get(&saddle).ok_or(MoveError::UnknownPiece(saddle))?;
    let y = s.pieces.get(&other).ok_or(MoveError::UnknownPiece(other))?;
    if x.kind != PieceKind::Saddle || !y.kind.is_critical() {
        return Err(MoveError::NotMovable(saddle));
    }
    let lx = x.word.iter().copied().find(|e| e.arc == level);
    let ly = y.word.iter().copied().find(|e| e.arc == level);
    let (Some(lx), Some(ly)) = (lx, ly) else {
        return Err(MoveError::NotAdjacent(saddle, other));
    };
    if !is_level(s, level) || lx.side == ly.side {
        return Err(MoveError::NotAdjacent(saddle, other));
    }
    let n = x.n() + y.n() - 2;
    if n < 4 || n % 2 == 1 {
        return Err(MoveError::BadMergedValence(n));
    }
    let nested = x.word.iter().any(|a| {
        y.word.iter().any(|b| {
            a.side == b.side
                && s.slot_of(*a).is_some()
                && s.slot_of(*a) == s.slot_of(*b)
                && (s.arcs[&b.arc].parent == Some(a.arc) || s.arcs[&a.arc].parent == Some(b.arc))
        })
    });
    if !nested {
        return Err(MoveError::NotMovable(saddle));
    }
    let mut word = rotate_to(&x.word, lx).expect("edge present")[1..].to_vec();
    word.extend_from_slice(&rotate_to(&y.word, ly).expect("edge present")[1..]);
    let legs = xor_legs(&x.legs, &y.legs);
    let ball = x.ball;
    let mut t = s.clone();
    t.pieces.remove(&other);
    t.arcs.remove(&level);
    insert_piece(&mut t, saddle, ball, word, legs);
    Ok(t)
}

/// Absorbs the trivial strips along the legs of a leg-movable saddle so the
/// nested pair sits directly on it, then compresses.
pub fn remove_movable_saddle(s: &SurfaceComplex, saddle: PieceId) -> Result<SurfaceComplex, MoveError> {
    let ws = saddle_witnesses(s, saddle);
    let Some(first) = ws.first() else {
        return Err(MoveError::NotMovable(saddle));
    };
    if first.is_direct() {
        return Err(MoveError::DirectPair(saddle));
    }
    let mut last = MoveError::NotMovable(saddle);
    for w in &ws {
        let mut t = s.clone();
        for &(level, strip) in w.outer_path.iter().chain(w.inner_path.iter()) {
            t = absorb_strip(&t, saddle, strip, level)?;
        }
        match boundary_compress(&t, saddle, w.outer, w.inner) {
            Ok(r) => return Ok(r),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn absorb_strip(s: &SurfaceComplex, piece: PieceId, strip: PieceId, level: ArcId) -> Result<SurfaceComplex, MoveError> {
    let x = s.pieces.get(&piece).ok_or(MoveError::UnknownPiece(piece))?;
    let t = s.pieces.get(&strip).ok_or(MoveError::UnknownPiece(strip))?;
    let pos = x.word.iter().position(|e| e.arc == level).ok_or(MoveError::NotAdjacent(piece, strip))?;
    let other = *t.word.iter().find(|e| e.arc != level).ok_or(MoveError::NotAdjacent(piece, strip))?;
    let mut u = s.clone();
    let mut word = x.word.clone();
    word[pos] = other;
    let legs = xor_legs(&x.legs, &t.legs);
    let (ball, kind) = (x.ball, x.kind);
    u.pieces.remove(&strip);
    u.arcs.remove(&level);
    normalize_word(&mut word);
    u.pieces.insert(piece, DiskPiece { id: piece, ball, word, kind, legs });
    Ok(u)
}

/// Removes a trivial strip that joins an arc to its only child on the same
/// side of a disk by pushing it across the disk. The two pieces met on the
/// far side fuse and two disk arcs disappear.
pub fn cancel_strip(s: &SurfaceComplex, strip: PieceId) -> Result<SurfaceComplex, MoveError> {
    let t = s.pieces.get(&strip).ok_or(MoveError::UnknownPiece(strip))?;
    let [x, y] = t.word[..] else {
        return Err(MoveError::NotMovable(strip));
    };
    if t.kind != PieceKind::Trivial || s.slot_of(x).is_none() || s.slot_of(x) != s.slot_of(y) {
        return Err(MoveError::NotMovable(strip));
    }
    let (eo, ei) = if s.arcs[&y.arc].parent == Some(x.arc) {
        (x, y)
    } else if s.arcs[&x.arc].parent == Some(y.arc) {
        (y, x)
    } else {
        return Err(MoveError::NotMovable(strip));
    };
    let nest = s.nesting();
    if nest.children_of(eo.arc) != [ei.arc] {
        return Err(MoveError::NotOutermost(eo.arc));
    }
    let owner = owner_map(s);
    let (fo, fi) = (eo.flipped(), ei.flipped());
    let far_o = *owner.get(&fo).ok_or(MoveError::UnknownArc(eo.arc))?;
    let far_i = *owner.get(&fi).ok_or(MoveError::UnknownArc(ei.arc))?;
    if far_o == far_i || far_o == strip || far_i == strip {
        return Err(MoveError::FarSidesCoincide(eo.arc, ei.arc));
    }
    let (po, pi) = (&s.pieces[&far_o], &s.pieces[&far_i]);
    let mut word = rotate_to(&po.word, fo).expect("edge present")[1..].to_vec();
    word.extend_from_slice(&rotate_to(&pi.word, fi).expect("edge present")[1..]);
    if word.is_empty() {
        return Err(MoveError::BadMergedValence(0));
    }
    let legs = xor_legs(&po.legs, &pi.legs);
    let ball = po.ball;
    let mut u = s.clone();
    let parent = s.arcs[&eo.arc].parent;
    for &k in nest.children_of(ei.arc) {
        u.arcs.get_mut(&k).expect("child exists").parent = parent;
    }
    u.arcs.remove(&eo.arc);
    u.arcs.remove(&ei.arc);
    u.pieces.remove(&strip);
    u.pieces.remove(&far_o);
    u.pieces.remove(&far_i);
    place_piece(&mut u, far_o, ball, word, legs);
    Ok(u)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    CancelStrip,
    Compress,
    MergeThenCompress,
    AbsorbThenCompress,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub kind: MoveKind,
    /// The saddle moved, or the strip cancelled.
    pub saddle: PieceId,
    pub arcs: (ArcId, ArcId),
    pub before: Complexity,
    pub after: Complexity,
    /// Euler characteristic before and after.
    pub euler: (i64, i64),
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub surface: SurfaceComplex,
    pub log: Vec<MoveRecord>,
}

/// Greedy fixpoint of the moves; every accepted step lowers the complexity.
pub fn reduce_to_standard(s: &SurfaceComplex) -> Reduction {
    let mut cur = s.clone();
    let mut log = Vec::new();
    while let Some((next, rec)) = step(&cur) {
        debug_assert!(rec.after < rec.before);
        cur = next;
        log.push(rec);
    }
    Reduction { surface: cur, log }
}

fn step(s: &SurfaceComplex) -> Option<(SurfaceComplex, MoveRecord)> {
    let before = complexity(s);
    let chi = s.euler_characteristic();
    let accept = |t: SurfaceComplex, kind: MoveKind, saddle, arcs| {
        let after = complexity(&t);
        let euler = (chi, t.euler_characteristic());
        (after < before).then(|| (t, MoveRecord { kind, saddle, arcs, before: before.clone(), after, euler }))
    };
    for p in s.pieces.values().filter(|p| p.kind == PieceKind::Trivial) {
        if let Ok(t) = cancel_strip(s, p.id) {
            let arcs = (p.word[0].arc, p.word[1].arc);
            if let Some(r) = accept(t, MoveKind::CancelStrip, p.id, arcs) {
                return Some(r);
            }
        }
    }
    let saddles: Vec<PieceId> =
        s.pieces.values().filter(|p| p.kind == PieceKind::Saddle).map(|p| p.id).collect();
    for &x in &saddles {
        for w in saddle_witnesses(s, x).into_iter().filter(|w| w.is_direct()) {
            if let Ok(t) = boundary_compress(s, x, w.outer, w.inner) {
                if let Some(r) = accept(t, MoveKind::Compress, x, (w.outer, w.inner)) {
                    return Some(r);
                }
            }
        }
    }
    for &x in &saddles {
        for e in &s.pieces[&x].word {
            if !is_level(s, e.arc) {
                continue;
            }
            let Some(y) = s.end(e.arc, e.side.flip()).map(|a| a.piece) else { continue };
            let Ok(m) = merge_vertices(s, x, y, e.arc) else { continue };
            for w in saddle_witnesses(&m, x).into_iter().filter(|w| w.is_direct()) {
                if let Ok(t) = boundary_compress(&m, x, w.outer, w.inner) {
                    if let Some(r) = accept(t, MoveKind::MergeThenCompress, x, (w.outer, w.inner)) {
                        return Some(r);
                    }
                }
            }
        }
    }
    for &x in &saddles {
        if let Ok(t) = remove_movable_saddle(s, x) {
            let w = saddle_witnesses(s, x).into_iter().next().expect("movable");
            if let Some(r) = accept(t, MoveKind::AbsorbThenCompress, x, (w.outer, w.inner)) {
                return Some(r);
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub property: u8,
    pub name: String,
    pub holds: bool,
    pub offenders: Vec<PieceId>,
}

/// Checks the five standard-position properties.
pub fn standard_properties(s: &SurfaceComplex) -> Vec<PropertyCheck> {
    let g = RetractGraph::build(s);
    let trivial = g.trivial_cycle().map(|w| w.pieces).unwrap_or_default();
    let movable: Vec<PieceId> = movable_saddles(s).into_iter().map(|w| w.saddle).collect();
    let avoiding: Vec<PieceId> = s
        .pieces
        .values()
        .filter(|p| p.kind == PieceKind::Saddle && p.n() >= 5 && p.legs.is_empty())
        .map(|p| p.id)
        .collect();
    let bad_two: Vec<PieceId> = s
        .pieces
        .values()
        .filter(|p| p.n() == 1 && p.word.iter().any(|e| !is_level(s, e.arc)))
        .map(|p| p.id)
        .collect();
    let owner = owner_map(s);
    let bad_six: Vec<PieceId> = s
        .pieces
        .values()
        .filter(|p| p.kind == PieceKind::BoundaryCritical && p.n() == 3)
        .filter(|p| {
            let ends = leg_ends_any(s, &owner, p.id);
            let slots: BTreeSet<Slot> = ends.iter().filter_map(|e| s.slot_of(*e)).collect();
            slots.len() < 3
        })
        .map(|p| p.id)
        .collect();
    let mk = |property, name: &str, offenders: Vec<PieceId>| PropertyCheck {
        property,
        name: name.to_string(),
        holds: offenders.is_empty(),
        offenders,
    };
    vec![
        mk(1, "retract graph is not trivial", trivial),
        mk(2, "no movable saddles", movable),
        mk(3, "large saddles cross the spine", avoiding),
        mk(4, "2-disks meet level arcs only", bad_two),
        mk(5, "6-disk legs reach all three slots", bad_six),
    ]
}

/// Leg ends of any piece, following level arcs through trivial strips.
fn leg_ends_any(s: &SurfaceComplex, owner: &BTreeMap<DEdge, PieceId>, piece: PieceId) -> Vec<DEdge> {
    let mut out = Vec::new();
    for &e in &s.pieces[&piece].word {
        let mut edge = e;
        let mut steps = 0;
        while is_level(s, edge.arc) && steps <= s.pieces.len() {
            let across = DEdge::new(edge.arc, edge.side.flip());
            let Some(&q) = owner.get(&across) else { break };
            let qp = &s.pieces[&q];
            if qp.kind != PieceKind::Trivial {
                break;
            }
            edge = *qp.word.iter().find(|x| **x != across).expect("strip has two D-edges");
            steps += 1;
        }
        out.push(edge);
    }
    out
}
