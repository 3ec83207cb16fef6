//! Combinatorial encoding of a surface in standard-position form.
//!
//! The surface is cut by the disk system into disk pieces, one per ball.
//! Each piece carries a cyclic boundary word of D-edges; the B-edges between
//! consecutive D-edges are implicit. An arc is either a disk arc (part of
//! `S ∩ D` on one meridian disk, nested into a forest) or a level arc that
//! glues two pieces of the same ball along a horizontal cut.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::handlebody::{ArcId, BallId, DiskId, Handlebody, PieceId, Side, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcSite {
    Disk(DiskId),
    Level(BallId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceArc {
    pub id: ArcId,
    pub site: ArcSite,
    /// Enclosing arc on the same disk, if any.
    pub parent: Option<ArcId>,
}

impl SurfaceArc {
    pub fn disk(&self) -> Option<DiskId> {
        match self.site {
            ArcSite::Disk(d) => Some(d),
            ArcSite::Level(_) => None,
        }
    }
}

/// One D-edge of a boundary word: an arc seen from one of its two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DEdge {
    pub arc: ArcId,
    pub side: Side,
}

impl DEdge {
    pub fn new(arc: ArcId, side: Side) -> DEdge {
        DEdge { arc, side }
    }

    /// The same arc seen from the other side.
    pub fn flipped(self) -> DEdge {
        DEdge { arc: self.arc, side: self.side.flip() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceKind {
    /// 4-disk without a critical point.
    Trivial,
    /// 2-disk, critical 4-disk or 6-disk.
    BoundaryCritical,
    /// 2n-disk with n even and at least 4.
    Saddle,
}

impl PieceKind {
    pub fn is_critical(self) -> bool {
        self != PieceKind::Trivial
    }

    pub fn name(self) -> &'static str {
        match self {
            PieceKind::Trivial => "trivial",
            PieceKind::BoundaryCritical => "boundary",
            PieceKind::Saddle => "saddle",
        }
    }

    /// Default kind for a piece with `n` D-edges.
    pub fn for_valence(n: usize) -> PieceKind {
        match n {
            2 => PieceKind::Trivial,
            n if n >= 4 && n % 2 == 0 => PieceKind::Saddle,
            _ => PieceKind::BoundaryCritical,
        }
    }

    pub fn admits(self, n: usize) -> bool {
        match self {
            PieceKind::Trivial => n == 2,
            PieceKind::BoundaryCritical => (1..=3).contains(&n),
            PieceKind::Saddle => n >= 4 && n.is_multiple_of(2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskPiece {
    pub id: PieceId,
    pub ball: BallId,
    /// Cyclic word of D-edges; a B-edge sits between each consecutive pair.
    pub word: Vec<DEdge>,
    pub kind: PieceKind,
    /// Indices (0..3) of the spine legs of the ball this piece crosses.
    pub legs: Vec<usize>,
}

impl DiskPiece {
    /// Number of D-edges; the piece is a 2n-disk.
    pub fn n(&self) -> usize {
        self.word.len()
    }
}

/// Rotates a cyclic word so that its least entry comes first.
pub fn normalize_word(word: &mut [DEdge]) {
    if let Some((i, _)) = word.iter().enumerate().min_by_key(|(_, e)| **e) {
        word.rotate_left(i);
    }
}

/// Where a D-edge sits: piece and position in its word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Attach {
    pub piece: PieceId,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceComplex {
    pub handlebody: Handlebody,
    pub arcs: BTreeMap<ArcId, SurfaceArc>,
    pub pieces: BTreeMap<PieceId, DiskPiece>,
}

impl SurfaceComplex {
    pub fn new(handlebody: Handlebody) -> SurfaceComplex {
        SurfaceComplex { handlebody, arcs: BTreeMap::new(), pieces: BTreeMap::new() }
    }

    pub fn next_arc_id(&self) -> ArcId {
        self.arcs.keys().next_back().map_or(0, |k| k + 1)
    }

    pub fn next_piece_id(&self) -> PieceId {
        self.pieces.keys().next_back().map_or(0, |k| k + 1)
    }

    pub fn add_disk_arc(&mut self, disk: DiskId, parent: Option<ArcId>) -> ArcId {
        let id = self.next_arc_id();
        self.arcs.insert(id, SurfaceArc { id, site: ArcSite::Disk(disk), parent });
        id
    }

    pub fn add_level_arc(&mut self, ball: BallId) -> ArcId {
        let id = self.next_arc_id();
        self.arcs.insert(id, SurfaceArc { id, site: ArcSite::Level(ball), parent: None });
        id
    }

    /// Adds a piece whose kind is inferred from its valence.
    pub fn add_piece(&mut self, ball: BallId, word: Vec<DEdge>, legs: Vec<usize>) -> PieceId {
        let kind = PieceKind::for_valence(word.len());
        self.add_piece_with_kind(ball, word, kind, legs)
    }

    pub fn add_piece_with_kind(
        &mut self,
        ball: BallId,
        mut word: Vec<DEdge>,
        kind: PieceKind,
        mut legs: Vec<usize>,
    ) -> PieceId {
        let id = self.next_piece_id();
        normalize_word(&mut word);
        legs.sort_unstable();
        self.pieces.insert(id, DiskPiece { id, ball, word, kind, legs });
        id
    }

    pub fn arc(&self, id: ArcId) -> &SurfaceArc {
        &self.arcs[&id]
    }

    pub fn piece(&self, id: PieceId) -> &DiskPiece {
        &self.pieces[&id]
    }

    /// Slot touched by a D-edge, `None` for level arcs.
    pub fn slot_of(&self, e: DEdge) -> Option<Slot> {
        self.arcs.get(&e.arc)?.disk().map(|disk| Slot { disk, side: e.side })
    }

    /// Every attachment of every arc, grouped by side.
    pub fn attachments(&self) -> BTreeMap<ArcId, [Vec<Attach>; 2]> {
        let mut out: BTreeMap<ArcId, [Vec<Attach>; 2]> =
            self.arcs.keys().map(|&a| (a, [Vec::new(), Vec::new()])).collect();
        for p in self.pieces.values() {
            for (pos, e) in p.word.iter().enumerate() {
                if let Some(slot) = out.get_mut(&e.arc) {
                    slot[side_index(e.side)].push(Attach { piece: p.id, pos });
                }
            }
        }
        out
    }

    /// Attachment of one side of an arc; assumes a valid complex.
    pub fn end(&self, arc: ArcId, side: Side) -> Option<Attach> {
        self.pieces.values().find_map(|p| {
            p.word
                .iter()
                .position(|e| *e == DEdge::new(arc, side))
                .map(|pos| Attach { piece: p.id, pos })
        })
    }

    /// Children of each disk arc, sorted by id. Roots are listed under
    /// `None` keyed by disk.
    pub fn nesting(&self) -> Nesting {
        let mut children: BTreeMap<ArcId, Vec<ArcId>> = BTreeMap::new();
        let mut roots: BTreeMap<DiskId, Vec<ArcId>> = BTreeMap::new();
        for a in self.arcs.values() {
            let Some(d) = a.disk() else { continue };
            match a.parent {
                Some(p) => children.entry(p).or_default().push(a.id),
                None => roots.entry(d).or_default().push(a.id),
            }
        }
        Nesting { children, roots }
    }

    /// Number of disk arcs, `|S ∩ D|`.
    pub fn disk_arc_count(&self) -> usize {
        self.arcs.values().filter(|a| a.disk().is_some()).count()
    }

    /// Total spine crossings, `|S ∩ C|`.
    pub fn spine_crossings(&self) -> usize {
        self.pieces.values().map(|p| p.legs.len()).sum()
    }

    /// Disk arcs ordered from the root down to `arc` (inclusive).
    pub fn ancestry(&self, arc: ArcId) -> Vec<ArcId> {
        let mut chain = vec![arc];
        let mut cur = arc;
        while let Some(p) = self.arcs.get(&cur).and_then(|a| a.parent) {
            if chain.contains(&p) {
                break;
            }
            chain.push(p);
            cur = p;
        }
        chain.reverse();
        chain
    }

    /// Connected components of the piece adjacency graph.
    pub fn components(&self) -> Vec<Vec<PieceId>> {
        let ids: Vec<PieceId> = self.pieces.keys().copied().collect();
        let index: BTreeMap<PieceId, usize> = ids.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut uf = UnionFind::new(ids.len());
        for ends in self.attachments().values() {
            let all: Vec<&Attach> = ends[0].iter().chain(ends[1].iter()).collect();
            for w in all.windows(2) {
                uf.union(index[&w[0].piece], index[&w[1].piece]);
            }
        }
        let mut groups: BTreeMap<usize, Vec<PieceId>> = BTreeMap::new();
        for (i, &p) in ids.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(p);
        }
        groups.into_values().collect()
    }

    /// Euler characteristic of the cell structure: arc endpoints as
    /// vertices, arcs and B-edges as edges, pieces as faces.
    pub fn euler_characteristic(&self) -> i64 {
        let v = 2 * self.arcs.len() as i64;
        let b_edges: usize = self.pieces.values().map(|p| p.n()).sum();
        let e = self.arcs.len() as i64 + b_edges as i64;
        let f = self.pieces.len() as i64;
        v - e + f
    }

    pub fn census(&self) -> Census {
        let mut critical = BTreeMap::new();
        for p in self.pieces.values().filter(|p| p.kind.is_critical()) {
            *critical.entry(2 * p.n()).or_insert(0) += 1;
        }
        let orientable = crate::faces::FaceMap::build(self).orientable(self);
        Census {
            pieces: self.pieces.len(),
            disk_arcs: self.disk_arc_count(),
            level_arcs: self.arcs.len() - self.disk_arc_count(),
            euler: self.euler_characteristic(),
            components: self.components().len(),
            orientable,
            spine_crossings: self.spine_crossings(),
            trivial: self.pieces.values().filter(|p| p.kind == PieceKind::Trivial).count(),
            critical,
        }
    }
}

pub(crate) fn side_index(side: Side) -> usize {
    match side {
        Side::A => 0,
        Side::B => 1,
    }
}

#[derive(Debug, Clone, Default)]
pub struct Nesting {
    pub children: BTreeMap<ArcId, Vec<ArcId>>,
    pub roots: BTreeMap<DiskId, Vec<ArcId>>,
}

impl Nesting {
    pub fn children_of(&self, arc: ArcId) -> &[ArcId] {
        self.children.get(&arc).map_or(&[], |v| v.as_slice())
    }

    pub fn roots_of(&self, disk: DiskId) -> &[ArcId] {
        self.roots.get(&disk).map_or(&[], |v| v.as_slice())
    }
}

/// Summary counts of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub pieces: usize,
    pub disk_arcs: usize,
    pub level_arcs: usize,
    pub euler: i64,
    pub components: usize,
    pub orientable: bool,
    pub spine_crossings: usize,
    pub trivial: usize,
    /// Critical pieces keyed by boundary length `2n`.
    pub critical: BTreeMap<usize, usize>,
}

impl Census {
    /// Sum over critical 2x-disks with x >= 3 of x times their count, halved
    /// and rounded down.
    pub fn bigon_bound(&self) -> usize {
        let s: usize = self
            .critical
            .iter()
            .filter(|(&len, _)| len >= 6)
            .map(|(&len, &c)| (len / 2) * c)
            .sum();
        s / 2
    }
}

/// Severity of a validation finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Violation {
    UnknownBall { piece: PieceId, ball: BallId },
    UnknownDisk { arc: ArcId, disk: DiskId },
    UnknownArc { piece: PieceId, arc: ArcId },
    EmptyWord { piece: PieceId },
    ArcEndCount { arc: ArcId, side: Side, count: usize },
    WrongBall { arc: ArcId, piece: PieceId },
    LevelArcNested { arc: ArcId },
    ParentOnOtherDisk { arc: ArcId, parent: ArcId },
    UnknownParent { arc: ArcId, parent: ArcId },
    NestingCycle { arc: ArcId },
    KindMismatch { piece: PieceId, kind: PieceKind, n: usize },
    BadLeg { piece: PieceId, leg: usize },
    SpineAvoidingSaddle { piece: PieceId, n: usize },
    BranchingNest { arc: ArcId, children: usize },
}

impl Violation {
    pub fn severity(&self) -> Severity {
        match self {
            Violation::SpineAvoidingSaddle { .. } | Violation::BranchingNest { .. } => {
                Severity::Warning
            }
            _ => Severity::Error,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors().next().is_none()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.severity() == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.severity() == Severity::Warning)
    }
}

pub fn validate(s: &SurfaceComplex) -> ValidationReport {
    let mut out = Vec::new();
    let h = &s.handlebody;
    for a in s.arcs.values() {
        match a.site {
            ArcSite::Disk(d) if d >= h.disk_count() => {
                out.push(Violation::UnknownDisk { arc: a.id, disk: d })
            }
            ArcSite::Level(b) if b >= h.balls.len() => {
                out.push(Violation::UnknownBall { piece: usize::MAX, ball: b })
            }
            ArcSite::Level(_) if a.parent.is_some() => {
                out.push(Violation::LevelArcNested { arc: a.id })
            }
            _ => {}
        }
        if let (Some(p), Some(d)) = (a.parent, a.disk()) {
            match s.arcs.get(&p) {
                None => out.push(Violation::UnknownParent { arc: a.id, parent: p }),
                Some(pa) if pa.disk() != Some(d) => {
                    out.push(Violation::ParentOnOtherDisk { arc: a.id, parent: p })
                }
                _ => {}
            }
        }
    }
    for a in s.arcs.keys() {
        let mut seen = BTreeSet::new();
        let mut cur = *a;
        while let Some(p) = s.arcs.get(&cur).and_then(|x| x.parent) {
            if !seen.insert(cur) || p == *a {
                out.push(Violation::NestingCycle { arc: *a });
                break;
            }
            cur = p;
        }
    }
    for p in s.pieces.values() {
        if p.ball >= h.balls.len() {
            out.push(Violation::UnknownBall { piece: p.id, ball: p.ball });
        }
        if p.word.is_empty() {
            out.push(Violation::EmptyWord { piece: p.id });
        }
        for e in &p.word {
            if !s.arcs.contains_key(&e.arc) {
                out.push(Violation::UnknownArc { piece: p.id, arc: e.arc });
            }
        }
        if !p.kind.admits(p.n()) {
            out.push(Violation::KindMismatch { piece: p.id, kind: p.kind, n: p.n() });
        }
        let mut legs = BTreeSet::new();
        for &l in &p.legs {
            if l >= 3 || !legs.insert(l) {
                out.push(Violation::BadLeg { piece: p.id, leg: l });
            }
        }
        if p.kind == PieceKind::Saddle && p.n() >= 5 && p.legs.is_empty() {
            out.push(Violation::SpineAvoidingSaddle { piece: p.id, n: p.n() });
        }
    }
    let ends = s.attachments();
    for (&arc, sides) in &ends {
        let a = &s.arcs[&arc];
        for side in [Side::A, Side::B] {
            let list = &sides[side_index(side)];
            if list.len() != 1 {
                out.push(Violation::ArcEndCount { arc, side, count: list.len() });
            }
            for at in list {
                let ball = s.pieces[&at.piece].ball;
                let expected = match a.site {
                    ArcSite::Disk(d) if d < h.disk_count() => Some(h.ball_of(Slot { disk: d, side })),
                    ArcSite::Level(b) => Some(b),
                    _ => None,
                };
                if expected.is_some_and(|b| b != ball) {
                    out.push(Violation::WrongBall { arc, piece: at.piece });
                }
            }
        }
    }
    for (&arc, kids) in &s.nesting().children {
        if kids.len() > 1 {
            out.push(Violation::BranchingNest { arc, children: kids.len() });
        }
    }
    ValidationReport { violations: out }
}

/// Plain union-find over `0..n`.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn add(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let n = self.parent[c];
            self.parent[c] = r;
            c = n;
        }
        r
    }

    /// Returns `false` when the two were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub fn classes(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}
