use incomp_core::complex::{normalize_word, DEdge, PieceKind};
use incomp_core::corpus::{collar, saddle_pair, Variant};
use incomp_core::mutate::{apply, Mutation};
use incomp_core::standard::{
    boundary_compress, cancel_strip, complexity, movable_saddles, remove_movable_saddle, standard_properties,
    MoveKind,
};
use incomp_core::{handcuff_spine, ps_balls, reduce_to_standard, validate, MoveError, Side, SurfaceComplex, Violation};

// arc and piece ids of the one-handle saddle pair, raw form
const ALPHA1: usize = 0;
const ALPHA2: usize = 1;
const GAMMA2: usize = 3;
const DELTA2: usize = 10;
const SPLIT: usize = 2;

fn a(arc: usize) -> DEdge {
    DEdge::new(arc, Side::A)
}

fn b(arc: usize) -> DEdge {
    DEdge::new(arc, Side::B)
}

#[test]
fn raw_reduces_to_original() {
    for n in 1..=3 {
        let raw = saddle_pair(n, Variant::Raw).unwrap();
        let red = reduce_to_standard(&raw);
        assert_eq!(red.log.len(), 1);
        assert_eq!(red.log[0].kind, MoveKind::Compress);
        assert_eq!(red.surface, saddle_pair(n, Variant::Original).unwrap());
    }
}

/// The raw split saddle with `α2` reached through a level arc and a strip.
fn leg_movable() -> SurfaceComplex {
    let mut s = saddle_pair(1, Variant::Raw).unwrap();
    let level = s.add_level_arc(0);
    let mut word = vec![b(ALPHA1), a(DELTA2), a(level), a(GAMMA2)];
    normalize_word(&mut word);
    s.pieces.get_mut(&SPLIT).unwrap().word = word;
    let strip = s.add_piece(0, vec![b(level), b(ALPHA2)], vec![]);
    assert_eq!(s.pieces[&strip].kind, PieceKind::Trivial);
    s
}

#[test]
fn strip_on_leg_is_absorbed_before_compressing() {
    let s = leg_movable();
    assert!(incomp_core::mutate::is_embedded(&s));
    assert_eq!(movable_saddles(&s).len(), 1);
    assert!(!movable_saddles(&s)[0].is_direct());
    let red = reduce_to_standard(&s);
    assert_eq!(red.log.iter().map(|m| m.kind.clone()).collect::<Vec<_>>(), [MoveKind::AbsorbThenCompress]);
    assert_eq!(red.surface, saddle_pair(1, Variant::Original).unwrap());
}

#[test]
fn critical_neighbour_is_merged_before_compressing() {
    let mut s = leg_movable();
    let strip = *s.pieces.keys().next_back().unwrap();
    s.pieces.get_mut(&strip).unwrap().kind = PieceKind::BoundaryCritical;
    assert!(movable_saddles(&s).is_empty());
    let red = reduce_to_standard(&s);
    assert_eq!(red.log.iter().map(|m| m.kind.clone()).collect::<Vec<_>>(), [MoveKind::MergeThenCompress]);
    assert_eq!(red.surface, saddle_pair(1, Variant::Original).unwrap());
}

#[test]
fn remove_movable_saddle_rejects_direct_and_immovable() {
    let raw = saddle_pair(1, Variant::Raw).unwrap();
    assert_eq!(remove_movable_saddle(&raw, SPLIT).unwrap_err(), MoveError::DirectPair(SPLIT));
    let std = saddle_pair(1, Variant::Original).unwrap();
    assert_eq!(remove_movable_saddle(&std, 0).unwrap_err(), MoveError::NotMovable(0));
    assert_eq!(remove_movable_saddle(&std, 1).unwrap_err(), MoveError::NotMovable(1));
    let s = leg_movable();
    assert!(remove_movable_saddle(&s, SPLIT).is_ok());
}

#[test]
fn compress_requires_outermost_pair() {
    let mut raw = saddle_pair(1, Variant::Raw).unwrap();
    raw.arcs.get_mut(&2).unwrap().parent = Some(ALPHA1);
    assert_eq!(boundary_compress(&raw, SPLIT, ALPHA1, ALPHA2).unwrap_err(), MoveError::NotOutermost(ALPHA1));
}

#[test]
fn compress_requires_distinct_far_pieces() {
    let mut s = SurfaceComplex::new(ps_balls(&handcuff_spine()));
    let o = s.add_disk_arc(1, None);
    let i = s.add_disk_arc(1, Some(o));
    let x = s.add_disk_arc(0, None);
    let y = s.add_disk_arc(0, None);
    let f = s.add_piece(0, vec![b(o), a(x), b(i), a(y)], vec![]);
    s.add_piece(0, vec![a(o), a(i)], vec![]);
    assert_eq!(boundary_compress(&s, f, o, i).unwrap_err(), MoveError::FarSidesCoincide(o, i));
}

#[test]
fn compress_keeps_disk_arcs_and_euler() {
    let raw = saddle_pair(2, Variant::Raw).unwrap();
    let t = boundary_compress(&raw, SPLIT, ALPHA1, ALPHA2).unwrap();
    assert_eq!(t.disk_arc_count(), raw.disk_arc_count());
    assert_eq!(t.euler_characteristic(), raw.euler_characteristic());
    assert!(complexity(&t) < complexity(&raw));
}

#[test]
fn finger_is_cancelled() {
    let s = collar();
    let t = apply(&s, Mutation::Finger { arc: 0 }).unwrap();
    let strip = *t.pieces.keys().nth(1).unwrap();
    let u = cancel_strip(&t, strip).unwrap();
    assert_eq!(u.disk_arc_count(), 1);
    assert_eq!(complexity(&u), complexity(&s));
    let red = reduce_to_standard(&t);
    assert_eq!(red.log.len(), 1);
    assert_eq!(red.log[0].kind, MoveKind::CancelStrip);
    assert_eq!(complexity(&red.surface), complexity(&s));
}

#[test]
fn cancel_strip_rejects_non_nested_strip() {
    let s = collar();
    assert_eq!(cancel_strip(&s, 0).unwrap_err(), MoveError::NotMovable(0));
}

fn large_disk(n: usize, legs: Vec<usize>) -> SurfaceComplex {
    let mut s = SurfaceComplex::new(ps_balls(&handcuff_spine()));
    let word = (0..n).map(|i| a(s.add_disk_arc(i % 2, None))).collect();
    s.add_piece(0, word, legs);
    s
}

fn property(s: &SurfaceComplex, k: u8) -> bool {
    standard_properties(s).into_iter().find(|p| p.property == k).unwrap().holds
}

#[test]
fn spine_avoiding_large_saddle_fails_property_three() {
    let s = large_disk(6, vec![]);
    assert!(!property(&s, 3));
    assert!(validate(&s).violations.iter().any(|v| matches!(v, Violation::SpineAvoidingSaddle { n: 6, .. })));
    assert!(property(&large_disk(6, vec![0]), 3));
    assert!(property(&large_disk(4, vec![]), 3));
}

#[test]
fn odd_large_disk_is_not_a_saddle() {
    let s = large_disk(5, vec![]);
    assert!(validate(&s).violations.iter().any(|v| matches!(v, Violation::KindMismatch { n: 5, .. })));
}

#[test]
fn corpus_is_standard() {
    for s in [saddle_pair(2, Variant::Original).unwrap(), collar()] {
        let bad: Vec<_> = standard_properties(&s).into_iter().filter(|p| !p.holds).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
}
