//! Deterministic diagram: one panel per ball, slots drawn as circles, disk
//! arcs as nested chords, trivial strips as red paths and critical pieces as
//! marked vertices.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::complex::{ArcSite, PieceKind, SurfaceComplex};
use crate::handlebody::{ArcId, Side};

const PANEL: f64 = 420.0;
const RADIUS: f64 = 70.0;
const CENTERS: [(f64, f64); 3] = [(110.0, 120.0), (310.0, 120.0), (210.0, 300.0)];

type Point = (f64, f64);

fn mid(a: Point, b: Point) -> Point {
    ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0)
}

/// Angular interval of each arc on its disk: roots split the circle,
/// children split a shrunken copy of their parent's interval.
fn intervals(s: &SurfaceComplex) -> BTreeMap<ArcId, (f64, f64)> {
    let nest = s.nesting();
    let mut out = BTreeMap::new();
    let mut stack: Vec<(ArcId, f64, f64)> = Vec::new();
    let disks: std::collections::BTreeSet<usize> = s.arcs.values().filter_map(|a| a.disk()).collect();
    for d in disks {
        let roots = nest.roots_of(d);
        let k = roots.len().max(1) as f64;
        for (i, &r) in roots.iter().enumerate() {
            let lo = TAU * i as f64 / k;
            stack.push((r, lo, lo + TAU / k));
        }
    }
    while let Some((arc, lo, hi)) = stack.pop() {
        let pad = (hi - lo) * 0.08;
        let (lo, hi) = (lo + pad, hi - pad);
        out.insert(arc, (lo, hi));
        let kids = nest.children_of(arc);
        let k = kids.len().max(1) as f64;
        let inner = (lo + (hi - lo) * 0.15, hi - (hi - lo) * 0.15);
        for (i, &c) in kids.iter().enumerate() {
            let w = (inner.1 - inner.0) / k;
            stack.push((c, inner.0 + w * i as f64, inner.0 + w * (i + 1) as f64));
        }
    }
    out
}

fn polar(c: Point, t: f64) -> Point {
    (c.0 + RADIUS * t.cos(), c.1 + RADIUS * t.sin())
}

pub fn render(s: &SurfaceComplex) -> String {
    let h = &s.handlebody;
    let iv = intervals(s);
    let width = PANEL * h.balls.len().max(1) as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{PANEL:.0}" viewBox="0 0 {width:.0} {PANEL:.0}" font-family="monospace" font-size="10">"#
    );
    for ball in &h.balls {
        let ox = PANEL * ball.id as f64;
        let _ = writeln!(out, r#"<g id="ball{}" transform="translate({ox:.0},0)">"#, ball.id);
        let _ = writeln!(out, r#"<rect x="4" y="4" width="{:.0}" height="{:.0}" fill="none" stroke="gray"/>"#, PANEL - 8.0, PANEL - 8.0);
        let _ = writeln!(out, r#"<text x="12" y="20">P{}</text>"#, ball.id);
        // chord midpoints of the D-edges reaching this ball
        let mut anchor: BTreeMap<(ArcId, Side), Point> = BTreeMap::new();
        for (k, slot) in ball.slots.iter().enumerate() {
            let c = CENTERS[k];
            let side = match slot.side {
                Side::A => "A",
                Side::B => "B",
            };
            let _ = writeln!(
                out,
                r#"<circle class="slot" cx="{:.1}" cy="{:.1}" r="{RADIUS:.0}" fill="none" stroke="black"/>"#,
                c.0, c.1
            );
            let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}">D{}{side}</text>"#, c.0 - 12.0, c.1 - RADIUS - 6.0, slot.disk);
            for a in s.arcs.values().filter(|a| a.site == ArcSite::Disk(slot.disk)) {
                let (lo, hi) = iv[&a.id];
                let (p, q) = (polar(c, lo), polar(c, hi));
                let _ = writeln!(
                    out,
                    r#"<line class="arc" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="blue"/>"#,
                    p.0, p.1, q.0, q.1
                );
                let m = mid(p, q);
                let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" fill="blue">{}</text>"#, m.0 + 2.0, m.1 - 2.0, a.id);
                anchor.insert((a.id, slot.side), m);
            }
        }
        let pieces: Vec<_> = s.pieces.values().filter(|p| p.ball == ball.id).collect();
        let mut vertex: BTreeMap<usize, Point> = BTreeMap::new();
        for (i, p) in pieces.iter().enumerate() {
            let pts: Vec<Point> = p.word.iter().filter_map(|e| anchor.get(&(e.arc, e.side)).copied()).collect();
            let v = if pts.is_empty() {
                (40.0 + 24.0 * i as f64, PANEL - 40.0)
            } else {
                let n = pts.len() as f64;
                let c = pts.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
                // nudge so pieces sharing a centroid stay apart
                (c.0 / n + 3.0 * (i % 5) as f64, c.1 / n + 3.0 * (i / 5 % 5) as f64)
            };
            vertex.insert(p.id, v);
        }
        for p in &pieces {
            let v = vertex[&p.id];
            let ends: Vec<Point> = p.word.iter().filter_map(|e| anchor.get(&(e.arc, e.side)).copied()).collect();
            if p.kind == PieceKind::Trivial && ends.len() == 2 {
                let _ = writeln!(
                    out,
                    r#"<path class="strip" d="M{:.1},{:.1} Q{:.1},{:.1} {:.1},{:.1}" fill="none" stroke="red"/>"#,
                    ends[0].0, ends[0].1, v.0, v.1, ends[1].0, ends[1].1
                );
                continue;
            }
            for e in &ends {
                let _ = writeln!(
                    out,
                    r#"<line class="leg" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black"/>"#,
                    v.0, v.1, e.0, e.1
                );
            }
            let (fill, r) = match p.kind {
                PieceKind::Saddle => ("black", 5.0),
                PieceKind::BoundaryCritical => ("white", 4.0),
                PieceKind::Trivial => ("red", 3.0),
            };
            let cross = if p.legs.is_empty() { "" } else { r#" stroke-width="2" stroke-dasharray="2,1""# };
            let _ = writeln!(
                out,
                r#"<circle class="{}" cx="{:.1}" cy="{:.1}" r="{r:.0}" fill="{fill}" stroke="black"{cross}/>"#,
                p.kind.name(),
                v.0,
                v.1
            );
            let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}">p{}</text>"#, v.0 + 6.0, v.1 + 10.0, p.id);
        }
        for a in s.arcs.values() {
            if a.site != ArcSite::Level(ball.id) {
                continue;
            }
            let (Some(x), Some(y)) = (s.end(a.id, Side::A), s.end(a.id, Side::B)) else { continue };
            let (Some(p), Some(q)) = (vertex.get(&x.piece), vertex.get(&y.piece)) else { continue };
            let _ = writeln!(
                out,
                r#"<line class="level" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="green" stroke-dasharray="4,2"/>"#,
                p.0, p.1, q.0, q.1
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::handlebody::{handcuff_spine, ps_balls};

    #[test]
    fn test_empty_has_three_slots_per_ball() {
        let s = SurfaceComplex::new(ps_balls(&handcuff_spine()));
        let svg = render(&s);
        assert_eq!(svg.matches(r#"class="slot""#).count(), 6);
        assert!(svg.contains(">D0A<") && svg.contains(">D2B<"));
    }

    #[test]
    fn test_deterministic() {
        let s = crate::corpus::tripod(2).unwrap();
        assert_eq!(render(&s), render(&s.clone()));
    }
}
