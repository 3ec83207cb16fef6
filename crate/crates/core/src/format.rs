//! Surface documents: a line-oriented text format and a JSON mirror.
//!
//! ```text
//! format incomp-surface 1
//! genus 2
//! layout handcuff
//! vertices 2
//! edge 0 0 1
//! edge 1 0 0
//! edge 2 1 1
//! tree 0
//! arc 0 disk 1
//! arc 1 disk 1 in 0
//! arc 2 level 0
//! piece 0 ball 0 kind trivial cross - word 0A | 1A |
//! ```
//!
//! `edge i u v` lists spine edge `i` (disk `i`) between vertices `u`, `v`;
//! `tree` lists the spanning-tree edges. An arc is `disk d`, optionally
//! nested `in` a parent arc on the same disk, or `level b` inside ball `b`.
//! A piece word lists its D-edges in cyclic order as `<arc><side>`, each
//! followed by `|` for the B-edge that comes next. `cross` lists the slot
//! indices reached by spine crossings, or `-`. Blank lines and text after
//! `#` are ignored. Serialization sorts everything by id, so
//! `parse(write(s)) == s`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::{normalize_word, ArcSite, DEdge, DiskPiece, PieceKind, SurfaceArc, SurfaceComplex};
use crate::error::{ParseError, SpineError};
use crate::handlebody::{ps_balls, Side, SpineGraph};

pub const FORMAT_NAME: &str = "incomp-surface";
pub const FORMAT_VERSION: u32 = 1;

pub fn write_text(s: &SurfaceComplex) -> String {
    let sp = &s.handlebody.spine;
    let mut out = String::new();
    let _ = writeln!(out, "format {FORMAT_NAME} {FORMAT_VERSION}");
    let _ = writeln!(out, "genus {}", sp.genus);
    let _ = writeln!(out, "layout {}", sp.layout);
    let _ = writeln!(out, "vertices {}", sp.vertex_count);
    for (i, (u, v)) in sp.edges.iter().enumerate() {
        let _ = writeln!(out, "edge {i} {u} {v}");
    }
    let tree: Vec<String> = sp.tree.iter().map(|e| e.to_string()).collect();
    let _ = writeln!(out, "tree {}", tree.join(" "));
    for a in s.arcs.values() {
        match (a.site, a.parent) {
            (ArcSite::Disk(d), None) => writeln!(out, "arc {} disk {d}", a.id),
            (ArcSite::Disk(d), Some(p)) => writeln!(out, "arc {} disk {d} in {p}", a.id),
            (ArcSite::Level(b), _) => writeln!(out, "arc {} level {b}", a.id),
        }
        .expect("write to string");
    }
    for p in s.pieces.values() {
        let legs = if p.legs.is_empty() {
            "-".to_string()
        } else {
            p.legs.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
        };
        let word: Vec<String> = p.word.iter().map(|e| format!("{}{:?} |", e.arc, e.side)).collect();
        let _ = writeln!(
            out,
            "piece {} ball {} kind {} cross {legs} word {}",
            p.id,
            p.ball,
            p.kind.name(),
            word.join(" ")
        );
    }
    out
}

/// Parses either format; JSON is recognised by a leading `{`.
pub fn parse(text: &str) -> Result<SurfaceComplex, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

fn num(line: usize, tok: Option<&str>, what: &str) -> Result<usize, ParseError> {
    let t = tok.ok_or_else(|| syntax(line, format!("expected {what}")))?;
    t.parse().map_err(|_| syntax(line, format!("expected {what}, found `{t}`")))
}

fn keyword(line: usize, tok: Option<&str>, want: &str) -> Result<(), ParseError> {
    match tok {
        Some(t) if t == want => Ok(()),
        Some(t) => Err(syntax(line, format!("expected `{want}`, found `{t}`"))),
        None => Err(syntax(line, format!("expected `{want}`"))),
    }
}

fn parse_kind(line: usize, tok: Option<&str>) -> Result<PieceKind, ParseError> {
    match tok {
        Some("trivial") => Ok(PieceKind::Trivial),
        Some("boundary") => Ok(PieceKind::BoundaryCritical),
        Some("saddle") => Ok(PieceKind::Saddle),
        Some(t) => Err(syntax(line, format!("unknown piece kind `{t}`"))),
        None => Err(syntax(line, "expected piece kind")),
    }
}

fn parse_dedge(line: usize, tok: &str) -> Result<DEdge, ParseError> {
    let side = match tok.chars().last() {
        Some('A') => Side::A,
        Some('B') => Side::B,
        _ => return Err(syntax(line, format!("bad D-edge `{tok}`"))),
    };
    let arc = tok[..tok.len() - 1]
        .parse()
        .map_err(|_| syntax(line, format!("bad D-edge `{tok}`")))?;
    Ok(DEdge::new(arc, side))
}

struct Header {
    genus: Option<usize>,
    layout: String,
    vertices: Option<usize>,
    edges: Vec<(usize, usize)>,
    tree: Option<Vec<usize>>,
}

pub fn parse_text(text: &str) -> Result<SurfaceComplex, ParseError> {
    let mut head = Header { genus: None, layout: "custom".into(), vertices: None, edges: Vec::new(), tree: None };
    let mut seen_format = false;
    let mut arcs: Vec<(usize, SurfaceArc)> = Vec::new();
    let mut pieces: Vec<(usize, DiskPiece)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let head_tok = toks.next().expect("nonempty line");
        match head_tok {
            "format" => {
                keyword(line, toks.next(), FORMAT_NAME)?;
                let v = num(line, toks.next(), "format version")?;
                if v != FORMAT_VERSION as usize {
                    return Err(syntax(line, format!("unsupported format version {v}")));
                }
                seen_format = true;
            }
            "genus" => head.genus = Some(num(line, toks.next(), "genus")?),
            "layout" => head.layout = toks.next().ok_or_else(|| syntax(line, "expected layout name"))?.into(),
            "vertices" => head.vertices = Some(num(line, toks.next(), "vertex count")?),
            "edge" => {
                let id = num(line, toks.next(), "edge id")?;
                if id != head.edges.len() {
                    return Err(syntax(line, format!("edges must be listed in order, expected {}", head.edges.len())));
                }
                let u = num(line, toks.next(), "vertex")?;
                let v = num(line, toks.next(), "vertex")?;
                head.edges.push((u, v));
            }
            "tree" => {
                let t: Result<Vec<usize>, _> = toks.by_ref().map(|t| num(line, Some(t), "edge id")).collect();
                head.tree = Some(t?);
            }
            "arc" => {
                let id = num(line, toks.next(), "arc id")?;
                let site = match toks.next() {
                    Some("disk") => ArcSite::Disk(num(line, toks.next(), "disk id")?),
                    Some("level") => ArcSite::Level(num(line, toks.next(), "ball id")?),
                    _ => return Err(syntax(line, "expected `disk` or `level`")),
                };
                let parent = match toks.next() {
                    Some("in") => Some(num(line, toks.next(), "parent arc")?),
                    Some(t) => return Err(syntax(line, format!("unexpected `{t}`"))),
                    None => None,
                };
                arcs.push((line, SurfaceArc { id, site, parent }));
            }
            "piece" => {
                let id = num(line, toks.next(), "piece id")?;
                keyword(line, toks.next(), "ball")?;
                let ball = num(line, toks.next(), "ball id")?;
                keyword(line, toks.next(), "kind")?;
                let kind = parse_kind(line, toks.next())?;
                keyword(line, toks.next(), "cross")?;
                let legs = match toks.next() {
                    Some("-") => Vec::new(),
                    Some(t) => t
                        .split(',')
                        .map(|x| num(line, Some(x), "slot index"))
                        .collect::<Result<Vec<_>, _>>()?,
                    None => return Err(syntax(line, "expected crossing list")),
                };
                keyword(line, toks.next(), "word")?;
                let mut word = Vec::new();
                let mut expect_bar = false;
                for t in toks.by_ref() {
                    match (t, expect_bar) {
                        ("|", true) => expect_bar = false,
                        ("|", false) => return Err(syntax(line, "B-edge without a preceding D-edge")),
                        (_, true) => return Err(ParseError::NotAlternating { line }),
                        (_, false) => {
                            word.push(parse_dedge(line, t)?);
                            expect_bar = true;
                        }
                    }
                }
                if expect_bar {
                    return Err(syntax(line, "word must end with `|`"));
                }
                pieces.push((line, DiskPiece { id, ball, word, kind, legs }));
            }
            t => return Err(syntax(line, format!("unknown directive `{t}`"))),
        }
    }
    if !seen_format {
        return Err(ParseError::MissingHeader("format"));
    }
    let genus = head.genus.ok_or(ParseError::MissingHeader("genus"))?;
    let vertices = head.vertices.ok_or(ParseError::MissingHeader("vertices"))?;
    let spine = SpineGraph::new(vertices, head.edges, head.tree, &head.layout)?;
    if spine.genus != genus {
        return Err(SpineError::GenusMismatch { expected: genus, found: spine.genus }.into());
    }
    assemble(spine, arcs, pieces)
}

fn assemble(
    spine: SpineGraph,
    arcs: Vec<(usize, SurfaceArc)>,
    pieces: Vec<(usize, DiskPiece)>,
) -> Result<SurfaceComplex, ParseError> {
    let mut s = SurfaceComplex::new(ps_balls(&spine));
    for (line, a) in &arcs {
        if s.arcs.insert(a.id, a.clone()).is_some() {
            return Err(ParseError::Duplicate { line: *line, id: a.id });
        }
    }
    for (line, a) in &arcs {
        if let Some(p) = a.parent.filter(|p| !s.arcs.contains_key(p)) {
            return Err(ParseError::DanglingArc { line: *line, arc: p });
        }
    }
    for id in s.arcs.keys() {
        let mut seen = BTreeSet::new();
        let mut cur = *id;
        while let Some(p) = s.arcs[&cur].parent {
            if !seen.insert(cur) {
                return Err(ParseError::NestingCycle(*id));
            }
            cur = p;
        }
    }
    for (line, mut p) in pieces {
        if let Some(e) = p.word.iter().find(|e| !s.arcs.contains_key(&e.arc)) {
            return Err(ParseError::DanglingArc { line, arc: e.arc });
        }
        normalize_word(&mut p.word);
        p.legs.sort_unstable();
        let id = p.id;
        if s.pieces.insert(id, p).is_some() {
            return Err(ParseError::Duplicate { line, id });
        }
    }
    Ok(s)
}

/// JSON mirror of the text format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub format: String,
    pub version: u32,
    pub genus: usize,
    pub layout: String,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub tree: Vec<usize>,
    pub arcs: Vec<SurfaceArc>,
    pub pieces: Vec<DiskPiece>,
}

impl Document {
    pub fn from_surface(s: &SurfaceComplex) -> Document {
        let sp = &s.handlebody.spine;
        Document {
            format: FORMAT_NAME.into(),
            version: FORMAT_VERSION,
            genus: sp.genus,
            layout: sp.layout.clone(),
            vertices: sp.vertex_count,
            edges: sp.edges.clone(),
            tree: sp.tree.clone(),
            arcs: s.arcs.values().cloned().collect(),
            pieces: s.pieces.values().cloned().collect(),
        }
    }

    pub fn into_surface(self) -> Result<SurfaceComplex, ParseError> {
        if self.format != FORMAT_NAME || self.version != FORMAT_VERSION {
            return Err(ParseError::Json(format!("unsupported format {} {}", self.format, self.version)));
        }
        let spine = SpineGraph::new(self.vertices, self.edges, Some(self.tree), &self.layout)?;
        if spine.genus != self.genus {
            return Err(SpineError::GenusMismatch { expected: self.genus, found: spine.genus }.into());
        }
        let arcs = self.arcs.into_iter().map(|a| (0, a)).collect();
        let pieces = self.pieces.into_iter().map(|p| (0, p)).collect();
        assemble(spine, arcs, pieces)
    }
}

pub fn write_json(s: &SurfaceComplex) -> String {
    serde_json::to_string_pretty(&Document::from_surface(s)).expect("document serializes")
}

pub fn parse_json(text: &str) -> Result<SurfaceComplex, ParseError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    doc.into_surface()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{collar, saddle_pair, tripod, Variant};

    #[test]
    fn test_text_round_trip() {
        for s in [collar(), tripod(2).unwrap(), saddle_pair(2, Variant::Raw).unwrap()] {
            let t = write_text(&s);
            assert_eq!(parse(&t).unwrap(), s, "{t}");
            assert_eq!(write_text(&parse(&t).unwrap()), t);
        }
    }

    #[test]
    fn test_json_round_trip() {
        let s = saddle_pair(1, Variant::Original).unwrap();
        assert_eq!(parse(&write_json(&s)).unwrap(), s);
    }

    #[test]
    fn test_collar_text() {
        let t = write_text(&collar());
        assert!(t.contains("arc 0 disk 1\n"));
        assert!(t.contains("piece 0 ball 0 kind trivial cross - word 0A | 0B |\n"));
    }

    #[test]
    fn test_errors_carry_lines() {
        let good = write_text(&collar());
        let bad = good.replace("word 0A | 0B |", "word 0A 0B |");
        assert!(matches!(parse(&bad), Err(ParseError::NotAlternating { line: 10 })));
        let bad = good.replace("word 0A | 0B |", "word 0A | 7B |");
        assert!(matches!(parse(&bad), Err(ParseError::DanglingArc { arc: 7, .. })));
        let bad = good.replace("genus 2", "genus 3");
        assert!(matches!(parse(&bad), Err(ParseError::Spine(SpineError::GenusMismatch { .. }))));
        let bad = good.replace("format incomp-surface 1\n", "");
        assert_eq!(parse(&bad).unwrap_err(), ParseError::MissingHeader("format"));
        let bad = good.replace("kind trivial", "kind round");
        assert!(matches!(parse(&bad), Err(ParseError::Syntax { line: 10, .. })));
    }
}
