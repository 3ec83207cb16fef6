//! Example families in the genus-2 handcuff handlebody.
//!
//! Ball 0 has slots `x` (separating disk 0, side A), `y` (disk 1, side A) and
//! `z` (disk 1, side B); ball 1 has `x` (disk 0, side B), `u` (disk 2, side
//! A) and `w` (disk 2, side B). Disks 1 and 2 carry the generators `a`, `b`.

use serde::{Deserialize, Serialize};

use crate::complex::{DEdge, SurfaceComplex};
use crate::error::CorpusError;
use crate::handlebody::{handcuff_spine, ps_balls, ArcId, Side};

const SEP: usize = 0;
const DA: usize = 1;
const DB: usize = 2;

fn a(arc: ArcId) -> DEdge {
    DEdge::new(arc, Side::A)
}

fn b(arc: ArcId) -> DEdge {
    DEdge::new(arc, Side::B)
}

fn empty() -> SurfaceComplex {
    SurfaceComplex::new(ps_balls(&handcuff_spine()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Standard position.
    Original,
    /// One arc of the first saddle rerouted to the other strip; still
    /// incompressible.
    Rerouted,
    /// Both strips under the first saddle's sibling arcs fused into a saddle,
    /// which pairs two bigons across disk 1.
    Doubled,
    /// Not yet reduced: one movable saddle.
    Raw,
    /// Collar with its strip split and closed up inside the ball.
    Mutated,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Variant, CorpusError> {
        match s {
            "original" => Ok(Variant::Original),
            "rerouted" => Ok(Variant::Rerouted),
            "doubled" => Ok(Variant::Doubled),
            "raw" => Ok(Variant::Raw),
            "mutated" => Ok(Variant::Mutated),
            _ => Err(CorpusError::UnknownVariant(s.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Original => "original",
            Variant::Rerouted => "rerouted",
            Variant::Doubled => "doubled",
            Variant::Raw => "raw",
            Variant::Mutated => "mutated",
        }
    }
}

pub const FAMILIES: [&str; 3] = ["saddle-pair", "tripod", "collar"];

/// Dispatches on a family name.
pub fn generate(family: &str, n: usize, variant: Variant) -> Result<SurfaceComplex, CorpusError> {
    let unsupported = || CorpusError::VariantUnsupported {
        family: family.to_string(),
        variant: variant.name().to_string(),
    };
    match family {
        "saddle-pair" => {
            if variant == Variant::Mutated {
                return Err(unsupported());
            }
            saddle_pair(n, variant)
        }
        "tripod" => match variant {
            Variant::Original => tripod(n),
            _ => Err(unsupported()),
        },
        "collar" => match variant {
            Variant::Original => Ok(collar()),
            Variant::Mutated => Ok(mutated_collar()),
            _ => Err(unsupported()),
        },
        _ => Err(CorpusError::UnknownFamily(family.to_string())),
    }
}

/// Two 8-disk saddles, one per ball, each with a pair of sibling arcs on a
/// loop disk, plus `n - 1` handles made of a 6-disk pair with a `b` loop
/// threaded into the path from the strip under the first saddle back to
/// ball 1. Exactly one bigon class per ball; `χ = -(n + 1)`.
pub fn saddle_pair(n: usize, variant: Variant) -> Result<SurfaceComplex, CorpusError> {
    if n == 0 {
        return Err(CorpusError::BadIndex(n));
    }
    let mut s = empty();
    let alpha1 = s.add_disk_arc(DA, None);
    let alpha2 = s.add_disk_arc(DA, if variant == Variant::Raw { Some(alpha1) } else { None });
    let gamma1 = s.add_disk_arc(DA, None);
    let gamma2 = s.add_disk_arc(DA, None);
    let beta1 = s.add_disk_arc(DB, None);
    let beta2 = s.add_disk_arc(DB, None);
    let eps1 = s.add_disk_arc(DB, None);
    let eps2 = s.add_disk_arc(DB, None);
    let d: Vec<ArcId> = (0..4).map(|_| s.add_disk_arc(SEP, None)).collect();

    // handles: a-arcs chaining from the strip below the first saddle to ball 1
    let mut chain_in = gamma2;
    let mut handles = Vec::new();
    for _ in 1..n {
        let next = s.add_disk_arc(DA, None);
        let link = s.add_disk_arc(SEP, None);
        let lp = s.add_disk_arc(DB, None);
        handles.push((chain_in, next, link, lp));
        chain_in = next;
    }

    // ball 0
    match variant {
        Variant::Raw => {
            s.add_piece(0, vec![a(alpha1), b(gamma1), a(d[0])], vec![]);
        }
        _ => {
            s.add_piece(0, vec![a(alpha1), b(gamma1), a(d[0]), a(alpha2)], vec![]);
        }
    }
    s.add_piece(0, vec![a(d[1]), b(chain_in)], vec![]);
    match variant {
        Variant::Raw | Variant::Doubled => {
            s.add_piece(0, vec![b(alpha1), a(d[2]), b(alpha2), a(gamma2)], vec![]);
        }
        Variant::Rerouted => {
            s.add_piece(0, vec![b(alpha2), a(d[2])], vec![]);
        }
        _ => {
            s.add_piece(0, vec![b(alpha1), a(d[2])], vec![]);
        }
    }
    match variant {
        Variant::Raw => {
            s.add_piece(0, vec![a(alpha2)], vec![]);
        }
        Variant::Doubled => {}
        Variant::Rerouted => {
            s.add_piece(0, vec![b(alpha1), a(gamma2)], vec![]);
        }
        _ => {
            s.add_piece(0, vec![b(alpha2), a(gamma2)], vec![]);
        }
    }
    s.add_piece(0, vec![a(d[3]), a(gamma1)], vec![]);
    for &(inc, out, link, _) in &handles {
        s.add_piece(0, vec![a(link), a(out), b(inc)], vec![]);
    }

    // ball 1
    s.add_piece(1, vec![a(beta1), b(eps2), a(beta2), b(d[1])], vec![]);
    s.add_piece(1, vec![b(d[0]), b(eps1)], vec![]);
    s.add_piece(1, vec![b(d[2]), a(eps1)], vec![]);
    s.add_piece(1, vec![b(beta1), b(d[3])], vec![]);
    s.add_piece(1, vec![b(beta2), a(eps2)], vec![]);
    for &(_, _, link, lp) in &handles {
        s.add_piece(1, vec![b(link), a(lp), b(lp)], vec![]);
    }
    Ok(s)
}

/// `n` 6-disks in each ball, cyclically joined: the i-th 6-disk of ball 0
/// leaves along the i-th `a` arc and receives the previous one, and ball 1
/// mirrors this with `b`. Its image is an index-`n` subgroup, so it is
/// incompressible; there are no saddles and hence no bigons. `χ = -n`.
pub fn tripod(n: usize) -> Result<SurfaceComplex, CorpusError> {
    if n == 0 {
        return Err(CorpusError::BadIndex(n));
    }
    let mut s = empty();
    let al: Vec<ArcId> = (0..n).map(|_| s.add_disk_arc(DA, None)).collect();
    let be: Vec<ArcId> = (0..n).map(|_| s.add_disk_arc(DB, None)).collect();
    let de: Vec<ArcId> = (0..n).map(|_| s.add_disk_arc(SEP, None)).collect();
    for i in 0..n {
        let prev = (i + n - 1) % n;
        s.add_piece(0, vec![a(de[i]), a(al[i]), b(al[prev])], vec![]);
    }
    for i in 0..n {
        let prev = (i + n - 1) % n;
        s.add_piece(1, vec![b(de[i]), a(be[i]), b(be[prev])], vec![]);
    }
    Ok(s)
}

/// Annulus around the first handle: one strip glued to itself across disk 1.
pub fn collar() -> SurfaceComplex {
    let mut s = empty();
    let arc = s.add_disk_arc(DA, None);
    s.add_piece(0, vec![a(arc), b(arc)], vec![]);
    s
}

/// Two strips in ball 0 glued along two level arcs: an annulus that never
/// leaves the ball.
pub fn mutated_collar() -> SurfaceComplex {
    let mut s = empty();
    let l1 = s.add_level_arc(0);
    let l2 = s.add_level_arc(0);
    s.add_piece(0, vec![a(l1), a(l2)], vec![]);
    s.add_piece(0, vec![b(l1), b(l2)], vec![]);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate;

    #[test]
    fn test_families_validate() {
        for n in 1..5 {
            for v in [Variant::Original, Variant::Rerouted, Variant::Doubled, Variant::Raw] {
                let s = saddle_pair(n, v).unwrap();
                let r = validate(&s);
                assert!(r.is_valid(), "saddle-pair {n} {v:?}: {:?}", r.violations);
            }
            assert!(validate(&tripod(n).unwrap()).is_valid());
        }
        assert!(validate(&collar()).is_valid());
        assert!(validate(&mutated_collar()).is_valid());
    }

    #[test]
    fn test_euler() {
        for n in 1..5 {
            assert_eq!(saddle_pair(n, Variant::Original).unwrap().euler_characteristic(), -(n as i64) - 1);
            assert_eq!(tripod(n).unwrap().euler_characteristic(), -(n as i64));
        }
    }

    #[test]
    fn test_zero_rejected() {
        assert_eq!(saddle_pair(0, Variant::Original).unwrap_err(), CorpusError::BadIndex(0));
        assert_eq!(tripod(0).unwrap_err(), CorpusError::BadIndex(0));
    }
}
