use std::path::PathBuf;

use incomp_core::corpus::{collar, generate, mutated_collar, saddle_pair, tripod, Variant};
use incomp_core::error::CorpusError;
use incomp_core::oracle::check_surface;
use incomp_core::{decide, enumerate_polygons, svg, validate, Verdict};

// Polygon class counts, frozen from the first runs of the enumerator.
const SADDLE_PAIR_POLYGONS: [usize; 5] = [38, 94, 192, 344, 562];
const DOUBLED_POLYGONS: [usize; 3] = [51, 123, 243];
const TRIPOD_POLYGONS: [usize; 4] = [0, 6, 30, 84];

#[test]
fn generators_validate() {
    for n in 1..=5 {
        for v in [Variant::Original, Variant::Rerouted, Variant::Doubled, Variant::Raw] {
            let s = saddle_pair(n, v).unwrap();
            assert!(validate(&s).is_valid(), "saddle-pair n={n} {}", v.name());
        }
    }
    for n in 1..=4 {
        assert!(validate(&tripod(n).unwrap()).is_valid());
    }
    assert!(validate(&collar()).is_valid());
    assert!(validate(&mutated_collar()).is_valid());
}

#[test]
fn zero_index_and_bad_variants_rejected() {
    assert_eq!(saddle_pair(0, Variant::Original).unwrap_err(), CorpusError::BadIndex(0));
    assert_eq!(tripod(0).unwrap_err(), CorpusError::BadIndex(0));
    assert!(matches!(generate("tripod", 2, Variant::Doubled), Err(CorpusError::VariantUnsupported { .. })));
    assert!(matches!(generate("nope", 1, Variant::Original), Err(CorpusError::UnknownFamily(_))));
    assert!(matches!(Variant::parse("sideways"), Err(CorpusError::UnknownVariant(_))));
}

#[test]
fn saddle_pair_counts() {
    for n in 1..=5 {
        let s = saddle_pair(n, Variant::Original).unwrap();
        assert_eq!(s.arcs.len(), 9 + 3 * n);
        assert_eq!(s.euler_characteristic(), -(n as i64 + 1));
        assert_eq!(s.census().bigon_bound(), 3 * n + 1);
        let c = enumerate_polygons(&s).unwrap();
        assert_eq!(c.polygons.len(), SADDLE_PAIR_POLYGONS[n - 1], "n={n}");
        assert_eq!((c.bigons_in_ball(0), c.bigons_in_ball(1)), (1, 1));
        let o = check_surface(&s).unwrap();
        assert_eq!(o.rank, n + 2);
        assert!(o.injective);
    }
    for n in 1..=3 {
        let c = enumerate_polygons(&saddle_pair(n, Variant::Doubled).unwrap()).unwrap();
        assert_eq!(c.polygons.len(), DOUBLED_POLYGONS[n - 1]);
    }
}

#[test]
fn tripod_counts() {
    for n in 1..=4 {
        let s = tripod(n).unwrap();
        assert_eq!(s.arcs.len(), 3 * n);
        assert_eq!(s.euler_characteristic(), -(n as i64));
        assert_eq!(enumerate_polygons(&s).unwrap().polygons.len(), TRIPOD_POLYGONS[n - 1]);
        assert_eq!(check_surface(&s).unwrap().rank, n + 1);
    }
    assert_eq!(check_surface(&tripod(1).unwrap()).unwrap().words, ["a", "b"]);
}

#[test]
fn collar_boundary_word() {
    let o = check_surface(&collar()).unwrap();
    assert_eq!(o.words, ["a"]);
    assert!(o.injective);
    assert!(!check_surface(&mutated_collar()).unwrap().injective);
}

#[test]
fn verdicts_do_not_depend_on_index() {
    for n in 1..=4 {
        assert_eq!(decide(&saddle_pair(n, Variant::Rerouted).unwrap()).verdict, Verdict::Incompressible);
        assert!(matches!(
            decide(&saddle_pair(n, Variant::Doubled).unwrap()).verdict,
            Verdict::Compressible { .. }
        ));
    }
}

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == actual, "{name} differs; rerun with UPDATE_GOLDEN=1 to refresh");
}

#[test]
fn svg_golden_saddle_pair() {
    golden("saddle_pair_2.svg", &svg::render(&saddle_pair(2, Variant::Original).unwrap()));
}

#[test]
fn svg_golden_tripod() {
    golden("tripod_1.svg", &svg::render(&tripod(1).unwrap()));
}
