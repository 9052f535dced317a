mod common;

use common::*;
use matroidal::classify::{classify_expr, classify_matroid, ConstructionExpr, LevelSet};
use matroidal::constructions::*;
use matroidal::matroid::*;
use matroidal::oa::{cyclic_oa23, oa_2_4};
use matroidal::voa::*;
use matroidal::{GroundSet, Voa};

fn std(kind: StandardKind) -> Matroid {
    standard(kind).unwrap()
}

fn canonical_eq(a: &Voa, b: &Voa) -> bool {
    a.canonical().data() == b.canonical().data() && a.n_rows() == b.n_rows()
}

#[test]
fn golden_array_verifies() {
    let report = verify_voa(&binary6(), &std(StandardKind::Example1)).unwrap();
    assert!(report.pass);
    assert_eq!(report.subsets_checked, 64);
    // also an OA(16; 2, 6, 2)
    let oa = verify_oa(&binary6(), 2).unwrap();
    assert!(oa.holds);
    assert_eq!(oa.lambda, Some(4));
}

#[test]
fn oa243_verifies() {
    let t = numbered(3, 4, OA243);
    let r = verify_oa(&t, 2).unwrap();
    assert!(r.holds);
    assert_eq!(r.lambda, Some(1));
    assert!(verify_voa(&t, &std(StandardKind::Uniform { t: 2, n: 4 })).unwrap().pass);
}

#[test]
fn deletion_then_contraction() {
    let t1 = voa_delete(&binary6(), &["5", "6"]).unwrap();
    assert!(canonical_eq(&t1, &numbered(2, 4, BINARY6_DELETED)));
    assert!(verify_voa(&t1, &std(StandardKind::Uniform { t: 3, n: 4 })).unwrap().pass);
    let t2 = voa_contract(&t1, &["4"], Some(&[0])).unwrap();
    assert!(canonical_eq(&t2, &numbered(2, 3, BINARY6_MINOR)));
    assert!(verify_voa(&t2, &std(StandardKind::Uniform { t: 2, n: 3 })).unwrap().pass);
}

#[test]
fn series_example() {
    let conn = voa_series(&series_t1(), "4", &series_t2(), "4", Some(&series_u())).unwrap();
    let t = &conn.array;
    assert_eq!((t.n_rows(), t.n_cols()), (32, 6));
    let displayed = rows(SERIES_ROWS);
    for (i, r) in displayed[..8].iter().enumerate() {
        assert_eq!(t.row(i), r.as_slice(), "row {i}");
    }
    assert_eq!(t.row(31), displayed[8].as_slice());
    let u56 = std(StandardKind::Uniform { t: 5, n: 6 });
    assert!(verify_voa(t, &u56).unwrap().pass);
    let m1 = std(StandardKind::Uniform { t: 3, n: 4 });
    let m2 = std(StandardKind::Uniform { t: 2, n: 3 }).relabel(["4", "5", "6"]).unwrap();
    let ms = connect(ConnectKind::Series, &m1, Some("4"), &m2, Some("4")).unwrap();
    assert!(ms.matroid.same_table(&u56));
}

#[test]
fn parallel_example() {
    let conn = voa_parallel(&series_t1(), "4", &series_t2(), "4").unwrap();
    let t = &conn.array;
    assert_eq!((t.n_rows(), t.n_cols()), (16, 6));
    for r in rows(PARALLEL_ROWS) {
        assert!(t.contains_row(&r), "{r:?}");
    }
    assert!(!t.contains_row(&[1, 1, 1, 1, 1, 1]));
    assert!(verify_voa(t, &std(StandardKind::Example1)).unwrap().pass);
}

#[test]
fn example1_matrix_reproduces_the_golden_array() {
    let z = ZvMatrix::new(example1_matrix(), GroundSet::numbered(6).unwrap()).unwrap();
    assert!(canonical_eq(&matrix_voa(&z, 2).unwrap(), &binary6()));
}

#[test]
fn whirl_base_is_an_oa243() {
    let t = whirl_voa(2, 3).unwrap();
    assert_eq!(t.n_rows(), 9);
    assert!(verify_oa(&t, 2).unwrap().holds);
    assert!(matches!(whirl_voa(3, 2), Err(matroidal::Error::UnsupportedLevel { v: 2, .. })));
}

#[test]
fn mixed_level_example() {
    let ground = GroundSet::numbered(4).unwrap();
    let h = IntegerPolymatroid::from_rank_fn(ground.clone(), |a| if a == 1 { 2 } else { a.count_ones().min(2) }).unwrap();
    let t = Voa::mixed(2, ground, rows(MIXED)).unwrap();
    assert!(verify_mvoa(&t, &h).unwrap().pass);
    let fe = free_expansion(&h).unwrap();
    assert!(find_isomorphism(&fe.matroid, &std(StandardKind::Uniform { t: 2, n: 5 })).is_some());
    // as a plain VOA of U_{2,4} the first column is out of range
    let r = verify_mvoa(&t, &std(StandardKind::Uniform { t: 2, n: 4 }).to_polymatroid()).unwrap();
    assert!(!r.pass);
}

#[test]
fn known_characteristic_sets() {
    let u24 = classify_matroid(&std(StandardKind::Uniform { t: 2, n: 4 })).unwrap();
    assert!(u24.exact);
    assert_eq!(u24.known_in, LevelSet::at_least_except(3, &[6]));
    let u25 = classify_matroid(&std(StandardKind::Uniform { t: 2, n: 5 })).unwrap();
    assert_eq!(u25.undecided, LevelSet::from_levels(&[10]));
    assert_eq!(u25.known_out, LevelSet::from_levels(&[2, 3, 6]));
    let w = classify_matroid(&std(StandardKind::Wheel { r: 4 })).unwrap();
    assert_eq!(w.known_in, LevelSet::all());
    let e = ConstructionExpr::two_sum(
        ConstructionExpr::leaf(StandardKind::Wheel { r: 3 }),
        "a1",
        ConstructionExpr::leaf(StandardKind::Whirl { r: 3 }),
        "a1",
    );
    let r = classify_expr(&e).unwrap();
    assert!(r.exact);
    assert_eq!(r.known_in, LevelSet::at_least_except(3, &[6]));
}

#[test]
fn default_series_auxiliary_is_cyclic() {
    let a = voa_series(&series_t1(), "4", &series_t2(), "4", None).unwrap();
    let b = voa_series(&series_t1(), "4", &series_t2(), "4", Some(&cyclic_oa23(2).unwrap())).unwrap();
    assert_eq!(a, b);
    // at v = 2 the cyclic table is the printed U
    assert!(canonical_eq(&cyclic_oa23(2).unwrap(), &series_u()));
}

#[test]
fn builder_oa243_matches_the_printed_one_up_to_symmetry() {
    let built = oa_2_4(3).unwrap();
    let printed = numbered(3, 4, OA243);
    assert!(!canonical_eq(&built, &printed));
    // swap columns 3 and 4, then double one column
    let swapped = built.select(&["1", "2", "4", "3"]).unwrap().relabel(["1", "2", "3", "4"]).unwrap();
    let fixed = swapped.map_column(2, &[0, 2, 1]);
    assert!(canonical_eq(&fixed, &printed));
}
