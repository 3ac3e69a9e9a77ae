use super::*;
use crate::loop_aut::{invariant, opposite, square_map};

fn alg(f: Family, n: usize) -> Arc<SimpleAlgebra> {
    algebra(f, n).unwrap()
}

fn notations(row: &TableRow) -> Vec<&str> {
    row.entries.iter().map(|e| e.notation.as_str()).collect()
}

#[test]
fn first_kind_examples() {
    let a1 = enumerate_first_kind(&alg(Family::A, 1), 1).unwrap();
    assert_eq!(a1.count_label(), "2+1");
    let d4 = alg(Family::D, 4);
    let row = enumerate_first_kind(&d4, 3).unwrap();
    assert_eq!(row.count_label(), "1+1");
    assert_eq!(notations(&row), vec!["(rho4, theta)", "theta"]);
    for n in 2..=5 {
        assert_eq!(enumerate_first_kind(&alg(Family::B, n), 1).unwrap().count, 2 * n + 1);
    }
    assert!(matches!(enumerate_first_kind(&alg(Family::B, 2), 2), Err(Error::InvalidK(2))));
}

#[test]
fn second_kind_examples() {
    let d4 = alg(Family::D, 4);
    assert_eq!(enumerate_second_kind(&d4, 1).unwrap().count, 10);
    assert_eq!(enumerate_second_kind(&d4, 2).unwrap().count, 8);
    let row = enumerate_second_kind(&d4, 3).unwrap();
    assert_eq!(notations(&row), vec!["[rho1, rho1']", "[rho1, rho3']", "[rho3, rho3']"]);
    for n in 1..=3 {
        let row = enumerate_second_kind(&alg(Family::A, 2 * n), 1).unwrap();
        assert_eq!(row.count, n * (n + 3) / 2 + 2);
    }
}

#[test]
fn e6_static_rows() {
    let e6 = alg(Family::E6, 6);
    let row = enumerate_second_kind(&e6, 2).unwrap();
    assert_eq!(row.provenance, Provenance::Static);
    assert_eq!(
        notations(&row),
        vec!["[id, rho1]", "[id, rho4]", "[rho1, rho2]", "[rho1, rho3]", "[rho2, rho4]", "[rho3, rho4]"]
    );
    assert_eq!(enumerate_second_kind(&e6, 1).unwrap().count, 9);
    assert_eq!(enumerate_first_kind(&e6, 1).unwrap().count_label(), "4+2");
    assert_eq!(enumerate_first_kind(&e6, 2).unwrap().count_label(), "4+0");
    let e7 = alg(Family::E7, 7);
    assert_eq!(enumerate_first_kind(&e7, 1).unwrap().count_label(), "5+1");
    assert_eq!(enumerate_second_kind(&e7, 1).unwrap().count, 10);
}

#[test]
fn small_rows_match_closed_forms() {
    for (f, n) in [(Family::A, 1), (Family::A, 2), (Family::A, 3), (Family::A, 4), (Family::B, 3), (Family::C, 3), (Family::C, 4), (Family::D, 5), (Family::D, 6)] {
        let a = alg(f, n);
        for k in valid_ks(&a) {
            let first = enumerate_first_kind(&a, k).unwrap();
            let (x, y) = expected_first_kind(f, n, k).unwrap();
            assert_eq!((first.count_of(EntryType::FirstA), first.count_of(EntryType::FirstB)), (x, y), "{}", first.algebra);
            let second = enumerate_second_kind(&a, k).unwrap();
            assert_eq!(second.count, expected_second_kind(f, n, k).unwrap(), "{}", second.algebra);
        }
    }
}

#[test]
fn entries_realize_and_round_trip() {
    for (f, n) in [(Family::A, 2), (Family::A, 3), (Family::B, 2), (Family::C, 4), (Family::D, 4), (Family::D, 6)] {
        let a = alg(f, n);
        for row in all_rows(&a).unwrap() {
            for e in &row.entries {
                let phi = realize_entry(&a, e).unwrap();
                assert!(phi.x().is_zero());
                assert_eq!(invariant(&phi).unwrap(), e.invariant, "{} {}", row.algebra, e.notation);
                assert!(membership_condition(&a, &e.invariant, phi.source_twist()).unwrap());
            }
        }
    }
}

#[test]
fn iota_two_fixes_enumerated_sets() {
    for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::D, 4), (Family::E6, 6)] {
        let a = alg(f, n);
        for k in valid_ks(&a) {
            for e in enumerate_first_kind(&a, k).unwrap().entries {
                let LoopInvariant::First(i) = &e.invariant else { unreachable!() };
                assert_eq!(opposite(&a, i).unwrap(), *i, "{}", e.notation);
            }
        }
    }
}

#[test]
fn square_map_respects_membership() {
    let a = alg(Family::A, 3);
    let sigmas = [Automorphism::identity(&a), named_automorphism(&a, "mu").unwrap()];
    for k in valid_ks(&a) {
        for e in enumerate_second_kind(&a, k).unwrap().entries {
            let LoopInvariant::Second(s) = &e.invariant else { unreachable!() };
            let sq = LoopInvariant::First(square_map(&a, s).unwrap());
            for sigma in &sigmas {
                assert_eq!(
                    membership_condition(&a, &sq, sigma).unwrap(),
                    membership_condition(&a, &e.invariant, sigma).unwrap()
                );
            }
        }
    }
}

#[test]
fn membership_examples() {
    let a = alg(Family::A, 2);
    let id = Automorphism::identity(&a);
    let pair = |x: &str, y: &str| LoopInvariant::Second(SecondKindInvariant { pair: [x.into(), y.into()], k: 1 });
    assert!(!membership_condition(&a, &pair("mu", "id"), &id).unwrap());
    assert!(membership_condition(&a, &pair("mu", "mu"), &id).unwrap());
    let rho = LoopInvariant::First(FirstKindInvariant {
        q: 2,
        p: 0,
        rho: RhoClass::Label("rho1".into()),
        beta: "id".into(),
        k: 1,
    });
    assert!(membership_condition(&a, &rho, &id).unwrap());
}

#[test]
fn table1_validates() {
    for (f, n) in [(Family::A, 1), (Family::A, 4), (Family::A, 5), (Family::B, 3), (Family::C, 3), (Family::C, 4), (Family::D, 4), (Family::D, 5), (Family::D, 6)] {
        let a = alg(f, n);
        for check in validate_table1(&a).unwrap() {
            assert!(check.commuting_and_orders, "{}{n} {}", f.name(), check.rho);
            assert!(check.separated, "{}{n} {} {:?}", f.name(), check.rho, check.signatures);
        }
    }
    assert_eq!(table1(&alg(Family::G2, 2)).unwrap()[0].provenance, Provenance::Static);
}

#[test]
fn emitters() {
    let a = alg(Family::A, 1);
    let rows = all_rows(&a).unwrap();
    let json = emit_rows(&rows, Emit::Json).unwrap();
    let back: Vec<TableRow> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, rows);
    let text = emit_rows(&rows, Emit::Text).unwrap();
    assert!(text.lines().next().unwrap().starts_with("a_1^(1)  kind 1"));
    assert!(text.contains("2+1"));
    let tex = emit_rows(&rows, Emit::Latex).unwrap();
    assert!(tex.contains("\\mathfrak{a}_{1}^{(1)}"));
    assert!(tex.contains("\\varrho_{1}"));
    assert_eq!(super::emit::label_latex("rho1*Adtau3"), "\\varrho_{1}\\mathrm{Ad}\\,\\tau_{3}");
    assert_eq!(super::emit::label_latex("rho2''"), "\\varrho_{2}''");
}

#[test]
fn output_is_deterministic() {
    let a = alg(Family::D, 4);
    assert_eq!(all_rows(&a).unwrap(), all_rows(&a).unwrap());
}
