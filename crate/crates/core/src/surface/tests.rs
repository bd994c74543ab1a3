use super::fixtures::*;
use super::*;
use crate::error::Error;
use crate::freegroup::{cyclic_reduce, is_basis_tuple, is_primitive, substitute, CyclicWord, Word};

fn std() -> MeridianSystem {
    MeridianSystem::standard()
}

fn word(c: &ChordCurve, m: &MeridianSystem) -> String {
    word_of(c, m).unwrap().to_string()
}

fn cw(s: &str) -> CyclicWord {
    CyclicWord::parse(s, 2).unwrap()
}

fn chord(a: (u8, i64, i64), b: (u8, i64, i64)) -> Chord {
    Chord::new(
        BoundaryPoint::at(a.0, a.1, a.2),
        BoundaryPoint::at(b.0, b.1, b.2),
    )
}

fn raw(chords: Vec<Chord>) -> ChordCurve {
    serde_json::from_value(serde_json::to_value(chords).unwrap()).unwrap()
}

#[test]
fn validate_single_b_chord() {
    assert!(validate(&b_crossing()).is_empty());
}

#[test]
fn validate_repeated_point() {
    let c = raw(vec![
        chord((1, 1, 2), (3, 1, 2)),
        chord((1, 1, 2), (3, 1, 2)),
    ]);
    let v = validate(&c);
    assert!(
        v.iter()
            .any(|x| matches!(x, Violation::RepeatedBoundaryPoint { .. })),
        "{v:?}"
    );
}

#[test]
fn validate_self_crossing() {
    // Two chords through the b and d pairs that cross in the middle of the octagon.
    let c = raw(vec![
        chord((1, 1, 2), (5, 1, 2)),
        chord((7, 1, 2), (3, 1, 2)),
    ]);
    let v = validate(&c);
    assert!(
        v.contains(&Violation::SelfCrossing {
            first: 0,
            second: 1
        }),
        "{v:?}"
    );
    assert!(v.iter().all(|x| !matches!(x, Violation::NotClosed { .. })));
}

#[test]
fn validate_not_closed_and_bad_points() {
    let c = raw(vec![chord((1, 1, 2), (3, 1, 3))]);
    assert_eq!(validate(&c), vec![Violation::NotClosed { chord: 0 }]);
    let c = raw(vec![Chord::new(
        BoundaryPoint {
            side: 1,
            t: rat(0, 1),
        },
        BoundaryPoint::at(3, 1, 2),
    )]);
    assert_eq!(
        validate(&c),
        vec![Violation::EndpointNotInterior { chord: 0 }]
    );
    let c = raw(vec![chord((1, 1, 3), (1, 2, 3))]);
    assert!(validate(&c).contains(&Violation::ChordOnOneSide { chord: 0 }));
    assert_eq!(validate(&raw(vec![])), vec![Violation::EmptyCurve]);
    assert!(matches!(
        ChordCurve::new(vec![chord((1, 1, 2), (3, 1, 3))]),
        Err(Error::InvalidCurve(_))
    ));
}

#[test]
fn crossings_basic() {
    let b = b_crossing();
    assert_eq!(crossings(&b, &push_off(&b, Side::Left)).unwrap(), 0);
    assert_eq!(crossings(&b, &d_crossing()).unwrap(), 0);
    assert!(matches!(crossings(&b, &b), Err(Error::NonTransverse(_))));
    // Through the glued point: same surface point seen from the other side.
    let glued = raw(vec![chord((3, 1, 2), (1, 1, 2))]);
    assert!(matches!(
        crossings(&b, &glued),
        Err(Error::NonTransverse(_))
    ));
}

#[test]
fn fixture_crossing_table() {
    let named = [
        ("l1", lambda1()),
        ("l2", lambda2()),
        ("l3", lambda3()),
        ("x", x_dual()),
        ("y", y_dual()),
        ("mb", meridian_b()),
        ("md", meridian_d()),
    ];
    let ones = [
        ("l1", "x"),
        ("l1", "md"),
        ("l2", "y"),
        ("l2", "mb"),
        ("l3", "x"),
        ("l3", "y"),
        ("l3", "mb"),
        ("l3", "md"),
        ("x", "mb"),
        ("y", "md"),
    ];
    for (i, (n1, c1)) in named.iter().enumerate() {
        for (n2, c2) in named.iter().skip(i + 1) {
            let expect = if ones.contains(&(n1, n2)) || ones.contains(&(n2, n1)) {
                1
            } else {
                0
            };
            assert_eq!(crossings(c1, c2).unwrap(), expect, "{n1} vs {n2}");
            assert_eq!(crossings(c2, c1).unwrap(), expect, "{n2} vs {n1}");
        }
    }
}

#[test]
fn word_examples() {
    assert_eq!(word_along(&b_crossing(), &std()).unwrap().to_string(), "a");
    let a_only = raw(vec![chord((0, 1, 2), (2, 1, 2))]);
    assert!(validate(&a_only).is_empty());
    assert_eq!(word(&a_only, &std()), "");
    assert_eq!(word_along(&lambda1(), &std()).unwrap().to_string(), "b");
    assert_eq!(word_along(&lambda2(), &std()).unwrap().to_string(), "A");
    assert_eq!(word_along(&lambda3(), &std()).unwrap().to_string(), "ba");
    assert_eq!(word_along(&x_dual(), &std()).unwrap().to_string(), "a");
    assert_eq!(word_along(&y_dual(), &std()).unwrap().to_string(), "b");
    assert_eq!(word(&meridian_b(), &std()), "");
    assert_eq!(word(&meridian_d(), &std()), "");
}

#[test]
fn lambda_fixtures_are_primitive_and_pairwise_bases() {
    let ls = [lambda1(), lambda2(), lambda3()];
    let words: Vec<Word> = ls.iter().map(|c| word_along(c, &std()).unwrap()).collect();
    for (w, expected) in words.iter().zip(lambda_words()) {
        assert_eq!(w, &expected);
        assert!(is_primitive(&cyclic_reduce(w)).unwrap());
    }
    for i in 0..3 {
        for j in i + 1..3 {
            assert_eq!(crossings(&ls[i], &ls[j]).unwrap(), 0);
            assert!(is_basis_tuple(&[words[i].clone(), words[j].clone()], 2).unwrap());
        }
    }
    assert!(is_basis_tuple(&lambda_words_rank3(), 3).unwrap());
}

#[test]
fn rank3_words_project_to_rank2() {
    let drop_z = [
        Word::parse("a", 3).unwrap(),
        Word::parse("b", 3).unwrap(),
        Word::identity(3),
    ];
    for (w3, w2) in lambda_words_rank3().iter().zip(lambda_words()) {
        let projected = substitute(w3, &drop_z).unwrap().with_rank(2);
        let projected = Word::reduce(projected.unwrap().letters(), 2).unwrap();
        assert_eq!(cyclic_reduce(&projected), cyclic_reduce(&w2));
    }
}

#[test]
fn rotation_permutes_lambdas() {
    let images = rotation_images();
    assert!(is_basis_tuple(&images, 2).unwrap());
    let ws = lambda_words();
    for i in 0..3 {
        let img = substitute(&ws[i], &images).unwrap();
        assert_eq!(
            cyclic_reduce(&img),
            cyclic_reduce(&ws[(i + 1) % 3]),
            "λ{}",
            i + 1
        );
    }
}

#[test]
fn curve_system_matches_side_pairs() {
    let m = MeridianSystem::curves(meridian_b(), meridian_d()).unwrap();
    for c in [
        lambda1(),
        lambda2(),
        lambda3(),
        x_dual(),
        y_dual(),
        b_crossing(),
        separating(),
    ] {
        assert_eq!(word_of(&c, &m).unwrap(), word_of(&c, &std()).unwrap());
        assert_eq!(
            word_along(&c.reversed(), &m).unwrap(),
            word_along(&c, &m).unwrap().inverse()
        );
    }
    assert_eq!(word_along(&x_dual(), &m).unwrap().to_string(), "a");
}

#[test]
fn meridian_system_checks() {
    assert!(MeridianSystem::side_pairs('b', 'b').is_err());
    assert!(MeridianSystem::side_pairs('a', 'b').is_err());
    assert!(MeridianSystem::side_pairs('b', 'c').is_ok());
    assert!(MeridianSystem::curves(lambda3(), meridian_d()).is_err());
}

#[test]
fn word_rotation_and_reversal() {
    let c = lambda3();
    for k in 0..c.len() {
        assert_eq!(
            word_of(&c.rotated(k), &std()).unwrap(),
            word_of(&c, &std()).unwrap()
        );
    }
    let rev = cyclic_reduce(&word_along(&c.reversed(), &std()).unwrap());
    assert_eq!(rev, cyclic_reduce(&Word::parse("AB", 2).unwrap()));
}

#[test]
fn push_off_properties() {
    for c in [b_crossing(), lambda3(), y_dual(), separating()] {
        let l = push_off(&c, Side::Left);
        let r = push_off(&c, Side::Right);
        assert!(validate(&l).is_empty());
        assert_eq!(crossings(&c, &l).unwrap(), 0);
        assert_eq!(crossings(&c, &r).unwrap(), 0);
        assert_eq!(crossings(&l, &r).unwrap(), 0);
        assert_eq!(word_of(&l, &std()).unwrap(), word_of(&c, &std()).unwrap());
        let ll = push_off(&l, Side::Left);
        assert_eq!(crossings(&c, &ll).unwrap(), 0);
        assert_eq!(crossings(&l, &ll).unwrap(), 0);
    }
    assert!(push_off_by(&b_crossing(), Side::Left, &rat(1, 3)).is_err());
}

#[test]
fn band_sum_bounds_a_disk_and_misses_lambda() {
    let d = band_sum(&meridian_d(), &lambda1()).unwrap();
    assert!(validate(&d).is_empty());
    assert_eq!(crossings(&d, &lambda1()).unwrap(), 0);
    assert_eq!(crossings(&d, &lambda2()).unwrap(), 0);
    assert_eq!(word(&d, &std()), "");
    assert!(matches!(
        band_sum(&meridian_b(), &lambda1()),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn disk_twists_fix_handlebody_words() {
    for k in [-2, -1, 1, 2] {
        let out = twist(&[lambda2(), lambda3()], &meridian_b(), k).unwrap();
        assert_eq!(word_of(&out[0], &std()).unwrap(), cw("a"));
        assert_eq!(word_of(&out[1], &std()).unwrap(), cw("ab"));
        assert_eq!(crossings(&out[0], &out[1]).unwrap(), 0);
    }
}

#[test]
fn twist_changes_words_and_inverts() {
    let one = twist(&[lambda1()], &x_dual(), 1).unwrap().remove(0);
    let w = word_of(&one, &std()).unwrap();
    assert_eq!(w.len(), 2);
    assert!(is_primitive(&w).unwrap());
    let back = twist(&[one], &x_dual(), -1).unwrap().remove(0);
    assert_eq!(word_of(&back, &std()).unwrap(), cw("b"));
    let plus = word_of(&twist(&[lambda1()], &x_dual(), 1).unwrap()[0], &std()).unwrap();
    let minus = word_of(&twist(&[lambda1()], &x_dual(), -1).unwrap()[0], &std()).unwrap();
    assert_ne!(plus, minus);
}

#[test]
fn twist_rejects_crossing_family() {
    assert!(matches!(
        twist(&[lambda1(), x_dual()], &meridian_b(), 1),
        Err(Error::NotDisjoint(..))
    ));
}

#[test]
fn compact_preserves_combinatorics() {
    let fam = twist(&[lambda1(), lambda2()], &lambda3(), 2).unwrap();
    let mut all = fam.clone();
    all.push(meridian_b());
    all.push(meridian_d());
    let small = compact(&all);
    for i in 0..all.len() {
        assert!(validate(&small[i]).is_empty());
        assert_eq!(
            word_of(&small[i], &std()).unwrap(),
            word_of(&all[i], &std()).unwrap()
        );
        for j in i + 1..all.len() {
            assert_eq!(
                crossings(&small[i], &small[j]).unwrap(),
                crossings(&all[i], &all[j]).unwrap()
            );
        }
    }
}

#[test]
fn trivial_word_fixtures() {
    for c in [separating(), vertex_loop()] {
        assert_eq!(word(&c, &std()), "");
        assert_eq!(word(&c, &MeridianSystem::dual_standard()), "");
    }
}

#[test]
fn curve_json_round_trip() {
    let c = lambda3();
    let j = serde_json::to_string(&c).unwrap();
    assert!(j.starts_with(r#"[{"from":{"side":1,"t":"1/4"}"#));
    let back: ChordCurve = serde_json::from_str(&j).unwrap();
    assert_eq!(back, c);
}
