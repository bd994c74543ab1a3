use std::sync::OnceLock;

use heegaard::chart::christoffel;
use heegaard::corpus::corpus;
use heegaard::distance::{build_distance3_certificate, verify_certificate, DerivedChoice};
use heegaard::farey::{distance, Slope};
use heegaard::freegroup::{apply_whitehead, is_primitive, CyclicWord, WhiteheadAut, Word};
use heegaard::splittings::{
    check_stabilization, classify_pair, dehn_derive, emit_double_stab_certificate,
    emit_single_stab_certificate, is_slope_word, normalize, Family, SplittingSpec,
};
use proptest::prelude::*;

fn slope() -> impl Strategy<Value = Slope> {
    prop_oneof![
        1 => Just(Slope::INF),
        9 => (-12i64..=12, 1i64..=12).prop_filter_map("coprime", |(p, q)| Slope::new(p, q).ok()
            .filter(|s| s.p() == p && s.q() == q)),
    ]
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![Just(1i8), Just(-1), Just(2), Just(-2)], 1..=max)
        .prop_map(|l| Word::reduce(&l, 2).unwrap())
        .prop_filter("nontrivial", |w| !w.is_empty())
}

fn specs() -> &'static Vec<SplittingSpec> {
    static SPECS: OnceLock<Vec<SplittingSpec>> = OnceLock::new();
    SPECS.get_or_init(|| corpus().iter().map(|i| i.build().unwrap()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn slope_words_are_primitive(s in slope()) {
        let w = CyclicWord::from_word(&christoffel(s));
        prop_assert!(is_primitive(&w).unwrap());
        prop_assert_eq!(is_slope_word(&w), Some(s));
    }

    #[test]
    fn rank_two_primitives_are_slope_words(w in word(9)) {
        let c = CyclicWord::from_word(&w);
        if is_primitive(&c).unwrap() {
            prop_assert!(is_slope_word(&c).is_some(), "{} is primitive", c);
        }
    }

    #[test]
    fn primitivity_is_automorphism_invariant(w in word(7), k in 0usize..64) {
        let auts = WhiteheadAut::all(2);
        let t = &auts[k % auts.len()];
        let img = apply_whitehead(t, &w).unwrap();
        prop_assume!(!img.is_empty());
        prop_assert_eq!(
            is_primitive(&CyclicWord::from_word(&w)).unwrap(),
            is_primitive(&CyclicWord::from_word(&img)).unwrap()
        );
    }

    #[test]
    fn classification_ignores_order_and_inversion(s in slope(), t in slope()) {
        prop_assume!(s != t);
        let u = CyclicWord::from_word(&christoffel(s));
        let v = CyclicWord::from_word(&christoffel(t));
        let uv = classify_pair(&u, &v, None).unwrap();
        prop_assert_eq!(classify_pair(&v, &u, None).unwrap(), uv.swapped());
        let u_inv = CyclicWord::from_word(&christoffel(s).inverse());
        prop_assert_eq!(classify_pair(&u_inv, &v, None).unwrap(), uv);
    }

    #[test]
    fn farey_distance_is_a_modular_invariant_metric(
        s in slope(),
        t in slope(),
        r in slope(),
        moves in prop::collection::vec(0usize..3, 0..6),
    ) {
        let d = distance(s, t);
        prop_assert_eq!(d, distance(t, s));
        prop_assert_eq!(d == 0, s == t);
        prop_assert!(d <= distance(s, r) + distance(r, t));
        let gens = [[[1, 1], [0, 1]], [[1, -1], [0, 1]], [[0, -1], [1, 0]]];
        let (mut s2, mut t2) = (s, t);
        for m in moves {
            s2 = s2.transform(gens[m]);
            t2 = t2.transform(gens[m]);
        }
        prop_assert_eq!(distance(s2, t2), d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normalize_is_idempotent(i in 0usize..24) {
        let spec = &specs()[i % specs().len()];
        let n = normalize(spec);
        prop_assert_eq!(normalize(&n), n.clone());
        let (d1, d2) = dehn_derive(spec).unwrap();
        for d in [d1, d2] {
            let n = normalize(&d);
            prop_assert_eq!(normalize(&n), n);
        }
    }

    #[test]
    fn moved_boundary_point_is_rejected(
        i in 0usize..24,
        second in any::<bool>(),
        curve in 0usize..4,
        chord in 0usize..64,
        end in any::<bool>(),
        k in 1i64..96,
    ) {
        let spec = &specs()[i % specs().len()];
        let choice = if second { DerivedChoice::Second } else { DerivedChoice::First };
        let cert = build_distance3_certificate(spec, choice).unwrap();
        let mut v = serde_json::to_value(&cert).unwrap();
        let chords = v["curves"][curve].as_array_mut().unwrap();
        let j = chord % chords.len();
        let field = if end { "to" } else { "from" };
        let old = chords[j][field]["t"].as_str().unwrap().to_string();
        let new = format!("{k}/97");
        prop_assume!(old != new);
        chords[j][field]["t"] = new.into();
        let rejected = match serde_json::from_value(v) {
            Err(_) => true,
            Ok(c) => !matches!(verify_certificate(&c), Ok(r) if r.is_ok()),
        };
        prop_assert!(rejected);
    }

    #[test]
    fn dropping_a_stabilization_move_is_rejected(i in 0usize..24, k in 0usize..16) {
        let spec = &specs()[i % specs().len()];
        let mut cert = if spec.family == Family::Mxi {
            emit_double_stab_certificate(spec).unwrap()
        } else {
            emit_single_stab_certificate(spec).unwrap()
        };
        let j = k % cert.moves.len();
        cert.moves.remove(j);
        let ok = matches!(check_stabilization(&cert), Ok(v) if v.is_valid());
        prop_assert!(!ok, "still valid without move {}", j);
    }
}
