use serde::{Deserialize, Serialize};

use super::spec::*;
use crate::chart::{self, End, TwistStep};
use crate::error::Result;
use crate::farey::Slope;
use crate::surface::{fixtures, word_of, ChordCurve, MeridianSystem};

/// Meridians of the side whose disks are the images of `A`'s under the realisation.
pub fn realized_meridians(
    realization: &[TwistStep],
    avoid: &[&ChordCurve],
) -> Result<MeridianSystem> {
    Ok(realize_with(realization, Vec::new(), avoid)?.0)
}

/// Realised meridians together with the images of `extra`, each curve of
/// `extra` carried separately so it may cross the others.
pub fn realize_with(
    realization: &[TwistStep],
    extra: Vec<ChordCurve>,
    avoid: &[&ChordCurve],
) -> Result<(MeridianSystem, Vec<ChordCurve>)> {
    let mut groups = vec![vec![fixtures::meridian_b(), fixtures::meridian_d()]];
    groups.extend(extra.into_iter().map(|c| vec![c]));
    let mut out = chart::apply_steps_groups(realization, &groups, avoid)?.into_iter();
    let mut ms = out.next().expect("meridian group");
    let second = ms.pop().expect("two meridians");
    let first = ms.pop().expect("two meridians");
    let images = out.map(|mut g| g.remove(0)).collect();
    Ok((MeridianSystem::curves(first, second)?, images))
}

fn slot(
    label: &str,
    host: Host,
    curve: ChordCurve,
    slope: SurgerySlope,
    a: &MeridianSystem,
    b: &MeridianSystem,
) -> Result<SurgerySlot> {
    Ok(SurgerySlot {
        label: label.to_string(),
        host,
        word_a: word_of(&curve, a)?,
        word_b: word_of(&curve, b)?,
        curve: Some(curve),
        slope,
    })
}

fn fixture(name: &str) -> Locus {
    Locus::Fixture { name: name.into() }
}

fn end_slope(end: End, slope: Slope) -> Locus {
    Locus::EndSlope { end, slope }
}

/// The M_H gluing: identity on `λ1` and `λ2`, twisting along the bottom end's
/// boundary and then along `λ3` elsewhere.
pub fn mh_realization() -> Vec<TwistStep> {
    vec![
        TwistStep {
            curve: "bottom-boundary".into(),
            power: 1,
        },
        TwistStep {
            curve: "lambda3".into(),
            power: 1,
        },
    ]
}

/// Two copies of the three-handle model glued along `λ1`, `λ2`, with `λ3`
/// pushed into each side as `ρa`, `ρb`.
pub fn build_mh(
    l1: SurgerySlope,
    l2: SurgerySlope,
    ra: SurgerySlope,
    rb: SurgerySlope,
    tag: &str,
) -> Result<SplittingSpec> {
    let realization = mh_realization();
    let a = MeridianSystem::standard();
    let (b, mut images) = realize_with(
        &realization,
        vec![chart::parallel_copy(&fixtures::lambda3())],
        &[],
    )?;
    let rho_b = images.remove(0);
    let slots = vec![
        slot("λ1", Host::Unassigned, fixtures::lambda1(), l1, &a, &b)?,
        slot("λ2", Host::Unassigned, fixtures::lambda2(), l2, &a, &b)?,
        slot("ρa", Host::A, fixtures::lambda3(), ra, &a, &b)?,
        slot("ρb", Host::B, rho_b, rb, &a, &b)?,
    ];
    Ok(SplittingSpec {
        schema: SPEC_SCHEMA.into(),
        family: Family::Mh,
        side_a: SideSpec {
            model: SideModel::Handlebody,
            meridians: a,
        },
        side_b: SideSpec {
            model: SideModel::Handlebody,
            meridians: b,
        },
        gluing: Gluing {
            identified: vec![
                Identification {
                    slot: "λ1".into(),
                    a: fixture("λ1"),
                    b: fixture("λ1"),
                },
                Identification {
                    slot: "λ2".into(),
                    a: fixture("λ2"),
                    b: fixture("λ2"),
                },
            ],
            realization,
            tag: tag.into(),
        },
        slots,
    })
}

/// Product sides `A × I` and `B × I` glued so that `λ0` has slopes `α0`, `β0`
/// on the bottom ends and `λ1` has slopes `α1`, `β1` on the top ends.
#[allow(clippy::too_many_arguments)]
pub fn build_mxi(
    a0: Slope,
    a1: Slope,
    b0: Slope,
    b1: Slope,
    s0: SurgerySlope,
    s1: SurgerySlope,
    tag: &str,
) -> Result<SplittingSpec> {
    let mut realization = chart::change_of_slope(End::Bottom, b0, a0);
    realization.extend(chart::change_of_slope(End::Top, b1, a1));
    let a = MeridianSystem::standard();
    let c0 = chart::slope_curve(End::Bottom, a0)?;
    let c1 = chart::slope_curve(End::Top, a1)?;
    let b = realized_meridians(&realization, &[&c0, &c1])?;
    let slots = vec![
        slot("λ0", Host::Unassigned, c0, s0, &a, &b)?,
        slot("λ1", Host::Unassigned, c1, s1, &a, &b)?,
    ];
    Ok(SplittingSpec {
        schema: SPEC_SCHEMA.into(),
        family: Family::Mxi,
        side_a: SideSpec {
            model: SideModel::Product,
            meridians: a,
        },
        side_b: SideSpec {
            model: SideModel::Product,
            meridians: b,
        },
        gluing: Gluing {
            identified: vec![
                Identification {
                    slot: "λ0".into(),
                    a: end_slope(End::Bottom, a0),
                    b: end_slope(End::Bottom, b0),
                },
                Identification {
                    slot: "λ1".into(),
                    a: end_slope(End::Top, a1),
                    b: end_slope(End::Top, b1),
                },
            ],
            realization,
            tag: tag.into(),
        },
        slots,
    })
}

/// The three-handle model on side `A` (with `ρa` pushed in) glued to `B × I`
/// so that `λ1`, `λ2` have slopes `β0` on the bottom and `β1` on the top.
pub fn build_hybrid(
    r3: SurgerySlope,
    l1: SurgerySlope,
    l2: SurgerySlope,
    b0: Slope,
    b1: Slope,
    tag: &str,
) -> Result<SplittingSpec> {
    let mut realization = chart::change_of_slope(End::Bottom, b0, Slope::integer(0));
    realization.extend(chart::change_of_slope(End::Top, b1, Slope::INF));
    let a = MeridianSystem::standard();
    let b = realized_meridians(&realization, &[])?;
    let slots = vec![
        slot("λ1", Host::Unassigned, fixtures::lambda1(), l1, &a, &b)?,
        slot("λ2", Host::Unassigned, fixtures::lambda2(), l2, &a, &b)?,
        slot("ρa", Host::A, fixtures::lambda3(), r3, &a, &b)?,
    ];
    Ok(SplittingSpec {
        schema: SPEC_SCHEMA.into(),
        family: Family::Hybrid,
        side_a: SideSpec {
            model: SideModel::Handlebody,
            meridians: a,
        },
        side_b: SideSpec {
            model: SideModel::Product,
            meridians: b,
        },
        gluing: Gluing {
            identified: vec![
                Identification {
                    slot: "λ1".into(),
                    a: fixture("λ1"),
                    b: end_slope(End::Bottom, b0),
                },
                Identification {
                    slot: "λ2".into(),
                    a: fixture("λ2"),
                    b: end_slope(End::Top, b1),
                },
            ],
            realization,
            tag: tag.into(),
        },
        slots,
    })
}

/// Parameters of one family instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilyParams {
    Mh {
        l1: SurgerySlope,
        l2: SurgerySlope,
        ra: SurgerySlope,
        rb: SurgerySlope,
    },
    Mxi {
        a0: Slope,
        a1: Slope,
        b0: Slope,
        b1: Slope,
        s0: SurgerySlope,
        s1: SurgerySlope,
    },
    Hybrid {
        r3: SurgerySlope,
        l1: SurgerySlope,
        l2: SurgerySlope,
        b0: Slope,
        b1: Slope,
    },
}

impl FamilyParams {
    pub fn family(&self) -> Family {
        match self {
            FamilyParams::Mh { .. } => Family::Mh,
            FamilyParams::Mxi { .. } => Family::Mxi,
            FamilyParams::Hybrid { .. } => Family::Hybrid,
        }
    }

    pub fn build(&self, tag: &str) -> Result<SplittingSpec> {
        match *self {
            FamilyParams::Mh { l1, l2, ra, rb } => build_mh(l1, l2, ra, rb, tag),
            FamilyParams::Mxi {
                a0,
                a1,
                b0,
                b1,
                s0,
                s1,
            } => build_mxi(a0, a1, b0, b1, s0, s1, tag),
            FamilyParams::Hybrid { r3, l1, l2, b0, b1 } => build_hybrid(r3, l1, l2, b0, b1, tag),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::{cyclic_reduce, CyclicWord};

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    fn cw(w: &str) -> CyclicWord {
        CyclicWord::parse(w, 2).unwrap()
    }

    #[test]
    fn mh_words() {
        let m = build_mh(
            SurgerySlope::NONE,
            SurgerySlope::NONE,
            SurgerySlope::of(s(1, 1)),
            SurgerySlope::of(s(1, 2)),
            "t",
        )
        .unwrap();
        assert_eq!(m.slot("λ1").unwrap().word_a, cw("b"));
        assert_eq!(m.slot("λ2").unwrap().word_a, cw("a"));
        assert_eq!(m.slot("λ1").unwrap().word_b, cw("b"));
        assert_eq!(m.slot("λ2").unwrap().word_b, cw("a"));
        assert_eq!(m.slot("ρa").unwrap().word_a, cw("ab"));
        assert_eq!(m.slot("ρb").unwrap().word_b, cw("ab"));
        assert_ne!(m.slot("ρb").unwrap().word_a, cw("ab"));
    }

    #[test]
    fn mxi_words_follow_slopes() {
        let grid = [
            s(0, 1),
            s(1, 0),
            s(1, 1),
            s(-1, 1),
            s(1, 2),
            s(2, 1),
            s(2, 3),
        ];
        for (i, &a0) in grid.iter().enumerate() {
            let a1 = grid[(i + 2) % grid.len()];
            let b0 = grid[(i + 3) % grid.len()];
            let b1 = grid[(i + 5) % grid.len()];
            let m = build_mxi(a0, a1, b0, b1, SurgerySlope::NONE, SurgerySlope::NONE, "t").unwrap();
            let l0 = m.slot("λ0").unwrap();
            let l1 = m.slot("λ1").unwrap();
            assert_eq!(l0.word_a, cyclic_reduce(&chart::christoffel(a0)), "{a0}");
            assert_eq!(l1.word_a, cyclic_reduce(&chart::christoffel(a1)), "{a1}");
            assert_eq!(
                l0.word_b,
                cyclic_reduce(&chart::christoffel(b0)),
                "{a0} {b0}"
            );
            assert_eq!(
                l1.word_b,
                cyclic_reduce(&chart::christoffel(b1)),
                "{a1} {b1}"
            );
        }
    }

    #[test]
    fn hybrid_words() {
        let m = build_hybrid(
            SurgerySlope::NONE,
            SurgerySlope::NONE,
            SurgerySlope::NONE,
            s(2, 3),
            s(-1, 2),
            "t",
        )
        .unwrap();
        assert_eq!(m.slot("λ1").unwrap().word_a, cw("b"));
        assert_eq!(m.slot("λ2").unwrap().word_a, cw("a"));
        assert_eq!(
            m.slot("λ1").unwrap().word_b,
            cyclic_reduce(&chart::christoffel(s(2, 3)))
        );
        assert_eq!(
            m.slot("λ2").unwrap().word_b,
            cyclic_reduce(&chart::christoffel(s(-1, 2)))
        );
        assert_eq!(m.slot("ρa").unwrap().word_a, cw("ab"));
    }

    #[test]
    fn json_round_trip() {
        let m = build_hybrid(
            SurgerySlope::of(s(1, 1)),
            SurgerySlope::NONE,
            SurgerySlope::NONE,
            s(1, 2),
            s(2, 1),
            "t",
        )
        .unwrap();
        let back = SplittingSpec::from_json(&m.to_json().unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
