use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::classify::single_stab_possible_mxi;
use super::derive::{dehn_derive, derivation_pair};
use super::spec::*;
use crate::error::{Error, Result};
use crate::farey::{common_neighbor, Slope};
use crate::freegroup::{is_basis_tuple, is_primitive};

pub const STAB_SCHEMA: &str = "heegaard-stab/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    /// An unknotted arc from the curve straight to a boundary component.
    Straight,
    /// An arc across the product region running along a slope of the end.
    Farey,
}

/// The arc along which a tube is added. `to` names where the arc ends: a
/// boundary component (`boundary`, `bottom`, `top`) or another identified curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcDescriptor {
    pub kind: ArcKind,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope: Option<Slope>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum StabMove {
    PushIn {
        slot: String,
        side: SideName,
    },
    TubeAdd {
        curve: String,
        arc: ArcDescriptor,
    },
    /// Cancels the tube around `cocore` against a disk on the other side whose
    /// boundary meets it once: the tube's own meridian when `dual == cocore`,
    /// otherwise a disk bounded by a copy of `dual`.
    Destabilize {
        cocore: String,
        dual: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationCertificate {
    pub schema: String,
    pub spec: SplittingSpec,
    pub start: BTreeMap<String, Host>,
    pub end: BTreeMap<String, Host>,
    pub moves: Vec<StabMove>,
}

impl StabilizationCertificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: StabilizationCertificate = serde_json::from_str(s)?;
        if c.schema != STAB_SCHEMA {
            return Err(Error::Schema(format!(
                "expected schema {STAB_SCHEMA}, got {}",
                c.schema
            )));
        }
        Ok(c)
    }

    /// Largest genus reached along the moves.
    pub fn max_genus(&self) -> u32 {
        let mut g = 2u32;
        let mut top = 2u32;
        for m in &self.moves {
            match m {
                StabMove::TubeAdd { .. } => g += 1,
                StabMove::Destabilize { .. } => g = g.saturating_sub(1),
                StabMove::PushIn { .. } => {}
            }
            top = top.max(g);
        }
        top
    }
}

fn hosts(spec: &SplittingSpec, labels: &[String]) -> BTreeMap<String, Host> {
    labels
        .iter()
        .map(|l| (l.clone(), spec.slot(l).expect("derived").host))
        .collect()
}

fn certificate(m0: &SplittingSpec, moves: Vec<StabMove>) -> Result<StabilizationCertificate> {
    let labels = derivation_pair(m0)?;
    let (d1, d2) = dehn_derive(m0)?;
    Ok(StabilizationCertificate {
        schema: STAB_SCHEMA.into(),
        spec: m0.clone(),
        start: hosts(&d1, &labels),
        end: hosts(&d2, &labels),
        moves,
    })
}

fn push(slot: &str, side: SideName) -> StabMove {
    StabMove::PushIn {
        slot: slot.into(),
        side,
    }
}

fn tube(curve: &str, kind: ArcKind, to: &str, slope: Option<Slope>) -> StabMove {
    StabMove::TubeAdd {
        curve: curve.into(),
        arc: ArcDescriptor {
            kind,
            to: to.into(),
            slope,
        },
    }
}

fn destab(cocore: &str, dual: &str) -> StabMove {
    StabMove::Destabilize {
        cocore: cocore.into(),
        dual: dual.into(),
    }
}

/// One stabilization relating the two derived splittings of an `M_H` or
/// hybrid instance: both curves into `A`, a straight tube from the first to
/// the boundary, and destabilization against the second.
pub fn emit_single_stab_certificate(m0: &SplittingSpec) -> Result<StabilizationCertificate> {
    if !matches!(m0.family, Family::Mh | Family::Hybrid) {
        return Err(Error::WrongFamily {
            expected: "mh or hybrid".into(),
            got: m0.family.to_string(),
        });
    }
    let [l1, l2] = derivation_pair(m0)?;
    certificate(
        m0,
        vec![
            push(&l2, SideName::A),
            tube(&l1, ArcKind::Straight, "boundary", None),
            destab(&l1, &l2),
        ],
    )
}

/// Two stabilizations for an `M × I` instance: both curves into `A × I`,
/// straight tubes to the ends, then two destabilizations.
pub fn emit_double_stab_certificate(m0: &SplittingSpec) -> Result<StabilizationCertificate> {
    if m0.family != Family::Mxi {
        return Err(Error::WrongFamily {
            expected: "mxi".into(),
            got: m0.family.to_string(),
        });
    }
    let [l0, l1] = derivation_pair(m0)?;
    certificate(
        m0,
        vec![
            push(&l1, SideName::A),
            tube(&l0, ArcKind::Straight, "bottom", None),
            tube(&l1, ArcKind::Straight, "top", None),
            destab(&l0, &l1),
            destab(&l1, &l1),
        ],
    )
}

fn side_slopes(spec: &SplittingSpec, side: SideName) -> Option<(Slope, Slope)> {
    let locus = |i: &Identification| match side {
        SideName::A => i.a.clone(),
        SideName::B => i.b.clone(),
    };
    let ids = &spec.gluing.identified;
    match (ids.first().map(locus), ids.get(1).map(locus)) {
        (Some(Locus::EndSlope { slope: s0, .. }), Some(Locus::EndSlope { slope: s1, .. })) => {
            Some((s0, s1))
        }
        _ => None,
    }
}

/// The single-stabilization certificate for an `M × I` instance whose
/// `A`-side slopes are within Farey distance two, tubing along a common neighbour.
pub fn emit_farey_stab_certificate(m0: &SplittingSpec) -> Result<StabilizationCertificate> {
    if m0.family != Family::Mxi {
        return Err(Error::WrongFamily {
            expected: "mxi".into(),
            got: m0.family.to_string(),
        });
    }
    let (a0, a1) = side_slopes(m0, SideName::A)
        .ok_or_else(|| Error::malformed("identified loci are not end slopes"))?;
    let (ok, witness) = single_stab_possible_mxi(a0, a1);
    let Some(cn) = witness.filter(|_| ok) else {
        return Err(Error::precondition(format!(
            "slopes {a0} and {a1} are farther than two apart"
        )));
    };
    let [l0, l1] = derivation_pair(m0)?;
    certificate(
        m0,
        vec![
            push(&l1, SideName::A),
            tube(&l0, ArcKind::Farey, &l1, Some(cn)),
            destab(&l0, &l1),
        ],
    )
}

/// Outcome of checking a certificate: the index of the first failing move
/// (`None` for the start or end state) and the reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum StabVerdict {
    Valid {
        max_genus: u32,
    },
    Invalid {
        index: Option<usize>,
        reason: String,
    },
}

impl StabVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, StabVerdict::Valid { .. })
    }
}

struct State {
    genus: u32,
    hosts: BTreeMap<String, Host>,
    tubes: BTreeMap<String, ArcDescriptor>,
}

fn common_side(st: &State) -> Option<SideName> {
    let mut it = st.hosts.values();
    let first = it.next()?.side()?;
    it.all(|h| h.side() == Some(first)).then_some(first)
}

fn step(
    spec: &SplittingSpec,
    labels: &[String; 2],
    st: &mut State,
    m: &StabMove,
) -> std::result::Result<(), String> {
    let other = |l: &str| labels.iter().find(|x| *x != l).cloned().unwrap_or_default();
    let known = |l: &str| {
        if labels.iter().any(|x| x == l) {
            Ok(())
        } else {
            Err(format!("{l} is not an identified curve"))
        }
    };
    match m {
        StabMove::PushIn { slot, side } => {
            known(slot)?;
            if st.hosts[slot] == Host::from(*side) {
                return Err(format!("{slot} already lies in {side}"));
            }
            st.hosts.insert(slot.clone(), Host::from(*side));
            if common_side(st) != Some(*side) {
                return Err(format!(
                    "pushing {slot} into {side} leaves the curves on different sides"
                ));
            }
        }
        StabMove::TubeAdd { curve, arc } => {
            known(curve)?;
            let x = common_side(st).ok_or("tubes need both curves on one side")?;
            if st.tubes.contains_key(curve) {
                return Err(format!("{curve} already carries a tube"));
            }
            let sd = spec.side(x);
            match (spec.family, sd.model) {
                (Family::Mh | Family::Hybrid, SideModel::Handlebody) => {
                    if arc.kind != ArcKind::Straight || arc.to != "boundary" || arc.slope.is_some()
                    {
                        return Err("handlebody tubes run straight to the boundary".into());
                    }
                    let ws: Vec<_> = labels
                        .iter()
                        .map(|l| spec.slot(l).expect("label").word(x).to_word())
                        .collect();
                    if !is_basis_tuple(&ws, 2).map_err(|e| e.to_string())? {
                        return Err(format!("the curves do not form a basis on side {x}"));
                    }
                }
                (Family::Mxi, SideModel::Product) => match arc.kind {
                    ArcKind::Straight => {
                        let want = if *curve == labels[0] { "bottom" } else { "top" };
                        if arc.to != want || arc.slope.is_some() {
                            return Err(format!(
                                "the straight arc from {curve} ends on the {want} end"
                            ));
                        }
                    }
                    ArcKind::Farey => {
                        let (s0, s1) = side_slopes(spec, x).ok_or("no end slopes on this side")?;
                        let cn = common_neighbor(s0, s1)
                            .ok_or("the end slopes have no common neighbour")?;
                        if arc.slope != Some(cn) {
                            return Err(format!("the Farey arc must follow slope {cn}"));
                        }
                        if arc.to != other(curve) {
                            return Err(format!(
                                "the Farey arc must join {curve} to {}",
                                other(curve)
                            ));
                        }
                    }
                },
                (f, model) => {
                    return Err(format!("no tube rule for family {f} on a {model:?} side"))
                }
            }
            st.tubes.insert(curve.clone(), arc.clone());
            st.genus += 1;
        }
        StabMove::Destabilize { cocore, dual } => {
            known(cocore)?;
            known(dual)?;
            if st.genus <= 2 {
                return Err("nothing to destabilize at genus 2".into());
            }
            let Some(arc) = st.tubes.remove(cocore) else {
                return Err(format!("{cocore} carries no tube"));
            };
            if dual != cocore {
                let x = st.hosts[cocore].side().ok_or("cocore lies on no side")?;
                if st.hosts[dual] != Host::from(x) {
                    return Err(format!("{dual} does not lie in {x}"));
                }
                if !is_primitive(spec.slot(dual).expect("label").word(x))
                    .map_err(|e| e.to_string())?
                {
                    return Err(format!("{dual} is not primitive in {x}"));
                }
                if spec.family == Family::Mxi
                    && arc.kind != ArcKind::Farey
                    && !st.tubes.contains_key(dual)
                {
                    return Err(format!(
                        "{dual} bounds no disk meeting the tube around {cocore}"
                    ));
                }
                st.hosts.insert(cocore.clone(), Host::from(x.other()));
            }
            st.genus -= 1;
        }
    }
    Ok(())
}

/// Replays the moves from the recorded start, checking every move's
/// hypotheses, and compares the result with the recorded end. Start and end
/// must be the two Dehn-derived splittings of the recorded spec.
pub fn check_stabilization(cert: &StabilizationCertificate) -> Result<StabVerdict> {
    let invalid = |index: Option<usize>, reason: String| Ok(StabVerdict::Invalid { index, reason });
    let labels = derivation_pair(&cert.spec)?;
    let (d1, d2) = dehn_derive(&cert.spec)?;
    let (h1, h2) = (hosts(&d1, &labels), hosts(&d2, &labels));
    if !((cert.start == h1 && cert.end == h2) || (cert.start == h2 && cert.end == h1)) {
        return invalid(
            None,
            "start and end are not the two derived splittings".into(),
        );
    }
    let mut st = State {
        genus: 2,
        hosts: cert.start.clone(),
        tubes: BTreeMap::new(),
    };
    for (i, m) in cert.moves.iter().enumerate() {
        if let Err(reason) = step(&cert.spec, &labels, &mut st, m) {
            return invalid(Some(i), reason);
        }
    }
    if st.genus != 2 || !st.tubes.is_empty() {
        return invalid(None, format!("ends at genus {}", st.genus));
    }
    if st.hosts != cert.end {
        return invalid(None, "final hosts differ from the recorded end".into());
    }
    Ok(StabVerdict::Valid {
        max_genus: cert.max_genus(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splittings::{build_hybrid, build_mh, build_mxi};

    fn s(t: &str) -> Slope {
        t.parse().unwrap()
    }

    fn one() -> SurgerySlope {
        SurgerySlope::of(s("1/1"))
    }

    #[test]
    fn mh_single() {
        let m = build_mh(one(), one(), one(), one(), "t").unwrap();
        let c = emit_single_stab_certificate(&m).unwrap();
        assert_eq!(c.moves.len(), 3);
        assert_eq!(
            check_stabilization(&c).unwrap(),
            StabVerdict::Valid { max_genus: 3 }
        );
        assert!(matches!(
            emit_double_stab_certificate(&m),
            Err(Error::WrongFamily { .. })
        ));
    }

    #[test]
    fn hybrid_single() {
        let m = build_hybrid(one(), one(), one(), s("1/2"), s("2/1"), "t").unwrap();
        let c = emit_single_stab_certificate(&m).unwrap();
        assert!(check_stabilization(&c).unwrap().is_valid());
    }

    #[test]
    fn mxi_double_and_farey() {
        let m = build_mxi(s("0/1"), s("1/0"), s("1/2"), s("2/1"), one(), one(), "t").unwrap();
        assert!(matches!(
            emit_single_stab_certificate(&m),
            Err(Error::WrongFamily { .. })
        ));
        let c = emit_double_stab_certificate(&m).unwrap();
        assert_eq!(
            check_stabilization(&c).unwrap(),
            StabVerdict::Valid { max_genus: 4 }
        );
        let f = emit_farey_stab_certificate(&m).unwrap();
        assert_eq!(
            check_stabilization(&f).unwrap(),
            StabVerdict::Valid { max_genus: 3 }
        );
        let back = StabilizationCertificate::from_json(&f.to_json().unwrap()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn corrupted_moves_fail() {
        let m = build_mh(one(), one(), one(), one(), "t").unwrap();
        let mut c = emit_single_stab_certificate(&m).unwrap();
        c.moves.swap(1, 2);
        assert!(!check_stabilization(&c).unwrap().is_valid());
    }
}
