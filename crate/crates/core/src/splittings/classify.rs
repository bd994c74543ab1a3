use serde::{Deserialize, Serialize};

use super::spec::*;
use crate::chart::christoffel;
use crate::error::{Error, Result};
use crate::farey::{common_neighbor, distance, Slope};
use crate::freegroup::{is_basis_tuple, is_primitive, CyclicWord};
use crate::surface::{crossing_points, fixtures, word_of, ChordCurve, MeridianSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairTag {
    TypeA,
    TypeB,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Both curves, together with `rho`, form a complete set of primitive
    /// curves; the splitting is that of the handlebody surgered along `rho`.
    TypeA { rho: String, surgery: SurgerySlope },
    /// The first curve lies on the bottom end of a product structure with the
    /// given slope, the second on the top end.
    TypeB { bottom: Slope, top: Slope },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairType {
    pub tag: PairTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<String>,
}

impl PairType {
    fn found(w: Witness) -> Self {
        let tag = match w {
            Witness::TypeA { .. } => PairTag::TypeA,
            Witness::TypeB { .. } => PairTag::TypeB,
        };
        PairType {
            tag,
            witness: Some(w),
            diagnostics: None,
        }
    }

    fn unknown(why: String) -> Self {
        PairType {
            tag: PairTag::Unknown,
            witness: None,
            diagnostics: Some(why),
        }
    }

    /// The classification of the swapped pair.
    pub fn swapped(&self) -> Self {
        let mut out = self.clone();
        if let Some(Witness::TypeB { bottom, top }) = self.witness {
            out.witness = Some(Witness::TypeB {
                bottom: top,
                top: bottom,
            });
        }
        out
    }
}

/// Curves on a handlebody boundary realising the words, its meridians, and
/// named curves to try as the core of the surgered handle.
#[derive(Debug, Clone)]
pub struct Representatives {
    pub curves: [ChordCurve; 2],
    pub meridians: MeridianSystem,
    pub candidates: Vec<(String, ChordCurve, SurgerySlope)>,
}

/// The slope a rank-2 word would have on an end: `a` counts toward `p`, `b` toward `q`.
pub fn word_slope(w: &CyclicWord) -> Option<Slope> {
    if w.rank() != 2 {
        return None;
    }
    let ab = w.to_word().abelianization();
    Slope::new(ab[0], ab[1]).ok()
}

/// Whether `w` is, up to conjugacy and inversion, the slope word of its own slope.
pub fn is_slope_word(w: &CyclicWord) -> Option<Slope> {
    let s = word_slope(w)?;
    (CyclicWord::from_word(&christoffel(s)) == *w).then_some(s)
}

fn check_pre(u: &CyclicWord, v: &CyclicWord, reps: Option<&Representatives>) -> Result<()> {
    for (n, w) in [("first", u), ("second", v)] {
        if !is_primitive(w)? {
            return Err(Error::precondition(format!(
                "{n} word {w} is not primitive"
            )));
        }
    }
    if u == v {
        return Err(Error::precondition(format!(
            "words {u} and {v} are parallel"
        )));
    }
    if let Some(r) = reps {
        for (c, w) in r.curves.iter().zip([u, v]) {
            let got = word_of(c, &r.meridians)?;
            if got != *w {
                return Err(Error::precondition(format!(
                    "representative reads {got}, not {w}"
                )));
            }
        }
        if !crossing_points(&r.curves[0], &r.curves[1])?.is_empty() {
            return Err(Error::precondition("representatives cross"));
        }
    }
    Ok(())
}

fn type_a(u: &CyclicWord, v: &CyclicWord, r: &Representatives) -> Result<Option<Witness>> {
    for (name, rho, surgery) in &r.candidates {
        if r.curves
            .iter()
            .any(|c| !matches!(crossing_points(c, rho), Ok(x) if x.is_empty()))
        {
            continue;
        }
        let w = word_of(rho, &r.meridians)?;
        let words = [u.to_word(), v.to_word(), w.to_word()];
        let mut all = true;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if !is_basis_tuple(&[words[i].clone(), words[j].clone()], 2)? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Some(Witness::TypeA {
                rho: name.clone(),
                surgery: *surgery,
            }));
        }
    }
    Ok(None)
}

/// Classifies a pair of disjoint, non-parallel primitive curves. With
/// representatives the handle-surgery catalog is tried first; otherwise, or
/// failing that, the product catalog of slope words.
pub fn classify_pair(
    u: &CyclicWord,
    v: &CyclicWord,
    reps: Option<&Representatives>,
) -> Result<PairType> {
    check_pre(u, v, reps)?;
    if let Some(r) = reps {
        if let Some(w) = type_a(u, v, r)? {
            return Ok(PairType::found(w));
        }
    }
    match (is_slope_word(u), is_slope_word(v)) {
        (Some(bottom), Some(top)) => Ok(PairType::found(Witness::TypeB { bottom, top })),
        _ => Ok(PairType::unknown(format!(
            "pair ({u}, {v}) matches no catalog entry"
        ))),
    }
}

/// Classifies the identified pair on each side, `A` first. Handlebody sides
/// are classified with their representatives and pushed-in curves as candidates.
pub fn classify_spec(spec: &SplittingSpec) -> Result<[PairType; 2]> {
    let labels = spec.derivation_labels();
    if labels.len() != 2 {
        return Err(Error::precondition("expected two identified curves"));
    }
    let slots: Vec<&SurgerySlot> = labels
        .iter()
        .map(|l| {
            spec.slot(l)
                .ok_or_else(|| Error::precondition(format!("no slot {l}")))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for side in [SideName::A, SideName::B] {
        let (u, v) = (slots[0].word(side), slots[1].word(side));
        let sd = spec.side(side);
        let reps = match (sd.model, &slots[0].curve, &slots[1].curve) {
            (SideModel::Handlebody, Some(c0), Some(c1)) => {
                let mut candidates: Vec<(String, ChordCurve, SurgerySlope)> = spec
                    .slots
                    .iter()
                    .filter(|s| s.host == Host::from(side))
                    .filter_map(|s| s.curve.clone().map(|c| (s.label.clone(), c, s.slope)))
                    .collect();
                if side == SideName::A {
                    candidates.push(("λ3".into(), fixtures::lambda3(), SurgerySlope::NONE));
                }
                Some(Representatives {
                    curves: [c0.clone(), c1.clone()],
                    meridians: sd.meridians.clone(),
                    candidates,
                })
            }
            _ => None,
        };
        out.push(classify_pair(u, v, reps.as_ref())?);
    }
    let b = out.pop().expect("two sides");
    let a = out.pop().expect("two sides");
    Ok([a, b])
}

/// Whether the two `A`-side slopes of an `M × I` instance are within Farey
/// distance two, with a slope adjacent to both when they are.
pub fn single_stab_possible_mxi(a0: Slope, a1: Slope) -> (bool, Option<Slope>) {
    if distance(a0, a1) <= 2 {
        (true, common_neighbor(a0, a1))
    } else {
        (false, None)
    }
}
