use serde::{Deserialize, Serialize};

use super::curve::{crossing_points, validate, ChordCurve};
use super::octagon::OctagonModel;
use crate::error::{Error, Result};
use crate::freegroup::{CyclicWord, Letter, Word};

/// Declares which surface curves bound meridian disks of a genus-2 handlebody.
///
/// Letters are emitted when a curve passes a meridian: the first meridian
/// emits `a` (also written `x`), the second `b` (`y`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MeridianSystem {
    /// Meridians are the identified side pairs named `a`, `b`, `c` or `d`.
    /// Passing from side `s` into its partner `s'` is positive when `s' < s`.
    SidePairs { meridians: [char; 2] },
    /// Meridians are arbitrary disjoint chord curves. A crossing is positive
    /// when the meridian passes from the right of the curve to its left.
    Curves { curves: Vec<ChordCurve> },
}

impl MeridianSystem {
    /// Meridians `b` and `d`.
    pub fn standard() -> Self {
        MeridianSystem::SidePairs {
            meridians: ['b', 'd'],
        }
    }

    /// Meridians `a` and `c`.
    pub fn dual_standard() -> Self {
        MeridianSystem::SidePairs {
            meridians: ['a', 'c'],
        }
    }

    pub fn side_pairs(first: char, second: char) -> Result<Self> {
        let m = MeridianSystem::SidePairs {
            meridians: [first, second],
        };
        m.check()?;
        Ok(m)
    }

    pub fn curves(first: ChordCurve, second: ChordCurve) -> Result<Self> {
        let m = MeridianSystem::Curves {
            curves: vec![first, second],
        };
        m.check()?;
        Ok(m)
    }

    /// Structural well-formedness.
    pub fn check(&self) -> Result<()> {
        match self {
            MeridianSystem::SidePairs { meridians } => {
                let classes: Vec<u8> = meridians
                    .iter()
                    .map(|&c| {
                        OctagonModel::class_by_name(c)
                            .ok_or_else(|| Error::malformed(format!("unknown side pair {c:?}")))
                    })
                    .collect::<Result<_>>()?;
                let handle = |c: u8| c >= 4;
                if classes[0] == classes[1] {
                    return Err(Error::malformed("meridian side pairs must be distinct"));
                }
                if handle(classes[0]) == handle(classes[1]) {
                    return Err(Error::malformed(
                        "meridian side pairs must come from different handles",
                    ));
                }
                Ok(())
            }
            MeridianSystem::Curves { curves } => {
                if curves.len() != 2 {
                    return Err(Error::Arity {
                        expected: 2,
                        got: curves.len(),
                    });
                }
                for c in curves {
                    let v = validate(c);
                    if !v.is_empty() {
                        return Err(Error::InvalidCurve(v[0].to_string()));
                    }
                }
                if crossing_points(&curves[0], &curves[1])?.is_empty() {
                    Ok(())
                } else {
                    Err(Error::NotDisjoint("meridian 0".into(), "meridian 1".into()))
                }
            }
        }
    }
}

/// Class in the handlebody's free group of the curve `c`.
pub fn word_of(c: &ChordCurve, m: &MeridianSystem) -> Result<CyclicWord> {
    Ok(CyclicWord::from_word(&word_along(c, m)?))
}

/// Letters met while traversing `c` from the start of its first chord, freely reduced.
pub fn word_along(c: &ChordCurve, m: &MeridianSystem) -> Result<Word> {
    let v = validate(c);
    if !v.is_empty() {
        return Err(Error::InvalidCurve(v[0].to_string()));
    }
    let mut letters: Vec<Letter> = Vec::new();
    match m {
        MeridianSystem::SidePairs { meridians } => {
            let classes: Vec<Option<u8>> = meridians
                .iter()
                .map(|&n| OctagonModel::class_by_name(n))
                .collect();
            for ch in c.chords() {
                let exit = ch.to.side;
                let entry = OctagonModel::partner(exit);
                let class = OctagonModel::pair_class(exit);
                if let Some(k) = classes.iter().position(|&x| x == Some(class)) {
                    let g = (k + 1) as Letter;
                    letters.push(if entry < exit { g } else { -g });
                }
            }
        }
        MeridianSystem::Curves { curves } => {
            let mut hits: Vec<Vec<(super::octagon::Rat, Letter)>> = vec![Vec::new(); c.len()];
            for (k, mc) in curves.iter().enumerate() {
                let g = (k + 1) as Letter;
                for x in crossing_points(c, mc)? {
                    hits[x.i].push((x.at.lambda, if x.at.sign > 0 { g } else { -g }));
                }
            }
            for mut h in hits {
                h.sort_by(|a, b| a.0.cmp(&b.0));
                letters.extend(h.into_iter().map(|(_, l)| l));
            }
        }
    }
    Word::reduce(&letters, 2)
}
