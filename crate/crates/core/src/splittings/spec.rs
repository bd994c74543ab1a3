use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chart::{End, TwistStep};
use crate::error::{Error, Result};
use crate::farey::Slope;
use crate::freegroup::{CyclicWord, Word};
use crate::surface::{ChordCurve, MeridianSystem};

pub const SPEC_SCHEMA: &str = "heegaard-spec/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Mh,
    Mxi,
    Hybrid,
    Generic,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Mh => "mh",
            Family::Mxi => "mxi",
            Family::Hybrid => "hybrid",
            Family::Generic => "generic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SideName {
    A,
    B,
}

impl SideName {
    pub fn other(self) -> SideName {
        match self {
            SideName::A => SideName::B,
            SideName::B => SideName::A,
        }
    }
}

impl fmt::Display for SideName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SideName::A => "A",
            SideName::B => "B",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Host {
    A,
    B,
    Unassigned,
}

impl Host {
    pub fn side(self) -> Option<SideName> {
        match self {
            Host::A => Some(SideName::A),
            Host::B => Some(SideName::B),
            Host::Unassigned => None,
        }
    }
}

impl From<SideName> for Host {
    fn from(s: SideName) -> Host {
        match s {
            SideName::A => Host::A,
            SideName::B => Host::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SideModel {
    Handlebody,
    #[serde(rename = "f-x-i")]
    Product,
}

/// A surgery slope, or `none` for no surgery. Serialized as `"none"`, `"inf"` or `"p/q"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SurgerySlope(pub Option<Slope>);

impl SurgerySlope {
    pub const NONE: SurgerySlope = SurgerySlope(None);

    pub fn of(s: Slope) -> Self {
        SurgerySlope(Some(s))
    }

    pub fn is_none(&self) -> bool {
        self.0.is_none()
    }
}

impl fmt::Display for SurgerySlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => f.write_str("none"),
            Some(s) if s.is_inf() => f.write_str("inf"),
            Some(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for SurgerySlope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("none") {
            Ok(SurgerySlope::NONE)
        } else {
            Ok(SurgerySlope(Some(s.parse()?)))
        }
    }
}

impl Serialize for SurgerySlope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SurgerySlope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Rank-2 cyclic words as ASCII strings.
pub(crate) mod word_str {
    use super::*;

    pub fn serialize<S: Serializer>(w: &CyclicWord, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&w.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<CyclicWord, D::Error> {
        let s = String::deserialize(d)?;
        let w = Word::parse(&s, 2).map_err(serde::de::Error::custom)?;
        Ok(CyclicWord::from_word(&w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgerySlot {
    pub label: String,
    pub host: Host,
    #[serde(with = "word_str")]
    pub word_a: CyclicWord,
    #[serde(with = "word_str")]
    pub word_b: CyclicWord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<ChordCurve>,
    pub slope: SurgerySlope,
}

impl SurgerySlot {
    pub fn word(&self, side: SideName) -> &CyclicWord {
        match side {
            SideName::A => &self.word_a,
            SideName::B => &self.word_b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideSpec {
    pub model: SideModel,
    pub meridians: MeridianSystem,
}

/// Where an identified curve sits in one side's own coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Locus {
    /// One of the named curves `λ1`, `λ2`, `λ3` of the three-handle model.
    Fixture { name: String },
    /// A slope curve on one end of a product side.
    EndSlope {
        #[serde(with = "end_str")]
        end: End,
        slope: Slope,
    },
}

pub(crate) mod end_str {
    use super::*;

    pub fn serialize<S: Serializer>(e: &End, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match e {
            End::Bottom => "bottom",
            End::Top => "top",
        })
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<End, D::Error> {
        match String::deserialize(d)?.as_str() {
            "bottom" => Ok(End::Bottom),
            "top" => Ok(End::Top),
            other => Err(serde::de::Error::custom(format!("unknown end {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Identification {
    pub slot: String,
    pub a: Locus,
    pub b: Locus,
}

/// How the two boundaries are glued: the identified annuli, a concrete
/// realisation (twists carrying side `A`'s disks to side `B`'s), and an opaque
/// tag standing for the unconstrained remainder of the homeomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub identified: Vec<Identification>,
    pub realization: Vec<TwistStep>,
    pub tag: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingSpec {
    pub schema: String,
    pub family: Family,
    pub side_a: SideSpec,
    pub side_b: SideSpec,
    pub gluing: Gluing,
    pub slots: Vec<SurgerySlot>,
}

impl SplittingSpec {
    pub fn side(&self, s: SideName) -> &SideSpec {
        match s {
            SideName::A => &self.side_a,
            SideName::B => &self.side_b,
        }
    }

    pub fn slot(&self, label: &str) -> Option<&SurgerySlot> {
        self.slots.iter().find(|s| s.label == label)
    }

    pub(crate) fn slot_mut(&mut self, label: &str) -> Option<&mut SurgerySlot> {
        self.slots.iter_mut().find(|s| s.label == label)
    }

    /// Labels of the slots awaiting a side, in slot order.
    pub fn unassigned(&self) -> Vec<&str> {
        self.slots
            .iter()
            .filter(|s| s.host == Host::Unassigned)
            .map(|s| s.label.as_str())
            .collect()
    }

    /// Labels of the two curves a Dehn derivation distributes between the sides.
    pub fn derivation_labels(&self) -> Vec<&str> {
        self.gluing
            .identified
            .iter()
            .map(|i| i.slot.as_str())
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: SplittingSpec = serde_json::from_str(s)?;
        if spec.schema != SPEC_SCHEMA {
            return Err(Error::Schema(format!(
                "expected schema {SPEC_SCHEMA}, got {}",
                spec.schema
            )));
        }
        Ok(spec)
    }
}
