use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// The octagon with boundary word `a b a⁻¹ b⁻¹ c d c⁻¹ d⁻¹`.
///
/// Side `i` runs counterclockwise from vertex `i` to vertex `i + 1`. Sides are
/// paired `0↔2` (a), `1↔3` (b), `4↔6` (c), `5↔7` (d); gluing sends the
/// parameter `t` on one side to `1 - t` on its partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OctagonModel;

const VERTICES: [(i64, i64); 8] = [
    (3, 1),
    (1, 3),
    (-1, 3),
    (-3, 1),
    (-3, -1),
    (-1, -3),
    (1, -3),
    (3, -1),
];

impl OctagonModel {
    pub const SIDE_PAIRS: [(u8, u8); 4] = [(0, 2), (1, 3), (4, 6), (5, 7)];

    pub fn vertex(i: u8) -> (i64, i64) {
        VERTICES[(i % 8) as usize]
    }

    pub fn partner(side: u8) -> u8 {
        match side {
            0 => 2,
            2 => 0,
            1 => 3,
            3 => 1,
            4 => 6,
            6 => 4,
            5 => 7,
            7 => 5,
            _ => panic!("side {side} out of range"),
        }
    }

    /// Lower-numbered side of the pair containing `side`.
    pub fn pair_class(side: u8) -> u8 {
        side.min(Self::partner(side))
    }

    /// Letter naming the identification of a pair class.
    pub fn class_name(class: u8) -> char {
        match class {
            0 => 'a',
            1 => 'b',
            4 => 'c',
            5 => 'd',
            _ => '?',
        }
    }

    pub fn class_by_name(name: char) -> Option<u8> {
        match name {
            'a' => Some(0),
            'b' => Some(1),
            'c' => Some(4),
            'd' => Some(5),
            _ => None,
        }
    }
}

mod rat_string {
    use super::Rat;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(t: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", t.numer(), t.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::malformed(format!("bad fraction {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(p, q))
}

/// A point on side `side` at parameter `t`, strictly inside the side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub side: u8,
    #[serde(with = "rat_string")]
    pub t: Rat,
}

impl BoundaryPoint {
    pub fn new(side: u8, t: Rat) -> Result<Self> {
        let p = BoundaryPoint { side, t };
        if !p.is_well_formed() {
            return Err(Error::InvalidCurve(format!(
                "boundary point {p} is not interior to a side"
            )));
        }
        Ok(p)
    }

    pub fn at(side: u8, p: i64, q: i64) -> Self {
        BoundaryPoint::new(side, rat(p, q)).expect("interior point")
    }

    pub fn is_well_formed(&self) -> bool {
        self.side < 8 && self.t.is_positive() && self.t < Rat::one()
    }

    /// The same surface point seen from the partner side.
    pub fn glue(&self) -> BoundaryPoint {
        BoundaryPoint {
            side: OctagonModel::partner(self.side),
            t: Rat::one() - &self.t,
        }
    }

    /// Pair class and position along it, measured on the lower-numbered side.
    pub fn class_position(&self) -> (u8, Rat) {
        let class = OctagonModel::pair_class(self.side);
        if class == self.side {
            (class, self.t.clone())
        } else {
            (class, Rat::one() - &self.t)
        }
    }

    /// Whether both points are the same point of the surface.
    pub fn same_surface_point(&self, other: &BoundaryPoint) -> bool {
        self.class_position() == other.class_position()
    }

    pub fn coords(&self) -> (Rat, Rat) {
        let (x0, y0) = OctagonModel::vertex(self.side);
        let (x1, y1) = OctagonModel::vertex(self.side + 1);
        let lerp = |a: i64, b: i64| {
            Rat::from_integer(a.into()) + &self.t * Rat::from_integer((b - a).into())
        };
        (lerp(x0, x1), lerp(y0, y1))
    }

    /// Position along the octagon boundary, counterclockwise from vertex 0.
    pub fn perimeter_position(&self) -> Rat {
        Rat::from_integer(self.side.into()) + &self.t
    }

    pub(crate) fn shifted(&self, delta: &Rat) -> BoundaryPoint {
        BoundaryPoint {
            side: self.side,
            t: &self.t + delta,
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}/{}", self.side, self.t.numer(), self.t.denom())
    }
}

pub(crate) type Point = (Rat, Rat);

pub(crate) fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    let v = (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0);
    v.cmp(&Rat::zero())
}

pub(crate) fn cross(u: &Point, v: &Point) -> Rat {
    &u.0 * &v.1 - &u.1 * &v.0
}

pub(crate) fn sub(a: &Point, b: &Point) -> Point {
    (&a.0 - &b.0, &a.1 - &b.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_are_involutions() {
        for s in 0..8 {
            assert_eq!(OctagonModel::partner(OctagonModel::partner(s)), s);
            assert_ne!(OctagonModel::partner(s), s);
        }
    }

    #[test]
    fn glue_round_trip() {
        let p = BoundaryPoint::at(1, 1, 3);
        assert_eq!(p.glue(), BoundaryPoint::at(3, 2, 3));
        assert_eq!(p.glue().glue(), p);
        assert!(p.same_surface_point(&p.glue()));
    }

    #[test]
    fn corners_rejected() {
        assert!(BoundaryPoint::new(0, rat(0, 1)).is_err());
        assert!(BoundaryPoint::new(0, rat(1, 1)).is_err());
        assert!(BoundaryPoint::new(8, rat(1, 2)).is_err());
    }

    #[test]
    fn coordinates_on_side() {
        let p = BoundaryPoint::at(0, 1, 2);
        assert_eq!(p.coords(), (rat(2, 1), rat(2, 1)));
    }

    #[test]
    fn serde_fraction_strings() {
        let p = BoundaryPoint::at(5, 3, 8);
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"side":5,"t":"3/8"}"#);
        let back: BoundaryPoint = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
    }
}
