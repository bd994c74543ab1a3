use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::octagon::{cross, orient, sub, BoundaryPoint, Point, Rat};
use crate::error::{Error, Result};

type Endpoint = (u8, Rat);

/// A straight chord of the octagon.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chord {
    pub from: BoundaryPoint,
    pub to: BoundaryPoint,
}

impl Chord {
    pub fn new(from: BoundaryPoint, to: BoundaryPoint) -> Self {
        Chord { from, to }
    }

    pub fn reversed(&self) -> Chord {
        Chord {
            from: self.to.clone(),
            to: self.from.clone(),
        }
    }

    pub(crate) fn endpoints(&self) -> (Point, Point) {
        (self.from.coords(), self.to.coords())
    }
}

/// Transverse crossing of two chords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordCrossing {
    /// Parameter along the first chord, in (0, 1).
    pub lambda: Rat,
    /// Parameter along the second chord, in (0, 1).
    pub mu: Rat,
    /// +1 when the second chord crosses the first from right to left.
    pub sign: i8,
}

pub(crate) fn intersect_endpoints(a: &(Point, Point), b: &(Point, Point)) -> Option<ChordCrossing> {
    let (pa, qa) = a;
    let (pb, qb) = b;
    let o1 = orient(pa, qa, pb);
    let o2 = orient(pa, qa, qb);
    let o3 = orient(pb, qb, pa);
    let o4 = orient(pb, qb, qa);
    let proper = |x: Ordering, y: Ordering| x != Ordering::Equal && y != Ordering::Equal && x != y;
    if !(proper(o1, o2) && proper(o3, o4)) {
        return None;
    }
    let d1 = sub(qa, pa);
    let d2 = sub(qb, pb);
    let w = sub(pb, pa);
    let den = cross(&d1, &d2);
    let lambda = cross(&w, &d2) / &den;
    let mu = cross(&w, &d1) / &den;
    let sign = if den > Rat::from_integer(0.into()) {
        1
    } else {
        -1
    };
    Some(ChordCrossing { lambda, mu, sign })
}

pub fn intersect(a: &Chord, b: &Chord) -> Option<ChordCrossing> {
    intersect_endpoints(&a.endpoints(), &b.endpoints())
}

/// Whether the endpoints of `b` separate those of `a` along the octagon
/// boundary. For chords of a convex polygon this is equivalent to a proper crossing.
pub fn interleaves(a: &Chord, b: &Chord) -> bool {
    fn key(p: &BoundaryPoint) -> (u8, &Rat) {
        (p.side, &p.t)
    }
    let (lo, hi) = (key(&a.from), key(&a.to));
    let inside = |p: &BoundaryPoint| {
        let k = key(p);
        if lo < hi {
            lo < k && k < hi
        } else {
            k > lo || k < hi
        }
    };
    let on_a = |p: &BoundaryPoint| key(p) == lo || key(p) == hi;
    !on_a(&b.from) && !on_a(&b.to) && inside(&b.from) != inside(&b.to)
}

/// A closed curve on the genus-2 surface given by a cyclic sequence of chords.
/// Deserialization does not validate; call [`validate`] on untrusted input.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChordCurve {
    chords: Vec<Chord>,
}

impl ChordCurve {
    pub fn new(chords: Vec<Chord>) -> Result<Self> {
        let c = ChordCurve { chords };
        let v = validate(&c);
        if v.is_empty() {
            Ok(c)
        } else {
            let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            Err(Error::InvalidCurve(msgs.join("; ")))
        }
    }

    pub(crate) fn from_chords_unchecked(chords: Vec<Chord>) -> Self {
        ChordCurve { chords }
    }

    /// Builds a curve from `(side, t)` pairs listing each chord's endpoints.
    pub fn from_points(points: &[(Endpoint, Endpoint)]) -> Result<Self> {
        let chords = points
            .iter()
            .map(|((s0, t0), (s1, t1))| {
                Ok(Chord::new(
                    BoundaryPoint::new(*s0, t0.clone())?,
                    BoundaryPoint::new(*s1, t1.clone())?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        ChordCurve::new(chords)
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn reversed(&self) -> ChordCurve {
        ChordCurve {
            chords: self.chords.iter().rev().map(Chord::reversed).collect(),
        }
    }

    pub fn rotated(&self, k: usize) -> ChordCurve {
        let n = self.chords.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let mut chords = self.chords[k..].to_vec();
        chords.extend_from_slice(&self.chords[..k]);
        ChordCurve { chords }
    }

    /// Every endpoint of every chord.
    pub fn points(&self) -> impl Iterator<Item = &BoundaryPoint> {
        self.chords.iter().flat_map(|c| [&c.from, &c.to])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    EmptyCurve,
    EndpointNotInterior { chord: usize },
    ChordOnOneSide { chord: usize },
    NotClosed { chord: usize },
    RepeatedBoundaryPoint { chords: Vec<usize> },
    SelfCrossing { first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyCurve => write!(f, "empty curve"),
            Violation::EndpointNotInterior { chord } => {
                write!(f, "endpoint not interior to a side (chord {chord})")
            }
            Violation::ChordOnOneSide { chord } => {
                write!(f, "chord endpoints on one side (chord {chord})")
            }
            Violation::NotClosed { chord } => {
                write!(f, "not closed after chord {chord}")
            }
            Violation::RepeatedBoundaryPoint { chords } => {
                write!(f, "repeated boundary point (chords {chords:?})")
            }
            Violation::SelfCrossing { first, second } => {
                write!(f, "self-crossing (chords {first} and {second})")
            }
        }
    }
}

/// Lists every violated curve invariant; an empty list means the curve is valid.
pub fn validate(c: &ChordCurve) -> Vec<Violation> {
    let mut out = Vec::new();
    let chords = c.chords();
    let n = chords.len();
    if n == 0 {
        out.push(Violation::EmptyCurve);
        return out;
    }
    let mut well_formed = true;
    for (i, ch) in chords.iter().enumerate() {
        if !ch.from.is_well_formed() || !ch.to.is_well_formed() {
            out.push(Violation::EndpointNotInterior { chord: i });
            well_formed = false;
        } else if ch.from.side == ch.to.side {
            out.push(Violation::ChordOnOneSide { chord: i });
        }
    }
    if !well_formed {
        return out;
    }
    for i in 0..n {
        if chords[i].to.glue() != chords[(i + 1) % n].from {
            out.push(Violation::NotClosed { chord: i });
        }
    }

    // Each junction legitimately contributes the same surface point twice.
    let mut groups: HashMap<(u8, Rat), Vec<(usize, bool)>> = HashMap::new();
    for (i, ch) in chords.iter().enumerate() {
        groups
            .entry(ch.from.class_position())
            .or_default()
            .push((i, false));
        groups
            .entry(ch.to.class_position())
            .or_default()
            .push((i, true));
    }
    let mut repeats: Vec<Vec<usize>> = groups
        .into_values()
        .filter(|g| {
            if g.len() == 1 {
                return false;
            }
            if g.len() == 2 {
                let (a, b) = (g[0], g[1]);
                let junction =
                    |x: (usize, bool), y: (usize, bool)| x.1 && !y.1 && (x.0 + 1) % n == y.0;
                if junction(a, b) || junction(b, a) {
                    return false;
                }
            }
            true
        })
        .map(|g| {
            let mut idx: Vec<usize> = g.into_iter().map(|x| x.0).collect();
            idx.sort();
            idx.dedup();
            idx
        })
        .collect();
    repeats.sort();
    for chords in repeats {
        out.push(Violation::RepeatedBoundaryPoint { chords });
    }

    for i in 0..n {
        for j in i + 1..n {
            if interleaves(&chords[i], &chords[j]) && intersect(&chords[i], &chords[j]).is_some() {
                out.push(Violation::SelfCrossing {
                    first: i,
                    second: j,
                });
            }
        }
    }
    out
}

/// A crossing between chord `i` of one curve and chord `j` of another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveCrossing {
    pub i: usize,
    pub j: usize,
    pub at: ChordCrossing,
}

fn shared_point(c1: &ChordCurve, c2: &ChordCurve) -> Option<BoundaryPoint> {
    let mut seen = std::collections::HashSet::new();
    for p in c1.points() {
        seen.insert(p.class_position());
    }
    c2.points()
        .find(|p| seen.contains(&p.class_position()))
        .cloned()
}

/// All transverse crossings between the two curves' chords.
pub fn crossing_points(c1: &ChordCurve, c2: &ChordCurve) -> Result<Vec<CurveCrossing>> {
    if let Some(p) = shared_point(c1, c2) {
        return Err(Error::NonTransverse(p.to_string()));
    }
    let mut out = Vec::new();
    for (i, a) in c1.chords().iter().enumerate() {
        for (j, b) in c2.chords().iter().enumerate() {
            if !interleaves(a, b) {
                continue;
            }
            if let Some(at) = intersect(a, b) {
                out.push(CurveCrossing { i, j, at });
            }
        }
    }
    Ok(out)
}

/// Number of interior crossings of the given representatives.
pub fn crossings(c1: &ChordCurve, c2: &ChordCurve) -> Result<usize> {
    Ok(crossing_points(c1, c2)?.len())
}

/// Whether the representatives are disjoint: no crossings and no shared points.
pub fn disjoint(c1: &ChordCurve, c2: &ChordCurve) -> bool {
    matches!(crossings(c1, c2), Ok(0))
}
