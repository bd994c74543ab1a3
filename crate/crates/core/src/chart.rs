//! Product coordinates on handlebody `A` (meridians `b`, `d`).
//!
//! `A` is viewed as `F × I` for a one-holed torus `F`. The bottom end
//! `F × {0}` is a neighbourhood of `λ1 ∪ x_dual` and the top end `F × {1}`
//! a neighbourhood of `λ2 ∪ y_dual`. On both ends the basis curves read `x`
//! and `y` in `A`, so a curve of slope `p/q` on either end has the word with
//! `|p|` letters `x^±1` and `q` letters `y`.
//!
//! Slope curves are produced from the `y` basis curve by Dehn twists along the
//! basis curves of one end. Twisting both ends by the same move is the
//! restriction of a homeomorphism of `F × I`, so it carries disks of `A` to disks.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::Slope;
use crate::freegroup::Word;
use crate::surface::{
    band_sum_avoiding, fixtures, min_gap, neighbourhood_boundary_avoiding, push_off_by, rat,
    word_along, ChordCurve, MeridianSystem, Side, TwistProgram,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Bottom,
    Top,
}

impl End {
    pub const BOTH: [End; 2] = [End::Bottom, End::Top];
}

/// Basis curves `(x, y)` of an end, both oriented to read `x` and `y`.
pub fn basis(end: End) -> (ChordCurve, ChordCurve) {
    match end {
        End::Bottom => (fixtures::x_dual(), fixtures::lambda1()),
        End::Top => (fixtures::lambda2().reversed(), fixtures::y_dual()),
    }
}

/// A meridian of `A` meeting the end's `y` basis curve once.
pub fn y_dual_disk(_end: End) -> ChordCurve {
    fixtures::meridian_d()
}

/// Boundary of the end, a separating curve.
pub fn end_boundary(end: End) -> ChordCurve {
    let (x, y) = basis(end);
    let lm = landmarks();
    let refs: Vec<&ChordCurve> = lm.iter().collect();
    band_sum_avoiding(&x, &y, &refs).expect("basis curves meet once")
}

/// Meridian of `A` disjoint from `λ3` and meeting each of `λ1`, `λ2` once:
/// the meridian of the third 1-handle.
pub fn third_meridian() -> ChordCurve {
    static CELL: OnceLock<ChordCurve> = OnceLock::new();
    CELL.get_or_init(|| {
        let (mb, l3, md) = (
            fixtures::meridian_b(),
            fixtures::lambda3(),
            fixtures::meridian_d(),
        );
        let lm = landmarks();
        let refs: Vec<&ChordCurve> = lm.iter().collect();
        let comps = neighbourhood_boundary_avoiding(&[&mb, &l3, &md], &refs)
            .expect("fixture curves are transverse");
        comps
            .into_iter()
            .next()
            .expect("the neighbourhood has boundary")
    })
    .clone()
}

/// Curves every chart construction keeps clear of.
pub fn landmarks() -> Vec<ChordCurve> {
    vec![
        fixtures::lambda1(),
        fixtures::lambda2(),
        fixtures::lambda3(),
        fixtures::x_dual(),
        fixtures::y_dual(),
        fixtures::meridian_b(),
        fixtures::meridian_d(),
    ]
}

/// The primitive word of a slope: `|p|` letters `x^±1` and `q` letters `y`,
/// spread as evenly as possible (the lower Christoffel word).
pub fn christoffel(s: Slope) -> Word {
    let (p, q) = (s.p(), s.q());
    let n = p.abs() + q;
    let x: i8 = if p < 0 { -1 } else { 1 };
    let mut letters = Vec::with_capacity(n as usize);
    for i in 1..=n {
        if (i * q).div_euclid(n) > ((i - 1) * q).div_euclid(n) {
            letters.push(2);
        } else {
            letters.push(x);
        }
    }
    Word::reduce(&letters, 2).expect("letters within rank 2")
}

/// A shear of end homology: `X(j)` sends `(p, q)` to `(p + jq, q)` and `Y(j)`
/// sends `(p, q)` to `(p, q + jp)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    X(i64),
    Y(i64),
}

/// Shears carrying `(0, ±1)` to `±(p, q)`, in application order, and whether
/// the starting `y` curve is reversed.
pub fn slope_moves(s: Slope) -> (bool, Vec<Move>) {
    let (mut p, mut q) = (s.p(), s.q());
    let mut found = Vec::new();
    while p != 0 {
        if q == 0 {
            // (p, 0) = Y(p) applied to (p, -1)
            found.push(Move::Y(p));
            q = -1;
        } else if p.abs() >= q.abs() {
            let j = p / q;
            found.push(Move::X(j));
            p -= j * q;
        } else {
            let j = q / p;
            found.push(Move::Y(j));
            q -= j * p;
        }
    }
    found.reverse();
    (q < 0, found)
}

fn signs(end: End) -> (i64, i64) {
    static CELL: OnceLock<[(i64, i64); 2]> = OnceLock::new();
    let all = CELL.get_or_init(|| {
        End::BOTH.map(|e| {
            let (x, y) = basis(e);
            let std = MeridianSystem::standard();
            let ab = |c: &ChordCurve| word_along(c, &std).expect("valid").abelianization();
            let ty =
                crate::surface::twist(std::slice::from_ref(&y), &x, 1).expect("twist")[0].clone();
            let tx =
                crate::surface::twist(std::slice::from_ref(&x), &y, 1).expect("twist")[0].clone();
            (ab(&ty)[0], ab(&tx)[1])
        })
    });
    all[end as usize]
}

/// One twist power along a named chart curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistStep {
    pub curve: String,
    pub power: i64,
}

/// Chart curves by name: `x0`, `y0`, `x1`, `y1` (end bases), `lambda3`,
/// `bottom-boundary` and `top-boundary`.
pub fn named_curve(name: &str) -> Result<ChordCurve> {
    Ok(match name {
        "x0" => basis(End::Bottom).0,
        "y0" => basis(End::Bottom).1,
        "x1" => basis(End::Top).0,
        "y1" => basis(End::Top).1,
        "lambda3" => fixtures::lambda3(),
        "bottom-boundary" => end_boundary(End::Bottom),
        "top-boundary" => end_boundary(End::Top),
        _ => return Err(Error::malformed(format!("unknown chart curve {name:?}"))),
    })
}

pub fn realize(steps: &[TwistStep]) -> Result<TwistProgram> {
    let mut prog = TwistProgram::new();
    for s in steps {
        prog.push(named_curve(&s.curve)?, s.power);
    }
    Ok(prog)
}

pub fn invert(steps: &[TwistStep]) -> Vec<TwistStep> {
    steps
        .iter()
        .rev()
        .map(|s| TwistStep {
            curve: s.curve.clone(),
            power: -s.power,
        })
        .collect()
}

/// Twist steps realising the shears on the given ends simultaneously.
pub fn program(moves: &[Move], ends: &[End]) -> Vec<TwistStep> {
    let mut out = Vec::new();
    for m in moves {
        for &e in ends {
            let (sx, sy) = signs(e);
            let i = match e {
                End::Bottom => 0,
                End::Top => 1,
            };
            let (name, power) = match *m {
                Move::X(j) => (format!("x{i}"), j * sx),
                Move::Y(j) => (format!("y{i}"), j * sy),
            };
            if power != 0 {
                out.push(TwistStep { curve: name, power });
            }
        }
    }
    out
}

/// Steps on one end carrying the `y` basis curve to a curve of slope `s`.
pub fn slope_program(end: End, s: Slope) -> Vec<TwistStep> {
    program(&slope_moves(s).1, &[end])
}

/// Steps on one end carrying slope `from` to slope `to`.
pub fn change_of_slope(end: End, from: Slope, to: Slope) -> Vec<TwistStep> {
    let mut steps = invert(&slope_program(end, from));
    steps.extend(slope_program(end, to));
    steps
}

/// Applies named steps to a family, keeping clear of the landmarks and `avoid`.
pub fn apply_steps(
    steps: &[TwistStep],
    family: &[ChordCurve],
    avoid: &[&ChordCurve],
) -> Result<Vec<ChordCurve>> {
    let lm = landmarks();
    let mut all: Vec<&ChordCurve> = lm.iter().collect();
    all.extend_from_slice(avoid);
    realize(steps)?.apply(family, &all)
}

/// Applies named steps to families that may cross each other.
pub fn apply_steps_groups(
    steps: &[TwistStep],
    groups: &[Vec<ChordCurve>],
    avoid: &[&ChordCurve],
) -> Result<Vec<Vec<ChordCurve>>> {
    let lm = landmarks();
    let mut all: Vec<&ChordCurve> = lm.iter().collect();
    all.extend_from_slice(avoid);
    realize(steps)?.apply_groups(groups, &all)
}

/// Parallel copy of `c`, to its left, clear of every landmark point.
pub fn parallel_copy(c: &ChordCurve) -> ChordCurve {
    parallel_copy_avoiding(c, &[])
}

/// Parallel copy of `c`, to its left, clear of the landmarks and `avoid`.
pub fn parallel_copy_avoiding(c: &ChordCurve, avoid: &[&ChordCurve]) -> ChordCurve {
    let lm = landmarks();
    let mut refs: Vec<&ChordCurve> = lm.iter().collect();
    refs.extend_from_slice(avoid);
    refs.push(c);
    let eps = min_gap(&refs) / rat(4, 1);
    push_off_by(c, Side::Left, &eps).expect("offset below gap")
}

fn y_start(end: End, rev: bool, avoid: &[&ChordCurve]) -> ChordCurve {
    let y = parallel_copy_avoiding(&basis(end).1, avoid);
    if rev {
        y.reversed()
    } else {
        y
    }
}

/// A curve of slope `s` on the given end.
pub fn slope_curve(end: End, s: Slope) -> Result<ChordCurve> {
    let (rev, moves) = slope_moves(s);
    let start = y_start(end, rev, &[]);
    Ok(apply_steps(&program(&moves, &[end]), &[start], &[])?.remove(0))
}

/// A curve of slope `s` on the given end together with the boundary of a disk
/// of `A` disjoint from it, obtained by band-summing a dual meridian along it.
pub fn slope_curve_with_disk(
    end: End,
    s: Slope,
    avoid: &[&ChordCurve],
) -> Result<(ChordCurve, ChordCurve)> {
    let (rev, moves) = slope_moves(s);
    let start = y_start(end, rev, avoid);
    let lm = landmarks();
    let mut refs: Vec<&ChordCurve> = lm.iter().collect();
    refs.extend_from_slice(avoid);
    let disk = band_sum_avoiding(&y_dual_disk(end), &start, &refs)?;
    let mut out = apply_steps(&program(&moves, &End::BOTH), &[start, disk], avoid)?;
    let disk = out.pop().expect("two curves");
    Ok((out.pop().expect("two curves"), disk))
}
