//! Named curves on the octagon model.
//!
//! Handlebody `A` uses the meridian system `{b, d}` ([`crate::surface::MeridianSystem::standard`]).
//! `H` is a genus-2 handlebody built from two 0-handles joined by three 1-handles,
//! with a rotation of order three permuting the 1-handles. The curves
//! `λ1, λ2, λ3` are the three images of one boundary curve under that rotation:
//! each runs once over two of the three 1-handles, and any two of them meet
//! the meridians of the two 1-handles crossed by the third exactly once each.
//!
//! In the octagon, `λ1` meets the meridian `d` once and misses `b`, `λ2` meets
//! `b` once and misses `d`, and `λ3` meets each once. So `λ1 = y`, `λ2 = x⁻¹`
//! and `λ3 = yx`. Any two of these words form a free basis, and the order-three
//! automorphism `x ↦ x⁻¹y⁻¹, y ↦ x` permutes the three classes up to
//! inversion, matching the rotation.
//!
//! Removing a neighbourhood of the arc where the rotation axis meets one
//! 0-handle adds a third generator `z` linking that arc. Only `λ3` runs around
//! it, giving the rank-3 words `y, x⁻¹, xyz` up to conjugacy, which reduce to
//! the rank-2 words when `z ↦ 1`.

use super::curve::{Chord, ChordCurve};
use super::octagon::BoundaryPoint;
use crate::freegroup::Word;

type End = (u8, i64, i64);

fn curve(chords: &[(End, End)]) -> ChordCurve {
    let chords = chords
        .iter()
        .map(|&((s0, p0, q0), (s1, p1, q1))| {
            Chord::new(BoundaryPoint::at(s0, p0, q0), BoundaryPoint::at(s1, p1, q1))
        })
        .collect();
    ChordCurve::new(chords).expect("fixture curves are valid")
}

/// One chord through the `b` identification, from side 1 to side 3.
pub fn b_crossing() -> ChordCurve {
    curve(&[((1, 1, 2), (3, 1, 2))])
}

/// One chord through the `d` identification, from side 5 to side 7.
pub fn d_crossing() -> ChordCurve {
    curve(&[((5, 1, 2), (7, 1, 2))])
}

pub fn lambda1() -> ChordCurve {
    curve(&[((5, 1, 2), (7, 1, 2))])
}

pub fn lambda2() -> ChordCurve {
    curve(&[((3, 1, 2), (1, 1, 2))])
}

pub fn lambda3() -> ChordCurve {
    curve(&[((1, 1, 4), (7, 3, 4)), ((5, 1, 4), (3, 3, 4))])
}

/// Parallel to side 1: bounds the `b` meridian disk of `A`.
pub fn meridian_b() -> ChordCurve {
    curve(&[((2, 1, 16), (0, 15, 16))])
}

/// Parallel to side 5: bounds the `d` meridian disk of `A`.
pub fn meridian_d() -> ChordCurve {
    curve(&[((6, 1, 2), (4, 1, 2))])
}

/// Word `x` in `A`; meets `λ1` once and is disjoint from `λ2`.
pub fn x_dual() -> ChordCurve {
    curve(&[((1, 3, 16), (6, 13, 16)), ((4, 3, 16), (3, 13, 16))])
}

/// Word `y` in `A`; meets `λ2` once and is disjoint from `λ1`.
pub fn y_dual() -> ChordCurve {
    curve(&[((5, 3, 8), (2, 1, 8)), ((0, 7, 8), (7, 5, 8))])
}

/// Separates the surface into two one-holed tori, one holding the `a`, `b`
/// identifications and the other `c`, `d`. Its words are trivial for both
/// side-pair systems, yet it bounds no disk on the surface.
pub fn separating() -> ChordCurve {
    curve(&[
        ((3, 5, 6), (0, 1, 6)),
        ((2, 5, 6), (3, 1, 6)),
        ((1, 5, 6), (2, 1, 6)),
        ((0, 5, 6), (1, 1, 6)),
    ])
}

/// A small circle around the single vertex class, cutting all eight corners.
pub fn vertex_loop() -> ChordCurve {
    curve(&[
        ((7, 9, 10), (0, 1, 10)),
        ((2, 9, 10), (3, 1, 10)),
        ((1, 9, 10), (2, 1, 10)),
        ((0, 9, 10), (1, 1, 10)),
        ((3, 9, 10), (4, 1, 10)),
        ((6, 9, 10), (7, 1, 10)),
        ((5, 9, 10), (6, 1, 10)),
        ((4, 9, 10), (5, 1, 10)),
    ])
}

/// Rank-2 words of `λ1, λ2, λ3` in `A`.
pub fn lambda_words() -> [Word; 3] {
    ["b", "A", "ba"].map(|s| Word::parse(s, 2).expect("fixture word"))
}

/// Words of `λ1, λ2, λ3` in the genus-3 handlebody obtained by drilling the axis arc.
pub fn lambda_words_rank3() -> [Word; 3] {
    ["b", "A", "abc"].map(|s| Word::parse(s, 3).expect("fixture word"))
}

/// Generator images of the order-three automorphism permuting the `λ` classes.
pub fn rotation_images() -> [Word; 2] {
    ["AB", "a"].map(|s| Word::parse(s, 2).expect("fixture word"))
}
