use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::curve::{
    crossing_points, interleaves, intersect_endpoints, validate, Chord, ChordCurve,
};
use super::octagon::{rat, BoundaryPoint, OctagonModel, Point, Rat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Least distance between distinct parameters (including the corners 0 and 1)
/// on any side, over all points of the given curves.
pub fn min_gap(curves: &[&ChordCurve]) -> Rat {
    let mut per_side: BTreeMap<u8, BTreeSet<Rat>> = BTreeMap::new();
    for c in curves {
        for p in c.points() {
            for q in [p.clone(), p.glue()] {
                per_side.entry(q.side).or_default().insert(q.t);
            }
        }
    }
    let mut gap = Rat::one();
    for ts in per_side.values() {
        let mut prev = Rat::zero();
        for t in ts.iter().chain(std::iter::once(&Rat::one())) {
            let d = t - &prev;
            if d < gap {
                gap = d;
            }
            prev = t.clone();
        }
    }
    gap
}

/// Parallel copy displaced by `offset` to the given side of the curve's direction.
/// Requires `2 * offset` to be smaller than [`min_gap`] of the curve.
pub fn push_off_by(c: &ChordCurve, side: Side, offset: &Rat) -> Result<ChordCurve> {
    if !offset.is_positive() || offset * rat(2, 1) >= min_gap(&[c]) {
        return Err(Error::precondition(
            "push-off offset too large for the curve",
        ));
    }
    let (d_from, d_to) = match side {
        Side::Left => (-offset.clone(), offset.clone()),
        Side::Right => (offset.clone(), -offset.clone()),
    };
    let chords = c
        .chords()
        .iter()
        .map(|ch| Chord::new(ch.from.shifted(&d_from), ch.to.shifted(&d_to)))
        .collect();
    Ok(ChordCurve::from_chords_unchecked(chords))
}

/// A disjoint parallel copy of `c`.
pub fn push_off(c: &ChordCurve, side: Side) -> ChordCurve {
    let eps = min_gap(&[c]) / rat(4, 1);
    push_off_by(c, side, &eps).expect("offset below gap")
}

/// A component produced by [`resolve`], with the indices of the input curves
/// whose boundary points it passes through.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolved {
    pub curve: ChordCurve,
    pub origins: BTreeSet<usize>,
}

/// How a crossing of chords `u` and `v` is smoothed. Writing `u-`, `u+` for the
/// half-edges before and after the crossing, `Oriented` joins `u-` to `v+` and
/// `v-` to `u+`; `Reversed` joins `u-` to `v-` and `u+` to `v+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothing {
    Oriented,
    Reversed,
}

/// Oriented smoothing of every crossing among the given curves. Components
/// that never reach the octagon boundary are contractible and dropped.
pub fn resolve(curves: &[ChordCurve]) -> Result<Vec<Resolved>> {
    smooth(curves, |_, _, _| Smoothing::Oriented)
}

/// Smooths every crossing among the given curves. `rule(a, b, sign)` picks the
/// smoothing where a chord of curve `a` meets a later chord of curve `b > a`
/// with the given crossing sign. Components may run against the inputs' directions.
pub fn smooth(
    curves: &[ChordCurve],
    rule: impl Fn(usize, usize, i8) -> Smoothing,
) -> Result<Vec<Resolved>> {
    let mut chords: Vec<(usize, &Chord, (Point, Point))> = Vec::new();
    for (k, c) in curves.iter().enumerate() {
        for ch in c.chords() {
            chords.push((k, ch, ch.endpoints()));
        }
    }
    for a in 0..curves.len() {
        for b in a + 1..curves.len() {
            crossing_points(&curves[a], &curves[b])?;
        }
    }

    // Crossings as (u, lambda, v, mu, smoothing); per chord, (param, crossing) sorted.
    let mut xs: Vec<(usize, Rat, usize, Rat, Smoothing)> = Vec::new();
    let mut along: Vec<Vec<(Rat, usize)>> = vec![Vec::new(); chords.len()];
    for u in 0..chords.len() {
        for v in u + 1..chords.len() {
            if chords[u].0 == chords[v].0 {
                continue;
            }
            if !interleaves(chords[u].1, chords[v].1) {
                continue;
            }
            if let Some(x) = intersect_endpoints(&chords[u].2, &chords[v].2) {
                let s = rule(chords[u].0, chords[v].0, x.sign);
                along[u].push((x.lambda.clone(), xs.len()));
                along[v].push((x.mu.clone(), xs.len()));
                xs.push((u, x.lambda, v, x.mu, s));
            }
        }
    }
    for a in &mut along {
        a.sort_by(|x, y| x.0.cmp(&y.0));
    }

    // Nodes are chord ends: (chord, is_to).
    let point = |(c, is_to): (usize, bool)| -> BoundaryPoint {
        if is_to {
            chords[c].1.to.clone()
        } else {
            chords[c].1.from.clone()
        }
    };
    let limit = 2 * xs.len() + 2;
    let mut used: BTreeSet<(usize, bool)> = BTreeSet::new();
    let mut walks: Vec<(Chord, BTreeSet<usize>)> = Vec::new();
    for c0 in 0..chords.len() {
        for is_to in [false, true] {
            let start = (c0, is_to);
            if used.contains(&start) {
                continue;
            }
            let (mut c, mut forward) = (c0, !is_to);
            let mut param = if is_to { Rat::one() } else { Rat::zero() };
            let mut steps = 0usize;
            let end = loop {
                let next = if forward {
                    along[c].iter().find(|x| x.0 > param)
                } else {
                    along[c].iter().rev().find(|x| x.0 < param)
                };
                let Some(&(_, xi)) = next else {
                    break (c, forward);
                };
                let (u, ref lu, v, ref lv, s) = xs[xi];
                let (o, po) = if c == u { (v, lv) } else { (u, lu) };
                forward = match s {
                    Smoothing::Oriented => forward,
                    Smoothing::Reversed => !forward,
                };
                c = o;
                param = po.clone();
                steps += 1;
                if steps > limit {
                    return Err(Error::InvalidCurve("smoothing did not terminate".into()));
                }
            };
            if !used.insert(start) || !used.insert(end) {
                return Err(Error::InvalidCurve("smoothing reused a chord end".into()));
            }
            walks.push((
                Chord::new(point(start), point(end)),
                BTreeSet::from([chords[start.0].0, chords[end.0].0]),
            ));
        }
    }

    let mut ends: HashMap<BoundaryPoint, (usize, bool)> = HashMap::new();
    for (i, w) in walks.iter().enumerate() {
        ends.insert(w.0.from.clone(), (i, true));
        ends.insert(w.0.to.clone(), (i, false));
    }
    let mut done = vec![false; walks.len()];
    let mut out: Vec<(Vec<Chord>, BTreeSet<usize>)> = Vec::new();
    for first in 0..walks.len() {
        if done[first] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut origins = BTreeSet::new();
        let (mut i, mut fwd) = (first, true);
        loop {
            if done[i] {
                if i != first || !fwd {
                    return Err(Error::InvalidCurve("smoothed arcs do not close up".into()));
                }
                break;
            }
            done[i] = true;
            let ch = if fwd {
                walks[i].0.clone()
            } else {
                walks[i].0.reversed()
            };
            origins.extend(walks[i].1.iter().copied());
            let (j, starts) = *ends
                .get(&ch.to.glue())
                .ok_or_else(|| Error::InvalidCurve("smoothing left an open arc".into()))?;
            cyc.push(ch);
            i = j;
            fwd = starts;
        }
        out.push((cyc, origins));
    }
    let out = straighten(out)?;
    let mut resolved = Vec::new();
    for (cyc, origins) in out {
        let curve = ChordCurve::from_chords_unchecked(cyc);
        if let Some(v) = validate(&curve).first() {
            return Err(Error::InvalidCurve(format!(
                "smoothing produced a bad curve: {v}"
            )));
        }
        resolved.push(Resolved { curve, origins });
    }
    Ok(resolved)
}

/// Removes chords with both ends on one side by sliding them across that side,
/// innermost first. Components made only of such chords are contractible and dropped.
fn straighten(
    mut comps: Vec<(Vec<Chord>, BTreeSet<usize>)>,
) -> Result<Vec<(Vec<Chord>, BTreeSet<usize>)>> {
    loop {
        let mut best: Option<(usize, usize, Rat)> = None;
        for (ci, (cyc, _)) in comps.iter().enumerate() {
            for (k, ch) in cyc.iter().enumerate() {
                if ch.from.side == ch.to.side {
                    let width = (&ch.from.t - &ch.to.t).abs();
                    if best.as_ref().is_none_or(|b| width < b.2) {
                        best = Some((ci, k, width));
                    }
                }
            }
        }
        let Some((ci, k, _)) = best else {
            return Ok(comps);
        };
        let (side, lo, hi) = {
            let ch = &comps[ci].0[k];
            let (a, b) = (ch.from.t.clone(), ch.to.t.clone());
            (ch.from.side, a.clone().min(b.clone()), a.max(b))
        };
        let inside = comps.iter().flat_map(|(c, _)| c.iter()).any(|ch| {
            [&ch.from, &ch.to]
                .iter()
                .any(|p| p.side == side && p.t > lo && p.t < hi)
        });
        if inside {
            return Err(Error::InvalidCurve("nested returning chords".into()));
        }
        let cyc = &mut comps[ci].0;
        let n = cyc.len();
        if n <= 2 {
            comps.remove(ci);
            continue;
        }
        let prev = (k + n - 1) % n;
        let next = (k + 1) % n;
        let merged = Chord::new(cyc[prev].from.clone(), cyc[next].to.clone());
        let mut rebuilt = Vec::with_capacity(n - 2);
        for (i, ch) in cyc.iter().enumerate() {
            if i == prev {
                rebuilt.push(merged.clone());
            } else if i != k && i != next {
                rebuilt.push(ch.clone());
            }
        }
        *cyc = rebuilt;
    }
}

/// Boundary components of a regular neighbourhood of the union of the curves.
pub fn neighbourhood_boundary(curves: &[&ChordCurve]) -> Result<Vec<ChordCurve>> {
    neighbourhood_boundary_avoiding(curves, &[])
}

/// [`neighbourhood_boundary`] drawn close enough to share no point with `avoid`.
pub fn neighbourhood_boundary_avoiding(
    curves: &[&ChordCurve],
    avoid: &[&ChordCurve],
) -> Result<Vec<ChordCurve>> {
    let mut refs = curves.to_vec();
    refs.extend_from_slice(avoid);
    let eps = min_gap(&refs) / rat(4, 1);
    let mut pieces = Vec::with_capacity(2 * curves.len());
    for c in curves {
        pieces.push(push_off_by(c, Side::Left, &eps)?);
        pieces.push(push_off_by(c, Side::Right, &eps)?.reversed());
    }
    Ok(resolve(&pieces)?.into_iter().map(|r| r.curve).collect())
}

/// Boundary of a regular neighbourhood of `lambda ∪ gamma`, for curves meeting once:
/// the band sum of two parallel copies of `gamma` along `lambda`.
pub fn band_sum(gamma: &ChordCurve, lambda: &ChordCurve) -> Result<ChordCurve> {
    band_sum_avoiding(gamma, lambda, &[])
}

/// [`band_sum`] drawn close enough to share no point with `avoid`.
pub fn band_sum_avoiding(
    gamma: &ChordCurve,
    lambda: &ChordCurve,
    avoid: &[&ChordCurve],
) -> Result<ChordCurve> {
    let n = crossing_points(lambda, gamma)?.len();
    if n != 1 {
        return Err(Error::precondition(format!(
            "band sum needs curves crossing once, found {n}"
        )));
    }
    let mut comps = neighbourhood_boundary_avoiding(&[lambda, gamma], avoid)?;
    if comps.len() != 1 {
        return Err(Error::InvalidCurve(format!(
            "band sum produced {} components",
            comps.len()
        )));
    }
    Ok(comps.remove(0))
}

/// Applies the `k`-th power of the Dehn twist along `gamma` to every curve of a
/// pairwise disjoint family, keeping the representatives mutually consistent.
/// Curves keep their directions.
pub fn twist(family: &[ChordCurve], gamma: &ChordCurve, k: i64) -> Result<Vec<ChordCurve>> {
    twist_avoiding(family, gamma, k, &[])
}

/// [`twist`], additionally keeping the new parallel copies of `gamma` clear of
/// every boundary point of the `avoid` curves, so crossings with them never increase.
pub fn twist_avoiding(
    family: &[ChordCurve],
    gamma: &ChordCurve,
    k: i64,
    avoid: &[&ChordCurve],
) -> Result<Vec<ChordCurve>> {
    if k == 0 {
        return Ok(family.to_vec());
    }
    for a in 0..family.len() {
        for b in a + 1..family.len() {
            if !crossing_points(&family[a], &family[b])?.is_empty() {
                return Err(Error::NotDisjoint(
                    format!("curve {a}"),
                    format!("curve {b}"),
                ));
            }
        }
    }
    let want: i8 = if k > 0 { 1 } else { -1 };
    let mut touched = Vec::new();
    let mut total = 0usize;
    for (idx, c) in family.iter().enumerate() {
        let n = crossing_points(c, gamma)?.len();
        if n > 0 {
            total += n;
            touched.push(idx);
        }
    }
    if total == 0 {
        return Ok(family.to_vec());
    }
    let copies = k.unsigned_abs() as usize * total;
    let mut refs: Vec<&ChordCurve> = family.iter().collect();
    refs.push(gamma);
    refs.extend_from_slice(avoid);
    let eps = min_gap(&refs) / Rat::from_integer((2 * (copies + 1)).into());
    let mut pieces: Vec<ChordCurve> = touched.iter().map(|&i| family[i].clone()).collect();
    let members = pieces.len();
    for i in 1..=copies {
        let off = &eps * Rat::from_integer(i.into());
        pieces.push(push_off_by(gamma, Side::Left, &off)?);
    }
    let comps = smooth(&pieces, |a, b, sign| {
        if a < members && b >= members && sign != want {
            Smoothing::Reversed
        } else {
            Smoothing::Oriented
        }
    })?;
    let mut result: Vec<Option<ChordCurve>> = vec![None; members];
    for comp in comps {
        let own: Vec<usize> = comp
            .origins
            .iter()
            .copied()
            .filter(|&o| o < members)
            .collect();
        if own.len() != 1 {
            return Err(Error::InvalidCurve(format!(
                "twist component meets {} family curves",
                own.len()
            )));
        }
        let m = own[0];
        if result[m].is_some() {
            return Err(Error::InvalidCurve("twist split a curve".into()));
        }
        // The member's own chords are traversed forwards in its image.
        let starts: std::collections::HashSet<&BoundaryPoint> =
            pieces[m].chords().iter().map(|c| &c.from).collect();
        let forwards = comp
            .curve
            .chords()
            .iter()
            .any(|ch| starts.contains(&ch.from));
        result[m] = Some(if forwards {
            comp.curve
        } else {
            comp.curve.reversed()
        });
    }
    let mut out = family.to_vec();
    for (m, idx) in touched.into_iter().enumerate() {
        out[idx] = result[m]
            .take()
            .ok_or_else(|| Error::InvalidCurve("twist lost a curve".into()))?;
    }
    Ok(out)
}

/// A sequence of twist powers applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwistProgram {
    steps: Vec<(ChordCurve, i64)>,
}

impl TwistProgram {
    pub fn new() -> Self {
        TwistProgram::default()
    }

    pub fn push(&mut self, curve: ChordCurve, k: i64) {
        if k != 0 {
            self.steps.push((curve, k));
        }
    }

    pub fn then(mut self, other: &TwistProgram) -> Self {
        self.steps.extend(other.steps.iter().cloned());
        self
    }

    pub fn inverse(&self) -> Self {
        TwistProgram {
            steps: self
                .steps
                .iter()
                .rev()
                .map(|(c, k)| (c.clone(), -k))
                .collect(),
        }
    }

    pub fn steps(&self) -> &[(ChordCurve, i64)] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn apply(&self, family: &[ChordCurve], avoid: &[&ChordCurve]) -> Result<Vec<ChordCurve>> {
        let mut cur = family.to_vec();
        for (c, k) in &self.steps {
            cur = twist_avoiding(&cur, c, *k, avoid)?;
        }
        Ok(cur)
    }

    /// Applies the program to several families that may cross each other. Each
    /// step twists the families in turn, each keeping clear of the others.
    pub fn apply_groups(
        &self,
        groups: &[Vec<ChordCurve>],
        avoid: &[&ChordCurve],
    ) -> Result<Vec<Vec<ChordCurve>>> {
        let mut cur = groups.to_vec();
        for (c, k) in &self.steps {
            for g in 0..cur.len() {
                let next = {
                    let mut obstacles: Vec<&ChordCurve> = avoid.to_vec();
                    for (h, other) in cur.iter().enumerate() {
                        if h != g {
                            obstacles.extend(other.iter());
                        }
                    }
                    twist_avoiding(&cur[g], c, *k, &obstacles)?
                };
                cur[g] = next;
            }
        }
        Ok(cur)
    }
}

/// Re-spaces all boundary parameters evenly, jointly over the given curves,
/// preserving the cyclic order of points on every side.
pub fn compact(curves: &[ChordCurve]) -> Vec<ChordCurve> {
    let mut classes: BTreeMap<u8, BTreeSet<Rat>> = BTreeMap::new();
    for c in curves {
        for p in c.points() {
            let (class, pos) = p.class_position();
            classes.entry(class).or_default().insert(pos);
        }
    }
    let mut remap: HashMap<(u8, Rat), Rat> = HashMap::new();
    for (class, ps) in &classes {
        let n = ps.len() as i64;
        for (i, p) in ps.iter().enumerate() {
            remap.insert((*class, p.clone()), rat(i as i64 + 1, n + 1));
        }
    }
    let moved = |p: &BoundaryPoint| {
        let key = p.class_position();
        let pos = remap[&key].clone();
        let t = if OctagonModel::pair_class(p.side) == p.side {
            pos
        } else {
            Rat::one() - pos
        };
        BoundaryPoint { side: p.side, t }
    };
    curves
        .iter()
        .map(|c| {
            ChordCurve::from_chords_unchecked(
                c.chords()
                    .iter()
                    .map(|ch| Chord::new(moved(&ch.from), moved(&ch.to)))
                    .collect(),
            )
        })
        .collect()
}
