//! Upper bounds on Hempel distance: chains of disjoint essential curves from a
//! disk of one side to a disk of the other, and disjoint-curve-property seams.

use serde::{Deserialize, Serialize};

use crate::chart::{self, End};
use crate::error::{Error, Result};
use crate::farey::Slope;
use crate::freegroup::cyclic_reduce;
use crate::splittings::{dehn_derive, derivation_pair, Family, Locus, SideName, SplittingSpec};
use crate::surface::{
    band_sum_avoiding, crossing_points, fixtures, is_trivial_in_surface_group, surface_word,
    validate, word_of, ChordCurve, MeridianSystem,
};

pub const CERT_SCHEMA: &str = "heegaard-cert/1";

fn default_schema() -> String {
    CERT_SCHEMA.into()
}

/// Curves `c0, ..., cn`: `c0` bounds a disk on side 1, `cn` on side 2, and
/// consecutive curves are disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceCertificate {
    #[serde(default = "default_schema")]
    pub schema: String,
    pub curves: Vec<ChordCurve>,
    pub side1_meridians: MeridianSystem,
    pub side2_meridians: MeridianSystem,
}

impl DistanceCertificate {
    pub fn new(curves: Vec<ChordCurve>, side1: MeridianSystem, side2: MeridianSystem) -> Self {
        DistanceCertificate {
            schema: CERT_SCHEMA.into(),
            curves,
            side1_meridians: side1,
            side2_meridians: side2,
        }
    }

    /// The same chain read from side 2 to side 1.
    pub fn reversed(&self) -> Self {
        DistanceCertificate {
            schema: self.schema.clone(),
            curves: self.curves.iter().rev().cloned().collect(),
            side1_meridians: self.side2_meridians.clone(),
            side2_meridians: self.side1_meridians.clone(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: DistanceCertificate = serde_json::from_str(s)?;
        if c.schema != CERT_SCHEMA {
            return Err(Error::Schema(format!(
                "expected schema {CERT_SCHEMA}, got {}",
                c.schema
            )));
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Verdict {
    Ok { n: usize },
    Failure { reason: String, index: usize },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Essentiality {
    Essential { reason: String },
    Inessential { reason: String },
}

impl Essentiality {
    pub fn is_essential(&self) -> bool {
        matches!(self, Essentiality::Essential { .. })
    }
}

/// Essential when the word is nontrivial on either side; otherwise decided
/// by the word problem in the surface group.
pub fn essentiality_check(
    c: &ChordCurve,
    side1: &MeridianSystem,
    side2: &MeridianSystem,
) -> Result<Essentiality> {
    if let Some(v) = validate(c).first() {
        return Err(Error::InvalidCurve(v.to_string()));
    }
    for (name, m) in [("side 1", side1), ("side 2", side2)] {
        let w = word_of(c, m)?;
        if !w.is_empty() {
            return Ok(Essentiality::Essential {
                reason: format!("word {w} on {name}"),
            });
        }
    }
    let w = surface_word(c)?;
    if is_trivial_in_surface_group(&w) {
        Ok(Essentiality::Inessential {
            reason: "null-homotopic on the surface".into(),
        })
    } else {
        Ok(Essentiality::Essential {
            reason: format!("surface word {} is nontrivial", cyclic_reduce(&w)),
        })
    }
}

fn disjoint_clause(c: &ChordCurve, d: &ChordCurve) -> Option<String> {
    match crossing_points(c, d) {
        Ok(x) if x.is_empty() => None,
        Ok(x) => Some(format!("{} crossings", x.len())),
        Err(Error::NonTransverse(p)) => Some(format!("shared boundary point {p}")),
        Err(e) => Some(e.to_string()),
    }
}

/// Checks the chain clause by clause in index order and names the first failure.
pub fn verify_certificate(cert: &DistanceCertificate) -> Result<Verdict> {
    let cs = &cert.curves;
    if cs.is_empty() {
        return Err(Error::malformed("certificate has no curves"));
    }
    for (i, c) in cs.iter().enumerate() {
        if let Some(v) = validate(c).first() {
            return Err(Error::InvalidCurve(format!("c{i}: {v}")));
        }
    }
    let fail = |index: usize, reason: String| Ok(Verdict::Failure { reason, index });
    let n = cs.len() - 1;
    for (i, c) in cs.iter().enumerate() {
        if i == 0 {
            let w = word_of(c, &cert.side1_meridians)?;
            if !w.is_empty() {
                return fail(0, "c0 does not bound".into());
            }
        }
        let e = essentiality_check(c, &cert.side1_meridians, &cert.side2_meridians)?;
        if !e.is_essential() {
            return fail(i, format!("c{i} is not shown essential"));
        }
        if i > 0 {
            if let Some(why) = disjoint_clause(&cs[i - 1], c) {
                return fail(i, format!("c{i} meets c{}: {why}", i - 1));
            }
        }
        if i == n {
            let w = word_of(c, &cert.side2_meridians)?;
            if !w.is_empty() {
                return fail(n, format!("c{n} does not bound"));
            }
        }
    }
    Ok(Verdict::Ok { n })
}

/// A seam disjoint from a disk on each side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DcpCertificate {
    #[serde(default = "default_schema")]
    pub schema: String,
    pub seam: ChordCurve,
    pub disk1: ChordCurve,
    pub disk2: ChordCurve,
    pub side1_meridians: MeridianSystem,
    pub side2_meridians: MeridianSystem,
}

impl DcpCertificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: DcpCertificate = serde_json::from_str(s)?;
        if c.schema != CERT_SCHEMA {
            return Err(Error::Schema(format!(
                "expected schema {CERT_SCHEMA}, got {}",
                c.schema
            )));
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum DcpVerdict {
    Ok,
    Failure { reason: String },
}

impl DcpVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, DcpVerdict::Ok)
    }
}

pub fn verify_dcp(cert: &DcpCertificate) -> Result<DcpVerdict> {
    for (name, c) in [
        ("seam", &cert.seam),
        ("disk1", &cert.disk1),
        ("disk2", &cert.disk2),
    ] {
        if let Some(v) = validate(c).first() {
            return Err(Error::InvalidCurve(format!("{name}: {v}")));
        }
    }
    let fail = |reason: String| Ok(DcpVerdict::Failure { reason });
    if !word_of(&cert.disk1, &cert.side1_meridians)?.is_empty() {
        return fail("disk1 does not bound on side 1".into());
    }
    if !word_of(&cert.disk2, &cert.side2_meridians)?.is_empty() {
        return fail("disk2 does not bound on side 2".into());
    }
    for (name, d) in [("disk1", &cert.disk1), ("disk2", &cert.disk2)] {
        if let Some(why) = disjoint_clause(&cert.seam, d) {
            return fail(format!("seam meets {name}: {why}"));
        }
    }
    let e = essentiality_check(&cert.seam, &cert.side1_meridians, &cert.side2_meridians)?;
    if !e.is_essential() {
        return fail("seam is not shown essential".into());
    }
    Ok(DcpVerdict::Ok)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DerivedChoice {
    First,
    Second,
}

fn slot_curve(spec: &SplittingSpec, label: &str) -> Result<ChordCurve> {
    spec.slot(label)
        .and_then(|s| s.curve.clone())
        .ok_or_else(|| Error::Unsupported(format!("slot {label} has no representative")))
}

fn end_slope(locus: &Locus) -> Result<(End, Slope)> {
    match locus {
        Locus::EndSlope { end, slope } => Ok((*end, *slope)),
        Locus::Fixture { name } => Err(Error::Unsupported(format!("{name} is not an end slope"))),
    }
}

fn meridian_curves(m: &MeridianSystem) -> Vec<ChordCurve> {
    match m {
        MeridianSystem::Curves { curves } => curves.clone(),
        MeridianSystem::SidePairs { .. } => Vec::new(),
    }
}

/// Side `B`'s meridians together with the images under the gluing of a
/// family on `A`, all carried by one run of the twists clear of `avoid`.
fn far_side(
    spec: &SplittingSpec,
    family: Vec<ChordCurve>,
    avoid: &[&ChordCurve],
) -> Result<(MeridianSystem, Vec<ChordCurve>)> {
    let mut groups = vec![vec![fixtures::meridian_b(), fixtures::meridian_d()], family];
    let realization = &spec.gluing.realization;
    let lm = chart::landmarks();
    let mut refs: Vec<&ChordCurve> = lm.iter().collect();
    refs.extend_from_slice(avoid);
    let mut out = chart::realize(realization)?.apply_groups(&groups, &refs)?;
    let images = out.pop().expect("family");
    let mut ms = out.pop().expect("meridians");
    groups.clear();
    let second = ms.pop().expect("two meridians");
    let first = ms.pop().expect("two meridians");
    Ok((MeridianSystem::curves(first, second)?, images))
}

/// Band sum of the third meridian of `A` along `lambda`: a disk of `A`
/// missing `lambda` and the pushed-in `λ3`.
fn third_disk(lambda: &ChordCurve, avoid: &[&ChordCurve]) -> Result<ChordCurve> {
    let lm = chart::landmarks();
    let mut refs: Vec<&ChordCurve> = lm.iter().collect();
    refs.extend_from_slice(avoid);
    band_sum_avoiding(&chart::third_meridian(), lambda, &refs)
}

/// Four curves `∂Da, λ, λ', ∂Db` bounding the distance of a Dehn-derived
/// splitting by three. `First` pushes the first identified curve into `A`.
/// The certificate carries its own representatives of `B`'s meridians.
pub fn build_distance3_certificate(
    spec: &SplittingSpec,
    choice: DerivedChoice,
) -> Result<DistanceCertificate> {
    let [l1, l2] = derivation_pair(spec)?;
    dehn_derive(spec)?;
    let (near, far, near_index, far_index) = match choice {
        DerivedChoice::First => (l1, l2, 0, 1),
        DerivedChoice::Second => (l2, l1, 1, 0),
    };
    let ident = &spec.gluing.identified;
    let a = spec.side(SideName::A).meridians.clone();
    let (curves, b) = match spec.family {
        Family::Mh => {
            let (c1, c2) = (slot_curve(spec, &near)?, slot_curve(spec, &far)?);
            if c1 == c2 || !crossing_points(&c1, &c2)?.is_empty() {
                return Err(Error::precondition(
                    "identified curves must be distinct and disjoint",
                ));
            }
            let (b, mut imgs) = far_side(spec, vec![chart::third_meridian()], &[])?;
            let e3b = imgs.remove(0);
            let bc = meridian_curves(&b);
            let mut avoid: Vec<&ChordCurve> = bc.iter().collect();
            let lm = chart::landmarks();
            let mut refs: Vec<&ChordCurve> = lm.iter().collect();
            refs.extend_from_slice(&avoid);
            let c3 = band_sum_avoiding(&e3b, &c2, &refs)?;
            avoid.push(&c3);
            let c0 = third_disk(&c1, &avoid)?;
            (vec![c0, c1, c2, c3], b)
        }
        Family::Hybrid => {
            let c1 = slot_curve(spec, &near)?;
            let (end, s) = end_slope(&ident[far_index].b)?;
            let (curve, disk) = chart::slope_curve_with_disk(end, s, &[&c1])?;
            let (b, imgs) = far_side(spec, vec![curve, disk], &[&c1])?;
            let (c2, c3) = (imgs[0].clone(), imgs[1].clone());
            let bc = meridian_curves(&b);
            let mut avoid: Vec<&ChordCurve> = bc.iter().collect();
            avoid.extend([&c2, &c3]);
            let c0 = third_disk(&c1, &avoid)?;
            (vec![c0, c1, c2, c3], b)
        }
        Family::Mxi => {
            let (end0, s0) = end_slope(&ident[near_index].a)?;
            let (c1, c0) = chart::slope_curve_with_disk(end0, s0, &[])?;
            let (end1, s1) = end_slope(&ident[far_index].b)?;
            let (curve, disk) = chart::slope_curve_with_disk(end1, s1, &[&c0, &c1])?;
            let (b, imgs) = far_side(spec, vec![curve, disk], &[&c0, &c1])?;
            (vec![c0, c1, imgs[0].clone(), imgs[1].clone()], b)
        }
        Family::Generic => {
            return Err(Error::Unsupported(
                "no construction for generic specs".into(),
            ))
        }
    };
    Ok(DistanceCertificate::new(curves, a, b))
}

/// The disjoint-curve-property certificate of an `M_H` instance: the first
/// identified curve as seam, with the band sum of a meridian along it on each side.
pub fn build_dcp_certificate(spec: &SplittingSpec) -> Result<DcpCertificate> {
    if spec.family != Family::Mh {
        return Err(Error::WrongFamily {
            expected: "mh".into(),
            got: spec.family.to_string(),
        });
    }
    let [l1, _] = derivation_pair(spec)?;
    let seam = slot_curve(spec, &l1)?;
    let (b, _) = far_side(spec, Vec::new(), &[])?;
    let a = spec.side_a.meridians.clone();
    let once = |cands: Vec<ChordCurve>| -> Result<ChordCurve> {
        cands
            .into_iter()
            .find(|c| matches!(crossing_points(c, &seam), Ok(x) if x.len() == 1))
            .ok_or_else(|| Error::Unsupported(format!("no meridian meets {l1} once")))
    };
    let bc = meridian_curves(&b);
    let lm = chart::landmarks();
    let mut refs: Vec<&ChordCurve> = lm.iter().collect();
    refs.extend(bc.iter());
    let disk1 = band_sum_avoiding(
        &once(vec![fixtures::meridian_b(), fixtures::meridian_d()])?,
        &seam,
        &refs,
    )?;
    refs.push(&disk1);
    let disk2 = band_sum_avoiding(&once(bc.clone())?, &seam, &refs)?;
    Ok(DcpCertificate {
        schema: CERT_SCHEMA.into(),
        seam,
        disk1,
        disk2,
        side1_meridians: a,
        side2_meridians: b,
    })
}

/// Seam constructions a disjoint-curve-property certificate can start from.
/// Only [`SeamCase::IdentifiedCurve`] has a builder; the others are slots
/// for band-sum seams that need data a `SplittingSpec` does not carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeamCase {
    IdentifiedCurve,
    Variation5,
    Variation6,
    BandEa,
    BandEb,
}

impl SeamCase {
    pub const ALL: [SeamCase; 5] = [
        SeamCase::IdentifiedCurve,
        SeamCase::Variation5,
        SeamCase::Variation6,
        SeamCase::BandEa,
        SeamCase::BandEb,
    ];

    pub fn is_populated(self) -> bool {
        self == SeamCase::IdentifiedCurve
    }
}

pub fn build_seam_certificate(spec: &SplittingSpec, case: SeamCase) -> Result<DcpCertificate> {
    match case {
        SeamCase::IdentifiedCurve => build_dcp_certificate(spec),
        other => Err(Error::Unsupported(format!("no {other:?} seam builder"))),
    }
}
