use serde::{Deserialize, Serialize};

use super::spec::*;
use crate::error::{Error, Result};
use crate::freegroup::is_primitive;
use crate::surface::{crossing_points, validate, word_of};

/// One checked hypothesis, named like `doubly-primitive(λ1,B-side)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn clause(name: String, pass: bool, detail: impl Into<String>) -> Clause {
    Clause {
        name,
        pass,
        detail: detail.into(),
    }
}

/// The two curves a derivation distributes, checked to be unassigned slots.
pub fn derivation_pair(spec: &SplittingSpec) -> Result<[String; 2]> {
    let labels = spec.derivation_labels();
    if labels.len() != 2 {
        return Err(Error::precondition(format!(
            "expected two identified curves, found {}",
            labels.len()
        )));
    }
    if labels[0] == labels[1] {
        return Err(Error::Degenerate(format!(
            "both identified curves are {}",
            labels[0]
        )));
    }
    for l in &labels {
        match spec.slot(l) {
            None => return Err(Error::precondition(format!("no slot {l}"))),
            Some(s) if s.host != Host::Unassigned => {
                return Err(Error::precondition(format!(
                    "slot {l} is already pushed into {:?}",
                    s.host
                )))
            }
            Some(_) => {}
        }
    }
    Ok([labels[0].to_string(), labels[1].to_string()])
}

/// Every hypothesis of a Dehn derivation, in checking order: recorded words agree
/// with representatives, each curve is primitive on both sides, the curves are disjoint.
pub fn derivation_clauses(spec: &SplittingSpec) -> Result<Vec<Clause>> {
    let pair = derivation_pair(spec)?;
    let mut out = Vec::new();
    for l in &pair {
        let slot = spec.slot(l).expect("checked");
        if let Some(c) = &slot.curve {
            if let Some(v) = validate(c).first() {
                return Err(Error::InvalidCurve(format!("{l}: {v}")));
            }
            for side in [SideName::A, SideName::B] {
                let w = word_of(c, &spec.side(side).meridians)?;
                out.push(clause(
                    format!("words-match({l},{side}-side)"),
                    &w == slot.word(side),
                    format!("recorded {}, curve reads {}", slot.word(side), w),
                ));
            }
        }
    }
    for l in &pair {
        let slot = spec.slot(l).expect("checked");
        for side in [SideName::A, SideName::B] {
            let w = slot.word(side);
            let ok = w.rank() == 2 && is_primitive(w)?;
            out.push(clause(
                format!("doubly-primitive({l},{side}-side)"),
                ok,
                format!("word {w}"),
            ));
        }
    }
    let (c0, c1) = (
        &spec.slot(&pair[0]).expect("checked").curve,
        &spec.slot(&pair[1]).expect("checked").curve,
    );
    if let (Some(c0), Some(c1)) = (c0, c1) {
        let (ok, detail) = match crossing_points(c0, c1) {
            Ok(x) => (x.is_empty(), format!("{} crossings", x.len())),
            Err(e) => (false, e.to_string()),
        };
        out.push(clause(
            format!("disjoint({},{})", pair[0], pair[1]),
            ok,
            detail,
        ));
    }
    Ok(out)
}

fn clause_error(c: &Clause) -> Error {
    let inner = &c.name[c.name.find('(').map_or(0, |i| i + 1)..c.name.len().saturating_sub(1)];
    let parts: Vec<&str> = inner.split(',').collect();
    if c.name.starts_with("doubly-primitive") {
        Error::NotDoublyPrimitive {
            slot: parts[0].to_string(),
            side: parts
                .get(1)
                .unwrap_or(&"")
                .trim_end_matches("-side")
                .to_string(),
        }
    } else if c.name.starts_with("disjoint") {
        Error::NotDisjoint(
            parts[0].to_string(),
            parts.get(1).unwrap_or(&"").to_string(),
        )
    } else {
        Error::malformed(format!("{}: {}", c.name, c.detail))
    }
}

/// Slots hosted on one side must be pairwise disjoint.
pub fn check_hosted_disjoint(spec: &SplittingSpec) -> Result<()> {
    for side in [Host::A, Host::B] {
        let hosted: Vec<&SurgerySlot> = spec.slots.iter().filter(|s| s.host == side).collect();
        for i in 0..hosted.len() {
            for j in i + 1..hosted.len() {
                if let (Some(c), Some(d)) = (&hosted[i].curve, &hosted[j].curve) {
                    let ok = matches!(crossing_points(c, d), Ok(x) if x.is_empty());
                    if !ok {
                        return Err(Error::NotDisjoint(
                            hosted[i].label.clone(),
                            hosted[j].label.clone(),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The two Dehn-derived splittings: the first pushes the first identified curve
/// into `A` and the second into `B`, the second does the opposite.
pub fn dehn_derive(m0: &SplittingSpec) -> Result<(SplittingSpec, SplittingSpec)> {
    for c in derivation_clauses(m0)? {
        if !c.pass {
            return Err(clause_error(&c));
        }
    }
    let [l1, l2] = derivation_pair(m0)?;
    let assign = |first: &str, second: &str| -> Result<SplittingSpec> {
        let mut s = m0.clone();
        s.slot_mut(first).expect("checked").host = Host::A;
        s.slot_mut(second).expect("checked").host = Host::B;
        check_hosted_disjoint(&s)?;
        Ok(s)
    };
    Ok((assign(&l1, &l2)?, assign(&l2, &l1)?))
}

/// Canonical form: slots and identifications sorted, and unsurgered slots
/// unassigned, since pushing a curve without surgering it changes nothing.
pub fn normalize(spec: &SplittingSpec) -> SplittingSpec {
    let mut s = spec.clone();
    for slot in &mut s.slots {
        if slot.slope.is_none() {
            slot.host = Host::Unassigned;
        }
    }
    s.slots.sort_by(|a, b| a.label.cmp(&b.label));
    s.gluing.identified.sort();
    s
}

/// Exchanges the hosts of two slots. The two outputs of [`dehn_derive`] are
/// images of each other under this map on the identified curves.
pub fn exchange_hosts(spec: &SplittingSpec, first: &str, second: &str) -> Result<SplittingSpec> {
    let mut s = spec.clone();
    let h1 = s
        .slot(first)
        .ok_or_else(|| Error::precondition(format!("no slot {first}")))?
        .host;
    let h2 = s
        .slot(second)
        .ok_or_else(|| Error::precondition(format!("no slot {second}")))?
        .host;
    s.slot_mut(first).expect("present").host = h2;
    s.slot_mut(second).expect("present").host = h1;
    Ok(s)
}
