//! Named strategies selected at runtime: word and slope checks, certificate
//! verifiers and family builders.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::distance::{verify_certificate, verify_dcp, DcpCertificate, DistanceCertificate};
use crate::error::{Error, Result};
use crate::farey::{distance, Slope};
use crate::freegroup::{fold, is_basis_tuple, primitivity_trace, CyclicWord, Word};
use crate::splittings::{
    check_stabilization, classify_pair, normalize, FamilyParams, PairTag, SplittingSpec,
    StabilizationCertificate, SurgerySlope,
};

/// The result of one check or verification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub pass: bool,
    pub summary: String,
    pub details: Value,
}

pub trait Named {
    fn name(&self) -> &'static str;
}

pub trait CheckTool: Named {
    fn usage(&self) -> &'static str;
    fn run(&self, args: &[String]) -> Result<Outcome>;
}

pub trait Verifier: Named {
    /// Parse failures are errors; a parsed certificate that fails its clauses
    /// is an outcome with `pass == false`.
    fn verify(&self, json: &str) -> Result<Outcome>;
}

pub trait FamilyBuilder: Named {
    /// Parameter names with their defaults; `None` marks a required parameter.
    fn params(&self) -> &'static [(&'static str, Option<&'static str>)];
    fn parse(&self, values: &BTreeMap<String, String>) -> Result<FamilyParams>;

    fn build(&self, values: &BTreeMap<String, String>, tag: &str) -> Result<SplittingSpec> {
        Ok(normalize(&self.parse(values)?.build(tag)?))
    }
}

pub struct Registry<T: ?Sized> {
    entries: BTreeMap<&'static str, Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new() -> Self {
        Registry {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, entry: Box<T>) {
        self.entries.insert(entry.name(), entry);
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries.get(name).map(|b| b.as_ref()).ok_or_else(|| {
            Error::malformed(format!(
                "unknown name {name:?}; expected one of {}",
                self.names().join(", ")
            ))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

impl<T: ?Sized + Named> Default for Registry<T> {
    fn default() -> Self {
        Self::new()
    }
}

fn arity(args: &[String], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: args.len(),
        });
    }
    Ok(())
}

struct Primitive;

impl Named for Primitive {
    fn name(&self) -> &'static str {
        "primitive"
    }
}

impl CheckTool for Primitive {
    fn usage(&self) -> &'static str {
        "primitive <word>"
    }

    fn run(&self, args: &[String]) -> Result<Outcome> {
        arity(args, 1)?;
        let w = CyclicWord::from_word(&Word::parse_auto(&args[0])?);
        let trace = primitivity_trace(&w)?;
        Ok(Outcome {
            pass: trace.primitive,
            summary: format!("{w} primitive: {}", trace.primitive),
            details: serde_json::to_value(&trace)?,
        })
    }
}

struct Basis;

impl Named for Basis {
    fn name(&self) -> &'static str {
        "basis"
    }
}

impl CheckTool for Basis {
    fn usage(&self) -> &'static str {
        "basis <word>... (one word per generator)"
    }

    fn run(&self, args: &[String]) -> Result<Outcome> {
        if args.is_empty() {
            return Err(Error::Arity {
                expected: 1,
                got: 0,
            });
        }
        let rank = u8::try_from(args.len())
            .map_err(|_| Error::malformed("too many words"))?
            .max(2);
        let words: Vec<Word> = args
            .iter()
            .map(|a| Word::parse(a, rank))
            .collect::<Result<_>>()?;
        let pass = is_basis_tuple(&words, rank)?;
        let graph = fold(&words, rank)?;
        Ok(Outcome {
            pass,
            summary: format!("({}) basis of F{rank}: {pass}", args.join(", ")),
            details: json!({
                "rank": rank,
                "folded_vertices": graph.vertices,
                "folded_edges": graph.edges.len(),
                "subgroup_rank": graph.subgroup_rank(),
                "full_rose": graph.is_full_rose(),
            }),
        })
    }
}

struct FareyDist;

impl Named for FareyDist {
    fn name(&self) -> &'static str {
        "farey-dist"
    }
}

impl CheckTool for FareyDist {
    fn usage(&self) -> &'static str {
        "farey-dist <p/q> <r/s>"
    }

    fn run(&self, args: &[String]) -> Result<Outcome> {
        arity(args, 2)?;
        let s1: Slope = args[0].parse()?;
        let s2: Slope = args[1].parse()?;
        let d = distance(s1, s2);
        Ok(Outcome {
            pass: true,
            summary: format!("d({s1}, {s2}) = {d}"),
            details: json!({ "from": s1, "to": s2, "distance": d }),
        })
    }
}

struct Classify;

impl Named for Classify {
    fn name(&self) -> &'static str {
        "classify"
    }
}

impl CheckTool for Classify {
    fn usage(&self) -> &'static str {
        "classify <word> <word>"
    }

    fn run(&self, args: &[String]) -> Result<Outcome> {
        arity(args, 2)?;
        let u = CyclicWord::parse(&args[0], 2)?;
        let v = CyclicWord::parse(&args[1], 2)?;
        let t = classify_pair(&u, &v, None)?;
        Ok(Outcome {
            pass: t.tag != PairTag::Unknown,
            summary: format!("({u}, {v}): {:?}", t.tag),
            details: serde_json::to_value(&t)?,
        })
    }
}

pub fn check_tools() -> Registry<dyn CheckTool> {
    let mut r: Registry<dyn CheckTool> = Registry::new();
    r.register(Box::new(Primitive));
    r.register(Box::new(Basis));
    r.register(Box::new(FareyDist));
    r.register(Box::new(Classify));
    r
}

fn failed(e: Error) -> Outcome {
    Outcome {
        pass: false,
        summary: format!("rejected: {e}"),
        details: json!({ "result": "error", "reason": e.to_string() }),
    }
}

struct DistanceVerifier;

impl Named for DistanceVerifier {
    fn name(&self) -> &'static str {
        "distance"
    }
}

impl Verifier for DistanceVerifier {
    fn verify(&self, json: &str) -> Result<Outcome> {
        let cert = DistanceCertificate::from_json(json)?;
        Ok(match verify_certificate(&cert) {
            Ok(v) => Outcome {
                pass: v.is_ok(),
                summary: format!("distance certificate: {v:?}"),
                details: serde_json::to_value(&v)?,
            },
            Err(e) => failed(e),
        })
    }
}

struct DcpVerifier;

impl Named for DcpVerifier {
    fn name(&self) -> &'static str {
        "dcp"
    }
}

impl Verifier for DcpVerifier {
    fn verify(&self, json: &str) -> Result<Outcome> {
        let cert = DcpCertificate::from_json(json)?;
        Ok(match verify_dcp(&cert) {
            Ok(v) => Outcome {
                pass: v.is_ok(),
                summary: format!("dcp certificate: {v:?}"),
                details: serde_json::to_value(&v)?,
            },
            Err(e) => failed(e),
        })
    }
}

struct StabVerifier;

impl Named for StabVerifier {
    fn name(&self) -> &'static str {
        "stab"
    }
}

impl Verifier for StabVerifier {
    fn verify(&self, json: &str) -> Result<Outcome> {
        let cert = StabilizationCertificate::from_json(json)?;
        Ok(match check_stabilization(&cert) {
            Ok(v) => Outcome {
                pass: v.is_valid(),
                summary: format!("stabilization certificate: {v:?}"),
                details: serde_json::to_value(&v)?,
            },
            Err(e) => failed(e),
        })
    }
}

pub fn verifiers() -> Registry<dyn Verifier> {
    let mut r: Registry<dyn Verifier> = Registry::new();
    r.register(Box::new(DistanceVerifier));
    r.register(Box::new(DcpVerifier));
    r.register(Box::new(StabVerifier));
    r
}

struct Values<'a> {
    values: &'a BTreeMap<String, String>,
    params: &'static [(&'static str, Option<&'static str>)],
}

impl Values<'_> {
    fn raw(&self, key: &str) -> Result<&str> {
        if let Some(v) = self.values.get(key) {
            return Ok(v);
        }
        match self.params.iter().find(|(k, _)| *k == key) {
            Some((_, Some(d))) => Ok(d),
            _ => Err(Error::malformed(format!("missing parameter --{key}"))),
        }
    }

    fn slope(&self, key: &str) -> Result<Slope> {
        self.raw(key)?.parse()
    }

    fn surgery(&self, key: &str) -> Result<SurgerySlope> {
        self.raw(key)?.parse()
    }

    fn check_known(&self) -> Result<()> {
        for k in self.values.keys() {
            if !self.params.iter().any(|(p, _)| p == k) {
                return Err(Error::malformed(format!("unknown parameter --{k}")));
            }
        }
        Ok(())
    }
}

struct MhBuilder;

impl Named for MhBuilder {
    fn name(&self) -> &'static str {
        "mh"
    }
}

impl FamilyBuilder for MhBuilder {
    fn params(&self) -> &'static [(&'static str, Option<&'static str>)] {
        &[
            ("l1", Some("none")),
            ("l2", Some("none")),
            ("ra", Some("none")),
            ("rb", Some("none")),
        ]
    }

    fn parse(&self, values: &BTreeMap<String, String>) -> Result<FamilyParams> {
        let v = Values {
            values,
            params: self.params(),
        };
        v.check_known()?;
        Ok(FamilyParams::Mh {
            l1: v.surgery("l1")?,
            l2: v.surgery("l2")?,
            ra: v.surgery("ra")?,
            rb: v.surgery("rb")?,
        })
    }
}

struct MxiBuilder;

impl Named for MxiBuilder {
    fn name(&self) -> &'static str {
        "mxi"
    }
}

impl FamilyBuilder for MxiBuilder {
    fn params(&self) -> &'static [(&'static str, Option<&'static str>)] {
        &[
            ("a0", None),
            ("a1", None),
            ("b0", Some("0/1")),
            ("b1", Some("1/0")),
            ("s0", Some("none")),
            ("s1", Some("none")),
        ]
    }

    fn parse(&self, values: &BTreeMap<String, String>) -> Result<FamilyParams> {
        let v = Values {
            values,
            params: self.params(),
        };
        v.check_known()?;
        Ok(FamilyParams::Mxi {
            a0: v.slope("a0")?,
            a1: v.slope("a1")?,
            b0: v.slope("b0")?,
            b1: v.slope("b1")?,
            s0: v.surgery("s0")?,
            s1: v.surgery("s1")?,
        })
    }
}

struct HybridBuilder;

impl Named for HybridBuilder {
    fn name(&self) -> &'static str {
        "hybrid"
    }
}

impl FamilyBuilder for HybridBuilder {
    fn params(&self) -> &'static [(&'static str, Option<&'static str>)] {
        &[
            ("r3", Some("none")),
            ("l1", Some("none")),
            ("l2", Some("none")),
            ("b0", None),
            ("b1", None),
        ]
    }

    fn parse(&self, values: &BTreeMap<String, String>) -> Result<FamilyParams> {
        let v = Values {
            values,
            params: self.params(),
        };
        v.check_known()?;
        Ok(FamilyParams::Hybrid {
            r3: v.surgery("r3")?,
            l1: v.surgery("l1")?,
            l2: v.surgery("l2")?,
            b0: v.slope("b0")?,
            b1: v.slope("b1")?,
        })
    }
}

pub fn builders() -> Registry<dyn FamilyBuilder> {
    let mut r: Registry<dyn FamilyBuilder> = Registry::new();
    r.register(Box::new(MhBuilder));
    r.register(Box::new(MxiBuilder));
    r.register(Box::new(HybridBuilder));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn names_are_registered() {
        assert_eq!(
            check_tools().names(),
            ["basis", "classify", "farey-dist", "primitive"]
        );
        assert_eq!(verifiers().names(), ["dcp", "distance", "stab"]);
        assert_eq!(builders().names(), ["hybrid", "mh", "mxi"]);
        assert!(check_tools().get("nope").is_err());
    }

    #[test]
    fn check_examples() {
        let tools = check_tools();
        let p = tools
            .get("primitive")
            .unwrap()
            .run(&args(&["aab"]))
            .unwrap();
        assert!(p.pass);
        assert!(p.details["steps"].is_array());
        let d = tools
            .get("farey-dist")
            .unwrap()
            .run(&args(&["0/1", "1/1"]))
            .unwrap();
        assert_eq!(d.details["distance"], 1);
        let c = tools
            .get("classify")
            .unwrap()
            .run(&args(&["x", "y"]))
            .unwrap();
        assert_eq!(c.details["tag"], "TypeB");
        let b = tools
            .get("basis")
            .unwrap()
            .run(&args(&["ab", "b"]))
            .unwrap();
        assert!(b.pass);
        assert!(tools
            .get("farey-dist")
            .unwrap()
            .run(&args(&["0/1"]))
            .is_err());
    }

    #[test]
    fn mxi_generator_words() {
        let mut v = BTreeMap::new();
        v.insert("a0".to_string(), "0/1".to_string());
        v.insert("a1".to_string(), "1/0".to_string());
        let spec = builders().get("mxi").unwrap().build(&v, "t").unwrap();
        let words: Vec<String> = spec.slots.iter().map(|s| s.word_a.to_string()).collect();
        assert_eq!(words, ["b", "a"]);
        v.insert("zz".to_string(), "1".to_string());
        assert!(builders().get("mxi").unwrap().build(&v, "t").is_err());
    }
}
