//! JSON documents for every value that crosses the command line.
//!
//! Rationals are written as `"p/q"` in lowest terms, or `"p"` when
//! integral. Inputs also accept plain JSON integers where a rational is
//! expected.

use num_traits::{ToPrimitive, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::blocks::BlockId;
use crate::error::{Error, Result};
use crate::rootdata::{FiniteWeight, GammaClass, LieType};
use crate::spectral::{PiFunction, XiCharacter, XiValue};
use crate::torus::TorusPoint;
use crate::weights::{AffineWeight, ToroidalWeight};
use crate::{Int, Lattice, Quotient, Rational};

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadRational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: Int = n.parse().map_err(|_| bad())?;
    let d: Int = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// A rational literal: a string `"p/q"` or a bare integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalLit {
    Int(i64),
    Str(String),
}

impl RationalLit {
    pub fn value(&self) -> Result<Rational> {
        match self {
            RationalLit::Int(n) => Ok(Rational::from_integer((*n).into())),
            RationalLit::Str(s) => parse_rational(s),
        }
    }
}

impl From<&Rational> for RationalLit {
    fn from(q: &Rational) -> Self {
        RationalLit::Str(format_rational(q))
    }
}

fn zero_lit() -> RationalLit {
    RationalLit::Str("0".into())
}

pub fn parse_type(s: &str) -> Result<LieType> {
    s.parse()
}

pub fn point_from_doc(doc: &[RationalLit]) -> Result<TorusPoint> {
    TorusPoint::new(doc.iter().map(RationalLit::value).collect::<Result<_>>()?)
}

pub fn point_to_doc(p: &TorusPoint) -> Vec<RationalLit> {
    p.coords().iter().map(RationalLit::from).collect()
}

fn i64_vec(v: &[Int]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::TooLarge(x.to_string())))
        .collect()
}

/// `{"level", "fin", "delta"}`; the type comes from the enclosing document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineWeightDoc {
    pub level: i64,
    pub fin: Vec<i64>,
    #[serde(default = "zero_lit")]
    pub delta: RationalLit,
}

impl AffineWeightDoc {
    pub fn from_weight(w: &AffineWeight) -> Self {
        AffineWeightDoc {
            level: w.level(),
            fin: w.fin().coeffs().to_vec(),
            delta: w.delta().into(),
        }
    }

    pub fn to_weight(&self, ty: LieType) -> Result<AffineWeight> {
        Ok(AffineWeight::new(
            self.level,
            FiniteWeight::new(ty, self.fin.clone())?,
            self.delta.value()?,
        ))
    }
}

/// Conversion between a library value and its JSON document.
pub trait Document: Sized {
    type Doc: Serialize + DeserializeOwned;
    fn to_doc(&self) -> Result<Self::Doc>;
    fn from_doc(doc: &Self::Doc) -> Result<Self>;

    fn to_json(&self) -> Result<serde_json::Value> {
        serde_json::to_value(self.to_doc()?).map_err(|e| Error::Internal(e.to_string()))
    }

    fn from_json(v: &serde_json::Value) -> Result<Self> {
        let doc = Self::Doc::deserialize(v).map_err(|e| Error::Document(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToroidalWeightDoc {
    #[serde(rename = "type")]
    pub ty: String,
    pub central: Vec<i64>,
    pub fin: Vec<i64>,
    pub deltas: Vec<RationalLit>,
}

impl Document for ToroidalWeight {
    type Doc = ToroidalWeightDoc;

    fn to_doc(&self) -> Result<ToroidalWeightDoc> {
        Ok(ToroidalWeightDoc {
            ty: self.lie_type().to_string(),
            central: self.central().to_vec(),
            fin: self.fin().coeffs().to_vec(),
            deltas: self.deltas().iter().map(RationalLit::from).collect(),
        })
    }

    fn from_doc(doc: &ToroidalWeightDoc) -> Result<Self> {
        let ty = parse_type(&doc.ty)?;
        ToroidalWeight::new(
            doc.central.clone(),
            FiniteWeight::new(ty, doc.fin.clone())?,
            doc.deltas
                .iter()
                .map(RationalLit::value)
                .collect::<Result<_>>()?,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiEntryDoc {
    pub point: Vec<RationalLit>,
    pub weight: AffineWeightDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiDoc {
    #[serde(rename = "type")]
    pub ty: String,
    pub k: usize,
    pub entries: Vec<PiEntryDoc>,
}

impl Document for PiFunction {
    type Doc = PiDoc;

    fn to_doc(&self) -> Result<PiDoc> {
        Ok(PiDoc {
            ty: self.lie_type().to_string(),
            k: self.k(),
            entries: self
                .entries()
                .iter()
                .map(|(p, w)| PiEntryDoc {
                    point: point_to_doc(p),
                    weight: AffineWeightDoc::from_weight(w),
                })
                .collect(),
        })
    }

    fn from_doc(doc: &PiDoc) -> Result<Self> {
        let ty = parse_type(&doc.ty)?;
        let entries = doc
            .entries
            .iter()
            .map(|e| Ok((point_from_doc(&e.point)?, e.weight.to_weight(ty)?)))
            .collect::<Result<_>>()?;
        PiFunction::new(ty, doc.k, entries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XiValueDoc {
    pub level: i64,
    pub class: String,
}

impl XiValueDoc {
    pub fn from_value(v: &XiValue) -> Self {
        XiValueDoc {
            level: v.level,
            class: v.class.label(),
        }
    }

    pub fn to_value(&self, ty: LieType) -> Result<XiValue> {
        Ok(XiValue {
            level: self.level,
            class: GammaClass::parse_label(ty, &self.class)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XiEntryDoc {
    pub point: Vec<RationalLit>,
    pub value: XiValueDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XiDoc {
    #[serde(rename = "type")]
    pub ty: String,
    pub k: usize,
    pub entries: Vec<XiEntryDoc>,
}

impl Document for XiCharacter {
    type Doc = XiDoc;

    fn to_doc(&self) -> Result<XiDoc> {
        Ok(XiDoc {
            ty: self.lie_type().to_string(),
            k: self.k(),
            entries: self
                .entries()
                .iter()
                .map(|(p, v)| XiEntryDoc {
                    point: point_to_doc(p),
                    value: XiValueDoc::from_value(v),
                })
                .collect(),
        })
    }

    fn from_doc(doc: &XiDoc) -> Result<Self> {
        let ty = parse_type(&doc.ty)?;
        let entries = doc
            .entries
            .iter()
            .map(|e| Ok((point_from_doc(&e.point)?, e.value.to_value(ty)?)))
            .collect::<Result<_>>()?;
        XiCharacter::new(ty, doc.k, entries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub dim: usize,
    pub basis: Vec<Vec<i64>>,
}

impl Document for Lattice {
    type Doc = LatticeDoc;

    fn to_doc(&self) -> Result<LatticeDoc> {
        Ok(LatticeDoc {
            dim: self.dim(),
            basis: self
                .basis()
                .iter()
                .map(|r| i64_vec(r))
                .collect::<Result<_>>()?,
        })
    }

    fn from_doc(doc: &LatticeDoc) -> Result<Self> {
        let rows: Vec<Vec<Int>> = doc
            .basis
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        Lattice::hnf(&rows, doc.dim)
    }
}

/// Output-only description of `Z^d / L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientDoc {
    pub invariant_factors: Vec<i64>,
    pub free_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coset_reps: Option<Vec<Vec<i64>>>,
}

impl QuotientDoc {
    pub fn from_quotient(q: &Quotient) -> Result<Self> {
        Ok(QuotientDoc {
            invariant_factors: i64_vec(&q.invariant_factors)?,
            free_rank: q.free_rank,
            order: q
                .index()
                .map(|i| i.to_i64().ok_or_else(|| Error::TooLarge(i.to_string())))
                .transpose()?,
            coset_reps: q
                .coset_reps
                .as_ref()
                .map(|reps| reps.iter().map(|r| i64_vec(r)).collect::<Result<_>>())
                .transpose()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockIdDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<XiDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<PiDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coset: Option<Vec<i64>>,
}

impl Document for BlockId {
    type Doc = BlockIdDoc;

    fn to_doc(&self) -> Result<BlockIdDoc> {
        Ok(match self {
            BlockId::TypeI { xi } => BlockIdDoc {
                kind: "I".into(),
                xi: Some(xi.to_doc()?),
                pi: None,
                coset: None,
            },
            BlockId::TypeII { pi, coset } => BlockIdDoc {
                kind: "II".into(),
                xi: None,
                pi: Some(pi.to_doc()?),
                coset: Some(coset.clone()),
            },
        })
    }

    fn from_doc(doc: &BlockIdDoc) -> Result<Self> {
        match (doc.kind.as_str(), &doc.xi, &doc.pi, &doc.coset) {
            ("I", Some(xi), None, None) => Ok(BlockId::TypeI {
                xi: XiCharacter::from_doc(xi)?,
            }),
            ("II", None, Some(pi), Some(coset)) => Ok(BlockId::TypeII {
                pi: PiFunction::from_doc(pi)?,
                coset: coset.clone(),
            }),
            _ => Err(Error::Document(format!(
                "inconsistent block id of kind {:?}",
                doc.kind
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rational_literals() {
        assert_eq!(
            parse_rational("6/4").unwrap(),
            Rational::new(3.into(), 2.into())
        );
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&parse_rational("-4/2").unwrap()), "-2");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        for bad in ["", "1/0", "x", "1/2/3", "1.5"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn pi_document_round_trip() {
        let v = json!({
            "type": "A2", "k": 3,
            "entries": [
                {"point": ["2", 3], "weight": {"level": 1, "fin": [1, 0]}},
                {"point": ["-1/2", "4/6"], "weight": {"level": 2, "fin": [1, 1], "delta": "-3/9"}}
            ]
        });
        let pi = PiFunction::from_json(&v).unwrap();
        let out = pi.to_json().unwrap();
        assert_eq!(out["entries"][0]["point"], json!(["-1/2", "2/3"]));
        assert_eq!(out["entries"][0]["weight"]["delta"], json!("-1/3"));
        assert_eq!(PiFunction::from_json(&out).unwrap(), pi);
        assert_eq!(PiFunction::from_json(&out).unwrap().to_json().unwrap(), out);
    }

    #[test]
    fn malformed_documents() {
        let unknown = json!({"type": "A2", "k": 2, "entries": [], "extra": 1});
        assert!(matches!(
            PiFunction::from_json(&unknown),
            Err(Error::Document(_))
        ));
        let bad_type = json!({"type": "E9", "k": 2, "entries": []});
        assert!(matches!(
            PiFunction::from_json(&bad_type),
            Err(Error::InvalidType(_))
        ));
        let bad_class = json!({"type": "A2", "k": 2, "entries": [{"point": ["2"], "value": {"level": 1, "class": "w9"}}]});
        assert!(XiCharacter::from_json(&bad_class).is_err());
        let bad_block = json!({"kind": "I", "coset": [0]});
        assert!(BlockId::from_json(&bad_block).is_err());
    }
}
