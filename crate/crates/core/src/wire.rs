//! JSON and CSV representations of classes, recipes and certificates.
//!
//! Rationals travel as canonical `"p/q"` strings and partitions as
//! weakly decreasing integer arrays. JSON text produced by [`to_json`] has
//! sorted keys, so identical values give identical bytes.

use serde::{Deserialize, Serialize};

use crate::bigness::{BignessCertificate, IndexMargin, ScanRow};
use crate::divisor::{BasisLabel, DivisorClass, SpaceDescriptor};
use crate::error::{Error, Result};
use crate::hurwitz::{BoundaryIndex, HurwitzClass};
use crate::low_slope::DivisorRecipe;
use crate::partitions::Partition;
use crate::pushpull::QuadraticClass;
use crate::scalar::{format_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub basis: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClassJson {
    pub space: SpaceDescriptor,
    pub coefficients: Vec<TermJson>,
}

impl From<&DivisorClass> for DivisorClassJson {
    fn from(class: &DivisorClass) -> Self {
        DivisorClassJson {
            space: class.space(),
            coefficients: class
                .terms()
                .map(|(l, v)| TermJson { basis: l.to_string(), value: format_rational(v) })
                .collect(),
        }
    }
}

impl TryFrom<&DivisorClassJson> for DivisorClass {
    type Error = Error;

    fn try_from(json: &DivisorClassJson) -> Result<Self> {
        let terms = json
            .coefficients
            .iter()
            .map(|t| Ok((t.basis.parse::<BasisLabel>()?, parse_rational(&t.value)?)))
            .collect::<Result<Vec<_>>>()?;
        DivisorClass::from_terms(json.space, terms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairTermJson {
    pub basis: [String; 2],
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticClassJson {
    pub space: SpaceDescriptor,
    pub coefficients: Vec<PairTermJson>,
}

impl From<&QuadraticClass> for QuadraticClassJson {
    fn from(q: &QuadraticClass) -> Self {
        QuadraticClassJson {
            space: q.space(),
            coefficients: q
                .terms()
                .map(|((x, y), v)| PairTermJson { basis: [x.to_string(), y.to_string()], value: format_rational(v) })
                .collect(),
        }
    }
}

impl TryFrom<&QuadraticClassJson> for QuadraticClass {
    type Error = Error;

    fn try_from(json: &QuadraticClassJson) -> Result<Self> {
        let SpaceDescriptor::MgOnePointed { g } = json.space else {
            return Err(Error::Parse(format!("quadratic classes live on M_g,1, got {}", json.space)));
        };
        let terms = json
            .coefficients
            .iter()
            .map(|t| Ok(((t.basis[0].parse()?, t.basis[1].parse()?), parse_rational(&t.value)?)))
            .collect::<Result<Vec<_>>>()?;
        QuadraticClass::from_terms(g, terms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzTermJson {
    pub i: u32,
    pub mu: Vec<u32>,
    pub prime: bool,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzClassJson {
    pub g: u32,
    pub k: u32,
    pub coefficients: Vec<HurwitzTermJson>,
}

impl From<&HurwitzClass> for HurwitzClassJson {
    fn from(class: &HurwitzClass) -> Self {
        HurwitzClassJson {
            g: class.genus(),
            k: class.degree(),
            coefficients: class
                .terms()
                .map(|(ix, v)| HurwitzTermJson {
                    i: ix.i,
                    mu: ix.mu.parts().to_vec(),
                    prime: ix.prime,
                    value: format_rational(v),
                })
                .collect(),
        }
    }
}

fn index_from(i: u32, mu: &[u32], prime: bool) -> Result<BoundaryIndex> {
    let plain = BoundaryIndex::new(i, Partition::new(mu.to_vec())?);
    if prime {
        plain.primed()
    } else {
        Ok(plain)
    }
}

impl TryFrom<&HurwitzClassJson> for HurwitzClass {
    type Error = Error;

    fn try_from(json: &HurwitzClassJson) -> Result<Self> {
        let terms = json
            .coefficients
            .iter()
            .map(|t| Ok((index_from(t.i, &t.mu, t.prime)?, parse_rational(&t.value)?)))
            .collect::<Result<Vec<_>>>()?;
        HurwitzClass::from_terms(json.g, json.k, terms)
    }
}

/// CSV rows `i, mu, m_mu, value, prime` for a Hurwitz class.
pub fn hurwitz_csv_rows(class: &HurwitzClass) -> Vec<[String; 5]> {
    class
        .terms()
        .map(|(ix, v)| {
            [
                ix.i.to_string(),
                partition_text(&ix.mu),
                ix.mu.lcm().to_string(),
                format_rational(v),
                ix.prime.to_string(),
            ]
        })
        .collect()
}

pub const HURWITZ_CSV_HEADER: [&str; 5] = ["i", "mu", "m_mu", "value", "prime"];

/// `[2,1,1]`
pub fn partition_text(mu: &Partition) -> String {
    serde_json::to_string(mu.parts()).expect("integer arrays serialize")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeJson {
    pub name: String,
    pub g: u32,
    pub slope: String,
    pub class: DivisorClassJson,
    pub hypotheses: Vec<String>,
    pub notes: Vec<String>,
}

impl From<&DivisorRecipe> for RecipeJson {
    fn from(r: &DivisorRecipe) -> Self {
        RecipeJson {
            name: r.name.to_string(),
            g: r.g,
            slope: format_rational(&r.slope),
            class: (&r.class).into(),
            hypotheses: r.hypotheses.iter().map(|h| h.to_string()).collect(),
            notes: r.notes.clone(),
        }
    }
}

impl TryFrom<&RecipeJson> for DivisorRecipe {
    type Error = Error;

    fn try_from(json: &RecipeJson) -> Result<Self> {
        let class = DivisorClass::try_from(&json.class)?;
        let slope = parse_rational(&json.slope)?;
        let recomputed = crate::divisor::slope(&class)?;
        if recomputed.as_ref() != Some(&slope) {
            return Err(Error::Parse(format!("recipe slope {} does not match its class", json.slope)));
        }
        Ok(DivisorRecipe {
            name: json.name.parse()?,
            g: json.g,
            class,
            slope,
            hypotheses: json.hypotheses.iter().map(|h| h.parse()).collect::<Result<_>>()?,
            notes: json.notes.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexMarginJson {
    pub i: u32,
    pub mu: Vec<u32>,
    pub margin: String,
    pub sigma_bound: u32,
    pub sharp: u32,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub g: u32,
    pub k: u32,
    pub mode: String,
    pub slope: String,
    pub recipe: Option<String>,
    pub recipe_slope: Option<String>,
    pub alpha: String,
    pub indices: Vec<IndexMarginJson>,
    pub hypotheses: Vec<String>,
    pub notes: Vec<String>,
    pub verdict: String,
}

impl From<&BignessCertificate> for CertificateJson {
    fn from(c: &BignessCertificate) -> Self {
        CertificateJson {
            g: c.g,
            k: c.k,
            mode: c.mode.to_string(),
            slope: format_rational(&c.slope),
            recipe: c.recipe.map(|r| r.to_string()),
            recipe_slope: c.recipe_slope.as_ref().map(format_rational),
            alpha: format_rational(&c.alpha),
            indices: c
                .indices
                .iter()
                .map(|m| IndexMarginJson {
                    i: m.index.i,
                    mu: m.index.mu.parts().to_vec(),
                    margin: format_rational(&m.margin),
                    sigma_bound: m.sigma_bound,
                    sharp: m.sharp,
                    note: m.note.clone(),
                })
                .collect(),
            hypotheses: c.hypotheses.iter().map(|h| h.to_string()).collect(),
            notes: c.notes.clone(),
            verdict: c.verdict.to_string(),
        }
    }
}

impl TryFrom<&CertificateJson> for BignessCertificate {
    type Error = Error;

    fn try_from(json: &CertificateJson) -> Result<Self> {
        Ok(BignessCertificate {
            g: json.g,
            k: json.k,
            mode: json.mode.parse()?,
            slope: parse_rational(&json.slope)?,
            recipe: json.recipe.as_deref().map(str::parse).transpose()?,
            recipe_slope: json.recipe_slope.as_deref().map(parse_rational).transpose()?,
            alpha: parse_rational(&json.alpha)?,
            indices: json
                .indices
                .iter()
                .map(|m| {
                    Ok(IndexMargin {
                        index: index_from(m.i, &m.mu, false)?,
                        margin: parse_rational(&m.margin)?,
                        sigma_bound: m.sigma_bound,
                        sharp: m.sharp,
                        note: m.note.clone(),
                    })
                })
                .collect::<Result<_>>()?,
            hypotheses: json.hypotheses.iter().map(|h| h.parse()).collect::<Result<_>>()?,
            notes: json.notes.clone(),
            verdict: json.verdict.parse()?,
        })
    }
}

/// One line of the scan table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRowJson {
    pub g: u32,
    pub k: u32,
    pub recipe: Option<String>,
    pub slope: Option<String>,
    pub stack_verdict: String,
    pub coarse_verdict: String,
    pub min_margin: Option<String>,
    pub alpha: Option<String>,
    pub coarse_min_margin: Option<String>,
}

pub const SCAN_CSV_HEADER: [&str; 9] =
    ["g", "k", "recipe", "slope", "stack_verdict", "coarse_verdict", "min_margin", "alpha", "coarse_min_margin"];

impl From<&ScanRow> for ScanRowJson {
    fn from(r: &ScanRow) -> Self {
        ScanRowJson {
            g: r.g,
            k: r.k,
            recipe: r.recipe.map(|n| n.to_string()),
            slope: r.slope.as_ref().map(format_rational),
            stack_verdict: r.stack.verdict.to_string(),
            coarse_verdict: r.coarse_status().to_string(),
            min_margin: r.stack.min_margin().map(format_rational),
            alpha: r.recipe.is_some().then(|| format_rational(&r.stack.alpha)),
            coarse_min_margin: r.coarse.as_ref().and_then(|c| c.min_margin()).map(format_rational),
        }
    }
}

impl ScanRowJson {
    pub fn csv_record(&self) -> [String; 9] {
        [
            self.g.to_string(),
            self.k.to_string(),
            self.recipe.clone().unwrap_or_default(),
            self.slope.clone().unwrap_or_default(),
            self.stack_verdict.clone(),
            self.coarse_verdict.clone(),
            self.min_margin.clone().unwrap_or_default(),
            self.alpha.clone().unwrap_or_default(),
            self.coarse_min_margin.clone().unwrap_or_default(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleJson {
    pub k: u32,
    pub mu: Vec<u32>,
    pub i: u32,
    /// Decimal string; counts exceed 64 bits quickly.
    pub count: String,
    pub feasible: bool,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "data")]
pub enum Payload {
    DivisorClass(DivisorClassJson),
    QuadraticClass(QuadraticClassJson),
    HurwitzClass(HurwitzClassJson),
    DivisorRecipe(RecipeJson),
    BignessCertificate(CertificateJson),
    ScanTable(Vec<ScanRowJson>),
    Oracle(OracleJson),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub tool_version: String,
    pub command: String,
    pub payload: Payload,
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json<S: Serialize>(value: &S) -> String {
    let tree = serde_json::to_value(value).expect("wire types serialize");
    let mut text = serde_json::to_string_pretty(&tree).expect("json values serialize");
    text.push('\n');
    text
}

pub fn from_json<D: for<'de> Deserialize<'de>>(text: &str) -> Result<D> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::lambda_minus_delta;
    use crate::scalar::Scalar;
    use crate::Rational;

    #[test]
    fn divisor_json_shape() {
        let class = lambda_minus_delta(7, Rational::from_ratio(54, 7)).unwrap();
        let text = to_json(&DivisorClassJson::from(&class));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["space"]["kind"], "Mg");
        assert_eq!(v["space"]["g"], 7);
        assert_eq!(v["coefficients"][0]["basis"], "lambda");
        assert_eq!(v["coefficients"][0]["value"], "54/7");
        assert_eq!(v["coefficients"][1]["value"], "-1");
        let back = DivisorClass::try_from(&from_json::<DivisorClassJson>(&text).unwrap()).unwrap();
        assert_eq!(back, class);
    }

    #[test]
    fn hurwitz_json_shape() {
        let class: HurwitzClass = crate::hurwitz::hodge_class(2, 3).unwrap();
        let json = HurwitzClassJson::from(&class);
        let first = &json.coefficients[0];
        assert_eq!((first.i, first.mu.as_slice(), first.prime), (2, &[3u32][..], false));
        assert_eq!(first.value, "-1/42");
        assert_eq!(HurwitzClass::try_from(&json).unwrap(), class);
    }

    #[test]
    fn rejects_float_values() {
        let json = DivisorClassJson {
            space: SpaceDescriptor::Mg { g: 4 },
            coefficients: vec![TermJson { basis: "lambda".into(), value: "7.5".into() }],
        };
        assert!(DivisorClass::try_from(&json).is_err());
    }
}
