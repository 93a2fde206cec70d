//! JSON form of a [`GVTable`]. All numbers are decimal strings.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::gv::{sign_convert, GVPolynomial, GVTable};
use crate::vertex::{CurveClass, ToricDiagram};
use crate::{Error, Result};

/// The on-disk table, kept verbatim so a damaged file can be diffed class
/// by class instead of being rejected wholesale.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub diagram: ToricDiagram,
    pub d_max: u64,
    pub classes: Vec<ClassEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub sigma: CurveClass,
    pub p_coeffs: Vec<String>,
    pub n_gv: Vec<String>,
}

fn decimal(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn parse_ints(v: &[String]) -> Result<Vec<BigInt>> {
    v.iter()
        .map(|s| BigInt::from_str(s).map_err(|_| Error::Format(format!("not an integer: '{s}'"))))
        .collect()
}

impl From<&GVTable> for TableFile {
    fn from(t: &GVTable) -> Self {
        TableFile {
            diagram: t.diagram.clone(),
            d_max: t.d_max,
            classes: t
                .iter()
                .map(|p| ClassEntry {
                    sigma: p.sigma.clone(),
                    p_coeffs: decimal(&p.coeffs),
                    n_gv: decimal(&p.sign_convert()),
                })
                .collect(),
        }
    }
}

impl TableFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    /// Strict conversion: integer strings, consistent sign rule, no
    /// duplicate classes.
    pub fn to_table(&self) -> Result<GVTable> {
        let mut classes = BTreeMap::new();
        for e in &self.classes {
            self.diagram.check_class(&e.sigma)?;
            let p = parse_ints(&e.p_coeffs)?;
            if sign_convert(&p) != parse_ints(&e.n_gv)? {
                return Err(Error::Format(format!("class {}: n_gv disagrees with p_coeffs", e.sigma)));
            }
            let poly = GVPolynomial::new(e.sigma.clone(), p);
            if classes.insert(e.sigma.clone(), poly).is_some() {
                return Err(Error::Format(format!("class {} listed twice", e.sigma)));
            }
        }
        Ok(GVTable {
            diagram: self.diagram.clone(),
            d_max: self.d_max,
            classes,
        })
    }
}

impl GVTable {
    /// Canonical JSON: pretty-printed, classes in lexicographic order,
    /// trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&TableFile::from(self)).expect("table serialises");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        TableFile::parse(text)?.to_table()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> GVTable {
        let mut classes = BTreeMap::new();
        for (c, p) in [(1u64, vec![-3i64]), (3, vec![-27, -10])] {
            let sigma = CurveClass::new(vec![c]);
            let p = GVPolynomial::new(sigma.clone(), p.into_iter().map(BigInt::from).collect());
            classes.insert(sigma, p);
        }
        GVTable {
            diagram: ToricDiagram::p2(),
            d_max: 3,
            classes,
        }
    }

    #[test]
    fn json_shape() {
        let t = sample();
        let text = t.to_json();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["d_max"], 3);
        assert_eq!(v["classes"][1]["sigma"], serde_json::json!([3]));
        assert_eq!(v["classes"][1]["p_coeffs"], serde_json::json!(["-27", "-10"]));
        assert_eq!(v["classes"][1]["n_gv"], serde_json::json!(["27", "-10"]));
        assert_eq!(v["diagram"]["gamma"], serde_json::json!([1, 1, 1]));
        assert_eq!(GVTable::from_json(&text).unwrap(), t);
    }

    #[test]
    fn strict_parse() {
        let text = sample().to_json().replace("\"27\"", "\"28\"");
        assert!(matches!(GVTable::from_json(&text), Err(Error::Format(_))));
        let text = sample().to_json().replace("\"-10\"", "\"-1.5\"");
        assert!(matches!(GVTable::from_json(&text), Err(Error::Format(_))));
        // lenient parse keeps the damaged entry for diffing
        assert!(TableFile::parse(&sample().to_json().replace("\"27\"", "\"28\"")).is_ok());
    }
}
