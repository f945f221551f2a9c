//! JSON wire format for classes.
//!
//! Stiefel classes:
//! `{"n":3,"m":3,"coeff":"Z","minus_one_is_square":false,"terms":[{"gens":[2,3],"mcoeff":[{"k":0,"c":1}]}]}`.
//! Target classes use `"s"` and `"e"` in place of `"gens"` and carry no `"m"`.
//! Rendering is canonical (terms and `k` ascending, compact), so a rendered
//! class parses back to itself and re-renders to the same bytes.

use serde::{Deserialize, Serialize};

use crate::class::{Class, Presentation};
use crate::coeff::{CoeffRing, FieldProfile, MCoefficient, MotivicBase};
use crate::error::{AlgebraError, Result};
use crate::stiefel::{Element, Monomial, StiefelPresentation};
use crate::target::{PGmElement, PGmMonomial, PGmPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MCoeffJson {
    pub k: u32,
    pub c: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub gens: Vec<u32>,
    pub mcoeff: Vec<MCoeffJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub n: u32,
    pub m: u32,
    pub coeff: String,
    pub minus_one_is_square: bool,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PGmTermJson {
    pub s: u8,
    pub e: u32,
    pub mcoeff: Vec<MCoeffJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PGmElementJson {
    pub n: u32,
    pub coeff: String,
    pub minus_one_is_square: bool,
    pub terms: Vec<PGmTermJson>,
}

fn mcoeff_json(c: &MCoefficient) -> Vec<MCoeffJson> {
    c.terms().map(|(k, c)| MCoeffJson { k, c }).collect()
}

fn mcoeff_from_json(base: MotivicBase, terms: &[MCoeffJson]) -> MCoefficient {
    MCoefficient::from_terms(base, terms.iter().map(|t| (t.k, t.c)))
}

fn parse_err(e: serde_json::Error) -> AlgebraError {
    AlgebraError::Parse(e.to_string())
}

pub fn element_to_json_value(x: &Element) -> ElementJson {
    let pres = x.presentation();
    ElementJson {
        n: pres.n(),
        m: pres.m(),
        coeff: pres.coeff().to_string(),
        minus_one_is_square: pres.profile().minus_one_is_square,
        terms: x.terms().map(|(mono, c)| TermJson { gens: mono.indices().to_vec(), mcoeff: mcoeff_json(c) }).collect(),
    }
}

pub fn element_to_json(x: &Element) -> String {
    serde_json::to_string(&element_to_json_value(x)).expect("plain data serializes")
}

fn element_from_value(v: &ElementJson, characteristic: Option<u64>) -> Result<Element> {
    let coeff: CoeffRing = v.coeff.parse()?;
    let pres = StiefelPresentation::new(v.n, v.m, coeff, FieldProfile::new(v.minus_one_is_square, characteristic))?;
    let base = pres.base();
    let terms = v
        .terms
        .iter()
        .map(|t| Ok((Monomial::new(t.gens.clone())?, mcoeff_from_json(base, &t.mcoeff))))
        .collect::<Result<Vec<_>>>()?;
    Element::from_terms(pres, terms)
}

/// Parses a Stiefel class; the ground-field characteristic is left unset.
pub fn element_from_json(s: &str) -> Result<Element> {
    let v: ElementJson = serde_json::from_str(s).map_err(parse_err)?;
    element_from_value(&v, None)
}

/// Parses a Stiefel class that must live in `pres` (the characteristic is taken from `pres`).
pub fn element_from_json_in(s: &str, pres: &StiefelPresentation) -> Result<Element> {
    let v: ElementJson = serde_json::from_str(s).map_err(parse_err)?;
    let x = element_from_value(&v, pres.profile().characteristic)?;
    if x.presentation() != *pres {
        return Err(AlgebraError::ContextMismatch(format!(
            "class of {} given where {} was expected",
            x.presentation().describe(),
            pres.describe()
        )));
    }
    Ok(x)
}

pub fn pgm_to_json_value(x: &PGmElement) -> PGmElementJson {
    let pres = x.presentation();
    PGmElementJson {
        n: pres.n(),
        coeff: pres.coeff().to_string(),
        minus_one_is_square: pres.profile().minus_one_is_square,
        terms: x
            .terms()
            .map(|(key, c)| PGmTermJson { s: key.sigma as u8, e: key.eta, mcoeff: mcoeff_json(c) })
            .collect(),
    }
}

pub fn pgm_to_json(x: &PGmElement) -> String {
    serde_json::to_string(&pgm_to_json_value(x)).expect("plain data serializes")
}

pub fn pgm_from_json(s: &str) -> Result<PGmElement> {
    let v: PGmElementJson = serde_json::from_str(s).map_err(parse_err)?;
    let coeff: CoeffRing = v.coeff.parse()?;
    let pres = PGmPresentation::new(v.n, coeff, FieldProfile::new(v.minus_one_is_square, None))?;
    let base = pres.base();
    let terms = v
        .terms
        .iter()
        .map(|t| {
            if t.s > 1 {
                return Err(AlgebraError::Parse(format!("sigma exponent must be 0 or 1, got {}", t.s)));
            }
            Ok((PGmMonomial { sigma: t.s == 1, eta: t.e }, mcoeff_from_json(base, &t.mcoeff)))
        })
        .collect::<Result<Vec<_>>>()?;
    Class::from_terms(pres, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_example() {
        let s =
            r#"{"n":3,"m":3,"coeff":"Z","minus_one_is_square":false,"terms":[{"gens":[3],"mcoeff":[{"k":1,"c":1}]}]}"#;
        let x = element_from_json(s).unwrap();
        assert_eq!(element_to_json(&x), s);
        let pres = x.presentation();
        let r2 = pres.generator(2).unwrap();
        assert_eq!(r2.mul(&r2).unwrap(), x);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(element_from_json("{").unwrap_err().is_parse_error());
        let unsorted = r#"{"n":3,"m":3,"coeff":"Z","minus_one_is_square":false,"terms":[{"gens":[3,2],"mcoeff":[{"k":0,"c":1}]}]}"#;
        assert!(element_from_json(unsorted).is_err());
        let out_of_range =
            r#"{"n":3,"m":1,"coeff":"Z","minus_one_is_square":false,"terms":[{"gens":[2],"mcoeff":[{"k":0,"c":1}]}]}"#;
        assert!(element_from_json(out_of_range).is_err());
        let extra = r#"{"n":3,"m":3,"coeff":"Z","minus_one_is_square":false,"terms":[],"x":1}"#;
        assert!(element_from_json(extra).unwrap_err().is_parse_error());
    }

    #[test]
    fn context_is_checked() {
        let s = r#"{"n":3,"m":3,"coeff":"Z/2","minus_one_is_square":false,"terms":[]}"#;
        let pres = StiefelPresentation::general_linear(4, CoeffRing::IntegersMod(2), FieldProfile::default()).unwrap();
        assert!(matches!(element_from_json_in(s, &pres), Err(AlgebraError::ContextMismatch(_))));
    }

    #[test]
    fn pgm_example() {
        let pres = PGmPresentation::new(3, CoeffRing::IntegersMod(2), FieldProfile::default()).unwrap();
        let x = pres.term(true, 2).add(&pres.eta_power(1)).unwrap();
        let s = pgm_to_json(&x);
        assert_eq!(
            s,
            r#"{"n":3,"coeff":"Z/2","minus_one_is_square":false,"terms":[{"s":0,"e":1,"mcoeff":[{"k":0,"c":1}]},{"s":1,"e":2,"mcoeff":[{"k":0,"c":1}]}]}"#
        );
        assert_eq!(pgm_from_json(&s).unwrap(), x);
    }
}
