//! Kernel document schema: the JSON input format of the `analyze`
//! command.
//!
//! All numbers cross the boundary as rational strings `"p/q"` (ascending
//! coefficient order for polynomial pieces); floats are rejected in exact
//! mode. A factor is either an explicit piece list covering [0,1] or
//! `maxAffine`, the exact maximum of two affine functions, converted at
//! parse time by solving the crossing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::KernelSpec;
use crate::piecewise::PiecewisePoly;
use crate::poly::Polynomial;
use crate::quad::{NumericFactors, NumericMomentTable};
use crate::rat::{parse_rat, rat_i64, Rat};

pub const KERNEL_SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct KernelDocument {
    pub n: usize,
    /// "exact" (default) or "numeric".
    #[serde(default = "default_mode")]
    pub mode: String,
    /// Absolute moment tolerance, numeric mode only; decimal string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<String>,
    pub phi1: FactorDoc,
    pub phi2: FactorDoc,
    pub psi1: FactorDoc,
    pub psi2: FactorDoc,
}

fn default_mode() -> String {
    "exact".into()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub enum FactorDoc {
    #[serde(rename = "pieces")]
    Pieces(Vec<PieceDoc>),
    #[serde(rename = "maxAffine")]
    MaxAffine([[String; 2]; 2]),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PieceDoc {
    /// Closed subinterval [lo, hi] as rational strings.
    pub on: [String; 2],
    /// Ascending-degree coefficients as rational strings.
    pub coeffs: Vec<String>,
}

impl FactorDoc {
    pub fn to_piecewise(&self) -> Result<PiecewisePoly> {
        match self {
            FactorDoc::MaxAffine(pairs) => {
                let parse_pair = |p: &[String; 2]| -> Result<(Rat, Rat)> {
                    Ok((parse_rat(&p[0])?, parse_rat(&p[1])?))
                };
                Ok(PiecewisePoly::from_max_affine(
                    parse_pair(&pairs[0])?,
                    parse_pair(&pairs[1])?,
                ))
            }
            FactorDoc::Pieces(pieces) => {
                if pieces.is_empty() {
                    return Err(Error::SchemaViolation("factor has no pieces".into()));
                }
                let mut breakpoints = Vec::with_capacity(pieces.len() + 1);
                let mut polys = Vec::with_capacity(pieces.len());
                for (idx, piece) in pieces.iter().enumerate() {
                    let lo = parse_rat(&piece.on[0])?;
                    let hi = parse_rat(&piece.on[1])?;
                    if idx == 0 {
                        breakpoints.push(lo.clone());
                    } else if breakpoints.last() != Some(&lo) {
                        return Err(Error::SchemaViolation(format!(
                            "piece {idx} starts at {lo}, expected {}",
                            breakpoints.last().unwrap()
                        )));
                    }
                    breakpoints.push(hi);
                    let coeffs = piece
                        .coeffs
                        .iter()
                        .map(|s| parse_rat(s))
                        .collect::<Result<Vec<_>>>()?;
                    polys.push(Polynomial::from_coeffs(coeffs));
                }
                PiecewisePoly::new(breakpoints, polys)
            }
        }
    }
}

impl KernelDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: KernelDocument =
            serde_json::from_str(text).map_err(|e| Error::SchemaViolation(e.to_string()))?;
        if doc.mode != "exact" && doc.mode != "numeric" {
            return Err(Error::SchemaViolation(format!(
                "mode must be \"exact\" or \"numeric\", got {:?}",
                doc.mode
            )));
        }
        if doc.mode == "numeric" && doc.tol.is_none() {
            return Err(Error::SchemaViolation(
                "numeric mode requires a tol field".into(),
            ));
        }
        Ok(doc)
    }

    pub fn to_kernel_spec(&self) -> Result<KernelSpec> {
        KernelSpec::new(
            self.phi1.to_piecewise()?,
            self.phi2.to_piecewise()?,
            self.psi1.to_piecewise()?,
            self.psi2.to_piecewise()?,
            self.n,
        )
    }

    pub fn is_numeric(&self) -> bool {
        self.mode == "numeric"
    }
}

/// Numeric-mode adapter: evaluate the parsed piecewise factors as floats.
pub struct NumericAdapter {
    phi1: PiecewisePoly,
    phi2: PiecewisePoly,
    psi1: PiecewisePoly,
    psi2: PiecewisePoly,
    n: usize,
}

impl NumericAdapter {
    pub fn from_document(doc: &KernelDocument) -> Result<Self> {
        // Positivity is validated the same way as the exact path.
        let spec = doc.to_kernel_spec()?;
        Ok(NumericAdapter {
            phi1: spec.phi1().clone(),
            phi2: spec.phi2().clone(),
            psi1: spec.psi1().clone(),
            psi2: spec.psi2().clone(),
            n: doc.n,
        })
    }

    pub fn phi1_f64(&self, y: f64) -> f64 {
        self.phi1.eval_f64(y)
    }

    /// Run the quadrature path over the piecewise factors.
    pub fn numeric_moments(&self, tol: f64) -> Result<NumericMomentTable> {
        let phi1 = |y| self.phi1.eval_f64(y);
        let phi2 = |y| self.phi2.eval_f64(y);
        let psi1 = |y| self.psi1.eval_f64(y);
        let psi2 = |y| self.psi2.eval_f64(y);
        let factors = NumericFactors {
            phi1: &phi1,
            phi2: &phi2,
            psi1: &psi1,
            psi2: &psi2,
            n: self.n,
        };
        crate::quad::numeric_moments(&factors, tol)
    }
}

/// Parse a JSON array of ascending rational coefficient strings.
pub fn parse_coeff_array(text: &str) -> Result<Polynomial> {
    let raw: Vec<String> =
        serde_json::from_str(text).map_err(|e| Error::SchemaViolation(e.to_string()))?;
    let coeffs = raw
        .iter()
        .map(|s| parse_rat(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::from_coeffs(coeffs))
}

/// A ready-made document for the constant kernel k = 2 (regression and
/// demo input).
pub fn constant_kernel_document(n: usize) -> KernelDocument {
    let one = FactorDoc::Pieces(vec![PieceDoc {
        on: ["0".into(), "1".into()],
        coeffs: vec!["1".into()],
    }]);
    KernelDocument {
        n,
        mode: "exact".into(),
        tol: None,
        phi1: one.clone(),
        phi2: one.clone(),
        psi1: one.clone(),
        psi2: one,
    }
}

/// The worked-example kernel family as a document:
/// phi1 = max(eps, -2x+1+eps), psi1 = 18,
/// phi2 = max(eps/3, (2x-1+eps)/3), psi2 = max(6, 272y-130).
pub fn example_kernel_document(
    eps: &Rat,
    n: usize,
    mode: &str,
    tol: Option<&str>,
) -> KernelDocument {
    let third = Rat::new(1.into(), 3.into());
    let r = |v: &Rat| v.to_string();
    KernelDocument {
        n,
        mode: mode.into(),
        tol: tol.map(|s| s.to_string()),
        phi1: FactorDoc::MaxAffine([[r(eps), "0".into()], [r(&(rat_i64(1) + eps)), "-2".into()]]),
        phi2: FactorDoc::MaxAffine([
            [r(&(eps * &third)), "0".into()],
            [r(&((eps - rat_i64(1)) * &third)), "2/3".into()],
        ]),
        psi1: FactorDoc::Pieces(vec![PieceDoc {
            on: ["0".into(), "1".into()],
            coeffs: vec!["18".into()],
        }]),
        psi2: FactorDoc::MaxAffine([["6".into(), "0".into()], ["-130".into(), "272".into()]]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::compute_moments;
    use crate::rat::ratio;

    #[test]
    fn document_roundtrip_preserves_moments() {
        let doc = example_kernel_document(&ratio(1, 5), 2, "exact", None);
        let text = serde_json::to_string(&doc).unwrap();
        let reparsed = KernelDocument::from_json(&text).unwrap();
        assert_eq!(doc, reparsed);
        let m1 = compute_moments(&doc.to_kernel_spec().unwrap()).unwrap();
        let m2 = compute_moments(&reparsed.to_kernel_spec().unwrap()).unwrap();
        assert_eq!(m1, m2);
    }

    #[test]
    fn piece_lists_must_chain() {
        let text = r#"{
            "n": 1, "mode": "exact",
            "phi1": {"pieces": [{"on": ["0", "1/2"], "coeffs": ["1"]},
                                 {"on": ["2/3", "1"], "coeffs": ["1"]}]},
            "phi2": {"pieces": [{"on": ["0", "1"], "coeffs": ["1"]}]},
            "psi1": {"pieces": [{"on": ["0", "1"], "coeffs": ["1"]}]},
            "psi2": {"pieces": [{"on": ["0", "1"], "coeffs": ["1"]}]}
        }"#;
        let doc = KernelDocument::from_json(text).unwrap();
        assert!(matches!(
            doc.to_kernel_spec(),
            Err(Error::SchemaViolation(_))
        ));
    }

    #[test]
    fn numeric_mode_requires_tol() {
        let mut doc = constant_kernel_document(2);
        doc.mode = "numeric".into();
        let text = serde_json::to_string(&doc).unwrap();
        assert!(KernelDocument::from_json(&text).is_err());
    }

    #[test]
    fn rejects_float_coefficients() {
        let text = r#"{
            "n": 1, "mode": "exact",
            "phi1": {"pieces": [{"on": ["0", "1"], "coeffs": ["1.5"]}]},
            "phi2": {"pieces": [{"on": ["0", "1"], "coeffs": ["1"]}]},
            "psi1": {"pieces": [{"on": ["0", "1"], "coeffs": ["1"]}]},
            "psi2": {"pieces": [{"on": ["0", "1"], "coeffs": ["1"]}]}
        }"#;
        let doc = KernelDocument::from_json(text).unwrap();
        assert!(matches!(doc.to_kernel_spec(), Err(Error::ParseRational(_))));
    }

    #[test]
    fn coeff_array_parsing() {
        let p = parse_coeff_array(r#"["-1", "0", "1"]"#).unwrap();
        assert_eq!(p, Polynomial::from_i64(&[-1, 0, 1]));
        assert!(parse_coeff_array("not json").is_err());
        assert!(parse_coeff_array(r#"["0.5"]"#).is_err());
    }

    #[test]
    fn numeric_adapter_matches_exact_eval() {
        let doc = example_kernel_document(&ratio(1, 5), 2, "exact", None);
        let adapter = NumericAdapter::from_document(&doc).unwrap();
        let spec = doc.to_kernel_spec().unwrap();
        for x in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let ex = crate::rat::parse_decimal(&x.to_string()).unwrap();
            let exact = crate::rat::to_f64(&spec.phi1().eval(&ex));
            assert!((adapter.phi1_f64(x) - exact).abs() < 1e-12);
        }
    }
}
