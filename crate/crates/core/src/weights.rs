//! Vertex weight sequences for weighted component functionals.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::degrees::ScalingConstants;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub label: String,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum WeightRule {
    Const(f64),
    DegreeIndicator(u32),
    File(PathBuf),
}

impl FromStr for WeightRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("weight rule `{s}` lacks a `kind:` prefix")))?;
        match kind {
            "const" => arg
                .parse()
                .map(WeightRule::Const)
                .map_err(|_| Error::Parse(format!("bad constant in `{s}`"))),
            "degree_indicator" => arg
                .parse()
                .map(WeightRule::DegreeIndicator)
                .map_err(|_| Error::Parse(format!("bad degree in `{s}`"))),
            "file" => Ok(WeightRule::File(PathBuf::from(arg))),
            _ => Err(Error::Parse(format!("unknown weight rule `{kind}`"))),
        }
    }
}

/// Weight diagnostics on the `a_n` scale.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightDiagnostics {
    pub mu_w_hat: f64,
    pub mean_weight: f64,
    pub d_w_sq_over_a3: f64,
    pub d_sq_w_over_a3: f64,
}

impl WeightSpec {
    pub fn from_rule(label: impl Into<String>, rule: &WeightRule, degrees: &[u32]) -> Result<Self> {
        let values = match rule {
            WeightRule::Const(c) => vec![*c; degrees.len()],
            WeightRule::DegreeIndicator(k) => degrees.iter().map(|&d| if d == *k { 1.0 } else { 0.0 }).collect(),
            WeightRule::File(p) => read_weight_file(p)?,
        };
        let spec = WeightSpec { label: label.into(), values };
        spec.check_len(degrees.len())?;
        Ok(spec)
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.values.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: self.values.len() });
        }
        if self.values.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidParameter(format!("weights `{}` must be finite and non-negative", self.label)));
        }
        Ok(())
    }

    pub fn diagnostics(&self, degrees: &[u32], consts: &ScalingConstants) -> Result<WeightDiagnostics> {
        self.check_len(degrees.len())?;
        let ell: f64 = degrees.iter().map(|&d| d as f64).sum();
        if ell == 0.0 {
            return Err(Error::EmptyDegrees);
        }
        let a3 = consts.a_n.powi(3);
        let (mut dw, mut dww, mut ddw, mut w) = (0.0, 0.0, 0.0, 0.0);
        for (&d, &x) in degrees.iter().zip(&self.values) {
            let d = d as f64;
            dw += d * x;
            dww += d * x * x;
            ddw += d * d * x;
            w += x;
        }
        Ok(WeightDiagnostics {
            mu_w_hat: dw / ell,
            mean_weight: w / degrees.len() as f64,
            d_w_sq_over_a3: dww / a3,
            d_sq_w_over_a3: ddw / a3,
        })
    }
}

fn read_weight_file(p: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(p)?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.parse::<f64>().map_err(|_| Error::Parse(format!("bad weight `{l}`"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules_parse() {
        assert_eq!("const:1.5".parse::<WeightRule>().unwrap(), WeightRule::Const(1.5));
        assert_eq!("degree_indicator:1".parse::<WeightRule>().unwrap(), WeightRule::DegreeIndicator(1));
        assert!("bogus:1".parse::<WeightRule>().is_err());
        assert!("const".parse::<WeightRule>().is_err());
    }

    #[test]
    fn indicator_values() {
        let w = WeightSpec::from_rule("v1", &WeightRule::DegreeIndicator(1), &[3, 1, 2, 1]).unwrap();
        assert_eq!(w.values, vec![0.0, 1.0, 0.0, 1.0]);
    }
}
