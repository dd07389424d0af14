//! Parsing of polytope references and weight descriptors given on the
//! command line.

use std::path::PathBuf;
use std::str::FromStr;

use crate::catalog;
use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::solve::{tian_zhu_field, xi_n, SolverConfig};
use crate::weights::Weight;

/// `catalog:<name>` or `file:<path.json>`.
#[derive(Clone, Debug, PartialEq)]
pub enum PolytopeRef {
    Catalog(String),
    File(PathBuf),
}

impl FromStr for PolytopeRef {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Some(name) = s.strip_prefix("catalog:") {
            catalog::entry(name).map_err(|e| e.to_string())?;
            Ok(PolytopeRef::Catalog(name.to_string()))
        } else if let Some(path) = s.strip_prefix("file:") {
            Ok(PolytopeRef::File(PathBuf::from(path)))
        } else {
            Err(format!("expected catalog:<name> or file:<path>, got {s:?}"))
        }
    }
}

impl PolytopeRef {
    pub fn load(&self) -> Result<Polytope> {
        match self {
            PolytopeRef::Catalog(name) => catalog::get(name),
            PolytopeRef::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                Polytope::from_json(&text)
            }
        }
    }
}

/// One entry of an N list: a number, or `a..b` for `a, 2a, 4a, ..` up to `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct NValues(pub Vec<f64>);

impl FromStr for NValues {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let Some((a, b)) = s.split_once("..") else {
            return float(s).map(|n| NValues(vec![n]));
        };
        let (a, b) = (float(a)?, float(b)?);
        if !(a > 0.0 && a <= b && b.is_finite()) {
            return Err(format!("range {s:?} needs 0 < a <= b"));
        }
        let mut out = Vec::new();
        let mut n = a;
        while n <= b {
            out.push(n);
            n *= 2.0;
        }
        Ok(NValues(out))
    }
}

/// A weight descriptor. Besides JSON (inline or `file:`), the shorthands are
///
/// * `const` or `const:<c>`
/// * `exp:<t1,..,tn>`
/// * `pow:<xi1,..,xin>:<p>` for `(<xi, x> + 1)^p`
/// * `qn:<xi1,..,xin>:<N>`
/// * `tkrs:<xi..>:<tau..>:<p>`
/// * `tz`, the exponential of the polytope's soliton field
/// * `xin:<N>`, the weight `q_N` at the polytope's `xi_N`
#[derive(Clone, Debug, PartialEq)]
pub enum WeightSpec {
    Explicit(Weight),
    File(PathBuf),
    SolitonField,
    XiN(f64),
}

fn floats(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

fn float(s: &str) -> std::result::Result<f64, String> {
    s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"))
}

impl FromStr for WeightSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s.starts_with('{') {
            return Weight::from_json(s).map(WeightSpec::Explicit).map_err(|e| e.to_string());
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(WeightSpec::File(PathBuf::from(path)));
        }
        let parts: Vec<&str> = s.split(':').collect();
        let w = match parts.as_slice() {
            ["const"] => Weight::constant(1.0),
            ["const", c] => Weight::constant(float(c)?),
            ["exp", t] => Weight::exp_linear(&floats(t)?),
            ["pow", xi, p] => Weight::pow_dual(&floats(xi)?, float(p)?),
            ["qn", xi, n] => Weight::qn(&floats(xi)?, float(n)?),
            ["tkrs", xi, tau, p] => Weight::tkrs(&floats(xi)?, &floats(tau)?, float(p)?),
            ["tz"] => return Ok(WeightSpec::SolitonField),
            ["xin", n] => return Ok(WeightSpec::XiN(float(n)?)),
            _ => return Err(format!("unrecognized weight {s:?}")),
        };
        w.validate().map_err(|e| e.to_string())?;
        Ok(WeightSpec::Explicit(w))
    }
}

impl WeightSpec {
    /// Builds the weight, solving for the field first when the descriptor
    /// refers to one.
    pub fn resolve(&self, p: &Polytope, cfg: &SolverConfig) -> Result<Weight> {
        let w = match self {
            WeightSpec::Explicit(w) => w.clone(),
            WeightSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                Weight::from_json(&text)?
            }
            WeightSpec::SolitonField => Weight::exp_linear(&tian_zhu_field(p, cfg)?.minimizer),
            WeightSpec::XiN(n) => Weight::qn(&xi_n(p, *n, cfg)?.minimizer, *n),
        };
        if let Some(d) = w.dim() {
            if d != p.dim() {
                return Err(Error::InvalidInput(format!(
                    "weight has dimension {d}, polytope has dimension {}",
                    p.dim()
                )));
            }
        }
        w.check_positive_on(p)?;
        Ok(w)
    }
}
