//! Wire format for exact series.
//!
//! A series serializes to `{"field": tag, "pairs": [[doubled_exponent,
//! coeff_string], …], "trunc": doubled_T}` with coefficients as exact
//! fraction strings ("n/d", or ';'-joined power-basis components for field
//! elements). `"trunc": null` marks an exact Laurent polynomial.

use crate::field::{FieldElement, NumberField};
use crate::series::{HalfLaurentSeries, Trunc};
use crate::{CoreError, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesJson {
    pub field: String,
    pub pairs: Vec<(i64, String)>,
    pub trunc: Option<i64>,
}

pub fn series_to_json(s: &HalfLaurentSeries) -> SeriesJson {
    SeriesJson {
        field: s.field().tag().to_string(),
        pairs: s.iter().map(|(&e, c)| (e, c.to_coeff_string())).collect(),
        trunc: s.trunc().order(),
    }
}

pub fn series_from_json(j: &SeriesJson) -> Result<HalfLaurentSeries> {
    let field = NumberField::from_tag(&j.field)?;
    let trunc = match j.trunc {
        Some(t) => Trunc::Order(t),
        None => Trunc::Entire,
    };
    let mut s = HalfLaurentSeries::zero(field, trunc);
    for (e, cs) in &j.pairs {
        if !trunc.covers(*e) {
            return Err(CoreError::Parse(format!(
                "stored exponent {e} exceeds declared truncation"
            )));
        }
        s.set_coeff(*e, FieldElement::from_coeff_string(field, cs)?);
    }
    Ok(s)
}

pub fn series_to_json_string(s: &HalfLaurentSeries) -> String {
    serde_json::to_string(&series_to_json(s)).expect("series JSON cannot fail")
}

pub fn series_from_json_str(text: &str) -> Result<HalfLaurentSeries> {
    let j: SeriesJson =
        serde_json::from_str(text).map_err(|e| CoreError::Parse(format!("bad series JSON: {e}")))?;
    series_from_json(&j)
}
