use serde::{Deserialize, Serialize};

use super::{Coset, EarsError, Progression, RootDatum, ShiftSet};
use crate::exactnum::json::{from_json_vec, to_json_vec, JsonRational};
use crate::exactnum::RatMatrix;

/// `{dim, form, cosets: [{rep, progressions}], isotropic_basis}`.
///
/// Scalars are integers or strings `"p/q"`. With an empty isotropic basis a
/// coset may omit `progressions`; otherwise an omitted list means every shift.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootDatumJson {
    pub dim: usize,
    pub form: Vec<Vec<JsonRational>>,
    pub cosets: Vec<CosetJson>,
    #[serde(default)]
    pub isotropic_basis: Vec<Vec<JsonRational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_period: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CosetJson {
    pub rep: Vec<JsonRational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub progressions: Option<Vec<Progression>>,
}

impl RootDatumJson {
    pub fn build(&self) -> Result<RootDatum, EarsError> {
        let form = RatMatrix::from_rows(self.form.iter().map(|r| from_json_vec(r)).collect())?;
        let basis: Vec<_> = self
            .isotropic_basis
            .iter()
            .map(|v| from_json_vec(v))
            .collect();
        let k = basis.len();
        let cosets = self
            .cosets
            .iter()
            .map(|c| {
                let shifts = match &c.progressions {
                    None => ShiftSet::all(k),
                    Some(p) => ShiftSet::from_progressions(k, p).map_err(EarsError::Malformed)?,
                };
                Ok(Coset {
                    rep: from_json_vec(&c.rep),
                    shifts,
                })
            })
            .collect::<Result<Vec<_>, EarsError>>()?;
        RootDatum::new(self.dim, form, basis, cosets, self.m_period)
    }
}

impl From<&RootDatum> for RootDatumJson {
    fn from(d: &RootDatum) -> Self {
        RootDatumJson {
            dim: d.dim(),
            form: d.form().as_rows().iter().map(|r| to_json_vec(r)).collect(),
            cosets: d
                .cosets()
                .iter()
                .map(|c| CosetJson {
                    rep: to_json_vec(&c.rep),
                    progressions: (c.shifts.rank() > 0).then(|| c.shifts.progressions()),
                })
                .collect(),
            isotropic_basis: d.isotropic_basis().iter().map(|v| to_json_vec(v)).collect(),
            m_period: d.m_period(),
        }
    }
}
