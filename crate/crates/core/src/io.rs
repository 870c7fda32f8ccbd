//! JSON interchange format for two-atom states:
//! `{"basis":"canonical-f1f2f3f4","re":[16 numbers],"im":[16 numbers]}`,
//! both arrays row-major over f₁…f₄.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{DensityMatrix4, Tolerances};

pub const BASIS_TAG: &str = "canonical-f1f2f3f4";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub basis: String,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&DensityMatrix4> for StateJson {
    fn from(rho: &DensityMatrix4) -> Self {
        let m = rho.matrix();
        let entries = (0..16).map(|k| m[(k / 4, k % 4)]);
        Self {
            basis: BASIS_TAG.to_string(),
            re: entries.clone().map(|z| z.re).collect(),
            im: entries.map(|z| z.im).collect(),
        }
    }
}

impl StateJson {
    pub fn to_state(&self, tol: Tolerances) -> Result<DensityMatrix4> {
        if self.basis != BASIS_TAG {
            return Err(Error::Format(format!(
                "unsupported basis {:?}, expected {BASIS_TAG:?}",
                self.basis
            )));
        }
        if self.re.len() != 16 || self.im.len() != 16 {
            return Err(Error::Format(format!(
                "expected 16 real and 16 imaginary parts, found {} and {}",
                self.re.len(),
                self.im.len()
            )));
        }
        let m = Matrix4::from_fn(|i, j| Complex64::new(self.re[4 * i + j], self.im[4 * i + j]));
        DensityMatrix4::with_tolerances(m, tol)
    }
}

pub fn state_to_json(rho: &DensityMatrix4) -> String {
    serde_json::to_string(&StateJson::from(rho)).expect("state serializes")
}

pub fn state_from_json(text: &str) -> Result<DensityMatrix4> {
    let parsed: StateJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    parsed.to_state(Tolerances::default())
}
