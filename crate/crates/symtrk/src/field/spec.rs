//! Declarative field description: characteristic plus a list of extension
//! steps, each a monic modulus given as coefficients in ascending order
//! (constant first). Coefficients are nested lists mirroring the tower below,
//! or bare integers embedded via n * 1.

use super::{Elt, Field, FieldError};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffSpec {
    Int(u64),
    List(Vec<CoeffSpec>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub tower: Vec<Vec<CoeffSpec>>,
}

impl FieldSpec {
    pub fn prime(p: u64) -> FieldSpec {
        FieldSpec { p, tower: Vec::new() }
    }

    pub fn build(&self) -> Result<Field, FieldError> {
        let mut f = Field::prime(self.p)?;
        for (step, coeffs) in self.tower.iter().enumerate() {
            let elts: Result<Vec<Elt>, FieldError> = coeffs
                .iter()
                .map(|c| coeff_to_elt(&f, c, step))
                .collect();
            f = f.extend(&elts?)?;
        }
        Ok(f)
    }
}

fn coeff_to_elt(f: &Field, c: &CoeffSpec, step: usize) -> Result<Elt, FieldError> {
    match c {
        CoeffSpec::Int(n) => Ok(f.from_u64(*n)),
        CoeffSpec::List(items) => {
            if f.height() == 0 {
                return Err(FieldError::BadCoefficient {
                    step,
                    detail: "nested list at the prime level".into(),
                });
            }
            let d = f.ext_degree();
            if items.len() != d {
                return Err(FieldError::BadCoefficient {
                    step,
                    detail: format!("expected {d} coordinates, found {}", items.len()),
                });
            }
            let base = f.base();
            let coords: Result<Vec<Elt>, FieldError> = items
                .iter()
                .map(|i| coeff_to_elt(&base, i, step))
                .collect();
            Ok(f.from_coords(&coords?))
        }
    }
}

impl Field {
    /// The spec that rebuilds this view's tower, with fully nested
    /// coefficient lists (constant-first at every level).
    pub fn spec(&self) -> FieldSpec {
        fn repr_to_spec(r: &super::Repr) -> CoeffSpec {
            match r {
                super::Repr::Prime(v) => CoeffSpec::Int(*v),
                super::Repr::Ext(coords) => {
                    CoeffSpec::List(coords.iter().map(repr_to_spec).collect())
                }
            }
        }
        let tower = self.inner.steps[..self.top]
            .iter()
            .map(|s| s.modulus.iter().map(repr_to_spec).collect())
            .collect();
        FieldSpec {
            p: self.inner.p,
            tower,
        }
    }
}
