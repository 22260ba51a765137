use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact_arith::Rational;
use crate::field_core::ChargeSystem;

use super::AsymptoteError;

/// `mu_u = (-1)^u * sum_j a_j x_j^u` for `u = 0..=M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentVector {
    pub values: Vec<Rational>,
}

/// First index whose moment does not vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalIndex {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(serialize_with = "crate::serde_rational")]
    pub mu_l: Rational,
}

pub fn moments(sys: &ChargeSystem) -> MomentVector {
    let m = sys.len();
    let mut values = vec![Rational::zero(); m + 1];
    for c in sys.charges() {
        let mut pw = Rational::one();
        for v in values.iter_mut() {
            *v += &c.amplitude * &pw;
            pw *= -&c.position;
        }
    }
    MomentVector { values }
}

pub fn critical_index(sys: &ChargeSystem) -> Result<CriticalIndex, AsymptoteError> {
    let mv = moments(sys);
    mv.values
        .iter()
        .position(|v| !v.is_zero())
        .map(|l| CriticalIndex {
            l,
            mu_l: mv.values[l].clone(),
        })
        .ok_or(AsymptoteError::AllMomentsVanish(sys.len()))
}
