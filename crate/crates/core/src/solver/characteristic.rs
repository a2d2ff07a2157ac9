use crate::error::{ChaError, Result};
use crate::flux::FluxModel;
use crate::parametrization::InitialParametrization;

/// `S(t, yᵢ) = S0(yᵢ) + t f'(v0(yᵢ))`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicField<'a> {
    pub parametrization: &'a InitialParametrization,
    pub time: f64,
    pub s_t: Vec<f64>,
}

pub fn characteristic_map<'a>(
    parametrization: &'a InitialParametrization,
    flux: &FluxModel,
    t: f64,
) -> Result<CharacteristicField<'a>> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(ChaError::invalid(format!("time must be finite and non-negative, got {t}")));
    }
    let s_t = parametrization
        .s0
        .iter()
        .zip(&parametrization.v0)
        .map(|(&s, &v)| s + t * flux.fprime(v))
        .collect();
    Ok(CharacteristicField { parametrization, time: t, s_t })
}
