use crate::error::{Error, Result};

/// Physical constants threaded through every formula that carries
/// dimensional prefactors. Defaults are natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub epsilon: f64,
    pub mu: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            c: 1.0,
            epsilon: 1.0,
            mu: 1.0,
        }
    }
}

impl PhysicalConstants {
    pub fn new(hbar: f64, c: f64, epsilon: f64, mu: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("c", c), ("epsilon", epsilon), ("mu", mu)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be strictly positive, got {v}"
                )));
            }
        }
        Ok(Self {
            hbar,
            c,
            epsilon,
            mu,
        })
    }
}
