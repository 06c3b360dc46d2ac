//! Coherent-state mean fields.
//!
//! Displacing the vacuum with compactly supported real smearing
//! functions `alpha` (paired with the electric field) and `beta` (with
//! the magnetic field) produces mean fields that are single curls of
//! those functions — compact, and remaining inside the light-expanded
//! region under evolution. The commutator algebra fixes the pairing and
//! signs: `<D> = -hbar curl(beta)`, `<B> = +hbar curl(alpha)`.

use crate::bump::BumpField;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::field::ComplexField3;
use crate::grid::{Grid, RegionSpec};
use num_complex::Complex64;

/// Mean electric and magnetic fields of the coherent state displaced by
/// compact `alpha`, `beta`, sampled from their analytic curls so the
/// exterior zeros are exact.
pub fn coherent_expectation(
    alpha: &BumpField,
    beta: &BumpField,
    region: &RegionSpec,
    grid: Grid,
    pc: PhysicalConstants,
) -> Result<(ComplexField3, ComplexField3)> {
    for (name, f) in [("alpha", alpha), ("beta", beta)] {
        if !f.supported_in(region.center, region.radius) {
            return Err(Error::NonCompactInput(format!(
                "{name} exceeds the localization region"
            )));
        }
    }
    let d_mean = beta
        .sample_curl(grid)
        .scaled(Complex64::new(-pc.hbar, 0.0));
    let b_mean = alpha.sample_curl(grid).scaled(Complex64::new(pc.hbar, 0.0));
    Ok((d_mean, b_mean))
}
