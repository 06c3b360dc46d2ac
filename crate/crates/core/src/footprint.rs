//! One-photon localization footprints and Cook number densities.
//!
//! A compactly supported wave function used as the electric (magnetic)
//! amplitude of a one-photon state imprints a magnetic (electric) field
//! pattern that is a local curl — exactly zero outside the support —
//! while the complementary pattern involves the helicity transform and
//! spreads over all space. The localized member of each pair is sampled
//! from the analytic curl so its exterior zeros are exact, not
//! spectrally truncated.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::field::{ComplexField3, Domain};
use crate::grid::{Grid, RegionSpec};
use crate::helicity::{apply_helicity, curl, riesz_smooth_preset, RieszPreset};
use crate::wavefunction::WaveFunction;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FootprintFlavor {
    /// Created through the electric channel: magnetic footprint local,
    /// electric footprint delocalized.
    MagneticallyLocalized,
    /// Created through the magnetic channel: electric footprint local,
    /// magnetic footprint delocalized.
    ElectricallyLocalized,
}

/// First-order field patterns of a one-photon state.
#[derive(Debug, Clone)]
pub struct FootprintPair {
    pub e_fp: ComplexField3,
    pub b_fp: ComplexField3,
    pub flavor: FootprintFlavor,
    pub region: RegionSpec,
}

/// Build the footprint pair of the state created from the compact wave
/// function `w` (which must carry its analytic bump source so the local
/// curl can be evaluated with exact exterior zeros).
///
/// Magnetically localized: `b_fp = -i sqrt(hbar c mu / 2) curl(psi)`,
/// `e_fp = sqrt(hbar c eps / 2) curl(chi psi)`. Electrically localized:
/// `e_fp = i sqrt(hbar c eps / 2) curl(psi)`,
/// `b_fp = sqrt(hbar c mu / 2) curl(chi psi)`.
pub fn footprints(
    w: &WaveFunction,
    flavor: FootprintFlavor,
    region: &RegionSpec,
    pc: PhysicalConstants,
) -> Result<FootprintPair> {
    let source = w
        .source()
        .ok_or_else(|| Error::NonCompactInput("no analytic bump source".into()))?;
    if !source.supported_in(region.center, region.radius) {
        return Err(Error::NonCompactInput(format!(
            "support exceeds the ball of radius {} around {:?}",
            region.radius, region.center
        )));
    }
    let grid = *w.grid();
    let local_curl = source.sample_curl(grid);
    let nonlocal = curl(&apply_helicity(&w.field)).to_domain(Domain::Position);
    let root_e = (pc.hbar * pc.c * pc.epsilon / 2.0).sqrt();
    let root_m = (pc.hbar * pc.c * pc.mu / 2.0).sqrt();
    let (e_fp, b_fp) = match flavor {
        FootprintFlavor::MagneticallyLocalized => (
            nonlocal.scaled(Complex64::new(root_e, 0.0)),
            local_curl.scaled(Complex64::new(0.0, -root_m)),
        ),
        FootprintFlavor::ElectricallyLocalized => (
            local_curl.scaled(Complex64::new(0.0, root_e)),
            nonlocal.scaled(Complex64::new(root_m, 0.0)),
        ),
    };
    Ok(FootprintPair {
        e_fp,
        b_fp,
        flavor,
        region: *region,
    })
}

/// Scalar Cook number densities of a normalized one-photon state.
#[derive(Debug, Clone)]
pub struct NumberDensity {
    grid: Grid,
    pub n_electric: Vec<f64>,
    pub n_magnetic: Vec<f64>,
}

impl NumberDensity {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn electric_total(&self) -> f64 {
        self.n_electric.iter().sum::<f64>() * self.grid.dv()
    }

    pub fn magnetic_total(&self) -> f64 {
        self.n_magnetic.iter().sum::<f64>() * self.grid.dv()
    }
}

/// Cook densities: `n_magnetic = |Cook(-i curl phi)|^2` and
/// `n_electric = |Cook(K phi)|^2` with `K = |k| P_T = curl chi`. Each
/// integrates to one half for a normalized wave function.
pub fn number_density(w: &WaveFunction) -> Result<NumberDensity> {
    let value = crate::wavefunction::norm_functional(&w.field);
    if (value - 1.0).abs() > 1e-10 {
        return Err(Error::Unnormalized(value));
    }
    let grid = *w.grid();
    let b_channel = curl(&w.field).scaled(Complex64::new(0.0, -1.0));
    let d_channel = w.field.map_spectral(|k, kmag, v| {
        if kmag == 0.0 {
            return [Complex64::default(); 3];
        }
        let k2 = kmag * kmag;
        let kdotv = (v[0] * k[0] + v[1] * k[1] + v[2] * k[2]) / k2;
        [
            (v[0] - kdotv * k[0]) * kmag,
            (v[1] - kdotv * k[1]) * kmag,
            (v[2] - kdotv * k[2]) * kmag,
        ]
    });
    let density = |f: &ComplexField3| -> Vec<f64> {
        let smoothed = riesz_smooth_preset(f, RieszPreset::Cook).to_domain(Domain::Position);
        (0..grid.sites())
            .map(|s| {
                smoothed.get(0, s).norm_sqr()
                    + smoothed.get(1, s).norm_sqr()
                    + smoothed.get(2, s).norm_sqr()
            })
            .collect()
    };
    Ok(NumberDensity {
        grid,
        n_electric: density(&d_channel),
        n_magnetic: density(&b_channel),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bump::BumpProfile;
    use crate::maxwell::region_leakage;
    use crate::wavefunction::{
        bump_wavefunction, bump_wavefunction_with_profile, nloc_wavefunction, normalize, Flavor,
        WaveFunction,
    };

    fn pc() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    #[test]
    fn magnetic_footprint_is_exactly_local_electric_is_not() {
        let g = Grid::new(64, 16.0).unwrap();
        let region = RegionSpec::new([0.0; 3], 2.0, &g).unwrap();
        let w = bump_wavefunction(&region, [0.0, 0.0, 1.0], g).unwrap();
        let pair = footprints(&w, FootprintFlavor::MagneticallyLocalized, &region, pc()).unwrap();
        let b_leak = region_leakage(&pair.b_fp, &region, 0.0).unwrap();
        let e_leak = region_leakage(&pair.e_fp, &region, 0.0).unwrap();
        assert!(b_leak <= 1e-10, "b leakage {b_leak}");
        assert!(e_leak >= 1e-2, "e leakage {e_leak}");
    }

    #[test]
    fn electric_flavor_mirrors_roles_with_the_duality_factor_map() {
        let g = Grid::new(64, 16.0).unwrap();
        let region = RegionSpec::new([0.0; 3], 2.0, &g).unwrap();
        let w = bump_wavefunction(&region, [0.3, -0.1, 0.9], g).unwrap();
        let mag = footprints(&w, FootprintFlavor::MagneticallyLocalized, &region, pc()).unwrap();
        let elec = footprints(&w, FootprintFlavor::ElectricallyLocalized, &region, pc()).unwrap();
        // with eps = mu = 1: e_fp(elec) = -b_fp(mag), b_fp(elec) = e_fp(mag)
        let d1 = elec.e_fp.add(&mag.b_fp).unwrap();
        assert!(d1.norm() <= 1e-13 * mag.b_fp.norm());
        let d2 = elec.b_fp.sub(&mag.e_fp).unwrap();
        assert!(d2.norm() <= 1e-13 * mag.e_fp.norm());
        // and the localized side swapped
        let e_leak = region_leakage(&elec.e_fp, &region, 0.0).unwrap();
        let b_leak = region_leakage(&elec.b_fp, &region, 0.0).unwrap();
        assert!(e_leak <= 1e-10);
        assert!(b_leak >= 1e-2);
    }

    #[test]
    fn footprints_require_a_compact_source() {
        let g = Grid::new(16, 8.0).unwrap();
        let region = RegionSpec::new([0.0; 3], 2.0, &g).unwrap();
        let w = WaveFunction::from_field(
            crate::field::random_transverse_field(g, 4),
            Flavor::Electric,
        );
        assert!(matches!(
            footprints(&w, FootprintFlavor::MagneticallyLocalized, &region, pc()),
            Err(Error::NonCompactInput(_))
        ));
        // compact source but region too small
        let small = RegionSpec::new([0.0; 3], 1.0, &g).unwrap();
        let wr = bump_wavefunction(&RegionSpec::new([0.0; 3], 2.0, &g).unwrap(), [0.0, 0.0, 1.0], g)
            .unwrap();
        assert!(footprints(&wr, FootprintFlavor::MagneticallyLocalized, &small, pc()).is_err());
    }

    #[test]
    fn number_density_halves_for_any_normalized_state() {
        let g = Grid::new(16, 8.0).unwrap();
        for seed in [2, 9] {
            let f = crate::field::random_transverse_field(g, seed);
            let w = normalize(&WaveFunction::from_field(f, Flavor::Electric)).unwrap();
            let nd = number_density(&w).unwrap();
            let e = nd.electric_total();
            let m = nd.magnetic_total();
            assert!((e - 0.5).abs() <= 1e-10, "electric total {e}");
            assert!((m - 0.5).abs() <= 1e-10, "magnetic total {m}");
            assert!((e + m - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn number_density_rejects_unnormalized_input() {
        let g = Grid::new(16, 8.0).unwrap();
        let f = crate::field::random_transverse_field(g, 3).scaled(Complex64::new(2.0, 0.0));
        let w = WaveFunction::from_field(f, Flavor::Electric);
        assert!(matches!(number_density(&w), Err(Error::Unnormalized(_))));
    }

    #[test]
    fn nloc_state_reproduces_the_compact_density() {
        // phi = curl(NLOC psi_R) makes the magnetic Cook density collapse
        // onto |psi_R|^2 while the electric density keeps an exterior tail
        let g = Grid::new(64, 16.0).unwrap();
        let region = RegionSpec::new([0.0; 3], 4.0, &g).unwrap();
        let psi = bump_wavefunction_with_profile(
            &region,
            [0.0, 0.0, 1.0],
            g,
            BumpProfile::SMOOTH,
        )
        .unwrap();
        let phi = normalize(&nloc_wavefunction(&psi)).unwrap();
        let nd = number_density(&phi).unwrap();

        // target: |psi(r)|^2 scaled so that it integrates to 1/2
        let pos = psi.field.to_domain(Domain::Position);
        let mut target: Vec<f64> = (0..g.sites())
            .map(|s| {
                pos.get(0, s).norm_sqr() + pos.get(1, s).norm_sqr() + pos.get(2, s).norm_sqr()
            })
            .collect();
        let total: f64 = target.iter().sum::<f64>() * g.dv();
        for v in target.iter_mut() {
            *v *= 0.5 / total;
        }

        let peak = target.iter().cloned().fold(0.0, f64::max);
        let mut worst_inside = 0.0f64;
        let mut worst_outside = 0.0f64;
        let mut exterior_electric = 0.0f64;
        for iz in 0..g.n() {
            for iy in 0..g.n() {
                for ix in 0..g.n() {
                    let s = g.site(ix, iy, iz);
                    let r = g.position(ix, iy, iz);
                    let dist = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
                    if dist <= region.radius {
                        worst_inside = worst_inside.max((nd.n_magnetic[s] - target[s]).abs());
                    } else {
                        worst_outside = worst_outside.max(nd.n_magnetic[s]);
                        exterior_electric = exterior_electric.max(nd.n_electric[s]);
                    }
                }
            }
        }
        assert!(worst_inside <= 1e-3 * peak, "inside {}", worst_inside / peak);
        assert!(
            worst_outside <= 1e-8 * peak,
            "outside {}",
            worst_outside / peak
        );
        // the electric density is delocalized: its exterior tail is far
        // above the magnetic floor
        assert!(exterior_electric > 1e3 * worst_outside.max(1e-300));
        // totals still one half each
        assert!((nd.electric_total() - 0.5).abs() <= 1e-10);
        assert!((nd.magnetic_total() - 0.5).abs() <= 1e-10);
    }
}
