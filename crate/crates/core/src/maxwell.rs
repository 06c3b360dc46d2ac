//! Riemann-Silberstein composition, exact spectral time evolution, the
//! Jordan-Pauli initial-value propagator with a spherical-shell point
//! oracle, global observables, and region-leakage diagnostics.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::field::{ComplexField3, Domain};
use crate::grid::RegionSpec;
use crate::helicity::{apply_helicity, curl, helicity_project, HelicitySign};
use crate::quadrature::sphere_rule;
use num_complex::Complex64;
use serde::Serialize;

/// A Riemann-Silberstein field `F = D/sqrt(2 eps) + i B/sqrt(2 mu)` with
/// its constants and an evolution time tag.
#[derive(Debug, Clone)]
pub struct RSField {
    pub field: ComplexField3,
    pub constants: PhysicalConstants,
    pub t: f64,
}

const REALNESS_TOL: f64 = 1e-12;

/// Compose the RS field from real position-domain `D` and `B`.
pub fn rs_compose(
    d: &ComplexField3,
    b: &ComplexField3,
    pc: PhysicalConstants,
) -> Result<RSField> {
    d.check_same_grid(b)?;
    for (name, f) in [("D", d), ("B", b)] {
        let scale = f.max_abs().max(1.0);
        let im = f.to_domain(Domain::Position).max_imag();
        if im > REALNESS_TOL * scale {
            return Err(Error::NonRealInput(im / scale).into_invalid(name));
        }
    }
    let de = d
        .to_domain(Domain::Position)
        .scaled(Complex64::new(1.0 / (2.0 * pc.epsilon).sqrt(), 0.0));
    let bm = b
        .to_domain(Domain::Position)
        .scaled(Complex64::new(0.0, 1.0 / (2.0 * pc.mu).sqrt()));
    Ok(RSField {
        field: de.add(&bm)?,
        constants: pc,
        t: 0.0,
    })
}

impl Error {
    fn into_invalid(self, name: &str) -> Error {
        match self {
            Error::NonRealInput(v) => {
                Error::InvalidParameter(format!("{name} must be real (max |Im|/scale = {v:.3e})"))
            }
            e => e,
        }
    }
}

/// Recover `(D, B)` from the RS field: `D = sqrt(2 eps) (F + F*)/2`,
/// `B = sqrt(2 mu) (F - F*)/(2i)`.
pub fn rs_split(f: &RSField) -> (ComplexField3, ComplexField3) {
    let pos = f.field.to_domain(Domain::Position);
    let conj = pos.conj();
    let d = pos
        .add(&conj)
        .expect("same grid")
        .scaled(Complex64::new((2.0 * f.constants.epsilon).sqrt() / 2.0, 0.0));
    let b = pos
        .sub(&conj)
        .expect("same grid")
        .scaled(Complex64::new(0.0, -(2.0 * f.constants.mu).sqrt() / 2.0));
    (d, b)
}

/// Exact spectral evolution: the positive-helicity part picks up
/// `exp(-i c k t)`, the negative part `exp(+i c k t)`; equivalently
/// `F~(t) = cos(c k t) F~ + sin(c k t) (khat x F~)`, which solves
/// `dF/dt = -i c curl F`.
pub fn evolve(f: &RSField, t: f64) -> RSField {
    let c = f.constants.c;
    let out = f.field.map_spectral(|k, kmag, v| {
        if kmag == 0.0 {
            return v;
        }
        let theta = c * kmag * t;
        let (s, co) = theta.sin_cos();
        let cross = [
            (v[2] * k[1] - v[1] * k[2]) / kmag,
            (v[0] * k[2] - v[2] * k[0]) / kmag,
            (v[1] * k[0] - v[0] * k[1]) / kmag,
        ];
        [
            v[0] * co + cross[0] * s,
            v[1] * co + cross[1] * s,
            v[2] * co + cross[2] * s,
        ]
    });
    RSField {
        field: out,
        constants: f.constants,
        t: f.t + t,
    }
}

/// Spectral form of the Jordan-Pauli initial-value solution:
/// `D~(t) = cos(ckt) D~0 + sin(ckt)/(ck) (i k x B~0)/mu`,
/// `B~(t) = cos(ckt) B~0 - sin(ckt)/(ck) (i k x D~0)/eps`.
///
/// Linear in the initial data, so complex initial pairs (footprint
/// fields) evolve with the same formulas. `t = 0` returns the inputs
/// unchanged.
pub fn evolve_db(
    d0: &ComplexField3,
    b0: &ComplexField3,
    t: f64,
    pc: PhysicalConstants,
) -> Result<(ComplexField3, ComplexField3)> {
    d0.check_same_grid(b0)?;
    if t == 0.0 {
        return Ok((d0.clone(), b0.clone()));
    }
    let c = pc.c;
    let ds = d0.to_domain(Domain::Spectral);
    let bs = b0.to_domain(Domain::Spectral);
    let i = Complex64::new(0.0, 1.0);
    let grid = *d0.grid();
    let n = grid.n();
    let mut d_out = ds.clone();
    let mut b_out = bs.clone();
    for iz in 0..n {
        for iy in 0..n {
            for ix in 0..n {
                let s = grid.site(ix, iy, iz);
                let k = grid.wavevector(ix, iy, iz);
                let kmag = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
                let dv = [ds.get(0, s), ds.get(1, s), ds.get(2, s)];
                let bv = [bs.get(0, s), bs.get(1, s), bs.get(2, s)];
                if kmag == 0.0 {
                    continue;
                }
                let theta = c * kmag * t;
                let (sn, co) = theta.sin_cos();
                let coef = sn / (c * kmag);
                let curl_b = [
                    i * (k[1] * bv[2] - k[2] * bv[1]),
                    i * (k[2] * bv[0] - k[0] * bv[2]),
                    i * (k[0] * bv[1] - k[1] * bv[0]),
                ];
                let curl_d = [
                    i * (k[1] * dv[2] - k[2] * dv[1]),
                    i * (k[2] * dv[0] - k[0] * dv[2]),
                    i * (k[0] * dv[1] - k[1] * dv[0]),
                ];
                for cidx in 0..3 {
                    d_out.set(cidx, s, dv[cidx] * co + curl_b[cidx] * (coef / pc.mu));
                    b_out.set(cidx, s, bv[cidx] * co - curl_d[cidx] * (coef / pc.epsilon));
                }
            }
        }
    }
    Ok((
        d_out.to_domain(d0.domain()),
        b_out.to_domain(b0.domain()),
    ))
}

/// Point evaluation of the retarded-shell solution: the Jordan-Pauli
/// kernel turns the initial-value integral into spherical means over the
/// light sphere `|r - r'| = c t`,
/// `D(r,t) = d/dt [ t M_ct[D0] ](r) + t M_ct[curl B0](r)/mu`
/// (and the mirror formula for B), evaluated here by product quadrature
/// over the sphere with trilinear interpolation of the initial data.
pub fn kirchhoff_point(
    d0: &ComplexField3,
    b0: &ComplexField3,
    probe: [f64; 3],
    t: f64,
    pc: PhysicalConstants,
) -> Result<([Complex64; 3], [Complex64; 3])> {
    d0.check_same_grid(b0)?;
    let grid = *d0.grid();
    let radius = pc.c * t;
    if radius < 0.0 || radius >= grid.trusted_radius() {
        return Err(Error::InvalidParameter(format!(
            "c*t = {radius} outside the trusted radius {}",
            grid.trusted_radius()
        )));
    }
    let d_pos = d0.to_domain(Domain::Position);
    let b_pos = b0.to_domain(Domain::Position);
    if t == 0.0 {
        return Ok((d_pos.interpolate(probe), b_pos.interpolate(probe)));
    }
    let curl_d = curl(&d_pos).to_domain(Domain::Position);
    let curl_b = curl(&b_pos).to_domain(Domain::Position);

    // spherical means and their radial derivative (central difference)
    let rule = sphere_rule(26, 52);
    let mean = |f: &ComplexField3, rho: f64| -> [Complex64; 3] {
        let mut acc = [Complex64::default(); 3];
        for (dir, w) in &rule {
            let p = [
                probe[0] + rho * dir[0],
                probe[1] + rho * dir[1],
                probe[2] + rho * dir[2],
            ];
            let v = f.interpolate(p);
            for c in 0..3 {
                acc[c] += v[c] * *w;
            }
        }
        let inv = 1.0 / (4.0 * std::f64::consts::PI);
        [acc[0] * inv, acc[1] * inv, acc[2] * inv]
    };
    let h = (grid.dx() * 0.25).min(radius * 0.5);
    let c = pc.c;
    let mut d_out = [Complex64::default(); 3];
    let mut b_out = [Complex64::default(); 3];
    let m_d = mean(&d_pos, radius);
    let m_b = mean(&b_pos, radius);
    let m_d_p = mean(&d_pos, radius + h);
    let m_d_m = mean(&d_pos, radius - h);
    let m_b_p = mean(&b_pos, radius + h);
    let m_b_m = mean(&b_pos, radius - h);
    let m_cb = mean(&curl_b, radius);
    let m_cd = mean(&curl_d, radius);
    for i in 0..3 {
        let dmd = (m_d_p[i] - m_d_m[i]) / (2.0 * h);
        let dmb = (m_b_p[i] - m_b_m[i]) / (2.0 * h);
        // d/dt [t M_ct] = M_ct + t c dM/drho
        d_out[i] = m_d[i] + dmd * (t * c) + m_cb[i] * (t / pc.mu);
        b_out[i] = m_b[i] + dmb * (t * c) - m_cd[i] * (t / pc.epsilon);
    }
    Ok((d_out, b_out))
}

/// Global scalars of an RS field.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Observables {
    pub energy: f64,
    pub photon_number: f64,
    pub n_plus: f64,
    pub n_minus: f64,
    pub e_energy: f64,
    pub m_energy: f64,
}

/// Energy `int |F|^2`, the classical photon-number functional
/// `(1/hbar c) int d3k/(2pi)^3 |F~|^2 / k`, its helicity split, and the
/// electric/magnetic photon-energy split obtained from the d/b channel
/// decomposition `F = sqrt(hbar c) (P+ xi + P- xi*)`.
pub fn observables(f: &RSField) -> Observables {
    let pc = f.constants;
    let spec = f.field.to_domain(Domain::Spectral);
    let energy = spec.norm_sq();

    let number_of = |g: &ComplexField3| -> f64 {
        let grid = *g.grid();
        let n = grid.n();
        let mut acc = 0.0;
        for iz in 0..n {
            for iy in 0..n {
                for ix in 0..n {
                    let k = grid.wavevector(ix, iy, iz);
                    let kmag = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
                    if kmag == 0.0 {
                        continue;
                    }
                    let s = grid.site(ix, iy, iz);
                    let m2 = g.get(0, s).norm_sqr()
                        + g.get(1, s).norm_sqr()
                        + g.get(2, s).norm_sqr();
                    acc += m2 / kmag;
                }
            }
        }
        acc / (grid.volume() * pc.hbar * pc.c)
    };
    let plus = helicity_project(&spec, HelicitySign::Plus);
    let minus = helicity_project(&spec, HelicitySign::Minus);
    let n_plus = number_of(&plus);
    let n_minus = number_of(&minus);

    // d-channel amplitude xi = (P+ F + (P- F)*)/sqrt(hbar c), with the
    // conjugate taken pointwise in position space
    let plus_pos = plus.to_domain(Domain::Position);
    let minus_pos = minus.to_domain(Domain::Position);
    let xi = plus_pos
        .add(&minus_pos.conj())
        .expect("same grid")
        .scaled(Complex64::new(1.0 / (pc.hbar * pc.c).sqrt(), 0.0));
    let e_energy = 0.5 * pc.hbar * pc.c * xi.norm_sq();
    let m_energy = 0.5 * pc.hbar * pc.c * apply_helicity(&xi).norm_sq();

    Observables {
        energy,
        photon_number: n_plus + n_minus,
        n_plus,
        n_minus,
        e_energy,
        m_energy,
    }
}

/// Max `|f|` over lattice sites farther than `radius + expansion` from the
/// region center (minimum-image distance), normalized by the global max.
pub fn region_leakage(
    f: &ComplexField3,
    region: &RegionSpec,
    expansion: f64,
) -> Result<f64> {
    let pos = f.to_domain(Domain::Position);
    let grid = *pos.grid();
    let n = grid.n();
    let cutoff = region.radius + expansion;
    let mut exterior: f64 = -1.0;
    let mut global: f64 = 0.0;
    for iz in 0..n {
        for iy in 0..n {
            for ix in 0..n {
                let s = grid.site(ix, iy, iz);
                let m2 = pos.get(0, s).norm_sqr()
                    + pos.get(1, s).norm_sqr()
                    + pos.get(2, s).norm_sqr();
                global = global.max(m2);
                let dist = grid.min_image_distance(region.center, grid.position(ix, iy, iz));
                if dist > cutoff {
                    exterior = exterior.max(m2);
                }
            }
        }
    }
    if exterior < 0.0 {
        return Err(Error::EmptyExterior);
    }
    if global == 0.0 {
        return Ok(0.0);
    }
    Ok((exterior / global).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{plane_wave, random_transverse_field};
    use crate::grid::Grid;

    fn grid() -> Grid {
        Grid::new(16, 8.0).unwrap()
    }

    fn pc() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    fn real_transverse(g: Grid, seed: u64) -> ComplexField3 {
        crate::field::random_real_transverse_field(g, seed).to_domain(Domain::Position)
    }

    #[test]
    fn compose_split_roundtrip() {
        let g = grid();
        let d = real_transverse(g, 1);
        let b = real_transverse(g, 2);
        let f = rs_compose(&d, &b, pc()).unwrap();
        let (d2, b2) = rs_split(&f);
        assert!(d2.sub(&d).unwrap().max_abs() <= 1e-14 * d.max_abs());
        assert!(b2.sub(&b).unwrap().max_abs() <= 1e-14 * b.max_abs());
    }

    #[test]
    fn zero_fields_compose_to_zero() {
        let g = grid();
        let z = ComplexField3::zeros(g, Domain::Position);
        let f = rs_compose(&z, &z, pc()).unwrap();
        assert_eq!(f.field.norm(), 0.0);
    }

    #[test]
    fn real_d_only_gives_f_over_sqrt2() {
        let g = grid();
        let d = real_transverse(g, 3);
        let z = ComplexField3::zeros(g, Domain::Position);
        let f = rs_compose(&d, &z, pc()).unwrap();
        let expect = d.scaled(Complex64::new(1.0 / 2.0f64.sqrt(), 0.0));
        assert!(f.field.sub(&expect).unwrap().max_abs() <= 1e-14 * d.max_abs());
    }

    #[test]
    fn compose_rejects_complex_input() {
        let g = grid();
        let c = random_transverse_field(g, 4).to_domain(Domain::Position);
        let z = ComplexField3::zeros(g, Domain::Position);
        assert!(rs_compose(&c, &z, pc()).is_err());
    }

    #[test]
    fn evolve_at_zero_time_is_identity() {
        let g = grid();
        let f = RSField {
            field: random_transverse_field(g, 5),
            constants: pc(),
            t: 0.0,
        };
        let e = evolve(&f, 0.0);
        assert!(e.field.sub(&f.field).unwrap().norm() <= 1e-15);
    }

    #[test]
    fn positive_helicity_wave_gets_retarded_phase() {
        let g = grid();
        let s = 1.0 / 2.0f64.sqrt();
        let ep = [
            Complex64::new(s, 0.0),
            Complex64::new(0.0, s),
            Complex64::default(),
        ];
        let f = RSField {
            field: plane_wave(g, [0, 0, 4], ep),
            constants: pc(),
            t: 0.0,
        };
        let k0 = 2.0 * std::f64::consts::PI / g.length() * 4.0;
        let t = 0.37;
        let e = evolve(&f, t);
        let expect = f.field.scaled(Complex64::new(0.0, -k0 * t).exp());
        assert!(e.field.sub(&expect).unwrap().norm() <= 1e-12 * expect.norm());
    }

    #[test]
    fn evolution_satisfies_rs_maxwell_equation() {
        // finite difference in t against dF/dt = -i c curl F
        let g = grid();
        let f = RSField {
            field: random_transverse_field(g, 6),
            constants: pc(),
            t: 0.0,
        };
        let mut errs = Vec::new();
        for h in [1e-3, 5e-4] {
            let fp = evolve(&f, h);
            let fm = evolve(&f, -h);
            let deriv = fp
                .field
                .sub(&fm.field)
                .unwrap()
                .scaled(Complex64::new(1.0 / (2.0 * h), 0.0));
            let rhs = curl(&f.field).scaled(Complex64::new(0.0, -1.0));
            errs.push(deriv.sub(&rhs).unwrap().norm());
        }
        // O(h^2) Taylor remainder: halving h divides the error by ~4
        assert!(errs[0] < 1e-4);
        assert!(errs[1] < errs[0] / 3.0);
    }

    #[test]
    fn evolution_group_property_and_unitarity() {
        let g = grid();
        let f = RSField {
            field: random_transverse_field(g, 7),
            constants: pc(),
            t: 0.0,
        };
        let a = evolve(&evolve(&f, 0.4), 0.7);
        let b = evolve(&f, 1.1);
        assert!(a.field.sub(&b.field).unwrap().norm() <= 1e-12 * f.field.norm());
        assert!((a.field.norm() - f.field.norm()).abs() <= 1e-12 * f.field.norm());
    }

    #[test]
    fn evolve_db_matches_rs_path() {
        let g = grid();
        let d = real_transverse(g, 8);
        let b = real_transverse(g, 9);
        let t = 0.83;
        let f = rs_compose(&d, &b, pc()).unwrap();
        let (d_rs, b_rs) = rs_split(&evolve(&f, t));
        let (d_jp, b_jp) = evolve_db(&d, &b, t, pc()).unwrap();
        let scale = d.norm().max(b.norm());
        assert!(d_jp.sub(&d_rs).unwrap().norm() <= 1e-12 * scale);
        assert!(b_jp.sub(&b_rs).unwrap().norm() <= 1e-12 * scale);
    }

    #[test]
    fn evolve_db_zero_time_and_cosine_mode() {
        let g = grid();
        let d = real_transverse(g, 10);
        let z = ComplexField3::zeros(g, Domain::Position);
        let (d0, b0) = evolve_db(&d, &z, 0.0, pc()).unwrap();
        assert!(d0.sub(&d).unwrap().norm() == 0.0);
        assert!(b0.norm() == 0.0);
        // B0 = 0, plane-wave D0: D(t) oscillates as cos(ckt) in that mode
        let dw = plane_wave(
            g,
            [0, 0, 3],
            [
                Complex64::new(1.0, 0.0),
                Complex64::default(),
                Complex64::default(),
            ],
        );
        let dwr = dw.add(&dw.conj()).unwrap().scaled(Complex64::new(0.5, 0.0));
        let k0 = 2.0 * std::f64::consts::PI / g.length() * 3.0;
        let t = 0.42;
        let (dt, _) = evolve_db(&dwr, &z, t, pc()).unwrap();
        let expect = dwr.scaled(Complex64::new((k0 * t).cos(), 0.0));
        assert!(dt.sub(&expect).unwrap().norm() <= 1e-12 * expect.norm());
    }

    #[test]
    fn observables_of_single_mode() {
        let g = grid();
        let s = 1.0 / 2.0f64.sqrt();
        let amp = 0.7;
        let ep = [
            Complex64::new(s * amp, 0.0),
            Complex64::new(0.0, s * amp),
            Complex64::default(),
        ];
        let f = RSField {
            field: plane_wave(g, [0, 0, 4], ep),
            constants: pc(),
            t: 0.0,
        };
        let k0 = 2.0 * std::f64::consts::PI / g.length() * 4.0;
        let v = g.volume();
        let obs = observables(&f);
        let energy_expect = amp * amp * v;
        let number_expect = amp * amp * v / k0;
        assert!((obs.energy - energy_expect).abs() <= 1e-12 * energy_expect);
        assert!((obs.photon_number - number_expect).abs() <= 1e-12 * number_expect);
        assert!(obs.n_minus.abs() <= 1e-12 * number_expect);
        assert!((obs.n_plus - number_expect).abs() <= 1e-12 * number_expect);
        // photon electric and magnetic energies are equal and sum to the total
        assert!((obs.e_energy - obs.m_energy).abs() <= 1e-12 * obs.energy);
        assert!((obs.e_energy + obs.m_energy - obs.energy).abs() <= 1e-12 * obs.energy);
    }

    #[test]
    fn observables_of_zero_field() {
        let g = grid();
        let f = RSField {
            field: ComplexField3::zeros(g, Domain::Position),
            constants: pc(),
            t: 0.0,
        };
        let obs = observables(&f);
        assert_eq!(obs.energy, 0.0);
        assert_eq!(obs.photon_number, 0.0);
    }

    #[test]
    fn conserved_quantities_under_evolution() {
        let g = grid();
        let f = RSField {
            field: random_transverse_field(g, 12),
            constants: pc(),
            t: 0.0,
        };
        let before = observables(&f);
        let after = observables(&evolve(&f, 1.373));
        assert!((before.energy - after.energy).abs() <= 1e-12 * before.energy);
        assert!(
            (before.photon_number - after.photon_number).abs()
                <= 1e-12 * before.photon_number
        );
        assert!((before.n_plus - after.n_plus).abs() <= 1e-12 * before.photon_number);
        assert!((before.n_minus - after.n_minus).abs() <= 1e-12 * before.photon_number);
    }

    #[test]
    fn leakage_of_compactly_supported_field() {
        let g = Grid::new(32, 16.0).unwrap();
        let region = RegionSpec::new([0.0; 3], 2.0, &g).unwrap();
        let f = ComplexField3::from_position_fn(g, |r| {
            let d2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
            let v = if d2 < 4.0 { (4.0 - d2).powi(2) } else { 0.0 };
            [
                Complex64::new(v, 0.0),
                Complex64::default(),
                Complex64::default(),
            ]
        });
        assert_eq!(region_leakage(&f, &region, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn leakage_rejects_empty_exterior() {
        let g = Grid::new(8, 4.0).unwrap();
        let region = RegionSpec::new([0.0; 3], 1.9, &g).unwrap();
        let f = ComplexField3::zeros(g, Domain::Position);
        // expansion pushes the cutoff beyond every lattice site
        assert!(region_leakage(&f, &region, 10.0).is_err());
    }

    #[test]
    fn kirchhoff_at_zero_time_returns_initial_values() {
        let g = Grid::new(32, 16.0).unwrap();
        let d = real_transverse(g, 20);
        let z = ComplexField3::zeros(g, Domain::Position);
        let probe = [0.3, -0.6, 0.9];
        let (dv, bv) = kirchhoff_point(&d, &z, probe, 0.0, pc()).unwrap();
        let di = d.to_domain(Domain::Position).interpolate(probe);
        for c in 0..3 {
            assert!((dv[c] - di[c]).norm() < 1e-14);
            assert!(bv[c].norm() < 1e-14);
        }
    }
}
