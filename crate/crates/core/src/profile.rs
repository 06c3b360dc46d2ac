//! Shell-averaged radial profiles and decay-law fits.

use crate::error::{Error, Result};
use crate::field::{ComplexField3, Domain};
use serde::Serialize;

/// Shell-RMS amplitude versus radius.
#[derive(Debug, Clone, Serialize)]
pub struct RadialProfile {
    pub center: [f64; 3],
    pub radii: Vec<f64>,
    pub amplitude: Vec<f64>,
    /// `L/4` for grid-derived profiles; `None` for analytic samplings
    /// with no periodic images.
    pub trusted_radius: Option<f64>,
}

/// Shell-RMS profile of a position-domain field over equal-width bins up
/// to the trusted radius `L/4` (minimum-image distances).
pub fn radial_profile(
    f: &ComplexField3,
    center: [f64; 3],
    bins: usize,
) -> Result<RadialProfile> {
    if bins < 4 {
        return Err(Error::InvalidParameter(format!(
            "need at least 4 bins, got {bins}"
        )));
    }
    let pos = f.to_domain(Domain::Position);
    let grid = *pos.grid();
    let r_max = grid.trusted_radius();
    let width = r_max / bins as f64;
    let mut sums = vec![0.0f64; bins];
    let mut counts = vec![0usize; bins];
    let n = grid.n();
    for iz in 0..n {
        for iy in 0..n {
            for ix in 0..n {
                let dist = grid.min_image_distance(center, grid.position(ix, iy, iz));
                if dist >= r_max {
                    continue;
                }
                let b = (dist / width) as usize;
                if b >= bins {
                    continue;
                }
                let s = grid.site(ix, iy, iz);
                sums[b] += pos.get(0, s).norm_sqr()
                    + pos.get(1, s).norm_sqr()
                    + pos.get(2, s).norm_sqr();
                counts[b] += 1;
            }
        }
    }
    let radii = (0..bins).map(|b| (b as f64 + 0.5) * width).collect();
    let amplitude = sums
        .iter()
        .zip(&counts)
        .map(|(s, c)| if *c > 0 { (s / *c as f64).sqrt() } else { 0.0 })
        .collect();
    Ok(RadialProfile {
        center,
        radii,
        amplitude,
        trusted_radius: Some(r_max),
    })
}

/// Profile assembled from explicit (radius, amplitude) samples, e.g. from
/// a radial evaluator or a point quadrature oracle.
pub fn profile_from_samples(
    center: [f64; 3],
    radii: Vec<f64>,
    amplitude: Vec<f64>,
) -> Result<RadialProfile> {
    if radii.len() != amplitude.len() || radii.len() < 2 {
        return Err(Error::InvalidParameter(
            "radii and amplitudes must have equal length >= 2".into(),
        ));
    }
    if radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "radii must be strictly increasing".into(),
        ));
    }
    Ok(RadialProfile {
        center,
        radii,
        amplitude,
        trusted_radius: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TailModel {
    /// `A r^(-p)`
    PowerLaw,
    /// `A exp(-sqrt(2 r / l)) / r`
    SqrtExp,
}

#[derive(Debug, Clone, Serialize)]
pub struct TailFit {
    pub model: TailModel,
    pub amplitude: f64,
    /// `p` for the power law, `l` for the square-root exponential.
    pub parameter: f64,
    pub fit_window: (f64, f64),
    /// RMS misfit of `ln(amplitude)` over the fitted points.
    pub residual: f64,
    pub points_used: usize,
}

/// Least-squares decay-law fit in log space over `window`. For the
/// oscillatory square-root-exponential model the fit runs through local
/// maxima of the profile (the envelope); when the data carry no
/// oscillation every point in the window is used.
pub fn fit_tail(
    profile: &RadialProfile,
    model: TailModel,
    window: (f64, f64),
) -> Result<TailFit> {
    let (lo, hi) = window;
    if !(hi > lo && lo > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "invalid fit window ({lo}, {hi})"
        )));
    }
    if let Some(trusted) = profile.trusted_radius {
        if hi > trusted * (1.0 + 1e-12) {
            return Err(Error::InvalidParameter(format!(
                "fit window extends to {hi}, beyond the trusted radius {trusted}"
            )));
        }
    }
    let in_window: Vec<(f64, f64)> = profile
        .radii
        .iter()
        .zip(&profile.amplitude)
        .filter(|(r, a)| **r >= lo && **r <= hi && **a > 0.0)
        .map(|(r, a)| (*r, *a))
        .collect();
    if in_window.len() < 8 {
        return Err(Error::InvalidParameter(format!(
            "need at least 8 positive-amplitude bins in the window, got {}",
            in_window.len()
        )));
    }
    let points: Vec<(f64, f64)> = match model {
        TailModel::PowerLaw => in_window.clone(),
        TailModel::SqrtExp => {
            let maxima = local_maxima(&in_window);
            if maxima.len() >= 4 {
                maxima
            } else {
                in_window.clone()
            }
        }
    };

    // linear regression y = c0 + c1 x in the model's log coordinates
    let (xs, ys): (Vec<f64>, Vec<f64>) = points
        .iter()
        .map(|(r, a)| match model {
            TailModel::PowerLaw => (r.ln(), a.ln()),
            TailModel::SqrtExp => (r.sqrt(), (a * r).ln()),
        })
        .unzip();
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return Err(Error::InvalidParameter("degenerate fit abscissae".into()));
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;

    let parameter = match model {
        TailModel::PowerLaw => -slope,
        TailModel::SqrtExp => {
            if slope >= 0.0 {
                return Err(Error::InvalidParameter(
                    "profile does not decay; cannot fit an exponential scale".into(),
                ));
            }
            2.0 / (slope * slope)
        }
    };
    let amplitude = intercept.exp();

    // residual in ln(amplitude) against the fitted law, over the fitted
    // points
    let residual = {
        let mut acc = 0.0;
        for (r, a) in &points {
            let predicted = match model {
                TailModel::PowerLaw => intercept - parameter * r.ln(),
                TailModel::SqrtExp => intercept + slope * r.sqrt() - r.ln(),
            };
            let observed = a.ln();
            let model_ln_a = match model {
                TailModel::PowerLaw => predicted,
                TailModel::SqrtExp => predicted,
            };
            acc += (observed - model_ln_a).powi(2);
        }
        (acc / points.len() as f64).sqrt()
    };

    Ok(TailFit {
        model,
        amplitude,
        parameter,
        fit_window: window,
        residual,
        points_used: points.len(),
    })
}

fn local_maxima(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 1..points.len().saturating_sub(1) {
        if points[i].1 > points[i - 1].1 && points[i].1 > points[i + 1].1 {
            out.push(points[i]);
        }
    }
    out
}

/// Continuum shell-RMS profile of the delocalized electric footprint of a
/// compact bump field, free of grid truncation and periodic images.
///
/// For probes outside the support the footprint is
/// `K psi (r) = -(1/pi^2) int psi(r') / |r-r'|^4 d^3r'`; the integrand is
/// smooth over the support ball so a fixed product rule converges
/// spectrally.
pub fn exterior_footprint_profile(
    bump: &crate::bump::BumpField,
    support_radius: f64,
    radii: &[f64],
) -> Result<RadialProfile> {
    use crate::quadrature::{gauss_legendre, sphere_rule};
    let (xr, wr) = gauss_legendre(40);
    let ball = sphere_rule(24, 48);
    let mut nodes = Vec::new();
    for (xi, wi) in xr.iter().zip(&wr) {
        let s = 0.5 * support_radius * (xi + 1.0);
        let ws = 0.5 * support_radius * wi * s * s;
        for (dir, w) in &ball {
            let p = [s * dir[0], s * dir[1], s * dir[2]];
            let v = bump.eval(p);
            nodes.push((p, [v[0] * ws * w, v[1] * ws * w, v[2] * ws * w]));
        }
    }
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let probes = sphere_rule(6, 8);
    let mut amps = Vec::with_capacity(radii.len());
    for &r in radii {
        if r <= support_radius {
            return Err(Error::InvalidParameter(format!(
                "probe radius {r} lies inside the support {support_radius}"
            )));
        }
        let mut acc = 0.0;
        for (dir, wp) in &probes {
            let probe = [r * dir[0], r * dir[1], r * dir[2]];
            let mut field = [0.0f64; 3];
            for (p, wv) in &nodes {
                let d2 = (probe[0] - p[0]).powi(2)
                    + (probe[1] - p[1]).powi(2)
                    + (probe[2] - p[2]).powi(2);
                let kern = 1.0 / (d2 * d2);
                for c in 0..3 {
                    field[c] += wv[c] * kern;
                }
            }
            acc += wp * field.iter().map(|v| (v / pi2).powi(2)).sum::<f64>();
        }
        amps.push((acc / (4.0 * std::f64::consts::PI)).sqrt());
    }
    profile_from_samples([0.0; 3], radii.to_vec(), amps)
}
