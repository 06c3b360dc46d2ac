//! Moment fine-tuning of compact wave functions.
//!
//! For a compact divergence-free `psi` the zeroth and first moments of
//! `curl psi` vanish identically, so the delocalized helicity transform
//! is controlled by the next multipoles. Those are driven, for
//! concentric curl-bump sums, by two scalar weights per term:
//! `int (r x psi) = 2 amp Vol m` (second curl moment) and the
//! `amp * int f s^2` weight (fourth curl moment). Zeroing the weighted
//! sums over terms with distinct radii steepens the algebraic tail by
//! one even power per enforced level.

use crate::bump::{BumpField, BumpTerm};
use crate::error::{Error, Result};
use crate::wavefunction::{normalize, WaveFunction};

/// Moment weights of one term: `(volume, second-moment)` scaled by the
/// term's radius powers.
fn weights(t: &BumpTerm) -> (f64, f64) {
    let v = t.profile.volume_integral() * t.radius.powi(3);
    let w = t.profile.second_moment_integral() * t.radius.powi(5);
    (v, w)
}

/// Replace a single-bump wave function by a concentric combination whose
/// curl has vanishing Cartesian moments up to `order + 1`, normalized.
///
/// `order 0` verifies the automatic identities and returns the input;
/// `order 1` zeroes the cross moment `int r x psi`; `order 2`
/// additionally zeroes the next radial weight. Orders above 2 are not
/// served by the concentric basis.
pub fn vanish_moments(psi: &WaveFunction, order: u32) -> Result<WaveFunction> {
    let source = psi
        .source()
        .ok_or_else(|| Error::NonCompactInput("no analytic bump source".into()))?;
    if source.terms().len() != 1 {
        return Err(Error::InvalidParameter(
            "moment tuning starts from a single-bump wave function".into(),
        ));
    }
    let base = source.terms()[0];
    let grid = *psi.grid();

    let terms: Vec<BumpTerm> = match order {
        0 => vec![base],
        1 => {
            let shrink = BumpTerm {
                radius: 0.6 * base.radius,
                ..base
            };
            let (v0, _) = weights(&base);
            let (v1, _) = weights(&shrink);
            vec![
                base,
                BumpTerm {
                    amplitude: -base.amplitude * v0 / v1,
                    ..shrink
                },
            ]
        }
        2 => {
            let t1 = BumpTerm {
                radius: 0.7 * base.radius,
                ..base
            };
            let t2 = BumpTerm {
                radius: 0.45 * base.radius,
                ..base
            };
            let (v0, w0) = weights(&base);
            let (v1, w1) = weights(&t1);
            let (v2, w2) = weights(&t2);
            // solve a1 v1 + a2 v2 = -v0 ; a1 w1 + a2 w2 = -w0
            let det = v1 * w2 - v2 * w1;
            if det.abs() < 1e-14 * (v1 * w2).abs().max(1e-300) {
                return Err(Error::InfeasibleConstraints(
                    "degenerate concentric radii".into(),
                ));
            }
            let a1 = (-v0 * w2 + v2 * w0) / det * base.amplitude;
            let a2 = (-v1 * w0 + v0 * w1) / det * base.amplitude;
            vec![
                base,
                BumpTerm {
                    amplitude: a1,
                    ..t1
                },
                BumpTerm {
                    amplitude: a2,
                    ..t2
                },
            ]
        }
        _ => {
            return Err(Error::InfeasibleConstraints(format!(
                "order {order} is not served by the concentric basis"
            )))
        }
    };

    let bump = BumpField::new(terms)?;
    // verify the enforced analytic moments
    let scale: f64 = bump
        .terms()
        .iter()
        .map(|t| (t.amplitude * weights(t).0).abs())
        .sum();
    if order >= 1 {
        let s = bump.cross_moment();
        let mag = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
        if mag > 1e-10 * scale {
            return Err(Error::InfeasibleConstraints(format!(
                "cross moment residual {mag:.3e}"
            )));
        }
    }
    if order >= 2 {
        let w_sum: f64 = bump.terms().iter().map(|t| t.amplitude * weights(t).1).sum();
        if w_sum.abs() > 1e-10 * scale * base.radius * base.radius {
            return Err(Error::InfeasibleConstraints(format!(
                "second radial weight residual {w_sum:.3e}"
            )));
        }
    }
    let w = WaveFunction::from_bump(bump, grid, psi.flavor);
    normalize(&w)
}
