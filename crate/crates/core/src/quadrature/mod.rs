//! Independent numerical integration oracles.
//!
//! Everything here is deliberately decoupled from the spectral machinery:
//! these routines integrate in position space (or over 1D reductions) and
//! serve as ground truth for the Fourier-multiplier implementations.

mod adaptive;
mod nodes;
mod special;

pub use adaptive::integrate;
pub use nodes::{gauss_legendre, sphere_rule};
pub use special::{gamma, legendre_q0, legendre_q2};

use crate::error::{Error, Result};
use serde::Serialize;

/// Outcome of a numerical quadrature with an honest error estimate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub est_error: f64,
    pub evaluations: usize,
}

fn check_range(name: &str, v: f64, lo: f64, hi: f64) -> Result<()> {
    if !(v > lo && v < hi) {
        return Err(Error::InvalidParameter(format!(
            "{name} must lie in ({lo}, {hi}), got {v}"
        )));
    }
    Ok(())
}

/// Difference of shifted power laws `(rho+d)^(2-b) - |rho-d|^(2-b)`,
/// evaluated through a series where direct subtraction would cancel.
fn phi_kernel(rho: f64, d: f64, beta: f64) -> f64 {
    let g = 2.0 - beta;
    let series = |big: f64, small: f64| -> f64 {
        // big^g [ (1+u)^g - (1-u)^g ], u = small/big, via odd binomial terms
        let u = small / big;
        let mut coeff = g;
        let mut term = coeff * u;
        let mut sum = term;
        let mut j = 1.0;
        loop {
            // next odd binomial coefficient: C(g, j+2) from C(g, j)
            coeff *= (g - j) * (g - j - 1.0) / ((j + 1.0) * (j + 2.0));
            j += 2.0;
            term = coeff * u.powf(j);
            sum += term;
            if term.abs() < 1e-17 * sum.abs() || j > 40.0 {
                break;
            }
        }
        2.0 * big.powf(g) * sum
    };
    if rho < 1e-3 * d {
        series(d, rho)
    } else if rho > 1e3 * d {
        series(rho, d)
    } else {
        (rho + d).powf(g) - (rho - d).abs().powf(g)
    }
}

/// The 3D two-center integral `int d^3r / (|r' - r|^a |r - r''|^b)` with
/// `d = |r' - r''|`, reduced to one dimension by closed-form angular
/// integration and evaluated with singularity-absorbing substitutions.
fn two_center_numeric(alpha: f64, beta: f64, d: f64, rel_tol: f64) -> QuadratureResult {
    let log_kernel = (beta - 2.0).abs() < 1e-8;
    let integrand = |rho: f64| -> f64 {
        if rho <= 0.0 {
            return 0.0;
        }
        let radial = rho.powf(1.0 - alpha);
        if log_kernel {
            radial * ((rho + d) / (rho - d).abs()).ln()
        } else {
            radial * phi_kernel(rho, d, beta)
        }
    };

    let mut value = 0.0;
    let mut error = 0.0;
    let mut evals = 0;
    let mut accumulate = |(v, e, n): (f64, f64, usize)| {
        value += v;
        error += e;
        evals += n;
    };

    // [0, d/2]: absorb rho^(2-alpha) with rho = (d/2) s^(1/(3-alpha))
    {
        let p = 1.0 / (3.0 - alpha);
        let half = d / 2.0;
        let f = |s: f64| {
            if s <= 0.0 {
                return 0.0;
            }
            let rho = half * s.powf(p);
            integrand(rho) * half * p * s.powf(p - 1.0)
        };
        accumulate(integrate(&f, 0.0, 1.0, 0.0, rel_tol, 400));
    }
    // [d/2, d] and [d, 2d]: absorb |rho-d|^(2-beta) when beta > 2
    for (sign, width) in [(-1.0, d / 2.0), (1.0, d)] {
        let f: Box<dyn Fn(f64) -> f64> = if beta > 2.0 && !log_kernel {
            let p = 1.0 / (3.0 - beta);
            Box::new(move |t: f64| {
                if t <= 0.0 {
                    return 0.0;
                }
                let v = width * t.powf(p);
                integrand(d + sign * v) * width * p * t.powf(p - 1.0)
            })
        } else {
            Box::new(move |t: f64| integrand(d + sign * t * width) * width)
        };
        accumulate(integrate(&f, 0.0, 1.0, 0.0, rel_tol, 600));
    }
    // [2d, inf): rho = 2d / s^(1/(a+b-3)) absorbs the algebraic tail
    {
        let p = 1.0 / (alpha + beta - 3.0);
        let f = |u: f64| {
            if u <= 0.0 {
                return 0.0;
            }
            let s = u.powf(p);
            let rho = 2.0 * d / s;
            integrand(rho) * 2.0 * d * p * u.powf(p - 1.0) / (s * s)
        };
        accumulate(integrate(&f, 0.0, 1.0, 0.0, rel_tol, 600));
    }

    let prefactor = if log_kernel {
        2.0 * std::f64::consts::PI / d
    } else {
        2.0 * std::f64::consts::PI / ((2.0 - beta) * d)
    };
    QuadratureResult {
        value: prefactor * value,
        est_error: prefactor.abs() * error,
        evaluations: evals,
    }
}

/// Closed form of the two-center identity. Returns `None` at degenerate
/// parameter points where a Gamma pole meets a sine zero; those are served
/// numerically only.
pub fn two_center_closed_form(alpha: f64, beta: f64, separation: f64) -> Option<f64> {
    const DEGENERACY_MARGIN: f64 = 1e-9;
    if (alpha - 2.0).abs() < DEGENERACY_MARGIN
        || (beta - 2.0).abs() < DEGENERACY_MARGIN
        || (alpha + beta - 4.0).abs() < DEGENERACY_MARGIN
    {
        return None;
    }
    let half_pi = std::f64::consts::PI / 2.0;
    let value = (half_pi * alpha).sin()
        * (half_pi * beta).sin()
        * (half_pi * (alpha + beta)).sin()
        * 8.0
        * gamma(alpha + beta - 4.0)
        * gamma(2.0 - alpha)
        * gamma(2.0 - beta)
        / separation.powf(alpha + beta - 3.0);
    Some(value)
}

/// Numeric and closed-form evaluations of the two-center convolution
/// identity.
pub fn convolution_identity(
    alpha: f64,
    beta: f64,
    separation: f64,
) -> Result<(QuadratureResult, Option<f64>)> {
    check_range("alpha", alpha, 0.0, 3.0)?;
    check_range("beta", beta, 0.0, 3.0)?;
    if alpha + beta <= 3.0 {
        return Err(Error::InvalidParameter(format!(
            "alpha + beta must exceed 3 for integrability, got {}",
            alpha + beta
        )));
    }
    if !(separation > 0.0) {
        return Err(Error::InvalidParameter(
            "separation must be positive".into(),
        ));
    }
    let numeric = two_center_numeric(alpha, beta, separation, 1e-11);
    let closed = two_center_closed_form(alpha, beta, separation);
    Ok((numeric, closed))
}

/// `int_0^inf x^(-n-1/2) exp(-p x - q/x) dx`, numerically and in closed
/// form via derivatives of `exp(-2 sqrt(p q))`.
pub fn gr_integral(n: u32, p: f64, q: f64) -> Result<(QuadratureResult, f64)> {
    if n > 2 {
        return Err(Error::InvalidParameter(format!(
            "derivative order n must be 0, 1, or 2, got {n}"
        )));
    }
    if !(p > 0.0) || !(q > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "p and q must be positive, got p={p}, q={q}"
        )));
    }
    // substitution x = sqrt(q/p) e^u turns the integrand into a
    // double-exponentially decaying function of u
    let xstar = (q / p).sqrt();
    let spq = (p * q).sqrt();
    let a = -(n as f64) - 0.5;
    let f = |u: f64| {
        let x = xstar * u.exp();
        x.powf(a) * (-p * x - q / x).exp() * x
    };
    let ucut = ((746.0 + 2.0 * spq) / spq).max(4.0).ln() + 4.0;
    let (v, e, evals) = integrate(&f, -ucut, ucut, 0.0, 1e-13, 400);
    let numeric = QuadratureResult {
        value: v,
        est_error: e,
        evaluations: evals,
    };

    let root = (std::f64::consts::PI / p).sqrt();
    let expo = (-2.0 * spq).exp();
    let closed = match n {
        0 => root * expo,
        1 => root * (p / q).sqrt() * expo,
        _ => root * (p / q + 0.5 * p.sqrt() * q.powf(-1.5)) * expo,
    };
    Ok((numeric, closed))
}

/// Real and imaginary parts of the principal square root of `a + i b`,
/// via the algebraic split `sqrt(2) sqrt(a+ib) =
/// sqrt(|a+ib|+a) + i (b/|b|) sqrt(|a+ib|-a)`.
pub fn sqrt_split(a: f64, b: f64) -> Result<(f64, f64)> {
    if b == 0.0 {
        if a < 0.0 {
            return Err(Error::InvalidParameter(
                "a < 0 with b = 0 lies on the branch cut".into(),
            ));
        }
        return Ok((a.sqrt(), 0.0));
    }
    let modulus = a.hypot(b);
    // evaluate the smaller of the two radicals through |b| to avoid
    // cancellation
    let (re, im_mag) = if a >= 0.0 {
        let re = ((modulus + a) / 2.0).sqrt();
        (re, b.abs() / (2.0 * re))
    } else {
        let im = ((modulus - a) / 2.0).sqrt();
        (b.abs() / (2.0 * im), im)
    };
    Ok((re, b.signum() * im_mag))
}

/// Position-space Riesz convolution at one point:
/// `int f(r') / |r - r'|^s d^3 r'` for a smooth, effectively compact `f`.
///
/// Spherical coordinates around `r` absorb the kernel singularity; the
/// radial integral extends to `domain_radius` around the probe.
pub fn convolve_point_oracle<F>(
    kernel_exponent: f64,
    f: F,
    probe: [f64; 3],
    domain_radius: f64,
) -> Result<QuadratureResult>
where
    F: Fn([f64; 3]) -> f64,
{
    check_range("kernel_exponent", kernel_exponent, 0.0, 3.0)?;
    if !(domain_radius > 0.0) {
        return Err(Error::InvalidParameter(
            "domain_radius must be positive".into(),
        ));
    }
    let run = |n_theta: usize, n_phi: usize| -> (f64, f64, usize) {
        let sphere = sphere_rule(n_theta, n_phi);
        let shell_mean = |s: f64| -> f64 {
            sphere
                .iter()
                .map(|(dir, w)| {
                    w * f([
                        probe[0] + s * dir[0],
                        probe[1] + s * dir[1],
                        probe[2] + s * dir[2],
                    ])
                })
                .sum()
        };
        // radial substitution s = R t^(1/(3-s0)) makes s^(2-s0) ds smooth
        let p = 1.0 / (3.0 - kernel_exponent);
        let radial = |t: f64| -> f64 {
            if t <= 0.0 {
                return 0.0;
            }
            let s = domain_radius * t.powf(p);
            shell_mean(s) * s.powf(2.0 - kernel_exponent) * domain_radius * p * t.powf(p - 1.0)
        };
        let (v, e, n) = integrate(&radial, 0.0, 1.0, 0.0, 1e-10, 200);
        (v, e, n * n_theta * n_phi)
    };
    let (coarse, _, _) = run(20, 40);
    let (fine, radial_err, evals) = run(28, 56);
    Ok(QuadratureResult {
        value: fine,
        est_error: radial_err + (fine - coarse).abs(),
        evaluations: evals,
    })
}

/// Position-space double-integral oracle for the nonlocal normalization of
/// a toroidal wave function `phi = curl(G(rho) zhat)`.
///
/// Callers supply the radial factors of `g = curl phi`:
/// `g = a(rho) cos(theta) rhat - b(rho) zhat` with
/// `a = G'' - G'/rho` and `b = G'' + G'/rho`. The six-dimensional integral
/// `1/(2 pi^2) iint g*(r).g(r') / |r-r'|^2` collapses to a 2D radial
/// integral through a Legendre-kernel expansion; only the l = 0 and l = 2
/// terms survive the angular algebra.
pub fn norm_functional_toroidal_oracle<A, B>(
    a: A,
    b: B,
    r_max: f64,
) -> Result<QuadratureResult>
where
    A: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    if !(r_max > 0.0) {
        return Err(Error::InvalidParameter("r_max must be positive".into()));
    }
    let inner = |r: f64| -> (f64, f64, usize) {
        let f = |rp: f64| -> f64 {
            if rp <= 0.0 || r <= 0.0 {
                return 0.0;
            }
            let w = (r * r + rp * rp) / (2.0 * r * rp);
            if w <= 1.0 {
                return 0.0; // coincident radii: integrable log endpoint
            }
            let q0 = legendre_q0(w);
            let q2 = legendre_q2(w);
            let (ar, br) = (a(r), b(r));
            let (ap, bp) = (a(rp), b(rp));
            r * rp
                * ((8.0 / 9.0) * ar * ap * (0.5 * q0 + q2)
                    - (4.0 / 3.0) * (ar * bp + ap * br) * q0
                    + 4.0 * br * bp * q0)
        };
        let (v1, e1, n1) = integrate(&f, 0.0, r, 0.0, 1e-9, 300);
        let (v2, e2, n2) = integrate(&f, r, r_max, 0.0, 1e-9, 300);
        (v1 + v2, e1 + e2, n1 + n2)
    };
    let mut evals = 0usize;
    let mut err_acc = 0.0;
    let outer = |r: f64| inner(r).0;
    // fixed high-order Gauss-Legendre outer pass; the integrand is smooth
    let run = |order: usize, evals: &mut usize, err_acc: &mut f64| -> f64 {
        let (x, w) = gauss_legendre(order);
        let mut total = 0.0;
        for (xi, wi) in x.iter().zip(&w) {
            let r = 0.5 * r_max * (xi + 1.0);
            let (v, e, n) = inner(r);
            let _ = outer;
            total += 0.5 * r_max * wi * v;
            *err_acc += 0.5 * r_max * wi * e;
            *evals += n;
        }
        total
    };
    let coarse = run(32, &mut evals, &mut err_acc);
    let fine = run(48, &mut evals, &mut err_acc);
    Ok(QuadratureResult {
        value: fine,
        est_error: (fine - coarse).abs() + err_acc,
        evaluations: evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn appendix_identity_exponent_2_2() {
        // degenerate closed form; numeric must give pi^3 / d
        let (num, closed) = convolution_identity(2.0, 2.0, 1.0).unwrap();
        assert!(closed.is_none());
        let expect = PI.powi(3);
        assert!(
            ((num.value - expect) / expect).abs() < 1e-4,
            "got {}, expect {}",
            num.value,
            expect
        );
    }

    #[test]
    fn appendix_identity_exponent_52_52() {
        let (num, closed) = convolution_identity(2.5, 2.5, 1.0).unwrap();
        let expect = 16.0 * PI;
        assert!(((num.value - expect) / expect).abs() < 1e-4);
        let c = closed.expect("non-degenerate");
        assert!(((c - expect) / expect).abs() < 1e-12);
    }

    #[test]
    fn appendix_identity_exponent_52_32() {
        let (num, closed) = convolution_identity(2.5, 1.5, 1.0).unwrap();
        let expect = 4.0 * PI * PI;
        assert!(((num.value - expect) / expect).abs() < 1e-4);
        // alpha + beta = 4: degenerate
        assert!(closed.is_none());
    }

    #[test]
    fn separation_scaling_law() {
        let (a, b) = (2.3, 1.4);
        let (v1, _) = convolution_identity(a, b, 1.0).unwrap();
        let (v2, _) = convolution_identity(a, b, 2.5).unwrap();
        let ratio = v2.value / v1.value;
        let expect = 2.5f64.powf(3.0 - a - b);
        assert!(
            ((ratio - expect) / expect).abs() < 1e-6,
            "ratio {ratio} vs {expect}"
        );
    }

    #[test]
    fn rejects_outside_integrability() {
        assert!(convolution_identity(1.0, 1.5, 1.0).is_err()); // sum < 3
        assert!(convolution_identity(3.2, 1.5, 1.0).is_err());
        assert!(convolution_identity(2.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn gr_n0_unit_parameters() {
        let (num, closed) = gr_integral(0, 1.0, 1.0).unwrap();
        let expect = PI.sqrt() * (-2.0f64).exp();
        assert!((closed - expect).abs() < 1e-14);
        assert!(((num.value - closed) / closed).abs() < 1e-10);
    }

    #[test]
    fn gr_small_q_approaches_gaussian_free_limit() {
        let (num, closed) = gr_integral(0, 2.0, 1e-8).unwrap();
        let limit = (PI / 2.0).sqrt();
        assert!(((closed - limit) / limit).abs() < 1e-3);
        assert!(((num.value - closed) / closed).abs() < 1e-8);
    }

    #[test]
    fn gr_derivative_orders_match() {
        for (n, p, q) in [(1u32, 1.0, 1.0), (2, 1.3, 0.7), (1, 0.4, 2.1)] {
            let (num, closed) = gr_integral(n, p, q).unwrap();
            assert!(
                ((num.value - closed) / closed).abs() < 1e-8,
                "n={n} p={p} q={q}: numeric {} closed {closed}",
                num.value
            );
        }
    }

    #[test]
    fn sqrt_split_known_values() {
        let (re, im) = sqrt_split(1.0, 0.0).unwrap();
        assert_eq!((re, im), (1.0, 0.0));
        let (re, im) = sqrt_split(0.0, 2.0).unwrap();
        assert!((re - 1.0).abs() < 1e-15 && (im - 1.0).abs() < 1e-15);
        assert!(sqrt_split(-1.0, 0.0).is_err());
    }

    #[test]
    fn sqrt_split_squares_back() {
        let cases = [
            (3.0, 4.0),
            (-2.5, 0.3),
            (1e-8, -5.0),
            (7.0, -1e-9),
            (-4.0, -3.0),
        ];
        for (a, b) in cases {
            let (re, im) = sqrt_split(a, b).unwrap();
            let z = num_complex::Complex64::new(re, im);
            let sq = z * z;
            assert!(
                (sq.re - a).abs() < 1e-14 * a.abs().max(1.0)
                    && (sq.im - b).abs() < 1e-14 * b.abs().max(1.0),
                "({a},{b}) -> {z}"
            );
            // principal branch: re >= 0
            assert!(re >= 0.0);
        }
    }

    #[test]
    fn convolve_oracle_on_gaussian_against_analytic_coulomb() {
        // For s = 1 the convolution with a normalized Gaussian has the
        // closed form erf(|r|/(sqrt(2) sigma))/|r| (Coulomb potential of a
        // Gaussian charge).
        let sigma = 0.7f64;
        let norm = 1.0 / ((2.0 * PI).powf(1.5) * sigma.powi(3));
        let f = |r: [f64; 3]| {
            let r2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
            norm * (-r2 / (2.0 * sigma * sigma)).exp()
        };
        for probe in [[0.9f64, 0.2, -0.4], [2.0, 0.0, 0.0]] {
            let dist = (probe[0] * probe[0] + probe[1] * probe[1] + probe[2] * probe[2]).sqrt();
            let expect = erf_approx(dist / (2.0f64.sqrt() * sigma)) / dist;
            let got = convolve_point_oracle(1.0, f, probe, dist + 8.0 * sigma).unwrap();
            assert!(
                ((got.value - expect) / expect).abs() < 1e-6,
                "probe {probe:?}: got {} expect {expect}",
                got.value
            );
        }
    }

    #[test]
    fn zero_field_oracle_is_zero() {
        let got = convolve_point_oracle(2.0, |_| 0.0, [0.0; 3], 5.0).unwrap();
        assert_eq!(got.value, 0.0);
    }

    #[test]
    fn norm_oracle_matches_exact_toroidal_gaussian() {
        // phi = curl(exp(-rho^2/2) zhat) has norm functional exactly 8 pi/3.
        let a = |r: f64| r * r * (-r * r / 2.0).exp();
        let b = |r: f64| (r * r - 2.0) * (-r * r / 2.0).exp();
        let got = norm_functional_toroidal_oracle(a, b, 9.0).unwrap();
        let expect = 8.0 * PI / 3.0;
        assert!(
            ((got.value - expect) / expect).abs() < 1e-3,
            "got {} expect {expect} (est err {})",
            got.value,
            got.est_error
        );
    }

    fn erf_approx(x: f64) -> f64 {
        // Abramowitz-Stegun 7.1.26, plenty for 1e-6 comparisons
        let t = 1.0 / (1.0 + 0.3275911 * x);
        let poly = t
            * (0.254829592
                + t * (-0.284496736 + t * (1.421413741 + t * (-1.453152027 + t * 1.061405429))));
        1.0 - poly * (-x * x).exp()
    }
}
