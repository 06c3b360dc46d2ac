//! Gamma function (Lanczos, with reflection for negative arguments) and
//! Legendre functions of the second kind.

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for real arguments away from the non-positive integers.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Legendre Q_0 for w > 1.
pub fn legendre_q0(w: f64) -> f64 {
    0.5 * ((w + 1.0) / (w - 1.0)).ln()
}

/// Legendre Q_2 for w > 1, with a large-argument series to avoid the
/// cancellation in P2(w) Q0(w) - 3w/2.
pub fn legendre_q2(w: f64) -> f64 {
    if w > 4.0 {
        let mut sum = 0.0;
        let mut wp = w.powi(-3);
        for k in 0..40 {
            let term = 2.0 * (k as f64 + 1.0) / ((2 * k + 3) as f64 * (2 * k + 5) as f64) * wp;
            sum += term;
            wp /= w * w;
            if term < 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        (1.5 * w * w - 0.5) * legendre_q0(w) - 1.5 * w
    }
}
