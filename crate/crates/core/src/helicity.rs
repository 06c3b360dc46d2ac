//! The helicity operator, its projectors, curl, transverse projection,
//! Riesz-kernel smoothing, and the commutator kernel matrices — all
//! realized as diagonal Fourier multipliers.

use crate::error::{Error, Result};
use crate::field::ComplexField3;
use nalgebra::{Matrix6, SymmetricEigen};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HelicitySign {
    Plus,
    Minus,
}

impl HelicitySign {
    #[inline]
    pub fn factor(self) -> f64 {
        match self {
            HelicitySign::Plus => 1.0,
            HelicitySign::Minus => -1.0,
        }
    }
}

#[inline]
fn cross_k(k: [f64; 3], v: [Complex64; 3]) -> [Complex64; 3] {
    [
        v[2] * k[1] - v[1] * k[2],
        v[0] * k[2] - v[2] * k[0],
        v[1] * k[0] - v[0] * k[1],
    ]
}

/// Curl as the spectral multiplier `i k x`.
pub fn curl(f: &ComplexField3) -> ComplexField3 {
    let i = Complex64::new(0.0, 1.0);
    f.map_spectral(|k, _, v| {
        let c = cross_k(k, v);
        [c[0] * i, c[1] * i, c[2] * i]
    })
}

/// Transverse (divergence-free) projection: multiplier
/// `delta_ij - k_i k_j / k^2`, zero mode mapped to zero.
pub fn transverse_project(f: &ComplexField3) -> ComplexField3 {
    f.map_spectral(|k, kmag, v| {
        if kmag == 0.0 {
            return [Complex64::default(); 3];
        }
        let k2 = kmag * kmag;
        let kdotv = (v[0] * k[0] + v[1] * k[1] + v[2] * k[2]) / k2;
        [
            v[0] - kdotv * k[0],
            v[1] - kdotv * k[1],
            v[2] - kdotv * k[2],
        ]
    })
}

/// Helicity operator: multiplier `i k x / |k|`. Annihilates longitudinal
/// content (the cross product kills it), so the result is always
/// transverse; it is an involution only on the transverse subspace.
pub fn apply_helicity(f: &ComplexField3) -> ComplexField3 {
    let i = Complex64::new(0.0, 1.0);
    f.map_spectral(|k, kmag, v| {
        if kmag == 0.0 {
            return [Complex64::default(); 3];
        }
        let c = cross_k(k, v);
        let s = i / kmag;
        [c[0] * s, c[1] * s, c[2] * s]
    })
}

/// Helicity projector `P± = (1 ± chi)/2` restricted to the transverse
/// subspace (the longitudinal part and the zero mode map to zero).
pub fn helicity_project(f: &ComplexField3, sign: HelicitySign) -> ComplexField3 {
    let i = Complex64::new(0.0, 1.0);
    let s = sign.factor();
    f.map_spectral(|k, kmag, v| {
        if kmag == 0.0 {
            return [Complex64::default(); 3];
        }
        let k2 = kmag * kmag;
        let kdotv = (v[0] * k[0] + v[1] * k[1] + v[2] * k[2]) / k2;
        let t = [
            v[0] - kdotv * k[0],
            v[1] - kdotv * k[1],
            v[2] - kdotv * k[2],
        ];
        let c = cross_k(k, t);
        let h = i * s / kmag;
        [
            (t[0] + c[0] * h) * 0.5,
            (t[1] + c[1] * h) * 0.5,
            (t[2] + c[2] * h) * 0.5,
        ]
    })
}

/// Named Riesz-smoothing presets: `(exponent, prefactor)` pairs whose
/// position-space kernels are pinned by the convolution oracle tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RieszPreset {
    /// `1/k`: convolution with `1/(2 pi^2 r^2)`.
    InvK,
    /// `k^(-1/2)/sqrt(2)`: the `|r-r'|^(-5/2)` photon-number smoothing
    /// kernel with its `1/(8 pi^(3/2))` constant.
    Cook,
    /// `sqrt(2) k^(-3/2)`: the `|r-r'|^(-3/2)` kernel with its
    /// `1/(2 pi^(3/2))` constant.
    Nloc,
}

impl RieszPreset {
    #[inline]
    pub fn exponent(self) -> f64 {
        match self {
            RieszPreset::InvK => 1.0,
            RieszPreset::Cook => 0.5,
            RieszPreset::Nloc => 1.5,
        }
    }

    #[inline]
    pub fn prefactor(self) -> f64 {
        match self {
            RieszPreset::InvK => 1.0,
            RieszPreset::Cook => 1.0 / std::f64::consts::SQRT_2,
            RieszPreset::Nloc => std::f64::consts::SQRT_2,
        }
    }
}

/// Riesz smoothing: multiplier `prefactor * k^(-s)`, zero mode to zero.
pub fn riesz_smooth(f: &ComplexField3, s: f64, prefactor: f64) -> Result<ComplexField3> {
    if !(s > 0.0 && s < 3.0) {
        return Err(Error::InvalidParameter(format!(
            "Riesz exponent must lie in (0, 3), got {s}"
        )));
    }
    Ok(f.map_spectral(|_, kmag, v| {
        if kmag == 0.0 {
            return [Complex64::default(); 3];
        }
        let m = prefactor * kmag.powf(-s);
        [v[0] * m, v[1] * m, v[2] * m]
    }))
}

pub fn riesz_smooth_preset(f: &ComplexField3, preset: RieszPreset) -> ComplexField3 {
    riesz_smooth(f, preset.exponent(), preset.prefactor())
        .expect("preset exponents are in range")
}

/// The 3x3 commutator kernel matrix
/// `c~_ij(k) = (delta_ij k^2 - k_i k_j)/(2k) ± (i/2) eps_ilj k_l`.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    pub k: [f64; 3],
    pub sign: HelicitySign,
    pub entries: [[Complex64; 3]; 3],
}

pub fn kernel_matrix(k: [f64; 3], sign: HelicitySign) -> Result<KernelMatrix> {
    let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if k2 == 0.0 {
        return Err(Error::InvalidParameter(
            "kernel matrix is undefined at k = 0".into(),
        ));
    }
    let kmag = k2.sqrt();
    let s = sign.factor();
    let mut entries = [[Complex64::default(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let sym = (if i == j { k2 } else { 0.0 } - k[i] * k[j]) / (2.0 * kmag);
            entries[i][j] = Complex64::new(sym, 0.5 * s * eps_contract(i, j, k));
        }
    }
    Ok(KernelMatrix { k, sign, entries })
}

/// `sum_l eps_ilj k_l`.
#[inline]
fn eps_contract(i: usize, j: usize, k: [f64; 3]) -> f64 {
    match (i, j) {
        (0, 1) => -k[2],
        (1, 0) => k[2],
        (0, 2) => k[1],
        (2, 0) => -k[1],
        (1, 2) => -k[0],
        (2, 1) => k[0],
        _ => 0.0,
    }
}

impl KernelMatrix {
    pub fn kmag(&self) -> f64 {
        (self.k[0] * self.k[0] + self.k[1] * self.k[1] + self.k[2] * self.k[2]).sqrt()
    }

    /// Largest deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.entries[i][j] - self.entries[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1] + self.entries[2][2]
    }

    /// Eigenvalues in descending order, computed through the real
    /// symmetric embedding `[[A, -B], [B, A]]` of the Hermitian matrix
    /// `A + iB` (each eigenvalue appears twice in the embedding).
    pub fn eigenvalues(&self) -> [f64; 3] {
        let mut m = Matrix6::<f64>::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let a = self.entries[i][j].re;
                let b = self.entries[i][j].im;
                m[(i, j)] = a;
                m[(i + 3, j + 3)] = a;
                m[(i, j + 3)] = -b;
                m[(i + 3, j)] = b;
            }
        }
        let eig = SymmetricEigen::new(m);
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        [vals[0], vals[2], vals[4]]
    }

    pub fn apply(&self, v: [Complex64; 3]) -> [Complex64; 3] {
        let mut out = [Complex64::default(); 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i] += self.entries[i][j] * v[j];
            }
        }
        out
    }
}
