use crate::error::{Error, Result};

/// Periodic cubic lattice: `n` points per axis over a box of edge `length`.
///
/// Position coordinates run over `[-L/2, L/2)` in steps of `dx = L/n`, so the
/// box is centered on the origin. The wavevector lattice is
/// `k = 2*pi/L * m` with integer `m` in `[-n/2, n/2)` per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n: usize,
    length: f64,
}

impl Grid {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n < 8 || n % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "n must be even and at least 8, got {n}"
            )));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "box length must be positive, got {length}"
            )));
        }
        Ok(Self { n, length })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.length
    }

    #[inline]
    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    #[inline]
    pub fn volume(&self) -> f64 {
        self.length.powi(3)
    }

    #[inline]
    pub fn sites(&self) -> usize {
        self.n * self.n * self.n
    }

    /// Cell volume element `dx^3` used as the position-space measure.
    #[inline]
    pub fn dv(&self) -> f64 {
        self.dx().powi(3)
    }

    /// Signed integer mode number for axis index `i`: `m` in `[-n/2, n/2)`.
    #[inline]
    pub fn mode(&self, i: usize) -> i64 {
        let half = (self.n / 2) as i64;
        let i = i as i64;
        if i < half {
            i
        } else {
            i - self.n as i64
        }
    }

    /// Wavevector component along one axis for index `i`.
    #[inline]
    pub fn k1(&self, i: usize) -> f64 {
        2.0 * std::f64::consts::PI / self.length * self.mode(i) as f64
    }

    /// Full wavevector for the site index triple.
    #[inline]
    pub fn wavevector(&self, ix: usize, iy: usize, iz: usize) -> [f64; 3] {
        [self.k1(ix), self.k1(iy), self.k1(iz)]
    }

    /// Position coordinate along one axis for index `i`, in `[-L/2, L/2)`.
    #[inline]
    pub fn x1(&self, i: usize) -> f64 {
        (i as i64 - (self.n / 2) as i64) as f64 * self.dx()
    }

    /// Position of a lattice site.
    #[inline]
    pub fn position(&self, ix: usize, iy: usize, iz: usize) -> [f64; 3] {
        [self.x1(ix), self.x1(iy), self.x1(iz)]
    }

    /// Flat site index with x fastest: `(iz*n + iy)*n + ix`.
    #[inline]
    pub fn site(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (iz * self.n + iy) * self.n + ix
    }

    /// Inverse of [`site`](Self::site).
    #[inline]
    pub fn unravel(&self, s: usize) -> (usize, usize, usize) {
        let ix = s % self.n;
        let iy = (s / self.n) % self.n;
        let iz = s / (self.n * self.n);
        (ix, iy, iz)
    }

    /// Minimum-image displacement from `from` to `to`.
    pub fn min_image(&self, from: [f64; 3], to: [f64; 3]) -> [f64; 3] {
        let mut d = [0.0; 3];
        for a in 0..3 {
            let mut v = to[a] - from[a];
            v -= self.length * (v / self.length).round();
            d[a] = v;
        }
        d
    }

    /// Minimum-image distance between two points.
    pub fn min_image_distance(&self, from: [f64; 3], to: [f64; 3]) -> f64 {
        let d = self.min_image(from, to);
        (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
    }

    /// Radius inside which long-range tails are trusted (periodic images
    /// contaminate beyond `L/4`).
    #[inline]
    pub fn trusted_radius(&self) -> f64 {
        self.length / 4.0
    }
}

/// Spherical region used to define localization volumes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSpec {
    pub center: [f64; 3],
    pub radius: f64,
}

impl RegionSpec {
    pub fn new(center: [f64; 3], radius: f64, grid: &Grid) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "region radius must be positive, got {radius}"
            )));
        }
        if radius >= grid.length() / 2.0 {
            return Err(Error::InvalidParameter(format!(
                "region radius {radius} does not fit in box of length {} with margin",
                grid.length()
            )));
        }
        Ok(Self { center, radius })
    }
}
