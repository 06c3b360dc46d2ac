//! Internal 3D FFT built from 1D transforms along contiguous rows.
//!
//! The cube is cyclically transposed between axis passes so every 1D
//! transform runs on contiguous memory; rows are processed in parallel.
//! Plans are cached per grid size.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type PlanPair = (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>);

fn plans(n: usize) -> PlanPair {
    static CACHE: OnceLock<Mutex<HashMap<usize, PlanPair>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("fft plan cache poisoned");
    map.entry(n)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            (planner.plan_fft_forward(n), planner.plan_fft_inverse(n))
        })
        .clone()
}

/// Transform every contiguous row of length `n` in parallel.
fn fft_rows(data: &mut [Complex64], n: usize, fft: &Arc<dyn Fft<f64>>) {
    let scratch_len = fft.get_inplace_scratch_len();
    data.par_chunks_exact_mut(n).for_each_init(
        || vec![Complex64::default(); scratch_len],
        |scratch, row| fft.process_with_scratch(row, scratch),
    );
}

/// Cyclic axis rotation: the output x-axis is the input y-axis.
///
/// With flat index `(iz*n + iy)*n + ix`, writes
/// `dst[(ix*n + iz)*n + iy] = src[(iz*n + iy)*n + ix]`.
fn rotate(src: &[Complex64], dst: &mut [Complex64], n: usize) {
    dst.par_chunks_exact_mut(n)
        .enumerate()
        .for_each(|(row, out)| {
            // row = izp*n + iyp where izp = old ix, iyp = old iz
            let old_ix = row / n;
            let old_iz = row % n;
            let base = old_iz * n * n + old_ix;
            for (old_iy, o) in out.iter_mut().enumerate() {
                *o = src[base + old_iy * n];
            }
        });
}

/// Unnormalized 3D DFT over all three axes, in place.
pub(crate) fn dft3(data: &mut Vec<Complex64>, n: usize, forward: bool) {
    let (fwd, inv) = plans(n);
    let fft = if forward { fwd } else { inv };
    let mut scratch = vec![Complex64::default(); data.len()];
    for _ in 0..3 {
        fft_rows(data, n, &fft);
        rotate(data, &mut scratch, n);
        std::mem::swap(data, &mut scratch);
    }
}
