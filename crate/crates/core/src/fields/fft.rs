//! 3-D discrete Fourier transform backing the unitary transform contract.
//!
//! Forward convention (matching `(2 pi)^{-3/2} int e^{-i x.xi} f dx`):
//!
//! ```text
//! fhat(xi_m) = (2 pi)^{-3/2} h^3 (-1)^{mx+my+mz} DFT[f]_m
//! f(x_j)     = (2 pi)^{-3/2} (pi/L)^3 IDFT[(-1)^m fhat]_j
//! ```
//!
//! with x_j = -L + j h and xi_m = (pi/L) m, m in {-n/2, .., n/2-1}. The
//! parity factor carries the -L offset of the position grid; n is even, so
//! (-1)^m is well defined from the wrapped index. With the dual volume
//! element (pi/L)^3 the pair is exactly unitary.

use crate::C64;
use once_cell::sync::Lazy;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use std::sync::{Arc, Mutex};

static PLANNER: Lazy<Mutex<FftPlanner<f64>>> = Lazy::new(|| Mutex::new(FftPlanner::new()));

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    Forward,
    Inverse,
}

fn plan(n: usize, dir: Direction) -> Arc<dyn Fft<f64>> {
    let mut planner = PLANNER.lock().unwrap();
    match dir {
        Direction::Forward => planner.plan_fft_forward(n),
        Direction::Inverse => planner.plan_fft_inverse(n),
    }
}

/// Unnormalized 3-D DFT of an x-fastest cube, in place.
pub(crate) fn dft3(values: &mut [C64], n: usize, dir: Direction) {
    debug_assert_eq!(values.len(), n * n * n);
    let fft = plan(n, dir);
    let scratch_len = fft.get_inplace_scratch_len();

    // x lines are contiguous
    values
        .par_chunks_mut(n)
        .for_each_init(
            || vec![C64::default(); scratch_len],
            |scratch, line| fft.process_with_scratch(line, scratch),
        );

    // y lines: stride n inside each z slab
    let mut buf = vec![C64::default(); n];
    let mut scratch = vec![C64::default(); scratch_len];
    for iz in 0..n {
        let slab = &mut values[iz * n * n..(iz + 1) * n * n];
        for ix in 0..n {
            for iy in 0..n {
                buf[iy] = slab[ix + n * iy];
            }
            fft.process_with_scratch(&mut buf, &mut scratch);
            for iy in 0..n {
                slab[ix + n * iy] = buf[iy];
            }
        }
    }

    // z lines: stride n^2
    let n2 = n * n;
    for iy in 0..n {
        for ix in 0..n {
            let base = ix + n * iy;
            for iz in 0..n {
                buf[iz] = values[base + n2 * iz];
            }
            fft.process_with_scratch(&mut buf, &mut scratch);
            for iz in 0..n {
                values[base + n2 * iz] = buf[iz];
            }
        }
    }
}

/// Multiply by scale * (-1)^(kx+ky+kz), in place.
pub(crate) fn apply_parity_scale(values: &mut [C64], n: usize, scale: f64) {
    values
        .par_chunks_mut(n * n)
        .enumerate()
        .for_each(|(iz, slab)| {
            for iy in 0..n {
                let row_parity = (iz + iy) & 1;
                let row = &mut slab[iy * n..(iy + 1) * n];
                for (ix, v) in row.iter_mut().enumerate() {
                    let sign = if ((ix + row_parity) & 1) == 0 {
                        scale
                    } else {
                        -scale
                    };
                    *v *= sign;
                }
            }
        });
}
