//! Fourier-multiplier realizations of the free Dirac operator `H0`, the
//! singular integral operator `A`, the Riesz potential `I1`, and the
//! resolvents `Gamma0(z)` and `R0(z)`, together with the operator identities
//! connecting them.
//!
//! Every operator here has a symbol of the form `a(xi) (alpha . xi) + b(xi) I`,
//! so one applier covers them all. Conventions:
//!
//! * DC mode of singular multipliers (|xi|^-1, |xi|^-2, (alpha.xi)/|xi|^2) is
//!   set to zero; constants are not square integrable on R^3, and on
//!   mean-free data this matches the continuum operator. Identity checks
//!   state the mean-free restriction explicitly.
//! * Nyquist rows are zeroed when applying odd multipliers; the unpaired
//!   mode would otherwise break the Hermitian symmetry of real-originated
//!   data.
//! * sqrt(z) uses the branch with Im sqrt >= 0 on the cut plane and
//!   +/- sqrt(lambda) on the two rims of the positive half-line.
//!
//! The Riesz multiplier is |xi|^{-1}, consistent with the kernel
//! 1/(2 pi^2 |x-y|^2) under the unitary transform convention and with the
//! pi/2 constant in the pointwise domination of `A`.

use crate::error::DzmError;
use crate::fields::{Domain, Grid, ScalarField, SpinorField};
use crate::{Result, C64};
use serde::{Deserialize, Serialize};

/// Which part of the boundary set a spectral parameter lies on: the cut
/// plane itself, or one of the rims lambda +/- i0 of the positive half-line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rim {
    Interior,
    Plus,
    Minus,
}

/// Spectral parameter z tagged with its location on the boundary set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SheetPoint {
    z: C64,
    rim: Rim,
}

impl SheetPoint {
    /// z in the cut plane C \ [0, inf).
    pub fn interior(z: C64) -> Result<Self> {
        if z.im == 0.0 && z.re >= 0.0 {
            return Err(DzmError::InvalidSpectralPoint(format!(
                "z = {z} lies on [0, inf); use a rim constructor"
            )));
        }
        Ok(SheetPoint {
            z,
            rim: Rim::Interior,
        })
    }

    /// Boundary value lambda + i0, lambda >= 0.
    pub fn plus(lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) {
            return Err(DzmError::InvalidSpectralPoint(format!(
                "rim parameter must be real >= 0, got {lambda}"
            )));
        }
        Ok(SheetPoint {
            z: C64::new(lambda, 0.0),
            rim: Rim::Plus,
        })
    }

    /// Boundary value lambda - i0, lambda >= 0.
    pub fn minus(lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) {
            return Err(DzmError::InvalidSpectralPoint(format!(
                "rim parameter must be real >= 0, got {lambda}"
            )));
        }
        Ok(SheetPoint {
            z: C64::new(lambda, 0.0),
            rim: Rim::Minus,
        })
    }

    pub fn z(&self) -> C64 {
        self.z
    }

    pub fn rim(&self) -> Rim {
        self.rim
    }

    /// sqrt(z) with Im >= 0 on the cut plane; +/- sqrt(lambda) on the rims,
    /// computed from the real square root so no branch ambiguity enters.
    pub fn sqrt(&self) -> C64 {
        match self.rim {
            Rim::Interior => {
                let mut w = self.z.sqrt();
                if w.im < 0.0 {
                    w = -w;
                }
                w
            }
            Rim::Plus => C64::new(self.z.re.sqrt(), 0.0),
            Rim::Minus => C64::new(-self.z.re.sqrt(), 0.0),
        }
    }
}

/// DC-mode policy of a multiplier: drop the mode or multiply it by a value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DcPolicy {
    Zero,
    Value(C64),
}

/// Symbol split as a(xi) (alpha . xi) + b(xi) I, the form every operator in
/// this crate takes.
pub struct Multiplier<'a> {
    pub alpha_coeff: &'a dyn Fn([f64; 3]) -> C64,
    pub scalar_coeff: &'a dyn Fn([f64; 3]) -> C64,
    pub dc_policy: DcPolicy,
    pub zero_nyquist: bool,
}

/// Applies a multiplier: transform, act modewise, transform back.
pub fn apply_multiplier(m: &Multiplier<'_>, f: &SpinorField) -> SpinorField {
    assert!(f.domain == Domain::Position);
    let grid = f.grid;
    let n = grid.n();
    let nyq = grid.nyquist_index();
    let mut fh = f.forward();
    for kz in 0..n {
        for ky in 0..n {
            for kx in 0..n {
                let lin = grid.linear(kx, ky, kz);
                if kx == 0 && ky == 0 && kz == 0 {
                    match m.dc_policy {
                        DcPolicy::Zero => {
                            for c in 0..4 {
                                fh.comps[c][lin] = C64::default();
                            }
                        }
                        DcPolicy::Value(v) => {
                            for c in 0..4 {
                                fh.comps[c][lin] *= v;
                            }
                        }
                    }
                    continue;
                }
                if m.zero_nyquist && (kx == nyq || ky == nyq || kz == nyq) {
                    for c in 0..4 {
                        fh.comps[c][lin] = C64::default();
                    }
                    continue;
                }
                let xi = grid.freq(kx, ky, kz);
                let a = (m.alpha_coeff)(xi);
                let b = (m.scalar_coeff)(xi);
                let s = fh.at(lin);
                let mut out = if a != C64::default() {
                    let ad = crate::algebra::alpha_dot(xi, &s);
                    [ad[0] * a, ad[1] * a, ad[2] * a, ad[3] * a]
                } else {
                    [C64::default(); 4]
                };
                if b != C64::default() {
                    for c in 0..4 {
                        out[c] += b * s[c];
                    }
                }
                fh.set(lin, out);
            }
        }
    }
    fh.inverse()
}

fn xi_sq(xi: [f64; 3]) -> f64 {
    xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]
}

const ZERO_C: C64 = C64::new(0.0, 0.0);
const ONE_C: C64 = C64::new(1.0, 0.0);

/// Free Dirac operator: multiplier alpha . xi.
pub fn apply_h0(f: &SpinorField) -> SpinorField {
    apply_multiplier(
        &Multiplier {
            alpha_coeff: &|_| ONE_C,
            scalar_coeff: &|_| ZERO_C,
            dc_policy: DcPolicy::Zero, // alpha . 0 = 0 regardless
            zero_nyquist: true,
        },
        f,
    )
}

/// Singular integral operator: multiplier (alpha . xi)/|xi|^2, DC dropped.
pub fn apply_a(f: &SpinorField) -> SpinorField {
    apply_multiplier(
        &Multiplier {
            alpha_coeff: &|xi| C64::new(1.0 / xi_sq(xi), 0.0),
            scalar_coeff: &|_| ZERO_C,
            dc_policy: DcPolicy::Zero,
            zero_nyquist: true,
        },
        f,
    )
}

/// H0 A g: equals g minus its mean on band-limited data.
pub fn apply_h0_after_a(g: &SpinorField) -> SpinorField {
    apply_h0(&apply_a(g))
}

/// Riesz potential I1: scalar multiplier |xi|^{-1}, DC dropped. The kernel
/// realization is 1/(2 pi^2 |x - y|^2).
pub fn apply_riesz1(u: &ScalarField) -> ScalarField {
    assert!(u.domain == Domain::Position);
    let grid = u.grid;
    let n = grid.n();
    let mut uh = u.forward();
    for kz in 0..n {
        for ky in 0..n {
            for kx in 0..n {
                let lin = grid.linear(kx, ky, kz);
                if kx == 0 && ky == 0 && kz == 0 {
                    uh.values[lin] = C64::default();
                    continue;
                }
                let q = xi_sq(grid.freq(kx, ky, kz)).sqrt();
                uh.values[lin] /= q;
            }
        }
    }
    uh.inverse()
}

fn shell_check(grid: Grid, lambda: f64) -> Result<()> {
    let n = grid.n();
    let mut min_dist = f64::INFINITY;
    for kz in 0..n {
        for ky in 0..n {
            for kx in 0..n {
                if kx == 0 && ky == 0 && kz == 0 {
                    // the DC mode is governed by the dc policy, not the shell
                    continue;
                }
                let d = (xi_sq(grid.freq(kx, ky, kz)) - lambda).abs();
                if d < min_dist {
                    min_dist = d;
                }
            }
        }
    }
    if min_dist < 1e-9 {
        return Err(DzmError::ResonantShell {
            lambda,
            dist: min_dist,
        });
    }
    Ok(())
}

/// Resolvent of the negative Laplacian: multiplier (|xi|^2 - z)^{-1}.
///
/// On the rims the grid realization is the principal value: the multiplier
/// is real and identical for both rims; the rim distinction lives in the
/// closed-form kernels. Evaluation is refused when a dual lattice point
/// falls within 1e-9 of the shell |xi|^2 = lambda, rather than silently
/// regularizing a grid resonance.
pub fn apply_gamma0(z: &SheetPoint, u: &SpinorField) -> Result<SpinorField> {
    let lambda = z.z();
    if z.rim() != Rim::Interior {
        shell_check(u.grid, lambda.re)?;
    }
    let dc = if lambda == ZERO_C {
        DcPolicy::Zero
    } else {
        DcPolicy::Value(-1.0 / lambda)
    };
    Ok(apply_multiplier(
        &Multiplier {
            alpha_coeff: &|_| ZERO_C,
            scalar_coeff: &|xi| 1.0 / (C64::new(xi_sq(xi), 0.0) - lambda),
            dc_policy: dc,
            zero_nyquist: false,
        },
        u,
    ))
}

/// Free Dirac resolvent R0(z) = (H0 + z) Gamma0(z^2).
///
/// Interior points must have Im z != 0 (z^2 off the cut); rim points reuse
/// the principal-value realization of Gamma0 at lambda^2, and both rims
/// coincide with `apply_a` at lambda = 0.
pub fn apply_r0(z: &SheetPoint, f: &SpinorField) -> Result<SpinorField> {
    let zv = z.z();
    match z.rim() {
        Rim::Interior => {
            if zv.im == 0.0 {
                return Err(DzmError::InvalidSpectralPoint(format!(
                    "interior resolvent point must have Im z != 0, got {zv}"
                )));
            }
        }
        _ => {
            shell_check(f.grid, zv.re * zv.re)?;
        }
    }
    let z2 = zv * zv;
    let dc = if zv == ZERO_C {
        DcPolicy::Zero
    } else {
        // (alpha.0 + z)/(0 - z^2) = -1/z
        DcPolicy::Value(-1.0 / zv)
    };
    Ok(apply_multiplier(
        &Multiplier {
            alpha_coeff: &|xi| 1.0 / (C64::new(xi_sq(xi), 0.0) - z2),
            scalar_coeff: &|xi| zv / (C64::new(xi_sq(xi), 0.0) - z2),
            dc_policy: dc,
            zero_nyquist: true,
        },
        f,
    ))
}

/// Multiplier (1 + |xi|^2): the operator <D>^2, used by the resolvent
/// identity checks.
pub fn apply_bracket_d_sq(f: &SpinorField) -> SpinorField {
    apply_multiplier(
        &Multiplier {
            alpha_coeff: &|_| ZERO_C,
            scalar_coeff: &|xi| C64::new(1.0 + xi_sq(xi), 0.0),
            dc_policy: DcPolicy::Value(ONE_C),
            zero_nyquist: false,
        },
        f,
    )
}

/// Multiplier |xi|^2 (minus the Laplacian).
pub fn apply_minus_laplacian(f: &SpinorField) -> SpinorField {
    apply_multiplier(
        &Multiplier {
            alpha_coeff: &|_| ZERO_C,
            scalar_coeff: &|xi| C64::new(xi_sq(xi), 0.0),
            dc_policy: DcPolicy::Zero,
            zero_nyquist: false,
        },
        f,
    )
}

/// Spectral gradient of a scalar field; i xi_j with Nyquist rows zeroed.
pub fn gradient_scalar(u: &ScalarField) -> [ScalarField; 3] {
    assert!(u.domain == Domain::Position);
    let grid = u.grid;
    let n = grid.n();
    let nyq = grid.nyquist_index();
    let uh = u.forward();
    std::array::from_fn(|axis| {
        let mut gh = uh.clone();
        for kz in 0..n {
            for ky in 0..n {
                for kx in 0..n {
                    let lin = grid.linear(kx, ky, kz);
                    if kx == nyq || ky == nyq || kz == nyq {
                        gh.values[lin] = C64::default();
                        continue;
                    }
                    let xi = grid.freq(kx, ky, kz);
                    gh.values[lin] *= C64::new(0.0, xi[axis]);
                }
            }
        }
        gh.inverse()
    })
}

/// Sum of squared gradient L2 norms of a scalar field.
pub fn gradient_norm_sq_scalar(u: &ScalarField) -> f64 {
    gradient_scalar(u)
        .iter()
        .map(|g| {
            let n = g.l2_norm();
            n * n
        })
        .sum()
}

/// Sum of squared gradient L2 norms over all four spinor components.
pub fn gradient_norm_sq(f: &SpinorField) -> f64 {
    let grid = f.grid;
    (0..4)
        .map(|c| {
            let u = ScalarField {
                grid,
                domain: Domain::Position,
                values: f.comps[c].clone(),
            };
            gradient_norm_sq_scalar(&u)
        })
        .sum()
}

/// || u / |x| ||_2 with the origin point excluded (weight zero there); the
/// excluded point contributes O(h^3) to an integrable singularity.
pub fn inverse_radius_norm(u: &ScalarField) -> f64 {
    assert!(u.domain == Domain::Position);
    let grid = u.grid;
    let n = grid.n();
    let mut s = 0.0f64;
    for iz in 0..n {
        for iy in 0..n {
            for ix in 0..n {
                let x = grid.position(ix, iy, iz);
                let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
                if r2 == 0.0 {
                    continue;
                }
                s += u.values[grid.linear(ix, iy, iz)].norm_sqr() / r2;
            }
        }
    }
    (grid.cell() * s).sqrt()
}

/// || |xi| fhat ||_2: the frequency-side form of || H0 f ||_2.
pub fn frequency_weighted_norm(f: &SpinorField) -> f64 {
    assert!(f.domain == Domain::Position);
    let grid = f.grid;
    let n = grid.n();
    let nyq = grid.nyquist_index();
    let fh = f.forward();
    let mut s = 0.0f64;
    for kz in 0..n {
        for ky in 0..n {
            for kx in 0..n {
                if kx == nyq || ky == nyq || kz == nyq {
                    continue; // match the odd-multiplier Nyquist convention
                }
                let lin = grid.linear(kx, ky, kz);
                let q2 = xi_sq(grid.freq(kx, ky, kz));
                let m2 = fh.comps[0][lin].norm_sqr()
                    + fh.comps[1][lin].norm_sqr()
                    + fh.comps[2][lin].norm_sqr()
                    + fh.comps[3][lin].norm_sqr();
                s += q2 * m2;
            }
        }
    }
    (grid.dual_cell() * s).sqrt()
}
