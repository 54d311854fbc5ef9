//! Generating functions of the biorthogonal system and their analytic
//! continuation across the even-rational partition.
//!
//! The base object is the contour integral
//!
//!   Phi^delta_Gamma(x; z) = (1/2 pi i) int_Gamma lambda'(z) dzeta /
//!                           ((lambda(z) - lambda(zeta)) w_delta(x, zeta)^2),
//!
//! with weight w_0(x,zeta) = zeta + x and w_1(x,zeta) = x zeta - 1 (the
//! x = 0 case is the literal algebraic substitution x^0 = 1, (-x)^1 = 0).
//! Over the semicircle gamma(-1,1) this is `phi_inf`, holomorphic off the
//! lambda-preimage of the line Re = 1/2; over the rectangle contour
//! Pi(-1,1) it is `phi_pi`, defined on the cell of zero. `phi_strip` glues
//! the two along the even Gauss orbit into the analytic continuation on the
//! strip |Re z| <= 1.

use crate::cfrac::{classify_with_orbit, CellKind};
use crate::config::{EvalConfig, QuadConfig};
use crate::error::{Error, Result};
use crate::quad::{integrate_gamma, integrate_seeded};
use crate::theta::{lambda, lambda_with_prime, C64};

/// Distance from a classification boundary below which points are refused.
pub const BOUNDARY_EPS: f64 = 1e-9;

/// lambda(+-1 + it) grows at least like ((17 - 12 sqrt 2)/16) e^{pi/t}.
fn c_lambda_cusp() -> f64 {
    (17.0 - 12.0 * 2.0_f64.sqrt()) / 16.0
}

/// Weight x^delta zeta - (-x)^{1-delta}.
#[inline]
pub fn weight(delta: u8, x: f64, zeta: C64) -> C64 {
    match delta {
        0 => zeta + x,
        _ => x * zeta - 1.0,
    }
}

fn flip(delta: u8) -> u8 {
    1 - delta
}

/// delta_k alternates starting from delta: delta, 1-delta, delta, ...
fn delta_parity(delta: u8, k: usize) -> u8 {
    if k % 2 == 0 {
        delta
    } else {
        flip(delta)
    }
}

fn check_delta(delta: u8) -> Result<()> {
    if delta > 1 {
        return Err(Error::InvalidInput(format!("delta must be 0 or 1, got {delta}")));
    }
    Ok(())
}

/// Phi^delta_infinity(x; z): the gamma(-1,1) contour integral, for z in the
/// upper half-plane with clearance from the singular set where
/// Re lambda = 1/2.
pub fn phi_inf(delta: u8, x: f64, z: C64, quad: &QuadConfig) -> Result<C64> {
    check_delta(delta)?;
    let ecfg = EvalConfig::default();
    let (lz, lpz) = lambda_with_prime(z, &ecfg)?;
    if (lz.re - 0.5).abs() < BOUNDARY_EPS {
        return Err(Error::BoundaryAmbiguous(format!(
            "lambda({z}) = {lz} too close to the line Re = 1/2"
        )));
    }
    // Truncation of the contour: |lambda(zeta(t))| >= e^{(pi/2)(t+1/t)}/64
    // dominates everything else once t is large, and the integrand then
    // decays like e^{-(pi/2) t}.
    let tol = quad.abs_tol;
    let t_need = (2.0 / std::f64::consts::PI)
        * ((128.0 * (1.0 + lpz.norm()) / (std::f64::consts::PI * tol.max(1e-15))).ln())
            .max((256.0 * (1.0 + lz.norm())).ln());
    let local = QuadConfig {
        t_max: t_need.max(4.0),
        ..*quad
    };
    let two_pi_i = C64::new(0.0, 2.0 * std::f64::consts::PI);
    let g = |zeta: C64| -> Result<C64> {
        let lzeta = lambda(zeta, &ecfg)?;
        let w = weight(delta, x, zeta);
        Ok(lpz / ((lz - lzeta) * w * w))
    };
    Ok(integrate_gamma(&g, &local)? / two_pi_i)
}

/// Phi^delta_rectangle(x; z): the same integrand over the contour
/// Pi(-1,1) from -1 up to -1+2i, across to 1+2i, and down to 1.
/// Valid (and used) for z in the cell of zero, where lambda(z) has
/// Re > 1/2 while lambda(Pi) stays in Re < 1/2.
pub fn phi_pi(delta: u8, x: f64, z: C64, quad: &QuadConfig) -> Result<C64> {
    check_delta(delta)?;
    let ecfg = EvalConfig::default();
    let (lz, lpz) = lambda_with_prime(z, &ecfg)?;
    phi_pi_with(delta, x, lz, lpz, quad)
}

/// Rectangle-contour integral with lambda(z), lambda'(z) precomputed.
fn phi_pi_with(delta: u8, x: f64, lz: C64, lpz: C64, quad: &QuadConfig) -> Result<C64> {
    let ecfg = EvalConfig::default();
    let tol = quad.abs_tol;
    // Truncate the vertical segments at im zeta = t_min: the endpoint decay
    // |lambda(+-1+it)| >= c e^{pi/t} makes the discarded piece smaller than
    // (5 |lambda'(z)| / (pi^2 c)) e^{-pi/t_min}.
    let c = c_lambda_cusp();
    let needed = (2.0 * (1.0 + lz.norm()) / c)
        .max(5.0 * (1.0 + lpz.norm()) / (std::f64::consts::PI.powi(2) * c * tol.max(1e-15)));
    let t_min = (std::f64::consts::PI / needed.ln()).min(1.9);
    let integrand = |zeta: C64| -> Result<C64> {
        let lzeta = lambda(zeta, &ecfg)?;
        let w = weight(delta, x, zeta);
        Ok(lpz / ((lz - lzeta) * w * w))
    };
    // left vertical, upward, in v = 1/t coordinates toward the cusp at -1
    let vmax = 1.0 / t_min;
    let mut seeds = vec![0.5];
    let mut v = 1.0;
    while v < vmax {
        seeds.push(v);
        v *= 2.0;
    }
    seeds.push(vmax);
    let left = integrate_seeded(
        &|v: f64| {
            let t = 1.0 / v;
            let zeta = C64::new(-1.0, t);
            // dzeta = i dt = -i dv / v^2; upward means t from t_min to 2, v from vmax down to 1/2:
            // we integrate over increasing v and negate afterwards.
            Ok(integrand(zeta)? * C64::new(0.0, -1.0) / (v * v))
        },
        &seeds,
        quad,
    )?;
    let left = -left; // reverse to run t upward
    let top = integrate_seeded(
        &|s: f64| Ok(integrand(C64::new(s, 2.0))?),
        &[-1.0, 0.0, 1.0],
        quad,
    )?;
    let right = integrate_seeded(
        &|v: f64| {
            let t = 1.0 / v;
            let zeta = C64::new(1.0, t);
            Ok(integrand(zeta)? * C64::new(0.0, -1.0) / (v * v))
        },
        &seeds,
        quad,
    )?;
    // right segment runs downward (t from 2 to t_min), i.e. increasing v: keep sign.
    let two_pi_i = C64::new(0.0, 2.0 * std::f64::consts::PI);
    Ok((left + top + right) / two_pi_i)
}

/// The analytic continuation Phi^delta_strip(x; z) on |Re z| <= 1, evaluated
/// through the even-rational classification of z:
/// on the exterior set it is -z^{-2} Phi^{1-delta}_rect(x; -1/z); on the cell
/// of zero the rectangle value minus the reflected pole 1/w_delta(x,z)^2; on
/// a word cell the finite sum of Moebius-derivative terms along the Gauss
/// orbit plus the transported rectangle value.
pub fn phi_strip(delta: u8, x: f64, z: C64, quad: &QuadConfig) -> Result<C64> {
    check_delta(delta)?;
    if z.re.abs() > 1.0 + 1e-12 {
        return Err(Error::OutsideDomain(format!(
            "phi_strip needs |Re z| <= 1, got {z}"
        )));
    }
    let (cell, steps) = classify_with_orbit(z, BOUNDARY_EPS)?;
    let ecfg = EvalConfig::default();
    match cell.kind {
        CellKind::EInf => {
            let w = -1.0 / z;
            let (lw, lpw) = lambda_with_prime(w, &ecfg)?;
            let rect = phi_pi_with(flip(delta), x, lw, lpw, quad)?;
            Ok(-rect / (z * z))
        }
        CellKind::EWord => {
            debug_assert_eq!(cell.shift, 0, "word cells live strictly inside the strip");
            let height = cell.height;
            let n_len = height - 1; // word length N
            let w0 = weight(delta, x, z);
            let mut acc = -1.0 / (w0 * w0);
            for (k, step) in steps.iter().take(n_len).enumerate() {
                let psi_prime = step.matrix.derivative(z);
                let dk = delta_parity(delta, k);
                // (x^{1-delta_k} G^{k+1}(z) - (-x)^{delta_k})^2 = w_{1-delta_k}^2
                let wk = weight(flip(dk), x, step.iterate);
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * psi_prime / (wk * wk);
            }
            let (endpoint, psi_n) = if n_len == 0 {
                (z, C64::new(1.0, 0.0))
            } else {
                let s = &steps[n_len - 1];
                (s.iterate, s.matrix.derivative(z))
            };
            let (le, lpe) = lambda_with_prime(endpoint, &ecfg)?;
            let rect = phi_pi_with(delta_parity(delta, n_len), x, le, lpe, quad)?;
            let sign = if n_len % 2 == 0 { 1.0 } else { -1.0 };
            Ok(acc + sign * psi_n * rect)
        }
    }
}
