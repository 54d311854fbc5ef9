//! Klein-Gordon solutions U_phi, the interpolating functions R_n on the
//! characteristics, reconstruction from lattice samples, and the continuous
//! solution test on rectangles.
//!
//! On the quadrant x >= 0, y <= 0 the interpolating functions have the
//! contour representations
//!
//!   R_n(x, -y) = (1/2 pi n) int_gamma (x + y/z^2) e^{i x z - i y/z} S_n(1/lambda(z)) dz,
//!   R_0(x, -y) = (1/2)      int_gamma Theta3(z)^4 e^{i x z - i y/z} dz,
//!
//! (x, y >= 0), while for n >= 1 the opposite mixed pattern vanishes:
//! R_n(-x, y) = 0. The reconstruction formula
//! U(x,y) = U(0,0) R_0 + sum_n [U(pi n,0) R_n(x,y) + U(0,-pi n) R_n(-y,-x) + ...]
//! therefore needs only computable terms on that quadrant.

use serde::{Deserialize, Serialize};

use crate::config::{EvalConfig, QuadConfig};
use crate::error::{Error, Result};
use crate::faber::FaberBasis;
use crate::hfs::{Support, TestFunction};
use crate::quad::{integrate, integrate_gamma, integrate_oscillatory, integrate_seeded};
use crate::theta::{big_theta, C64};

/// Truncated lattice samples U(pi n, 0) and U(0, pi n).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KGSamples {
    pub n_max: usize,
    /// ux[(n + n_max)] = U(pi n, 0), |n| <= n_max
    pub ux: Vec<(f64, f64)>,
    /// uy[(n + n_max)] = U(0, pi n), |n| <= n_max (the n = 0 slot unused)
    pub uy: Vec<(f64, f64)>,
}

impl KGSamples {
    pub fn zero(n_max: usize) -> Self {
        KGSamples {
            n_max,
            ux: vec![(0.0, 0.0); 2 * n_max + 1],
            uy: vec![(0.0, 0.0); 2 * n_max + 1],
        }
    }

    pub fn ux(&self, n: i64) -> C64 {
        let (re, im) = self.ux[(n + self.n_max as i64) as usize];
        C64::new(re, im)
    }

    pub fn uy(&self, n: i64) -> C64 {
        let (re, im) = self.uy[(n + self.n_max as i64) as usize];
        C64::new(re, im)
    }

    pub fn set_ux(&mut self, n: i64, v: C64) {
        self.ux[(n + self.n_max as i64) as usize] = (v.re, v.im);
    }

    pub fn set_uy(&mut self, n: i64, v: C64) {
        self.uy[(n + self.n_max as i64) as usize] = (v.re, v.im);
    }
}

/// A point of the quadrant x >= 0, y <= 0 where every reconstruction term
/// is covered by a contour formula or a vanishing identity.
#[derive(Debug, Clone, Copy)]
pub struct QuadrantPoint {
    pub x: f64,
    pub y: f64,
}

impl QuadrantPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x < 0.0 || y > 0.0 {
            return Err(Error::OutsideDomain(format!(
                "quadrant point needs x >= 0, y <= 0, got ({x}, {y})"
            )));
        }
        Ok(QuadrantPoint { x, y })
    }
}

/// U_phi(x, y) = int e^{i x t + i y / t} phi(t) dt for phi supported away
/// from the origin on a finite interval.
pub fn u_phi(phi: &TestFunction, x: f64, y: f64, quad: &QuadConfig) -> Result<C64> {
    let (a, b) = match phi.support {
        Support::Interval(a, b) => (a, b),
        _ => {
            return Err(Error::InvalidInput(
                "u_phi needs an interval support".into(),
            ))
        }
    };
    let eps = 1e-9;
    if a <= eps && b >= -eps && a * b <= 0.0 {
        return Err(Error::OutsideDomain(
            "support must avoid a neighborhood of 0".into(),
        ));
    }
    let t_inner = a.abs().min(b.abs());
    let omega = x.abs() + y.abs() / (t_inner * t_inner);
    let f = |t: f64| -> Result<C64> {
        Ok(phi.at(t) * (C64::new(0.0, 1.0) * (x * t + y / t)).exp())
    };
    integrate_oscillatory(&f, a, b, omega, quad)
}

/// Evaluator for the interpolating functions, sharing the triangle basis.
pub struct KgEvaluator {
    pub faber: std::sync::Arc<FaberBasis>,
    pub quad: QuadConfig,
}

impl KgEvaluator {
    pub fn new(faber: std::sync::Arc<FaberBasis>) -> Self {
        KgEvaluator {
            faber,
            quad: QuadConfig::default(),
        }
    }

    /// Noise floor of the direct contour at index n: the integrand peaks at
    /// e^{pi n} around the apex, so double precision leaves an absolute
    /// residue of about 2e-18 e^{pi n} in the value (calibrated on
    /// R_n(pi, 0), whose true value vanishes).
    pub fn direct_noise_floor(&self, n: usize) -> f64 {
        if n == 0 {
            return 1e-12;
        }
        ((std::f64::consts::PI * n as f64).exp() * 5e-18).max(1e-12)
    }

    /// Contour value of R_n(x, -y) for x, y >= 0. The returned value is
    /// exact up to `direct_noise_floor(n)`; large indices are noise-limited.
    fn r_quadrant(&self, n: usize, x: f64, y: f64) -> Result<C64> {
        let ecfg = EvalConfig::default();
        debug_assert!(x >= 0.0 && y >= 0.0);
        if n == 0 {
            let g = |z: C64| -> Result<C64> {
                let t34 = big_theta(3, z, &ecfg)?.powu(4);
                let osc = (C64::new(0.0, 1.0) * (x * z - y / z)).exp();
                Ok(t34 * osc)
            };
            Ok(0.5 * integrate_gamma(&g, &self.quad)?)
        } else {
            let q = QuadConfig {
                abs_tol: self
                    .quad
                    .abs_tol
                    .max((std::f64::consts::PI * n as f64).exp() * 2e-14),
                t_max: self.quad.t_max
                    + (2.0 / std::f64::consts::PI) * 2.0 * std::f64::consts::PI * n as f64,
                ..self.quad
            };
            let g = |z: C64| -> Result<C64> {
                let r = self.faber.eval_r_triangle(n, z, &ecfg)?;
                let osc = (C64::new(0.0, 1.0) * (x * z - y / z)).exp();
                Ok((x + y / (z * z)) * r * osc)
            };
            Ok(integrate_gamma(&g, &q)? / (2.0 * std::f64::consts::PI * n as f64))
        }
    }

    /// R_n at a point with a supported sign pattern: the quadrants
    /// (x >= 0, y <= 0) and, via symmetry or vanishing, (x <= 0, y >= 0).
    pub fn r_interp(&self, n: usize, x: f64, y: f64) -> Result<C64> {
        if x >= 0.0 && y <= 0.0 {
            return self.r_quadrant(n, x, -y);
        }
        if x <= 0.0 && y >= 0.0 {
            return if n == 0 {
                // R_0(-x, y) = R_0(x, -y)
                self.r_quadrant(0, -x, y)
            } else {
                Ok(C64::new(0.0, 0.0))
            };
        }
        Err(Error::OutsideDomain(format!(
            "sign pattern ({x}, {y}) has no stable evaluation route for n = {n}"
        )))
    }

    /// Interpolation reconstruction on the quadrant per the sampling formula;
    /// the (-pi n, 0)/(0, pi n) terms vanish there. Terms whose contour
    /// noise floor exceeds O(1) carry no usable signal in double precision
    /// and are dropped into the error estimate instead of the sum. Returns
    /// the value and the estimate (skipped terms against the global R
    /// envelope plus a geometric fit of the sample tail).
    pub fn reconstruct(&self, s: &KGSamples, p: QuadrantPoint) -> Result<(C64, f64)> {
        let n = s.n_max;
        let pi7 = std::f64::consts::PI.powi(7);
        let mut acc = s.ux(0) * self.r_quadrant(0, p.x, -p.y)?;
        let mut err = 0.0;
        for k in 1..=n {
            let a = s.ux(k as i64);
            let b = s.uy(-(k as i64));
            let weight = a.norm().max(b.norm());
            let noise = self.direct_noise_floor(k);
            if noise > 1.0 {
                err += weight * pi7 * (k * k) as f64 / 2.0;
                continue;
            }
            err += weight * noise;
            if a.norm() > 1e-15 {
                acc += a * self.r_quadrant(k, p.x, -p.y)?;
            }
            if b.norm() > 1e-15 {
                // R_n(-y, -x): first argument -y >= 0, value at second
                // argument -x <= 0, i.e. the quadrant form R_n(X, -Y) with
                // X = -y and Y = x
                acc += b * self.r_quadrant(k, -p.y, p.x)?;
            }
            // U(-pi n, 0) R_n(-x,-y) and U(0, pi n) R_n(y, x) vanish on the
            // quadrant by the (-,+)-pattern identity.
        }
        // geometric decay fit of the last samples against the R envelope
        let mut last = Vec::new();
        for k in (n.saturating_sub(3))..=n {
            if k == 0 {
                continue;
            }
            last.push(
                s.ux(k as i64)
                    .norm()
                    .max(s.uy(-(k as i64)).norm())
                    .max(1e-300),
            );
        }
        let mut ratio: f64 = 0.5;
        for w in last.windows(2) {
            ratio = ratio.max(w[1] / w[0]);
        }
        let tail = if ratio < 0.999 {
            let amp = *last.last().unwrap();
            // sum_{k>N} amp ratio^{k-N} pi^7 k^2 / 2
            amp * pi7 / 2.0 * ratio / (1.0 - ratio) * ((n + 1) * (n + 1)) as f64 * 2.0
        } else {
            f64::INFINITY
        };
        Ok((acc, err + tail))
    }
}

/// Residual of the continuous Klein-Gordon definition on `[a,b] x [c,d]`:
/// U(b,d) - U(b,c) - U(a,d) + U(a,c) + int int U; zero for solutions.
pub fn kg_residual<U>(u: &U, rect: (f64, f64, f64, f64), quad: &QuadConfig) -> Result<C64>
where
    U: Fn(f64, f64) -> Result<C64>,
{
    let (a, b, c, d) = rect;
    if !(a < b && c < d) {
        return Err(Error::InvalidInput("degenerate rectangle".into()));
    }
    let corners = u(b, d)? - u(b, c)? - u(a, d)? + u(a, c)?;
    let inner_tol = QuadConfig {
        abs_tol: quad.abs_tol / (10.0 * (d - c)),
        ..*quad
    };
    let outer = |s: f64| -> Result<C64> {
        integrate(&|t: f64| u(t, s), a, b, &inner_tol)
    };
    let double = integrate(&outer, c, d, quad)?;
    Ok(corners + double)
}

/// Certified decay envelope for R_0 on the quadrant:
/// |R_0(x,-y)| <= 5 int_0^inf e^{-(pi/4)(t+1/t) - 2at/(t^2+1)} dt/t, a = x+y.
pub fn r0_envelope(a: f64, quad: &QuadConfig) -> Result<f64> {
    // substitute t = e^s: 5 int_R e^{-(pi/2) cosh s - a sech s} ds
    let f = |s: f64| -> Result<C64> {
        let c = s.cosh();
        Ok(C64::new((-0.5 * std::f64::consts::PI * c - a / c).exp(), 0.0))
    };
    let v = integrate_seeded(&f, &[-14.0, -4.0, 0.0, 4.0, 14.0], quad)?;
    Ok(5.0 * v.re)
}

/// Certified decay envelope for R_n, n >= 1, on the quadrant:
/// |R_n(x,-y)| <= (640 e^{2 pi n}/(pi^2 n)) (x+y) *
///                int_0^inf e^{-(pi/2)(t+1/t) - 2at/(t^2+1)} dt/(t^2+1).
pub fn rn_envelope(n: usize, a: f64, quad: &QuadConfig) -> Result<f64> {
    let f = |s: f64| -> Result<C64> {
        let c = s.cosh();
        Ok(C64::new(
            (-std::f64::consts::PI * c - a / c).exp() / (2.0 * c),
            0.0,
        ))
    };
    let v = integrate_seeded(&f, &[-14.0, -4.0, 0.0, 4.0, 14.0], quad)?;
    Ok(640.0 * (2.0 * std::f64::consts::PI * n as f64).exp()
        / (std::f64::consts::PI.powi(2) * n as f64)
        * a
        * v.re)
}

/// Modified Hankel function K_0(x) = int_0^inf e^{-x cosh s} ds, x > 0.
pub fn bessel_k0(x: f64, quad: &QuadConfig) -> Result<f64> {
    kbessel(x, false, quad)
}

/// K_1(x) = int_0^inf e^{-x cosh s} cosh s ds, x > 0.
pub fn bessel_k1(x: f64, quad: &QuadConfig) -> Result<f64> {
    kbessel(x, true, quad)
}

fn kbessel(x: f64, weight_cosh: bool, quad: &QuadConfig) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::OutsideDomain(format!("K needs x > 0, got {x}")));
    }
    let big = (745.0 / x).max(2.0);
    let s_max = (big + (big * big - 1.0).sqrt()).ln();
    let f = |s: f64| -> Result<C64> {
        let c = s.cosh();
        let v = (-x * c).exp();
        Ok(C64::new(if weight_cosh { v * c } else { v }, 0.0))
    };
    let v = integrate(&f, 0.0, s_max, quad)?;
    Ok(v.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faber::FaberBasis;
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn kg() -> KgEvaluator {
        KgEvaluator::new(Arc::new(FaberBasis::new(8).unwrap()))
    }

    fn indicator_12() -> TestFunction {
        TestFunction::new(
            |_| C64::new(1.0, 0.0),
            Support::Interval(1.0, 2.0),
            1.0,
        )
    }

    fn bump_12() -> TestFunction {
        TestFunction::new(
            |t| {
                if t <= 1.0 || t >= 2.0 {
                    C64::new(0.0, 0.0)
                } else {
                    C64::new((-1.0 / ((t - 1.0) * (2.0 - t))).exp(), 0.0)
                }
            },
            Support::Interval(1.0, 2.0),
            1.0,
        )
    }

    #[test]
    fn u_phi_mass() {
        let q = QuadConfig::default();
        let v = u_phi(&indicator_12(), 0.0, 0.0, &q).unwrap();
        assert!((v - 1.0).norm() < 1e-12, "{v}");
    }

    #[test]
    fn u_phi_rejects_support_through_zero() {
        let q = QuadConfig::default();
        let f = TestFunction::new(|_| C64::new(1.0, 0.0), Support::Interval(-1.0, 1.0), 1.0);
        assert!(u_phi(&f, 1.0, 1.0, &q).is_err());
    }

    #[test]
    fn interpolation_deltas() {
        let e = kg();
        for n in 0..=3usize {
            for m in 0..=3i64 {
                let v = e.r_interp(n, PI * m as f64, 0.0).unwrap();
                let want = if n as i64 == m { 1.0 } else { 0.0 };
                assert!(
                    (v - want).norm() < 1e-6,
                    "R_{n}(pi {m}, 0) = {v}"
                );
            }
        }
        // R_0(0, -pi m) = delta_{0m}; R_n vanishes on the y-characteristic
        for m in 0..=3i64 {
            let v0 = e.r_interp(0, 0.0, -PI * m as f64).unwrap();
            let want = if m == 0 { 1.0 } else { 0.0 };
            assert!((v0 - want).norm() < 1e-6, "R_0(0, -pi {m}) = {v0}");
            for n in 1..=3usize {
                let v = e.r_interp(n, 0.0, -PI * m as f64).unwrap();
                assert!(v.norm() < 1e-6, "R_{n}(0, -pi {m}) = {v}");
            }
        }
    }

    #[test]
    fn r0_exchange_symmetry_and_bounds() {
        let e = kg();
        let (x, y) = (1.3, 2.1);
        let a = e.r_interp(0, x, -y).unwrap();
        let b = e.r_interp(0, y, -x).unwrap();
        assert!((a - b).norm() < 1e-8, "{a} vs {b}");
        let c = e.r_interp(0, -x, y).unwrap();
        assert!((a - c).norm() < 1e-8);
        assert!(a.norm() <= 3.0 * PI);
        // decay envelope |R_0(x,-y)| <= 5 int e^{-(pi/4)(t+1/t) - 2(x+y)t/(t^2+1)} dt/t
        let q = QuadConfig::default();
        for &(x, y) in &[(3.0, 2.0), (0.5, 0.25), (8.0, 1.0)] {
            let env = r0_envelope(x + y, &q).unwrap();
            let v = e.r_interp(0, x, -y).unwrap();
            assert!(v.norm() <= env, "({x},{y}): {} vs {env}", v.norm());
        }
    }

    #[test]
    fn rn_envelopes() {
        let e = kg();
        let q = QuadConfig::default();
        for n in 1..=3usize {
            for &(x, y) in &[(0.5, 1.0), (2.0, 3.0), (6.0, 0.25)] {
                let v = e.r_interp(n, x, -y).unwrap();
                assert!(
                    v.norm() <= PI.powi(7) * (n * n) as f64 / 2.0,
                    "global bound n={n}"
                );
                let env = rn_envelope(n, x + y, &q).unwrap();
                assert!(
                    v.norm() <= env,
                    "decay envelope n={n} at ({x},{y}): {} vs {env}",
                    v.norm()
                );
            }
        }
    }

    #[test]
    fn noise_floor_matches_observed_noise() {
        // R_n(pi, 0) is exactly zero for n != 1; whatever the contour
        // returns there is the noise, which must sit under the floor.
        let e = KgEvaluator::new(Arc::new(FaberBasis::new(12).unwrap()));
        for n in [5usize, 8, 10, 12] {
            let v = e.r_interp(n, PI, 0.0).unwrap();
            assert!(
                v.norm() <= e.direct_noise_floor(n),
                "n={n}: {} above floor {}",
                v.norm(),
                e.direct_noise_floor(n)
            );
        }
    }

    #[test]
    fn reconstruct_single_mode_recovers_r3() {
        let e = kg();
        let mut s = KGSamples::zero(4);
        s.set_ux(3, C64::new(1.0, 0.0));
        let p = QuadrantPoint::new(1.0, -2.0).unwrap();
        let (v, _) = e.reconstruct(&s, p).unwrap();
        let want = e.r_interp(3, 1.0, -2.0).unwrap();
        assert!((v - want).norm() < 1e-9, "{v} vs {want}");
    }

    #[test]
    fn reconstruct_zero_samples() {
        let e = kg();
        let s = KGSamples::zero(4);
        let (v, _) = e
            .reconstruct(&s, QuadrantPoint::new(0.7, -0.3).unwrap())
            .unwrap();
        assert_eq!(v, C64::new(0.0, 0.0));
    }

    /// Bump on [2/3, 3/2]: under t -> -1/t its support keeps the same width,
    /// so both sample families U(pi n, 0) and U(0, pi n) decay at the same
    /// rate and N = 16 lattice samples carry the whole function.
    fn bump_balanced() -> TestFunction {
        TestFunction::new(
            |t| {
                let (a, b) = (2.0 / 3.0, 1.5);
                if t <= a || t >= b {
                    C64::new(0.0, 0.0)
                } else {
                    C64::new((-1.0 / ((t - a) * (b - t))).exp(), 0.0)
                }
            },
            Support::Interval(2.0 / 3.0, 1.5),
            1.0,
        )
    }

    #[test]
    fn reconstruct_bump_against_direct_quadrature() {
        let e = KgEvaluator::new(Arc::new(FaberBasis::new(16).unwrap()));
        let q = QuadConfig::default();
        let phi = bump_balanced();
        let n = 16;
        let mut s = KGSamples::zero(n);
        for k in -(n as i64)..=(n as i64) {
            s.set_ux(k, u_phi(&phi, PI * k as f64, 0.0, &q).unwrap());
            if k != 0 {
                s.set_uy(k, u_phi(&phi, 0.0, PI * k as f64, &q).unwrap());
            }
        }
        let mut worst: f64 = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                let x = 2.0 * i as f64 / 4.0;
                let y = -2.0 * j as f64 / 4.0;
                let p = QuadrantPoint::new(x, y).unwrap();
                let (got, _) = e.reconstruct(&s, p).unwrap();
                let want = u_phi(&phi, x, y, &q).unwrap();
                worst = worst.max((got - want).norm());
            }
        }
        assert!(worst < 1e-3, "worst reconstruction error {worst}");
    }

    #[test]
    fn residual_detects_non_solutions() {
        let q = QuadConfig::with_tol(1e-9);
        // constants are not solutions: residual = area
        let v = kg_residual(&|_, _| Ok(C64::new(1.0, 0.0)), (0.0, 1.0, 0.0, 1.0), &q).unwrap();
        assert!((v - 1.0).norm() < 1e-8, "{v}");
    }

    #[test]
    fn residual_vanishes_for_u_phi() {
        let q = QuadConfig::with_tol(1e-8);
        let phi = bump_12();
        let qq = QuadConfig::with_tol(1e-10);
        let u = |x: f64, y: f64| u_phi(&phi, x, y, &qq);
        let v = kg_residual(&u, (0.0, 1.0, -1.0, 0.0), &q).unwrap();
        assert!(v.norm() < 1e-6, "{v}");
        // independent fine-grid Riemann oracle for the double integral
        let mut riemann = C64::new(0.0, 0.0);
        let n = 60;
        for i in 0..n {
            for j in 0..n {
                let x = (i as f64 + 0.5) / n as f64;
                let y = -1.0 + (j as f64 + 0.5) / n as f64;
                riemann += u(x, y).unwrap() / ((n * n) as f64);
            }
        }
        let corners = u(1.0, 0.0).unwrap() - u(1.0, -1.0).unwrap() - u(0.0, 0.0).unwrap()
            + u(0.0, -1.0).unwrap();
        assert!((corners + riemann).norm() < 1e-3);
    }

    #[test]
    fn hankel_values() {
        // K_0(1) = 0.42102443824070834, K_1(1) = 0.6019072301972346
        let q = QuadConfig::with_tol(1e-12);
        assert!((bessel_k0(1.0, &q).unwrap() - 0.42102443824070834).abs() < 1e-10);
        assert!((bessel_k1(1.0, &q).unwrap() - 0.6019072301972346).abs() < 1e-10);
    }
}
