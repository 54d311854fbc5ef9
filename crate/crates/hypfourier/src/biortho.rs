//! The biorthogonal system H_0, H_n, M_n dual to 1, e^{i pi n x}, e^{i pi n/x}.
//!
//! Contour representations over the semicircle gamma(-1,1):
//!
//!   H_0(x) = (1/2 pi i) int z Theta3(z)^4 / (x^2 - z^2) dz,
//!   H_n(x) = -(1/4 pi^2 n) int R_n(z) / (x+z)^2 dz,
//!   M_n(x) =  (1/4 pi^2 n) int R_n(-1/z) / (x+z)^2 dz,   n >= 1,
//!
//! with R_n(z) = S_n(1/lambda(z)). Negative indices come from
//! H_{-n}(x) = H_n(-x) and M_n(x) = H_n(-1/x)/x^2. The DIRECT contour loses
//! roughly e^{pi n} of cancellation, so above a small cap the evaluator
//! switches to the LOW_CONTOUR route through the continued generating
//! function: 4 pi^2 n H_n(x) = int_{-1+i/n}^{1+i/n} e^{-i pi n z}
//! Phi^0_strip(x; z) dz, whose integrand stays O(n^3).

use std::sync::Arc;

use crate::config::QuadConfig;
use crate::error::{Error, Result};
use crate::faber::FaberBasis;
use crate::genfun::phi_strip;
use crate::quad::{integrate_gamma, integrate_oscillatory, integrate_seeded, tail_inverse_power_sum};
use crate::theta::{big_theta, C64};
use crate::config::EvalConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathPolicy {
    Direct,
    LowContour,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    H0,
    H,
    M,
}

#[derive(Clone)]
pub struct BiorthoEvaluator {
    pub faber: Arc<FaberBasis>,
    pub quad: QuadConfig,
    pub max_n: usize,
    pub path_policy: PathPolicy,
    /// Largest |n| evaluated on the DIRECT contour under AUTO; the direct
    /// integrand carries a factor e^{pi n} of cancellation, so this stays small.
    pub direct_cap: usize,
}

impl BiorthoEvaluator {
    pub fn new(faber: Arc<FaberBasis>) -> Self {
        let direct_cap = 4.min(faber.cap);
        BiorthoEvaluator {
            faber,
            quad: QuadConfig::default(),
            max_n: 32,
            path_policy: PathPolicy::Auto,
            direct_cap,
        }
    }

    fn check_n(&self, n: i64) -> Result<usize> {
        let a = n.unsigned_abs() as usize;
        if n == 0 || a > self.max_n {
            return Err(Error::OutsideDomain(format!(
                "index {n} outside 1..={}",
                self.max_n
            )));
        }
        Ok(a)
    }

    /// H_0(x); real-valued.
    pub fn h0(&self, x: f64) -> Result<f64> {
        let ecfg = EvalConfig::default();
        let g = |z: C64| -> Result<C64> {
            let t34 = big_theta(3, z, &ecfg)?.powu(4);
            Ok(z * t34 / (x * x - z * z))
        };
        let v = integrate_gamma(&g, &self.quad)? / C64::new(0.0, 2.0 * std::f64::consts::PI);
        Ok(v.re)
    }

    fn direct_quad(&self, n: usize) -> QuadConfig {
        let peak = (std::f64::consts::PI * n as f64).exp();
        let raw_tol = (self.quad.abs_tol * 4.0 * std::f64::consts::PI.powi(2) * n as f64)
            .max(peak * 1e-14);
        let t_max = (2.0 / std::f64::consts::PI)
            * (2.0 * std::f64::consts::PI * n as f64 + (1.3e3 / raw_tol).ln());
        QuadConfig {
            abs_tol: raw_tol,
            t_max: t_max.max(8.0),
            max_subdiv: self.quad.max_subdiv,
        }
    }

    fn hn_direct(&self, n: usize, x: f64) -> Result<C64> {
        let ecfg = EvalConfig::default();
        let q = self.direct_quad(n);
        let g = |z: C64| -> Result<C64> {
            let r = self.faber.eval_r_triangle(n, z, &ecfg)?;
            let w = x + z;
            Ok(r / (w * w))
        };
        let v = integrate_gamma(&g, &q)?;
        Ok(-v / (4.0 * std::f64::consts::PI.powi(2) * n as f64))
    }

    fn mn_direct(&self, n: usize, x: f64) -> Result<C64> {
        let ecfg = EvalConfig::default();
        let q = self.direct_quad(n);
        let g = |z: C64| -> Result<C64> {
            let r = self.faber.eval_r_triangle_inverted(n, z, &ecfg)?;
            let w = x + z;
            Ok(r / (w * w))
        };
        let v = integrate_gamma(&g, &q)?;
        Ok(v / (4.0 * std::f64::consts::PI.powi(2) * n as f64))
    }

    /// M_{-n}(x) = H_n(1/x)/x^2 for n >= 1, written as a single contour
    /// integral -(1/4 pi^2 n) int R_n(z)/(1+xz)^2 dz, stable for |x| < 1.
    fn mn_neg_direct(&self, n: usize, x: f64) -> Result<C64> {
        let ecfg = EvalConfig::default();
        let q = self.direct_quad(n);
        let g = |z: C64| -> Result<C64> {
            let r = self.faber.eval_r_triangle(n, z, &ecfg)?;
            let w = 1.0 + x * z;
            Ok(r / (w * w))
        };
        let v = integrate_gamma(&g, &q)?;
        Ok(-v / (4.0 * std::f64::consts::PI.powi(2) * n as f64))
    }

    fn hn_low_contour(&self, n: usize, x: f64, delta: u8) -> Result<C64> {
        let nf = n as f64;
        let im = 1.0 / nf;
        let q = QuadConfig {
            abs_tol: (self.quad.abs_tol * 4.0 * std::f64::consts::PI.powi(2) * nf).max(1e-12),
            ..self.quad
        };
        let inner = QuadConfig {
            abs_tol: (q.abs_tol / 8.0).max(1e-13),
            ..self.quad
        };
        let f = |t: f64| -> Result<C64> {
            let z = C64::new(t, im);
            // a node can land numerically on a cell roof; the integrand is
            // analytic there, so step slightly upward and retry
            let phi = match phi_strip(delta, x, z, &inner) {
                Ok(v) => v,
                Err(Error::BoundaryAmbiguous(_)) => {
                    phi_strip(delta, x, z + C64::new(0.0, 5e-9), &inner)?
                }
                Err(e) => return Err(e),
            };
            let osc = (-C64::new(0.0, 1.0) * std::f64::consts::PI * nf * z).exp();
            Ok(osc * phi)
        };
        let v = integrate_oscillatory(&f, -1.0, 1.0, std::f64::consts::PI * nf, &q)?;
        Ok(v / (4.0 * std::f64::consts::PI.powi(2) * nf))
    }

    fn use_direct(&self, n: usize) -> bool {
        match self.path_policy {
            PathPolicy::Direct => true,
            PathPolicy::LowContour => false,
            PathPolicy::Auto => n <= self.direct_cap,
        }
    }

    /// H_n(x) for n in Z minus 0.
    pub fn hn(&self, n: i64, x: f64) -> Result<C64> {
        let a = self.check_n(n)?;
        let xs = if n > 0 { x } else { -x };
        if self.use_direct(a) {
            self.hn_direct(a, xs)
        } else {
            self.hn_low_contour(a, xs, 0)
        }
    }

    /// M_n(x) for n in Z minus 0; M_n(x) = H_n(-1/x)/x^2, with the direct
    /// contour used on |x| < 1 where that symmetry is numerically hostile.
    pub fn mn(&self, n: i64, x: f64) -> Result<C64> {
        let a = self.check_n(n)?;
        if n > 0 {
            if x.abs() >= 1.0 {
                Ok(self.hn(n, -1.0 / x)? / (x * x))
            } else if self.use_direct(a) {
                self.mn_direct(a, x)
            } else {
                self.hn_low_contour(a, x, 1)
            }
        } else {
            // M_{-a}(x) = H_a(1/x)/x^2; the symmetry amplifies the absolute
            // quadrature error by 1/x^2, so very small |x| falls back to the
            // single-contour form, which only the direct path provides.
            if self.use_direct(a) && x.abs() < 1.0 {
                self.mn_neg_direct(a, x)
            } else if x.abs() >= 1e-2 {
                Ok(self.hn(a as i64, 1.0 / x)? / (x * x))
            } else if a <= self.faber.cap && a <= 6 {
                self.mn_neg_direct(a, x)
            } else {
                Err(Error::ToleranceUnreachable(format!(
                    "M_{{-{a}}} near x = {x} has no stable route at this index"
                )))
            }
        }
    }

    /// Evaluate one member of the family.
    pub fn eval(&self, family: Family, n: i64, x: f64) -> Result<C64> {
        match family {
            Family::H0 => Ok(C64::new(self.h0(x)?, 0.0)),
            Family::H => self.hn(n, x),
            Family::M => self.mn(n, x),
        }
    }

    /// Certified-tail periodization sum_k f(x + 2k).
    ///
    /// The head is summed directly; the tail uses the inversion symmetry
    /// (each family member satisfies f(y) = g(-1/y)/y^2 with g again in the
    /// family) and a short Taylor expansion of g at 0 against exact inverse
    /// power sums. Returns the value and an error estimate.
    pub fn periodize(&self, family: Family, n: i64, x: f64, tol: f64) -> Result<(C64, f64)> {
        if !(tol > 0.0) {
            return Err(Error::InvalidInput("tol must be positive".into()));
        }
        // partner g with f(y) = g(-1/y)/y^2
        let (gfam, gn) = match family {
            Family::H0 => (Family::H0, 0),
            Family::H => (Family::M, n),
            Family::M => (Family::H, n),
        };
        let h = 0.05;
        let g0 = self.eval(gfam, gn, 0.0)?;
        let gp = self.eval(gfam, gn, h)?;
        let gm = self.eval(gfam, gn, -h)?;
        let gp2 = self.eval(gfam, gn, 2.0 * h)?;
        let gm2 = self.eval(gfam, gn, -2.0 * h)?;
        let d1 = (gp - gm) / (2.0 * h);
        let d2 = (gp - 2.0 * g0 + gm) / (h * h);
        let d3 = ((gp2 - gm2) - 2.0 * (gp - gm)) / (2.0 * h * h * h);
        // choose K so the neglected cubic term is well below tol
        let d3n = d3.norm().max(1.0);
        let mut k = 32usize;
        while k < 4096 {
            let s5 = 2.0 * tail_inverse_power_sum(5, x.abs(), k as i64);
            if d3n / 6.0 * s5 < tol / 10.0 {
                break;
            }
            k *= 2;
        }
        let mut head = C64::new(0.0, 0.0);
        for j in -(k as i64)..=(k as i64) {
            head += self.eval(family, n, x + 2.0 * j as f64)?;
        }
        let s2 = tail_inverse_power_sum(2, x, k as i64)
            + tail_inverse_power_sum(2, -x, k as i64);
        let s3 = tail_inverse_power_sum(3, x, k as i64)
            - tail_inverse_power_sum(3, -x, k as i64);
        let s4 = tail_inverse_power_sum(4, x, k as i64)
            + tail_inverse_power_sum(4, -x, k as i64);
        let s5 = 2.0 * tail_inverse_power_sum(5, x.abs(), k as i64);
        // sum_{|j|>K} g(-1/y_j)/y_j^2 with y_j = x + 2j:
        // g(0) S2 - g'(0) S3 + g''(0)/2 S4 + O(g''' S5)
        let tail = g0 * s2 - d1 * s3 + d2 * 0.5 * s4;
        let err = d3n / 6.0 * s5 + (2.0 * k as f64 + 1.0) * self.quad.abs_tol * 20.0;
        if err > tol {
            return Err(Error::ToleranceUnreachable(format!(
                "periodization error estimate {err:.2e} above {tol:.2e}"
            )));
        }
        Ok((head + tail, err))
    }

    /// Pairing integral of the family member against the dual exponential:
    /// int_R e^{-i pi m x} H_n(x) dx (or the H_0 row), computed by the exact
    /// reduction to int_{-1}^{1} e^{-i pi m x} sum_k f(x+2k) dx. The pairing
    /// of M_n against e^{i pi m / x} reduces to the same integral by the
    /// substitution x -> -1/x.
    pub fn pairing(&self, m: i64, family: Family, n: i64, tol: f64) -> Result<C64> {
        let f = |x: f64| -> Result<C64> {
            let (p, _) = self.periodize(family, n, x, tol)?;
            let osc = (-C64::new(0.0, 1.0) * std::f64::consts::PI * m as f64 * x).exp();
            Ok(osc * p)
        };
        let q = QuadConfig {
            abs_tol: tol / 4.0,
            max_subdiv: 64,
            ..self.quad
        };
        integrate_seeded(&f, &[-1.0, -0.5, 0.0, 0.5, 1.0], &q)
    }
}
