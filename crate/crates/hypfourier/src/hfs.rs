//! Hyperbolic Fourier analysis and synthesis.
//!
//! For f integrable against (1+x^2)^{-1} dx the series reads
//! h_0(f) + sum_{n != 0} (h_n(f) e^{i pi n x} + m_n(f) e^{-i pi n / x}) with
//! h_n(f) = int f H_{-n} and m_n(f) = int f M_{-n}. When f (or f(-1/x)) is
//! 2-periodic the coefficients collapse to classical Fourier coefficients,
//! which is how the periodic supports are handled here. The starred
//! (conjugate) coefficients of an integrable phi are plain Fourier-type
//! integrals h*_n = int phi e^{-i pi n t} dt, m*_n = int phi e^{i pi n / t} dt
//! and coincide with the Klein-Gordon lattice samples U_phi(-pi n, 0),
//! U_phi(0, pi n).

use std::sync::Arc;

use crate::biortho::{BiorthoEvaluator, Family};
use crate::config::QuadConfig;
use crate::error::{Error, Result};
use crate::quad::{integrate_oscillatory, integrate_seeded};
use crate::theta::C64;

/// Support descriptor of a test function.
#[derive(Clone, Debug)]
pub enum Support {
    /// Supported (or truncated) to a finite interval.
    Interval(f64, f64),
    /// f(x+2) = f(x); integrable on the period.
    Periodic2,
    /// f(-1/x) is 2-periodic.
    Periodic2Inverted,
}

/// A real-line test function with enough metadata to integrate it.
#[derive(Clone)]
pub struct TestFunction {
    pub eval: Arc<dyn Fn(f64) -> C64 + Send + Sync>,
    pub support: Support,
    /// A constant C with |f| <= C, used in tail estimates.
    pub tail_bound: f64,
}

impl TestFunction {
    pub fn new<F>(f: F, support: Support, tail_bound: f64) -> Self
    where
        F: Fn(f64) -> C64 + Send + Sync + 'static,
    {
        TestFunction {
            eval: Arc::new(f),
            support,
            tail_bound,
        }
    }

    pub fn at(&self, x: f64) -> C64 {
        (self.eval)(x)
    }
}

/// Truncated coefficient family {h_n : |n| <= N} and {m_n : 0 < |n| <= N}.
#[derive(Debug, Clone, PartialEq)]
pub struct HFSCoeffs {
    pub n_max: usize,
    /// h[(n + N) as usize] = h_n
    pub h: Vec<C64>,
    /// m[(n + N) as usize] = m_n, with the n = 0 slot fixed at zero
    pub m: Vec<C64>,
}

impl HFSCoeffs {
    pub fn zero(n_max: usize) -> Self {
        HFSCoeffs {
            n_max,
            h: vec![C64::new(0.0, 0.0); 2 * n_max + 1],
            m: vec![C64::new(0.0, 0.0); 2 * n_max + 1],
        }
    }

    pub fn h(&self, n: i64) -> C64 {
        self.h[(n + self.n_max as i64) as usize]
    }

    pub fn m(&self, n: i64) -> C64 {
        self.m[(n + self.n_max as i64) as usize]
    }

    pub fn set_h(&mut self, n: i64, v: C64) {
        self.h[(n + self.n_max as i64) as usize] = v;
    }

    pub fn set_m(&mut self, n: i64, v: C64) {
        assert!(n != 0, "m_0 does not exist");
        self.m[(n + self.n_max as i64) as usize] = v;
    }
}

fn quad_for(tol: f64) -> QuadConfig {
    QuadConfig {
        abs_tol: tol,
        ..QuadConfig::default()
    }
}

/// Classical Fourier coefficient (1/2) int_0^2 g(t) e^{-i pi n t} dt of a
/// 2-periodic g, integrated over [-1,1] split at 0 so no node hits t = 0.
fn fourier_coeff_periodic<G>(g: &G, n: i64, tol: f64) -> Result<C64>
where
    G: Fn(f64) -> Result<C64>,
{
    let omega = std::f64::consts::PI * n.unsigned_abs() as f64;
    let f = |t: f64| -> Result<C64> {
        Ok(g(t)? * (-C64::new(0.0, 1.0) * std::f64::consts::PI * n as f64 * t).exp())
    };
    let q = quad_for(tol);
    let half = if omega < 1.0 {
        let a = integrate_seeded(&f, &[-1.0, -0.5, 0.0], &q)?;
        let b = integrate_seeded(&f, &[0.0, 0.5, 1.0], &q)?;
        a + b
    } else {
        let a = integrate_oscillatory(&f, -1.0, 0.0, omega, &q)?;
        let b = integrate_oscillatory(&f, 0.0, 1.0, omega, &q)?;
        a + b
    };
    Ok(0.5 * half)
}

/// Hyperbolic Fourier coefficients of f against the biorthogonal system.
pub fn analyze(ev: &BiorthoEvaluator, f: &TestFunction, n_max: usize) -> Result<HFSCoeffs> {
    if n_max > ev.max_n {
        return Err(Error::OutsideDomain(format!(
            "n_max {n_max} beyond evaluator cap {}",
            ev.max_n
        )));
    }
    let tol = 1e-9;
    let mut out = HFSCoeffs::zero(n_max);
    match f.support {
        Support::Periodic2 => {
            // h_n(f) = (1/2) int_0^2 f(t) e^{-i pi n t} dt, all m_n = 0.
            for n in -(n_max as i64)..=(n_max as i64) {
                let g = |t: f64| Ok(f.at(t));
                out.set_h(n, fourier_coeff_periodic(&g, n, tol)?);
            }
        }
        Support::Periodic2Inverted => {
            // m_n(f) = (1/2) int_0^2 f(-1/t) e^{-i pi n t} dt and
            // h_0(f) = (1/2) int_0^2 f(-1/t) dt; other h_n vanish.
            let g = |t: f64| -> Result<C64> {
                if t == 0.0 {
                    return Ok(C64::new(0.0, 0.0));
                }
                Ok(f.at(-1.0 / t))
            };
            out.set_h(0, fourier_coeff_periodic(&g, 0, tol)?);
            for n in -(n_max as i64)..=(n_max as i64) {
                if n == 0 {
                    continue;
                }
                out.set_m(n, fourier_coeff_periodic(&g, n, tol)?);
            }
        }
        Support::Interval(a, b) => {
            if !(a < b) {
                return Err(Error::InvalidInput("empty support interval".into()));
            }
            // sampled or otherwise rough data accumulates noise with length
            let q = quad_for(tol * (b - a).max(1.0));
            for n in -(n_max as i64)..=(n_max as i64) {
                let omega = std::f64::consts::PI * n.unsigned_abs() as f64;
                let gh = |t: f64| -> Result<C64> { Ok(f.at(t) * ev.hn(-n, t)?) };
                if n != 0 {
                    out.set_h(n, integrate_oscillatory(&gh, a, b, omega, &q)?);
                    let gm = |t: f64| -> Result<C64> { Ok(f.at(t) * ev.mn(-n, t)?) };
                    out.set_m(n, integrate_oscillatory(&gm, a, b, omega, &q)?);
                } else {
                    let g0 = |t: f64| -> Result<C64> {
                        Ok(f.at(t) * C64::new(ev.h0(t)?, 0.0))
                    };
                    out.set_h(0, integrate_seeded(&g0, &[a, 0.5 * (a + b), b], &q)?);
                }
            }
        }
    }
    Ok(out)
}

/// Partial-sum synthesis h_0 + sum (h_n e^{i pi n x} + m_n e^{-i pi n / x}).
///
/// Near the origin the m-phases are evaluated in the variable w = -1/x;
/// exactly at x = 0 the m-terms have no limit unless they all vanish.
pub fn synthesize(c: &HFSCoeffs, x: f64) -> Result<C64> {
    let i_pi = C64::new(0.0, std::f64::consts::PI);
    let mut acc = c.h(0);
    let m_all_zero = (1..=c.n_max as i64).all(|n| c.m(n).norm() == 0.0 && c.m(-n).norm() == 0.0);
    if x == 0.0 && !m_all_zero {
        return Err(Error::OutsideDomain(
            "synthesis at x = 0 with nonzero m coefficients".into(),
        ));
    }
    let w = if x != 0.0 { -1.0 / x } else { 0.0 };
    for n in 1..=c.n_max as i64 {
        for s in [n, -n] {
            let nf = s as f64;
            acc += c.h(s) * (i_pi * nf * x).exp();
            if !m_all_zero {
                acc += c.m(s) * (i_pi * nf * w).exp();
            }
        }
    }
    Ok(acc)
}

/// Conjugate (starred) coefficients of an integrable phi:
/// h*_n = int phi e^{-i pi n t} dt and m*_n = int phi e^{i pi n / t} dt,
/// the latter through t -> -1/t so that one oscillation engine serves both.
pub fn conj_analyze(phi: &TestFunction, n_max: usize) -> Result<HFSCoeffs> {
    let (a, b) = match phi.support {
        Support::Interval(a, b) => (a, b),
        _ => {
            return Err(Error::InvalidInput(
                "conjugate analysis needs an interval support".into(),
            ))
        }
    };
    // long windows accumulate the per-evaluation noise of phi linearly
    let tol = 1e-9 * (b - a).max(1.0);
    let q = quad_for(tol);
    let mut out = HFSCoeffs::zero(n_max);
    for n in -(n_max as i64)..=(n_max as i64) {
        let omega = std::f64::consts::PI * n.unsigned_abs() as f64;
        let f = |t: f64| -> Result<C64> {
            Ok(phi.at(t) * (-C64::new(0.0, 1.0) * std::f64::consts::PI * n as f64 * t).exp())
        };
        out.set_h(n, integrate_oscillatory(&f, a, b, omega, &q)?);
    }
    // m*_n: substitute t = -1/u on each side of 0. A support touching the
    // origin maps to an unbounded u-range; it is cut where one integration
    // by parts certifies the remainder below the tolerance,
    // |int_U^inf g e^{-i pi n u} du| <= 3 C / (pi U^2).
    let u_cap = (3.0 * phi.tail_bound / (std::f64::consts::PI * tol))
        .sqrt()
        .max(2.0);
    let mut pieces: Vec<(f64, f64)> = Vec::new();
    let eps = 1e-8;
    if a < -eps {
        pieces.push((1.0 / -a.min(-eps), (1.0 / -(b.min(-eps)).min(-eps)).min(u_cap)));
    }
    if b > eps {
        let lo = a.max(eps);
        pieces.push(((-1.0 / lo).max(-u_cap), -1.0 / b.max(eps)));
    }
    for n in -(n_max as i64)..=(n_max as i64) {
        if n == 0 {
            continue;
        }
        let omega = std::f64::consts::PI * n.unsigned_abs() as f64;
        let mut acc = C64::new(0.0, 0.0);
        for &(u0, u1) in &pieces {
            let (lo, hi) = if u0 < u1 { (u0, u1) } else { (u1, u0) };
            let sign = if u0 < u1 { 1.0 } else { -1.0 };
            let f = |u: f64| -> Result<C64> {
                let t = -1.0 / u;
                Ok(phi.at(t) / (u * u)
                    * (-C64::new(0.0, 1.0) * std::f64::consts::PI * n as f64 * u).exp())
            };
            acc += sign * integrate_oscillatory(&f, lo, hi, omega, &q)?;
        }
        out.set_m(n, acc);
    }
    Ok(out)
}

/// Synthesis of the conjugate series h*_0 H_0(x) + sum (h*_n H_n + m*_n M_n).
pub fn conj_synthesize(ev: &BiorthoEvaluator, c: &HFSCoeffs, x: f64) -> Result<C64> {
    let mut acc = c.h(0) * ev.eval(Family::H0, 0, x)?;
    for n in 1..=c.n_max as i64 {
        for s in [n, -n] {
            let hs = c.h(s);
            if hs.norm() > 1e-14 {
                acc += hs * ev.hn(s, x)?;
            }
            let ms = c.m(s);
            if ms.norm() > 1e-14 {
                acc += ms * ev.mn(s, x)?;
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faber::FaberBasis;
    use std::f64::consts::PI;

    fn eval() -> BiorthoEvaluator {
        BiorthoEvaluator::new(Arc::new(FaberBasis::new(8).unwrap()))
    }

    fn exp_ipix() -> TestFunction {
        TestFunction::new(
            |x| (C64::new(0.0, PI * x)).exp(),
            Support::Periodic2,
            1.0,
        )
    }

    #[test]
    fn analyze_pure_exponential() {
        let ev = eval();
        let c = analyze(&ev, &exp_ipix(), 3).unwrap();
        for n in -3i64..=3 {
            let want = if n == 1 { 1.0 } else { 0.0 };
            assert!((c.h(n) - want).norm() < 1e-6, "h_{n} = {}", c.h(n));
            if n != 0 {
                assert!(c.m(n).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn analyze_inverted_exponential() {
        // g with g(-1/x) = e^{i pi x}, i.e. g(t) = e^{-i pi / t}
        let ev = eval();
        let g = TestFunction::new(
            |t| (C64::new(0.0, -PI / t)).exp(),
            Support::Periodic2Inverted,
            1.0,
        );
        let c = analyze(&ev, &g, 3).unwrap();
        assert!((c.m(1) - 1.0).norm() < 1e-6, "m_1 = {}", c.m(1));
        for n in -3i64..=3 {
            if n != 1 && n != 0 {
                assert!(c.m(n).norm() < 1e-6, "m_{n}");
            }
            if n != 0 {
                assert!(c.h(n).norm() < 1e-12, "h_{n}");
            }
        }
        assert!(c.h(0).norm() < 1e-9);
    }

    #[test]
    fn analyze_constant() {
        let ev = eval();
        let one = TestFunction::new(|_| C64::new(1.0, 0.0), Support::Periodic2, 1.0);
        let c = analyze(&ev, &one, 2).unwrap();
        assert!((c.h(0) - 1.0).norm() < 1e-12);
        for n in 1..=2i64 {
            assert!(c.h(n).norm() < 1e-12 && c.h(-n).norm() < 1e-12);
        }
    }

    #[test]
    fn synthesis_roundtrip_periodic() {
        let ev = eval();
        let c = analyze(&ev, &exp_ipix(), 3).unwrap();
        let x = 0.4;
        let got = synthesize(&c, x).unwrap();
        let want = (C64::new(0.0, PI * x)).exp();
        assert!((got - want).norm() < 1e-6, "{got} vs {want}");
    }

    #[test]
    fn synthesis_trivial_and_singular() {
        let mut c = HFSCoeffs::zero(2);
        c.set_h(0, C64::new(1.0, 0.0));
        assert_eq!(synthesize(&c, 123.0).unwrap(), C64::new(1.0, 0.0));
        c.set_m(1, C64::new(0.5, 0.0));
        assert!(synthesize(&c, 0.0).is_err());
    }

    fn bump() -> TestFunction {
        // smooth bump supported on [1,2]
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
    fn conj_indicator_mass() {
        let ind = TestFunction::new(
            |_| C64::new(1.0, 0.0),
            Support::Interval(1.0, 2.0),
            1.0,
        );
        let c = conj_analyze(&ind, 2).unwrap();
        assert!((c.h(0) - 1.0).norm() < 1e-10);
    }

    #[test]
    fn conj_m_coefficients_decay() {
        // frozen against an independent high-precision oracle:
        // |m*_4| = 5.105e-3, |m*_12| = 6.144e-4 for this bump
        let c = conj_analyze(&bump(), 12).unwrap();
        assert!((c.m(4).norm() - 5.105032384574e-3).abs() < 1e-9, "m*_4 = {}", c.m(4));
        assert!((c.m(12).norm() - 6.143740710213e-4).abs() < 1e-9, "m*_12 = {}", c.m(12));
        assert!(c.m(12).norm() < 0.13 * c.m(4).norm());
    }

    #[test]
    fn conj_roundtrip_improves_with_n() {
        let ev = eval();
        let phi = bump();
        let mut errs = Vec::new();
        for &n in &[4usize, 8, 12] {
            let c = conj_analyze(&phi, n).unwrap();
            let mut worst = 0.0f64;
            for &x in &[1.2, 1.5] {
                let got = conj_synthesize(&ev, &c, x).unwrap();
                worst = worst.max((got - phi.at(x)).norm());
            }
            errs.push(worst);
        }
        assert!(errs[1] < errs[0] && errs[2] < errs[1], "{errs:?}");
        assert!(errs[2] < 1e-3, "{errs:?}");
    }

    #[test]
    fn conj_coefficients_against_frozen_oracle() {
        // independent high-precision values for the [1,2] bump:
        // h*_3 = -0.002758154831833538 i, m*_2 = -0.003065894147729937 - 0.005726327775636143 i
        let c = conj_analyze(&bump(), 3).unwrap();
        let h3 = C64::new(0.0, -0.002758154831833538);
        assert!((c.h(3) - h3).norm() < 1e-9, "h*_3 = {}", c.h(3));
        let m2 = C64::new(-0.003065894147729937, -0.005726327775636143);
        assert!((c.m(2) - m2).norm() < 1e-9, "m*_2 = {}", c.m(2));
    }

    #[test]
    fn conj_coefficients_are_kg_lattice_samples() {
        // h*_n(phi) = U_phi(-pi n, 0) and m*_n(phi) = U_phi(0, pi n)
        use crate::kleingordon::u_phi;
        let q = crate::config::QuadConfig::default();
        let phi = bump();
        let c = conj_analyze(&phi, 3).unwrap();
        for n in [-2i64, 1, 3] {
            let ux = u_phi(&phi, -PI * n as f64, 0.0, &q).unwrap();
            assert!((c.h(n) - ux).norm() < 1e-9, "h side n={n}");
            if n != 0 {
                let uy = u_phi(&phi, 0.0, PI * n as f64, &q).unwrap();
                assert!((c.m(n) - uy).norm() < 1e-9, "m side n={n}");
            }
        }
    }
}
