//! Adaptive Gauss-Kronrod quadrature for complex-valued integrands on real
//! intervals, with a panel splitter for Fourier-type oscillatory kernels.

use crate::config::QuadConfig;
use crate::error::{Error, Result};
use crate::theta::C64;

// 7-point Gauss / 15-point Kronrod pair (QUADPACK abscissae, positive half).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One G7/K15 pass over [a,b]; returns (kronrod value, error estimate).
fn gk15<F>(f: &F, a: f64, b: f64) -> Result<(C64, f64)>
where
    F: Fn(f64) -> Result<C64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (i, &x) in XGK.iter().enumerate().take(7) {
        let fa = f(c - h * x)?;
        let fb = f(c + h * x)?;
        kron += WGK[i] * (fa + fb);
        if i % 2 == 1 {
            gauss += WG[i / 2] * (fa + fb);
        }
    }
    let err = (h.abs()) * (kron - gauss).norm();
    Ok((kron * h, err))
}

/// Adaptive bisection to the absolute tolerance in `cfg`.
pub fn integrate<F>(f: &F, a: f64, b: f64, cfg: &QuadConfig) -> Result<C64>
where
    F: Fn(f64) -> Result<C64>,
{
    integrate_seeded(f, &[a, b], cfg)
}

/// Adaptive integration over the union of `[pts[i], pts[i+1]]`; the seed points
/// let callers pre-split around known scale changes.
pub fn integrate_seeded<F>(f: &F, pts: &[f64], cfg: &QuadConfig) -> Result<C64>
where
    F: Fn(f64) -> Result<C64>,
{
    #[derive(Debug)]
    struct Panel {
        a: f64,
        b: f64,
        val: C64,
        err: f64,
    }
    let mut heap: Vec<Panel> = Vec::new();
    for w in pts.windows(2) {
        let (val, err) = gk15(f, w[0], w[1])?;
        heap.push(Panel {
            a: w[0],
            b: w[1],
            val,
            err,
        });
    }
    for _ in 0..cfg.max_subdiv {
        let total_err: f64 = heap.iter().map(|p| p.err).sum();
        if total_err <= cfg.abs_tol {
            break;
        }
        // split the worst panel
        let (idx, _) = heap
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .unwrap();
        let worst = heap.swap_remove(idx);
        let m = 0.5 * (worst.a + worst.b);
        if m == worst.a || m == worst.b {
            // interval exhausted at machine resolution; keep its estimate
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk15(f, worst.a, m)?;
        let (v2, e2) = gk15(f, m, worst.b)?;
        heap.push(Panel {
            a: worst.a,
            b: m,
            val: v1,
            err: e1,
        });
        heap.push(Panel {
            a: m,
            b: worst.b,
            val: v2,
            err: e2,
        });
    }
    let total_err: f64 = heap.iter().map(|p| p.err).sum();
    if total_err > 100.0 * cfg.abs_tol.max(1e-14) {
        return Err(Error::Quadrature(format!(
            "residual error estimate {total_err:.3e} above tolerance {:.3e}",
            cfg.abs_tol
        )));
    }
    Ok(heap.iter().map(|p| p.val).sum())
}

/// Integrate an oscillatory integrand over `[a,b]`: panels are pre-split so no
/// panel spans more than half a period of the dominant frequency `omega`
/// (radians per unit length), then refined adaptively.
pub fn integrate_oscillatory<F>(f: &F, a: f64, b: f64, omega: f64, cfg: &QuadConfig) -> Result<C64>
where
    F: Fn(f64) -> Result<C64>,
{
    let half_period = if omega.abs() < 1e-12 {
        b - a
    } else {
        std::f64::consts::PI / omega.abs()
    };
    let n = (((b - a) / half_period).ceil() as usize).clamp(1, 100_000);
    let pts: Vec<f64> = (0..=n).map(|k| a + (b - a) * k as f64 / n as f64).collect();
    integrate_seeded(f, &pts, cfg)
}

/// Points of the semicircle contour from -1 to 1 through i, parametrized by
/// z(t) = (t+i)/(t-i) with t in (0, inf); dz = -2i/(t-i)^2 dt.
pub fn gamma_point(t: f64) -> (C64, C64) {
    let den = C64::new(t, -1.0);
    let z = C64::new(t, 1.0) / den;
    let dz = C64::new(0.0, -2.0) / (den * den);
    (z, dz)
}

/// Integrate g(z) dz over the semicircle gamma(-1,1), truncated to
/// t in [1/t_max, t_max]; the caller guarantees the tail beyond the cut is
/// below its tolerance (the integrands here decay double-exponentially).
/// Integration proceeds in s = ln t, seeded at the apex s = 0.
pub fn integrate_gamma<G>(g: &G, cfg: &QuadConfig) -> Result<C64>
where
    G: Fn(C64) -> Result<C64>,
{
    let smax = cfg.t_max.ln();
    let f = |s: f64| -> Result<C64> {
        let t = s.exp();
        let (z, dz) = gamma_point(t);
        Ok(g(z)? * dz * t)
    };
    integrate_seeded(&f, &[-smax, -smax / 2.0, 0.0, smax / 2.0, smax], cfg)
}

/// Exact-to-roundoff tail sum  sum_{k > K} (2k + a)^{-m}  for m >= 2,
/// by 50 direct terms plus an Euler-Maclaurin remainder.
pub fn tail_inverse_power_sum(m: u32, a: f64, k_cut: i64) -> f64 {
    debug_assert!(m >= 2);
    let mut s = 0.0;
    for k in (k_cut + 1)..=(k_cut + 50) {
        s += (2.0 * k as f64 + a).powi(-(m as i32));
    }
    let k0 = (k_cut + 51) as f64;
    let t = 2.0 * k0 + a;
    let mf = m as f64;
    // integral term, half-sample, and two derivative corrections
    s += t.powi(-(m as i32 - 1)) / (2.0 * (mf - 1.0));
    s += 0.5 * t.powi(-(m as i32));
    s += mf / 6.0 * t.powi(-(m as i32 + 1));
    s -= mf * (mf + 1.0) * (mf + 2.0) / 90.0 * t.powi(-(m as i32 + 3));
    s
}
