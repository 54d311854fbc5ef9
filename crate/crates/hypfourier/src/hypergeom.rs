//! The hypergeometric special case F(1/2,1/2;1;z) on the cut plane,
//! the Schwarz triangle map tau(z) = i F(1-z)/F(z), and the boundary ratio
//! Delta(x) = F(1/(1+x)) / F(x/(1+x)).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::theta::C64;

/// Power-series / Barnes switchover radius; both expansions converge
/// comfortably inside radius 0.7 and are cross-checked on the overlap.
const R0: f64 = 0.7;

const MAX_TERMS: usize = 600;

fn is_on_cut(z: C64) -> bool {
    z.im == 0.0 && z.re >= 1.0
}

/// Coefficients c_n of F(1/2,1/2;1;z) = sum c_n z^n, c_0 = 1,
/// c_{n+1} = c_n ((n+1/2)/(n+1))^2.
fn series_f(z: C64) -> Result<C64> {
    let mut c = 1.0f64;
    let mut zn = C64::new(1.0, 0.0);
    let mut sum = C64::new(1.0, 0.0);
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        c *= ((nf + 0.5) / (nf + 1.0)).powi(2);
        zn *= z;
        let term = c * zn;
        sum += term;
        if term.norm() < 1e-17 * sum.norm().max(1.0) {
            return Ok(sum);
        }
    }
    Err(Error::ToleranceUnreachable(
        "hypergeometric power series stalled".into(),
    ))
}

/// Barnes expansion about z = 1:
/// F(1-w) = F(w) Log(16/w)/pi
///          - (2/pi^2) sum_{n>=1} Gamma(n+1/2)^2/n!^2 [sum_{k<=n} 1/((2k-1)k)] w^n,
/// valid for w in the unit disk off (-1,0]. With the power-series
/// coefficients a_n = ((1/2)_n / n!)^2 the prefactor collapses to 2/pi
/// since Gamma(n+1/2)^2/n!^2 = pi a_n.
fn barnes_f_of_one_minus(w: C64) -> Result<C64> {
    let fw = series_f(w)?;
    let log_term = ((C64::new(16.0, 0.0) / w).ln()) * fw / std::f64::consts::PI;
    let mut c = 1.0f64;
    let mut harmonic = 0.0f64;
    let mut wn = C64::new(1.0, 0.0);
    let mut sum = C64::new(0.0, 0.0);
    for n in 1..=MAX_TERMS {
        let nf = n as f64;
        c *= ((nf - 0.5) / nf).powi(2);
        harmonic += 1.0 / ((2.0 * nf - 1.0) * nf);
        wn *= w;
        let term = c * harmonic * wn;
        sum += term;
        if term.norm() < 1e-17 * sum.norm().max(1e-3) {
            break;
        }
    }
    Ok(log_term - 2.0 / std::f64::consts::PI * sum)
}

/// Optimal arithmetic-geometric mean M(1, b) for b off (-inf, 0]; at every
/// step the square root with nonnegative real part is the right choice for
/// the principal value, and F(1/2,1/2;1;z) = 1/M(1, sqrt(1-z)).
fn agm_one(b0: C64) -> C64 {
    let mut a = C64::new(1.0, 0.0);
    let mut b = b0;
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        let mut bn = (a * b).sqrt();
        // Good choice: |an - bn| <= |an + bn|.
        if (an - bn).norm() > (an + bn).norm() {
            bn = -bn;
        }
        a = an;
        b = bn;
        if (a - b).norm() < 1e-17 * a.norm() {
            break;
        }
    }
    0.5 * (a + b)
}

/// F(1/2,1/2;1;z) on C minus the cut [1, +inf).
///
/// Dispatch: power series for |z| <= 0.7, Barnes log expansion for
/// |1-z| <= 0.7, the Pfaff map z -> z/(z-1) when it lands in either disk,
/// and the AGM limit F = 1/M(1, sqrt(1-z)) for the remaining lens around
/// Re z = 1/2 that none of the three expansions reaches.
pub fn hyp_half(z: C64) -> Result<C64> {
    if is_on_cut(z) {
        return Err(Error::ArgumentOnCut(z.re));
    }
    if z.norm() <= R0 {
        return series_f(z);
    }
    let w = 1.0 - z;
    if w.norm() <= R0 {
        return barnes_f_of_one_minus(w);
    }
    // Pfaff: F(z) = (1-z)^{-1/2} F(z/(z-1)), principal branch.
    let p = z / (z - 1.0);
    if p.norm() <= R0 {
        return Ok(series_f(p)? / w.sqrt());
    }
    if (1.0 - p).norm() <= R0 {
        return Ok(barnes_f_of_one_minus(1.0 - p)? / w.sqrt());
    }
    Ok(1.0 / agm_one(w.sqrt()))
}

/// The Schwarz triangle map tau(z) = i F(1-z) / F(z) on (0,1) u (C minus R).
pub fn schwarz_tau(z: C64) -> Result<C64> {
    let real_ok = z.im == 0.0 && z.re > 0.0 && z.re < 1.0;
    if z.im == 0.0 && !real_ok {
        return Err(Error::OutsideDomain(format!(
            "tau needs z in (0,1) or off the real line, got {z}"
        )));
    }
    let fz = hyp_half(z)?;
    let f1z = hyp_half(1.0 - z)?;
    Ok(Complex64::new(0.0, 1.0) * f1z / fz)
}

/// Delta(x) = F(1/(1+x)) / F(x/(1+x)) for x > 0; satisfies
/// Delta(x) Delta(1/x) = 1 and gives the boundary values of Im tau on the cuts.
pub fn delta_ratio(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::OutsideDomain(format!("Delta needs x > 0, got {x}")));
    }
    let a = hyp_half(C64::new(1.0 / (1.0 + x), 0.0))?;
    let b = hyp_half(C64::new(x / (1.0 + x), 0.0))?;
    Ok(a.re / b.re)
}
