//! Numeric theta functions in the nome and in the half-plane variable,
//! the elliptic modular function lambda and its derivative.
//!
//! Conventions:
//!   theta2(u) = 1 + sum_{n>=1} u^{n^2+n},
//!   theta3(u) = 1 + 2 sum_{n>=1} u^{n^2},
//!   theta4(u) = 1 + 2 sum_{n>=1} (-1)^n u^{n^2},
//! and in the half-plane variable z with q = e^{i pi z},
//!   Theta2(z) = 2 e^{i pi z/4} theta2(q),  Theta3(z) = theta3(q),
//!   Theta4(z) = theta4(q).
//!
//! The function pair satisfies the Jacobi identity
//! Theta3^4 = Theta2^4 + Theta4^4 and lambda = Theta2^4 / Theta3^4 with
//! lambda(z+2) = lambda(z) and lambda(-1/z) = 1 - lambda(z).

use num_complex::Complex64;

use crate::config::EvalConfig;
use crate::error::{Error, Result};

pub type C64 = Complex64;

const I: C64 = C64::new(0.0, 1.0);

/// Truncated q-series for theta_kind, kind in {2,3,4}.
///
/// Terms are added until the next term magnitude falls below
/// `cfg.abs_tol * max(1, |partial sum|)`; since the exponents grow like n^2
/// this needs at most ~40 terms once |q| <= e^{-pi/20}.
pub fn theta(kind: u8, q: C64, cfg: &EvalConfig) -> Result<C64> {
    let qn = q.norm();
    if qn > 1.0 - 1e-12 {
        return Err(Error::NomeOutOfDisk(qn));
    }
    // 40-term cap is honest only below this radius; the reduction in
    // `big_theta` keeps callers inside it.
    if qn > 0.99 {
        return Err(Error::ToleranceUnreachable(format!(
            "|q| = {qn} too close to 1 without modular reduction"
        )));
    }
    let mut sum = C64::new(1.0, 0.0);
    for n in 1..200u32 {
        let term = match kind {
            2 => q.powu(n * n + n),
            3 => 2.0 * q.powu(n * n),
            4 => {
                let t = 2.0 * q.powu(n * n);
                if n % 2 == 1 {
                    -t
                } else {
                    t
                }
            }
            _ => return Err(Error::InvalidInput(format!("theta kind {kind}"))),
        };
        sum += term;
        if term.norm() < cfg.abs_tol * sum.norm().max(1.0) {
            return Ok(sum);
        }
    }
    Err(Error::ToleranceUnreachable(format!(
        "theta series did not converge at |q| = {qn}"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Two,
    Three,
    Four,
}

impl Kind {
    fn from_u8(k: u8) -> Result<Kind> {
        match k {
            2 => Ok(Kind::Two),
            3 => Ok(Kind::Three),
            4 => Ok(Kind::Four),
            _ => Err(Error::InvalidInput(format!("theta kind {k}"))),
        }
    }
}

/// Reduction state: Theta_kind(z_original) = prefactor * Theta_{state.kind}(state.z).
struct Reduced {
    kind: Kind,
    z: C64,
    prefactor: C64,
}

/// Move z into |Re z| <= 1/2, |z| >= 1 using the shifts z -> z+1 and the
/// inversion z -> -1/z, with the bookkeeping
///   Theta2(z+1) = e^{i pi/4} Theta2(z),  Theta3(z+1) = Theta4(z),
///   Theta4(z+1) = Theta3(z),
///   Theta2(-1/z) = (z/i)^{1/2} Theta4(z), Theta3(-1/z) = (z/i)^{1/2} Theta3(z),
///   Theta4(-1/z) = (z/i)^{1/2} Theta2(z),
/// square roots on the principal branch.
fn reduce(kind: Kind, z: C64) -> Result<Reduced> {
    let mut st = Reduced {
        kind,
        z,
        prefactor: C64::new(1.0, 0.0),
    };
    for _ in 0..256 {
        let m = st.z.re.round();
        if m != 0.0 {
            // Theta_kind(st.z) = phase * Theta_kind'(st.z - m); the phase
            // exponent only matters mod 8
            let zname = st.z - m;
            let m_int = m as i64;
            match st.kind {
                Kind::Two => {
                    let m8 = m_int.rem_euclid(8) as f64;
                    st.prefactor *= (I * std::f64::consts::FRAC_PI_4 * m8).exp();
                }
                Kind::Three => {
                    if m_int.rem_euclid(2) == 1 {
                        st.kind = Kind::Four;
                    }
                }
                Kind::Four => {
                    if m_int.rem_euclid(2) == 1 {
                        st.kind = Kind::Three;
                    }
                }
            }
            st.z = zname;
        }
        if st.z.norm() >= 1.0 - 1e-15 {
            return Ok(st);
        }
        // st.z = -1/w with w = -1/st.z, Im w > 0 and |w| > 1.
        let w = -1.0 / st.z;
        st.prefactor *= (w / I).sqrt();
        st.kind = match st.kind {
            Kind::Two => Kind::Four,
            Kind::Three => Kind::Three,
            Kind::Four => Kind::Two,
        };
        st.z = w;
    }
    Err(Error::ToleranceUnreachable(
        "modular reduction did not terminate".into(),
    ))
}

fn theta_halfplane_direct(kind: Kind, z: C64, cfg: &EvalConfig) -> Result<C64> {
    let q = (I * std::f64::consts::PI * z).exp();
    Ok(match kind {
        Kind::Two => 2.0 * (I * std::f64::consts::FRAC_PI_4 * z).exp() * theta(2, q, cfg)?,
        Kind::Three => theta(3, q, cfg)?,
        Kind::Four => theta(4, q, cfg)?,
    })
}

/// Theta_kind(z) for Im z > 0.
///
/// Arguments below Im z = 0.75 (or with Re z outside [-0.6, 0.6]) are first
/// moved into the reduced region |Re| <= 1/2, |z| >= 1, which keeps the nome
/// small and the three theta components free of cancellation; cfg.min_im is
/// the floor below which direct summation is never attempted.
pub fn big_theta(kind: u8, z: C64, cfg: &EvalConfig) -> Result<C64> {
    let kind = Kind::from_u8(kind)?;
    if !(z.im > 0.0) {
        return Err(Error::NotUpperHalfPlane(z.im));
    }
    if z.im >= cfg.min_im.max(0.75) && z.re.abs() <= 0.6 {
        return theta_halfplane_direct(kind, z, cfg);
    }
    let red = reduce(kind, z)?;
    Ok(red.prefactor * theta_halfplane_direct(red.kind, red.z, cfg)?)
}

/// All three Theta values at once (sharing the reduction and the nome).
pub fn big_theta_triple(z: C64, cfg: &EvalConfig) -> Result<(C64, C64, C64)> {
    Ok((
        big_theta(2, z, cfg)?,
        big_theta(3, z, cfg)?,
        big_theta(4, z, cfg)?,
    ))
}

/// The elliptic modular function lambda(z) = Theta2(z)^4 / Theta3(z)^4.
pub fn lambda(z: C64, cfg: &EvalConfig) -> Result<C64> {
    let t2 = big_theta(2, z, cfg)?;
    let t3 = big_theta(3, z, cfg)?;
    Ok((t2 / t3).powu(4))
}

/// lambda'(z) = i pi lambda(z) (1 - lambda(z)) Theta3(z)^4.
pub fn lambda_prime(z: C64, cfg: &EvalConfig) -> Result<C64> {
    let (l, t34) = lambda_and_theta3_pow4(z, cfg)?;
    Ok(I * std::f64::consts::PI * l * (1.0 - l) * t34)
}

/// (lambda(z), Theta3(z)^4) together; the generating-function quadratures
/// need both at every contour point.
pub fn lambda_and_theta3_pow4(z: C64, cfg: &EvalConfig) -> Result<(C64, C64)> {
    let t2 = big_theta(2, z, cfg)?;
    let t3 = big_theta(3, z, cfg)?;
    let t34 = t3.powu(4);
    Ok(((t2 / t3).powu(4), t34))
}

/// (lambda(z), lambda'(z)) together.
pub fn lambda_with_prime(z: C64, cfg: &EvalConfig) -> Result<(C64, C64)> {
    let (l, t34) = lambda_and_theta3_pow4(z, cfg)?;
    Ok((l, I * std::f64::consts::PI * l * (1.0 - l) * t34))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    /// Direct partial sums to machine precision, independent of `theta`.
    fn theta_partial(kind: u8, q: C64, terms: u32) -> C64 {
        let mut s = C64::new(1.0, 0.0);
        for n in 1..=terms {
            s += match kind {
                2 => q.powu(n * n + n),
                3 => 2.0 * q.powu(n * n),
                4 => 2.0 * q.powu(n * n) * if n % 2 == 1 { -1.0 } else { 1.0 },
                _ => unreachable!(),
            };
        }
        s
    }

    #[test]
    fn theta_at_zero_is_one() {
        assert_eq!(theta(3, C64::new(0.0, 0.0), &cfg()).unwrap(), C64::new(1.0, 0.0));
    }

    #[test]
    fn theta4_against_partial_sum_oracle() {
        let q = C64::new(0.1, 0.0);
        let got = theta(4, q, &cfg()).unwrap();
        let want = theta_partial(4, q, 30);
        assert!((got - want).norm() < 1e-15, "got {got}, want {want}");
    }

    #[test]
    fn theta3_quarter_power_value() {
        // theta3(e^{-pi/2})^4 = pi (1+sqrt 2)^2 / (2 Gamma(3/4)^4)
        //                     = 4.060093787041491388...
        let gamma_3_4 = 1.225_416_702_465_177_6_f64;
        let want = PI * (1.0 + 2.0f64.sqrt()).powi(2) / (2.0 * gamma_3_4.powi(4));
        let q = C64::new((-PI / 2.0).exp(), 0.0);
        let v = theta(3, q, &cfg()).unwrap().powu(4);
        assert!((v.re - want).abs() < 1e-12, "{} vs {want}", v.re);
        assert!((v.re - 4.060093787041491).abs() < 1e-12);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn theta3_at_exp_minus_pi() {
        // Theta3(i) = theta3(e^{-pi}) = pi^{1/4} / Gamma(3/4); Gamma(3/4) = 1.2254167024651776451
        let v = big_theta(3, C64::new(0.0, 1.0), &cfg()).unwrap();
        let want = PI.powf(0.25) / 1.225_416_702_465_177_6;
        assert!((v.re - want).abs() < 1e-12, "{} vs {want}", v.re);
    }

    #[test]
    fn jacobi_identity_on_random_points() {
        // Residual relative to the largest of the three fourth powers; near
        // the cusps +-1 the ratio Theta2^4/Theta3^4 grows like e^{pi/im z},
        // so no double-precision evaluation can normalize by Theta3^4 alone.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let z = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.05..5.0));
            let (t2, t3, t4) = big_theta_triple(z, &cfg()).unwrap();
            let lhs = t3.powu(4);
            let rhs = t2.powu(4) + t4.powu(4);
            let scale = lhs.norm().max(t2.norm().powi(4)).max(t4.norm().powi(4));
            assert!(
                (lhs - rhs).norm() <= 1e-12 * scale,
                "Jacobi at {z}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn landen_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.1..3.0));
            let (_t2, t3, t4) = big_theta_triple(z, &cfg()).unwrap();
            let (s2, s3, s4) = big_theta_triple(2.0 * z, &cfg()).unwrap();
            let checks = [
                (2.0 * s2.powu(2), t3.powu(2) - t4.powu(2)),
                (2.0 * s3.powu(2), t3.powu(2) + t4.powu(2)),
                (s4.powu(2), t3 * t4),
            ];
            for (lhs, rhs) in checks {
                let scale = lhs.norm().max(rhs.norm()).max(1e-30);
                assert!((lhs - rhs).norm() < 1e-10 * scale, "Landen at {z}");
            }
        }
    }

    #[test]
    fn theta_shift_relations() {
        let c = cfg();
        let z = C64::new(0.3, 0.8);
        let lhs = big_theta(2, z + 2.0, &c).unwrap();
        let rhs = (I * PI / 2.0).exp() * big_theta(2, z, &c).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
        let z2 = C64::new(0.0, 1.1);
        let lhs = big_theta(4, z2 + 1.0, &c).unwrap();
        let rhs = big_theta(3, z2, &c).unwrap();
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn lambda_special_values() {
        let c = cfg();
        let li = lambda(C64::new(0.0, 1.0), &c).unwrap();
        assert!((li - 0.5).norm() < 1e-12, "lambda(i) = {li}");
        let l2i = lambda(C64::new(0.0, 2.0), &c).unwrap();
        let want = 17.0 - 12.0 * 2.0_f64.sqrt();
        assert!((l2i.re - want).abs() < 1e-12, "lambda(2i) = {l2i}");
        assert!(l2i.im.abs() < 1e-14);
    }

    #[test]
    fn lambda_functional_equations() {
        let c = cfg();
        let z = C64::new(0.4, 1.3);
        let a = lambda(z, &c).unwrap();
        let b = lambda(-1.0 / z, &c).unwrap();
        assert!((a + b - 1.0).norm() < 1e-12);
        let p = lambda(z + 2.0, &c).unwrap();
        assert!((a - p).norm() < 1e-13);
    }

    #[test]
    fn lambda_decay_sandwich_and_monotone() {
        let c = cfg();
        let mut prev = 1.0f64;
        for &y in &[0.5, 1.0, 2.0, 4.0, 8.0] {
            let l = lambda(C64::new(0.0, y), &c).unwrap().re;
            assert!((-PI * y).exp() < l && l < 16.0 * (-PI * y).exp(), "y = {y}");
            assert!(l < prev, "not decreasing at y = {y}");
            prev = l;
        }
    }

    #[test]
    fn contour_growth_bounds() {
        // 64 |lambda((t+i)/(t-i))| >= exp((pi/2)(t+1/t)) and the Theta3 decay bound.
        let c = cfg();
        for k in 1..=100 {
            let t = 0.1 * k as f64;
            let z = C64::new(t, 1.0) / C64::new(t, -1.0);
            let l = lambda(z, &c).unwrap();
            let s = t + 1.0 / t;
            assert!(
                64.0 * l.norm() >= (0.5 * PI * s).exp() * (1.0 - 1e-10),
                "lambda bound at t = {t}"
            );
            let t3 = big_theta(3, z, &c).unwrap();
            assert!(
                t3.norm().powi(4) <= 5.0 * s * (-0.25 * PI * s).exp() * (1.0 + 1e-10),
                "theta3 bound at t = {t}"
            );
        }
    }

    #[test]
    fn lambda_prime_matches_central_difference() {
        let c = cfg();
        let z = C64::new(0.23, 0.9);
        let h = 1e-5;
        let num = (lambda(z + h, &c).unwrap() - lambda(z - h, &c).unwrap()) / (2.0 * h);
        let ana = lambda_prime(z, &c).unwrap();
        assert!((num - ana).norm() < 1e-8, "{num} vs {ana}");
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(big_theta(3, C64::new(0.0, -1.0), &cfg()).is_err());
        assert!(theta(3, C64::new(1.2, 0.0), &cfg()).is_err());
    }
}
