//! Exact power-series arithmetic over big rationals.
//!
//! Everything in this module is exact: the q-expansions of the fourth theta
//! powers have integer coefficients, and the reciprocal of the normalized
//! modular function u -> lambda_D(u)/(16u) has dyadic rational coefficients.
//! These tables feed the triangle-polynomial construction in [`crate::faber`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense truncated power series with exact rational coefficients,
/// `coeffs[k]` being the coefficient of `u^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatSeries {
    pub coeffs: Vec<BigRational>,
}

impl RatSeries {
    pub fn zero(order: usize) -> Self {
        RatSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn from_ints(v: Vec<i64>) -> Self {
        RatSeries {
            coeffs: v
                .into_iter()
                .map(|c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Product truncated to the shorter of the two orders.
    pub fn mul(&self, other: &RatSeries) -> RatSeries {
        let order = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        RatSeries { coeffs: out }
    }

    /// Reciprocal series; requires a nonzero constant term.
    pub fn invert(&self) -> Result<RatSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::InvalidInput(
                "cannot invert a series with zero constant term".into(),
            ));
        }
        let order = self.order();
        let inv0 = BigRational::one() / self.coeffs[0].clone();
        let mut out = vec![BigRational::zero(); order + 1];
        out[0] = inv0.clone();
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &out[n - k];
                }
            }
            out[n] = -acc * &inv0;
        }
        Ok(RatSeries { coeffs: out })
    }

    pub fn scale(&self, c: &BigRational) -> RatSeries {
        RatSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

/// theta2(u) = 1 + sum_{n>=1} u^{n^2+n}  (exponents 2, 6, 12, 20, ...).
pub fn theta2_series(order: usize) -> RatSeries {
    let mut v = vec![0i64; order + 1];
    let mut n = 0i64;
    loop {
        let e = n * n + n;
        if e as usize > order {
            break;
        }
        v[e as usize] += 1;
        n += 1;
    }
    RatSeries::from_ints(v)
}

/// theta3(u) = 1 + 2 sum_{n>=1} u^{n^2}.
pub fn theta3_series(order: usize) -> RatSeries {
    let mut v = vec![0i64; order + 1];
    v[0] = 1;
    let mut n = 1i64;
    while (n * n) as usize <= order {
        v[(n * n) as usize] += 2;
        n += 1;
    }
    RatSeries::from_ints(v)
}

/// theta4(u) = theta3(-u) = 1 + 2 sum_{n>=1} (-1)^n u^{n^2}.
pub fn theta4_series(order: usize) -> RatSeries {
    let mut s = theta3_series(order);
    for (k, c) in s.coeffs.iter_mut().enumerate() {
        if k % 2 == 1 {
            *c = -c.clone();
        }
    }
    s
}

fn pow4(s: &RatSeries) -> RatSeries {
    let s2 = s.mul(s);
    s2.mul(&s2)
}

/// Exact expansion tables shared by the triangle-polynomial construction,
/// together with the representation counts r_4.
#[derive(Debug, Clone)]
pub struct NomeSeriesTable {
    pub order: usize,
    /// theta2(u)^4
    pub theta2_pow4: RatSeries,
    /// theta3(u)^4 = 1 + sum r_4(n) u^n
    pub theta3_pow4: RatSeries,
    /// theta4(u)^4 = theta3(-u)^4
    pub theta4_pow4: RatSeries,
    /// r_4(n) for n = 0..order (r_4(0) := 1 by the series normalization)
    pub r4: Vec<BigInt>,
}

impl NomeSeriesTable {
    pub fn new(order: usize) -> Self {
        let t2 = pow4(&theta2_series(order));
        let t3 = pow4(&theta3_series(order));
        let t4 = pow4(&theta4_series(order));
        let r4 = t3
            .coeffs
            .iter()
            .map(|c| {
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect();
        NomeSeriesTable {
            order,
            theta2_pow4: t2,
            theta3_pow4: t3,
            theta4_pow4: t4,
            r4,
        }
    }

    /// Number of representations of n as an ordered sum of four integer squares.
    pub fn r4(&self, n: usize) -> Result<BigInt> {
        if n > self.order {
            return Err(Error::OrderInsufficient {
                order: self.order,
                needed: n,
            });
        }
        Ok(self.r4[n].clone())
    }
}

/// Laurent data for 1/lambda_D(u) = (1/16) u^{-1} (1 + c_1 u + c_2 u^2 + ...).
///
/// The stored series is `u / lambda_D(u) = theta3^4 / (16 theta2^4)`, whose
/// constant term is 1/16 and whose coefficients are dyadic rationals.
#[derive(Debug, Clone)]
pub struct LaurentTable {
    pub order: usize,
    /// w(u) := u / lambda_D(u)
    pub inv_lambda_shifted: RatSeries,
}

impl LaurentTable {
    pub fn new(table: &NomeSeriesTable) -> Result<Self> {
        let inv_t2 = table.theta2_pow4.invert()?;
        let sixteenth = BigRational::new(BigInt::one(), BigInt::from(16));
        let w = table.theta3_pow4.mul(&inv_t2).scale(&sixteenth);
        debug_assert_eq!(w.coeffs[0], sixteenth);
        Ok(LaurentTable {
            order: table.order,
            inv_lambda_shifted: w,
        })
    }

    /// Denominators of w are powers of two; exposed for sanity checking.
    pub fn denominators_are_dyadic(&self) -> bool {
        self.inv_lambda_shifted.coeffs.iter().all(|c| {
            let mut d = c.denom().abs();
            let two = BigInt::from(2);
            while (&d % &two).is_zero() {
                d /= &two;
            }
            d.is_one()
        })
    }
}
