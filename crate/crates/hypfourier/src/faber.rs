//! Schwarz triangle polynomials.
//!
//! S_n is the unique degree-n polynomial with S_n(0) = 0 such that
//! S_n(1/lambda_D(u)) - u^{-n} is holomorphic at the origin; it is a shifted
//! Faber polynomial of 16/lambda_D(1/u). The coefficients are computed
//! exactly by triangular elimination on the Laurent expansion
//! 1/lambda_D(u) = (1/16) u^{-1} (1 + c_1 u + ...), so no floating-point
//! error enters the construction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::exact::{LaurentTable, NomeSeriesTable, RatSeries};
use crate::theta::{lambda, C64};

/// Exact polynomial S_n(z) = sum_{k=1}^n s_{n,k} z^k (no constant term).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalPoly {
    pub n: usize,
    /// coeffs[k-1] = s_{n,k}, k = 1..n
    pub coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn coeff(&self, k: usize) -> BigRational {
        if k == 0 || k > self.n {
            BigRational::zero()
        } else {
            self.coeffs[k - 1].clone()
        }
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for k in (1..=self.n).rev() {
            acc = (acc + &self.coeffs[k - 1]) * x;
        }
        acc
    }

    /// Horner evaluation with f64 coefficients at a complex point.
    pub fn eval_complex(&self, x: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for k in (1..=self.n).rev() {
            let c = self.coeffs[k - 1].to_f64().unwrap_or(f64::NAN);
            acc = (acc + c) * x;
        }
        acc
    }

    /// The polynomial z -> S_n(1 - z), expanded exactly.
    pub fn compose_one_minus(&self) -> Vec<BigRational> {
        // returns coefficients of degree 0..n
        let mut out = vec![BigRational::zero(); self.n + 1];
        // binomial expansion of (1 - z)^k
        for k in 1..=self.n {
            let sk = &self.coeffs[k - 1];
            if sk.is_zero() {
                continue;
            }
            let mut binom = BigInt::one(); // C(k, j)
            for j in 0..=k {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                out[j] += sk * BigRational::from_integer(&binom * BigInt::from(sign));
                // next binomial coefficient
                binom = &binom * BigInt::from((k - j) as i64) / BigInt::from((j + 1) as i64);
            }
        }
        out
    }
}

/// Cache of triangle polynomials up to a degree cap, with the exact Laurent
/// table they were built from and f64 copies of the coefficients for fast
/// complex evaluation.
#[derive(Debug, Clone)]
pub struct FaberBasis {
    pub table: NomeSeriesTable,
    pub laurent: LaurentTable,
    pub cap: usize,
    polys: Vec<RationalPoly>,
    coeffs_f64: Vec<Vec<f64>>,
}

/// Default degree cap; coefficients grow like 16^n so big integers keep the
/// construction exact at negligible cost up to this size.
pub const DEFAULT_CAP: usize = 32;

impl FaberBasis {
    pub fn new(cap: usize) -> Result<Self> {
        let order = 2 * cap.max(8);
        let table = NomeSeriesTable::new(order);
        let laurent = LaurentTable::new(&table)?;
        let mut basis = FaberBasis {
            table,
            laurent,
            cap,
            polys: Vec::with_capacity(cap),
            coeffs_f64: Vec::with_capacity(cap),
        };
        basis.build()?;
        Ok(basis)
    }

    fn build(&mut self) -> Result<()> {
        let w = &self.laurent.inv_lambda_shifted; // w(u) = u / lambda_D(u)
        let order = w.order();
        if order < self.cap {
            return Err(Error::OrderInsufficient {
                order,
                needed: self.cap,
            });
        }
        // Powers w^k for k = 0..cap, each truncated at `order`.
        let mut powers: Vec<RatSeries> = Vec::with_capacity(self.cap + 1);
        let mut one = RatSeries::zero(order);
        one.coeffs[0] = BigRational::one();
        powers.push(one);
        for k in 1..=self.cap {
            let next = powers[k - 1].mul(w);
            powers.push(next);
        }
        // v(u)^k = w(u)^k u^{-k}; the coefficient of u^{-m} in v^k is
        // powers[k].coeff(k - m). Solve for s_{n,k} so that the principal
        // part of sum_k s_{n,k} v^k equals u^{-n} exactly.
        for n in 1..=self.cap {
            let mut s = vec![BigRational::zero(); n];
            // leading: s_{n,n} * w^n[0] = 1, w[0] = 1/16
            s[n - 1] = BigRational::one() / powers[n].coeff(0);
            for m in (1..n).rev() {
                // coefficient of u^{-m}: sum_{k=m..n} s_{n,k} w^k[k-m] = 0
                let mut acc = BigRational::zero();
                for k in (m + 1)..=n {
                    let c = powers[k].coeff(k - m);
                    if !c.is_zero() && !s[k - 1].is_zero() {
                        acc += &s[k - 1] * c;
                    }
                }
                s[m - 1] = -acc / powers[m].coeff(0);
            }
            let poly = RationalPoly { n, coeffs: s };
            self.coeffs_f64.push(
                poly.coeffs
                    .iter()
                    .map(|c| c.to_f64().unwrap_or(f64::NAN))
                    .collect(),
            );
            self.polys.push(poly);
        }
        Ok(())
    }

    pub fn schwarz_poly(&self, n: usize) -> Result<&RationalPoly> {
        if n == 0 || n > self.cap {
            return Err(Error::OrderInsufficient {
                order: self.cap,
                needed: n,
            });
        }
        Ok(&self.polys[n - 1])
    }

    /// Delta_n^S(0) = (-1)^n r_4(n), cross-checked at construction time by
    /// `tests::delta_matches_series_constant_term`.
    pub fn delta_n_at_zero(&self, n: usize) -> Result<BigInt> {
        if n == 0 || n > self.table.order {
            return Err(Error::OrderInsufficient {
                order: self.table.order,
                needed: n,
            });
        }
        let r = self.table.r4(n)?;
        Ok(if n % 2 == 0 { r } else { -r })
    }

    /// Constant term of u^{-n} - S_n(1/lambda_D(u)), computed from the exact
    /// series; this is Delta_n^S(0), the value at the origin of the
    /// holomorphic remainder in e^{-i pi n tau} = S_n(1/z) + Delta_n^S(z).
    pub fn delta_at_zero_from_series(&self, n: usize) -> Result<BigRational> {
        let poly = self.schwarz_poly(n)?;
        let w = &self.laurent.inv_lambda_shifted;
        let mut pk = RatSeries::zero(w.order());
        pk.coeffs[0] = BigRational::one();
        let mut acc = BigRational::zero();
        for k in 1..=n {
            pk = pk.mul(w);
            // u^0 coefficient of s_{n,k} w^k u^{-k}
            acc += poly.coeff(k) * pk.coeff(k);
        }
        Ok(-acc)
    }

    /// R_n^tri(z) = S_n(1/lambda(z)), Horner in 1/lambda.
    pub fn eval_r_triangle(&self, n: usize, z: C64, cfg: &EvalConfig) -> Result<C64> {
        let l = lambda(z, cfg)?;
        if l.norm() < 1e-280 {
            return Err(Error::ToleranceUnreachable(format!(
                "lambda underflow at {z}"
            )));
        }
        self.eval_s_at(n, 1.0 / l)
    }

    /// R_n^tri(-1/z) = S_n(1/(1 - lambda(z))).
    pub fn eval_r_triangle_inverted(&self, n: usize, z: C64, cfg: &EvalConfig) -> Result<C64> {
        let l = lambda(z, cfg)?;
        let d = 1.0 - l;
        if d.norm() < 1e-280 {
            return Err(Error::ToleranceUnreachable(format!(
                "1 - lambda underflow at {z}"
            )));
        }
        self.eval_s_at(n, 1.0 / d)
    }

    /// S_n evaluated at a complex point with f64 coefficients.
    pub fn eval_s_at(&self, n: usize, x: C64) -> Result<C64> {
        if n == 0 || n > self.cap {
            return Err(Error::OrderInsufficient {
                order: self.cap,
                needed: n,
            });
        }
        let c = &self.coeffs_f64[n - 1];
        let mut acc = C64::new(0.0, 0.0);
        for k in (1..=n).rev() {
            acc = (acc + c[k - 1]) * x;
        }
        Ok(acc)
    }
}

/// Convenience wrapper: exact big-rational r_4 as a plain integer for small n.
pub fn r4(table: &NomeSeriesTable, n: usize) -> Result<BigInt> {
    table.r4(n)
}
