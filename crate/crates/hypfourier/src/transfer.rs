//! Perron-Frobenius-Ruelle operators of the even Gauss map on [-1,1],
//!
//!   (T_{m+1} f)(x) = sum_{k != 0} f(1/(2k - x)) / (2k - x)^{m+2},
//!
//! realized on Chebyshev grids with a certified truncation: the arguments
//! 1/(2k-x) accumulate at 0, so the discarded tail is f(0) (plus a slope
//! term) against exact inverse-power sums. The fixed relations
//! (I + T_1)[2 H_0] = 1 and (I +- T_1)[H_n^pm] = e^{i pi n x} with
//! H_n^pm = 2 H_n +- 2 M_n tie the operator back to the biorthogonal system.

use crate::biortho::{BiorthoEvaluator, Family};
use crate::error::{Error, Result};
use crate::quad::tail_inverse_power_sum;
use crate::theta::C64;

/// Function on [-1,1] sampled at Chebyshev-Gauss-Lobatto nodes with
/// piecewise-cubic interpolation between them.
#[derive(Debug, Clone)]
pub struct GridFunction {
    /// strictly increasing nodes in [-1,1]
    pub nodes: Vec<f64>,
    pub values: Vec<C64>,
    /// limit value used for the truncation correction at the accumulation point
    pub value_at_zero: C64,
}

pub const DEFAULT_NODES: usize = 257;

impl GridFunction {
    pub fn from_fn<F>(f: F, n_nodes: usize) -> Result<GridFunction>
    where
        F: Fn(f64) -> Result<C64>,
    {
        if n_nodes < 9 {
            return Err(Error::InvalidInput("need at least 9 nodes".into()));
        }
        let nodes = cgl_nodes(n_nodes);
        let mut values = Vec::with_capacity(n_nodes);
        for &x in &nodes {
            values.push(f(x)?);
        }
        let value_at_zero = f(0.0)?;
        Ok(GridFunction {
            nodes,
            values,
            value_at_zero,
        })
    }

    pub fn constant_one(n_nodes: usize) -> GridFunction {
        let nodes = cgl_nodes(n_nodes);
        GridFunction {
            values: vec![C64::new(1.0, 0.0); nodes.len()],
            nodes,
            value_at_zero: C64::new(1.0, 0.0),
        }
    }

    /// Cubic Lagrange interpolation on the four nearest nodes.
    pub fn interp(&self, x: f64) -> C64 {
        let n = self.nodes.len();
        let pos = self.nodes.partition_point(|&t| t < x);
        let i0 = pos.saturating_sub(2).min(n - 4);
        let xs = &self.nodes[i0..i0 + 4];
        let ys = &self.values[i0..i0 + 4];
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..4 {
            let mut w = 1.0;
            for k in 0..4 {
                if k != j {
                    w *= (x - xs[k]) / (xs[j] - xs[k]);
                }
            }
            acc += ys[j] * w;
        }
        acc
    }

    /// Slope at the origin, for the first-order truncation correction.
    fn slope_at_zero(&self) -> C64 {
        let h = 1e-3;
        (self.interp(h) - self.interp(-h)) / (2.0 * h)
    }

    /// Integral over [-1,1] by Clenshaw-Curtis weights on the CGL grid.
    pub fn integral(&self) -> C64 {
        let w = clenshaw_curtis_weights(self.nodes.len());
        self.values
            .iter()
            .zip(w.iter())
            .map(|(v, w)| v * *w)
            .sum()
    }

    pub fn max_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

fn cgl_nodes(n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| -(std::f64::consts::PI * j as f64 / (n - 1) as f64).cos())
        .collect()
}

/// Clenshaw-Curtis weights for the CGL nodes, so that sum w_j f(x_j)
/// integrates f over [-1,1] with spectral accuracy.
fn clenshaw_curtis_weights(n_nodes: usize) -> Vec<f64> {
    let n = n_nodes - 1;
    let mut w = vec![0.0; n_nodes];
    for j in 0..=n {
        let theta = std::f64::consts::PI * j as f64 / n as f64;
        let mut s = 1.0;
        for k in 1..=(n / 2) {
            let b = if 2 * k == n { 1.0 } else { 2.0 };
            s -= b * (2.0 * k as f64 * theta).cos() / ((4 * k * k - 1) as f64);
        }
        let c = if j == 0 || j == n { 1.0 } else { 2.0 };
        w[j] = c * s / n as f64;
    }
    w
}

/// Apply T_{m+1} with truncation K: direct sum over 0 < |k| <= K plus the
/// tail correction f(0) S_{m+2} + f'(0) S_{m+3} with exact power sums.
pub fn transfer_apply(f: &GridFunction, m: u32, k_cut: usize) -> Result<GridFunction> {
    if k_cut < 1 {
        return Err(Error::InvalidInput("K must be at least 1".into()));
    }
    let p = m + 2;
    let f0 = f.value_at_zero;
    let f1 = f.slope_at_zero();
    let apply_at = |x: f64| -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for k in 1..=(k_cut as i64) {
            for sgn in [1i64, -1] {
                let d = 2.0 * (sgn * k) as f64 - x;
                let arg = 1.0 / d;
                s += f.interp(arg) * d.powi(-(p as i32));
            }
        }
        // sum_{|k|>K} (2k - x)^{-p} and the slope term with (2k - x)^{-(p+1)}
        let sp = tail_inverse_power_sum(p, -x, k_cut as i64)
            + if p % 2 == 0 { 1.0 } else { -1.0 } * tail_inverse_power_sum(p, x, k_cut as i64);
        let sp1 = tail_inverse_power_sum(p + 1, -x, k_cut as i64)
            + if (p + 1) % 2 == 0 { 1.0 } else { -1.0 }
                * tail_inverse_power_sum(p + 1, x, k_cut as i64);
        s + f0 * sp + f1 * sp1
    };
    let nodes = f.nodes.clone();
    let values = nodes.iter().map(|&x| apply_at(x)).collect();
    Ok(GridFunction {
        nodes,
        values,
        value_at_zero: apply_at(0.0),
    })
}

/// T_1 applied N times to the constant 1.
pub fn transfer_iterate_one(n_iter: usize, n_nodes: usize, k_cut: usize) -> Result<GridFunction> {
    let mut g = GridFunction::constant_one(n_nodes);
    for _ in 0..n_iter {
        g = transfer_apply(&g, 0, k_cut)?;
    }
    Ok(g)
}

/// Grid residual of the fixed relations: for n = 0 the value
/// max `|(I + T_1)[2 H_0](x) - 1|`, for n != 0 the worse of
/// max `|(I +- T_1)[H_n^pm](x) - e^{i pi n x}|` over both signs.
pub fn fixed_relation_residual(
    ev: &BiorthoEvaluator,
    n: i64,
    n_nodes: usize,
    k_cut: usize,
) -> Result<f64> {
    if n == 0 {
        let h0 = GridFunction::from_fn(
            |x| Ok(C64::new(2.0 * ev.h0(x)?, 0.0)),
            n_nodes,
        )?;
        let t = transfer_apply(&h0, 0, k_cut)?;
        let mut worst = 0.0f64;
        for (i, &x) in h0.nodes.iter().enumerate() {
            let _ = x;
            let v = h0.values[i] + t.values[i] - 1.0;
            worst = worst.max(v.norm());
        }
        return Ok(worst);
    }
    let mut worst = 0.0f64;
    for sign in [1.0f64, -1.0] {
        let hpm = GridFunction::from_fn(
            |x| {
                let h = ev.eval(Family::H, n, x)?;
                let m = ev.eval(Family::M, n, x)?;
                Ok(2.0 * h + sign * 2.0 * m)
            },
            n_nodes,
        )?;
        let t = transfer_apply(&hpm, 0, k_cut)?;
        for (i, &x) in hpm.nodes.iter().enumerate() {
            let target = (C64::new(0.0, 1.0) * std::f64::consts::PI * n as f64 * x).exp();
            let v = hpm.values[i] + sign * t.values[i] - target;
            worst = worst.max(v.norm());
        }
    }
    Ok(worst)
}

/// Ratio `T_1^N [1](0) / T_1^{N-1} [1](0)`; bounded by pi^2/4 - 1.
pub fn contraction_check(n_iter: usize, n_nodes: usize, k_cut: usize) -> Result<f64> {
    if n_iter < 2 {
        return Err(Error::InvalidInput("need N >= 2".into()));
    }
    let prev = transfer_iterate_one(n_iter - 1, n_nodes, k_cut)?;
    let cur = transfer_apply(&prev, 0, k_cut)?;
    let a = prev.value_at_zero.re;
    let b = cur.value_at_zero.re;
    if a <= 0.0 {
        return Err(Error::InvalidInput("nonpositive iterate at 0".into()));
    }
    Ok(b / a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faber::FaberBasis;
    use std::f64::consts::PI;
    use std::sync::Arc;

    #[test]
    fn clenshaw_curtis_integrates_polynomials() {
        let g = GridFunction::from_fn(|x| Ok(C64::new(x * x, 0.0)), 33).unwrap();
        assert!((g.integral().re - 2.0 / 3.0).abs() < 1e-13);
        let g = GridFunction::from_fn(|x| Ok(C64::new((PI * x).sin().powi(2), 0.0)), 65).unwrap();
        assert!((g.integral().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn interp_reproduces_smooth_functions() {
        let g = GridFunction::from_fn(|x| Ok(C64::new((2.0 * x).cos(), 0.0)), 257).unwrap();
        for &x in &[-0.99, -0.33, 0.0, 0.512, 0.9999] {
            assert!((g.interp(x).re - (2.0 * x).cos()).abs() < 3e-8, "x={x}");
        }
    }

    #[test]
    fn t1_of_one_at_zero_is_pi2_over_12() {
        // T_1[1](0) = sum_{k!=0} (2k)^{-2} = pi^2/12, via the tail machinery.
        let g = transfer_iterate_one(1, 65, 40).unwrap();
        assert!(
            (g.value_at_zero.re - PI * PI / 12.0).abs() < 1e-12,
            "{}",
            g.value_at_zero.re
        );
        // independent crude oracle: direct partial sum
        let mut direct = 0.0;
        for k in 1..200000 {
            direct += 2.0 * (2.0 * k as f64).powi(-2);
        }
        assert!((g.value_at_zero.re - direct).abs() < 1e-5);
    }

    #[test]
    fn mass_is_preserved() {
        // int_{-1}^{1} T_1^N [1] dx = 2
        for n in 1..=3usize {
            let g = transfer_iterate_one(n, DEFAULT_NODES, 300).unwrap();
            assert!((g.integral().re - 2.0).abs() < 1e-4, "N = {n}: {}", g.integral().re);
        }
    }

    #[test]
    fn evenness_and_monotonicity_preserved() {
        let g = transfer_iterate_one(2, 129, 200).unwrap();
        let n = g.nodes.len();
        for i in 0..n / 2 {
            let a = g.values[i].re;
            let b = g.values[n - 1 - i].re;
            assert!((a - b).abs() < 1e-9, "evenness at {}", g.nodes[i]);
        }
        // nondecreasing on [0, 1]
        let mut prev = g.value_at_zero.re;
        for i in (n / 2)..n {
            let v = g.values[i].re;
            assert!(v >= prev - 1e-9, "monotonicity at {}", g.nodes[i]);
            prev = v;
        }
        assert!(g.value_at_zero.re > 0.0);
    }

    #[test]
    fn contraction_ratio() {
        let bound = PI * PI / 4.0 - 1.0;
        for n in [2usize, 3] {
            let r = contraction_check(n, 129, 200).unwrap();
            assert!(r > 0.0 && r <= bound + 1e-6, "N={n}: {r}");
        }
    }

    #[test]
    fn positivity_of_iterates() {
        for n in 1..=5usize {
            let g = transfer_iterate_one(n, 65, 100).unwrap();
            assert!(g.value_at_zero.re > 0.0, "N = {n}");
        }
    }

    #[test]
    fn fixed_relations_small_indices() {
        let ev = BiorthoEvaluator::new(Arc::new(FaberBasis::new(6).unwrap()));
        let r0 = fixed_relation_residual(&ev, 0, 65, 400).unwrap();
        assert!(r0 < 1e-5, "n=0 residual {r0}");
        let r1 = fixed_relation_residual(&ev, 1, 65, 400).unwrap();
        assert!(r1 < 1e-4, "n=1 residual {r1}");
        let rm2 = fixed_relation_residual(&ev, -2, 65, 400).unwrap();
        assert!(rm2 < 1e-4, "n=-2 residual {rm2}");
    }
}
