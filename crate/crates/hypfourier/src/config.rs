/// Accuracy knobs for series evaluation of the theta/modular kernels.
#[derive(Debug, Clone, Copy)]
pub struct EvalConfig {
    /// Absolute truncation target for q-series partial sums.
    pub abs_tol: f64,
    /// Certified bound on the neglected series tail.
    pub series_tail_bound: f64,
    /// Smallest Im z accepted without modular reduction.
    pub min_im: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            abs_tol: 1e-15,
            series_tail_bound: 1e-14,
            min_im: 0.05,
        }
    }
}

/// Accuracy knobs for contour quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    /// Absolute tolerance target for a single integral.
    pub abs_tol: f64,
    /// Truncation parameter for the semicircle contour, in the variable t of
    /// z = (t+i)/(t-i); the contour is cut to t in [1/t_max, t_max].
    pub t_max: f64,
    /// Maximum number of adaptive subdivisions per integral.
    pub max_subdiv: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            t_max: 40.0,
            max_subdiv: 4000,
        }
    }
}

impl QuadConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        QuadConfig {
            abs_tol,
            ..Self::default()
        }
    }
}
