//! Shared fixtures for the benchmark suite.

use abelcycles::{rat, CoefficientFamily};

/// A quadratic family close to the two-cycle window, exercising both the
/// exact-arithmetic and the integration kernels on nontrivial input.
pub fn quad_family() -> CoefficientFamily {
    CoefficientFamily::quad_poly(rat(33, 50), rat(31, 100))
}

/// A canonical trigonometric family with positive parameters.
pub fn trig_family() -> CoefficientFamily {
    CoefficientFamily::lin_trig(0.1, 0.2, 0.0, 1.0)
}
