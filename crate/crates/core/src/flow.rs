//! Initial-value integration of the Abel equation jointly with its first and
//! second variational equations, blow-up detection, and bracketing of the
//! supremum of bounded initial conditions.
//!
//! The integrator is an embedded Dormand-Prince 5(4) pair with adaptive step
//! control. The variational system is integrated together with the base
//! equation, never by re-integration at perturbed initial conditions:
//!
//!   u'    = A u^3 + B u^2
//!   u_x'  = (3 A u^2 + 2 B u) u_x
//!   u_xx' = (6 A u + 2 B) u_x^2 + (3 A u^2 + 2 B u) u_xx

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelmodel::CoefficientFamily;

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("stiffness/tolerance failure: step budget exhausted at t = {0}")]
    StepBudget(f64),
    #[error("initial condition must be nonnegative, got {0}")]
    NegativeInitial(f64),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntegratorOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub x_blowup: f64,
    pub max_steps: usize,
    /// Keep the accepted-step states for dense sampling.
    pub record_trajectory: bool,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            x_blowup: 1e6,
            max_steps: 1_000_000,
            record_trajectory: false,
        }
    }
}

impl IntegratorOptions {
    pub fn with_trajectory(mut self) -> Self {
        self.record_trajectory = true;
        self
    }

    /// Looser tolerances for bulk parameter sweeps.
    pub fn sweep() -> Self {
        IntegratorOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum FlowStatus {
    Completed,
    BlowUp { t_escape: f64 },
}

/// One accepted integrator step: time, state `[u, u_x, u_xx]` and its
/// derivative, kept for cubic Hermite sampling.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrajectoryNode {
    pub t: f64,
    pub y: [f64; 3],
    pub dy: [f64; 3],
}

/// Dense output over [0, T] built from accepted steps.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Trajectory {
    pub nodes: Vec<TrajectoryNode>,
}

impl Trajectory {
    /// Cubic Hermite interpolation of `[u, u_x, u_xx]` at `t`.
    pub fn sample(&self, t: f64) -> [f64; 3] {
        let n = self.nodes.len();
        assert!(n >= 2, "trajectory too short to sample");
        let t = t.clamp(self.nodes[0].t, self.nodes[n - 1].t);
        let idx = match self
            .nodes
            .binary_search_by(|node| node.t.total_cmp(&t))
        {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        };
        let a = &self.nodes[idx];
        let b = &self.nodes[idx + 1];
        let h = b.t - a.t;
        if h == 0.0 {
            return a.y;
        }
        let s = (t - a.t) / h;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        let mut out = [0.0; 3];
        for k in 0..3 {
            out[k] = h00 * a.y[k] + h10 * h * a.dy[k] + h01 * b.y[k] + h11 * h * b.dy[k];
        }
        out
    }

    pub fn t_end(&self) -> f64 {
        self.nodes.last().map_or(0.0, |n| n.t)
    }
}

/// Outcome of integrating from one initial condition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlowResult {
    pub u_t: f64,
    pub ux_t: f64,
    pub uxx_t: f64,
    pub status: FlowStatus,
    pub trajectory: Option<Trajectory>,
}

impl FlowResult {
    pub fn completed(&self) -> bool {
        self.status == FlowStatus::Completed
    }
}

fn rhs(fam: &CoefficientFamily, t: f64, y: &[f64; 3]) -> [f64; 3] {
    let a = fam.a(t);
    let b = fam.b(t);
    let u = y[0];
    let jac = (3.0 * a * u + 2.0 * b) * u;
    [
        (a * u + b) * u * u,
        jac * y[1],
        (6.0 * a * u + 2.0 * b) * y[1] * y[1] + jac * y[2],
    ]
}

// Dormand-Prince 5(4) coefficients.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// 4th-order embedded weights.
const E1: f64 = 5179.0 / 57600.0;
const E3: f64 = 7571.0 / 16695.0;
const E4: f64 = 393.0 / 640.0;
const E5: f64 = -92097.0 / 339200.0;
const E6: f64 = 187.0 / 2100.0;
const E7: f64 = 1.0 / 40.0;

/// Integrate the Abel equation with its variational system from
/// `(x0, 1, 0)` over `[0, T]`.
pub fn integrate_with_variations(
    fam: &CoefficientFamily,
    x0: f64,
    opts: &IntegratorOptions,
) -> Result<FlowResult, FlowError> {
    integrate_over(fam, x0, fam.period(), opts)
}

/// As `integrate_with_variations`, but over `[0, t_end]` (used for
/// multi-period continuation in the trigonometric analysis).
pub fn integrate_over(
    fam: &CoefficientFamily,
    x0: f64,
    t_end: f64,
    opts: &IntegratorOptions,
) -> Result<FlowResult, FlowError> {
    if x0 < 0.0 {
        return Err(FlowError::NegativeInitial(x0));
    }
    let mut t = 0.0;
    let mut y = [x0, 1.0, 0.0];
    let mut k1 = rhs(fam, t, &y);
    let mut h = 1e-4 * t_end;
    let mut steps = 0usize;
    let mut trajectory = opts.record_trajectory.then(|| Trajectory {
        nodes: vec![TrajectoryNode { t, y, dy: k1 }],
    });

    while t < t_end {
        if steps >= opts.max_steps {
            return Err(FlowError::StepBudget(t));
        }
        steps += 1;
        if t + h > t_end {
            h = t_end - t;
        }

        let mut k = [[0.0; 3]; 7];
        k[0] = k1;
        let stage = |y: &[f64; 3], incr: &[(f64, [f64; 3])], h: f64| -> [f64; 3] {
            let mut out = *y;
            for (c, ki) in incr {
                for j in 0..3 {
                    out[j] += h * c * ki[j];
                }
            }
            out
        };
        k[1] = rhs(fam, t + C[1] * h, &stage(&y, &[(A21, k[0])], h));
        k[2] = rhs(fam, t + C[2] * h, &stage(&y, &[(A31, k[0]), (A32, k[1])], h));
        k[3] = rhs(
            fam,
            t + C[3] * h,
            &stage(&y, &[(A41, k[0]), (A42, k[1]), (A43, k[2])], h),
        );
        k[4] = rhs(
            fam,
            t + C[4] * h,
            &stage(&y, &[(A51, k[0]), (A52, k[1]), (A53, k[2]), (A54, k[3])], h),
        );
        k[5] = rhs(
            fam,
            t + C[5] * h,
            &stage(
                &y,
                &[
                    (A61, k[0]),
                    (A62, k[1]),
                    (A63, k[2]),
                    (A64, k[3]),
                    (A65, k[4]),
                ],
                h,
            ),
        );
        let y5 = stage(
            &y,
            &[(B1, k[0]), (B3, k[2]), (B4, k[3]), (B5, k[4]), (B6, k[5])],
            h,
        );
        k[6] = rhs(fam, t + h, &y5);
        let y4 = stage(
            &y,
            &[
                (E1, k[0]),
                (E3, k[2]),
                (E4, k[3]),
                (E5, k[4]),
                (E6, k[5]),
                (E7, k[6]),
            ],
            h,
        );

        // Error estimate and step control.
        let mut err: f64 = 0.0;
        for j in 0..3 {
            let sc = opts.abs_tol + opts.rel_tol * y[j].abs().max(y5[j].abs());
            err = err.max(((y5[j] - y4[j]) / sc).abs());
        }
        let finite = y5.iter().all(|v| v.is_finite());

        if finite && err <= 1.0 {
            t += h;
            y = y5;
            k1 = k[6];
            if let Some(traj) = trajectory.as_mut() {
                traj.nodes.push(TrajectoryNode { t, y, dy: k1 });
            }
            if y[0].abs() > opts.x_blowup {
                return Ok(FlowResult {
                    u_t: y[0],
                    ux_t: y[1],
                    uxx_t: y[2],
                    status: FlowStatus::BlowUp { t_escape: t },
                    trajectory,
                });
            }
        }

        let factor = if !finite || err <= 0.0 {
            if finite {
                5.0
            } else {
                0.25
            }
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        let h_min = 1e-15 * t_end.max(1.0);
        if h < h_min {
            // A collapsing step with a large state is a blow-up in progress.
            if y[0].abs() > 1e3 {
                return Ok(FlowResult {
                    u_t: y[0],
                    ux_t: y[1],
                    uxx_t: y[2],
                    status: FlowStatus::BlowUp { t_escape: t },
                    trajectory,
                });
            }
            return Err(FlowError::StepBudget(t));
        }
    }

    Ok(FlowResult {
        u_t: y[0],
        ux_t: y[1],
        uxx_t: y[2],
        status: FlowStatus::Completed,
        trajectory,
    })
}

/// Supremum of initial conditions with bounded forward orbit over one
/// period, bracketed by exponential search plus bisection.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub enum BoundedSupremum {
    Finite(f64),
    /// No blow-up found below the search ceiling.
    Unbounded { ceiling: f64 },
}

impl BoundedSupremum {
    pub fn finite(&self) -> Option<f64> {
        match self {
            BoundedSupremum::Finite(x) => Some(*x),
            BoundedSupremum::Unbounded { .. } => None,
        }
    }
}

pub fn bounded_supremum(fam: &CoefficientFamily, opts: &IntegratorOptions) -> BoundedSupremum {
    let ceiling = 1e8;
    let bounded = |x: f64| -> bool {
        matches!(
            integrate_with_variations(fam, x, opts),
            Ok(FlowResult {
                status: FlowStatus::Completed,
                ..
            })
        )
    };
    let mut lo = 0.0;
    let mut hi = 1e-3;
    while bounded(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > ceiling {
            return BoundedSupremum::Unbounded { ceiling };
        }
    }
    // Invariant: lo bounded, hi blows up.
    while hi - lo > 1e-8 * hi.max(1e-30) {
        let mid = 0.5 * (lo + hi);
        if bounded(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    BoundedSupremum::Finite(0.5 * (lo + hi))
}
