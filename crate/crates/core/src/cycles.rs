//! Location and classification of positive closed solutions via the return
//! map, series (Hopf) coefficients of the return map, and the Lambda-curve
//! tracing for monotone one-parameter families.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelmodel::CoefficientFamily;
use crate::flow::{integrate_with_variations, FlowError, FlowStatus, IntegratorOptions};
use crate::realroots::{rat, rat_to_f64, Rat, RatPoly};

/// Band on |multiplier - 1| inside which a cycle is treated as
/// a semistable candidate rather than hyperbolic.
pub const SEMISTABLE_BAND: f64 = 1e-4;
/// Displacement magnitude below which an interior extremum counts as a
/// near-tangency worth refining through the multiplier equation.
pub const TANGENCY_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum CycleError {
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("grid must have at least 16 points, got {0}")]
    GridTooCoarse(usize),
    #[error("monotonicity assumption violated at x = {0}")]
    MonotonicityViolated(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    StableHyperbolic,
    UnstableHyperbolic,
    SemistableCandidate,
}

/// A located closed solution of the return map.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycleRecord {
    pub x_star: f64,
    pub multiplier: f64,
    pub uxx: f64,
    pub classification: Classification,
    pub refinement_width: f64,
}

/// Search outcome: records plus any grid-resolution warnings.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CycleSearch {
    pub cycles: Vec<CycleRecord>,
    pub warnings: Vec<String>,
}

fn classify(multiplier: f64) -> Classification {
    if (multiplier - 1.0).abs() < SEMISTABLE_BAND {
        Classification::SemistableCandidate
    } else if multiplier < 1.0 {
        Classification::StableHyperbolic
    } else {
        Classification::UnstableHyperbolic
    }
}

/// Displacement u(T, x) - x, or `None` past the blow-up boundary.
fn displacement(
    fam: &CoefficientFamily,
    x: f64,
    opts: &IntegratorOptions,
) -> Result<Option<f64>, FlowError> {
    let r = integrate_with_variations(fam, x, opts)?;
    Ok(match r.status {
        FlowStatus::Completed => Some(r.u_t - x),
        FlowStatus::BlowUp { .. } => None,
    })
}

fn record_at(
    fam: &CoefficientFamily,
    x: f64,
    width: f64,
    opts: &IntegratorOptions,
) -> Result<CycleRecord, FlowError> {
    let r = integrate_with_variations(fam, x, opts)?;
    Ok(CycleRecord {
        x_star: x,
        multiplier: r.ux_t,
        uxx: r.uxx_t,
        classification: classify(r.ux_t),
        refinement_width: width,
    })
}

/// Scan the displacement map on a log-spaced grid over (0, x_max], bracket
/// its sign changes, refine each root by bisection, and classify by the
/// multiplier. Near-tangential double roots are detected at interior
/// displacement extrema and refined through u_x(T, x) = 1.
pub fn find_closed_solutions(
    fam: &CoefficientFamily,
    x_max: f64,
    n_grid: usize,
    opts: &IntegratorOptions,
) -> Result<CycleSearch, CycleError> {
    if n_grid < 16 {
        return Err(CycleError::GridTooCoarse(n_grid));
    }
    let x_min = x_max * 1e-8;
    let ratio = (x_max / x_min).ln();
    let xs: Vec<f64> = (0..n_grid)
        .map(|i| x_min * (ratio * i as f64 / (n_grid - 1) as f64).exp())
        .collect();
    let mut ds: Vec<Option<f64>> = Vec::with_capacity(n_grid);
    for &x in &xs {
        ds.push(displacement(fam, x, opts)?);
    }

    let mut search = CycleSearch::default();
    let mut bracket_cells: Vec<usize> = vec![];

    // Displacement below this is indistinguishable from integrator noise;
    // a sign change with both endpoints under the floor is spurious (it
    // happens near the origin when the leading return-map coefficients
    // vanish and u(T, x) - x falls under the absolute tolerance).
    let noise_floor = |x: f64| 100.0 * (opts.abs_tol + opts.rel_tol * x);

    for i in 0..n_grid - 1 {
        let (Some(d0), Some(d1)) = (ds[i], ds[i + 1]) else {
            continue;
        };
        if d0 == 0.0 {
            continue; // the grid point itself is a fixed point; caught below
        }
        if d0.abs().max(d1.abs()) < noise_floor(xs[i + 1]) {
            continue;
        }
        if d0 * d1 < 0.0 {
            bracket_cells.push(i);
            let (mut lo, mut hi) = (xs[i], xs[i + 1]);
            let mut dlo = d0;
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                match displacement(fam, mid, opts)? {
                    Some(dm) if dm * dlo > 0.0 => {
                        lo = mid;
                        dlo = dm;
                    }
                    _ => hi = mid,
                }
            }
            let x_star = 0.5 * (lo + hi);
            search.cycles.push(record_at(fam, x_star, hi - lo, opts)?);
        }
    }

    // Adjacent bracketed cells suggest the grid may be under-resolving.
    for w in bracket_cells.windows(2) {
        if w[1] == w[0] + 1 {
            search.warnings.push(format!(
                "adjacent sign-change brackets at grid cells {} and {}; grid may be coarser than cycle spacing",
                w[0], w[1]
            ));
        }
    }

    // Near-tangential double roots: interior extrema of the displacement
    // with small magnitude, not already inside a bracketed cell.
    for i in 1..n_grid - 1 {
        let (Some(dm), Some(d0), Some(dp)) = (ds[i - 1], ds[i], ds[i + 1]) else {
            continue;
        };
        let is_extremum = (d0 - dm) * (dp - d0) < 0.0;
        if !is_extremum || d0.abs() >= TANGENCY_TOL {
            continue;
        }
        // A genuine near-tangency has real curvature: the displacement
        // must climb out of the noise floor at the flanking grid points.
        if dm.abs().max(dp.abs()) < noise_floor(xs[i + 1]) {
            continue;
        }
        if bracket_cells.iter().any(|&c| c == i - 1 || c == i) {
            continue;
        }
        // Refine through the multiplier root u_x(T, x) = 1.
        let g = |x: f64| -> Result<Option<f64>, FlowError> {
            let r = integrate_with_variations(fam, x, opts)?;
            Ok(match r.status {
                FlowStatus::Completed => Some(r.ux_t - 1.0),
                FlowStatus::BlowUp { .. } => None,
            })
        };
        let (mut lo, mut hi) = (xs[i - 1], xs[i + 1]);
        let (Some(glo), Some(ghi)) = (g(lo)?, g(hi)?) else {
            continue;
        };
        if glo * ghi > 0.0 {
            continue;
        }
        let mut glo = glo;
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            match g(mid)? {
                Some(gm) if gm * glo > 0.0 => {
                    lo = mid;
                    glo = gm;
                }
                _ => hi = mid,
            }
        }
        let x_star = 0.5 * (lo + hi);
        if let Some(d) = displacement(fam, x_star, opts)? {
            if d.abs() < TANGENCY_TOL {
                search.cycles.push(record_at(fam, x_star, hi - lo, opts)?);
            }
        }
    }

    search
        .cycles
        .sort_by(|a, b| a.x_star.total_cmp(&b.x_star));
    Ok(search)
}

/// Coefficients of x^2, x^3, x^4 in the return map
/// u(T, x) = x + c2 x^2 + c3 x^3 + c4 x^4 + O(x^5).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct HopfCoefficients {
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

/// Series coefficients by the iterated integrals
///   c2 = int B,  c3 = int (A + 2 B u2),  c4 = int (3 A u2 + B (u2^2 + 2 u3)),
/// where u2, u3 are the running coefficient functions. Exact rational
/// integration for the quadratic family, high-order quadrature otherwise.
pub fn hopf_coefficients(fam: &CoefficientFamily) -> HopfCoefficients {
    match (fam.a_poly(), fam.b_poly()) {
        (Some(a), Some(b)) => {
            let (c2, c3, c4) = hopf_exact(&a, &b);
            HopfCoefficients {
                c2: rat_to_f64(&c2),
                c3: rat_to_f64(&c3),
                c4: rat_to_f64(&c4),
            }
        }
        _ => hopf_by_quadrature(fam),
    }
}

/// Exact rational iterated integrals for polynomial coefficients on [0, 1].
pub fn hopf_exact(a: &RatPoly, b: &RatPoly) -> (Rat, Rat, Rat) {
    let one = rat(1, 1);
    let u2 = b.integral();
    let u3 = (&(a + &(&b.scale(&rat(2, 1)) * &u2))).integral();
    let integrand4 = &(&a.scale(&rat(3, 1)) * &u2)
        + &(b * &(&(&u2 * &u2) + &u3.scale(&rat(2, 1))));
    let u4 = integrand4.integral();
    (u2.eval(&one), u3.eval(&one), u4.eval(&one))
}

fn hopf_by_quadrature(fam: &CoefficientFamily) -> HopfCoefficients {
    // Fixed-step RK4 on the linear coefficient chain [u2, u3, u4].
    let t_end = fam.period();
    let n = 8192;
    let h = t_end / n as f64;
    let f = |t: f64, y: &[f64; 3]| -> [f64; 3] {
        let a = fam.a(t);
        let b = fam.b(t);
        [
            b,
            a + 2.0 * b * y[0],
            3.0 * a * y[0] + b * (y[0] * y[0] + 2.0 * y[1]),
        ]
    };
    let mut y = [0.0f64; 3];
    let mut t = 0.0;
    for _ in 0..n {
        let k1 = f(t, &y);
        let y2 = [
            y[0] + 0.5 * h * k1[0],
            y[1] + 0.5 * h * k1[1],
            y[2] + 0.5 * h * k1[2],
        ];
        let k2 = f(t + 0.5 * h, &y2);
        let y3 = [
            y[0] + 0.5 * h * k2[0],
            y[1] + 0.5 * h * k2[1],
            y[2] + 0.5 * h * k2[2],
        ];
        let k3 = f(t + 0.5 * h, &y3);
        let y4 = [y[0] + h * k3[0], y[1] + h * k3[1], y[2] + h * k3[2]];
        let k4 = f(t + h, &y4);
        for j in 0..3 {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        t += h;
    }
    HopfCoefficients {
        c2: y[0],
        c3: y[1],
        c4: y[2],
    }
}

/// Series coefficients by least-squares fit of the displacement against
/// {x^2, x^3, x^4, x^5} on 12 log-spaced small initial conditions.
pub fn hopf_coefficients_fitted(
    fam: &CoefficientFamily,
    opts: &IntegratorOptions,
) -> Result<HopfCoefficients, CycleError> {
    // Shrink the sample window until every point integrates and stays small.
    let mut x_hi = 0.08;
    'outer: loop {
        for k in 0..4 {
            let x = x_hi / (1 << k) as f64;
            match displacement(fam, x, opts)? {
                Some(d) if d.abs() < 0.5 * x => {}
                _ => {
                    x_hi *= 0.5;
                    if x_hi < 1e-6 {
                        break 'outer;
                    }
                    continue 'outer;
                }
            }
        }
        break;
    }
    let n = 12;
    let x_lo = x_hi / 16.0;
    let span = (x_hi / x_lo).ln();
    // Weighted fit: divide the displacement by x^2 and fit {1, x, x^2, x^3}.
    let mut ata = [[0.0f64; 4]; 4];
    let mut atb = [0.0f64; 4];
    for i in 0..n {
        let x = x_lo * (span * i as f64 / (n - 1) as f64).exp();
        let Some(d) = displacement(fam, x, opts)? else {
            continue;
        };
        let y = d / (x * x);
        let row = [1.0, x, x * x, x * x * x];
        for r in 0..4 {
            for c in 0..4 {
                ata[r][c] += row[r] * row[c];
            }
            atb[r] += row[r] * y;
        }
    }
    let sol = solve4(ata, atb);
    Ok(HopfCoefficients {
        c2: sol[0],
        c3: sol[1],
        c4: sol[2],
    })
}

/// Gaussian elimination with partial pivoting for the 4x4 normal equations.
fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> [f64; 4] {
    for col in 0..4 {
        let piv = (col..4)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("nonempty");
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..4 {
            let m = a[row][col] / a[col][col];
            for c in col..4 {
                a[row][c] -= m * a[col][c];
            }
            b[row] -= m * b[col];
        }
    }
    let mut x = [0.0f64; 4];
    for row in (0..4).rev() {
        let mut acc = b[row];
        for c in row + 1..4 {
            acc -= a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    x
}

/// The monotone parameter a family template exposes for Lambda-curve work.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonotoneParam {
    /// lambda = -t_A for the quadratic family (F_lambda = t x^3 > 0).
    NegTA,
    /// lambda = -t_B for the quadratic family.
    NegTB,
    /// lambda = a0 for the trigonometric family.
    A0,
    /// lambda = b0 for the trigonometric family.
    B0,
}

/// A coefficient family with one declared monotone parameter.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyTemplate {
    pub base: CoefficientFamily,
    pub param: MonotoneParam,
}

impl FamilyTemplate {
    pub fn instantiate(&self, lambda: f64) -> CoefficientFamily {
        match (&self.base, self.param) {
            (CoefficientFamily::QuadPoly { t_b, .. }, MonotoneParam::NegTA) => {
                CoefficientFamily::QuadPoly {
                    t_a: crate::realroots::rat_from_f64(-lambda),
                    t_b: t_b.clone(),
                }
            }
            (CoefficientFamily::QuadPoly { t_a, .. }, MonotoneParam::NegTB) => {
                CoefficientFamily::QuadPoly {
                    t_a: t_a.clone(),
                    t_b: crate::realroots::rat_from_f64(-lambda),
                }
            }
            (CoefficientFamily::LinTrig { b0, b1, b2, .. }, MonotoneParam::A0) => {
                CoefficientFamily::LinTrig {
                    a0: lambda,
                    b0: *b0,
                    b1: *b1,
                    b2: *b2,
                }
            }
            (CoefficientFamily::LinTrig { a0, b1, b2, .. }, MonotoneParam::B0) => {
                CoefficientFamily::LinTrig {
                    a0: *a0,
                    b0: lambda,
                    b1: *b1,
                    b2: *b2,
                }
            }
            _ => panic!("monotone parameter does not apply to this family kind"),
        }
    }
}

/// One sample of the Lambda-curve: `lambda` is `None` when `x` lies outside
/// the curve's domain (no parameter in range closes the solution).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LambdaSample {
    pub x: f64,
    pub lambda: Option<f64>,
}

/// Solve u(T, x, lambda) = x for lambda on each grid point by monotone
/// bisection over `lambda_range`.
pub fn lambda_curve(
    template: &FamilyTemplate,
    lambda_range: (f64, f64),
    x_grid: &[f64],
    opts: &IntegratorOptions,
) -> Result<Vec<LambdaSample>, CycleError> {
    let (llo, lhi) = lambda_range;
    let mut out = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        // Displacement in lambda; blow-up counts as positive displacement
        // (the solution has escaped upward, consistent with monotonicity).
        let g = |lambda: f64| -> Result<f64, FlowError> {
            let fam = template.instantiate(lambda);
            let r = integrate_with_variations(&fam, x, opts)?;
            Ok(match r.status {
                FlowStatus::Completed => r.u_t - x,
                FlowStatus::BlowUp { .. } => f64::INFINITY,
            })
        };
        let glo = g(llo)?;
        let ghi = g(lhi)?;
        if glo > 0.0 && ghi < 0.0 {
            return Err(CycleError::MonotonicityViolated(x));
        }
        if glo.signum() == ghi.signum() {
            out.push(LambdaSample { x, lambda: None });
            continue;
        }
        let (mut lo, mut hi) = (llo, lhi);
        while hi - lo > 1e-10 {
            let mid = 0.5 * (lo + hi);
            if g(mid)? < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(LambdaSample {
            x,
            lambda: Some(0.5 * (lo + hi)),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::bounded_supremum;
    use crate::realroots::rat;

    fn quad23() -> CoefficientFamily {
        CoefficientFamily::quad_poly(rat(2, 3), rat(1, 3))
    }

    #[test]
    fn hopf_exact_quad_closed_forms() {
        // c2 = (3 t_B - 1)/6 and c3 = int A + (int B)^2, exact rationals.
        for (i, j) in [(1i64, 2i64), (1, 3), (2, 5), (3, 7)] {
            let t_b = rat(i, 4);
            let t_a = rat(j, 8);
            let a = CoefficientFamily::quad_poly(t_a.clone(), t_b.clone());
            let (c2, c3, _) = hopf_exact(&a.a_poly().unwrap(), &a.b_poly().unwrap());
            let c2_expect = (rat(3, 1) * &t_b - rat(1, 1)) / rat(6, 1);
            assert_eq!(c2, c2_expect);
            let int_a = (rat(2, 1) - rat(3, 1) * &t_a) / rat(6, 1);
            assert_eq!(c3, &int_a + &(&c2_expect * &c2_expect));
        }
    }

    #[test]
    fn hopf_exact_at_bifurcation_point() {
        let fam = quad23();
        let (c2, c3, c4) = hopf_exact(&fam.a_poly().unwrap(), &fam.b_poly().unwrap());
        assert_eq!(c2, rat(0, 1));
        assert_eq!(c3, rat(0, 1));
        assert_eq!(c4, rat(-1, 540));
    }

    #[test]
    fn hopf_quadrature_matches_exact() {
        let fam = CoefficientFamily::quad_poly(rat(7, 10), rat(1, 5));
        let exact = hopf_coefficients(&fam);
        // Force the quadrature path through a LinTrig-free shim: compare the
        // RK4 chain against the rational result on the same family.
        let quad = {
            let f = fam.clone();
            super::hopf_by_quadrature(&f)
        };
        assert!((exact.c2 - quad.c2).abs() < 1e-12);
        assert!((exact.c3 - quad.c3).abs() < 1e-12);
        assert!((exact.c4 - quad.c4).abs() < 1e-12);
    }

    #[test]
    fn hopf_lin_trig_printed_forms() {
        use std::f64::consts::PI;
        let (a0, b0, b1, b2) = (0.1, -0.05, 0.3, 1.0);
        let fam = CoefficientFamily::lin_trig(a0, b0, b1, b2);
        let h = hopf_coefficients(&fam);
        assert!((h.c2 - 2.0 * b0 * PI).abs() < 1e-9, "c2 = {}", h.c2);
        assert!(
            (h.c3 - (2.0 * a0 * PI + 4.0 * b0 * b0 * PI * PI)).abs() < 1e-9,
            "c3 = {}",
            h.c3
        );
        let c4_expect = PI
            * (3.0 * a0 * b1 - b2 + 8.0 * b0.powi(3) * PI * PI + 2.0 * b0 * (1.0 + 5.0 * a0 * PI));
        assert!((h.c4 - c4_expect).abs() < 1e-8, "c4 = {}", h.c4);
    }

    #[test]
    fn fitted_matches_exact_at_bifurcation() {
        let fam = quad23();
        let opts = IntegratorOptions::default();
        let h = hopf_coefficients_fitted(&fam, &opts).unwrap();
        assert!(h.c2.abs() < 1e-8, "c2 = {}", h.c2);
        assert!(h.c3.abs() < 1e-8, "c3 = {}", h.c3);
        assert!(
            (h.c4 + 1.0 / 540.0).abs() < 0.01 / 540.0,
            "c4 = {} vs -1/540",
            h.c4
        );
    }

    #[test]
    fn no_cycles_for_negative_trig_parameters() {
        // a0, b0 < 0: no positive limit cycles.
        let fam = CoefficientFamily::lin_trig(-0.1, -0.1, 0.0, 1.0);
        let opts = IntegratorOptions::default();
        let x_max = bounded_supremum(&fam, &opts)
            .finite()
            .map_or(10.0, |x| x * 0.999);
        let found = find_closed_solutions(&fam, x_max, 64, &opts).unwrap();
        assert!(found.cycles.is_empty(), "{:?}", found.cycles);
    }

    #[test]
    fn two_cycles_near_double_hopf() {
        // Just below (t_A, t_B) = (2/3, 1/3) two cycles bifurcate from 0.
        let fam = CoefficientFamily::quad_poly_f64(2.0 / 3.0 - 0.02, 1.0 / 3.0 - 0.02);
        let opts = IntegratorOptions::default();
        let x_max = bounded_supremum(&fam, &opts).finite().unwrap() * 0.999;
        let found = find_closed_solutions(&fam, x_max, 512, &opts).unwrap();
        assert_eq!(found.cycles.len(), 2, "{:?}", found.cycles);
        let mult: Vec<f64> = found.cycles.iter().map(|c| c.multiplier).collect();
        // Alternating stability around the multiplier 1.
        assert!(
            (mult[0] - 1.0) * (mult[1] - 1.0) < 0.0,
            "multipliers {mult:?}"
        );
    }

    #[test]
    fn at_most_one_cycle_outside_unit_interval() {
        let fam = CoefficientFamily::quad_poly_f64(1.2, 0.5);
        let opts = IntegratorOptions::default();
        let x_max = bounded_supremum(&fam, &opts)
            .finite()
            .map_or(10.0, |x| x * 0.999);
        let found = find_closed_solutions(&fam, x_max, 128, &opts).unwrap();
        assert!(found.cycles.len() <= 1, "{:?}", found.cycles);
    }

    #[test]
    fn lambda_curve_self_consistency() {
        let fam = CoefficientFamily::quad_poly_f64(2.0 / 3.0 - 0.02, 1.0 / 3.0 - 0.02);
        let opts = IntegratorOptions::default();
        let x_max = bounded_supremum(&fam, &opts).finite().unwrap() * 0.999;
        let found = find_closed_solutions(&fam, x_max, 256, &opts).unwrap();
        assert!(!found.cycles.is_empty());
        let template = FamilyTemplate {
            base: fam.clone(),
            param: MonotoneParam::NegTA,
        };
        let lambda0 = -(2.0 / 3.0 - 0.02);
        let xs: Vec<f64> = found.cycles.iter().map(|c| c.x_star).collect();
        let samples = lambda_curve(&template, (-0.99, -0.34), &xs, &opts).unwrap();
        for s in &samples {
            let l = s.lambda.expect("fixed point must be on the curve");
            assert!((l - lambda0).abs() < 1e-8, "Lambda({}) = {l} vs {lambda0}", s.x);
        }
    }

    #[test]
    fn lambda_slope_sign_matches_one_minus_multiplier() {
        let base = CoefficientFamily::quad_poly_f64(0.6, 0.3);
        let template = FamilyTemplate {
            base,
            param: MonotoneParam::NegTA,
        };
        let opts = IntegratorOptions::default();
        let xs = [0.35_f64, 0.4, 0.45];
        let samples = lambda_curve(&template, (-0.99, -0.31), &xs, &opts).unwrap();
        let dx = 1e-4;
        for s in samples.iter().filter(|s| s.lambda.is_some()) {
            let l = s.lambda.unwrap();
            let fam = template.instantiate(l);
            let mult = integrate_with_variations(&fam, s.x, &opts).unwrap().ux_t;
            let near = lambda_curve(&template, (-0.99, -0.31), &[s.x - dx, s.x + dx], &opts)
                .unwrap();
            let (Some(lm), Some(lp)) = (near[0].lambda, near[1].lambda) else {
                continue;
            };
            let slope = (lp - lm) / (2.0 * dx);
            if (1.0 - mult).abs() > 1e-3 {
                assert_eq!(slope.signum(), (1.0 - mult).signum(), "x = {}", s.x);
            }
        }
    }

    #[test]
    fn grid_too_coarse_rejected() {
        let fam = quad23();
        let err = find_closed_solutions(&fam, 1.0, 8, &IntegratorOptions::default());
        assert!(matches!(err, Err(CycleError::GridTooCoarse(8))));
    }
}
