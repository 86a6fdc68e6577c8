//! Semistability machinery: a-priori certificates for the zero-count
//! condition on 2 A u + B (through the certificate polynomial P) and for
//! the sign-invariance condition on v, plus per-cycle direct verification
//! through the alpha/beta construction and the sign of the integral of F G.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelmodel::{
    check_c1, derived_functions, perturbed_interval, wronskian4_poly, CoefficientFamily,
    ZeroStructure,
};
use crate::cycles::CycleRecord;
use crate::flow::{FlowError, IntegratorOptions, Trajectory, integrate_with_variations};
use crate::realroots::{
    isolate_real_roots, rat_from_f64, refine_root, sturm_count, rat, rat_to_f64, Rat, RootError,
};

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("interleaving condition fails: {0}")]
    C1Violated(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("alpha/beta construction failed: {0}")]
    ConstructionFailed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountMethod {
    Exact,
    Numeric,
}

/// Zero counts of P on J1 = (0, t_B1) and J2 = (t_A, t_B2).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct C2Report {
    pub verdict: Verdict,
    pub p_zero_count_j1: usize,
    pub p_zero_count_j2: usize,
    pub method: CountMethod,
    pub warnings: Vec<String>,
}

/// Sign analysis of v on the boundary of the strip and at the zeros of Q.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct C3Report {
    pub verdict: Verdict,
    /// v(t, 0) < 0 throughout [0, T].
    pub v_t0_negative: bool,
    /// v(0, x) < 0 for all x >= 0.
    pub v_start_negative: bool,
    /// v(T, x) < 0 for all x >= 0.
    pub v_end_negative: bool,
    pub q_roots: Vec<f64>,
    pub per_root_positive_solutions: Vec<Vec<f64>>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub c1: ZeroStructure,
    pub c2: C2Report,
    pub c3: C3Report,
    pub notes: Vec<String>,
}

fn require_c1(fam: &CoefficientFamily) -> Result<ZeroStructure, CriteriaError> {
    let zs = check_c1(fam);
    if !zs.verdict {
        return Err(CriteriaError::C1Violated(
            zs.diagnostic.clone().unwrap_or_else(|| "unknown".into()),
        ));
    }
    Ok(zs)
}

/// Count sign changes of `f` on (lo, hi) by uniform sampling, doubling the
/// resolution until two consecutive counts agree.
fn guarded_sign_changes(
    f: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    warnings: &mut Vec<String>,
) -> usize {
    let count_at = |n: usize| -> usize {
        let mut count = 0;
        let mut prev = f(lo + (hi - lo) * 0.5 / n as f64);
        for i in 1..n {
            let t = lo + (hi - lo) * (i as f64 + 0.5) / n as f64;
            let cur = f(t);
            if prev * cur < 0.0 {
                count += 1;
            }
            prev = cur;
        }
        count
    };
    let mut n = 1024;
    let mut c = count_at(n);
    loop {
        n *= 4;
        let c2 = count_at(n);
        if c2 == c {
            return c;
        }
        c = c2;
        if n >= 1 << 20 {
            warnings.push(format!(
                "sign-change count on ({lo}, {hi}) did not stabilize; reporting {c}"
            ));
            return c;
        }
    }
}

/// Certificate for the two-zeros condition: P has at most one zero in each
/// of J1 = (0, t_B1) and J2 = (t_A, t_B2). Exact Sturm counts for the
/// quadratic family; guarded numeric counts plus the q-test for the
/// trigonometric one.
pub fn certify_c2(fam: &CoefficientFamily) -> Result<C2Report, CriteriaError> {
    let zs = require_c1(fam)?;
    let (t_b1, t_a, t_b2) = (
        zs.t_b1.expect("verdict true"),
        zs.t_a.expect("verdict true"),
        zs.t_b2.expect("verdict true"),
    );
    let df = derived_functions(fam);
    let mut warnings = vec![];

    if let Some(p) = &df.p_poly {
        let eps = rat(1, 1_000_000_000_000);
        let mut count_on = |lo: &Rat, hi: &Rat| -> Result<usize, CriteriaError> {
            match perturbed_interval(p, lo, hi, &eps) {
                Some(iv) => Ok(sturm_count(p, &iv)?),
                None => {
                    warnings.push("interval collapsed under endpoint perturbation".into());
                    Ok(0)
                }
            }
        };
        let (ta_r, tb1_r, tb2_r) = (
            rat_from_f64(t_a),
            rat_from_f64(t_b1),
            rat_from_f64(t_b2),
        );
        let j1 = count_on(&rat(0, 1), &tb1_r)?;
        let j2 = count_on(&ta_r, &tb2_r)?;
        let verdict = if j1 <= 1 && j2 <= 1 {
            Verdict::True
        } else {
            Verdict::False
        };
        return Ok(C2Report {
            verdict,
            p_zero_count_j1: j1,
            p_zero_count_j2: j2,
            method: CountMethod::Exact,
            warnings,
        });
    }

    // Trigonometric route: numeric counts plus the sufficient q / b2 test.
    let f = |t: f64| df.p(t);
    let j1 = guarded_sign_changes(&f, 0.0, t_b1, &mut warnings);
    let j2 = guarded_sign_changes(&f, t_a, t_b2, &mut warnings);
    let verdict = match fam {
        CoefficientFamily::LinTrig { b1, b2, .. } if *b2 > 0.0 => {
            let region = crate::trig::q_and_region(*b1, *b2)
                .map(|r| r.region)
                .unwrap_or(crate::trig::Region::Other);
            match region {
                crate::trig::Region::QNegative | crate::trig::Region::B2Large => Verdict::True,
                // The q-test is sufficient, not necessary.
                crate::trig::Region::Other => Verdict::Unknown,
            }
        }
        _ => Verdict::Unknown,
    };
    Ok(C2Report {
        verdict,
        p_zero_count_j1: j1,
        p_zero_count_j2: j2,
        method: CountMethod::Numeric,
        warnings,
    })
}

/// True when q2 x^2 + q1 x + q0 < 0 for every x >= 0.
fn quadratic_negative_for_nonneg(q2: f64, q1: f64, q0: f64) -> bool {
    let tol = 1e-13;
    if q0 >= 0.0 {
        return false;
    }
    if q2.abs() < tol {
        return q1 <= tol;
    }
    if q2 > 0.0 {
        return false;
    }
    // Opens downward with a negative value at 0: positive only between the
    // real roots, which must then avoid x > 0.
    let disc = q1 * q1 - 4.0 * q2 * q0;
    if disc <= 0.0 {
        return true;
    }
    let r_hi = (-q1 - disc.sqrt()) / (2.0 * q2);
    r_hi <= 0.0
}

/// Positive real roots of q2 x^2 + q1 x + q0.
fn positive_quadratic_roots(q2: f64, q1: f64, q0: f64) -> Vec<f64> {
    let tol = 1e-13;
    let mut out = vec![];
    if q2.abs() < tol {
        if q1.abs() >= tol {
            let r = -q0 / q1;
            if r > 0.0 {
                out.push(r);
            }
        }
        return out;
    }
    let disc = q1 * q1 - 4.0 * q2 * q0;
    if disc < 0.0 {
        return out;
    }
    let s = disc.sqrt();
    for r in [(-q1 - s) / (2.0 * q2), (-q1 + s) / (2.0 * q2)] {
        if r > 0.0 {
            out.push(r);
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    out
}

/// Roots of a scalar function on (lo, hi) by dense sampling and bisection.
fn numeric_roots(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut out = vec![];
    let mut prev_t = lo + (hi - lo) * 1e-9;
    let mut prev = f(prev_t);
    for i in 1..=n {
        let t = lo + (hi - lo) * (i as f64 / n as f64) * (1.0 - 1e-9);
        let cur = f(t);
        if prev * cur < 0.0 {
            let (mut a, mut b) = (prev_t, t);
            let mut fa = prev;
            while b - a > 1e-13 * hi.max(1.0) {
                let m = 0.5 * (a + b);
                let fm = f(m);
                if fa * fm <= 0.0 {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            out.push(0.5 * (a + b));
        }
        prev_t = t;
        prev = cur;
    }
    out
}

/// Certificate for sign-invariance of v: v(t, 0) < 0 on [0, T], the
/// boundary quadratics in x stay negative for x >= 0, and no zero of Q
/// admits a positive root of v(t, .).
pub fn certify_c3(fam: &CoefficientFamily) -> Result<C3Report, CriteriaError> {
    require_c1(fam)?;
    let df = derived_functions(fam);
    let t_end = fam.period();
    let mut warnings = vec![];

    // v(t, 0) = 4(A'B - AB'): exact Sturm count when polynomial, else a
    // guarded numeric count, plus an interior sample for the sign.
    let v_t0_negative = match wronskian4_poly(fam) {
        Some(w4) => {
            let eps = rat(1, 1_000_000_000_000);
            let interior = match perturbed_interval(&w4, &rat(0, 1), &rat(1, 1), &eps) {
                Some(iv) => sturm_count(&w4, &iv)? == 0,
                None => false,
            };
            interior
                && rat_to_f64(&w4.eval(&rat(1, 2))) < 0.0
                && rat_to_f64(&w4.eval(&rat(0, 1))) < 0.0
                && rat_to_f64(&w4.eval(&rat(1, 1))) < 0.0
        }
        None => {
            let f = |t: f64| df.v(t, 0.0);
            let changes = guarded_sign_changes(&f, 0.0, t_end, &mut warnings);
            changes == 0 && f(0.5 * t_end) < 0.0 && f(1e-9) < 0.0
        }
    };

    // Boundary quadratics v(t, x) = 4A^2B x^2 + 4AB^2 x + v(t, 0).
    let boundary = |t: f64| -> bool {
        let (a, b) = (fam.a(t), fam.b(t));
        quadratic_negative_for_nonneg(4.0 * a * a * b, 4.0 * a * b * b, df.v(t, 0.0))
    };
    let v_start_negative = boundary(0.0);
    let v_end_negative = boundary(t_end);

    // Zeros of Q in (0, T) and the positive solutions of v(t, x) = 0 there.
    let q_roots: Vec<f64> = match &df.q_poly {
        Some(q) => {
            let mut roots = vec![];
            for iv in isolate_real_roots(q) {
                let refined = refine_root(q, &iv, &rat(1, 1_000_000_000_000));
                let r = refined.mid_f64();
                if r > 0.0 && r < t_end {
                    roots.push(r);
                }
            }
            roots
        }
        None => numeric_roots(&|t| df.q(t), 0.0, t_end, 8192),
    };

    let mut per_root_positive_solutions = vec![];
    let mut any_positive = false;
    for &t in &q_roots {
        let (a, b) = (fam.a(t), fam.b(t));
        let roots = if a.abs() < 1e-11 {
            // v(t, x) is constant in x here; nonzero means no root at all.
            if df.v(t, 0.0).abs() < 1e-9 {
                warnings.push(format!("v(t, .) degenerates to ~0 at Q-root t = {t}"));
            }
            vec![]
        } else {
            positive_quadratic_roots(4.0 * a * a * b, 4.0 * a * b * b, df.v(t, 0.0))
        };
        any_positive |= !roots.is_empty();
        per_root_positive_solutions.push(roots);
    }

    let verdict = if v_t0_negative && v_start_negative && v_end_negative && !any_positive {
        Verdict::True
    } else {
        Verdict::False
    };
    Ok(C3Report {
        verdict,
        v_t0_negative,
        v_start_negative,
        v_end_negative,
        q_roots,
        per_root_positive_solutions,
        warnings,
    })
}

pub fn criteria_report(fam: &CoefficientFamily) -> Result<CriteriaReport, CriteriaError> {
    let c1 = require_c1(fam)?;
    let c2 = certify_c2(fam)?;
    let c3 = certify_c3(fam)?;
    Ok(CriteriaReport {
        c1,
        c2,
        c3,
        notes: vec![],
    })
}

/// One sample along a closed solution: alpha is undefined at the two poles
/// of 2 A u + B.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AlphaBetaSample {
    pub t: f64,
    pub u: f64,
    pub alpha: Option<f64>,
    pub beta: f64,
}

/// Dense diagnostics along a near-singular closed solution.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlphaBetaCurves {
    pub t1: f64,
    pub t2: f64,
    pub samples: Vec<AlphaBetaSample>,
    /// Exactly one zero of 2 A u + B on each side of the interior zero of A.
    pub c2_direct: bool,
    /// v(t, u(t)) keeps the sign of A'(0) B(0) along the whole solution.
    pub c3_direct: bool,
    #[serde(skip)]
    trajectory: Option<Trajectory>,
}

impl AlphaBetaCurves {
    pub fn trajectory(&self) -> &Trajectory {
        self.trajectory.as_ref().expect("kept by constructor")
    }
}

fn w_of(fam: &CoefficientFamily, traj: &Trajectory, t: f64) -> f64 {
    let u = traj.sample(t)[0];
    2.0 * fam.a(t) * u + fam.b(t)
}

fn beta_of(traj: &Trajectory, t: f64) -> f64 {
    let s = traj.sample(t);
    s[1] / s[0]
}

fn alpha_of(fam: &CoefficientFamily, traj: &Trajectory, t: f64) -> f64 {
    let u = traj.sample(t)[0];
    let au2 = 2.0 * fam.a(t) * u;
    2.0 + au2 / (au2 + fam.b(t))
}

/// Bisect `f` for a sign change on (lo, hi); endpoints must straddle.
fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    let mut flo = f(lo);
    if flo * f(hi) > 0.0 {
        return None;
    }
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if flo * fm > 0.0 {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Integrate the closed solution with dense output and extract alpha, beta,
/// and the two zeros t1 < t2 of 2 A u + B.
pub fn alpha_beta_diagnostics(
    fam: &CoefficientFamily,
    cycle: &CycleRecord,
    opts: &IntegratorOptions,
) -> Result<AlphaBetaCurves, CriteriaError> {
    let zs = require_c1(fam)?;
    let t_a = zs.t_a.expect("verdict true");
    let t_end = fam.period();
    let dense_opts = opts.clone().with_trajectory();
    let result = integrate_with_variations(fam, cycle.x_star, &dense_opts)?;
    if !result.completed() {
        return Err(CriteriaError::ConstructionFailed(
            "closed solution escaped during re-integration".into(),
        ));
    }
    let traj = result.trajectory.expect("requested");

    // Zeros of w = 2 A u + B by scan plus bisection.
    let w = |t: f64| w_of(fam, &traj, t);
    let mut zeros = vec![];
    let n = 4096;
    let mut prev = w(0.0);
    for i in 1..=n {
        let t = t_end * i as f64 / n as f64;
        let cur = w(t);
        if prev * cur < 0.0 {
            if let Some(z) = bisect(&w, t_end * (i - 1) as f64 / n as f64, t) {
                zeros.push(z);
            }
        }
        prev = cur;
    }
    let left: Vec<f64> = zeros.iter().copied().filter(|&z| z <= t_a).collect();
    let right: Vec<f64> = zeros.iter().copied().filter(|&z| z > t_a).collect();
    let c2_direct = left.len() == 1 && right.len() == 1;
    if left.is_empty() || right.is_empty() {
        return Err(CriteriaError::ConstructionFailed(format!(
            "2Au+B has zeros {zeros:?}; need one on each side of t_A = {t_a}"
        )));
    }
    let t1 = left[0];
    let t2 = right[right.len() - 1];

    let df = derived_functions(fam);
    let orientation = (fam.a_prime(0.0) * fam.b(0.0)).signum();
    let mut c3_direct = true;
    let m = 2048;
    let mut samples = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let t = t_end * i as f64 / m as f64;
        let u = traj.sample(t)[0];
        let wv = w(t);
        let alpha = if wv.abs() > 1e-9 {
            Some(alpha_of(fam, &traj, t))
        } else {
            None
        };
        let beta = beta_of(&traj, t);
        let vval = df.v(t, u);
        if vval.signum() == -orientation && vval.abs() > 1e-10 {
            c3_direct = false;
        }
        samples.push(AlphaBetaSample { t, u, alpha, beta });
    }

    Ok(AlphaBetaCurves {
        t1,
        t2,
        samples,
        c2_direct,
        c3_direct,
        trajectory: Some(traj),
    })
}

/// Adaptive Simpson quadrature with absolute tolerance.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, fa, m, fm, flm);
        let right = simpson(m, fm, b, fb, frm);
        if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        recurse(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1)
    }
    let fa = f(lo);
    let fb = f(hi);
    let fm = f(0.5 * (lo + hi));
    let whole = simpson(lo, fa, hi, fb, fm);
    recurse(f, lo, fa, hi, fb, fm, whole, tol, 30)
}

const QUADRATURE_TOL: f64 = 1e-10;

/// The verdict of the direct semistability test on one cycle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SemistabilityVerdict {
    pub cycle: CycleRecord,
    pub t1: f64,
    pub t2: f64,
    pub c2_direct: bool,
    pub c3_direct: bool,
    /// The constant pair (alpha, beta) used in the integrand F G.
    pub alpha_beta: (f64, f64),
    /// Sign of the integral of F G; 0 means indeterminate.
    pub integral_sign: i8,
    pub uxx_sign: i8,
    pub consistent: bool,
}

/// Constant pair construction: match the interior sign changes of
/// G(t, beta) = u_x - beta u with those of F(t, alpha), then take the sign
/// of the integral of F G and compare with the second variation.
pub fn semistability_verdict(
    fam: &CoefficientFamily,
    cycle: &CycleRecord,
    opts: &IntegratorOptions,
) -> Result<SemistabilityVerdict, CriteriaError> {
    let curves = alpha_beta_diagnostics(fam, cycle, opts)?;
    let traj = curves.trajectory();
    let t_end = fam.period();
    let (t1, t2) = (curves.t1, curves.t2);

    let beta = |t: f64| beta_of(traj, t);
    let alpha = |t: f64| alpha_of(fam, traj, t);
    let beta0 = 1.0 / cycle.x_star;
    let beta1 = beta(t1);
    let beta2 = beta(t2);

    // t0: the interior return of beta to its boundary value.
    let t0 = bisect(&|t| beta(t) - beta0, t1, t2).ok_or_else(|| {
        CriteriaError::ConstructionFailed("beta does not return to beta(0) in (t1, t2)".into())
    })?;
    let alpha_t0 = alpha(t0);
    let alpha_end = alpha(t_end);

    let (alpha_bar, beta_bar) = if alpha_t0 >= 2.0 && alpha_t0 <= alpha_end {
        (alpha_t0, beta0)
    } else {
        // Bisect d(b) = alpha(T1(b)) - alpha(T2(b)) over the admissible
        // beta bracket until the two sign-change locations share a level.
        let crossings: Box<dyn Fn(f64) -> Option<(f64, f64)>> = if alpha_t0 < 2.0 {
            Box::new(|b: f64| {
                let c1 = bisect(&|t| beta(t) - b, 1e-12, t1)?;
                let c2 = bisect(&|t| beta(t) - b, t1, t0)?;
                Some((c1, c2))
            })
        } else {
            Box::new(|b: f64| {
                let c1 = bisect(&|t| beta(t) - b, t0, t2)?;
                let c2 = bisect(&|t| beta(t) - b, t2, t_end)?;
                Some((c1, c2))
            })
        };
        // Anchor the bracket at the sampled endpoint values: on a cycle that
        // is closed only to integrator accuracy, beta(T) can sit a residual
        // displacement away from beta(0), and the crossing on the last
        // subinterval disappears if the bracket starts past it.
        let (mut blo, mut bhi) = if alpha_t0 < 2.0 {
            let start = beta(1e-12).max(beta(t0));
            let span = beta1 - start;
            (start + 1e-9 * span, beta1 - 1e-9 * span)
        } else {
            let start = beta(t_end).min(beta(t0));
            let span = start - beta2;
            (start - 1e-9 * span, beta2 + 1e-9 * span)
        };
        let d = |b: f64| -> Option<f64> {
            let (c1, c2) = crossings(b)?;
            Some(alpha(c1) - alpha(c2))
        };
        let dlo = d(blo).ok_or_else(|| {
            CriteriaError::ConstructionFailed("no crossing bracket at beta range start".into())
        })?;
        let dhi = d(bhi).ok_or_else(|| {
            CriteriaError::ConstructionFailed("no crossing bracket at beta range end".into())
        })?;
        if dlo * dhi > 0.0 {
            return Err(CriteriaError::ConstructionFailed(format!(
                "d(beta) does not change sign on the bracket: d = ({dlo:.3e}, {dhi:.3e})"
            )));
        }
        let mut dlo = dlo;
        for _ in 0..60 {
            let mid = 0.5 * (blo + bhi);
            let dm = d(mid).ok_or_else(|| {
                CriteriaError::ConstructionFailed("lost the crossing bracket mid-bisection".into())
            })?;
            if dlo * dm > 0.0 {
                blo = mid;
                dlo = dm;
            } else {
                bhi = mid;
            }
        }
        let b_bar = 0.5 * (blo + bhi);
        let (c1, _) = crossings(b_bar).ok_or_else(|| {
            CriteriaError::ConstructionFailed("lost the crossing at the fixed point".into())
        })?;
        (alpha(c1), b_bar)
    };

    let integrand = |t: f64| {
        let s = traj.sample(t);
        let (u, ux) = (s[0], s[1]);
        let f = (2.0 - alpha_bar) * fam.b(t) + 2.0 * (3.0 - alpha_bar) * fam.a(t) * u;
        let g = ux - beta_bar * u;
        f * g
    };
    let integral = adaptive_simpson(&integrand, 0.0, t_end, QUADRATURE_TOL);
    let integral_sign = if integral.abs() <= 10.0 * QUADRATURE_TOL {
        0
    } else {
        integral.signum() as i8
    };
    let uxx_sign = cycle.uxx.signum() as i8;
    let orientation = (fam.a_prime(0.0) * fam.b(0.0)).signum() as i8;
    let consistent = integral_sign == uxx_sign && integral_sign == orientation;

    Ok(SemistabilityVerdict {
        cycle: cycle.clone(),
        t1,
        t2,
        c2_direct: curves.c2_direct,
        c3_direct: curves.c3_direct,
        alpha_beta: (alpha_bar, beta_bar),
        integral_sign,
        uxx_sign,
        consistent,
    })
}

/// Fold location for a one-parameter family: bisect the parameter where a
/// pair of closed solutions merges, returning the near-singular cycle.
/// The bisected quantity is the maximum of the displacement map over the
/// hump between the initial pair; it is monotone in the parameter and
/// scales linearly near the fold, unlike the cycle count.
pub fn fold_cycle_by_bisection(
    instantiate: &dyn Fn(f64) -> CoefficientFamily,
    mut lam_two: f64,
    mut lam_none: f64,
    opts: &IntegratorOptions,
) -> Result<(f64, CycleRecord), CriteriaError> {
    use crate::cycles::{find_closed_solutions, Classification};
    use crate::flow::bounded_supremum;

    let fam0 = instantiate(lam_two);
    let x_max = bounded_supremum(&fam0, opts)
        .finite()
        .map_or(1e6, |x| x * 0.999);
    let found = find_closed_solutions(&fam0, x_max, 512, opts)
        .map_err(|e| CriteriaError::ConstructionFailed(e.to_string()))?;
    let pair: Vec<f64> = found
        .cycles
        .iter()
        .filter(|c| c.classification != Classification::SemistableCandidate)
        .map(|c| c.x_star)
        .collect();
    if pair.len() < 2 {
        return Err(CriteriaError::ConstructionFailed(
            "expected two hyperbolic cycles at the first parameter".into(),
        ));
    }
    let (xa, xb) = (pair[0], pair[1]);

    let hump = |lam: f64| -> Result<f64, CriteriaError> {
        let fam = instantiate(lam);
        let mut best = f64::NEG_INFINITY;
        let n = 128;
        for i in 0..=n {
            let x = xa + (xb - xa) * i as f64 / n as f64;
            let r = integrate_with_variations(&fam, x, opts)?;
            let d = if r.completed() {
                r.u_t - x
            } else {
                f64::INFINITY
            };
            best = best.max(d);
        }
        Ok(best)
    };
    if hump(lam_two)? <= 0.0 || hump(lam_none)? >= 0.0 {
        return Err(CriteriaError::ConstructionFailed(
            "hump maximum does not straddle zero on the parameter bracket".into(),
        ));
    }
    while (lam_none - lam_two).abs() > 5e-9 {
        let mid = 0.5 * (lam_two + lam_none);
        if hump(mid)? > 0.0 {
            lam_two = mid;
        } else {
            lam_none = mid;
        }
    }
    // Resolve the tangency on the two-cycle side: there the multiplier
    // crosses 1 between the merging pair.
    let lam = lam_two;
    let fam = instantiate(lam);
    let g = |x: f64| -> Result<f64, CriteriaError> {
        Ok(integrate_with_variations(&fam, x, opts)?.ux_t - 1.0)
    };
    let (mut lo, mut hi) = (xa, xb);
    let mut glo = g(lo)?;
    if glo * g(hi)? > 0.0 {
        return Err(CriteriaError::ConstructionFailed(
            "multiplier does not cross 1 between the merging pair".into(),
        ));
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid)?;
        if glo * gm > 0.0 {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    let x_star = 0.5 * (lo + hi);
    let r = integrate_with_variations(&fam, x_star, opts)?;
    let cycle = CycleRecord {
        x_star,
        multiplier: r.ux_t,
        uxx: r.uxx_t,
        classification: if (r.ux_t - 1.0).abs() < crate::cycles::SEMISTABLE_BAND {
            Classification::SemistableCandidate
        } else if r.ux_t < 1.0 {
            Classification::StableHyperbolic
        } else {
            Classification::UnstableHyperbolic
        },
        refinement_width: hi - lo,
    };
    Ok((lam, cycle))
}
