//! Concrete coefficient families for the Abel equation x' = A(t)x^3 + B(t)x^2,
//! their closed-form derivatives, and the derived certificate functions
//! P, v, vdot, Q and phi.
//!
//! Two families are supported:
//! - `QuadPoly`: A(t) = t(t - t_A), B(t) = (t - t_B)(t - 1) on [0, 1], with
//!   exact rational parameters so that P and Q materialize as `RatPoly`.
//! - `LinTrig`: the canonical linear-trigonometric family
//!   A(t) = a0 - sin t - a0 cos t, B(t) = b0 + b1 sin t + b2 cos t on [0, 2pi].

use std::f64::consts::PI;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::realroots::{rat, rat_from_f64, rat_to_f64, Interval, Rat, RatPoly, Sign};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("phi has a pole at t = {0} (zero of A)")]
    PhiPole(f64),
    #[error("family does not satisfy (C1): {0}")]
    C1Violated(String),
}

/// A periodic coefficient pair (A, B) with exact closed-form derivatives.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum CoefficientFamily {
    QuadPoly { t_a: Rat, t_b: Rat },
    LinTrig { a0: f64, b0: f64, b1: f64, b2: f64 },
}

impl CoefficientFamily {
    pub fn quad_poly(t_a: Rat, t_b: Rat) -> Self {
        CoefficientFamily::QuadPoly { t_a, t_b }
    }

    pub fn quad_poly_f64(t_a: f64, t_b: f64) -> Self {
        CoefficientFamily::QuadPoly {
            t_a: rat_from_f64(t_a),
            t_b: rat_from_f64(t_b),
        }
    }

    /// Canonical linear-trigonometric family; requires b0 + b2 > 0 so that
    /// B(0) > 0 as the normalization demands.
    pub fn lin_trig(a0: f64, b0: f64, b1: f64, b2: f64) -> Self {
        CoefficientFamily::LinTrig { a0, b0, b1, b2 }
    }

    pub fn period(&self) -> f64 {
        match self {
            CoefficientFamily::QuadPoly { .. } => 1.0,
            CoefficientFamily::LinTrig { .. } => 2.0 * PI,
        }
    }

    pub fn a(&self, t: f64) -> f64 {
        match self {
            CoefficientFamily::QuadPoly { t_a, .. } => t * (t - rat_to_f64(t_a)),
            CoefficientFamily::LinTrig { a0, .. } => a0 - t.sin() - a0 * t.cos(),
        }
    }

    pub fn a_prime(&self, t: f64) -> f64 {
        match self {
            CoefficientFamily::QuadPoly { t_a, .. } => 2.0 * t - rat_to_f64(t_a),
            CoefficientFamily::LinTrig { a0, .. } => -t.cos() + a0 * t.sin(),
        }
    }

    pub fn a_second(&self, t: f64) -> f64 {
        match self {
            CoefficientFamily::QuadPoly { .. } => 2.0,
            CoefficientFamily::LinTrig { a0, .. } => t.sin() + a0 * t.cos(),
        }
    }

    pub fn b(&self, t: f64) -> f64 {
        match self {
            CoefficientFamily::QuadPoly { t_b, .. } => (t - rat_to_f64(t_b)) * (t - 1.0),
            CoefficientFamily::LinTrig { b0, b1, b2, .. } => b0 + b1 * t.sin() + b2 * t.cos(),
        }
    }

    pub fn b_prime(&self, t: f64) -> f64 {
        match self {
            CoefficientFamily::QuadPoly { t_b, .. } => 2.0 * t - rat_to_f64(t_b) - 1.0,
            CoefficientFamily::LinTrig { b1, b2, .. } => b1 * t.cos() - b2 * t.sin(),
        }
    }

    pub fn b_second(&self, t: f64) -> f64 {
        match self {
            CoefficientFamily::QuadPoly { .. } => 2.0,
            CoefficientFamily::LinTrig { b1, b2, .. } => -b1 * t.sin() - b2 * t.cos(),
        }
    }

    /// Right-hand side of the Abel equation.
    pub fn rhs(&self, t: f64, x: f64) -> f64 {
        let x2 = x * x;
        self.a(t) * x2 * x + self.b(t) * x2
    }

    /// Exact polynomial form of A for the quadratic family.
    pub fn a_poly(&self) -> Option<RatPoly> {
        match self {
            CoefficientFamily::QuadPoly { t_a, .. } => Some(RatPoly::new(vec![
                Rat::zero(),
                -t_a.clone(),
                Rat::one(),
            ])),
            CoefficientFamily::LinTrig { .. } => None,
        }
    }

    /// Exact polynomial form of B for the quadratic family.
    pub fn b_poly(&self) -> Option<RatPoly> {
        match self {
            CoefficientFamily::QuadPoly { t_b, .. } => Some(RatPoly::new(vec![
                t_b.clone(),
                -(t_b + Rat::one()),
                Rat::one(),
            ])),
            CoefficientFamily::LinTrig { .. } => None,
        }
    }
}

/// The certificate functions derived from a family:
/// P = 4(BA' - B'A) - B^3, v = B(2Ax + B)^2 + P, vdot the derivative of v
/// along the flow, Q = B(AB'' - BA'') + 3B'(BA' - AB'), and phi = -B/(2A).
pub struct DerivedFunctions {
    fam: CoefficientFamily,
    /// Degree-6 polynomial form of P (quadratic family only).
    pub p_poly: Option<RatPoly>,
    /// Degree-3 polynomial form of Q (quadratic family only).
    pub q_poly: Option<RatPoly>,
}

pub fn derived_functions(fam: &CoefficientFamily) -> DerivedFunctions {
    let (p_poly, q_poly) = match (fam.a_poly(), fam.b_poly()) {
        (Some(a), Some(b)) => {
            let ap = a.derivative();
            let bp = b.derivative();
            let app = ap.derivative();
            let bpp = bp.derivative();
            let wron = &(&b * &ap) - &(&bp * &a);
            let b3 = &(&b * &b) * &b;
            let p = &wron.scale(&rat(4, 1)) - &b3;
            let q1 = &b * &(&(&a * &bpp) - &(&b * &app));
            let q2 = &bp.scale(&rat(3, 1)) * &wron;
            let q = &q1 + &q2;
            (Some(p), Some(q))
        }
        _ => (None, None),
    };
    DerivedFunctions {
        fam: fam.clone(),
        p_poly,
        q_poly,
    }
}

impl DerivedFunctions {
    pub fn family(&self) -> &CoefficientFamily {
        &self.fam
    }

    /// P(t) = 4(B A' - B' A) - B^3.
    pub fn p(&self, t: f64) -> f64 {
        let f = &self.fam;
        4.0 * (f.b(t) * f.a_prime(t) - f.b_prime(t) * f.a(t)) - f.b(t).powi(3)
    }

    /// P'(t) = 4(B A'' - B'' A) - 3 B^2 B'.
    pub fn p_prime(&self, t: f64) -> f64 {
        let f = &self.fam;
        4.0 * (f.b(t) * f.a_second(t) - f.b_second(t) * f.a(t))
            - 3.0 * f.b(t) * f.b(t) * f.b_prime(t)
    }

    /// v(t, x) = B(t)(2A(t)x + B(t))^2 + P(t).
    pub fn v(&self, t: f64, x: f64) -> f64 {
        let f = &self.fam;
        let w = 2.0 * f.a(t) * x + f.b(t);
        f.b(t) * w * w + self.p(t)
    }

    /// Derivative of v along the flow: v_t + v_x (A x^3 + B x^2).
    pub fn vdot(&self, t: f64, x: f64) -> f64 {
        let f = &self.fam;
        let a = f.a(t);
        let b = f.b(t);
        let w = 2.0 * a * x + b;
        let v_t = f.b_prime(t) * w * w
            + 2.0 * b * w * (2.0 * f.a_prime(t) * x + f.b_prime(t))
            + self.p_prime(t);
        let v_x = 4.0 * a * b * w;
        v_t + v_x * f.rhs(t, x)
    }

    /// Q(t) = B(AB'' - BA'') + 3B'(BA' - AB').
    pub fn q(&self, t: f64) -> f64 {
        let f = &self.fam;
        f.b(t) * (f.a(t) * f.b_second(t) - f.b(t) * f.a_second(t))
            + 3.0 * f.b_prime(t) * (f.b(t) * f.a_prime(t) - f.a(t) * f.b_prime(t))
    }

    /// phi(t) = -B(t) / (2A(t)); a pole at zeros of A is an explicit signal.
    pub fn phi(&self, t: f64) -> Result<f64, ModelError> {
        let a = self.fam.a(t);
        if a.abs() < 1e-14 {
            return Err(ModelError::PhiPole(t));
        }
        Ok(-self.fam.b(t) / (2.0 * a))
    }
}

/// A located zero of A or B with its simplicity flag.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZeroPoint {
    pub location: f64,
    pub simple: bool,
}

/// Zero structure of (A, B) on [0, T] and the (C1) interleaving verdict.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZeroStructure {
    pub zeros_a: Vec<ZeroPoint>,
    pub zeros_b: Vec<ZeroPoint>,
    pub verdict: bool,
    pub t_b1: Option<f64>,
    pub t_a: Option<f64>,
    pub t_b2: Option<f64>,
    pub diagnostic: Option<String>,
}

impl ZeroStructure {
    fn fail(zeros_a: Vec<ZeroPoint>, zeros_b: Vec<ZeroPoint>, why: &str) -> Self {
        ZeroStructure {
            zeros_a,
            zeros_b,
            verdict: false,
            t_b1: None,
            t_a: None,
            t_b2: None,
            diagnostic: Some(why.to_string()),
        }
    }
}

/// Locate all zeros of A and B in [0, T], flag simplicity, and test the
/// (C1) interleaving 0 < t_B1 < t_A < t_B2 <= T.
pub fn check_c1(fam: &CoefficientFamily) -> ZeroStructure {
    match fam {
        CoefficientFamily::QuadPoly { t_a, t_b } => check_c1_quad(t_a, t_b),
        CoefficientFamily::LinTrig { a0, b0, b1, b2 } => check_c1_trig(*a0, *b0, *b1, *b2),
    }
}

fn check_c1_quad(t_a: &Rat, t_b: &Rat) -> ZeroStructure {
    let zero = Rat::zero();
    let one = Rat::one();

    // A(t) = t(t - t_A): zeros 0 and t_A; simple unless t_A = 0.
    let mut zeros_a = vec![ZeroPoint {
        location: 0.0,
        simple: !t_a.is_zero(),
    }];
    if !t_a.is_zero() && *t_a >= zero && *t_a <= one {
        zeros_a.push(ZeroPoint {
            location: rat_to_f64(t_a),
            simple: true,
        });
    }
    // B(t) = (t - t_B)(t - 1): zeros t_B and 1; coincide when t_B = 1.
    let mut zeros_b = vec![];
    if *t_b >= zero && *t_b <= one {
        zeros_b.push(ZeroPoint {
            location: rat_to_f64(t_b),
            simple: *t_b != one,
        });
    }
    zeros_b.push(ZeroPoint {
        location: 1.0,
        simple: *t_b != one,
    });

    if t_a.is_zero() {
        return ZeroStructure::fail(zeros_a, zeros_b, "A has a double zero at t = 0");
    }
    if *t_b == one {
        return ZeroStructure::fail(zeros_a, zeros_b, "B has a double zero at t = 1");
    }
    if !(*t_a > zero && *t_a < one) {
        return ZeroStructure::fail(zeros_a, zeros_b, "A has no simple zero in (0, 1)");
    }
    if !(*t_b > zero && t_b < t_a) {
        return ZeroStructure::fail(
            zeros_a,
            zeros_b,
            "zeros do not interleave as 0 < t_B1 < t_A < t_B2",
        );
    }
    ZeroStructure {
        zeros_a,
        zeros_b,
        verdict: true,
        t_b1: Some(rat_to_f64(t_b)),
        t_a: Some(rat_to_f64(t_a)),
        t_b2: Some(1.0),
        diagnostic: None,
    }
}

/// Zeros of c + r sin(t + phase) on [0, T) by closed-form inversion.
fn sinusoid_zeros(c: f64, s_coef: f64, c_coef: f64, period: f64) -> Vec<ZeroPoint> {
    // f(t) = c + s_coef sin t + c_coef cos t = c + r sin(t + phase)
    let r = s_coef.hypot(c_coef);
    if r == 0.0 {
        return vec![]; // constant; no isolated zeros (or identically zero)
    }
    let phase = c_coef.atan2(s_coef);
    let ratio = -c / r;
    if ratio.abs() > 1.0 {
        return vec![];
    }
    let base = ratio.asin();
    let mut zeros = vec![];
    // Solutions of sin(u) = ratio: u = base + 2k*pi and u = pi - base + 2k*pi.
    for u in [base, PI - base] {
        for k in -2..=2 {
            let t = u - phase + 2.0 * PI * (k as f64);
            if (-1e-12..period - 1e-12).contains(&t) {
                let t = t.max(0.0);
                // Simple iff the derivative r cos(t + phase) is nonzero.
                let simple = (ratio.abs() - 1.0).abs() > 1e-12;
                if !zeros
                    .iter()
                    .any(|z: &ZeroPoint| (z.location - t).abs() < 1e-9)
                {
                    zeros.push(ZeroPoint {
                        location: t,
                        simple,
                    });
                }
            }
        }
    }
    zeros.sort_by(|a, b| a.location.total_cmp(&b.location));
    zeros
}

fn check_c1_trig(a0: f64, b0: f64, b1: f64, b2: f64) -> ZeroStructure {
    let period = 2.0 * PI;
    // A = a0 - sin t - a0 cos t, B = b0 + b1 sin t + b2 cos t.
    let zeros_a = sinusoid_zeros(a0, -1.0, -a0, period);
    let zeros_b = sinusoid_zeros(b0, b1, b2, period);

    if zeros_a.iter().any(|z| !z.simple) || zeros_b.iter().any(|z| !z.simple) {
        return ZeroStructure::fail(zeros_a, zeros_b, "non-simple zero detected");
    }
    // Canonical form has A(0) = 0; A should have exactly one more zero t_A.
    let interior_a: Vec<f64> = zeros_a
        .iter()
        .map(|z| z.location)
        .filter(|&t| t > 1e-9)
        .collect();
    if interior_a.len() != 1 {
        return ZeroStructure::fail(zeros_a, zeros_b, "A does not have a single interior zero");
    }
    let t_a = interior_a[0];
    let b_zeros: Vec<f64> = zeros_b.iter().map(|z| z.location).collect();
    if b_zeros.len() != 2 {
        return ZeroStructure::fail(zeros_a, zeros_b, "B does not have two zeros in [0, 2pi)");
    }
    let (t_b1, t_b2) = (b_zeros[0], b_zeros[1]);
    if !(0.0 < t_b1 && t_b1 < t_a && t_a < t_b2) {
        return ZeroStructure::fail(
            zeros_a,
            zeros_b,
            "zeros do not interleave as 0 < t_B1 < t_A < t_B2",
        );
    }
    ZeroStructure {
        zeros_a,
        zeros_b,
        verdict: true,
        t_b1: Some(t_b1),
        t_a: Some(t_a),
        t_b2: Some(t_b2),
        diagnostic: None,
    }
}

/// Outcome of the known uniqueness prechecks: routes where at most one
/// positive closed solution is already guaranteed by the literature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UniquenessPrecheck {
    /// A or B keeps a constant sign on the interior of the period.
    AtMostOneBySign,
    /// Some combination alpha*A + B is sign-definite (discriminant test).
    AtMostOneByCombination,
    Inconclusive,
}

pub fn uniqueness_precheck(fam: &CoefficientFamily) -> UniquenessPrecheck {
    match fam {
        CoefficientFamily::QuadPoly { t_a, t_b } => {
            let zero = Rat::zero();
            let one = Rat::one();
            let a_sign_definite = !(*t_a > zero && *t_a < one);
            let b_sign_definite = !(*t_b > zero && *t_b < one);
            if a_sign_definite || b_sign_definite {
                return UniquenessPrecheck::AtMostOneBySign;
            }
            if combination_disc_quad(t_a, t_b) >= Rat::zero() {
                UniquenessPrecheck::AtMostOneByCombination
            } else {
                UniquenessPrecheck::Inconclusive
            }
        }
        CoefficientFamily::LinTrig { a0, b0, b1, b2 } => {
            let za = sinusoid_zeros(*a0, -1.0, -*a0, 2.0 * PI);
            let zb = sinusoid_zeros(*b0, *b1, *b2, 2.0 * PI);
            if za.len() < 2 || zb.len() < 2 {
                return UniquenessPrecheck::AtMostOneBySign;
            }
            if combination_disc_trig(*a0, *b0, *b1, *b2) >= 0.0 {
                UniquenessPrecheck::AtMostOneByCombination
            } else {
                UniquenessPrecheck::Inconclusive
            }
        }
    }
}

/// Disc over alpha of the t-discriminant of alpha*A + B for the quadratic
/// family; nonnegative iff some combination is sign-definite.
pub fn combination_disc_quad(t_a: &Rat, t_b: &Rat) -> Rat {
    // alpha*A + B = (alpha + 1) t^2 - (alpha t_A + 1 + t_B) t + t_B.
    // d(alpha) = (alpha t_A + 1 + t_B)^2 - 4 (alpha + 1) t_B, quadratic in alpha.
    let c0 = {
        let s = Rat::one() + t_b;
        &s * &s - rat(4, 1) * t_b
    };
    let c1 = rat(2, 1) * t_a * (Rat::one() + t_b) - rat(4, 1) * t_b;
    let c2 = t_a * t_a;
    let d = RatPoly::new(vec![c0, c1, c2]);
    // Divide by the positive factor 16 to match the normalized form
    // -(1 - t_A) t_B (t_A - t_B).
    crate::realroots::discriminant(&d).expect("degree two") / rat(16, 1)
}

/// Same test for the canonical trigonometric family via the tan-half-angle
/// rational forms: Abar has numerator 2(z + a0), Bbar has numerator
/// (b0+b2) z^2 - 2 b1 z + b0 - b2.
pub fn combination_disc_trig(a0: f64, b0: f64, b1: f64, b2: f64) -> f64 {
    // d(alpha) = Disc_z(2 alpha (z + a0) + (b0+b2) z^2 - 2 b1 z + b0 - b2)
    //          = (2 alpha - 2 b1)^2 - 4 (b0+b2)(2 a0 alpha + b0 - b2).
    let c2 = rat(4, 1);
    let c1 = rat_from_f64(-8.0 * b1) - rat(8, 1) * rat_from_f64((b0 + b2) * a0);
    let c0 = rat_from_f64(4.0 * b1 * b1) - rat(4, 1) * rat_from_f64((b0 + b2) * (b0 - b2));
    let d = RatPoly::new(vec![c0, c1, c2]);
    rat_to_f64(&crate::realroots::discriminant(&d).expect("degree two"))
}

/// Exact polynomial form of 4(A'B - AB') for the quadratic family
/// (which equals v(t, 0)).
pub fn wronskian4_poly(fam: &CoefficientFamily) -> Option<RatPoly> {
    let a = fam.a_poly()?;
    let b = fam.b_poly()?;
    let w = &(&a.derivative() * &b) - &(&a * &b.derivative());
    Some(w.scale(&rat(4, 1)))
}

/// Interval (lo, hi] with endpoints perturbed off roots of `p` by the given
/// rational epsilon, shrinking inward. Returns `None` if the interval closes.
pub fn perturbed_interval(p: &RatPoly, lo: &Rat, hi: &Rat, eps: &Rat) -> Option<Interval> {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    while Sign::of(&p.eval(&lo)) == Sign::Zero {
        lo += eps;
    }
    while Sign::of(&p.eval(&hi)) == Sign::Zero {
        hi -= eps;
    }
    if lo < hi {
        Some(Interval::half_open(lo, hi).expect("lo < hi"))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realroots::rat;

    fn quad23() -> CoefficientFamily {
        CoefficientFamily::quad_poly(rat(2, 3), rat(1, 3))
    }

    #[test]
    fn q_poly_instance() {
        // QuadPoly(2/3, 1/3): Q(t) = -(8/3)t^3 + (38/9)t^2 - (8/3)t + 2/3.
        let d = derived_functions(&quad23());
        let q = d.q_poly.as_ref().unwrap();
        let expect = RatPoly::new(vec![rat(2, 3), rat(-8, 3), rat(38, 9), rat(-8, 3)]);
        assert_eq!(q, &expect);
        assert_eq!(q.eval(&rat(1, 3)), rat(4, 27));
        assert_eq!(q.eval(&rat(1, 1)), rat(-4, 9));
    }

    #[test]
    fn q_printed_cubic_identity_on_grid() {
        // Closed form of the cubic for general (t_A, t_B), checked
        // coefficient-by-coefficient on a dense rational grid.
        for i in 1..12 {
            for j in (i + 1)..13 {
                let t_b = rat(i, 13);
                let t_a = rat(j, 13);
                let fam = CoefficientFamily::quad_poly(t_a.clone(), t_b.clone());
                let q = derived_functions(&fam).q_poly.unwrap();
                let one = Rat::one();
                let c3 = rat(-4, 1) * (&one - &t_a + &t_b);
                let c2 = (&t_b * &t_b + rat(12, 1) * &t_b + &one) - (&one + &t_b) * &t_a;
                let c1 = rat(-2, 1) * &t_b * (&t_b + rat(4, 1) * &t_a + &one);
                let c0 = &t_b * &(rat(3, 1) * &t_a * (&t_b + &one) - rat(2, 1) * &t_b);
                let printed = RatPoly::new(vec![c0, c1, c2, c3]);
                assert_eq!(q, printed, "t_A={t_a}, t_B={t_b}");
            }
        }
    }

    #[test]
    fn q_endpoint_formulas_on_grid() {
        // Q(t_B) = 3(1-t_B)^2 t_B (t_A - t_B), Q(1) = -3(1-t_A)(1-t_B)^2.
        for i in 1..8 {
            for j in (i + 1)..9 {
                let t_b = rat(i, 9);
                let t_a = rat(j, 9);
                let fam = CoefficientFamily::quad_poly(t_a.clone(), t_b.clone());
                let q = derived_functions(&fam).q_poly.unwrap();
                let one = Rat::one();
                let omb = &one - &t_b;
                assert_eq!(
                    q.eval(&t_b),
                    rat(3, 1) * &omb * &omb * &t_b * (&t_a - &t_b)
                );
                assert_eq!(q.eval(&one), rat(-3, 1) * (&one - &t_a) * &omb * &omb);
            }
        }
    }

    #[test]
    fn v_at_x_zero() {
        // v(t, 0) = 4(A'B - AB'); at t=0 this is -4 t_A t_B.
        let d = derived_functions(&quad23());
        assert!((d.v(0.0, 0.0) - (-8.0 / 9.0)).abs() < 1e-14);
        for &t in &[0.1, 0.33, 0.5, 0.77, 1.0] {
            let f = d.family();
            let w = 4.0 * (f.a_prime(t) * f.b(t) - f.a(t) * f.b_prime(t));
            assert!((d.v(t, 0.0) - w).abs() < 1e-12);
        }
    }

    #[test]
    fn phi_sign_pattern() {
        let d = derived_functions(&quad23());
        assert!(d.phi(0.2).unwrap() > 0.0);
        assert!((d.phi(0.2).unwrap() - 0.5714).abs() < 1e-3);
        assert!((d.phi(0.5).unwrap() + 0.5).abs() < 1e-12);
        assert!(d.phi(0.0).is_err());
        assert!(d.phi(2.0 / 3.0).is_err());
    }

    #[test]
    fn p_poly_matches_pointwise() {
        let d = derived_functions(&quad23());
        let p = d.p_poly.as_ref().unwrap();
        assert_eq!(p.degree(), Some(6));
        for &t in &[0.0, 0.2, 0.5, 0.9, 1.0] {
            assert!((p.eval_f64(t) - d.p(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn q_identity_with_v_and_vdot() {
        // Elimination identity: 16 Q = 4(2ABx^2 + B^2 x + 3B') v - 4B vdot,
        // independent of x, so v = vdot = 0 forces Q = 0.
        let d = derived_functions(&quad23());
        let f = d.family();
        for &(t, x) in &[(0.13, 0.4), (0.5, 1.2), (0.81, 0.05), (0.99, 2.0)] {
            let lhs = 16.0 * d.q(t);
            let rhs = 4.0
                * (2.0 * f.a(t) * f.b(t) * x * x + f.b(t) * f.b(t) * x + 3.0 * f.b_prime(t))
                * d.v(t, x)
                - 4.0 * f.b(t) * d.vdot(t, x);
            assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()), "t={t} x={x}");
        }
    }

    #[test]
    fn c1_quad_cases() {
        let zs = check_c1(&quad23());
        assert!(zs.verdict);
        assert_eq!(zs.t_b1, Some(1.0 / 3.0));
        assert!((zs.t_a.unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(zs.t_b2, Some(1.0));

        let bad = CoefficientFamily::quad_poly(rat(6, 5), rat(1, 2));
        assert!(!check_c1(&bad).verdict);
    }

    #[test]
    fn c1_trig_case() {
        // LinTrig(0,0,0,1): A = -sin t (zeros 0, pi), B = cos t (zeros pi/2, 3pi/2).
        let fam = CoefficientFamily::lin_trig(0.0, 0.0, 0.0, 1.0);
        let zs = check_c1(&fam);
        assert!(zs.verdict, "{:?}", zs.diagnostic);
        assert!((zs.t_a.unwrap() - PI).abs() < 1e-9);
        assert!((zs.t_b1.unwrap() - PI / 2.0).abs() < 1e-9);
        assert!((zs.t_b2.unwrap() - 3.0 * PI / 2.0).abs() < 1e-9);
    }

    #[test]
    fn precheck_routes() {
        let by_comb = CoefficientFamily::quad_poly_f64(0.3, 0.5);
        assert_eq!(
            uniqueness_precheck(&by_comb),
            UniquenessPrecheck::AtMostOneByCombination
        );
        let disc = combination_disc_quad(&rat_from_f64(0.3), &rat_from_f64(0.5));
        assert!((rat_to_f64(&disc) - 0.07).abs() < 1e-12);

        let by_sign = CoefficientFamily::quad_poly_f64(1.2, 0.5);
        assert_eq!(
            uniqueness_precheck(&by_sign),
            UniquenessPrecheck::AtMostOneBySign
        );

        let inconclusive = quad23();
        assert_eq!(
            uniqueness_precheck(&inconclusive),
            UniquenessPrecheck::Inconclusive
        );
        let disc = combination_disc_quad(&rat(2, 3), &rat(1, 3));
        assert_eq!(disc, rat(-1, 27));
    }

    #[test]
    fn wronskian_negative_on_grid() {
        // A'B - AB' < 0 for 0 < t_B < t_A < 1, sampled over t in [0, 1].
        for (ta, tb) in [(0.66, 0.33), (0.9, 0.1), (0.5, 0.4)] {
            let fam = CoefficientFamily::quad_poly_f64(ta, tb);
            for k in 0..=100 {
                let t = k as f64 / 100.0;
                let w = fam.a_prime(t) * fam.b(t) - fam.a(t) * fam.b_prime(t);
                assert!(w < 0.0, "t_A={ta} t_B={tb} t={t}");
            }
        }
    }

    #[test]
    fn combination_disc_closed_form() {
        // Disc(d) = -(1 - t_A) t_B (t_A - t_B) up to a positive factor.
        for i in 1..10 {
            for j in 1..10 {
                if i == j {
                    continue;
                }
                let t_a = rat(j, 10);
                let t_b = rat(i, 10);
                let got = combination_disc_quad(&t_a, &t_b);
                let expect = (Rat::one() - &t_a) * &t_b * (&t_a - &t_b) * rat(-1, 1);
                assert_eq!(got, expect, "t_A={t_a} t_B={t_b}");
            }
        }
    }
}
