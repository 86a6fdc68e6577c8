//! Linear-trigonometric specialization: normalization to the canonical
//! form, tan-half-angle reduction to rational functions of z, the q region
//! analysis with the discriminant sign, the witness against the
//! sign-invariance certificate, and the analysis at infinity through the
//! planar system t' = y, y' = -B(t)y - A(t).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelmodel::{derived_functions, CoefficientFamily};
use crate::realroots::{rat, rat_from_f64, Rat, RatPoly, Sign};

#[derive(Debug, Error)]
pub enum TrigError {
    #[error("every zero of A is non-simple")]
    NonSimpleZeros,
    #[error("B vanishes at the usable zero of A; no canonical form")]
    DegenerateB,
    #[error("b2 must be positive, got {0}")]
    BadB2(f64),
    #[error("operation requires a canonical trigonometric family")]
    NotCanonical,
}

/// The time shift, reflection, and x-rescaling that brought a family to
/// canonical form.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Transform {
    pub shift: f64,
    pub reflected: bool,
    pub scale: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum NormalizeOutcome {
    Canonical {
        fam: CoefficientFamily,
        transform: Transform,
    },
    /// A never vanishes; the uniqueness precheck applies instead.
    SignDefinite { sign: i8 },
}

fn shift_coeffs(c: (f64, f64, f64), s: f64) -> (f64, f64, f64) {
    // c0 + c1 sin(t+s) + c2 cos(t+s) regrouped in sin t, cos t.
    (
        c.0,
        c.1 * s.cos() - c.2 * s.sin(),
        c.1 * s.sin() + c.2 * s.cos(),
    )
}

fn reflect_coeffs(c: (f64, f64, f64)) -> (f64, f64, f64) {
    // -c(-t): flips the constant and cosine parts, keeps the sine part.
    (-c.0, c.1, -c.2)
}

/// Bring A = a1 + a2 sin t + a3 cos t, B likewise, to the canonical form
/// A(0) = 0, A'(0) = -1, B(0) > 0 by a time shift, an optional reflection
/// t -> -t, and the rescaling x -> x / c with c^2 = -A'(t*).
pub fn normalize(a: (f64, f64, f64), b: (f64, f64, f64)) -> Result<NormalizeOutcome, TrigError> {
    let r = a.1.hypot(a.2);
    if a.0.abs() >= r {
        if (a.0.abs() - r).abs() < 1e-12 * r.max(1.0) && r > 0.0 {
            return Err(TrigError::NonSimpleZeros);
        }
        return Ok(NormalizeOutcome::SignDefinite {
            sign: if a.0 > 0.0 { 1 } else { -1 },
        });
    }

    let build = |a: (f64, f64, f64), b: (f64, f64, f64)| {
        // Zero with negative derivative: t* + psi = pi - asin(-a1/r).
        let psi = a.2.atan2(a.1);
        let theta = (-a.0 / r).asin();
        let mut t_star = (PI - theta) - psi;
        t_star = t_star.rem_euclid(2.0 * PI);
        let (sa, sb) = (shift_coeffs(a, t_star), shift_coeffs(b, t_star));
        let c2 = (r * r - a.0 * a.0).sqrt();
        let c = c2.sqrt();
        let fam = (
            (sa.0 / c2, sa.1 / c2, sa.2 / c2),
            (sb.0 / c, sb.1 / c, sb.2 / c),
        );
        (fam, t_star, c)
    };

    let ((na, nb), shift, scale) = build(a, b);
    debug_assert!((na.1 + 1.0).abs() < 1e-9 && (na.2 + na.0).abs() < 1e-9);
    let b_at_zero = nb.0 + nb.2;
    if b_at_zero.abs() < 1e-12 {
        return Err(TrigError::DegenerateB);
    }
    if b_at_zero > 0.0 {
        return Ok(NormalizeOutcome::Canonical {
            fam: CoefficientFamily::lin_trig(na.0, nb.0, nb.1, nb.2),
            transform: Transform {
                shift,
                reflected: false,
                scale,
            },
        });
    }
    let ((na, nb), shift, scale) = build(reflect_coeffs(a), reflect_coeffs(b));
    debug_assert!(nb.0 + nb.2 > 0.0);
    Ok(NormalizeOutcome::Canonical {
        fam: CoefficientFamily::lin_trig(na.0, nb.0, nb.1, nb.2),
        transform: Transform {
            shift,
            reflected: true,
            scale,
        },
    })
}

/// Numerators of the tan-half-angle images of A and B over the shared
/// denominator z^2 + 1, with their real zero locations.
#[derive(Clone, Debug)]
pub struct RationalCoeffPair {
    pub abar: RatPoly,
    pub bbar: RatPoly,
    pub zeros_a: Vec<f64>,
    pub zeros_b: Vec<f64>,
}

/// z = tan((t - pi)/2) reduction of a canonical family:
/// Abar = 2(z + a0), Bbar = (b0+b2)z^2 - 2 b1 z + (b0-b2), both over z^2+1.
pub fn rational_pair(fam: &CoefficientFamily) -> Result<RationalCoeffPair, TrigError> {
    let CoefficientFamily::LinTrig { a0, b0, b1, b2 } = fam else {
        return Err(TrigError::NotCanonical);
    };
    let (a0r, b0r, b1r, b2r) = (
        rat_from_f64(*a0),
        rat_from_f64(*b0),
        rat_from_f64(*b1),
        rat_from_f64(*b2),
    );
    let abar = RatPoly::new(vec![&a0r * &rat(2, 1), rat(2, 1)]);
    let bbar = RatPoly::new(vec![&b0r - &b2r, &b1r * &rat(-2, 1), &b0r + &b2r]);
    let mut zeros_b = vec![];
    let disc = b1 * b1 - (b0 * b0 - b2 * b2);
    if disc >= 0.0 && (b0 + b2).abs() > 1e-14 {
        let s = disc.sqrt();
        zeros_b.push((b1 - s) / (b0 + b2));
        zeros_b.push((b1 + s) / (b0 + b2));
        zeros_b.sort_by(f64::total_cmp);
    }
    Ok(RationalCoeffPair {
        abar,
        bbar,
        zeros_a: vec![-a0],
        zeros_b,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    QNegative,
    B2Large,
    Other,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QRegionReport {
    pub q: f64,
    pub region: Region,
    pub p: RatPoly,
    pub delta_sign: i8,
}

/// The six-term sextic p(z) at parameters (b2, z_B); the certificate
/// polynomial on the half-axis satisfies
/// (z^2+1)^3 Pbar(z) = (b2 / z_B^3) p(z) at a0 = b0 = 0.
pub fn p_poly_exact(b2: &Rat, z_b: &Rat) -> RatPoly {
    let b22 = b2 * b2;
    let z2 = z_b * z_b;
    let z3 = &z2 * z_b;
    let z4 = &z2 * &z2;
    let z5 = &z3 * &z2;
    let odd = &(z_b - &(&z3 * &rat(3, 1))) + &z5;
    let c0 = &(&b22 - &rat(4, 1)) * &z3;
    let c1 = &(&(&b22 * &z2) * &rat(3, 1)) * &(&z2 - &rat(1, 1));
    let c2 = &(&(&z3 * &rat(-4, 1)) + &(&b22 * &odd)) * &rat(3, 1);
    let c3 = &(&b22 * &(&z2 - &rat(1, 1))) * &(&(&z4 - &(&z2 * &rat(8, 1))) + &rat(1, 1));
    let c4 = &(&(&z3 * &rat(4, 1)) + &(&b22 * &odd)) * &rat(-3, 1);
    let c5 = c1.clone();
    let c6 = -(&(&b22 + &rat(4, 1)) * &z3);
    RatPoly::new(vec![c0, c1, c2, c3, c4, c5, c6])
}

/// q-test of the certificate region: q = sqrt(b1^2 + b2^2)/b2^(1/3) - 2^(2/3);
/// the discriminant of p(z) has the sign of q.
pub fn q_and_region(b1: f64, b2: f64) -> Result<QRegionReport, TrigError> {
    if b2 <= 0.0 {
        return Err(TrigError::BadB2(b2));
    }
    let q = b1.hypot(b2) / b2.cbrt() - 2.0f64.cbrt() * 2.0f64.cbrt();
    let z_b = (b1 + b1.hypot(b2)) / b2;
    let b2r = rat_from_f64(b2);
    let zbr = rat_from_f64(z_b);
    let p = p_poly_exact(&b2r, &zbr);
    // All other discriminant factors are positive for z_B, b2 > 0, so the
    // sign reduces to b2^4 (z_B^2+1)^6 - 2^10 z_B^6.
    let b24 = {
        let s = &b2r * &b2r;
        &s * &s
    };
    let zb2p1 = &(&zbr * &zbr) + &rat(1, 1);
    let mut pow6 = rat(1, 1);
    for _ in 0..6 {
        pow6 = &pow6 * &zb2p1;
    }
    let mut zb6 = rat(1, 1);
    for _ in 0..6 {
        zb6 = &zb6 * &zbr;
    }
    let delta_core = &(&b24 * &pow6) - &(&zb6 * &rat(1024, 1));
    let delta_sign = Sign::of(&delta_core).as_i8();
    let region = if delta_sign < 0 {
        Region::QNegative
    } else if b2 > 2.0 {
        Region::B2Large
    } else {
        Region::Other
    };
    Ok(QRegionReport {
        q,
        region,
        p,
        delta_sign,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum WitnessOutcome {
    /// A point with v = vdot = 0 and positive x, defeating the certificate.
    Witness {
        t_w: f64,
        x_w: f64,
        v_residual: f64,
        vdot_residual: f64,
    },
    /// The closed form is singular (sin(2 t_i) = 0); no claim is made.
    Degenerate,
}

/// Witness construction at a0 = b0 = 0: the zeros t_i of
/// b2 sin t - b1 cos t carry candidates x = (b2 +- sqrt(b2^2 + 4 cos^3 t_i))
/// / sin(2 t_i); any positive candidate with vanishing residuals defeats
/// the sign-invariance certificate.
pub fn no_c3_witness(b1: f64, b2: f64) -> Result<WitnessOutcome, TrigError> {
    if b2 <= 0.0 {
        return Err(TrigError::BadB2(b2));
    }
    let fam = CoefficientFamily::lin_trig(0.0, 0.0, b1, b2);
    let df = derived_functions(&fam);
    let mut t1 = (b1 / b2).atan();
    if t1 < 0.0 {
        t1 += PI;
    }
    let mut saw_degenerate = false;
    for t_i in [t1, t1 + PI] {
        let s2 = (2.0 * t_i).sin();
        if s2.abs() < 1e-9 {
            saw_degenerate = true;
            continue;
        }
        let rad = b2 * b2 + 4.0 * t_i.cos().powi(3);
        if rad < 0.0 {
            continue;
        }
        for x in [(b2 + rad.sqrt()) / s2, (b2 - rad.sqrt()) / s2] {
            if x <= 0.0 {
                continue;
            }
            let v_res = df.v(t_i, x).abs();
            let vdot_res = df.vdot(t_i, x).abs();
            if v_res < 1e-9 && vdot_res < 1e-9 {
                return Ok(WitnessOutcome::Witness {
                    t_w: t_i,
                    x_w: x,
                    v_residual: v_res,
                    vdot_residual: vdot_res,
                });
            }
        }
    }
    if saw_degenerate {
        Ok(WitnessOutcome::Degenerate)
    } else {
        // No candidate closed: treat as degenerate rather than overclaim.
        Ok(WitnessOutcome::Degenerate)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EquilibriumKind {
    Saddle,
    UnstableNodeFocus,
    Other,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Equilibrium {
    pub t: f64,
    pub kind: EquilibriumKind,
    pub trace: f64,
    pub det: f64,
}

/// Behavior of solutions near infinity through the planar system
/// t' = y, y' = -B(t) y - A(t).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InfinityReport {
    pub equilibria: Vec<Equilibrium>,
    /// (lambda_minus, lambda_plus) at the saddle (0, 0).
    pub eigenvalues: (f64, f64),
    pub v_inf: Vec<(f64, f64)>,
    pub w_inf: Vec<(f64, f64)>,
    pub connection: bool,
    pub mismatch: f64,
    pub homoclinic_stability_sign: Option<i8>,
    pub unbounded_branch: bool,
}

/// Interior zero of the canonical A in (0, 2 pi).
pub fn interior_a_zero(a0: f64) -> f64 {
    if a0 == 0.0 {
        PI
    } else {
        let t = 2.0 * (1.0 / a0).atan();
        if t > 0.0 {
            t
        } else {
            t + 2.0 * PI
        }
    }
}

/// Integrate dy/dt = -B(t) - A(t)/y from (t0, y0) to t1 with fixed-step
/// RK4, recording samples; `None` on escape or on touching the axis.
fn manifold_branch(
    fam: &CoefficientFamily,
    t0: f64,
    y0: f64,
    t1: f64,
    n: usize,
    samples: Option<&mut Vec<(f64, f64)>>,
) -> Option<f64> {
    let h = (t1 - t0) / n as f64;
    let f = |t: f64, y: f64| -B(fam, t) - fam.a(t) / y;
    let mut y = y0;
    let mut t = t0;
    let mut samples = samples;
    for i in 0..n {
        if let Some(s) = samples.as_deref_mut() {
            if i % (n / 512).max(1) == 0 {
                s.push((t, y));
            }
        }
        let k1 = f(t, y);
        let k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
        let k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
        let k4 = f(t + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = t0 + (i + 1) as f64 * h;
        if !y.is_finite() || y.abs() > 1e8 || y <= 0.0 {
            return None;
        }
    }
    if let Some(s) = samples.as_deref_mut() {
        s.push((t, y));
    }
    Some(y)
}

#[allow(non_snake_case)]
fn B(fam: &CoefficientFamily, t: f64) -> f64 {
    fam.b(t)
}

/// Saddle manifolds at infinity for a canonical family: launch the
/// unstable manifold from (0, 0) along (1, lambda_plus) and the stable
/// one from (2 pi, 0) along (1, lambda_minus), match at the mid-section
/// t = pi, and when they connect read the homoclinic stability sign from
/// the return map of the y-equation near y = 0.
pub fn infinity_analysis(fam: &CoefficientFamily) -> Result<InfinityReport, TrigError> {
    let CoefficientFamily::LinTrig { a0, b0, b2, .. } = fam else {
        return Err(TrigError::NotCanonical);
    };
    let two_pi = 2.0 * PI;
    let bsum = b0 + b2;
    let disc = (bsum * bsum + 4.0).sqrt();
    let lam_minus = (-bsum - disc) / 2.0;
    let lam_plus = (-bsum + disc) / 2.0;

    let t_a = interior_a_zero(*a0);
    let mut equilibria = vec![Equilibrium {
        t: 0.0,
        kind: EquilibriumKind::Saddle,
        trace: -fam.b(0.0),
        det: fam.a_prime(0.0),
    }];
    let (tr, det) = (-fam.b(t_a), fam.a_prime(t_a));
    equilibria.push(Equilibrium {
        t: t_a,
        kind: if det > 0.0 && tr > 0.0 {
            EquilibriumKind::UnstableNodeFocus
        } else if det < 0.0 {
            EquilibriumKind::Saddle
        } else {
            EquilibriumKind::Other
        },
        trace: tr,
        det,
    });

    let n = 1 << 16;
    let shoot = |delta: f64, samples: Option<&mut Vec<(f64, f64)>>| -> (Option<f64>, Option<f64>) {
        let v = manifold_branch(fam, delta, lam_plus * delta, PI, n, samples);
        let w = manifold_branch(fam, two_pi - delta, -lam_minus * delta, PI, n, None);
        (v, w)
    };
    let mut v_samples = vec![];
    let mut w_samples = vec![];
    let delta = 1e-8;
    let v1 = manifold_branch(fam, delta, lam_plus * delta, PI, n, Some(&mut v_samples));
    let w1 = manifold_branch(
        fam,
        two_pi - delta,
        -lam_minus * delta,
        PI,
        n,
        Some(&mut w_samples),
    );
    let (v2, w2) = shoot(delta / 2.0, None);
    // Richardson refinement of the launch offset.
    let v_pi = match (v1, v2) {
        (Some(a), Some(b)) => Some(2.0 * b - a),
        _ => None,
    };
    let w_pi = match (w1, w2) {
        (Some(a), Some(b)) => Some(2.0 * b - a),
        _ => None,
    };
    let unbounded_branch = v_pi.is_none() || w_pi.is_none();
    let mismatch = match (v_pi, w_pi) {
        (Some(v), Some(w)) => (v - w).abs(),
        _ => f64::INFINITY,
    };
    let connection = mismatch < 1e-6;

    let homoclinic_stability_sign = if connection {
        return_map_sign(fam).map(|s| s as i8)
    } else {
        None
    };

    Ok(InfinityReport {
        equilibria,
        eigenvalues: (lam_minus, lam_plus),
        v_inf: v_samples,
        w_inf: w_samples,
        connection,
        mismatch,
        homoclinic_stability_sign,
        unbounded_branch,
    })
}

/// Sign of P(y) - y for small y > 0, where P is the period map of the
/// y-equation dy/dt = -B - A/y starting above the saddle.
fn return_map_sign(fam: &CoefficientFamily) -> Option<i32> {
    let y0 = 1e-3;
    let end = manifold_branch(fam, 0.0, y0, 2.0 * PI, 1 << 18, None)?;
    let d = end - y0;
    if d.abs() < 1e-12 {
        None
    } else {
        Some(d.signum() as i32)
    }
}
