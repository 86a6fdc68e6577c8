//! Exact rational polynomial algebra and certified real-root counting.
//!
//! Everything in this module works over arbitrary-precision rationals; no
//! rounding ever occurs. Root counts obtained here (Sturm, Budan-Fourier)
//! are therefore proofs, not numerics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rat = BigRational;

/// Build an exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Exact conversion of a finite `f64` to a rational (every finite float is one).
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float")
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootError {
    #[error("undefined sequence: zero polynomial")]
    ZeroPolynomial,
    #[error("endpoint is a root; perturb interval")]
    EndpointRoot,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("discriminant undefined for constant polynomial")]
    ConstantPolynomial,
    #[error("invalid interval: lo must be < hi")]
    BadInterval,
}

/// Dense univariate polynomial with exact rational coefficients,
/// constant term first. The zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Convenience constructor from integer coefficients, constant term first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from(BigInt::from(i)))
            .collect();
        RatPoly::new(coeffs)
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> RatPoly {
        let mut coeffs = vec![Rat::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / Rat::from(BigInt::from(i + 1))),
        );
        RatPoly::new(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = q * div + r` and `deg r < deg div`.
    pub fn div_rem(&self, div: &RatPoly) -> Result<(RatPoly, RatPoly), RootError> {
        if div.is_zero() {
            return Err(RootError::DivisionByZero);
        }
        let dd = div.degree().expect("nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        let lc = div.leading_coeff();
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] / &lc;
            if q.is_zero() {
                continue;
            }
            for (j, c) in div.coeffs.iter().enumerate() {
                let t = &q * c;
                rem[k - dd + j] = &rem[k - dd + j] - t;
            }
            quot[k - dd] = q;
        }
        Ok((RatPoly::new(quot), RatPoly::new(rem)))
    }

    pub fn rem(&self, div: &RatPoly) -> Result<RatPoly, RootError> {
        Ok(self.div_rem(div)?.1)
    }

    /// Monic gcd of `self` and `other`.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lc = a.leading_coeff();
            a.scale(&(Rat::one() / lc))
        }
    }

    /// Squarefree part `self / gcd(self, self')`.
    pub fn squarefree_part(&self) -> RatPoly {
        if self.degree().unwrap_or(0) < 2 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&g).expect("gcd nonzero").0
    }

    /// Cauchy bound: all real roots lie in `(-M, M)`.
    pub fn cauchy_bound(&self) -> Rat {
        let lc = self.leading_coeff();
        if lc.is_zero() {
            return Rat::one();
        }
        let mut max = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let r = (c / &lc).abs();
            if r > max {
                max = r;
            }
        }
        max + Rat::one()
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            coeffs.push(a + b);
        }
        RatPoly::new(coeffs)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                coeffs[i + j] = &coeffs[i + j] + t;
            }
        }
        RatPoly::new(coeffs)
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    // Shift numerator/denominator into f64 range together to avoid overflow.
    let num = r.numer();
    let den = r.denom();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift = (nb.max(db) - 900).max(0) as u64;
    let n = (num >> shift).to_string().parse::<f64>().unwrap_or(f64::NAN);
    let d = (den >> shift).to_string().parse::<f64>().unwrap_or(f64::NAN);
    n / d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rat) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn of_f64(x: f64) -> Sign {
        if x == 0.0 {
            Sign::Zero
        } else if x > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// An ordered list of signs together with its strict sign-variation count.
#[derive(Clone, Debug)]
pub struct SignSequence {
    pub values: Vec<Sign>,
    pub variations: usize,
}

impl SignSequence {
    pub fn new(values: Vec<Sign>) -> Self {
        let variations = count_variations(&values);
        SignSequence { values, variations }
    }

    /// Signs of a polynomial list evaluated at `x`.
    pub fn evaluate(polys: &[RatPoly], x: &Rat) -> Self {
        Self::new(polys.iter().map(|p| Sign::of(&p.eval(x))).collect())
    }
}

fn count_variations(values: &[Sign]) -> usize {
    let mut count = 0;
    let mut prev: Option<Sign> = None;
    for &s in values {
        if s == Sign::Zero {
            continue;
        }
        if let Some(p) = prev {
            if p != s {
                count += 1;
            }
        }
        prev = Some(s);
    }
    count
}

/// A rational interval with per-endpoint openness flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn open(lo: Rat, hi: Rat) -> Result<Self, RootError> {
        Self::with_flags(lo, hi, true, true)
    }

    /// Half-open `(lo, hi]`, the Sturm-query convention used throughout.
    pub fn half_open(lo: Rat, hi: Rat) -> Result<Self, RootError> {
        Self::with_flags(lo, hi, true, false)
    }

    pub fn with_flags(lo: Rat, hi: Rat, lo_open: bool, hi_open: bool) -> Result<Self, RootError> {
        if lo >= hi {
            return Err(RootError::BadInterval);
        }
        Ok(Interval {
            lo,
            hi,
            lo_open,
            hi_open,
        })
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from(BigInt::from(2))
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid_f64(&self) -> f64 {
        rat_to_f64(&self.midpoint())
    }
}

/// Signed remainder sequence of `(p, q)`: S0 = p, S1 = q,
/// S_{k+1} = -Rem(S_{k-1}, S_k), ending before the first zero remainder.
pub fn signed_remainder_sequence(p: &RatPoly, q: &RatPoly) -> Result<Vec<RatPoly>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let mut seq = vec![p.clone()];
    if q.is_zero() {
        return Ok(seq);
    }
    seq.push(q.clone());
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1])?;
        if r.is_zero() {
            return Ok(seq);
        }
        seq.push(-&r);
    }
}

/// Exact number of distinct real roots of `p` in `(lo, hi]` by Sturm's theorem.
///
/// Precondition: neither endpoint is a root of `p`.
pub fn sturm_count(p: &RatPoly, iv: &Interval) -> Result<usize, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if p.eval(&iv.lo).is_zero() || p.eval(&iv.hi).is_zero() {
        return Err(RootError::EndpointRoot);
    }
    let seq = signed_remainder_sequence(p, &p.derivative())?;
    sturm_count_with_seq(&seq, iv)
}

/// As `sturm_count`, reusing a precomputed signed remainder sequence.
pub fn sturm_count_with_seq(seq: &[RatPoly], iv: &Interval) -> Result<usize, RootError> {
    let lo = SignSequence::evaluate(seq, &iv.lo).variations;
    let hi = SignSequence::evaluate(seq, &iv.hi).variations;
    Ok(lo.saturating_sub(hi))
}

/// Budan-Fourier bound on the number of roots of `p` in `(lo, hi]`
/// (counted with multiplicity); exceeds the true count by an even number.
pub fn budan_fourier_bound(p: &RatPoly, iv: &Interval) -> Result<usize, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if p.eval(&iv.lo).is_zero() || p.eval(&iv.hi).is_zero() {
        return Err(RootError::EndpointRoot);
    }
    let mut der = vec![p.clone()];
    while der.last().expect("nonempty").degree().unwrap_or(0) > 0 {
        let d = der.last().expect("nonempty").derivative();
        der.push(d);
    }
    let lo = SignSequence::evaluate(&der, &iv.lo).variations;
    let hi = SignSequence::evaluate(&der, &iv.hi).variations;
    Ok(lo.saturating_sub(hi))
}

/// Resultant of `p` and `q` via the Euclidean remainder sequence.
pub fn resultant(p: &RatPoly, q: &RatPoly) -> Rat {
    if p.is_zero() || q.is_zero() {
        return Rat::zero();
    }
    let dp = p.degree().expect("nonzero");
    let dq = q.degree().expect("nonzero");
    if dp == 0 {
        return pow_rat(&p.leading_coeff(), dq);
    }
    if dq == 0 {
        return pow_rat(&q.leading_coeff(), dp);
    }
    if dp < dq {
        let sign = if (dp * dq) % 2 == 1 {
            -Rat::one()
        } else {
            Rat::one()
        };
        return sign * resultant(q, p);
    }
    let r = p.rem(q).expect("q nonzero");
    if r.is_zero() {
        return Rat::zero();
    }
    let dr = r.degree().expect("nonzero");
    let sign = if (dp * dq) % 2 == 1 {
        -Rat::one()
    } else {
        Rat::one()
    };
    sign * pow_rat(&q.leading_coeff(), dp - dr) * resultant(q, &r)
}

fn pow_rat(r: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc = acc * r;
    }
    acc
}

/// Discriminant: `(-1)^(n(n-1)/2) * Res(p, p') / lc(p)`.
/// Zero exactly when `p` has a repeated complex root.
pub fn discriminant(p: &RatPoly) -> Result<Rat, RootError> {
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(RootError::ConstantPolynomial),
    };
    if n == 1 {
        return Ok(Rat::one());
    }
    let res = resultant(p, &p.derivative());
    let sign = if (n * (n - 1) / 2) % 2 == 1 {
        -Rat::one()
    } else {
        Rat::one()
    };
    Ok(sign * res / p.leading_coeff())
}

/// Isolating intervals for the real roots of `p`: disjoint open intervals,
/// each containing exactly one root, jointly containing all of them.
pub fn isolate_real_roots(p: &RatPoly) -> Vec<Interval> {
    let sf = p.squarefree_part();
    if sf.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let seq = match signed_remainder_sequence(&sf, &sf.derivative()) {
        Ok(s) => s,
        Err(_) => return vec![],
    };
    let bound = sf.cauchy_bound();
    let lo = nonroot_point(&sf, &(-&bound), &rat(-1, 1));
    let hi = nonroot_point(&sf, &bound, &Rat::one());
    let mut out = vec![];
    let iv = Interval::half_open(lo, hi).expect("bound positive");
    subdivide(&sf, &seq, iv, &mut out);
    out
}

fn nonroot_point(p: &RatPoly, start: &Rat, dir: &Rat) -> Rat {
    let mut x = start.clone();
    while p.eval(&x).is_zero() {
        x += dir;
    }
    x
}

fn subdivide(p: &RatPoly, seq: &[RatPoly], iv: Interval, out: &mut Vec<Interval>) {
    let count = sturm_count_with_seq(seq, &iv).expect("endpoints nonroot");
    match count {
        0 => {}
        1 => out.push(Interval::open(iv.lo, iv.hi).expect("valid")),
        _ => {
            let mut mid = iv.midpoint();
            // Nudge off a root; roots are finitely many so this terminates.
            let mut step = iv.width() / Rat::from(BigInt::from(1024));
            while p.eval(&mid).is_zero() || mid <= iv.lo || mid >= iv.hi {
                mid += &step;
                step = &step / Rat::from(BigInt::from(2));
            }
            let left = Interval::half_open(iv.lo, mid.clone()).expect("lo < mid");
            let right = Interval::half_open(mid, iv.hi).expect("mid < hi");
            subdivide(p, seq, left, out);
            subdivide(p, seq, right, out);
        }
    }
}

/// Refine an isolating interval of `p` by bisection until its width is
/// below `width`; the sign of `p` must differ at the endpoints.
pub fn refine_root(p: &RatPoly, iv: &Interval, width: &Rat) -> Interval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let slo = Sign::of(&p.eval(&lo));
    loop {
        if &(&hi - &lo) < width {
            return Interval::with_flags(lo, hi, true, false).expect("lo < hi");
        }
        let mid = (&lo + &hi) / Rat::from(BigInt::from(2));
        let sm = Sign::of(&p.eval(&mid));
        if sm == Sign::Zero {
            let half = width / Rat::from(BigInt::from(4));
            return Interval::with_flags(&mid - &half, &mid + &half, true, false)
                .expect("positive width");
        }
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RatPoly {
        RatPoly::from_ints(&[0, 1])
    }

    #[test]
    fn srs_basic() {
        // p = x^2 - 1, q = 2x -> [x^2-1, 2x, 1]
        let p = RatPoly::from_ints(&[-1, 0, 1]);
        let q = RatPoly::from_ints(&[0, 2]);
        let seq = signed_remainder_sequence(&p, &q).unwrap();
        assert_eq!(seq.len(), 3);
        assert_eq!(seq[2], RatPoly::from_ints(&[1]));

        // p = x^2 + 1, q = 2x -> [x^2+1, 2x, -1]
        let p = RatPoly::from_ints(&[1, 0, 1]);
        let seq = signed_remainder_sequence(&p, &q).unwrap();
        assert_eq!(seq.len(), 3);
        assert_eq!(seq[2], RatPoly::from_ints(&[-1]));
    }

    #[test]
    fn srs_zero_poly_rejected() {
        let err = signed_remainder_sequence(&RatPoly::zero(), &x()).unwrap_err();
        assert_eq!(err, RootError::ZeroPolynomial);
    }

    #[test]
    fn sturm_no_real_roots() {
        let p = RatPoly::from_ints(&[1, 0, 1]);
        let iv = Interval::half_open(rat(-10, 1), rat(10, 1)).unwrap();
        assert_eq!(sturm_count(&p, &iv).unwrap(), 0);
    }

    #[test]
    fn sturm_endpoint_root_rejected() {
        let p = RatPoly::from_ints(&[-1, 0, 1]);
        let iv = Interval::half_open(rat(-1, 1), rat(2, 1)).unwrap();
        assert_eq!(sturm_count(&p, &iv).unwrap_err(), RootError::EndpointRoot);
    }

    #[test]
    fn sturm_counts_three_roots() {
        // (x-1)(x-2)(x-3)
        let p = RatPoly::from_ints(&[-6, 11, -6, 1]);
        let iv = Interval::half_open(rat(0, 1), rat(4, 1)).unwrap();
        assert_eq!(sturm_count(&p, &iv).unwrap(), 3);
        let iv = Interval::half_open(rat(0, 1), rat(5, 2)).unwrap();
        assert_eq!(sturm_count(&p, &iv).unwrap(), 2);
    }

    #[test]
    fn budan_fourier_hand_example() {
        // x^2 - 3x + 2 on (0, 3): Var at 0 is 2, at 3 is 0.
        let p = RatPoly::from_ints(&[2, -3, 1]);
        let iv = Interval::half_open(rat(0, 1), rat(3, 1)).unwrap();
        assert_eq!(budan_fourier_bound(&p, &iv).unwrap(), 2);
    }

    #[test]
    fn budan_fourier_constant() {
        let p = RatPoly::from_ints(&[5]);
        let iv = Interval::half_open(rat(0, 1), rat(1, 1)).unwrap();
        assert_eq!(budan_fourier_bound(&p, &iv).unwrap(), 0);
    }

    #[test]
    fn discriminant_quadratic() {
        // x^2 + bx + c -> b^2 - 4c, a few instances
        for (b, c) in [(3i64, 1i64), (0, -2), (-5, 7), (2, 1)] {
            let p = RatPoly::new(vec![rat(c, 1), rat(b, 1), Rat::one()]);
            assert_eq!(discriminant(&p).unwrap(), rat(b * b - 4 * c, 1));
        }
    }

    #[test]
    fn discriminant_zero_iff_repeated_root() {
        // (x-1)^2 (x+2)
        let sq = RatPoly::from_ints(&[1, -2, 1]);
        let lin = RatPoly::from_ints(&[2, 1]);
        let p = &sq * &lin;
        assert!(discriminant(&p).unwrap().is_zero());
        assert!(p.gcd(&p.derivative()).degree().unwrap() >= 1);

        let q = RatPoly::from_ints(&[-6, 11, -6, 1]);
        assert!(!discriminant(&q).unwrap().is_zero());
        assert_eq!(q.gcd(&q.derivative()).degree(), Some(0));
    }

    #[test]
    fn discriminant_constant_rejected() {
        assert_eq!(
            discriminant(&RatPoly::from_ints(&[3])).unwrap_err(),
            RootError::ConstantPolynomial
        );
    }

    #[test]
    fn isolate_cubic() {
        let p = RatPoly::from_ints(&[-6, 11, -6, 1]);
        let ivs = isolate_real_roots(&p);
        assert_eq!(ivs.len(), 3);
        for (iv, root) in ivs.iter().zip([1i64, 2, 3]) {
            let r = rat(root, 1);
            assert!(iv.lo < r && r < iv.hi, "{iv:?} should contain {root}");
        }
    }

    #[test]
    fn isolate_handles_multiple_roots() {
        // (x-1)^2: squarefree part is taken internally.
        let p = RatPoly::from_ints(&[1, -2, 1]);
        let ivs = isolate_real_roots(&p);
        assert_eq!(ivs.len(), 1);
    }

    #[test]
    fn refine_narrows() {
        let p = RatPoly::from_ints(&[-2, 0, 1]); // x^2 - 2
        let iv = Interval::open(rat(1, 1), rat(2, 1)).unwrap();
        let tight = refine_root(&p, &iv, &rat(1, 1_000_000));
        let mid = tight.mid_f64();
        assert!((mid - std::f64::consts::SQRT_2).abs() < 1e-5);
    }

    #[test]
    fn sign_sequence_variations() {
        use Sign::*;
        let s = SignSequence::new(vec![Positive, Zero, Negative, Negative, Positive]);
        assert_eq!(s.variations, 2);
        let s = SignSequence::new(vec![Zero, Zero]);
        assert_eq!(s.variations, 0);
    }

    #[test]
    fn division_identity() {
        let p = RatPoly::from_ints(&[3, -1, 4, 1, 5]);
        let d = RatPoly::from_ints(&[1, 2, 1]);
        let (q, r) = p.div_rem(&d).unwrap();
        let back = &(&q * &d) + &r;
        assert_eq!(back, p);
        assert!(r.degree().unwrap() < d.degree().unwrap());
    }
}
