//! Numeric moment path for black-box kernel factors.
//!
//! Adaptive Simpson quadrature (interval halving, Richardson error
//! estimate) integrates each factor product to a requested absolute
//! tolerance; the float results are then snapped to the simplest rational
//! within the error bound by continued-fraction best approximation. The
//! resulting moment table carries one error radius per entry so the
//! analyzer can decide which downstream signs are certified.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::moments::{binomial, MomentTable};
use crate::rat::{parse_decimal, Rat};

/// Black-box kernel factors for the numeric path.
pub struct NumericFactors<'a> {
    pub phi1: &'a dyn Fn(f64) -> f64,
    pub phi2: &'a dyn Fn(f64) -> f64,
    pub psi1: &'a dyn Fn(f64) -> f64,
    pub psi2: &'a dyn Fn(f64) -> f64,
    pub n: usize,
}

/// Moments with per-entry absolute error radii.
#[derive(Clone, Debug)]
pub struct NumericMomentTable {
    pub table: MomentTable,
    pub a_err: Vec<Rat>,
    pub b_err: Vec<Rat>,
}

const MAX_DEPTH: u32 = 48;

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    whole: f64,
    m: f64,
    fm: f64,
    tol: f64,
    depth: u32,
) -> Result<(f64, f64)> {
    let (left, lm, flm) = simpson(f, a, fa, m, fm);
    let (right, rm, frm) = simpson(f, m, fm, b, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
    }
    if depth >= MAX_DEPTH {
        return Err(Error::QuadratureDiverged);
    }
    let (lv, le) = adaptive(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth + 1)?;
    let (rv, re) = adaptive(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth + 1)?;
    Ok((lv + rv, le + re))
}

/// Integrate over [0,1] to absolute tolerance `tol`; returns the estimate
/// and an error bound.
pub fn integrate01(f: &dyn Fn(f64) -> f64, tol: f64) -> Result<(f64, f64)> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidTolerance);
    }
    let (a, b) = (0.0, 1.0);
    let (fa, fb) = (f(a), f(b));
    if !fa.is_finite() || !fb.is_finite() {
        return Err(Error::QuadratureDiverged);
    }
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    adaptive(f, a, fa, b, fb, whole, m, fm, tol, 0)
}

/// Simplest rational within `err` of `x`, by walking the continued
/// fraction of `x` and returning the first convergent that is close
/// enough. Falls back to the exact binary value of the float.
pub fn best_rational_within(x: f64, err: f64) -> Rat {
    let exact = Rat::from_float(x).unwrap_or_else(Rat::zero);
    if !err.is_finite() || err <= 0.0 {
        return exact;
    }
    let err_rat = Rat::from_float(err).unwrap();
    let mut remainder = exact.clone();
    let mut h_prev = BigInt::zero();
    let mut h = BigInt::one();
    let mut k_prev = BigInt::one();
    let mut k = BigInt::zero();
    for _ in 0..64 {
        let floor = remainder.floor().to_integer();
        let next_h = &floor * &h + &h_prev;
        let next_k = &floor * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, next_h);
        k_prev = std::mem::replace(&mut k, next_k);
        let convergent = Rat::new(h.clone(), k.clone());
        if (&convergent - &exact).abs() <= err_rat {
            return convergent;
        }
        let frac = &remainder - Rat::from_integer(floor);
        if frac.is_zero() {
            break;
        }
        remainder = frac.recip();
    }
    exact
}

/// Numeric moment table: each entry integrated to absolute error
/// `tol / 2` and rationalized within another `tol / 2`, so the reported
/// radius bounds the distance to the true moment.
pub fn numeric_moments(factors: &NumericFactors<'_>, tol: f64) -> Result<NumericMomentTable> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidTolerance);
    }
    let n = factors.n;
    if n < 1 {
        return Err(Error::SchemaViolation("n must be at least 1".into()));
    }
    let quad_tol = tol / 2.0;
    let snap_tol = tol / 2.0;
    let mut a = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    let mut a_err = Vec::with_capacity(n + 1);
    let mut b_err = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let weight = binomial(n, i);
        let weight_f = crate::rat::to_f64(&Rat::from_integer(weight.clone()));
        let pow_product = |y: f64| -> f64 {
            (factors.phi1)(y).powi((n - i) as i32) * (factors.phi2)(y).powi(i as i32)
        };
        let fa = |y: f64| (factors.psi1)(y) * pow_product(y) * weight_f;
        let fb = |y: f64| (factors.psi2)(y) * pow_product(y) * weight_f;
        let (va, ea) = integrate01(&fa, quad_tol)?;
        let (vb, eb) = integrate01(&fb, quad_tol)?;
        let ra = best_rational_within(va, snap_tol);
        let rb = best_rational_within(vb, snap_tol);
        let bound_a =
            (&ra - Rat::from_float(va).unwrap()).abs() + Rat::from_float(ea.max(quad_tol)).unwrap();
        let bound_b =
            (&rb - Rat::from_float(vb).unwrap()).abs() + Rat::from_float(eb.max(quad_tol)).unwrap();
        a.push(ra);
        b.push(rb);
        a_err.push(bound_a);
        b_err.push(bound_b);
    }
    // Quadrature noise may leave a tiny negative estimate for a moment
    // that is actually zero; clamp within the error bound.
    for (v, e) in a.iter_mut().zip(&a_err).chain(b.iter_mut().zip(&b_err)) {
        if v.is_negative() {
            if v.abs() > *e {
                return Err(Error::PositivityViolation(
                    "numeric moment is negative beyond its error bound".into(),
                ));
            }
            *v = Rat::zero();
        }
    }
    Ok(NumericMomentTable {
        table: MomentTable::new(a, b, n)?,
        a_err,
        b_err,
    })
}

/// Parse a tolerance string (rational `p/q` or decimal/scientific) into
/// both an exact rational and its float image.
pub fn parse_tolerance(s: &str) -> Result<(Rat, f64)> {
    let r = parse_decimal(s)?;
    if !r.is_positive() {
        return Err(Error::InvalidTolerance);
    }
    let f = crate::rat::to_f64(&r);
    Ok((r, f))
}
