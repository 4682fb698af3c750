//! Exact isolation and refinement of real roots.
//!
//! All decisions are made with exact rational signs: Sturm-chain counts
//! drive the bisection, so isolation is unconditionally correct. Roots hit
//! exactly by a rational probe are returned as zero-width certificates.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rat::{rat_i64, sign, Rat};

/// A rational enclosure. `lo == hi` certifies an exact rational root;
/// otherwise exactly one distinct root of the square-free part lies in the
/// open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval bounds out of order");
        Interval { lo, hi }
    }

    pub fn point(p: Rat) -> Self {
        Interval {
            lo: p.clone(),
            hi: p,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat_i64(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// A refined root: enclosure of width at most the requested tolerance,
/// with `value` the midpoint (or the root itself when `exact`).
#[derive(Clone, Debug)]
pub struct RefinedRoot {
    pub enclosure: Interval,
    pub value: Rat,
    pub exact: bool,
}

/// Classical bound `B = 1 + max |a_k| / |lead|`: every real root of `f`
/// lies strictly inside `(-B, B)`.
pub fn cauchy_bound(f: &Polynomial) -> Result<Rat> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("cauchy_bound"));
    }
    let lead = f.leading().unwrap();
    let mut max = Rat::zero();
    let coeffs = f.coeffs();
    for c in &coeffs[..coeffs.len() - 1] {
        let ratio = (c / lead).abs();
        if ratio > max {
            max = ratio;
        }
    }
    Ok(max + rat_i64(1))
}

struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    /// `sf` must be square-free and nonconstant.
    fn new(sf: &Polynomial) -> Self {
        let mut chain = vec![sf.primitive_int(), sf.derivative().primitive_int()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[k - 2].div_rem(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            // primitive_int scales by a positive factor, preserving signs
            chain.push(r.neg().primitive_int());
        }
        SturmChain { chain }
    }

    fn variations_at(&self, x: &Rat) -> usize {
        let mut last: i8 = 0;
        let mut changes = 0;
        for p in &self.chain {
            let s = sign(&p.eval(x));
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// Distinct roots in the open interval `(a, b)`; endpoints must not be
    /// roots of the chain head.
    fn count_open(&self, a: &Rat, b: &Rat) -> usize {
        debug_assert!(!self.chain[0].eval(a).is_zero());
        debug_assert!(!self.chain[0].eval(b).is_zero());
        let va = self.variations_at(a);
        let vb = self.variations_at(b);
        debug_assert!(va >= vb);
        va - vb
    }
}

/// Divide out every factor `(x - point)` as long as `point` is a root.
fn deflate(p: &Polynomial, point: &Rat) -> Polynomial {
    let linear = Polynomial::from_coeffs(vec![-point, rat_i64(1)]);
    let mut out = p.clone();
    while out.eval(point).is_zero() && out.degree().is_some_and(|d| d >= 1) {
        let (q, r) = out.div_rem(&linear);
        debug_assert!(r.is_zero());
        out = q;
    }
    out
}

/// Number of distinct real roots of `f` in the open interval `(a, b)` by
/// Sturm sign variations in exact arithmetic. Endpoint roots are divided
/// out first, so they never contribute.
pub fn sturm_count(f: &Polynomial, a: &Rat, b: &Rat) -> Result<usize> {
    if a >= b {
        return Err(Error::DegenerateInterval);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("sturm_count"));
    }
    let mut sf = f.square_free_part()?;
    sf = deflate(&sf, a);
    sf = deflate(&sf, b);
    if sf.degree().is_none_or(|d| d == 0) {
        return Ok(0);
    }
    Ok(SturmChain::new(&sf).count_open(a, b))
}

/// Isolate the distinct roots of `f` in the open interval `(lo, hi)`.
/// Output intervals are pairwise disjoint and sorted ascending; exact
/// rational hits come back as zero-width points.
pub fn isolate_roots_in(f: &Polynomial, lo: &Rat, hi: &Rat) -> Result<Vec<Interval>> {
    if lo >= hi {
        return Err(Error::DegenerateInterval);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("isolate_roots_in"));
    }
    let mut sf = f.square_free_part()?;
    sf = deflate(&sf, lo);
    sf = deflate(&sf, hi);

    let mut exact_points: Vec<Rat> = Vec::new();
    let (mut open, chain) = loop {
        if sf.degree().is_none_or(|d| d == 0) {
            break (Vec::new(), None);
        }
        let chain = SturmChain::new(&sf);
        let mut stack = vec![(lo.clone(), hi.clone())];
        let mut out: Vec<Interval> = Vec::new();
        let mut hit: Option<Rat> = None;
        while let Some((a, b)) = stack.pop() {
            match chain.count_open(&a, &b) {
                0 => {}
                1 => out.push(Interval::new(a, b)),
                _ => {
                    let mid = (&a + &b) / rat_i64(2);
                    if sf.eval(&mid).is_zero() {
                        hit = Some(mid);
                        break;
                    }
                    stack.push((a, mid.clone()));
                    stack.push((mid, b));
                }
            }
        }
        match hit {
            Some(point) => {
                sf = deflate(&sf, &point);
                exact_points.push(point);
            }
            None => break (out, Some(chain)),
        }
    };

    // Exact hits were divided out before the surviving intervals were
    // isolated, so an interval may still straddle one; split it off.
    if let Some(chain) = &chain {
        for iv in &mut open {
            loop {
                let inside = exact_points
                    .iter()
                    .find(|p| iv.lo < **p && **p < iv.hi)
                    .cloned();
                match inside {
                    None => break,
                    Some(p) => {
                        if chain.count_open(&iv.lo, &p) == 1 {
                            iv.hi = p;
                        } else {
                            iv.lo = p;
                        }
                    }
                }
            }
        }
    }

    let mut all = open;
    all.extend(exact_points.into_iter().map(Interval::point));
    all.sort_by(|x, y| x.lo.cmp(&y.lo).then(x.hi.cmp(&y.hi)));
    Ok(all)
}

/// Isolating intervals for the distinct positive roots of `f`, inside
/// `(0, B)` with `B` the Cauchy bound of the square-free part.
pub fn isolate_positive_roots(f: &Polynomial) -> Result<Vec<Interval>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("isolate_positive_roots"));
    }
    let sf = f.square_free_part()?;
    if sf.degree().is_none_or(|d| d == 0) {
        return Ok(Vec::new());
    }
    let bound = cauchy_bound(&sf)?;
    isolate_roots_in(f, &Rat::zero(), &bound)
}

/// Shrink an isolating interval to width `tol` by bisection with exact
/// signs. Falls back to Sturm-guided bisection when an endpoint evaluates
/// to zero (possible when an adjacent root sits exactly on the boundary).
pub fn refine_root(f: &Polynomial, iv: &Interval, tol: &Rat) -> Result<RefinedRoot> {
    if tol <= &Rat::zero() {
        return Err(Error::InvalidTolerance);
    }
    let sf = f.square_free_part()?;
    if iv.is_point() {
        if sf.eval(&iv.lo).is_zero() {
            return Ok(RefinedRoot {
                enclosure: iv.clone(),
                value: iv.lo.clone(),
                exact: true,
            });
        }
        return Err(Error::NoBracket);
    }
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let s_lo = sign(&sf.eval(&lo));
    let s_hi = sign(&sf.eval(&hi));

    if s_lo != 0 && s_hi != 0 && s_lo != s_hi {
        let mut s_lo = s_lo;
        while &hi - &lo > *tol {
            let mid = (&lo + &hi) / rat_i64(2);
            let sm = sign(&sf.eval(&mid));
            if sm == 0 {
                return Ok(RefinedRoot {
                    enclosure: Interval::point(mid.clone()),
                    value: mid,
                    exact: true,
                });
            }
            if sm == s_lo {
                lo = mid;
                s_lo = sm;
            } else {
                hi = mid;
            }
        }
    } else {
        // Endpoint root or equal signs: decide sides by Sturm counts.
        let deflated = deflate(&deflate(&sf, &lo), &hi);
        if deflated.degree().is_none_or(|d| d == 0) {
            return Err(Error::NoBracket);
        }
        let chain = SturmChain::new(&deflated);
        match chain.count_open(&lo, &hi) {
            1 => {}
            0 => return Err(Error::NoBracket),
            n => {
                return Err(Error::Internal(format!(
                    "refine_root given an interval with {n} roots"
                )))
            }
        }
        while &hi - &lo > *tol {
            let mid = (&lo + &hi) / rat_i64(2);
            if deflated.eval(&mid).is_zero() {
                return Ok(RefinedRoot {
                    enclosure: Interval::point(mid.clone()),
                    value: mid,
                    exact: true,
                });
            }
            if chain.count_open(&lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    let enclosure = Interval::new(lo, hi);
    let value = enclosure.midpoint();
    Ok(RefinedRoot {
        enclosure,
        value,
        exact: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;
    use num_traits::Signed;

    fn p(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_i64(coeffs)
    }

    /// x^3 - 3x^2 + 2x - 1/3, the recurring example cubic.
    fn example_cubic() -> Polynomial {
        Polynomial::from_coeffs(vec![ratio(-1, 3), rat_i64(2), rat_i64(-3), rat_i64(1)])
    }

    #[test]
    fn cauchy_bounds() {
        assert_eq!(cauchy_bound(&p(&[-1, 0, 1])).unwrap(), rat_i64(2));
        assert_eq!(cauchy_bound(&p(&[-1, -1, 1, 1])).unwrap(), rat_i64(2));
        assert_eq!(cauchy_bound(&example_cubic()).unwrap(), rat_i64(4));
    }

    #[test]
    fn sturm_counts() {
        let f = p(&[-1, 0, 1]);
        assert_eq!(sturm_count(&f, &rat_i64(-2), &rat_i64(2)).unwrap(), 2);
        assert_eq!(sturm_count(&f, &rat_i64(0), &rat_i64(2)).unwrap(), 1);
        assert_eq!(
            sturm_count(&example_cubic(), &rat_i64(0), &rat_i64(4)).unwrap(),
            3
        );
        assert!(sturm_count(&f, &rat_i64(2), &rat_i64(-2)).is_err());
    }

    #[test]
    fn sturm_ignores_endpoint_roots() {
        // roots 1 and 2; open (1, 2) holds none, (0, 2) holds one
        let f = p(&[2, -3, 1]);
        assert_eq!(sturm_count(&f, &rat_i64(1), &rat_i64(2)).unwrap(), 0);
        assert_eq!(sturm_count(&f, &rat_i64(0), &rat_i64(2)).unwrap(), 1);
        // multiple roots are counted once
        let g = p(&[-1, -1, 1, 1]); // (x-1)(x+1)^2
        assert_eq!(sturm_count(&g, &rat_i64(-3), &rat_i64(3)).unwrap(), 2);
    }

    #[test]
    fn isolate_no_positive_roots() {
        assert!(isolate_positive_roots(&p(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn isolate_single_positive_root() {
        let f = p(&[-1, -1, 1, 1]);
        let ivs = isolate_positive_roots(&f).unwrap();
        assert_eq!(ivs.len(), 1);
        assert!(ivs[0].contains(&rat_i64(1)));
    }

    #[test]
    fn isolate_example_cubic_roots() {
        let ivs = isolate_positive_roots(&example_cubic()).unwrap();
        assert_eq!(ivs.len(), 3);
        let brackets = [
            (ratio(2, 10), ratio(3, 10)),
            (ratio(3, 10), rat_i64(1)),
            (rat_i64(2), ratio(5, 2)),
        ];
        for (iv, (blo, bhi)) in ivs.iter().zip(brackets.iter()) {
            let refined = refine_root(&example_cubic(), iv, &ratio(1, 1_000_000)).unwrap();
            assert!(&refined.value > blo && &refined.value < bhi);
        }
    }

    #[test]
    fn refine_sqrt2() {
        let f = p(&[-2, 0, 1]);
        let tol = ratio(1, 1_000_000);
        let r = refine_root(&f, &Interval::new(rat_i64(1), rat_i64(2)), &tol).unwrap();
        assert!(r.enclosure.width() <= tol);
        // the enclosure brackets sqrt(2): f changes sign across it
        assert!(f.eval(&r.enclosure.lo).is_negative());
        assert!(f.eval(&r.enclosure.hi).is_positive());
    }

    #[test]
    fn refine_exact_hit() {
        let f = p(&[-1, -1, 1, 1]);
        let r = refine_root(
            &f,
            &Interval::new(ratio(1, 2), ratio(3, 2)),
            &ratio(1, 1_000_000_000),
        )
        .unwrap();
        assert!(r.exact);
        assert_eq!(r.value, rat_i64(1));
    }

    #[test]
    fn refine_rejects_empty_bracket() {
        let f = p(&[-2, 0, 1]);
        let tol = ratio(1, 100);
        assert!(matches!(
            refine_root(&f, &Interval::new(rat_i64(3), rat_i64(4)), &tol),
            Err(Error::NoBracket)
        ));
    }

    #[test]
    fn isolation_handles_exact_midpoint_hits() {
        // Roots 1, 2, 3 with bisection guaranteed to probe integers.
        let f = p(&[-6, 11, -6, 1]);
        let ivs = isolate_roots_in(&f, &rat_i64(0), &rat_i64(4)).unwrap();
        assert_eq!(ivs.len(), 3);
        for (iv, root) in ivs.iter().zip([1i64, 2, 3]) {
            assert!(iv.contains(&rat_i64(root)), "{iv:?} vs {root}");
        }
    }

    #[test]
    fn refinement_width_shrinks_monotonically() {
        let f = p(&[-2, 0, 1]);
        let mut widths = Vec::new();
        let mut tol = rat_i64(1);
        for _ in 0..6 {
            tol /= rat_i64(2);
            let r = refine_root(&f, &Interval::new(rat_i64(1), rat_i64(2)), &tol).unwrap();
            widths.push(r.enclosure.width());
        }
        for w in widths.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }
}
