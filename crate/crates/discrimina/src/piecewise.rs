//! Exact piecewise polynomials on [0,1]: the kernel-factor representation.
//!
//! A `PiecewisePoly` is a strictly ascending breakpoint grid starting at 0
//! and ending at 1, with one polynomial per cell. The value on a cell
//! `[b_i, b_{i+1})` is the cell's polynomial (the last cell is closed).
//! `max{affine, affine}` inputs are converted to breakpointed form at
//! construction by solving the crossing exactly.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rat::{rat_i64, ratio, to_f64, Rat};
use crate::rootfind::{isolate_roots_in, refine_root, Interval};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePoly {
    breakpoints: Vec<Rat>,
    pieces: Vec<Polynomial>,
}

impl PiecewisePoly {
    pub fn new(breakpoints: Vec<Rat>, pieces: Vec<Polynomial>) -> Result<Self> {
        if breakpoints.len() < 2 || pieces.len() + 1 != breakpoints.len() {
            return Err(Error::PiecewiseInvalid(format!(
                "{} breakpoints with {} pieces",
                breakpoints.len(),
                pieces.len()
            )));
        }
        if breakpoints.first() != Some(&Rat::zero()) || breakpoints.last() != Some(&rat_i64(1)) {
            return Err(Error::PiecewiseInvalid(
                "breakpoints must start at 0 and end at 1".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::PiecewiseInvalid(
                "breakpoints must be strictly ascending".into(),
            ));
        }
        Ok(PiecewisePoly {
            breakpoints,
            pieces,
        })
    }

    pub fn constant(c: Rat) -> Self {
        PiecewisePoly {
            breakpoints: vec![Rat::zero(), rat_i64(1)],
            pieces: vec![Polynomial::constant(c)],
        }
    }

    /// `max(a0 + a1 x, b0 + b1 x)` on [0,1], with the crossing solved
    /// exactly when it falls strictly inside the interval.
    pub fn from_max_affine(a: (Rat, Rat), b: (Rat, Rat)) -> Self {
        let line_a = Polynomial::from_coeffs(vec![a.0.clone(), a.1.clone()]);
        let line_b = Polynomial::from_coeffs(vec![b.0.clone(), b.1.clone()]);
        let single = |p: Polynomial| PiecewisePoly {
            breakpoints: vec![Rat::zero(), rat_i64(1)],
            pieces: vec![p],
        };
        if a.1 == b.1 {
            return single(if a.0 >= b.0 { line_a } else { line_b });
        }
        let crossing = (&b.0 - &a.0) / (&a.1 - &b.1);
        if crossing <= Rat::zero() || crossing >= rat_i64(1) {
            let mid = ratio(1, 2);
            return single(if line_a.eval(&mid) >= line_b.eval(&mid) {
                line_a
            } else {
                line_b
            });
        }
        // Left of the crossing the smaller slope dominates.
        let (left, right) = if a.1 < b.1 {
            (line_a, line_b)
        } else {
            (line_b, line_a)
        };
        PiecewisePoly {
            breakpoints: vec![Rat::zero(), crossing, rat_i64(1)],
            pieces: vec![left, right],
        }
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    fn piece_index(&self, x: &Rat) -> usize {
        debug_assert!(x >= &Rat::zero() && x <= &rat_i64(1));
        match self.breakpoints.binary_search(x) {
            Ok(i) => i.min(self.pieces.len() - 1),
            Err(i) => i - 1,
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.pieces[self.piece_index(x)].eval(x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let x = x.clamp(0.0, 1.0);
        let mut idx = self.pieces.len() - 1;
        for (i, w) in self.breakpoints.windows(2).enumerate() {
            if x < to_f64(&w[1]) {
                idx = i;
                break;
            }
        }
        self.pieces[idx].eval_f64(x)
    }

    pub fn is_identically_zero(&self) -> bool {
        self.pieces.iter().all(Polynomial::is_zero)
    }

    /// Re-express on a refined grid containing the given extra breakpoints;
    /// the represented function is unchanged.
    pub fn refine_with(&self, extra: &[Rat]) -> Self {
        let mut grid = self.breakpoints.clone();
        for t in extra {
            if t > &Rat::zero() && t < &rat_i64(1) && !grid.contains(t) {
                grid.push(t.clone());
            }
        }
        grid.sort();
        let pieces = grid
            .windows(2)
            .map(|w| {
                let mid = (&w[0] + &w[1]) / rat_i64(2);
                self.pieces[self.piece_index(&mid)].clone()
            })
            .collect();
        PiecewisePoly {
            breakpoints: grid,
            pieces,
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Self {
        let mut grid = self.breakpoints.clone();
        for t in &other.breakpoints {
            if !grid.contains(t) {
                grid.push(t.clone());
            }
        }
        grid.sort();
        let pieces = grid
            .windows(2)
            .map(|w| {
                let mid = (&w[0] + &w[1]) / rat_i64(2);
                f(
                    &self.pieces[self.piece_index(&mid)],
                    &other.pieces[other.piece_index(&mid)],
                )
            })
            .collect();
        PiecewisePoly {
            breakpoints: grid,
            pieces,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |p, q| p.add(q))
    }

    /// Piecewise product over the merged breakpoint grid.
    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, |p, q| p.mul(q))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        PiecewisePoly {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        PiecewisePoly {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.pow(k)).collect(),
        }
    }

    /// Exact integral over [0,1]: antiderivative evaluation per cell.
    pub fn integrate01(&self) -> Rat {
        let mut total = Rat::zero();
        for (w, piece) in self.breakpoints.windows(2).zip(&self.pieces) {
            let anti = piece.antiderivative();
            total += anti.eval(&w[1]) - anti.eval(&w[0]);
        }
        total
    }

    /// Certify `f >= 0` on [0,1]. Distinct roots of each cell polynomial
    /// are isolated inside the open cell and refined until separated; one
    /// exact sample per root-free gap then decides the sign of that gap.
    pub fn check_nonnegative(&self, label: &str) -> Result<()> {
        for (w, piece) in self.breakpoints.windows(2).zip(&self.pieces) {
            if piece.is_zero() {
                continue;
            }
            let (lo, hi) = (&w[0], &w[1]);
            for end in [lo, hi] {
                if piece.eval(end).is_negative() {
                    return Err(Error::PositivityViolation(format!(
                        "{label} is negative at x = {end}"
                    )));
                }
            }
            let enclosures = isolate_roots_in(piece, lo, hi)?;
            let gaps = separated_gap_samples(piece, &enclosures, lo, hi)?;
            for x in gaps {
                let v = piece.eval(&x);
                debug_assert!(!v.is_zero(), "gap sample landed on a root");
                if v.is_negative() {
                    return Err(Error::PositivityViolation(format!(
                        "{label} is negative at x = {x}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One sample point strictly between consecutive roots (and between the
/// cell boundary and the outermost roots). Enclosures are refined until
/// they are pairwise separated and clear of the boundaries.
fn separated_gap_samples(
    piece: &Polynomial,
    enclosures: &[Interval],
    lo: &Rat,
    hi: &Rat,
) -> Result<Vec<Rat>> {
    if enclosures.is_empty() {
        return Ok(vec![(lo + hi) / rat_i64(2)]);
    }
    let mut tol = (hi - lo) / rat_i64(16);
    for _ in 0..128 {
        let refined: Vec<Interval> = enclosures
            .iter()
            .map(|iv| refine_root(piece, iv, &tol).map(|r| r.enclosure))
            .collect::<Result<Vec<_>>>()?;
        let clear_of_bounds =
            refined.first().is_none_or(|f| &f.lo > lo) && refined.last().is_none_or(|l| &l.hi < hi);
        let separated = refined.windows(2).all(|p| p[0].hi < p[1].lo);
        if clear_of_bounds && separated {
            let mut samples = Vec::with_capacity(refined.len() + 1);
            samples.push((lo + &refined[0].lo) / rat_i64(2));
            for pair in refined.windows(2) {
                samples.push((&pair[0].hi + &pair[1].lo) / rat_i64(2));
            }
            samples.push((&refined.last().unwrap().hi + hi) / rat_i64(2));
            return Ok(samples);
        }
        tol /= rat_i64(16);
    }
    Err(Error::Internal(
        "root enclosures could not be separated".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn half_ramp() -> PiecewisePoly {
        // max(0, 1 - 2x): 1-2x on [0,1/2], 0 on [1/2,1]
        PiecewisePoly::from_max_affine((Rat::zero(), Rat::zero()), (rat_i64(1), rat_i64(-2)))
    }

    #[test]
    fn max_affine_crossing_is_exact() {
        let f = half_ramp();
        assert_eq!(f.breakpoints(), &[Rat::zero(), ratio(1, 2), rat_i64(1)]);
        assert_eq!(f.eval(&Rat::zero()), rat_i64(1));
        assert_eq!(f.eval(&ratio(3, 4)), Rat::zero());
        // max(6, 272y - 130) crosses at exactly 1/2
        let g = PiecewisePoly::from_max_affine(
            (rat_i64(6), Rat::zero()),
            (rat_i64(-130), rat_i64(272)),
        );
        assert_eq!(g.breakpoints(), &[Rat::zero(), ratio(1, 2), rat_i64(1)]);
        assert_eq!(g.eval(&ratio(1, 4)), rat_i64(6));
        assert_eq!(g.eval(&rat_i64(1)), rat_i64(142));
    }

    #[test]
    fn max_affine_outside_unit_interval() {
        // max(2, x): 2 wins everywhere on [0,1] (crossing at x=2)
        let f =
            PiecewisePoly::from_max_affine((rat_i64(2), Rat::zero()), (Rat::zero(), rat_i64(1)));
        assert_eq!(f.breakpoints().len(), 2);
        assert_eq!(f.eval(&rat_i64(1)), rat_i64(2));
        // parallel lines: larger intercept wins
        let g = PiecewisePoly::from_max_affine((rat_i64(1), rat_i64(3)), (rat_i64(2), rat_i64(3)));
        assert_eq!(g.eval(&Rat::zero()), rat_i64(2));
    }

    #[test]
    fn multiply_identity() {
        let one = PiecewisePoly::constant(rat_i64(1));
        let g = half_ramp();
        assert_eq!(one.mul(&g), g);
    }

    #[test]
    fn square_of_ramp() {
        let f = half_ramp();
        let sq = f.mul(&f);
        assert_eq!(sq.pieces()[0], Polynomial::from_i64(&[1, -4, 4]));
        assert!(sq.pieces()[1].is_zero());
        // 18 * max(0, 1-2y)^2 integrates to 3
        assert_eq!(sq.scale(&rat_i64(18)).integrate01(), rat_i64(3));
    }

    #[test]
    fn merged_grids() {
        let third = PiecewisePoly::new(
            vec![Rat::zero(), ratio(1, 3), rat_i64(1)],
            vec![Polynomial::one(), Polynomial::x()],
        )
        .unwrap();
        let product = third.mul(&half_ramp());
        assert_eq!(
            product.breakpoints(),
            &[Rat::zero(), ratio(1, 3), ratio(1, 2), rat_i64(1)]
        );
    }

    #[test]
    fn integrates_simple_cases() {
        assert_eq!(
            PiecewisePoly::constant(rat_i64(1)).integrate01(),
            rat_i64(1)
        );
        // y * (6/5)y over [0,1] = 2/5
        let y = PiecewisePoly::new(vec![Rat::zero(), rat_i64(1)], vec![Polynomial::x()]).unwrap();
        let phi = y.scale(&ratio(6, 5));
        assert_eq!(y.mul(&phi).integrate01(), ratio(2, 5));
    }

    #[test]
    fn refinement_does_not_change_integrals() {
        let f = half_ramp();
        let refined = f.refine_with(&[ratio(1, 7), ratio(2, 3)]);
        assert_eq!(refined.breakpoints().len(), 5);
        assert_eq!(f.integrate01(), refined.integrate01());
        assert_eq!(f.eval(&ratio(1, 7)), refined.eval(&ratio(1, 7)));
    }

    #[test]
    fn nonnegativity_checks() {
        assert!(half_ramp().check_nonnegative("phi").is_ok());
        // x - 1/2 dips negative on [0, 1/2)
        let bad = PiecewisePoly::new(
            vec![Rat::zero(), rat_i64(1)],
            vec![Polynomial::from_coeffs(vec![ratio(-1, 2), rat_i64(1)])],
        )
        .unwrap();
        assert!(bad.check_nonnegative("phi").is_err());
        // touching zero from above is allowed: (x - 1/2)^2
        let touch = PiecewisePoly::new(
            vec![Rat::zero(), rat_i64(1)],
            vec![Polynomial::from_coeffs(vec![
                ratio(1, 4),
                rat_i64(-1),
                rat_i64(1),
            ])],
        )
        .unwrap();
        assert!(touch.check_nonnegative("phi").is_ok());
        // negative dip with nonnegative endpoints: -(x-1/4)(x-3/4)... sign flipped
        let dip = PiecewisePoly::new(
            vec![Rat::zero(), rat_i64(1)],
            vec![Polynomial::from_coeffs(vec![
                ratio(3, 16),
                rat_i64(-1),
                rat_i64(1),
            ])],
        )
        .unwrap();
        assert!(dip.check_nonnegative("phi").is_err());
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(PiecewisePoly::new(vec![Rat::zero()], vec![]).is_err());
        assert!(
            PiecewisePoly::new(vec![Rat::zero(), ratio(1, 2)], vec![Polynomial::one()]).is_err()
        );
        assert!(PiecewisePoly::new(
            vec![Rat::zero(), ratio(1, 2), ratio(1, 2), rat_i64(1)],
            vec![Polynomial::one(), Polynomial::one(), Polynomial::one()]
        )
        .is_err());
    }
}
