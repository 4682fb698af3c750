//! Rational interval arithmetic for certifying numeric-mode sign
//! decisions.
//!
//! Moments obtained by quadrature carry error bounds; propagating those
//! bounds as exact rational intervals through the minor computation tells
//! us whether every discriminant sign is determined at the given
//! tolerance. An interval straddling zero yields `SignOf::Unknown` and the
//! enclosing report is downgraded to uncertified.

use num_traits::{Signed, Zero};

use crate::rat::{sign, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignOf {
    Negative,
    Zero,
    Positive,
    Unknown,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn exact(v: Rat) -> Self {
        RatInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn centered(center: &Rat, radius: &Rat) -> Self {
        assert!(!radius.is_negative());
        RatInterval {
            lo: center - radius,
            hi: center + radius,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        RatInterval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        RatInterval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn neg(&self) -> Self {
        RatInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    /// Division; `None` when the divisor straddles zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let quotients = [
            &self.lo / &o.lo,
            &self.lo / &o.hi,
            &self.hi / &o.lo,
            &self.hi / &o.hi,
        ];
        let lo = quotients.iter().min().unwrap().clone();
        let hi = quotients.iter().max().unwrap().clone();
        Some(RatInterval { lo, hi })
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn sign_of(&self) -> SignOf {
        if self.lo.is_zero() && self.hi.is_zero() {
            SignOf::Zero
        } else if self.lo.is_positive() {
            SignOf::Positive
        } else if self.hi.is_negative() {
            SignOf::Negative
        } else {
            SignOf::Unknown
        }
    }
}

impl SignOf {
    pub fn decided(self) -> Option<i8> {
        match self {
            SignOf::Negative => Some(-1),
            SignOf::Zero => Some(0),
            SignOf::Positive => Some(1),
            SignOf::Unknown => None,
        }
    }

    pub fn of_exact(v: &Rat) -> SignOf {
        match sign(v) {
            -1 => SignOf::Negative,
            0 => SignOf::Zero,
            _ => SignOf::Positive,
        }
    }
}

/// Determinant of the leading `order`-by-`order` submatrix in interval
/// arithmetic, by Gaussian elimination with pivots that must exclude
/// zero. Returns `SignOf::Unknown` as soon as no usable pivot exists
/// (unless the remaining column is exactly zero, which decides the
/// determinant).
#[allow(clippy::needless_range_loop)]
pub fn interval_leading_minor_sign(m: &[Vec<RatInterval>], order: usize) -> SignOf {
    let mut a: Vec<Vec<RatInterval>> = m
        .iter()
        .take(order)
        .map(|row| row[..order].to_vec())
        .collect();
    let mut negate = false;
    for k in 0..order {
        let pivot_row = (k..order).find(|&i| !a[i][k].contains_zero());
        let pivot_row = match pivot_row {
            Some(i) => i,
            None => {
                // No certain pivot: exactly-zero column still decides.
                let all_exact_zero =
                    (k..order).all(|i| a[i][k].lo.is_zero() && a[i][k].hi.is_zero());
                return if all_exact_zero {
                    SignOf::Zero
                } else {
                    SignOf::Unknown
                };
            }
        };
        if pivot_row != k {
            a.swap(k, pivot_row);
            negate = !negate;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..order {
            let factor = match a[i][k].div(&pivot) {
                Some(f) => f,
                None => return SignOf::Unknown,
            };
            for j in k..order {
                let delta = factor.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&delta);
            }
        }
    }
    let mut det_sign = SignOf::Positive;
    for k in 0..order {
        det_sign = match (det_sign, a[k][k].sign_of()) {
            (_, SignOf::Unknown) => return SignOf::Unknown,
            (_, SignOf::Zero) => return SignOf::Zero,
            (SignOf::Positive, s) => s,
            (SignOf::Negative, SignOf::Positive) => SignOf::Negative,
            (SignOf::Negative, SignOf::Negative) => SignOf::Positive,
            _ => unreachable!(),
        };
    }
    if negate {
        det_sign = match det_sign {
            SignOf::Positive => SignOf::Negative,
            SignOf::Negative => SignOf::Positive,
            s => s,
        };
    }
    det_sign
}
