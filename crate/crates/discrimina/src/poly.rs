//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are stored in ascending degree order: `coeffs[k]` is the
//! coefficient of `x^k`. The representation is canonical: the vector is
//! empty for the zero polynomial and the last entry is nonzero otherwise.
//! File formats downstream are ascending-degree as well; the descending
//! convention used in classical displays is converted internally where a
//! construction calls for it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{rat_i64, sign, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rat::one())
    }

    pub fn x() -> Self {
        Polynomial::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { coeffs: vec![c] }
        }
    }

    pub fn monomial(c: Rat, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial { coeffs }
    }

    /// Ascending-degree coefficients; trailing zeros are stripped.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` marks the zero polynomial (degree -infinity).
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0)
    }

    /// Horner evaluation; exact.
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
            acc = acc * x + crate::rat::to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat_i64(k as i64))
            .collect();
        Polynomial::from_coeffs(coeffs)
    }

    /// Exact antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Polynomial {
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k + 1] = c / rat_i64((k + 1) as i64);
        }
        Polynomial::from_coeffs(coeffs)
    }

    /// The composition f(-x).
    pub fn neg_x(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect();
        Polynomial::from_coeffs(coeffs)
    }

    /// The even composition f(x^2): interleaves the coefficients with zeros.
    pub fn compose_x_squared(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); 2 * self.coeffs.len() - 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        Polynomial::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Polynomial::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Polynomial::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }

    pub fn pow(&self, k: usize) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division. Panics if `rhs` is zero.
    pub fn div_rem(&self, rhs: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let d = rhs.coeffs.len();
        if self.coeffs.len() < d {
            return (Polynomial::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len() - d + 1];
        let lead = rhs.coeffs.last().unwrap();
        for k in (0..quot.len()).rev() {
            let factor = &rem[k + d - 1] / lead;
            if !factor.is_zero() {
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    rem[k + j] -= &factor * b;
                }
            }
            quot[k] = factor;
        }
        rem.truncate(d - 1);
        (Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem))
    }

    pub fn divides_exactly(&self, divisor: &Polynomial) -> bool {
        let (_, r) = self.div_rem(divisor);
        r.is_zero()
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some(lead) => {
                let inv = Rat::one() / lead;
                self.scale(&inv)
            }
        }
    }

    /// Scale to integer coefficients with content 1, preserving the sign of
    /// the leading coefficient. The scaling factor is positive.
    pub fn primitive_int(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        Polynomial::from_coeffs(
            ints.into_iter()
                .map(|v| Rat::from_integer(v / &content))
                .collect(),
        )
    }

    /// Polynomial gcd by the Euclidean remainder sequence, with each
    /// remainder renormalized to a primitive integer polynomial to contain
    /// coefficient growth. The result is monic.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.primitive_int();
        let mut b = other.primitive_int();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_int();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic: same distinct roots as `p`, all simple.
    pub fn square_free_part(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("square_free_part"));
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero(), "gcd must divide its input exactly");
        Ok(q.monic())
    }

    /// Factor out `x^k`; returns the cofactor and the multiplicity `k` of
    /// the zero root.
    pub fn strip_zero_roots(&self) -> (Polynomial, usize) {
        if self.is_zero() {
            return (Polynomial::zero(), 0);
        }
        let k = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        (Polynomial::from_coeffs(self.coeffs[k..].to_vec()), k)
    }

    /// Descending-degree coefficient view `[a_0, a_1, ..., a_n]` as used by
    /// classical matrix displays.
    pub fn descending_coeffs(&self) -> Vec<Rat> {
        self.coeffs.iter().rev().cloned().collect()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sgn, mag) = if sign(c) < 0 {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sgn == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sgn} ")?;
            }
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => {
                    if show_coeff {
                        write!(f, "*x")?;
                    } else {
                        write!(f, "x")?;
                    }
                }
                _ => {
                    if show_coeff {
                        write!(f, "*x^{k}")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
