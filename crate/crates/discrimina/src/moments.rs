//! Kernel moments and the coefficient vector of the reduced equation.
//!
//! For a rank-2 kernel k(x,y) = phi1(x) psi1(y) + phi2(x) psi2(y) and
//! exponent n, the moment tables are
//!
//!   a_i = C(n,i) * int_0^1 psi1 phi1^(n-i) phi2^i,
//!   b_i = C(n,i) * int_0^1 psi2 phi1^(n-i) phi2^i,   i = 0..n,
//!
//! and the alpha-vector alpha_0 = b_0, alpha_i = b_i - a_{i-1},
//! alpha_{n+1} = -a_n collects the coefficients of the degree-(n+1)
//! polynomial whose positive roots are in bijection with the positive
//! solutions. alpha_0 > 0 and alpha_{n+1} < 0 always hold for a valid
//! kernel; violations signal a moment-computation bug and are rejected.
//!
//! Factor positivity is enforced in the relaxed form "nonnegative on
//! [0,1] and not identically zero": kernels of interest may vanish on a
//! subinterval while every sign invariant actually consumed downstream
//! still holds.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::piecewise::PiecewisePoly;
use crate::poly::Polynomial;
use crate::rat::Rat;

/// Exact binomial coefficient by the multiplicative formula.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// The four kernel factors and the exponent n.
#[derive(Clone, Debug)]
pub struct KernelSpec {
    phi1: PiecewisePoly,
    phi2: PiecewisePoly,
    psi1: PiecewisePoly,
    psi2: PiecewisePoly,
    n: usize,
}

impl KernelSpec {
    pub fn new(
        phi1: PiecewisePoly,
        phi2: PiecewisePoly,
        psi1: PiecewisePoly,
        psi2: PiecewisePoly,
        n: usize,
    ) -> Result<Self> {
        if n < 1 {
            return Err(Error::SchemaViolation("n must be at least 1".into()));
        }
        for (label, f) in [
            ("phi1", &phi1),
            ("phi2", &phi2),
            ("psi1", &psi1),
            ("psi2", &psi2),
        ] {
            f.check_nonnegative(label)?;
            if f.is_identically_zero() {
                return Err(Error::PositivityViolation(format!(
                    "{label} is identically zero"
                )));
            }
        }
        Ok(KernelSpec {
            phi1,
            phi2,
            psi1,
            psi2,
            n,
        })
    }

    pub fn phi1(&self) -> &PiecewisePoly {
        &self.phi1
    }

    pub fn phi2(&self) -> &PiecewisePoly {
        &self.phi2
    }

    pub fn psi1(&self) -> &PiecewisePoly {
        &self.psi1
    }

    pub fn psi2(&self) -> &PiecewisePoly {
        &self.psi2
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The same kernel with (phi1, psi1) and (phi2, psi2) exchanged; the
    /// represented kernel function is identical.
    pub fn swapped(&self) -> Self {
        KernelSpec {
            phi1: self.phi2.clone(),
            phi2: self.phi1.clone(),
            psi1: self.psi2.clone(),
            psi2: self.psi1.clone(),
            n: self.n,
        }
    }
}

/// Moment rows `a` and `b`, index i = 0..=n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTable {
    pub a: Vec<Rat>,
    pub b: Vec<Rat>,
    pub n: usize,
}

impl MomentTable {
    pub fn new(a: Vec<Rat>, b: Vec<Rat>, n: usize) -> Result<Self> {
        if a.len() != n + 1 || b.len() != n + 1 {
            return Err(Error::Internal(format!(
                "moment rows must have length {}, got {} and {}",
                n + 1,
                a.len(),
                b.len()
            )));
        }
        if a.iter().chain(b.iter()).any(|v| v.is_negative()) {
            return Err(Error::PositivityViolation(
                "moment entries must be nonnegative".into(),
            ));
        }
        Ok(MomentTable { a, b, n })
    }

    /// Moment table of the factor-swapped kernel: each row reverses into
    /// the other row.
    pub fn swapped(&self) -> Self {
        MomentTable {
            a: self.b.iter().rev().cloned().collect(),
            b: self.a.iter().rev().cloned().collect(),
            n: self.n,
        }
    }
}

/// Exact moment integrals via piecewise-polynomial algebra.
pub fn compute_moments(k: &KernelSpec) -> Result<MomentTable> {
    let n = k.n;
    let mut a = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let weight = Rat::from_integer(binomial(n, i));
        let product = k.phi1.pow(n - i).mul(&k.phi2.pow(i));
        a.push(k.psi1.mul(&product).integrate01() * &weight);
        b.push(k.psi2.mul(&product).integrate01() * &weight);
    }
    MomentTable::new(a, b, n)
}

/// Coefficients alpha_0..alpha_{n+1} of the reduced polynomial, with the
/// sign invariants alpha_0 > 0 and alpha_{n+1} < 0 enforced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaVector {
    alpha: Vec<Rat>,
}

impl AlphaVector {
    pub fn new(alpha: Vec<Rat>) -> Result<Self> {
        if alpha.len() < 3 {
            return Err(Error::AlphaSign(
                "alpha-vector must have length n + 2 with n >= 1".into(),
            ));
        }
        if !alpha[0].is_positive() {
            return Err(Error::AlphaSign(format!(
                "alpha_0 = {} must be positive",
                alpha[0]
            )));
        }
        if !alpha[alpha.len() - 1].is_negative() {
            return Err(Error::AlphaSign(format!(
                "alpha_{} = {} must be negative",
                alpha.len() - 1,
                alpha[alpha.len() - 1]
            )));
        }
        Ok(AlphaVector { alpha })
    }

    pub fn n(&self) -> usize {
        self.alpha.len() - 2
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.alpha
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.alpha[i]
    }

    /// g(x) = sum_i alpha_i x^(n+1-i), the reduced degree-(n+1) polynomial.
    pub fn reduced_poly(&self) -> Polynomial {
        Polynomial::from_coeffs(self.alpha.iter().rev().cloned().collect())
    }

    /// f(s) = g(s^2), the even companion of degree 2(n+1).
    pub fn even_poly(&self) -> Polynomial {
        self.reduced_poly().compose_x_squared()
    }
}

pub fn assemble_alpha(m: &MomentTable) -> Result<AlphaVector> {
    let n = m.n;
    let mut alpha = Vec::with_capacity(n + 2);
    alpha.push(m.b[0].clone());
    for i in 1..=n {
        alpha.push(&m.b[i] - &m.a[i - 1]);
    }
    alpha.push(-&m.a[n]);
    AlphaVector::new(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_i64, ratio};

    #[test]
    fn binomials() {
        assert_eq!(binomial(2, 0), BigInt::from(1));
        assert_eq!(binomial(2, 1), BigInt::from(2));
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    fn const_kernel(value: i64, n: usize) -> KernelSpec {
        // k = 1*1 + 1*(value-1) so that k(x,y) == value
        KernelSpec::new(
            PiecewisePoly::constant(rat_i64(1)),
            PiecewisePoly::constant(rat_i64(1)),
            PiecewisePoly::constant(rat_i64(1)),
            PiecewisePoly::constant(rat_i64(value - 1)),
            n,
        )
        .unwrap()
    }

    #[test]
    fn constant_kernel_moments() {
        // phi = psi = 1 throughout: a = b = binomial row
        let k = KernelSpec::new(
            PiecewisePoly::constant(rat_i64(1)),
            PiecewisePoly::constant(rat_i64(1)),
            PiecewisePoly::constant(rat_i64(1)),
            PiecewisePoly::constant(rat_i64(1)),
            2,
        )
        .unwrap();
        let m = compute_moments(&k).unwrap();
        assert_eq!(m.a, vec![rat_i64(1), rat_i64(2), rat_i64(1)]);
        assert_eq!(m.b, m.a);
    }

    #[test]
    fn constant_kernel_alpha() {
        let m = compute_moments(&const_kernel(2, 2)).unwrap();
        let alpha = assemble_alpha(&m).unwrap();
        assert_eq!(
            alpha.as_slice(),
            &[rat_i64(1), rat_i64(1), rat_i64(-1), rat_i64(-1)]
        );
        assert_eq!(alpha.reduced_poly(), Polynomial::from_i64(&[-1, -1, 1, 1]));
        assert_eq!(
            alpha.even_poly(),
            Polynomial::from_i64(&[-1, 0, -1, 0, 1, 0, 1])
        );
    }

    #[test]
    fn alpha_sign_invariants_enforced() {
        assert!(AlphaVector::new(vec![rat_i64(0), rat_i64(1), rat_i64(-1)]).is_err());
        assert!(AlphaVector::new(vec![rat_i64(1), rat_i64(1), rat_i64(0)]).is_err());
        assert!(AlphaVector::new(vec![rat_i64(1), rat_i64(-1)]).is_err());
        assert!(AlphaVector::new(vec![rat_i64(1), rat_i64(5), rat_i64(-1)]).is_ok());
    }

    #[test]
    fn swap_reverses_rows() {
        let m = MomentTable::new(
            vec![rat_i64(1), rat_i64(2), rat_i64(3)],
            vec![ratio(1, 2), ratio(3, 2), ratio(5, 2)],
            2,
        )
        .unwrap();
        let s = m.swapped();
        assert_eq!(s.a, vec![ratio(5, 2), ratio(3, 2), ratio(1, 2)]);
        assert_eq!(s.b, vec![rat_i64(3), rat_i64(2), rat_i64(1)]);
    }

    #[test]
    fn rejects_zero_factor() {
        let zero = PiecewisePoly::constant(Rat::zero());
        assert!(KernelSpec::new(
            zero,
            PiecewisePoly::constant(rat_i64(1)),
            PiecewisePoly::constant(rat_i64(1)),
            PiecewisePoly::constant(rat_i64(1)),
            1,
        )
        .is_err());
    }
}
