//! The complete discrimination system: discrimination matrix, discriminant
//! sequence, revised sign lists, and distinct-root counts.
//!
//! For f of degree n the discrimination matrix is (2n+1) x (2n+1): the
//! descending coefficient rows of f and f' interleaved, each successive
//! pair shifted one column right (n+1 rows of f, n rows of f'). The
//! discriminant sequence D_1..D_n consists of the even-order leading
//! principal minors. With mu the number of nonzero entries and nu the
//! number of sign changes in the revised sign list, f has mu - 2 nu
//! distinct real roots.
//!
//! Distinct positive roots come from the full minor sequence d_1..d_{2n+1}
//! of the matrix of h(x) = f(-x): the revised sign list of the products
//! {d_1 d_2, ..., d_{2n} d_{2n+1}} yields (mu - 2 nu) / 2 positive roots.
//! The product list mirrors the discriminant sequence of f(s^2), whose
//! real roots pair up two per positive root, hence the halving.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::moments::AlphaVector;
use crate::poly::Polynomial;
use crate::rat::{rat_i64, sign, Rat};

/// A sequence over {-1, 0, +1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignList {
    entries: Vec<i8>,
}

impl SignList {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.iter().any(|&s| !(-1..=1).contains(&s)) {
            return Err(Error::Internal("sign list entry outside {-1,0,1}".into()));
        }
        Ok(SignList { entries })
    }

    pub fn from_values(values: &[Rat]) -> Self {
        SignList {
            entries: values.iter().map(sign).collect(),
        }
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of nonzero entries.
    pub fn mu(&self) -> usize {
        self.entries.iter().filter(|&&s| s != 0).count()
    }

    /// Number of sign changes, zeros skipped.
    pub fn nu(&self) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for &s in &self.entries {
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
}

/// Fill every internal zero run of a sign list with the alternating
/// pattern (-1)^floor((r+1)/2) times the left terminator. Runs without a
/// nonzero terminator on both sides (leading or trailing) are unchanged.
pub fn revise_sign_list(s: &SignList) -> SignList {
    let mut out = s.entries.clone();
    let nonzero: Vec<usize> = s
        .entries
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, _)| i)
        .collect();
    for pair in nonzero.windows(2) {
        let (i, j) = (pair[0], pair[1]);
        let left = s.entries[i];
        for r in 1..j - i {
            let flip = r.div_ceil(2) % 2 == 1;
            out[i + r] = if flip { -left } else { left };
        }
    }
    SignList { entries: out }
}

/// The sequence D_1..D_n with exact signs; values are correct up to a
/// positive factor per entry (fraction-free row clearing).
#[derive(Clone, Debug)]
pub struct DiscriminantSequence {
    pub values: Vec<Rat>,
    pub signs: SignList,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountKind {
    DistinctReal,
    DistinctPositive,
}

/// Outcome of a sign-list count. For `DistinctReal` the count is
/// mu - 2 nu; for `DistinctPositive` it is (mu - 2 nu) / 2 because the
/// underlying product list duplicates every positive root (see module
/// docs).
#[derive(Clone, Debug)]
pub struct RootCountReport {
    pub kind: CountKind,
    pub mu: usize,
    pub nu: usize,
    pub count: usize,
    pub sign_list: SignList,
    pub revised: SignList,
}

fn report_from_values(kind: CountKind, values: &[Rat]) -> Result<RootCountReport> {
    let sign_list = SignList::from_values(values);
    let revised = revise_sign_list(&sign_list);
    let mu = revised.mu();
    let nu = revised.nu();
    let total = mu as i64 - 2 * nu as i64;
    if total < 0 {
        return Err(Error::Internal(format!(
            "negative root count mu={mu}, nu={nu}"
        )));
    }
    let count = match kind {
        CountKind::DistinctReal => total as usize,
        CountKind::DistinctPositive => {
            if total % 2 != 0 {
                return Err(Error::Internal(format!(
                    "odd paired count mu={mu}, nu={nu}"
                )));
            }
            (total / 2) as usize
        }
    };
    Ok(RootCountReport {
        kind,
        mu,
        nu,
        count,
        sign_list,
        revised,
    })
}

/// The (2n+1) x (2n+1) discrimination matrix of f: descending coefficient
/// rows of f and f' interleaved and shifted.
pub fn discrimination_matrix(f: &Polynomial) -> Result<ExactMatrix> {
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial("discrimination_matrix")),
        Some(0) => return Err(Error::ConstantPolynomial("discrimination_matrix")),
        Some(n) => n,
    };
    let size = 2 * n + 1;
    let f_desc = f.descending_coeffs();
    let fp_desc = f.derivative().descending_coeffs();
    let mut m = ExactMatrix::zero(size, size);
    for shift in 0..=n {
        for (j, c) in f_desc.iter().enumerate() {
            m.set(2 * shift, shift + j, c.clone());
        }
        if shift < n {
            for (j, c) in fp_desc.iter().enumerate() {
                m.set(2 * shift + 1, shift + 1 + j, c.clone());
            }
        }
    }
    Ok(m)
}

/// D_k = leading principal minor of order 2k, k = 1..n.
pub fn discriminant_sequence(f: &Polynomial) -> Result<DiscriminantSequence> {
    let n = f.degree().unwrap_or(0);
    let minors = discrimination_matrix(f)?.principal_minor_sequence()?;
    let values: Vec<Rat> = (1..=n).map(|k| minors[2 * k - 1].clone()).collect();
    let signs = SignList::from_values(&values);
    Ok(DiscriminantSequence { values, signs })
}

/// Distinct real roots of f: mu - 2 nu over the revised sign list of the
/// discriminant sequence.
pub fn count_distinct_real_roots(f: &Polynomial) -> Result<RootCountReport> {
    let seq = discriminant_sequence(f)?;
    report_from_values(CountKind::DistinctReal, &seq.values)
}

/// Distinct positive roots of f via the full minor sequence of the
/// discrimination matrix of h(x) = f(-x). Requires a nonzero constant
/// term: callers strip zero roots first.
pub fn count_distinct_positive_roots(f: &Polynomial) -> Result<RootCountReport> {
    match f.degree() {
        None => return Err(Error::ZeroPolynomial("count_distinct_positive_roots")),
        Some(0) => return Err(Error::ConstantPolynomial("count_distinct_positive_roots")),
        Some(_) => {}
    }
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let h = f.neg_x();
    let minors = discrimination_matrix(&h)?.principal_minor_sequence()?;
    let products: Vec<Rat> = minors.windows(2).map(|w| &w[0] * &w[1]).collect();
    report_from_values(CountKind::DistinctPositive, &products)
}

/// Closed-form cubic invariants for n = 2: p, r, t and the three deltas,
/// plus the discriminant-sequence signs [1, -p, -p d1, d1 d2, d2 d3,
/// -t d3^2] they determine.
#[derive(Clone, Debug)]
pub struct CubicInvariants {
    pub p: Rat,
    pub r: Rat,
    pub t: Rat,
    pub delta1: Rat,
    pub delta2: Rat,
    pub delta3: Rat,
    pub d_list: Vec<Rat>,
}

pub fn cubic_invariants(alpha: &AlphaVector) -> Result<CubicInvariants> {
    if alpha.n() != 2 {
        return Err(Error::WrongN {
            expected: 2,
            got: alpha.n(),
        });
    }
    let a0 = alpha.get(0);
    if !a0.is_positive() {
        return Err(Error::AlphaSign("alpha_0 must be positive".into()));
    }
    let p = alpha.get(1) / a0;
    let r = alpha.get(2) / a0;
    let t = alpha.get(3) / a0;
    if !t.is_negative() {
        return Err(Error::AlphaSign(
            "t = alpha_3 / alpha_0 must be negative".into(),
        ));
    }
    let p2 = &p * &p;
    let delta1 = &p2 - rat_i64(3) * &r;
    let delta2 = &r * &p2 + rat_i64(3) * &t * &p - rat_i64(4) * &r * &r;
    let delta3 = rat_i64(-4) * &r * &r * &r + rat_i64(18) * &r * &t * &p + &p2 * &r * &r
        - rat_i64(4) * &p2 * &p * &t
        - rat_i64(27) * &t * &t;
    let d_list = vec![
        rat_i64(1),
        -&p,
        -&p * &delta1,
        &delta1 * &delta2,
        &delta2 * &delta3,
        -&t * &delta3 * &delta3,
    ];
    Ok(CubicInvariants {
        p,
        r,
        t,
        delta1,
        delta2,
        delta3,
        d_list,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn p(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_i64(coeffs)
    }

    fn signs(list: &[i8]) -> SignList {
        SignList::new(list.to_vec()).unwrap()
    }

    /// Example degree-8 even polynomial with exact rational coefficients
    /// 1379/4 s^8 + 2549/12 s^6 - 170/9 s^4 - 21833/540 s^2 - 97/12.
    fn even_octic() -> Polynomial {
        Polynomial::from_coeffs(vec![
            ratio(-97, 12),
            Rat::zero(),
            ratio(-21833, 540),
            Rat::zero(),
            ratio(-170, 9),
            Rat::zero(),
            ratio(2549, 12),
            Rat::zero(),
            ratio(1379, 4),
        ])
    }

    #[test]
    fn matrix_layout_for_x2_minus_1() {
        let m = discrimination_matrix(&p(&[-1, 0, 1])).unwrap();
        let expected: [[i64; 5]; 5] = [
            [1, 0, -1, 0, 0],
            [0, 2, 0, 0, 0],
            [0, 1, 0, -1, 0],
            [0, 0, 2, 0, 0],
            [0, 0, 1, 0, -1],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(m.get(i, j), &rat_i64(v), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn quadratic_sign_lists() {
        let seq = discriminant_sequence(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(seq.signs.entries(), &[1, 1]);
        let seq = discriminant_sequence(&p(&[1, 0, 1])).unwrap();
        assert_eq!(seq.signs.entries(), &[1, -1]);
    }

    #[test]
    fn revise_rules() {
        let r = revise_sign_list(&signs(&[1, 0, 0, -1]));
        assert_eq!(r.entries(), &[1, -1, -1, -1]);
        // trailing zeros have no right terminator
        let r = revise_sign_list(&signs(&[1, 1, 0, 0]));
        assert_eq!(r.entries(), &[1, 1, 0, 0]);
        let r = revise_sign_list(&signs(&[1, 0, 0, 0, 1]));
        assert_eq!(r.entries(), &[1, -1, -1, 1, 1]);
        // leading zeros untouched as well
        let r = revise_sign_list(&signs(&[0, 0, 1, 0, -1]));
        assert_eq!(r.entries(), &[0, 0, 1, -1, -1]);
    }

    #[test]
    fn real_root_counts() {
        assert_eq!(count_distinct_real_roots(&p(&[-1, 0, 1])).unwrap().count, 2);
        assert_eq!(count_distinct_real_roots(&p(&[1, 0, 1])).unwrap().count, 0);
        // (x-1)(x+1)^2: two distinct real roots
        assert_eq!(
            count_distinct_real_roots(&p(&[-1, -1, 1, 1]))
                .unwrap()
                .count,
            2
        );
        assert!(count_distinct_real_roots(&p(&[5])).is_err());
        assert!(count_distinct_real_roots(&Polynomial::zero()).is_err());
    }

    #[test]
    fn octic_revised_list_and_count() {
        let report = count_distinct_real_roots(&even_octic()).unwrap();
        assert_eq!(report.revised.entries(), &[1, -1, -1, -1, 1, 1, 1, -1]);
        assert_eq!(report.mu, 8);
        assert_eq!(report.nu, 3);
        assert_eq!(report.count, 2);
    }

    #[test]
    fn positive_root_counts() {
        // (x-1)(x+2): one positive root
        assert_eq!(
            count_distinct_positive_roots(&p(&[-2, 1, 1]))
                .unwrap()
                .count,
            1
        );
        // (x-1)(x+1)^2
        assert_eq!(
            count_distinct_positive_roots(&p(&[-1, -1, 1, 1]))
                .unwrap()
                .count,
            1
        );
        // x^2 + 1: none
        assert_eq!(
            count_distinct_positive_roots(&p(&[1, 0, 1])).unwrap().count,
            0
        );
        // (x-1)(x-2): two
        assert_eq!(
            count_distinct_positive_roots(&p(&[2, -3, 1]))
                .unwrap()
                .count,
            2
        );
        assert!(matches!(
            count_distinct_positive_roots(&p(&[0, -1, 1])),
            Err(Error::ZeroConstantTerm)
        ));
    }

    #[test]
    fn quartic_from_octic_counts_one_positive() {
        // Same coefficients read as a quartic in x = s^2.
        let quartic = Polynomial::from_coeffs(vec![
            ratio(-97, 12),
            ratio(-21833, 540),
            ratio(-170, 9),
            ratio(2549, 12),
            ratio(1379, 4),
        ]);
        assert_eq!(count_distinct_positive_roots(&quartic).unwrap().count, 1);
    }

    #[test]
    fn cubic_invariants_of_example() {
        let alpha =
            AlphaVector::new(vec![rat_i64(1), rat_i64(-3), rat_i64(2), ratio(-1, 3)]).unwrap();
        let inv = cubic_invariants(&alpha).unwrap();
        assert_eq!(inv.p, rat_i64(-3));
        assert_eq!(inv.r, rat_i64(2));
        assert_eq!(inv.t, ratio(-1, 3));
        assert_eq!(inv.delta1, rat_i64(3));
        assert_eq!(inv.delta2, rat_i64(5));
        assert_eq!(inv.delta3, rat_i64(1));
        assert_eq!(
            inv.d_list,
            vec![
                rat_i64(1),
                rat_i64(3),
                rat_i64(9),
                rat_i64(15),
                rat_i64(5),
                ratio(1, 3)
            ]
        );
    }

    #[test]
    fn cubic_d_list_signs_match_even_composition() {
        // For a cubic alpha, the discriminant-sequence signs of
        // f(s) = a0 s^6 + a1 s^4 + a2 s^2 + a3 equal the closed-form list.
        let cases = [
            vec![rat_i64(1), rat_i64(-3), rat_i64(2), ratio(-1, 3)],
            vec![rat_i64(1), rat_i64(1), rat_i64(-1), rat_i64(-1)],
            vec![rat_i64(1), rat_i64(0), rat_i64(0), rat_i64(-8)],
            vec![rat_i64(1), ratio(-9, 4), ratio(3, 2), ratio(-1, 4)],
            vec![rat_i64(2), ratio(5, 3), ratio(-7, 2), ratio(-11, 6)],
        ];
        for coeffs in cases {
            let alpha = AlphaVector::new(coeffs.clone()).unwrap();
            let inv = cubic_invariants(&alpha).unwrap();
            let seq = discriminant_sequence(&alpha.even_poly()).unwrap();
            let closed = SignList::from_values(&inv.d_list);
            assert_eq!(seq.signs.entries(), closed.entries(), "alpha = {coeffs:?}");
        }
    }

    #[test]
    fn mu_nu_recount_consistency() {
        let report = count_distinct_real_roots(&even_octic()).unwrap();
        assert_eq!(report.mu, report.revised.mu());
        assert_eq!(report.nu, report.revised.nu());
        assert_eq!(report.count, report.mu - 2 * report.nu);
    }
}
