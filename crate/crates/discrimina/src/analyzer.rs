//! Classification and explicit construction of positive solutions.
//!
//! n = 1 is a dichotomy: either no positive solution exists or a whole
//! ray c (lambda1 phi1 + lambda2 phi2), c > 0, solves the equation; the
//! exact test is a_0 - 1 < 0 together with the vanishing of the 2x2
//! system determinant. For n >= 2 the count m of distinct positive
//! solutions is computed along two independent routes that must agree:
//! distinct real roots of the even companion f(s) = g(s^2) (halved), and
//! the positive-root count of the reduced polynomial g directly. Solutions
//! themselves come from isolated roots x of g: with A(x) the a-row
//! polynomial, c = (x / A(x))^(1/(n-1)) gives lambda1 = c x, lambda2 = c.
//!
//! Negative solutions mirror positive ones through phi -> -phi when n is
//! odd and cannot exist when n is even.

use num_traits::{Signed, Zero};

use crate::discrimination::{
    count_distinct_positive_roots, count_distinct_real_roots, cubic_invariants, CubicInvariants,
    RootCountReport,
};
use crate::error::{Error, Result};
use crate::interval::{interval_leading_minor_sign, RatInterval, SignOf};
use crate::moments::{assemble_alpha, compute_moments, AlphaVector, KernelSpec, MomentTable};
use crate::poly::Polynomial;
use crate::quad::NumericMomentTable;
use crate::rat::{rat_i64, Rat};
use crate::rootfind::{cauchy_bound, isolate_positive_roots, refine_root, sturm_count, Interval};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    NoPositiveSolutions,
    /// Every c > 0 times the normalized direction solves the equation.
    InfiniteFamily {
        direction: (Rat, Rat),
    },
    FiniteCount {
        m: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NegativeCount {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Numeric,
}

/// The exact n = 1 test data: a_0, the system determinant
/// (a_0 - 1)(b_1 - 1) - a_1 b_0, and the outcome.
#[derive(Clone, Debug)]
pub struct Theorem1Data {
    pub a10: Rat,
    pub determinant: Rat,
    pub exists: bool,
}

/// n = 1 dichotomy. Positive solutions exist iff a_0 - 1 < 0 and the
/// determinant vanishes exactly; then the family is the positive ray
/// through (lambda1, lambda2) normalized to sum 1.
pub fn analyze_n1(m: &MomentTable) -> Result<(Classification, Theorem1Data)> {
    if m.n != 1 {
        return Err(Error::WrongN {
            expected: 1,
            got: m.n,
        });
    }
    let (a10, a01) = (&m.a[0], &m.a[1]);
    let (b10, b01) = (&m.b[0], &m.b[1]);
    let one = rat_i64(1);
    let determinant = (a10 - &one) * (b01 - &one) - a01 * b10;
    let exists = a10 < &one && determinant.is_zero();
    let data = Theorem1Data {
        a10: a10.clone(),
        determinant,
        exists,
    };
    if !exists {
        return Ok((Classification::NoPositiveSolutions, data));
    }
    // (a_0 - 1) l1 + a_1 l2 = 0 with determinant zero: direction
    // (a_1, 1 - a_0), both components nonnegative, sum positive.
    let l1 = a01.clone();
    let l2 = &one - a10;
    let total = &l1 + &l2;
    let direction = (l1 / &total, l2 / &total);
    Ok((Classification::InfiniteFamily { direction }, data))
}

/// Dual-route count for n >= 2.
#[derive(Clone, Debug)]
pub struct PositiveCount {
    pub m: usize,
    /// Lemma-1 route on the even companion f(s) = g(s^2).
    pub even_path: RootCountReport,
    /// Lemma-2 route on the reduced polynomial g directly.
    pub direct_path: RootCountReport,
}

/// Count distinct positive solutions by both routes and cross-check,
/// then enforce the structural bounds 1 <= m <= n+1 (and m <= n for odd
/// n > 2).
pub fn count_positive_solutions(alpha: &AlphaVector) -> Result<PositiveCount> {
    let n = alpha.n();
    if n < 2 {
        return Err(Error::WrongN {
            expected: 2,
            got: n,
        });
    }
    let even_path = count_distinct_real_roots(&alpha.even_poly())?;
    if even_path.count % 2 != 0 {
        return Err(Error::Internal(format!(
            "even companion has odd real-root count {}",
            even_path.count
        )));
    }
    let m_even = even_path.count / 2;
    let direct_path = count_distinct_positive_roots(&alpha.reduced_poly())?;
    let m_direct = direct_path.count;
    if m_even != m_direct {
        return Err(Error::PathDisagreement {
            path1: m_even,
            path2: m_direct,
        });
    }
    let m = m_direct;
    if m < 1 || m > n + 1 {
        return Err(Error::BoundViolation {
            m,
            bound: format!("1 <= m <= {}", n + 1),
            n,
        });
    }
    if n > 2 && n % 2 == 1 && m > n {
        return Err(Error::BoundViolation {
            m,
            bound: format!("m <= {n} for odd n"),
            n,
        });
    }
    Ok(PositiveCount {
        m,
        even_path,
        direct_path,
    })
}

/// Closed-form cubic classification for n = 2, cross-checked against the
/// general dual-route count.
#[derive(Clone, Debug)]
pub struct CubicClassification {
    pub m: usize,
    pub invariants: CubicInvariants,
    pub conditions: &'static str,
}

pub fn classify_cubic(alpha: &AlphaVector) -> Result<CubicClassification> {
    let inv = cubic_invariants(alpha)?;
    let zero = Rat::zero();
    let (m, conditions) =
        if inv.p < zero && inv.delta1 > zero && inv.delta2 > zero && inv.delta3 > zero {
            (3, "p<0, Delta1>0, Delta2>0, Delta3>0")
        } else if inv.p < zero && inv.delta1 > zero && inv.delta2 > zero && inv.delta3.is_zero() {
            (2, "p<0, Delta1>0, Delta2>0, Delta3=0")
        } else {
            (1, "p>=0 or Delta1<=0 or Delta2<=0 or Delta3<0")
        };
    let general = count_positive_solutions(alpha)?;
    if general.m != m {
        return Err(Error::PathDisagreement {
            path1: m,
            path2: general.m,
        });
    }
    Ok(CubicClassification {
        m,
        invariants: inv,
        conditions,
    })
}

/// One constructed solution phi = lambda1 phi1 + lambda2 phi2.
#[derive(Clone, Debug)]
pub struct SolutionCandidate {
    /// Refined enclosure of the reduced-polynomial root it came from.
    pub root: Interval,
    pub root_value: Rat,
    pub lambda1: Rat,
    pub lambda2: Rat,
    pub lambda1_enclosure: Interval,
    pub lambda2_enclosure: Interval,
    /// Max-norm defect, filled in by `verify_solution`.
    pub residual: Option<Rat>,
}

/// Positive real root of y^power = value, enclosed to width `tol`.
fn nth_root_enclosure(value: &Rat, power: usize, tol: &Rat) -> Result<Interval> {
    assert!(power >= 1);
    if power == 1 {
        return Ok(Interval::point(value.clone()));
    }
    if !value.is_positive() {
        return Err(Error::Internal("nth root of a nonpositive value".into()));
    }
    let poly = Polynomial::monomial(rat_i64(1), power).sub(&Polynomial::constant(value.clone()));
    let hi = if value > &rat_i64(1) {
        value + rat_i64(1)
    } else {
        rat_i64(2)
    };
    let refined = refine_root(&poly, &Interval::new(Rat::zero(), hi), tol)?;
    Ok(refined.enclosure)
}

/// Construct every positive solution from the isolated roots of the
/// reduced polynomial. Each lambda comes with an enclosure of width at
/// most `tol`; the candidate values satisfy lambda1 / lambda2 = root
/// exactly.
pub fn construct_solutions(k: &KernelSpec, tol: &Rat) -> Result<Vec<SolutionCandidate>> {
    if !tol.is_positive() {
        return Err(Error::InvalidTolerance);
    }
    let n = k.n();
    if n < 2 {
        return Err(Error::WrongN {
            expected: 2,
            got: n,
        });
    }
    let moments = compute_moments(k)?;
    let alpha = assemble_alpha(&moments)?;
    let counts = count_positive_solutions(&alpha)?;
    let g = alpha.reduced_poly();
    let intervals = isolate_positive_roots(&g)?;
    if intervals.len() != counts.m {
        return Err(Error::Internal(format!(
            "isolated {} roots but the discrimination system counts {}",
            intervals.len(),
            counts.m
        )));
    }
    // A(x) = a_0 x^n + a_1 x^(n-1) + ... + a_n, the a-row polynomial:
    // positive and increasing for x > 0, so interval evaluation is
    // endpoint evaluation.
    let a_poly = Polynomial::from_coeffs(moments.a.iter().rev().cloned().collect());
    let mut out = Vec::with_capacity(intervals.len());
    for iv in &intervals {
        let mut target = tol.clone();
        let candidate = loop {
            let root = refine_root(&g, iv, &target)?;
            let (xl, xh) = (&root.enclosure.lo, &root.enclosure.hi);
            if !xl.is_positive() && !root.exact {
                target /= rat_i64(4);
                continue;
            }
            let p_lo = xl / a_poly.eval(xh);
            let p_hi = xh / a_poly.eval(xl);
            let c_enc = if root.exact {
                let p = &root.value / a_poly.eval(&root.value);
                nth_root_enclosure(&p, n - 1, &target)?
            } else {
                let lo_enc = nth_root_enclosure(&p_lo, n - 1, &target)?;
                let hi_enc = nth_root_enclosure(&p_hi, n - 1, &target)?;
                Interval::new(lo_enc.lo, hi_enc.hi)
            };
            let lambda2 = if c_enc.is_point() {
                c_enc.lo.clone()
            } else {
                c_enc.midpoint()
            };
            let lambda1 = &root.value * &lambda2;
            let l1_enc = Interval::new(&c_enc.lo * xl, &c_enc.hi * xh);
            if l1_enc.width() <= *tol && c_enc.width() <= *tol {
                break SolutionCandidate {
                    root: root.enclosure.clone(),
                    root_value: root.value.clone(),
                    lambda1,
                    lambda2,
                    lambda1_enclosure: l1_enc,
                    lambda2_enclosure: c_enc,
                    residual: None,
                };
            }
            target /= rat_i64(4);
        };
        out.push(candidate);
    }
    Ok(out)
}

/// Max-norm defect of a candidate on a uniform grid. The inner integral
/// is evaluated exactly in piecewise-polynomial algebra with the rational
/// lambda approximations, so an exact candidate yields exactly zero.
pub fn verify_solution(k: &KernelSpec, s: &SolutionCandidate, grid_points: usize) -> Result<Rat> {
    if grid_points < 2 {
        return Err(Error::SchemaViolation(
            "verification grid needs at least 2 points".into(),
        ));
    }
    let phi = k.phi1().scale(&s.lambda1).add(&k.phi2().scale(&s.lambda2));
    let phi_n = phi.pow(k.n());
    let i1 = k.psi1().mul(&phi_n).integrate01();
    let i2 = k.psi2().mul(&phi_n).integrate01();
    let d1 = &s.lambda1 - i1;
    let d2 = &s.lambda2 - i2;
    let step = Rat::new(1.into(), ((grid_points - 1) as i64).into());
    let mut max = Rat::zero();
    for j in 0..grid_points {
        let x = &step * rat_i64(j as i64);
        let r = (&d1 * k.phi1().eval(&x) + &d2 * k.phi2().eval(&x)).abs();
        if r > max {
            max = r;
        }
    }
    Ok(max)
}

/// Negative-solution count from the positive classification: none when n
/// is even; the mirror image of the positive answer when n is odd.
pub fn count_negative_solutions(n: usize, class: &Classification) -> NegativeCount {
    if n.is_multiple_of(2) {
        return NegativeCount::Finite(0);
    }
    match class {
        Classification::InfiniteFamily { .. } => NegativeCount::Infinite,
        Classification::NoPositiveSolutions => NegativeCount::Finite(0),
        Classification::FiniteCount { m } => NegativeCount::Finite(*m),
    }
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub solve: bool,
    pub tol: Rat,
    pub grid: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            solve: false,
            tol: Rat::new(1.into(), num_bigint::BigInt::from(10u64).pow(12)),
            grid: 1001,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub n: usize,
    pub mode: Mode,
    pub classification: Classification,
    pub moments: MomentTable,
    pub moment_errors: Option<(Vec<Rat>, Vec<Rat>)>,
    pub alpha: Option<AlphaVector>,
    pub counts: Option<PositiveCount>,
    pub cubic: Option<CubicClassification>,
    pub theorem1: Option<Theorem1Data>,
    pub negative: NegativeCount,
    pub solutions: Vec<SolutionCandidate>,
    pub certified: bool,
    pub notes: Vec<String>,
}

/// Full exact pipeline for one kernel.
pub fn analyze_exact(k: &KernelSpec, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let n = k.n();
    let moments = compute_moments(k)?;
    if n == 1 {
        let (classification, th1) = analyze_n1(&moments)?;
        let negative = count_negative_solutions(n, &classification);
        return Ok(AnalysisReport {
            n,
            mode: Mode::Exact,
            classification,
            moments,
            moment_errors: None,
            alpha: None,
            counts: None,
            cubic: None,
            theorem1: Some(th1),
            negative,
            solutions: Vec::new(),
            certified: true,
            notes: Vec::new(),
        });
    }
    let alpha = assemble_alpha(&moments)?;
    let counts = count_positive_solutions(&alpha)?;
    let cubic = if n == 2 {
        Some(classify_cubic(&alpha)?)
    } else {
        None
    };
    let classification = Classification::FiniteCount { m: counts.m };
    let negative = count_negative_solutions(n, &classification);
    let mut solutions = Vec::new();
    if opts.solve {
        solutions = construct_solutions(k, &opts.tol)?;
        for cand in &mut solutions {
            cand.residual = Some(verify_solution(k, cand, opts.grid)?);
        }
    }
    Ok(AnalysisReport {
        n,
        mode: Mode::Exact,
        classification,
        moments,
        moment_errors: None,
        alpha: Some(alpha),
        counts: Some(counts),
        cubic,
        theorem1: None,
        negative,
        solutions,
        certified: true,
        notes: Vec::new(),
    })
}

/// Sturm-oracle validation of a finished count: the reduced polynomial
/// must have exactly m roots in (0, B) and the even companion exactly 2m
/// in (-B', B').
pub fn oracle_check(alpha: &AlphaVector, m: usize) -> Result<()> {
    let g = alpha.reduced_poly();
    let bound = cauchy_bound(&g)?;
    let direct = sturm_count(&g, &Rat::zero(), &bound)?;
    if direct != m {
        return Err(Error::OracleMismatch(format!(
            "Sturm count {direct} on (0,B) vs discrimination count {m}"
        )));
    }
    let f = alpha.even_poly();
    let fbound = cauchy_bound(&f)?;
    let real = sturm_count(&f, &(-&fbound), &fbound)?;
    if real != 2 * m {
        return Err(Error::OracleMismatch(format!(
            "Sturm count {real} on (-B,B) vs expected {}",
            2 * m
        )));
    }
    Ok(())
}

/// Numeric-mode pipeline over quadrature moments with error radii. Counts
/// come from the rationalized point estimates; every discriminant sign is
/// then re-derived in interval arithmetic and any ambiguity downgrades
/// the report to uncertified.
pub fn analyze_numeric(nm: &NumericMomentTable) -> Result<AnalysisReport> {
    let n = nm.table.n;
    let mut notes = Vec::new();
    if n == 1 {
        let (mut classification, th1) = analyze_n1(&nm.table)?;
        let iv = |v: &Rat, e: &Rat| RatInterval::centered(v, e);
        let one = RatInterval::exact(rat_i64(1));
        let det = iv(&nm.table.a[0], &nm.a_err[0])
            .sub(&one)
            .mul(&iv(&nm.table.b[1], &nm.b_err[1]).sub(&one))
            .sub(&iv(&nm.table.a[1], &nm.a_err[1]).mul(&iv(&nm.table.b[0], &nm.b_err[0])));
        let cond1 = iv(&nm.table.a[0], &nm.a_err[0]).sub(&one).sign_of();
        let mut certified = true;
        match (cond1, det.sign_of()) {
            (SignOf::Negative, SignOf::Positive) | (SignOf::Negative, SignOf::Negative) => {
                classification = Classification::NoPositiveSolutions;
            }
            (SignOf::Positive, _) | (SignOf::Zero, _) => {
                classification = Classification::NoPositiveSolutions;
            }
            (SignOf::Negative, _) => {
                // Determinant straddles zero: equality is plausible but
                // cannot be certified numerically.
                certified = false;
                notes.push(format!(
                    "determinant residual {} lies inside the error band; exact mode required to certify the infinite family",
                    crate::rat::to_f64(&th1.determinant)
                ));
                if !th1.exists {
                    // Point estimate says no; report the near-miss.
                    classification = Classification::NoPositiveSolutions;
                }
            }
            (SignOf::Unknown, _) => {
                certified = false;
                notes.push("sign of a_0 - 1 is ambiguous at this tolerance".into());
            }
        }
        let negative = count_negative_solutions(n, &classification);
        return Ok(AnalysisReport {
            n,
            mode: Mode::Numeric,
            classification,
            moments: nm.table.clone(),
            moment_errors: Some((nm.a_err.clone(), nm.b_err.clone())),
            alpha: None,
            counts: None,
            cubic: None,
            theorem1: Some(th1),
            negative,
            solutions: Vec::new(),
            certified,
            notes,
        });
    }

    let alpha = assemble_alpha(&nm.table)?;
    let counts = count_positive_solutions(&alpha)?;
    let cubic = if n == 2 {
        Some(classify_cubic(&alpha)?)
    } else {
        None
    };

    // Interval alphas -> interval discrimination matrix of the even
    // companion -> interval signs of the discriminant sequence.
    let mut alpha_iv = Vec::with_capacity(n + 2);
    alpha_iv.push(RatInterval::centered(&nm.table.b[0], &nm.b_err[0]));
    for i in 1..=n {
        alpha_iv.push(
            RatInterval::centered(&nm.table.b[i], &nm.b_err[i])
                .sub(&RatInterval::centered(&nm.table.a[i - 1], &nm.a_err[i - 1])),
        );
    }
    alpha_iv.push(RatInterval::centered(&nm.table.a[n], &nm.a_err[n]).neg());

    let deg = 2 * (n + 1);
    let (matrix, orders) = interval_discrimination_matrix(&alpha_iv, deg);
    let mut ambiguous = Vec::new();
    for (k, order) in orders.iter().enumerate() {
        if interval_leading_minor_sign(&matrix, *order) == SignOf::Unknown {
            ambiguous.push(k + 1);
        }
    }
    let mut certified = ambiguous.is_empty();
    if !certified {
        notes.push(format!(
            "discriminant signs D_{ambiguous:?} are ambiguous at this tolerance; count is UNCERTIFIED"
        ));
        if let Some(c) = &cubic {
            if c.invariants.delta3.abs() <= delta3_radius_hint(&alpha_iv) {
                notes.push(
                    "cubic boundary case: m = 2 exactly on the Delta3 = 0 set, otherwise m in {1, 3}"
                        .into(),
                );
            }
        }
    }
    if nm
        .table
        .a
        .iter()
        .zip(&nm.a_err)
        .chain(nm.table.b.iter().zip(&nm.b_err))
        .any(|(v, e)| v <= e && v.is_zero())
    {
        certified = false;
        notes.push("a moment is indistinguishable from zero at this tolerance".into());
    }

    let classification = Classification::FiniteCount { m: counts.m };
    let negative = count_negative_solutions(n, &classification);
    Ok(AnalysisReport {
        n,
        mode: Mode::Numeric,
        classification,
        moments: nm.table.clone(),
        moment_errors: Some((nm.a_err.clone(), nm.b_err.clone())),
        alpha: Some(alpha),
        counts: Some(counts),
        cubic,
        theorem1: None,
        negative,
        solutions: Vec::new(),
        certified,
        notes,
    })
}

/// Crude outer radius of the Delta3 interval, used only to phrase the
/// boundary note.
fn delta3_radius_hint(alpha_iv: &[RatInterval]) -> Rat {
    alpha_iv
        .iter()
        .map(|iv| (&iv.hi - &iv.lo) / rat_i64(2))
        .fold(Rat::zero(), |acc, w| acc + w)
        * rat_i64(100)
}

/// Interval discrimination matrix of f(s) = sum alpha_i s^(2(n+1-i)),
/// plus the even minor orders that form the discriminant sequence.
fn interval_discrimination_matrix(
    alpha_iv: &[RatInterval],
    deg: usize,
) -> (Vec<Vec<RatInterval>>, Vec<usize>) {
    let zero = RatInterval::exact(Rat::zero());
    // Descending coefficients of f: alpha_0, 0, alpha_1, 0, ...
    let mut f_desc = vec![zero.clone(); deg + 1];
    for (i, a) in alpha_iv.iter().enumerate() {
        f_desc[2 * i] = a.clone();
    }
    // Descending coefficients of f': (deg - j) * f_desc[j].
    let mut fp_desc = vec![zero.clone(); deg];
    for (j, c) in f_desc.iter().take(deg).enumerate() {
        let factor = RatInterval::exact(rat_i64((deg - j) as i64));
        fp_desc[j] = c.mul(&factor);
    }
    let size = 2 * deg + 1;
    let mut m = vec![vec![zero; size]; size];
    for shift in 0..=deg {
        for (j, c) in f_desc.iter().enumerate() {
            m[2 * shift][shift + j] = c.clone();
        }
        if shift < deg {
            for (j, c) in fp_desc.iter().enumerate() {
                m[2 * shift + 1][shift + 1 + j] = c.clone();
            }
        }
    }
    let orders = (1..=deg).map(|k| 2 * k).collect();
    (m, orders)
}
