//! Shared fixtures for the integration suites.

#![allow(dead_code)]

use discrimina::moments::{KernelSpec, MomentTable};
use discrimina::piecewise::PiecewisePoly;
use discrimina::poly::Polynomial;
use discrimina::rat::{rat_i64, ratio, Rat};

/// The worked-example kernel family:
/// phi1 = max(eps, -2x+1+eps), psi1 = 18,
/// phi2 = max(eps/3, (2x-1+eps)/3), psi2 = max(6, 272y-130).
pub fn example_kernel(eps: &Rat, n: usize) -> KernelSpec {
    let third = ratio(1, 3);
    let phi1 = PiecewisePoly::from_max_affine(
        (eps.clone(), Rat::new(0.into(), 1.into())),
        (rat_i64(1) + eps, rat_i64(-2)),
    );
    let phi2 = PiecewisePoly::from_max_affine(
        (eps * &third, Rat::new(0.into(), 1.into())),
        ((eps - rat_i64(1)) * &third, ratio(2, 3)),
    );
    let psi1 = PiecewisePoly::constant(rat_i64(18));
    let psi2 = PiecewisePoly::from_max_affine(
        (rat_i64(6), Rat::new(0.into(), 1.into())),
        (rat_i64(-130), rat_i64(272)),
    );
    KernelSpec::new(phi1, phi2, psi1, psi2, n).unwrap()
}

/// Constant kernel k(x,y) = 2 via four unit factors.
pub fn constant2_kernel(n: usize) -> KernelSpec {
    KernelSpec::new(
        PiecewisePoly::constant(rat_i64(1)),
        PiecewisePoly::constant(rat_i64(1)),
        PiecewisePoly::constant(rat_i64(1)),
        PiecewisePoly::constant(rat_i64(1)),
        n,
    )
    .unwrap()
}

/// Degenerate-rank kernel (6/5 x y + 3/5 y): phi1 = 6/5 x, psi1 = y,
/// phi2 = 3/5, psi2 = y.
pub fn product_kernel_n1() -> KernelSpec {
    let x = PiecewisePoly::new(
        vec![Rat::new(0.into(), 1.into()), rat_i64(1)],
        vec![Polynomial::x()],
    )
    .unwrap();
    KernelSpec::new(
        x.scale(&ratio(6, 5)),
        PiecewisePoly::constant(ratio(3, 5)),
        x.clone(),
        x,
        1,
    )
    .unwrap()
}

/// Closed-form moment rows of the worked-example kernel as polynomials in
/// eps (ascending coefficients), hand-derived by exact integration of the
/// max-affine factors. Returned as (a-row, b-row).
pub fn example_moment_formulas(n: usize) -> (Vec<Polynomial>, Vec<Polynomial>) {
    let p = |coeffs: &[Rat]| Polynomial::from_coeffs(coeffs.to_vec());
    match n {
        1 => (
            vec![
                p(&[ratio(9, 2), rat_i64(18)]),
                p(&[ratio(3, 2), rat_i64(6)]),
            ],
            vec![
                p(&[ratio(3, 2), rat_i64(40)]),
                p(&[ratio(145, 18), ratio(40, 3)]),
            ],
        ),
        2 => (
            vec![
                p(&[rat_i64(3), rat_i64(9), rat_i64(18)]),
                p(&[rat_i64(0), rat_i64(6), rat_i64(12)]),
                p(&[ratio(1, 3), rat_i64(1), rat_i64(2)]),
            ],
            vec![
                p(&[rat_i64(1), rat_i64(3), rat_i64(40)]),
                p(&[rat_i64(0), ratio(154, 9), ratio(80, 3)]),
                p(&[rat_i64(2), ratio(145, 27), ratio(40, 9)]),
            ],
        ),
        3 => (
            vec![
                p(&[ratio(9, 4), rat_i64(9), ratio(27, 2), rat_i64(18)]),
                p(&[rat_i64(0), rat_i64(3), ratio(27, 2), rat_i64(18)]),
                p(&[rat_i64(0), rat_i64(1), ratio(9, 2), rat_i64(6)]),
                p(&[ratio(1, 12), ratio(1, 3), ratio(1, 2), ratio(2, 3)]),
            ],
            vec![
                p(&[ratio(3, 4), rat_i64(3), ratio(9, 2), rat_i64(40)]),
                p(&[rat_i64(0), rat_i64(1), ratio(163, 6), rat_i64(40)]),
                p(&[rat_i64(0), rat_i64(6), ratio(299, 18), ratio(40, 3)]),
                p(&[ratio(287, 540), rat_i64(2), ratio(145, 54), ratio(40, 27)]),
            ],
        ),
        _ => panic!("no closed-form row for n = {n}"),
    }
}

/// Evaluate the closed-form rows at a concrete eps.
pub fn example_moments_at(eps: &Rat, n: usize) -> MomentTable {
    let (a_rows, b_rows) = example_moment_formulas(n);
    MomentTable::new(
        a_rows.iter().map(|p| p.eval(eps)).collect(),
        b_rows.iter().map(|p| p.eval(eps)).collect(),
        n,
    )
    .unwrap()
}
