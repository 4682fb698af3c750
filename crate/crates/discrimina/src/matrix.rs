//! Exact matrices and fraction-free leading-principal-minor computation.
//!
//! Rational rows are first cleared to integers by a positive common
//! multiple per row, so every returned minor differs from the true minor
//! by a positive factor: signs are exact, which is all the sign-list
//! machinery consumes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MatrixShape {
                rows,
                cols,
                got: entries.len(),
            });
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::MatrixShape {
                rows: r,
                cols: c,
                got: rows.iter().map(|row| row.len()).sum(),
            });
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.cols + j] = v;
    }

    /// All leading principal minors, orders 1..=n, each exact in sign and
    /// correct up to a positive factor (the per-row clearing multiple).
    ///
    /// A single fraction-free Bareiss sweep yields every minor in one pass
    /// as long as no pivot vanishes; once a zero minor appears the
    /// remaining orders are computed as independent determinants with row
    /// pivoting inside the leading submatrix.
    pub fn principal_minor_sequence(&self) -> Result<Vec<Rat>> {
        if self.rows != self.cols {
            return Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let cleared = self.cleared_int_rows();
        let mut minors: Vec<BigInt> = Vec::with_capacity(n);

        let mut work = cleared.clone();
        let mut prev = BigInt::one();
        let mut completed = 0;
        for k in 0..n {
            let pivot = work[k][k].clone();
            minors.push(pivot.clone());
            completed = k + 1;
            if pivot.is_zero() {
                break;
            }
            if k + 1 == n {
                break;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &pivot * &work[i][j] - &work[i][k] * &work[k][j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    work[i][j] = q;
                }
            }
            prev = pivot;
        }
        for order in completed + 1..=n {
            minors.push(det_leading(&cleared, order));
        }
        Ok(minors.into_iter().map(Rat::from_integer).collect())
    }

    /// Per-row positive clearing to integer entries.
    fn cleared_int_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = &self.entries[i * self.cols..(i + 1) * self.cols];
                let mut lcm = BigInt::one();
                for v in row {
                    lcm = lcm.lcm(v.denom());
                }
                row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
            })
            .collect()
    }
}

/// Exact determinant of the leading `order`-by-`order` submatrix via
/// Bareiss elimination with row pivoting (sign tracked).
fn det_leading(m: &[Vec<BigInt>], order: usize) -> BigInt {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .take(order)
        .map(|row| row[..order].to_vec())
        .collect();
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..order {
        if a[k][k].is_zero() {
            match (k + 1..order).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return BigInt::zero(),
            }
        }
        if k + 1 == order {
            break;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..order {
            for j in k + 1..order {
                let num = &pivot * &a[i][j] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                a[i][j] = q;
            }
        }
        prev = pivot;
    }
    let det = a[order - 1][order - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}
