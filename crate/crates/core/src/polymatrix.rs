//! Square matrices with polynomial entries.
//!
//! Determinants are computed by fraction-free (Bareiss) elimination with row
//! pivoting; [`PolyMatrix::determinant_reference`] is an independent
//! memoized cofactor expansion used to cross-check it.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{MPoly, Var};

/// Largest size accepted by the cofactor-expansion determinant.
pub const REFERENCE_SIZE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("cofactor determinant limited to size {REFERENCE_SIZE_LIMIT}, got {0}")]
    SizeGuardExceeded(usize),
    #[error("row index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("row has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("degree {degree} in {var} exceeds formal degree {formal}")]
    DegreeExceedsFormal {
        var: Var,
        degree: u32,
        formal: usize,
    },
    #[error("Sylvester matrix needs formal degrees summing to at least 1")]
    EmptySylvester,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: Vec<Vec<MPoly>>,
}

impl PolyMatrix {
    pub fn new(rows: Vec<Vec<MPoly>>) -> Result<PolyMatrix, MatrixError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::NotSquare);
        }
        Ok(PolyMatrix { rows })
    }

    /// Integer matrix, mostly for tests and examples.
    pub fn from_ints(rows: &[&[i64]]) -> Result<PolyMatrix, MatrixError> {
        PolyMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&c| MPoly::int(c)).collect())
                .collect(),
        )
    }

    pub fn zeros(n: usize) -> PolyMatrix {
        PolyMatrix {
            rows: vec![vec![MPoly::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(n);
        for i in 0..n {
            m.rows[i][i] = MPoly::one();
        }
        m
    }

    /// Unit row of length `n` with the one at 1-based `column`.
    pub fn versor(n: usize, column: usize) -> Vec<MPoly> {
        let mut row = vec![MPoly::zero(); n];
        row[column - 1] = MPoly::one();
        row
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<MPoly>] {
        &self.rows
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: MPoly) {
        self.rows[i][j] = value;
    }

    /// Copy with 1-based row `row_index` replaced by `new_row`.
    pub fn replace_row(
        &self,
        row_index: usize,
        new_row: Vec<MPoly>,
    ) -> Result<PolyMatrix, MatrixError> {
        let n = self.size();
        if row_index == 0 || row_index > n {
            return Err(MatrixError::IndexOutOfRange {
                index: row_index,
                n,
            });
        }
        if new_row.len() != n {
            return Err(MatrixError::LengthMismatch {
                expected: n,
                got: new_row.len(),
            });
        }
        let mut out = self.clone();
        out.rows[row_index - 1] = new_row;
        Ok(out)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    pub fn map_entries(&self, f: impl Fn(&MPoly) -> MPoly) -> PolyMatrix {
        PolyMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        }
    }

    /// Determinant by fraction-free elimination.
    ///
    /// Every intermediate entry is a minor of the (row-permuted) input, so
    /// division by the previous pivot is always exact.
    pub fn determinant(&self) -> MPoly {
        let n = self.size();
        if n == 0 {
            return MPoly::one();
        }
        let mut a = self.rows.clone();
        let mut negate = false;
        let mut prev = MPoly::one();
        for k in 0..n - 1 {
            // Prefer the sparsest nonzero pivot in the column.
            let pivot = (k..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| a[i][k].len());
            let Some(p) = pivot else {
                return MPoly::zero();
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            let (top, bottom) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in bottom.iter_mut() {
                let lead = row[k].clone();
                for j in k + 1..n {
                    let num = &(&pivot_row[k] * &row[j]) - &(&lead * &pivot_row[j]);
                    row[j] = num
                        .div_exact(&prev)
                        .expect("fraction-free elimination: inexact division by previous pivot");
                }
                row[k] = MPoly::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    /// Determinant by cofactor expansion along rows, memoized over the set
    /// of remaining columns.
    pub fn determinant_reference(&self) -> Result<MPoly, MatrixError> {
        let n = self.size();
        if n > REFERENCE_SIZE_LIMIT {
            return Err(MatrixError::SizeGuardExceeded(n));
        }
        let mut memo = HashMap::new();
        Ok(self.minor_by_columns(0, (1u32 << n) - 1, &mut memo))
    }

    fn minor_by_columns(&self, row: usize, cols: u32, memo: &mut HashMap<u32, MPoly>) -> MPoly {
        if cols == 0 {
            return MPoly::one();
        }
        if let Some(hit) = memo.get(&cols) {
            return hit.clone();
        }
        let mut total = MPoly::zero();
        let mut position = 0;
        for j in 0..self.size() {
            if cols & (1 << j) == 0 {
                continue;
            }
            let entry = &self.rows[row][j];
            if !entry.is_zero() {
                let sub = self.minor_by_columns(row + 1, cols & !(1 << j), memo);
                let term = entry * &sub;
                if position % 2 == 0 {
                    total += &term;
                } else {
                    total -= &term;
                }
            }
            position += 1;
        }
        memo.insert(cols, total.clone());
        total
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Coefficients of `p` in `var`, highest formal power first, padded to
/// `formal + 1` entries.
fn formal_coefficients(p: &MPoly, var: Var, formal: usize) -> Result<Vec<MPoly>, MatrixError> {
    let coeffs = p.coefficients_in(var);
    if let Some(d) = p.degree_in(var) {
        if d as usize > formal {
            return Err(MatrixError::DegreeExceedsFormal {
                var,
                degree: d,
                formal,
            });
        }
    }
    let mut out = vec![MPoly::zero(); formal + 1];
    for (k, c) in coeffs.into_iter().enumerate() {
        out[formal - k] = c;
    }
    Ok(out)
}

/// Sylvester matrix of `p` and `q` in `var` with formal degrees `dp`, `dq`:
/// `dq` shifted rows of `p` on top, then `dp` shifted rows of `q`.
/// Formal leading coefficients may be zero.
pub fn sylvester(
    p: &MPoly,
    q: &MPoly,
    var: Var,
    dp: usize,
    dq: usize,
) -> Result<PolyMatrix, MatrixError> {
    let n = dp + dq;
    if n == 0 {
        return Err(MatrixError::EmptySylvester);
    }
    let pc = formal_coefficients(p, var, dp)?;
    let qc = formal_coefficients(q, var, dq)?;
    let mut m = PolyMatrix::zeros(n);
    for r in 0..dq {
        for (t, c) in pc.iter().enumerate() {
            m.rows[r][r + t] = c.clone();
        }
    }
    for r in 0..dp {
        for (t, c) in qc.iter().enumerate() {
            m.rows[dq + r][r + t] = c.clone();
        }
    }
    Ok(m)
}

/// Determinant of [`sylvester`]; with true degrees this is the classical
/// resultant in `var`.
pub fn resultant(
    p: &MPoly,
    q: &MPoly,
    var: Var,
    dp: usize,
    dq: usize,
) -> Result<MPoly, MatrixError> {
    Ok(sylvester(p, q, var, dp, dq)?.determinant())
}

/// Resultant using the actual degrees of `p` and `q` in `var`.
pub fn resultant_true_degrees(p: &MPoly, q: &MPoly, var: Var) -> Result<MPoly, MatrixError> {
    let dp = p.degree_in(var).unwrap_or(0) as usize;
    let dq = q.degree_in(var).unwrap_or(0) as usize;
    resultant(p, q, var, dp, dq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn x() -> MPoly {
        MPoly::x()
    }

    #[test]
    fn determinant_examples() {
        let m = PolyMatrix::from_ints(&[&[0, 1], &[2, 0]]).unwrap();
        assert_eq!(m.determinant(), MPoly::int(-2));
        assert_eq!(m.determinant_reference().unwrap(), MPoly::int(-2));

        let two_x = x().scale(&rat(2));
        let m = PolyMatrix::new(vec![
            vec![MPoly::int(2), &two_x + &MPoly::one()],
            vec![MPoly::int(2), two_x],
        ])
        .unwrap();
        assert_eq!(m.determinant(), MPoly::int(-2));

        let m =
            PolyMatrix::from_ints(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[3, 0, 0, 0], &[0, 3, 0, 0]])
                .unwrap();
        assert_eq!(m.determinant(), MPoly::int(9));
        assert_eq!(m.determinant_reference().unwrap(), MPoly::int(9));
    }

    #[test]
    fn reference_examples() {
        let m = PolyMatrix::from_ints(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]).unwrap();
        assert!(m.determinant_reference().unwrap().is_zero());
        assert!(m.determinant().is_zero());
        assert_eq!(
            PolyMatrix::identity(5).determinant_reference().unwrap(),
            MPoly::one()
        );
        assert_eq!(
            PolyMatrix::identity(9).determinant_reference(),
            Err(MatrixError::SizeGuardExceeded(9))
        );
        assert_eq!(PolyMatrix::identity(0).determinant(), MPoly::one());
    }

    #[test]
    fn zero_column_gives_zero() {
        let m = PolyMatrix::from_ints(&[&[0, 1, 2], &[0, 3, 4], &[0, 5, 7]]).unwrap();
        assert!(m.determinant().is_zero());
    }

    #[test]
    fn replace_row_examples() {
        let m = PolyMatrix::from_ints(&[&[0, 1], &[2, 0]]).unwrap();
        assert_eq!(m.replace_row(1, PolyMatrix::versor(2, 2)).unwrap(), m);
        assert_eq!(
            m.replace_row(2, PolyMatrix::versor(2, 2)).unwrap(),
            PolyMatrix::from_ints(&[&[0, 1], &[0, 1]]).unwrap()
        );
        assert_eq!(
            m.replace_row(3, PolyMatrix::versor(2, 1)),
            Err(MatrixError::IndexOutOfRange { index: 3, n: 2 })
        );
        assert_eq!(
            m.replace_row(1, vec![MPoly::one()]),
            Err(MatrixError::LengthMismatch {
                expected: 2,
                got: 1
            })
        );
        // input untouched
        assert_eq!(m, PolyMatrix::from_ints(&[&[0, 1], &[2, 0]]).unwrap());
    }

    #[test]
    fn sylvester_examples() {
        let y = MPoly::y();
        let p = MPoly::one();
        let q = y.scale(&rat(2));
        assert_eq!(
            sylvester(&p, &q, Var::Y, 1, 1).unwrap(),
            PolyMatrix::from_ints(&[&[0, 1], &[2, 0]]).unwrap()
        );

        let a = MPoly::u();
        let b = MPoly::v();
        let s = sylvester(&(&y - &a), &(&y - &b), Var::Y, 1, 1).unwrap();
        assert_eq!(
            s,
            PolyMatrix::new(vec![vec![MPoly::one(), -&a], vec![MPoly::one(), -&b]]).unwrap()
        );
        assert!(matches!(
            sylvester(&y.pow(2), &y, Var::Y, 1, 1),
            Err(MatrixError::DegreeExceedsFormal {
                degree: 2,
                formal: 1,
                ..
            })
        ));
        assert_eq!(
            sylvester(&MPoly::one(), &MPoly::one(), Var::Y, 0, 0),
            Err(MatrixError::EmptySylvester)
        );
    }

    #[test]
    fn resultant_examples() {
        let y = MPoly::y();
        let (a, b) = (MPoly::u(), MPoly::v());
        assert_eq!(
            resultant(&(&y - &a), &(&y - &b), Var::Y, 1, 1).unwrap(),
            &a - &b
        );
        assert_eq!(
            resultant(&MPoly::one(), &y.pow(2).scale(&rat(3)), Var::Y, 0, 2).unwrap(),
            MPoly::one()
        );
        assert_eq!(
            resultant(&x().scale(&rat(2)), &y.scale(&rat(2)), Var::Y, 0, 1).unwrap(),
            x().scale(&rat(2))
        );
    }
}
