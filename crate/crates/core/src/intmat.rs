//! Dense integer matrices with exact, overflow-checked arithmetic.
//!
//! Every operation either returns the exact result or
//! [`Error::Overflow`]; nothing wraps.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<i64>>", try_from = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

/// Per-row amounts added to a matrix by [`IntMatrix::reduce_rows`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RowShifts(pub Vec<i64>);

impl RowShifts {
    /// Undoes the reduction that produced `reduced`.
    pub fn restore(&self, reduced: &IntMatrix) -> Result<IntMatrix> {
        if self.0.len() != reduced.rows {
            return Err(Error::DimensionMismatch(format!(
                "{} shifts for {} rows",
                self.0.len(),
                reduced.rows
            )));
        }
        let mut out = reduced.clone();
        for (i, &s) in self.0.iter().enumerate() {
            for v in out.row_mut(i) {
                *v = v.checked_sub(s).ok_or(Error::Overflow("row shift"))?;
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s == 0)
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::Empty);
        };
        let cols = first.as_ref().len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::RaggedRows {
                    row: i,
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, data)
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, value: i64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = value;
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.cols + j] = value;
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [i64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn row_sums(&self) -> Result<Vec<i64>> {
        (0..self.rows).map(|i| checked_sum(self.row(i).iter().copied())).collect()
    }

    pub fn column_sums(&self) -> Result<Vec<i64>> {
        (0..self.cols)
            .map(|j| checked_sum((0..self.rows).map(|i| self.get(i, j))))
            .collect()
    }

    pub fn row_minima(&self) -> Vec<i64> {
        (0..self.rows)
            .map(|i| *self.row(i).iter().min().expect("rows are nonempty"))
            .collect()
    }

    pub fn neg(&self) -> Result<Self> {
        self.map(|v| v.checked_neg().ok_or(Error::Overflow("negation")))
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        self.map(|v| v.checked_mul(k).ok_or(Error::Overflow("scaling")))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, "addition", i64::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, "subtraction", i64::checked_sub)
    }

    fn map(&self, f: impl Fn(i64) -> Result<i64>) -> Result<Self> {
        let data = self.data.iter().map(|&v| f(v)).collect::<Result<_>>()?;
        Ok(Self { data, ..*self })
    }

    fn zip(
        &self,
        other: &Self,
        what: &'static str,
        f: impl Fn(i64, i64) -> Option<i64>,
    ) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{what} of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow(what)))
            .collect::<Result<_>>()?;
        Ok(Self { data, ..*self })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i64 = 0;
                for k in 0..self.cols {
                    let p = self
                        .get(i, k)
                        .checked_mul(other.get(k, j))
                        .ok_or(Error::Overflow("matrix product"))?;
                    acc = acc.checked_add(p).ok_or(Error::Overflow("matrix product"))?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i64> {
        self.require_square()?;
        let mut buf = self.data.clone();
        det_in_place(&mut buf, self.rows)
    }

    /// Transpose of the cofactor matrix, so `m * adj(m) == det(m) * I`.
    pub fn adjugate(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut out = vec![0; n * n];
        let mut scratch = vec![0; n * n];
        adjugate_into(&self.data, n, &mut out, &mut scratch)?;
        Self::new(n, n, out)
    }

    /// Shifts every row so its minimum entry becomes 0.
    pub fn reduce_rows(&self) -> Result<(Self, RowShifts)> {
        let shifts: Vec<i64> = self
            .row_minima()
            .into_iter()
            .map(|m| m.checked_neg().ok_or(Error::Overflow("row reduction")))
            .collect::<Result<_>>()?;
        let mut out = self.clone();
        for (i, &s) in shifts.iter().enumerate() {
            if s != 0 {
                for v in out.row_mut(i) {
                    *v = v.checked_add(s).ok_or(Error::Overflow("row reduction"))?;
                }
            }
        }
        Ok((out, RowShifts(shifts)))
    }

    pub fn is_reduced(&self) -> bool {
        self.row_minima().iter().all(|&m| m == 0)
    }

    /// Rows permuted so that output row `i` is input row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.rows)?;
        let mut out = self.clone();
        for (i, &p) in perm.iter().enumerate() {
            out.row_mut(i).copy_from_slice(self.row(p));
        }
        Ok(out)
    }

    /// Columns permuted so that output column `j` is input column `perm[j]`.
    pub fn permute_cols(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.cols)?;
        let mut out = self.clone();
        for i in 0..self.rows {
            for (j, &p) in perm.iter().enumerate() {
                out.set(i, j, self.get(i, p));
            }
        }
        Ok(out)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    if perm.len() != len {
        return Err(Error::DimensionMismatch(format!(
            "permutation of length {} applied to {len} lines",
            perm.len()
        )));
    }
    for &p in perm {
        if p >= len || std::mem::replace(&mut seen[p], true) {
            return Err(Error::DimensionMismatch(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

fn checked_sum(mut it: impl Iterator<Item = i64>) -> Result<i64> {
    it.try_fold(0i64, |acc, v| acc.checked_add(v))
        .ok_or(Error::Overflow("summation"))
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_rows(&rows)
    }
}

impl fmt::Display for IntMatrix {
    /// One row per line, entries right-aligned to a common width.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Bareiss elimination on a row-major `n x n` buffer, destroying it.
pub(crate) fn det_in_place(a: &mut [i64], n: usize) -> Result<i64> {
    const OVF: Error = Error::Overflow("determinant");
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i64;
    let mut prev = 1i64;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Ok(0);
            };
            for j in k..n {
                a.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let x = a[i * n + j].checked_mul(pivot).ok_or(OVF)?;
                let y = lead.checked_mul(a[k * n + j]).ok_or(OVF)?;
                // Exact by Sylvester's identity.
                a[i * n + j] = x.checked_sub(y).ok_or(OVF)? / prev;
            }
        }
        prev = pivot;
    }
    a[n * n - 1].checked_mul(sign).ok_or(OVF)
}

/// Writes `adj(src)` into `out`. `scratch` must hold at least `(n-1)^2` values.
pub(crate) fn adjugate_into(
    src: &[i64],
    n: usize,
    out: &mut [i64],
    scratch: &mut [i64],
) -> Result<()> {
    if n == 1 {
        out[0] = 1;
        return Ok(());
    }
    let m = n - 1;
    for r in 0..n {
        for c in 0..n {
            let mut k = 0;
            for i in (0..n).filter(|&i| i != r) {
                for j in (0..n).filter(|&j| j != c) {
                    scratch[k] = src[i * n + j];
                    k += 1;
                }
            }
            let minor = det_in_place(&mut scratch[..m * m], m)?;
            let cof = if (r + c) % 2 == 0 {
                minor
            } else {
                minor.checked_neg().ok_or(Error::Overflow("adjugate"))?
            };
            out[c * n + r] = cof;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn classic() -> IntMatrix {
        m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(a: &IntMatrix) -> i64 {
        let n = a.rows();
        if n == 1 {
            return a.get(0, 0);
        }
        (0..n)
            .map(|j| {
                let rows: Vec<Vec<i64>> = (1..n)
                    .map(|i| (0..n).filter(|&c| c != j).map(|c| a.get(i, c)).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a.get(0, j) * cofactor_det(&IntMatrix::from_rows(&rows).unwrap())
            })
            .sum()
    }

    #[test]
    fn matmul_identity() {
        assert_eq!(IntMatrix::identity(3).matmul(&classic()).unwrap(), classic());
    }

    #[test]
    fn matmul_example_inverse_pair() {
        let g = m(&[&[1, 24], &[1, 25]]);
        let ginv = m(&[&[25, -24], &[-1, 1]]);
        assert_eq!(g.matmul(&ginv).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn matmul_classic_square() {
        let sq = classic().matmul(&classic()).unwrap();
        assert_eq!(sq, m(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]));
    }

    #[test]
    fn matmul_dimension_mismatch() {
        let a = IntMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn matmul_overflow_is_reported() {
        let big = IntMatrix::scalar(2, i64::MAX / 2 + 1);
        assert_eq!(big.matmul(&IntMatrix::scalar(2, 2)), Err(Error::Overflow("matrix product")));
    }

    #[test]
    fn det_examples() {
        for n in 1..6 {
            assert_eq!(IntMatrix::identity(n).det().unwrap(), 1);
        }
        assert_eq!(cofactor_det(&classic()), 2);
        assert_eq!(classic().det().unwrap(), 2);
        let tri = m(&[&[3, 2, 0, 0], &[0, 1, 2, 0], &[0, 0, 1, 2], &[0, 0, 0, 1]]);
        assert_eq!(tri.det().unwrap(), 3);
    }

    #[test]
    fn det_needs_pivoting() {
        let a = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(a.det().unwrap(), -1);
        let singular = m(&[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
        assert_eq!(singular.det().unwrap(), 0);
    }

    #[test]
    fn det_rejects_rectangular() {
        assert_eq!(
            IntMatrix::zeros(2, 3).det(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn det_overflow_is_reported() {
        let a = m(&[&[i64::MAX, 2], &[3, i64::MAX]]);
        assert_eq!(a.det(), Err(Error::Overflow("determinant")));
    }

    #[test]
    fn adjugate_examples() {
        assert_eq!(IntMatrix::identity(4).adjugate().unwrap(), IntMatrix::identity(4));
        assert_eq!(
            m(&[&[1, 24], &[1, 25]]).adjugate().unwrap(),
            m(&[&[25, -24], &[-1, 1]])
        );
        assert_eq!(
            classic().adjugate().unwrap(),
            m(&[&[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]])
        );
        assert_eq!(m(&[&[7]]).adjugate().unwrap(), m(&[&[1]]));
    }

    #[test]
    fn reduce_rows_examples() {
        let (r, s) = m(&[&[0, -2, -49], &[0, 1, 24], &[0, 1, 25]]).reduce_rows().unwrap();
        assert_eq!(r, m(&[&[49, 47, 0], &[0, 1, 24], &[0, 1, 25]]));
        assert_eq!(s, RowShifts(vec![49, 0, 0]));

        let (r, s) = m(&[&[0, 2, 49], &[0, -1, -24], &[0, -1, -25]]).reduce_rows().unwrap();
        assert_eq!(r, m(&[&[0, 2, 49], &[24, 23, 0], &[25, 24, 0]]));
        assert_eq!(s, RowShifts(vec![0, 24, 25]));

        let (r, s) = classic().reduce_rows().unwrap();
        assert_eq!(r, classic());
        assert!(s.is_zero());
    }

    #[test]
    fn permutations() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.permute_rows(&[1, 0]).unwrap(), m(&[&[3, 4], &[1, 2]]));
        assert_eq!(a.permute_cols(&[1, 0]).unwrap(), m(&[&[2, 1], &[4, 3]]));
        assert!(a.permute_rows(&[0, 0]).is_err());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(IntMatrix::new(0, 3, vec![]), Err(Error::Empty));
        assert!(matches!(
            IntMatrix::new(2, 2, vec![1, 2, 3]),
            Err(Error::DimensionMismatch(_))
        ));
        assert_eq!(
            IntMatrix::from_rows(&[vec![1, 2], vec![3]]),
            Err(Error::RaggedRows { row: 1, expected: 2, found: 1 })
        );
    }

    #[test]
    fn serde_as_nested_rows() {
        let json = serde_json::to_string(&classic()).unwrap();
        assert_eq!(json, "[[0,1,1],[1,0,1],[1,1,0]]");
        let back: IntMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, classic());
        assert!(serde_json::from_str::<IntMatrix>("[[1,2],[3]]").is_err());
    }
}
