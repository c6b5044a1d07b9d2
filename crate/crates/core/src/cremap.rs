//! Monomial maps of projective space given by reduced stochastic log-matrices.
//!
//! Column `j` of a log-matrix lists the exponents of the `j`-th defining
//! monomial, row `i` belongs to the variable `x_i`. A map is stored in
//! reduced form: every row has minimum 0, so all column sums equal the
//! degree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialMap {
    log: IntMatrix,
    degree: i64,
}

/// Output of [`MonomialMap::invert`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionResult {
    pub inverse: MonomialMap,
    pub inverse_degree: i64,
    /// Row minima of `d * A^-1`, i.e. the numerators of the row minima of
    /// `A^-1` over the denominator `d`.
    pub row_minima: Vec<i64>,
}

/// Common column sum of `m`, or the first disagreeing column.
pub fn stochastic_degree(m: &IntMatrix) -> Result<i64> {
    let sums = m.column_sums()?;
    let first = sums[0];
    match sums.iter().position(|&s| s != first) {
        None => Ok(first),
        Some(col) => Err(Error::NotStochastic {
            first,
            col,
            sum: sums[col],
        }),
    }
}

/// Two stochastic matrices of the same shape are equivalent when they differ
/// by a constant in each row, i.e. they define the same monomial map.
pub fn equivalent(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    let diff = a.sub(b)?;
    Ok((0..diff.rows()).all(|i| {
        let row = diff.row(i);
        row.iter().all(|&v| v == row[0])
    }))
}

impl MonomialMap {
    /// Validates and reduces a nonnegative square log-matrix.
    pub fn from_log_matrix(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m.rows() < 3 {
            return Err(Error::TooFewRows(m.rows()));
        }
        for i in 0..m.rows() {
            if let Some(col) = m.row(i).iter().position(|&v| v < 0) {
                return Err(Error::NegativeEntry { row: i, col });
            }
        }
        stochastic_degree(&m)?;
        let (log, _) = m.reduce_rows()?;
        Self::from_reduced(log)
    }

    /// Like [`Self::from_log_matrix`], but fails if reduction lowers the degree
    /// below `expected`.
    pub fn with_degree(m: IntMatrix, expected: i64) -> Result<Self> {
        let f = Self::from_log_matrix(m)?;
        if f.degree != expected {
            return Err(Error::DegreeDropped {
                expected,
                actual: f.degree,
            });
        }
        Ok(f)
    }

    /// `log` must already be reduced, nonnegative and stochastic.
    pub(crate) fn from_reduced(log: IntMatrix) -> Result<Self> {
        debug_assert!(log.is_reduced());
        let degree = stochastic_degree(&log)?;
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let cols: Vec<Vec<i64>> = (0..log.cols()).map(|j| log.column(j)).collect();
        for a in 0..cols.len() {
            for b in a + 1..cols.len() {
                if cols[a] == cols[b] {
                    return Err(Error::DuplicateColumns(a, b));
                }
            }
        }
        Ok(Self { log, degree })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            log: IntMatrix::identity(n + 1),
            degree: 1,
        }
    }

    /// Projective dimension: the log-matrix is `(n+1) x (n+1)`.
    pub fn n(&self) -> usize {
        self.log.rows() - 1
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn log_matrix(&self) -> &IntMatrix {
        &self.log
    }

    pub fn into_log_matrix(self) -> IntMatrix {
        self.log
    }

    /// Matrix of the induced map on the sum-zero lattice in the basis
    /// `e_i - e_0`: entry `(i-1, j-1)` is `(col_j - col_0)_i`.
    pub fn lattice_matrix(&self) -> IntMatrix {
        let n = self.n();
        let mut l = IntMatrix::zeros(n, n);
        for i in 1..=n {
            let base = self.log.get(i, 0);
            for j in 1..=n {
                // Entries are bounded by the degree, no overflow possible.
                l.set(i - 1, j - 1, self.log.get(i, j) - base);
            }
        }
        l
    }

    pub fn lattice_det(&self) -> Result<i64> {
        self.lattice_matrix().det()
    }

    pub fn is_birational(&self) -> Result<bool> {
        Ok(self.lattice_det()?.abs() == 1)
    }

    /// Inverse map and inverse degree over the integers.
    ///
    /// With `A* = d * A^-1 = sign(det A) * adj(A)` and `m_i` the minimum of
    /// row `i` of `A*`, the reduced inverse is `B_ij = (A*_ij - m_i) / d` and
    /// its degree is `(1 - sum m_i) / d`. Every division is checked to be
    /// exact.
    pub fn invert(&self) -> Result<InversionResult> {
        let d = self.degree;
        let det = self.log.det()?;
        if det.abs() != d {
            return Err(Error::NotBirational(self.lattice_det()?));
        }
        let adj = self.log.adjugate()?;
        let a_star = if det < 0 { adj.neg()? } else { adj };
        let row_minima = a_star.row_minima();

        let n1 = self.log.rows();
        let mut b = IntMatrix::zeros(n1, n1);
        for (i, &mi) in row_minima.iter().enumerate() {
            for j in 0..n1 {
                let shifted = a_star
                    .get(i, j)
                    .checked_sub(mi)
                    .ok_or(Error::Overflow("inversion"))?;
                b.set(i, j, exact_div(shifted, d)?);
            }
        }

        let minima_sum = row_minima
            .iter()
            .try_fold(0i64, |acc, &m| acc.checked_add(m))
            .ok_or(Error::Overflow("inversion"))?;
        let numerator = 1i64
            .checked_sub(minima_sum)
            .ok_or(Error::Overflow("inversion"))?;
        let inverse_degree = exact_div(numerator, d)?;

        let inverse = Self::from_reduced(b)
            .map_err(|e| Error::Internal(format!("inverse log-matrix rejected: {e}")))?;
        if inverse.degree != inverse_degree {
            return Err(Error::Internal(format!(
                "inverse degree {} disagrees with column sum {}",
                inverse_degree, inverse.degree
            )));
        }
        Ok(InversionResult {
            inverse,
            inverse_degree,
            row_minima,
        })
    }

    /// `self` after `other`: the log-matrix of the composite is the product of
    /// the log-matrices, reduced.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(format!(
                "composing maps of P^{} and P^{}",
                self.n(),
                other.n()
            )));
        }
        Self::from_log_matrix(self.log.matmul(&other.log)?)
    }

    /// Relabels variables (rows) and monomials (columns).
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        let log = self.log.permute_rows(row_perm)?.permute_cols(col_perm)?;
        Ok(Self {
            log,
            degree: self.degree,
        })
    }
}

fn exact_div(num: i64, den: i64) -> Result<i64> {
    if den == 0 || num % den != 0 {
        return Err(Error::Internal(format!("{num} is not divisible by {den}")));
    }
    Ok(num / den)
}
