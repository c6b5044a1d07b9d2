//! Named maps with known inverse degrees.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cremap::MonomialMap;
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `(x_0^d : x_0^{d-1} x_1 : ... : x_{n-1}^{d-1} x_n)`.
    Triangular,
    /// `(x_0^2 : x_0 x_1 : ... : x_{n-1} x_n)`, degree 2.
    ChainLoop,
    /// `(x_1 x_2 : x_0 x_2 : x_0 x_1)` on P^2.
    ClassicQuadratic,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Triangular, Family::ChainLoop, Family::ClassicQuadratic];

    pub fn name(self) -> &'static str {
        match self {
            Family::Triangular => "triangular",
            Family::ChainLoop => "chain-loop",
            Family::ClassicQuadratic => "classic-quadratic",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidFamily(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    /// Ignored by the families whose degree is forced.
    pub d: i64,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize, d: i64) -> Result<Self> {
        let spec = Self { family, n, d };
        spec.validate()?;
        Ok(spec)
    }

    pub fn triangular(n: usize, d: i64) -> Result<Self> {
        Self::new(Family::Triangular, n, d)
    }

    pub fn chain_loop(n: usize) -> Result<Self> {
        Self::new(Family::ChainLoop, n, 2)
    }

    pub fn classic_quadratic() -> Self {
        Self {
            family: Family::ClassicQuadratic,
            n: 2,
            d: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::InvalidFamily(format!("{}: {why}", self.family)));
        match self.family {
            Family::Triangular if self.n < 2 || self.d < 2 => {
                bad(format!("needs n >= 2 and d >= 2, got n = {}, d = {}", self.n, self.d))
            }
            Family::ChainLoop if self.n < 2 => bad(format!("needs n >= 2, got {}", self.n)),
            Family::ClassicQuadratic if self.n != 2 => bad(format!("lives on P^2, got n = {}", self.n)),
            _ => Ok(()),
        }
    }

    /// Degree of the constructed map.
    pub fn degree(&self) -> i64 {
        match self.family {
            Family::Triangular => self.d,
            Family::ChainLoop | Family::ClassicQuadratic => 2,
        }
    }

    pub fn build(&self) -> Result<MonomialMap> {
        self.validate()?;
        let n = self.n;
        let log = match self.family {
            Family::Triangular | Family::ChainLoop => {
                let d = self.degree();
                let mut a = IntMatrix::zeros(n + 1, n + 1);
                a.set(0, 0, d);
                for i in 1..=n {
                    a.set(i - 1, i, d - 1);
                    a.set(i, i, 1);
                }
                a
            }
            Family::ClassicQuadratic => IntMatrix::from_rows(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]])?,
        };
        MonomialMap::from_log_matrix(log)
    }

    /// Closed-form inverse degree: `1 + c + ... + c^{n-1}` with `c = d - 1`
    /// for the triangular family, `n` for chain-loop and 2 for the classic map.
    pub fn predicted_inverse_degree(&self) -> Result<i64> {
        self.validate()?;
        match self.family {
            Family::Triangular => {
                let c = self.d - 1;
                let mut sum = 0i64;
                let mut power = 1i64;
                for _ in 0..self.n {
                    sum = sum.checked_add(power).ok_or(Error::Overflow("inverse degree"))?;
                    power = power.checked_mul(c).ok_or(Error::Overflow("inverse degree"))?;
                }
                Ok(sum)
            }
            Family::ChainLoop => Ok(self.n as i64),
            Family::ClassicQuadratic => Ok(2),
        }
    }

    /// The upper-triangular `B` with `b_ij = (1-d)^{j-i}` for `i <= j`.
    /// Dividing its first row by `d` gives the inverse of the triangular
    /// log-matrix.
    pub fn inverse_matrix_oracle(&self) -> Result<IntMatrix> {
        if self.family != Family::Triangular {
            return Err(Error::InvalidFamily(format!(
                "no inverse oracle for {}",
                self.family
            )));
        }
        self.validate()?;
        let n1 = self.n + 1;
        let base = 1 - self.d;
        let mut b = IntMatrix::zeros(n1, n1);
        for i in 0..n1 {
            let mut v = 1i64;
            for j in i..n1 {
                b.set(i, j, v);
                v = v.checked_mul(base).ok_or(Error::Overflow("inverse oracle"))?;
            }
        }
        Ok(b)
    }
}
