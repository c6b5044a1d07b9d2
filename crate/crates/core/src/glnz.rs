//! GL_n(Z) viewed as the group of monomial Cremona maps of P^n, and a random
//! walk over it by elementary row and column operations.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cremap::MonomialMap;
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

/// Square integer matrix with determinant ±1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnimodularMatrix(IntMatrix);

impl UnimodularMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        let det = m.det()?;
        if det.abs() != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(Self(m))
    }

    pub fn identity(n: usize) -> Self {
        Self(IntMatrix::identity(n))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn inverse(&self) -> Result<Self> {
        // g^-1 = det(g) * adj(g) and det(g) = ±1.
        let adj = self.0.adjugate()?;
        Ok(Self(if self.0.det()? < 0 { adj.neg()? } else { adj }))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.matmul(&other.0)?))
    }

    pub fn neg(&self) -> Result<Self> {
        Ok(Self(self.0.neg()?))
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// Extends `g` by a zero column and a row making every column sum vanish.
    pub fn extended(&self) -> Result<IntMatrix> {
        let n = self.n();
        let mut ext = IntMatrix::zeros(n + 1, n + 1);
        let sums = self.0.column_sums()?;
        for j in 1..=n {
            ext.set(0, j, sums[j - 1].checked_neg().ok_or(Error::Overflow("extension"))?);
            for i in 1..=n {
                ext.set(i, j, self.0.get(i - 1, j - 1));
            }
        }
        Ok(ext)
    }

    /// The reduced log-matrix `A_g`.
    pub fn to_cremona(&self) -> Result<MonomialMap> {
        let (log, _) = self.extended()?.reduce_rows()?;
        MonomialMap::from_reduced(log)
            .map_err(|e| Error::Internal(format!("A_g rejected for unimodular g: {e}")))
    }

    pub fn from_cremona(f: &MonomialMap) -> Result<Self> {
        let l = f.lattice_matrix();
        let det = l.det()?;
        if det.abs() != 1 {
            return Err(Error::NotBirational(det));
        }
        Ok(Self(l))
    }

    /// d(g): the sum over the rows of the extended matrix of the negated row
    /// minimum (column 0 is zero, so each term is nonnegative).
    pub fn degree(&self) -> Result<i64> {
        self.extended()?
            .row_minima()
            .into_iter()
            .try_fold(0i64, |acc, m| acc.checked_sub(m))
            .ok_or(Error::Overflow("degree"))
    }

    /// d(g^-1), the inverse degree of the associated map.
    pub fn inverse_degree(&self) -> Result<i64> {
        self.inverse()?.degree()
    }

    /// Applies an elementary operation in place.
    pub fn apply(&mut self, op: ElementaryOp) -> Result<()> {
        op.apply_to(&mut self.0)
    }
}

/// `Row { target, source, multiple }` adds `multiple * row source` to row
/// `target`; `Col` is the same on columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ElementaryOp {
    Row { target: usize, source: usize, multiple: i64 },
    Col { target: usize, source: usize, multiple: i64 },
}

impl ElementaryOp {
    pub fn inverse(self) -> Self {
        match self {
            Self::Row { target, source, multiple } => Self::Row { target, source, multiple: -multiple },
            Self::Col { target, source, multiple } => Self::Col { target, source, multiple: -multiple },
        }
    }

    fn apply_to(self, m: &mut IntMatrix) -> Result<()> {
        const OVF: Error = Error::Overflow("elementary operation");
        match self {
            Self::Row { target, source, multiple } => {
                assert_ne!(target, source);
                for j in 0..m.cols() {
                    let v = m.get(source, j).checked_mul(multiple).ok_or(OVF)?;
                    let v = m.get(target, j).checked_add(v).ok_or(OVF)?;
                    m.set(target, j, v);
                }
            }
            Self::Col { target, source, multiple } => {
                assert_ne!(target, source);
                for i in 0..m.rows() {
                    let v = m.get(i, source).checked_mul(multiple).ok_or(OVF)?;
                    let v = m.get(i, target).checked_add(v).ok_or(OVF)?;
                    m.set(i, target, v);
                }
            }
        }
        Ok(())
    }

    /// The operation that, applied to `g^-1`, keeps it the inverse of `g`
    /// after `self` is applied to `g`.
    ///
    /// `E g` has inverse `g^-1 E^-1`, so a row operation on `g` becomes a
    /// column operation on `g^-1` with roles swapped, and vice versa.
    fn dual(self) -> Self {
        match self.inverse() {
            Self::Row { target, source, multiple } => Self::Col { target: source, source: target, multiple },
            Self::Col { target, source, multiple } => Self::Row { target: source, source: target, multiple },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub n: usize,
    pub max_multiple: i64,
    pub d_max: i64,
    pub steps: usize,
    pub seed: u64,
}

impl WalkConfig {
    pub const DEFAULT_MAX_MULTIPLE: i64 = 4;

    pub fn new(n: usize, d_max: i64, steps: usize, seed: u64) -> Self {
        Self {
            n,
            max_multiple: Self::DEFAULT_MAX_MULTIPLE,
            d_max,
            steps,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig(format!("n = {} (need n >= 2)", self.n)));
        }
        if self.max_multiple < 1 {
            return Err(Error::InvalidConfig(format!(
                "max multiple {} (need >= 1)",
                self.max_multiple
            )));
        }
        if self.d_max < 2 {
            return Err(Error::InvalidConfig(format!("dmax {} (need >= 2)", self.d_max)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkSample {
    pub g: UnimodularMatrix,
    pub d: i64,
    pub d_prime: i64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkStats {
    pub operations: u64,
    pub degree_restarts: u64,
    pub overflow_restarts: u64,
}

/// Random walk on GL_n(Z) starting at the identity.
///
/// Each step picks a row or column operation with equal probability, two
/// distinct indices and a nonzero multiple in `[-max_multiple, max_multiple]`.
/// A step that pushes `d` or `d'` above `d_max`, or overflows, sends the walk
/// back to the identity and is retried; only in-range states are emitted.
/// The emitted stream is a function of the config alone.
#[derive(Clone, Debug)]
pub struct Walk {
    config: WalkConfig,
    rng: ChaCha8Rng,
    g: UnimodularMatrix,
    g_inv: UnimodularMatrix,
    emitted: usize,
    stats: WalkStats,
}

impl Walk {
    pub fn new(config: WalkConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            g: UnimodularMatrix::identity(config.n),
            g_inv: UnimodularMatrix::identity(config.n),
            emitted: 0,
            stats: WalkStats::default(),
            config,
        })
    }

    pub fn current(&self) -> &UnimodularMatrix {
        &self.g
    }

    pub fn current_inverse(&self) -> &UnimodularMatrix {
        &self.g_inv
    }

    pub fn stats(&self) -> WalkStats {
        self.stats
    }

    pub fn restart(&mut self) {
        self.g = UnimodularMatrix::identity(self.config.n);
        self.g_inv = UnimodularMatrix::identity(self.config.n);
    }

    pub fn random_op(&mut self) -> ElementaryOp {
        let n = self.config.n;
        let target = self.rng.gen_range(0..n);
        let mut source = self.rng.gen_range(0..n - 1);
        if source >= target {
            source += 1;
        }
        let k = self.config.max_multiple;
        let mut multiple = self.rng.gen_range(-k..k);
        if multiple >= 0 {
            multiple += 1;
        }
        if self.rng.gen_bool(0.5) {
            ElementaryOp::Row { target, source, multiple }
        } else {
            ElementaryOp::Col { target, source, multiple }
        }
    }

    /// Applies `op` and reports the new `(d, d')`, or restarts and returns
    /// `None` when the result leaves the configured range.
    pub fn step_with(&mut self, op: ElementaryOp) -> Option<(i64, i64)> {
        self.stats.operations += 1;
        let outcome = (|| -> Result<(i64, i64)> {
            self.g.apply(op)?;
            self.g_inv.apply(op.dual())?;
            Ok((self.g.degree()?, self.g_inv.degree()?))
        })();
        match outcome {
            Ok((d, dp)) if d <= self.config.d_max && dp <= self.config.d_max => Some((d, dp)),
            Ok(_) => {
                self.stats.degree_restarts += 1;
                self.restart();
                None
            }
            Err(_) => {
                self.stats.overflow_restarts += 1;
                self.restart();
                None
            }
        }
    }
}

impl Iterator for Walk {
    type Item = WalkSample;

    fn next(&mut self) -> Option<WalkSample> {
        if self.emitted >= self.config.steps {
            return None;
        }
        loop {
            let op = self.random_op();
            if let Some((d, d_prime)) = self.step_with(op) {
                self.emitted += 1;
                return Some(WalkSample {
                    g: self.g.clone(),
                    d,
                    d_prime,
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(rows: &[&[i64]]) -> UnimodularMatrix {
        UnimodularMatrix::new(IntMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn rejects_non_unimodular() {
        assert_eq!(
            UnimodularMatrix::new(IntMatrix::scalar(2, 2)),
            Err(Error::NotUnimodular(4))
        );
    }

    #[test]
    fn example_one_a_g() {
        let g = u(&[&[1, 24], &[1, 25]]);
        assert_eq!(g.extended().unwrap(), m(&[&[0, -2, -49], &[0, 1, 24], &[0, 1, 25]]));
        let f = g.to_cremona().unwrap();
        assert_eq!(f.log_matrix(), &m(&[&[49, 47, 0], &[0, 1, 24], &[0, 1, 25]]));
        assert_eq!(f.degree(), 49);
        assert_eq!(g.degree().unwrap(), 49);

        let gt = g.transpose();
        assert_eq!(
            gt.to_cremona().unwrap().log_matrix(),
            &m(&[&[26, 1, 0], &[0, 1, 1], &[0, 24, 25]])
        );
        assert_eq!(gt.degree().unwrap(), 26);

        let ginv = g.inverse().unwrap();
        assert_eq!(ginv.matrix(), &m(&[&[25, -24], &[-1, 1]]));
        assert_eq!(ginv.degree().unwrap(), 49);
        assert_eq!(g.inverse_degree().unwrap(), 49);
    }

    #[test]
    fn identity_round_trip() {
        for n in 2..6 {
            let f = UnimodularMatrix::identity(n).to_cremona().unwrap();
            assert_eq!(f, MonomialMap::identity(n));
            assert_eq!(
                UnimodularMatrix::from_cremona(&f).unwrap(),
                UnimodularMatrix::identity(n)
            );
        }
    }

    #[test]
    fn from_cremona_examples() {
        let ag = MonomialMap::from_log_matrix(m(&[&[49, 47, 0], &[0, 1, 24], &[0, 1, 25]])).unwrap();
        assert_eq!(UnimodularMatrix::from_cremona(&ag).unwrap(), u(&[&[1, 24], &[1, 25]]));

        let classic = MonomialMap::from_log_matrix(m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])).unwrap();
        let l = UnimodularMatrix::from_cremona(&classic).unwrap();
        assert_eq!(l.matrix(), &m(&[&[-1, 0], &[0, -1]]));
        assert_eq!(l.to_cremona().unwrap(), classic);

        let squares = MonomialMap::from_log_matrix(IntMatrix::scalar(3, 2)).unwrap();
        assert_eq!(UnimodularMatrix::from_cremona(&squares), Err(Error::NotBirational(4)));
    }

    #[test]
    fn degree_examples() {
        for n in 2..=8 {
            assert_eq!(UnimodularMatrix::identity(n).neg().unwrap().degree().unwrap(), n as i64);
        }
        let t = u(&[&[1, 1], &[0, 1]]);
        assert_eq!(t.to_cremona().unwrap().log_matrix(), &m(&[&[2, 1, 0], &[0, 1, 1], &[0, 0, 1]]));
        assert_eq!(t.degree().unwrap(), 2);
    }

    #[test]
    fn walk_zero_steps() {
        let mut w = Walk::new(WalkConfig::new(3, 10, 0, 7)).unwrap();
        assert!(w.next().is_none());
        assert_eq!(w.current(), &UnimodularMatrix::identity(3));
        assert_eq!(w.current().degree().unwrap(), 1);
        assert_eq!(w.current().inverse_degree().unwrap(), 1);
    }

    #[test]
    fn walk_single_known_step() {
        let mut w = Walk::new(WalkConfig::new(2, 10, 1, 0)).unwrap();
        let got = w.step_with(ElementaryOp::Row { target: 0, source: 1, multiple: 1 });
        assert_eq!(got, Some((2, 2)));
        assert_eq!(w.current(), &u(&[&[1, 1], &[0, 1]]));
    }

    #[test]
    fn walk_keeps_inverse_in_sync() {
        let mut w = Walk::new(WalkConfig::new(4, 40, 500, 11)).unwrap();
        while let Some(s) = w.next() {
            assert_eq!(
                s.g.matrix().matmul(w.current_inverse().matrix()).unwrap(),
                IntMatrix::identity(4)
            );
            assert!(s.d <= 40 && s.d_prime <= 40);
            assert_eq!(s.d, s.g.degree().unwrap());
            assert_eq!(s.d_prime, s.g.to_cremona().unwrap().invert().unwrap().inverse_degree);
        }
    }

    #[test]
    fn walk_is_deterministic() {
        let cfg = WalkConfig::new(3, 30, 200, 42);
        let a: Vec<_> = Walk::new(cfg).unwrap().collect();
        let b: Vec<_> = Walk::new(cfg).unwrap().collect();
        assert_eq!(a.len(), 200);
        assert_eq!(a, b);
        let c: Vec<_> = Walk::new(WalkConfig { seed: 43, ..cfg }).unwrap().collect();
        assert_ne!(a, c);
    }

    #[test]
    fn walk_restarts_when_degree_exceeds() {
        let mut w = Walk::new(WalkConfig::new(2, 2, 1, 0)).unwrap();
        assert!(w.step_with(ElementaryOp::Row { target: 0, source: 1, multiple: 3 }).is_none());
        assert_eq!(w.current(), &UnimodularMatrix::identity(2));
        assert_eq!(w.stats().degree_restarts, 1);
    }

    #[test]
    fn walk_restarts_on_overflow() {
        let mut w = Walk::new(WalkConfig::new(2, i64::MAX, 1, 0)).unwrap();
        let big = i64::MAX / 4;
        let ops = [
            ElementaryOp::Row { target: 0, source: 1, multiple: big },
            ElementaryOp::Row { target: 1, source: 0, multiple: big },
        ];
        let restarted = ops.iter().cycle().take(10).any(|&op| w.step_with(op).is_none());
        assert!(restarted);
        assert_eq!(w.stats().overflow_restarts, 1);
        assert_eq!(w.current(), &UnimodularMatrix::identity(2));
    }

    #[test]
    fn invalid_configs() {
        assert!(Walk::new(WalkConfig::new(1, 10, 1, 0)).is_err());
        assert!(Walk::new(WalkConfig::new(3, 1, 1, 0)).is_err());
        assert!(Walk::new(WalkConfig { max_multiple: 0, ..WalkConfig::new(3, 10, 1, 0) }).is_err());
    }
}
