//! Exhaustive enumeration of the monomial Cremona maps of a given degree.
//!
//! Every unordered selection of `n+1` distinct degree-`d` monomials in
//! `x_0..x_n` is examined once, so column order is factored out but row
//! (variable) permutations are not. A selection survives when its
//! log-matrix is already reduced (degree stays `d`) and the induced lattice
//! map is unimodular. The inverse degree of each survivor is tallied.
//!
//! Work is split by the first two chosen monomial indices. Each task owns a
//! private histogram, and partial results are merged by exact addition, so
//! the report does not depend on the number of workers.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cremap::MonomialMap;
use crate::error::{Error, Result};
use crate::intmat::{adjugate_into, det_in_place, IntMatrix};

/// Largest supported `n + 1`; row masks are `u8`.
pub const MAX_VARS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHistogram {
    pub counts: BTreeMap<i64, u64>,
}

impl DegreeHistogram {
    pub fn add(&mut self, d_prime: i64, count: u64) {
        if count > 0 {
            *self.counts.entry(d_prime).or_default() += count;
        }
    }

    pub fn get(&self, d_prime: i64) -> u64 {
        self.counts.get(&d_prime).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    fn observed(&self) -> impl DoubleEndedIterator<Item = i64> + '_ {
        self.counts.iter().filter(|(_, &c)| c > 0).map(|(&k, _)| k)
    }

    pub fn min(&self) -> Option<i64> {
        self.observed().next()
    }

    pub fn max(&self) -> Option<i64> {
        self.observed().next_back()
    }

    /// Unobserved values strictly between the smallest and largest observed.
    pub fn gaps(&self) -> Result<Vec<i64>> {
        let (Some(lo), Some(hi)) = (self.min(), self.max()) else {
            return Err(Error::EmptyHistogram);
        };
        Ok((lo + 1..hi).filter(|&v| self.get(v) == 0).collect())
    }

    /// Dense `(d', count)` rows from the minimum to the maximum, zeros included.
    pub fn rows(&self) -> Vec<(i64, u64)> {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => (lo..=hi).map(|v| (v, self.get(v))).collect(),
            _ => Vec::new(),
        }
    }
}

impl FromIterator<(i64, u64)> for DegreeHistogram {
    fn from_iter<I: IntoIterator<Item = (i64, u64)>>(iter: I) -> Self {
        let mut h = Self::default();
        for (k, c) in iter {
            h.add(k, c);
        }
        h
    }
}

pub fn gaps_of(h: &DegreeHistogram) -> Result<Vec<i64>> {
    h.gaps()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub d: i64,
    pub total_combinations: u64,
    pub surviving: u64,
    pub histogram: DegreeHistogram,
    pub gaps: Vec<i64>,
    pub min_d_prime: Option<i64>,
    pub max_d_prime: Option<i64>,
}

/// All exponent vectors of length `n+1` summing to `d`, in descending
/// lexicographic order (`x_0^d` first).
pub fn monomials_of_degree(n: usize, d: i64) -> Vec<ExponentVector> {
    fn fill(pos: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<ExponentVector>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(ExponentVector(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            fill(pos + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if d >= 0 {
        fill(0, d, &mut vec![0; n + 1], &mut out);
    }
    out
}

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Enumerates and tallies every map of degree `d` on P^n using `jobs`
/// workers (0 = all available cores).
pub fn enumerate(n: usize, d: i64, jobs: usize) -> Result<CensusReport> {
    Census::new(n, d)?.enumerate(jobs)
}

/// Surviving maps whose inverse degree is one of `targets`. Every target is
/// present in the result, possibly with an empty list.
pub fn extremal_witnesses(
    n: usize,
    d: i64,
    targets: &BTreeSet<i64>,
) -> Result<BTreeMap<i64, Vec<MonomialMap>>> {
    Census::new(n, d)?.witnesses(targets)
}

/// A prepared enumeration over the degree-`d` monomials of P^n.
#[derive(Clone, Debug)]
pub struct Census {
    n: usize,
    d: i64,
    monomials: Vec<ExponentVector>,
    exps: Vec<[i64; MAX_VARS]>,
    zero_mask: Vec<u8>,
    support_mask: Vec<u8>,
    full_mask: u8,
    total: u64,
}

#[derive(Default)]
struct Partial {
    examined: u64,
    counts: Vec<u64>,
}

impl Partial {
    fn tally(&mut self, d_prime: i64) {
        let k = d_prime as usize;
        if k >= self.counts.len() {
            self.counts.resize(k + 1, 0);
        }
        self.counts[k] += 1;
    }

    fn merge(mut self, other: Partial) -> Partial {
        if other.counts.len() > self.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.examined += other.examined;
        self
    }
}

impl Census {
    pub fn new(n: usize, d: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidConfig(format!("census needs n >= 2, got {n}")));
        }
        if d < 1 {
            return Err(Error::InvalidConfig(format!("census needs d >= 1, got {d}")));
        }
        if n + 1 > MAX_VARS {
            return Err(Error::Resource(format!(
                "census supports at most {MAX_VARS} variables, P^{n} has {}",
                n + 1
            )));
        }
        let count = binomial(n as u64 + d as u64, n as u64)
            .ok_or_else(|| Error::Resource(format!("too many monomials of degree {d} on P^{n}")))?;
        let total = binomial(count, n as u64 + 1).ok_or_else(|| {
            Error::Resource(format!(
                "C({count}, {}) combinations exceed 64 bits",
                n + 1
            ))
        })?;

        let monomials = monomials_of_degree(n, d);
        let mut exps = Vec::with_capacity(monomials.len());
        let mut zero_mask = Vec::with_capacity(monomials.len());
        let mut support_mask = Vec::with_capacity(monomials.len());
        for m in &monomials {
            let mut e = [0i64; MAX_VARS];
            let (mut z, mut s) = (0u8, 0u8);
            for (i, &v) in m.0.iter().enumerate() {
                e[i] = v;
                if v == 0 {
                    z |= 1 << i;
                } else {
                    s |= 1 << i;
                }
            }
            exps.push(e);
            zero_mask.push(z);
            support_mask.push(s);
        }
        Ok(Self {
            n,
            d,
            monomials,
            exps,
            zero_mask,
            support_mask,
            full_mask: ((1u16 << (n + 1)) - 1) as u8,
            total,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn monomials(&self) -> &[ExponentVector] {
        &self.monomials
    }

    /// `C(C(n+d, n), n+1)`.
    pub fn total_combinations(&self) -> u64 {
        self.total
    }

    /// The map whose columns are the selected monomials, in order.
    pub fn map_of(&self, selection: &[usize]) -> Result<MonomialMap> {
        let n1 = self.n + 1;
        let mut m = IntMatrix::zeros(n1, selection.len());
        for (j, &idx) in selection.iter().enumerate() {
            for i in 0..n1 {
                m.set(i, j, self.exps[idx][i]);
            }
        }
        MonomialMap::from_log_matrix(m)
    }

    fn tasks(&self) -> Vec<(usize, usize)> {
        let m = self.monomials.len();
        let k = self.n + 1;
        // Only prefixes that leave room for the remaining k-2 picks.
        (0..m)
            .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
            .filter(|&(_, b)| m - b > k - 2)
            .collect()
    }

    pub fn enumerate(&self, jobs: usize) -> Result<CensusReport> {
        let tasks = self.tasks();
        let run = |&(a, b): &(usize, usize)| -> Result<Partial> {
            let mut p = Partial::default();
            p.examined = self.scan_prefix(a, b, &mut |_, dp| p.tally(dp))?;
            Ok(p)
        };

        let merged = self.run_parallel(jobs, &tasks, run)?;
        if merged.examined != self.total {
            return Err(Error::Internal(format!(
                "examined {} combinations, expected {}",
                merged.examined, self.total
            )));
        }
        let histogram: DegreeHistogram = merged
            .counts
            .iter()
            .enumerate()
            .map(|(k, &c)| (k as i64, c))
            .collect();
        let surviving = histogram.total();
        let gaps = if histogram.is_empty() { Vec::new() } else { histogram.gaps()? };
        Ok(CensusReport {
            n: self.n,
            d: self.d,
            total_combinations: merged.examined,
            surviving,
            min_d_prime: histogram.min(),
            max_d_prime: histogram.max(),
            histogram,
            gaps,
        })
    }

    #[cfg(feature = "parallel")]
    fn run_parallel<F>(&self, jobs: usize, tasks: &[(usize, usize)], run: F) -> Result<Partial>
    where
        F: Fn(&(usize, usize)) -> Result<Partial> + Sync,
    {
        use rayon::prelude::*;
        if jobs == 1 {
            return tasks.iter().try_fold(Partial::default(), |acc, t| Ok(acc.merge(run(t)?)));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
        pool.install(|| {
            tasks
                .par_iter()
                .map(&run)
                .try_reduce(Partial::default, |a, b| Ok(a.merge(b)))
        })
    }

    #[cfg(not(feature = "parallel"))]
    fn run_parallel<F>(&self, _jobs: usize, tasks: &[(usize, usize)], run: F) -> Result<Partial>
    where
        F: Fn(&(usize, usize)) -> Result<Partial>,
    {
        tasks.iter().try_fold(Partial::default(), |acc, t| Ok(acc.merge(run(t)?)))
    }

    /// Calls `visit(selection, d')` for every surviving selection, in
    /// lexicographic order of the selected indices. Returns the number of
    /// combinations examined.
    pub fn for_each_survivor(&self, mut visit: impl FnMut(&[usize], i64)) -> Result<u64> {
        let mut examined = 0;
        for (a, b) in self.tasks() {
            examined += self.scan_prefix(a, b, &mut visit)?;
        }
        Ok(examined)
    }

    pub fn witnesses(&self, targets: &BTreeSet<i64>) -> Result<BTreeMap<i64, Vec<MonomialMap>>> {
        let mut hits: BTreeMap<i64, Vec<Vec<usize>>> =
            targets.iter().map(|&t| (t, Vec::new())).collect();
        self.for_each_survivor(|sel, dp| {
            if let Some(list) = hits.get_mut(&dp) {
                list.push(sel.to_vec());
            }
        })?;
        hits.into_iter()
            .map(|(t, sels)| {
                let maps = sels.iter().map(|s| self.map_of(s)).collect::<Result<_>>()?;
                Ok((t, maps))
            })
            .collect()
    }

    fn scan_prefix(
        &self,
        a: usize,
        b: usize,
        visit: &mut impl FnMut(&[usize], i64),
    ) -> Result<u64> {
        let k = self.n + 1;
        let mut sel = [0usize; MAX_VARS];
        sel[0] = a;
        sel[1] = b;
        let zeros = self.zero_mask[a] | self.zero_mask[b];
        let support = self.support_mask[a] | self.support_mask[b];
        if k == 2 {
            return Ok(0);
        }
        self.descend(&mut sel, 2, b + 1, zeros, support, visit)
    }

    fn descend(
        &self,
        sel: &mut [usize; MAX_VARS],
        depth: usize,
        start: usize,
        zeros: u8,
        support: u8,
        visit: &mut impl FnMut(&[usize], i64),
    ) -> Result<u64> {
        let k = self.n + 1;
        let m = self.monomials.len();
        let remaining = k - depth;
        let mut examined = 0;
        for idx in start..=m - remaining {
            sel[depth] = idx;
            let z = zeros | self.zero_mask[idx];
            let s = support | self.support_mask[idx];
            if remaining == 1 {
                examined += 1;
                // Every row needs a zero (else the degree drops) and a nonzero
                // entry (else the lattice map is singular).
                if z == self.full_mask && s == self.full_mask {
                    if let Some(dp) = self.inverse_degree(&sel[..k])? {
                        visit(&sel[..k], dp);
                    }
                }
            } else {
                examined += self.descend(sel, depth + 1, idx + 1, z, s, visit)?;
            }
        }
        Ok(examined)
    }

    /// Inverse degree of a reduced selection, or `None` when not birational.
    fn inverse_degree(&self, sel: &[usize]) -> Result<Option<i64>> {
        let n = self.n;
        let n1 = n + 1;
        let base = &self.exps[sel[0]];

        let mut lattice = [0i64; MAX_VARS * MAX_VARS];
        for i in 0..n {
            for j in 0..n {
                lattice[i * n + j] = self.exps[sel[j + 1]][i + 1] - base[i + 1];
            }
        }
        let det = det_in_place(&mut lattice[..n * n], n)?;
        if det.abs() != 1 {
            return Ok(None);
        }

        // det A = d * det L, so sign(det A) = det L.
        let mut a = [0i64; MAX_VARS * MAX_VARS];
        for (j, &idx) in sel.iter().enumerate() {
            for i in 0..n1 {
                a[i * n1 + j] = self.exps[idx][i];
            }
        }
        let mut adj = [0i64; MAX_VARS * MAX_VARS];
        let mut scratch = [0i64; MAX_VARS * MAX_VARS];
        adjugate_into(&a[..n1 * n1], n1, &mut adj[..n1 * n1], &mut scratch)?;

        let mut minima_sum = 0i64;
        for i in 0..n1 {
            let row_min = adj[i * n1..(i + 1) * n1].iter().map(|&v| v * det).min().unwrap();
            minima_sum += row_min;
        }
        let numerator = 1 - minima_sum;
        if numerator % self.d != 0 {
            return Err(Error::Internal(format!(
                "inverse degree numerator {numerator} not divisible by {}",
                self.d
            )));
        }
        Ok(Some(numerator / self.d))
    }
}
