//! Concrete utility families and oracle wrappers.
//!
//! Two families cover the problem specializations this crate targets:
//! weighted coverage (each element is a subset of a ground set, utility is
//! the weight of the union) and facility location (each element serves every
//! customer at some rate, utility is the sum of per-customer maxima). Both
//! are monotone, submodular, and second-order supermodular; the checkers in
//! [`crate::properties`] can certify that exhaustively for small n.
//!
//! [`TabulatedUtility`] stores an explicit value per subset and is the escape
//! hatch for adversarial set functions the two families cannot express.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::instance::UtilityOracle;

/// Weighted coverage: u(S) = total weight of ∪_{i∈S} D_i.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageUtility {
    m: usize,
    subsets: Vec<Vec<usize>>,
    weights: Vec<f64>,
}

impl CoverageUtility {
    /// Unit weights. Each `subsets[i]` is sorted and deduplicated; identical
    /// subsets for different i are kept as distinct elements.
    pub fn new(m: usize, subsets: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_weights(m, subsets, vec![1.0; m])
    }

    pub fn with_weights(m: usize, subsets: Vec<Vec<usize>>, weights: Vec<f64>) -> Result<Self> {
        if subsets.is_empty() {
            return Err(Error::InvalidConfig {
                reason: "coverage utility needs at least one subset".to_string(),
            });
        }
        if weights.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                actual: weights.len(),
            });
        }
        for (b, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::InvalidConfig {
                    reason: format!("weight {b} is {w}; ground-element weights must be > 0"),
                });
            }
        }
        let mut sorted = Vec::with_capacity(subsets.len());
        for (i, mut d) in subsets.into_iter().enumerate() {
            for &b in &d {
                if b >= m {
                    return Err(Error::InvalidConfig {
                        reason: format!("subset {i} lists ground element {b}, but m = {m}"),
                    });
                }
            }
            d.sort_unstable();
            d.dedup();
            sorted.push(d);
        }
        Ok(CoverageUtility {
            m,
            subsets: sorted,
            weights,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl UtilityOracle for CoverageUtility {
    fn n(&self) -> usize {
        self.subsets.len()
    }

    fn eval(&self, subset: &[usize]) -> f64 {
        let mut covered = vec![false; self.m];
        for &i in subset {
            for &b in &self.subsets[i] {
                covered[b] = true;
            }
        }
        // Summation in ground order keeps the value independent of the
        // subset's order.
        covered
            .iter()
            .zip(&self.weights)
            .filter(|(&c, _)| c)
            .map(|(_, &w)| w)
            .sum()
    }
}

/// Facility location: u(S) = Σ_b max_{a∈S} M[a][b], with the empty max 0.
#[derive(Debug, Clone, PartialEq)]
pub struct FacilityLocationUtility {
    matrix: Vec<Vec<f64>>,
    m: usize,
}

impl FacilityLocationUtility {
    /// `matrix[a][b]` is the service rate of facility a for customer b; all
    /// rows must have equal length and non-negative finite entries.
    pub fn new(matrix: Vec<Vec<f64>>) -> Result<Self> {
        if matrix.is_empty() {
            return Err(Error::InvalidConfig {
                reason: "facility utility needs at least one row".to_string(),
            });
        }
        let m = matrix[0].len();
        for (a, row) in matrix.iter().enumerate() {
            if row.len() != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    actual: row.len(),
                });
            }
            for (b, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidConfig {
                        reason: format!("matrix entry ({a}, {b}) is {v}; rates must be finite and >= 0"),
                    });
                }
            }
        }
        Ok(FacilityLocationUtility { matrix, m })
    }

    /// Rates as inverse Euclidean distances between station and customer
    /// points. A customer closer than 1e-9 to some station is rejected (its
    /// rate would blow up).
    pub fn from_points(stations: &[(f64, f64)], customers: &[(f64, f64)]) -> Result<Self> {
        let mut matrix = vec![vec![0.0; customers.len()]; stations.len()];
        for (a, &(sx, sy)) in stations.iter().enumerate() {
            for (b, &(cx, cy)) in customers.iter().enumerate() {
                let dist = ((sx - cx).powi(2) + (sy - cy).powi(2)).sqrt();
                if dist <= 1e-9 {
                    return Err(Error::CustomerTooClose {
                        station: a,
                        customer: b,
                    });
                }
                matrix[a][b] = 1.0 / dist;
            }
        }
        Self::new(matrix)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }
}

impl UtilityOracle for FacilityLocationUtility {
    fn n(&self) -> usize {
        self.matrix.len()
    }

    fn eval(&self, subset: &[usize]) -> f64 {
        (0..self.m)
            .map(|b| {
                subset
                    .iter()
                    .map(|&a| self.matrix[a][b])
                    .fold(0.0, f64::max)
            })
            .sum()
    }
}

/// Explicit value per subset, indexed by bitmask. Capped at n = 14.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedUtility {
    n: usize,
    values: Vec<f64>,
}

pub const TABULATED_MAX_N: usize = 14;

impl TabulatedUtility {
    /// `values[mask]` is u of the subset whose members are the set bits of
    /// `mask`. `values[0]` must be exactly 0.
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if n > TABULATED_MAX_N {
            return Err(Error::Capacity {
                operation: "tabulated utility",
                n,
                max: TABULATED_MAX_N,
            });
        }
        if values.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                actual: values.len(),
            });
        }
        if values[0] != 0.0 {
            return Err(Error::UnnormalizedOracle { value: values[0] });
        }
        Ok(TabulatedUtility { n, values })
    }

    /// Tabulate `f` over every subset of `0..n`.
    pub fn from_fn(n: usize, f: impl Fn(&[usize]) -> f64) -> Result<Self> {
        if n > TABULATED_MAX_N {
            return Err(Error::Capacity {
                operation: "tabulated utility",
                n,
                max: TABULATED_MAX_N,
            });
        }
        let mut values = Vec::with_capacity(1 << n);
        let mut members = Vec::with_capacity(n);
        for mask in 0u32..(1u32 << n) {
            members.clear();
            for e in 0..n {
                if mask & (1 << e) != 0 {
                    members.push(e);
                }
            }
            values.push(f(&members));
        }
        Self::new(n, values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl UtilityOracle for TabulatedUtility {
    fn n(&self) -> usize {
        self.n
    }

    fn eval(&self, subset: &[usize]) -> f64 {
        let mut mask = 0usize;
        for &e in subset {
            mask |= 1 << e;
        }
        self.values[mask]
    }
}

/// Wrap a closure as an oracle. `f` must be a pure function of the set of
/// entries and return exactly 0 for the empty slice.
pub struct FnOracle<F> {
    n: usize,
    f: F,
}

impl<F: Fn(&[usize]) -> f64 + Send + Sync> FnOracle<F> {
    pub fn new(n: usize, f: F) -> Self {
        FnOracle { n, f }
    }
}

impl<F: Fn(&[usize]) -> f64 + Send + Sync> UtilityOracle for FnOracle<F> {
    fn n(&self) -> usize {
        self.n
    }

    fn eval(&self, subset: &[usize]) -> f64 {
        (self.f)(subset)
    }
}

/// Cache of evaluations keyed by the sorted subset.
///
/// The cache is behind a mutex, so the wrapper stays shareable across
/// threads; contended use serializes, which is acceptable at solver scale.
pub struct MemoizedOracle<U> {
    inner: U,
    cache: Mutex<HashMap<Vec<usize>, f64>>,
}

impl<U: UtilityOracle> MemoizedOracle<U> {
    pub fn new(inner: U) -> Self {
        MemoizedOracle {
            inner,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn into_inner(self) -> U {
        self.inner
    }
}

impl<U: UtilityOracle> UtilityOracle for MemoizedOracle<U> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn eval(&self, subset: &[usize]) -> f64 {
        let mut key = subset.to_vec();
        key.sort_unstable();
        let mut cache = self.cache.lock().expect("memo cache poisoned");
        if let Some(&v) = cache.get(&key) {
            return v;
        }
        let v = self.inner.eval(subset);
        cache.insert(key, v);
        v
    }
}

/// Pass-through wrapper that counts evaluations; used to check oracle-call
/// budgets in tests.
pub struct CountingOracle<U> {
    inner: U,
    calls: AtomicUsize,
}

impl<U: UtilityOracle> CountingOracle<U> {
    pub fn new(inner: U) -> Self {
        CountingOracle {
            inner,
            calls: AtomicUsize::new(0),
        }
    }

    pub fn evaluations(&self) -> usize {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }
}

impl<U: UtilityOracle> UtilityOracle for CountingOracle<U> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn eval(&self, subset: &[usize]) -> f64 {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.eval(subset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coverage_union_weight() {
        // Two subsets over a 2-element ground set: {0} and {0, 1}.
        let cu = CoverageUtility::new(2, vec![vec![0], vec![0, 1]]).unwrap();
        assert_eq!(cu.eval(&[0, 1]), 2.0);
        assert_eq!(cu.eval(&[]), 0.0);
        assert_eq!(cu.eval(&[0]), 1.0);
        assert_eq!(cu.eval(&[1]), 2.0);
        // Order and duplicates do not change the union.
        assert_eq!(cu.eval(&[1, 0, 1]), 2.0);
    }

    #[test]
    fn coverage_weighted() {
        let cu = CoverageUtility::with_weights(
            4,
            vec![vec![0, 1, 2], vec![2, 3]],
            vec![1.0, 1.0, 1.0, 5.0],
        )
        .unwrap();
        assert_eq!(cu.eval(&[1]), 6.0);
        assert_eq!(cu.eval(&[0]), 3.0);
        assert_eq!(cu.eval(&[0, 1]), 8.0);
    }

    #[test]
    fn coverage_validation() {
        assert!(CoverageUtility::new(2, vec![]).is_err());
        assert!(CoverageUtility::new(2, vec![vec![2]]).is_err());
        assert!(CoverageUtility::with_weights(1, vec![vec![0]], vec![0.0]).is_err());
        assert!(CoverageUtility::with_weights(1, vec![vec![0]], vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn facility_column_maxima() {
        let fu = FacilityLocationUtility::new(vec![vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        assert_eq!(fu.eval(&[0, 1]), 3.0);
        assert_eq!(fu.eval(&[]), 0.0);
        assert_eq!(fu.eval(&[0]), 1.0);
        assert_eq!(fu.eval(&[1]), 2.0);
    }

    #[test]
    fn facility_single_row_sums() {
        let fu = FacilityLocationUtility::new(vec![vec![0.25, 1.5, 3.0]]).unwrap();
        assert_eq!(fu.eval(&[0]), 4.75);
    }

    #[test]
    fn facility_from_points_inverse_distance() {
        let fu =
            FacilityLocationUtility::from_points(&[(0.0, 0.0), (3.0, 4.0)], &[(3.0, 0.0)]).unwrap();
        assert_eq!(fu.matrix()[0][0], 1.0 / 3.0);
        assert_eq!(fu.matrix()[1][0], 1.0 / 4.0);
        let err = FacilityLocationUtility::from_points(&[(1.0, 1.0)], &[(1.0, 1.0)]).unwrap_err();
        assert!(matches!(
            err,
            Error::CustomerTooClose {
                station: 0,
                customer: 0
            }
        ));
    }

    #[test]
    fn facility_validation() {
        assert!(FacilityLocationUtility::new(vec![]).is_err());
        assert!(FacilityLocationUtility::new(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(FacilityLocationUtility::new(vec![vec![-1.0]]).is_err());
    }

    #[test]
    fn tabulated_lookup() {
        let t = TabulatedUtility::from_fn(3, |s| s.len().min(2) as f64).unwrap();
        assert_eq!(t.eval(&[]), 0.0);
        assert_eq!(t.eval(&[1]), 1.0);
        assert_eq!(t.eval(&[0, 2]), 2.0);
        assert_eq!(t.eval(&[0, 1, 2]), 2.0);
        assert!(TabulatedUtility::new(1, vec![0.5, 1.0]).is_err());
        assert!(TabulatedUtility::new(1, vec![0.0]).is_err());
        assert!(TabulatedUtility::from_fn(15, |_| 0.0).is_err());
    }

    #[test]
    fn memoized_matches_inner() {
        let cu = CoverageUtility::new(3, vec![vec![0], vec![0, 1], vec![2]]).unwrap();
        let memo = MemoizedOracle::new(cu.clone());
        let queries: Vec<Vec<usize>> = vec![
            vec![],
            vec![0],
            vec![1, 0],
            vec![0, 1],
            vec![2, 1, 0],
            vec![0],
            vec![2],
        ];
        for q in &queries {
            assert_eq!(memo.eval(q), cu.eval(q));
        }
    }

    #[test]
    fn counting_counts() {
        let cu = CoverageUtility::new(2, vec![vec![0], vec![1]]).unwrap();
        let counter = CountingOracle::new(cu);
        counter.eval(&[]);
        counter.eval(&[0, 1]);
        assert_eq!(counter.evaluations(), 2);
        counter.reset();
        assert_eq!(counter.evaluations(), 0);
    }
}
