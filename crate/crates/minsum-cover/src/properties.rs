//! Exhaustive checkers for the three set-function properties the solver
//! guarantees rely on: monotonicity, submodularity, and second-order
//! supermodularity (the diminishment of returns itself diminishes).
//!
//! Checks enumerate every subset and every admissible index tuple, so a
//! failure always comes with a concrete witness that re-evaluates to a
//! violation; there is no sampling and no silent fallback for large n.

use crate::error::{Error, Result};
use crate::instance::UtilityOracle;

/// Largest n for which exhaustive enumeration is allowed (2^14 subsets times
/// n³ index tuples is the practical ceiling).
pub const PROPERTY_CHECK_MAX_N: usize = 14;

/// Absolute slack allowed before an inequality counts as violated.
pub const PROPERTY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyKind {
    Monotone,
    Submodular,
    SecondOrderSupermodular,
}

impl std::fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PropertyKind::Monotone => "monotone",
            PropertyKind::Submodular => "submodular",
            PropertyKind::SecondOrderSupermodular => "second_order_supermodular",
        };
        f.write_str(s)
    }
}

/// A concrete inequality violation: the defining inequality of the property,
/// instantiated at (S, i[, j[, k]]), evaluated to `lhs < rhs - tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyViolation {
    pub subset: Vec<usize>,
    pub i: usize,
    pub j: Option<usize>,
    pub k: Option<usize>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub property: PropertyKind,
    pub holds: bool,
    pub witness: Option<PropertyViolation>,
}

/// Exhaustively check one property of `oracle` over all of `0..n`, n ≤ 14.
///
/// The oracle is evaluated once per subset (2^n evaluations); the inequality
/// scans then run off the cached table. Enumeration order is mask-ascending,
/// then i, j, k ascending, so the reported witness is deterministic.
pub fn check_property(oracle: &dyn UtilityOracle, property: PropertyKind) -> Result<PropertyReport> {
    let n = oracle.n();
    if n > PROPERTY_CHECK_MAX_N {
        return Err(Error::Capacity {
            operation: "exhaustive property check",
            n,
            max: PROPERTY_CHECK_MAX_N,
        });
    }
    let values = tabulate(oracle, n);
    let witness = match property {
        PropertyKind::Monotone => scan_monotone(&values, n),
        PropertyKind::Submodular => scan_submodular(&values, n),
        PropertyKind::SecondOrderSupermodular => scan_second_order(&values, n),
    };
    Ok(PropertyReport {
        property,
        holds: witness.is_none(),
        witness,
    })
}

/// All three properties, in definition order.
pub fn check_all_properties(oracle: &dyn UtilityOracle) -> Result<Vec<PropertyReport>> {
    [
        PropertyKind::Monotone,
        PropertyKind::Submodular,
        PropertyKind::SecondOrderSupermodular,
    ]
    .into_iter()
    .map(|p| check_property(oracle, p))
    .collect()
}

fn tabulate(oracle: &dyn UtilityOracle, n: usize) -> Vec<f64> {
    let mut values = Vec::with_capacity(1 << n);
    let mut members = Vec::with_capacity(n);
    for mask in 0usize..(1 << n) {
        members.clear();
        for e in 0..n {
            if mask >> e & 1 == 1 {
                members.push(e);
            }
        }
        values.push(oracle.eval(&members));
    }
    values
}

fn members_of(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|e| mask >> e & 1 == 1).collect()
}

fn scan_monotone(values: &[f64], n: usize) -> Option<PropertyViolation> {
    for mask in 0..values.len() {
        for i in 0..n {
            if mask >> i & 1 == 1 {
                continue;
            }
            let lhs = values[mask | 1 << i];
            let rhs = values[mask];
            if lhs < rhs - PROPERTY_TOLERANCE {
                return Some(PropertyViolation {
                    subset: members_of(mask, n),
                    i,
                    j: None,
                    k: None,
                    lhs,
                    rhs,
                });
            }
        }
    }
    None
}

fn scan_submodular(values: &[f64], n: usize) -> Option<PropertyViolation> {
    let marginal = |i: usize, mask: usize| values[mask | 1 << i] - values[mask];
    for mask in 0..values.len() {
        for i in 0..n {
            if mask >> i & 1 == 1 {
                continue;
            }
            for j in 0..n {
                if j == i || mask >> j & 1 == 1 {
                    continue;
                }
                let lhs = marginal(i, mask);
                let rhs = marginal(i, mask | 1 << j);
                if lhs < rhs - PROPERTY_TOLERANCE {
                    return Some(PropertyViolation {
                        subset: members_of(mask, n),
                        i,
                        j: Some(j),
                        k: None,
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    None
}

fn scan_second_order(values: &[f64], n: usize) -> Option<PropertyViolation> {
    let marginal = |i: usize, mask: usize| values[mask | 1 << i] - values[mask];
    for mask in 0..values.len() {
        for i in 0..n {
            if mask >> i & 1 == 1 {
                continue;
            }
            for j in 0..n {
                if j == i || mask >> j & 1 == 1 {
                    continue;
                }
                for k in 0..n {
                    if k == i || k == j || mask >> k & 1 == 1 {
                        continue;
                    }
                    let lhs = marginal(i, mask) - marginal(i, mask | 1 << j);
                    let rhs = marginal(i, mask | 1 << k) - marginal(i, mask | 1 << k | 1 << j);
                    if lhs < rhs - PROPERTY_TOLERANCE {
                        return Some(PropertyViolation {
                            subset: members_of(mask, n),
                            i,
                            j: Some(j),
                            k: Some(k),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::utility::{CoverageUtility, FacilityLocationUtility, FnOracle, TabulatedUtility};

    fn assert_holds(oracle: &dyn UtilityOracle) {
        for report in check_all_properties(oracle).unwrap() {
            assert!(report.holds, "{} should hold", report.property);
            assert!(report.witness.is_none());
        }
    }

    #[test]
    fn coverage_satisfies_all_three() {
        let cu = CoverageUtility::with_weights(
            5,
            vec![vec![0, 1], vec![1, 2, 3], vec![3], vec![0, 4], vec![2, 4]],
            vec![1.0, 2.0, 0.5, 1.5, 3.0],
        )
        .unwrap();
        assert_holds(&cu);
    }

    #[test]
    fn facility_satisfies_all_three() {
        let fu = FacilityLocationUtility::new(vec![
            vec![0.2, 1.4, 0.0],
            vec![1.1, 0.3, 0.8],
            vec![0.9, 0.9, 2.5],
            vec![0.0, 0.1, 0.4],
        ])
        .unwrap();
        assert_holds(&fu);
    }

    #[test]
    fn capped_cardinality_fails_second_order() {
        let t = TabulatedUtility::from_fn(3, |s| s.len().min(2) as f64).unwrap();
        let sub = check_property(&t, PropertyKind::Submodular).unwrap();
        assert!(sub.holds);
        let second = check_property(&t, PropertyKind::SecondOrderSupermodular).unwrap();
        assert!(!second.holds);
        let w = second.witness.unwrap();
        // First violation in enumeration order: empty set, i=0, j=1, k=2.
        assert_eq!(w.subset, Vec::<usize>::new());
        assert_eq!((w.i, w.j, w.k), (0, Some(1), Some(2)));
        assert_eq!(w.lhs, 0.0);
        assert_eq!(w.rhs, 1.0);
    }

    #[test]
    fn witness_reevaluates_to_violation() {
        // Non-monotone function: adding element 1 destroys value.
        let t = TabulatedUtility::new(2, vec![0.0, 4.0, 0.0, 1.0]).unwrap();
        let report = check_property(&t, PropertyKind::Monotone).unwrap();
        assert!(!report.holds);
        let w = report.witness.unwrap();
        let mut with_i = w.subset.clone();
        with_i.push(w.i);
        assert_eq!(t.eval(&with_i), w.lhs);
        assert_eq!(t.eval(&w.subset), w.rhs);
        assert!(w.lhs < w.rhs - PROPERTY_TOLERANCE);
    }

    #[test]
    fn capacity_is_enforced() {
        let big = FnOracle::new(15, |s: &[usize]| s.len() as f64);
        assert!(matches!(
            check_property(&big, PropertyKind::Monotone),
            Err(Error::Capacity { n: 15, max: 14, .. })
        ));
    }
}
