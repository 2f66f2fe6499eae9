//! Problem instances: positive modular costs paired with a utility oracle.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Per-element costs `c_1, ..., c_n`, all strictly positive and finite.
///
/// The cost of a set is modular: `c(S) = Σ_{i∈S} c_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostVector {
    costs: Vec<f64>,
}

impl CostVector {
    pub fn new(costs: Vec<f64>) -> Result<Self> {
        if costs.is_empty() {
            return Err(Error::InvalidCosts {
                reason: "cost vector is empty".to_string(),
            });
        }
        for (i, &c) in costs.iter().enumerate() {
            if !c.is_finite() || c <= 0.0 {
                return Err(Error::InvalidCosts {
                    reason: format!("entry {i} is {c}; every cost must be finite and > 0"),
                });
            }
        }
        Ok(CostVector { costs })
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.costs
    }

    pub fn get(&self, element: usize) -> f64 {
        self.costs[element]
    }

    /// c(S), summed in the order the elements are listed.
    pub fn set_cost(&self, subset: &[usize]) -> f64 {
        subset.iter().map(|&e| self.costs[e]).sum()
    }
}

/// Black-box evaluation of a set function u over subsets of `0..n`.
///
/// Implementations must be pure functions of the *set* of entries: the value
/// may not depend on the order of `subset`, and repeated entries must count
/// once. All oracles in this crate satisfy this by construction.
pub trait UtilityOracle: Send + Sync {
    /// Number of elements the oracle is defined over.
    fn n(&self) -> usize;

    /// u(subset). Callers are expected to pass in-range elements; use
    /// [`UtilityOracle::checked_eval`] at trust boundaries.
    fn eval(&self, subset: &[usize]) -> f64;

    /// Validating wrapper around [`UtilityOracle::eval`].
    fn checked_eval(&self, subset: &[usize]) -> Result<f64> {
        let n = self.n();
        for &e in subset {
            if e >= n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
        }
        Ok(self.eval(subset))
    }
}

impl<U: UtilityOracle + ?Sized> UtilityOracle for Arc<U> {
    fn n(&self) -> usize {
        (**self).n()
    }

    fn eval(&self, subset: &[usize]) -> f64 {
        (**self).eval(subset)
    }
}

/// An ordering problem: n elements with positive costs and a normalized
/// monotone utility.
///
/// Construction checks that the cost vector and the oracle agree on n and that
/// u(∅) is exactly 0 (the evaluation is cached; every prefix walk starts from
/// the constant rather than re-querying the oracle). Monotonicity and
/// submodularity are assumed here and checkable for small n via the property
/// checkers.
#[derive(Clone)]
pub struct Instance {
    costs: CostVector,
    utility: Arc<dyn UtilityOracle>,
}

impl Instance {
    pub fn new<U: UtilityOracle + 'static>(costs: CostVector, utility: U) -> Result<Self> {
        Instance::from_shared(costs, Arc::new(utility))
    }

    /// Like [`Instance::new`] but the caller keeps a handle to the oracle
    /// (instrumented oracles, sharing one oracle across instances).
    pub fn from_shared(costs: CostVector, utility: Arc<dyn UtilityOracle>) -> Result<Self> {
        if costs.len() != utility.n() {
            return Err(Error::LengthMismatch {
                expected: utility.n(),
                actual: costs.len(),
            });
        }
        let empty = utility.eval(&[]);
        if empty != 0.0 {
            return Err(Error::UnnormalizedOracle { value: empty });
        }
        Ok(Instance { costs, utility })
    }

    pub fn n(&self) -> usize {
        self.costs.len()
    }

    pub fn costs(&self) -> &CostVector {
        &self.costs
    }

    pub fn utility(&self) -> &Arc<dyn UtilityOracle> {
        &self.utility
    }

    /// u(subset), unchecked.
    pub fn eval(&self, subset: &[usize]) -> f64 {
        self.utility.eval(subset)
    }
}

// The oracle is a trait object without Debug; show the instance shape only.
impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("n", &self.n())
            .field("costs", &self.costs)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Cardinality {
        n: usize,
    }

    impl UtilityOracle for Cardinality {
        fn n(&self) -> usize {
            self.n
        }
        fn eval(&self, subset: &[usize]) -> f64 {
            subset.len() as f64
        }
    }

    struct Shifted;

    impl UtilityOracle for Shifted {
        fn n(&self) -> usize {
            2
        }
        fn eval(&self, subset: &[usize]) -> f64 {
            subset.len() as f64 + 0.5
        }
    }

    #[test]
    fn cost_vector_validation() {
        assert!(CostVector::new(vec![]).is_err());
        assert!(CostVector::new(vec![1.0, 0.0]).is_err());
        assert!(CostVector::new(vec![1.0, -2.0]).is_err());
        assert!(CostVector::new(vec![f64::NAN]).is_err());
        assert!(CostVector::new(vec![f64::INFINITY]).is_err());
        let c = CostVector::new(vec![0.5, 2.0]).unwrap();
        assert_eq!(c.set_cost(&[0, 1]), 2.5);
        assert_eq!(c.set_cost(&[]), 0.0);
    }

    #[test]
    fn instance_requires_normalized_oracle() {
        let costs = CostVector::new(vec![1.0, 1.0]).unwrap();
        assert!(Instance::new(costs.clone(), Cardinality { n: 2 }).is_ok());
        let err = Instance::new(costs, Shifted).unwrap_err();
        assert!(matches!(err, Error::UnnormalizedOracle { value } if value == 0.5));
    }

    #[test]
    fn instance_requires_matching_lengths() {
        let costs = CostVector::new(vec![1.0, 1.0, 1.0]).unwrap();
        let err = Instance::new(costs, Cardinality { n: 2 }).unwrap_err();
        assert!(matches!(
            err,
            Error::LengthMismatch {
                expected: 2,
                actual: 3
            }
        ));
    }

    #[test]
    fn checked_eval_rejects_out_of_range() {
        let u = Cardinality { n: 3 };
        assert!(u.checked_eval(&[0, 2]).is_ok());
        assert!(u.checked_eval(&[3]).is_err());
    }
}
