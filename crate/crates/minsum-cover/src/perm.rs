//! Permutations of the element set `0..n`.
//!
//! Elements are 0-based everywhere in memory and in files. Position arguments
//! in the public API (`move_element`, the neighbor scans) are 1-based,
//! matching the usual convention for prefix indices `S_1, ..., S_n`.

use crate::error::{Error, Result};

/// A bijection on `0..n`, stored as the visiting order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    order: Vec<usize>,
}

impl Permutation {
    /// Validates that `order` contains each of `0..order.len()` exactly once.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::NotAPermutation {
                n: 0,
                reason: "empty order".to_string(),
            });
        }
        let mut seen = vec![false; n];
        for &e in &order {
            if e >= n {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("element {e} out of range"),
                });
            }
            if seen[e] {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("element {e} appears more than once"),
                });
            }
            seen[e] = true;
        }
        Ok(Permutation { order })
    }

    /// The identity ordering `0, 1, ..., n-1`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            order: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    /// First `k` elements in visiting order (`k = 0` gives the empty prefix).
    pub fn prefix(&self, k: usize) -> &[usize] {
        &self.order[..k]
    }

    /// Element at 1-based position `position`.
    pub fn element_at(&self, position: usize) -> Result<usize> {
        self.check_position(position)?;
        Ok(self.order[position - 1])
    }

    /// Move neighbor: remove the element at 1-based position `from` and
    /// reinsert it so that it ends up at 1-based position `to`.
    pub fn move_element(&self, from: usize, to: usize) -> Result<Self> {
        self.check_position(from)?;
        self.check_position(to)?;
        let mut order = self.order.clone();
        let e = order.remove(from - 1);
        order.insert(to - 1, e);
        Ok(Permutation { order })
    }

    fn check_position(&self, position: usize) -> Result<()> {
        if position == 0 || position > self.order.len() {
            return Err(Error::PositionOutOfRange {
                position,
                n: self.order.len(),
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, e) in self.order.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_gaps() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn move_element_reinserts() {
        let p = Permutation::new(vec![0, 1, 2, 3]).unwrap();
        // Take position 4 (element 3) to the front.
        assert_eq!(p.move_element(4, 1).unwrap().as_slice(), &[3, 0, 1, 2]);
        // Take position 1 (element 0) to the back.
        assert_eq!(p.move_element(1, 4).unwrap().as_slice(), &[1, 2, 3, 0]);
        // from == to is the identity move.
        assert_eq!(p.move_element(2, 2).unwrap(), p);
        assert!(p.move_element(0, 1).is_err());
        assert!(p.move_element(1, 5).is_err());
    }

    #[test]
    fn prefixes_and_positions() {
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.prefix(0), &[] as &[usize]);
        assert_eq!(p.prefix(2), &[2, 0]);
        assert_eq!(p.element_at(1).unwrap(), 2);
        assert_eq!(p.element_at(3).unwrap(), 1);
        assert!(p.element_at(4).is_err());
    }

    #[test]
    fn display_is_space_separated() {
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.to_string(), "2 0 1");
    }
}
