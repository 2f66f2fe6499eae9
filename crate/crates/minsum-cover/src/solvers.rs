//! Solvers: greedy, initializations, local search, and exhaustive search.
//!
//! The local search walks the move neighborhood (or accepts via the
//! pseudo-neighbor test in insertion mode) until no strictly improving
//! neighbor exists or the round budget runs out. The default budget comes
//! from [`round_budget`]: starting from a d-approximate permutation, at most
//! ⌈2n·ln(d/ε)⌉ rounds are needed before the solution is within (4+ε)-ish of
//! optimal, so budget-exhausted runs are still certified descents.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::objective::{best_move_neighbor, objective, pseudo_neighbor_objective};
use crate::perm::Permutation;
use crate::rng::SplitMix64;

/// Largest n accepted by [`brute_force`] (10! ≈ 3.6M permutations).
pub const BRUTE_FORCE_MAX_N: usize = 10;

/// Relative improvement a neighbor must show before a round accepts it.
/// Guards against floating-point cycling; the analysis assumes exact
/// arithmetic where any strict decrease counts.
pub const REL_IMPROVEMENT_TOL: f64 = 1e-12;

/// True when `candidate` improves on `current` by more than
/// [`REL_IMPROVEMENT_TOL`] relative.
pub fn strictly_improves(current: f64, candidate: f64) -> bool {
    current - candidate > REL_IMPROVEMENT_TOL * current.abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// Commit the best move neighbor each round.
    #[default]
    Moves,
    /// Accept via the pseudo-neighbor (duplicate-copy) objective, then delete
    /// the original copy.
    Insertions,
}

#[derive(Debug, Clone)]
pub struct LocalSearchConfig {
    /// Target slack ε in the round budget; must be positive.
    pub epsilon: f64,
    /// Approximation factor believed to hold for the initial permutation;
    /// `None` defaults to n (the cost-order guarantee).
    pub d_hint: Option<f64>,
    /// Explicit round cap, overriding the derived budget.
    pub max_rounds: Option<usize>,
    pub mode: SearchMode,
    /// Reserved for randomized tie-breaking; the scans implemented here are
    /// deterministic and never draw from it.
    pub seed: u64,
}

impl Default for LocalSearchConfig {
    fn default() -> Self {
        LocalSearchConfig {
            epsilon: 0.1,
            d_hint: None,
            max_rounds: None,
            mode: SearchMode::Moves,
            seed: 0,
        }
    }
}

impl LocalSearchConfig {
    fn validate(&self) -> Result<()> {
        if !self.epsilon.is_finite() || self.epsilon <= 0.0 {
            return Err(Error::InvalidConfig {
                reason: format!("epsilon must be finite and > 0, got {}", self.epsilon),
            });
        }
        if let Some(d) = self.d_hint {
            if !d.is_finite() || d < 1.0 {
                return Err(Error::InvalidConfig {
                    reason: format!("d_hint must be finite and >= 1, got {d}"),
                });
            }
        }
        if self.max_rounds == Some(0) {
            return Err(Error::InvalidConfig {
                reason: "max_rounds must be >= 1 when set".to_string(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub permutation: Permutation,
    pub objective: f64,
    pub rounds_executed: usize,
    /// True iff some round found no strictly improving neighbor.
    pub converged: bool,
    /// Objective after each executed round; the convergence-detecting round
    /// repeats the previous value. Greedy reports its terminal value only.
    pub objective_history: Vec<f64>,
}

/// Cost-benefit greedy: append the element maximizing u(e|S)/c_e, ties by
/// (cost, index). Once every remaining marginal is zero the tail is appended
/// cheapest-first (the remaining terms are zero either way, and cheaper
/// elements earlier never hurt a prefix cost no one pays for).
pub fn greedy(instance: &Instance) -> SearchResult {
    let n = instance.n();
    let costs = instance.costs();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut current_u = 0.0;
    while !remaining.is_empty() {
        let mut best: Option<(usize, f64, f64)> = None; // (element, ratio, utility)
        for &e in &remaining {
            chosen.push(e);
            let u_with = instance.eval(&chosen);
            chosen.pop();
            let ratio = (u_with - current_u) / costs.get(e);
            let better = match best {
                None => true,
                Some((be, br, _)) => {
                    ratio > br
                        || (ratio == br
                            && (costs.get(e) < costs.get(be)
                                || (costs.get(e) == costs.get(be) && e < be)))
                }
            };
            if better {
                best = Some((e, ratio, u_with));
            }
        }
        let (e, ratio, u_with) = best.expect("remaining is non-empty");
        if ratio <= 0.0 {
            // Zero (or degenerate) marginals from here on.
            remaining.sort_by(|&a, &b| {
                costs
                    .get(a)
                    .partial_cmp(&costs.get(b))
                    .expect("costs are finite")
                    .then(a.cmp(&b))
            });
            chosen.extend_from_slice(&remaining);
            break;
        }
        chosen.push(e);
        remaining.retain(|&x| x != e);
        current_u = u_with;
    }
    let permutation = Permutation::new(chosen).expect("greedy visits each element once");
    let objective = objective(instance, &permutation).expect("lengths match by construction");
    SearchResult {
        permutation,
        objective,
        rounds_executed: n,
        converged: true,
        objective_history: vec![objective],
    }
}

/// Elements in non-decreasing cost order, ties by index. The result is an
/// n-approximate starting point.
pub fn cost_order_init(instance: &Instance) -> Permutation {
    let costs = instance.costs();
    let mut order: Vec<usize> = (0..instance.n()).collect();
    order.sort_by(|&a, &b| {
        costs
            .get(a)
            .partial_cmp(&costs.get(b))
            .expect("costs are finite")
            .then(a.cmp(&b))
    });
    Permutation::new(order).expect("sorting preserves bijection")
}

/// Uniformly random permutation via Fisher–Yates; one `next_below(i + 1)`
/// draw per slot i = n-1, ..., 1.
pub fn random_init(n: usize, seed: u64) -> Permutation {
    let mut rng = SplitMix64::new(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.next_below(i as u64 + 1) as usize;
        order.swap(i, j);
    }
    Permutation::new(order).expect("shuffling preserves bijection")
}

/// ⌈2n·ln(d/ε)⌉ rounds, floored at 1: the number of local-search rounds that
/// turns a d-approximate start into a near-locally-optimal permutation.
///
/// Natural logarithm. d/ε ≤ 1 (already within target) returns 1.
pub fn round_budget(n: usize, d: f64, epsilon: f64) -> usize {
    assert!(n >= 1, "round_budget requires n >= 1");
    assert!(d > 0.0, "round_budget requires d > 0");
    assert!(epsilon > 0.0, "round_budget requires epsilon > 0");
    let ratio = d / epsilon;
    if ratio <= 1.0 {
        return 1;
    }
    (2.0 * n as f64 * ratio.ln()).ceil().max(1.0) as usize
}

/// Iterated local search from `init`.
///
/// Each round scans the full neighborhood. In moves mode the best move
/// neighbor is committed if its (exactly re-evaluated) objective strictly
/// improves; in insertions mode the best pseudo-neighbor value is compared to
/// the current objective and, on improvement, the underlying move (original
/// copy deleted) is committed. The committed move's objective can only be
/// lower than the pseudo value, so descent is strict in both modes.
pub fn local_search(
    instance: &Instance,
    init: &Permutation,
    config: &LocalSearchConfig,
) -> Result<SearchResult> {
    config.validate()?;
    let n = instance.n();
    let budget = config.max_rounds.unwrap_or_else(|| {
        round_budget(n, config.d_hint.unwrap_or(n as f64), config.epsilon)
    });
    let mut current = init.clone();
    let mut current_obj = objective(instance, &current)?;
    let mut history = Vec::new();
    let mut converged = false;
    let mut rounds = 0;
    while rounds < budget {
        rounds += 1;
        let committed = match config.mode {
            SearchMode::Moves => {
                let (neighbor, _estimate) = best_move_neighbor(instance, &current)?;
                let exact = objective(instance, &neighbor)?;
                strictly_improves(current_obj, exact).then_some((neighbor, exact))
            }
            SearchMode::Insertions => {
                let mut best: Option<(usize, usize, f64)> = None;
                for src in 2..=n {
                    for dst in 1..src {
                        let value = pseudo_neighbor_objective(instance, &current, src, dst)?;
                        if best.is_none_or(|(_, _, bv)| value < bv) {
                            best = Some((src, dst, value));
                        }
                    }
                }
                match best {
                    Some((src, dst, value)) if strictly_improves(current_obj, value) => {
                        let neighbor = current.move_element(src, dst)?;
                        let exact = objective(instance, &neighbor)?;
                        Some((neighbor, exact))
                    }
                    _ => None,
                }
            }
        };
        match committed {
            Some((neighbor, exact)) => {
                current = neighbor;
                current_obj = exact;
                history.push(current_obj);
            }
            None => {
                converged = true;
                history.push(current_obj);
                break;
            }
        }
    }
    Ok(SearchResult {
        permutation: current,
        objective: current_obj,
        rounds_executed: rounds,
        converged,
        objective_history: history,
    })
}

/// Exact minimum over all n! permutations, n ≤ 10; ties go to the
/// lexicographically smallest permutation.
pub fn brute_force(instance: &Instance) -> Result<(Permutation, f64)> {
    use itertools::Itertools;

    let n = instance.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::Capacity {
            operation: "brute force",
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let mut best: Option<(Permutation, f64)> = None;
    // Permutations of a sorted sequence arrive in lexicographic order, so
    // keeping the first strict minimum implements the tie-break.
    for order in (0..n).permutations(n) {
        let perm = Permutation::new(order).expect("itertools yields bijections");
        let obj = objective(instance, &perm)?;
        if best.as_ref().is_none_or(|(_, b)| obj < *b) {
            best = Some((perm, obj));
        }
    }
    best.ok_or(Error::InvalidConfig {
        reason: "brute force requires n >= 1".to_string(),
    })
}
