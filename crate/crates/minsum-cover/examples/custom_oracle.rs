//! Bringing your own set function: anything monotone and submodular with
//! u(∅) = 0 plugs into the solvers through the `UtilityOracle` trait. Here, a
//! weighted-rank function (budgeted distinct-value count), wrapped in a
//! memoizer since local search re-evaluates overlapping prefixes.

use minsum_cover::{
    cost_order_init, greedy, local_search, objective, CostVector, Instance, LocalSearchConfig,
    MemoizedOracle, UtilityOracle,
};

/// u(S) = Σ_v min(1, |{e ∈ S : tag(e) = v}|) · weight(v): each tag's weight
/// is earned once, by the first element carrying it.
struct DistinctTags {
    tags: Vec<usize>,
    weights: Vec<f64>,
}

impl UtilityOracle for DistinctTags {
    fn n(&self) -> usize {
        self.tags.len()
    }

    fn eval(&self, subset: &[usize]) -> f64 {
        let mut seen = vec![false; self.weights.len()];
        let mut total = 0.0;
        for &e in subset {
            let t = self.tags[e];
            if !seen[t] {
                seen[t] = true;
                total += self.weights[t];
            }
        }
        total
    }
}

fn main() -> minsum_cover::Result<()> {
    let oracle = MemoizedOracle::new(DistinctTags {
        tags: vec![0, 0, 1, 1, 2, 2, 3],
        weights: vec![5.0, 3.0, 2.0, 8.0],
    });
    let costs = CostVector::new(vec![1.0, 0.4, 2.0, 0.7, 1.5, 1.1, 0.2])?;
    let instance = Instance::new(costs, oracle)?;

    let g = greedy(&instance);
    println!("greedy: {} at {:.4}", g.permutation, g.objective);

    let init = cost_order_init(&instance);
    println!("cost order starts at {:.4}", objective(&instance, &init)?);
    let l = local_search(&instance, &init, &LocalSearchConfig::default())?;
    println!(
        "local search: {} at {:.4} ({} rounds)",
        l.permutation, l.objective, l.rounds_executed
    );
    Ok(())
}
