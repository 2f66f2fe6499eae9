//! The objective, decomposed: each position k pays the prefix cost times the
//! utility gained at k, so cheap high-coverage elements want to go first.

use minsum_cover::{objective_trace, CostVector, CoverageUtility, Instance, Permutation};

fn main() -> minsum_cover::Result<()> {
    // Three subsets over five ground elements. Element 0 is broad but pricey,
    // element 1 cheap and narrow, element 2 in between.
    let utility = CoverageUtility::new(5, vec![vec![0, 1, 2, 3], vec![4], vec![2, 3, 4]])?;
    let costs = CostVector::new(vec![3.0, 0.5, 1.0])?;
    let instance = Instance::new(costs, utility)?;

    for order in [vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]] {
        let perm = Permutation::new(order)?;
        let trace = objective_trace(&instance, &perm)?;
        println!("order {perm}");
        for k in 1..=perm.len() {
            println!(
                "  position {k}: prefix cost {:>4}, utility {} -> {}, term {}",
                trace.prefix_costs[k],
                trace.prefix_utilities[k - 1],
                trace.prefix_utilities[k],
                trace.terms[k - 1],
            );
        }
        println!("  total {}", trace.total);
    }
    Ok(())
}
