//! Approximation ratios against the exact optimum on small instances: cost
//! order is at worst a factor n, converged local search at worst a factor 4,
//! and in practice both greedy and local search sit very close to 1.

use minsum_cover::generators::{gen_pipelined_set_cover, uniform_costs, SetCoverGenConfig};
use minsum_cover::{
    approximation_ratio, cost_order_init, greedy, local_search, Instance, LocalSearchConfig,
};

fn main() -> minsum_cover::Result<()> {
    let n = 7;
    let mut worst = [0.0f64; 3]; // cost order, greedy, converged local
    for seed in 0..30 {
        let coverage = gen_pipelined_set_cover(&SetCoverGenConfig {
            n,
            m: 2 * n,
            gamma: 4,
            p: 0.3,
            p_prime: 0.7,
            seed,
        })?;
        let instance = Instance::new(uniform_costs(n, seed ^ 0xffff), coverage)?;

        let init = cost_order_init(&instance);
        let local = local_search(&instance, &init, &LocalSearchConfig::default())?;
        assert!(local.converged);

        let ratios = [
            approximation_ratio(&instance, &init)?,
            approximation_ratio(&instance, &greedy(&instance).permutation)?,
            approximation_ratio(&instance, &local.permutation)?,
        ];
        for (w, r) in worst.iter_mut().zip(ratios) {
            *w = w.max(r);
        }
    }
    println!("worst ratios over 30 instances at n = {n}:");
    println!("  cost-order init   {:.4}  (bound: {n})", worst[0]);
    println!("  greedy            {:.4}", worst[1]);
    println!("  converged local   {:.4}  (bound: 4)", worst[2]);
    Ok(())
}
