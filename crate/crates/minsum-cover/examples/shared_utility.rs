//! The shared-utility matrix b between a converged permutation L and an
//! optimal permutation O: b_ij measures utility claimed by both o_i and l_j.
//! Its column sums recover L's marginals, row tails recover O's conditional
//! marginals, and the local-optimality constraint ties the two objectives
//! together. This is the machinery behind the factor-4 convergence bound.

use minsum_cover::generators::{gen_pipelined_set_cover, uniform_costs, SetCoverGenConfig};
use minsum_cover::{
    brute_force, cost_order_init, local_search, objective, shared_utility_matrix,
    verify_identities, verify_local_constraint, Instance, LocalSearchConfig,
};

fn main() -> minsum_cover::Result<()> {
    let n = 6;
    let coverage = gen_pipelined_set_cover(&SetCoverGenConfig {
        n,
        m: 2 * n,
        gamma: 3,
        p: 0.35,
        p_prime: 0.6,
        seed: 77,
    })?;
    let instance = Instance::new(uniform_costs(n, 78), coverage)?;

    let init = cost_order_init(&instance);
    let local = local_search(&instance, &init, &LocalSearchConfig::default())?;
    assert!(local.converged, "small instances converge well within budget");
    let (opt, opt_value) = brute_force(&instance)?;

    println!("local order {} (objective {:.6})", local.permutation, local.objective);
    println!("optimal order {} (objective {:.6})", opt, opt_value);

    let matrix = shared_utility_matrix(instance.utility(), &local.permutation, &opt)?;
    println!("b matrix (row = optimal position, column = local position):");
    print!("{}", matrix.to_csv());

    println!(
        "identities hold: {}",
        verify_identities(&matrix, instance.utility())
    );
    println!(
        "local-optimality constraint holds: {}",
        verify_local_constraint(&instance, &local.permutation, &opt)?
    );
    println!(
        "approximation ratio of local: {:.6}",
        objective(&instance, &local.permutation)? / opt_value
    );
    Ok(())
}
