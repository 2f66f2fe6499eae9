//! Cost-scaled greedy against local search on one seeded instance of each
//! family. Both are strong in practice; local search carries the constant
//!-factor guarantee at convergence.

use minsum_cover::generators::{
    gen_facility_location, gen_pipelined_set_cover, uniform_costs, FacilityGenConfig,
    SetCoverGenConfig, StationSource,
};
use minsum_cover::{cost_order_init, greedy, local_search, Instance, LocalSearchConfig};

fn report(name: &str, instance: &Instance) -> minsum_cover::Result<()> {
    let g = greedy(instance);
    let init = cost_order_init(instance);
    let l = local_search(instance, &init, &LocalSearchConfig::default())?;
    println!("{name} (n = {})", instance.n());
    println!("  greedy       objective {:.6}", g.objective);
    println!(
        "  local search objective {:.6} after {} rounds (converged: {})",
        l.objective, l.rounds_executed, l.converged
    );
    Ok(())
}

fn main() -> minsum_cover::Result<()> {
    let n = 25;

    let coverage = gen_pipelined_set_cover(&SetCoverGenConfig {
        n,
        m: 2 * n,
        gamma: 4,
        p: 0.3,
        p_prime: 0.7,
        seed: 11,
    })?;
    let instance = Instance::new(uniform_costs(n, 12), coverage)?;
    report("pipelined set cover", &instance)?;

    let facility = gen_facility_location(&FacilityGenConfig {
        stations: StationSource::UnitSquare { count: n },
        customers: 2 * n,
        seed: 21,
    })?;
    let instance = Instance::new(uniform_costs(n, 22), facility)?;
    report("facility location", &instance)?;

    Ok(())
}
