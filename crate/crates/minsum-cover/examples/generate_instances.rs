//! Instance generation and the on-disk format. Coverage instances draw
//! correlated subsets (group advice plus per-element coins); facility
//! instances place stations and customers in the plane and score by inverse
//! distance. Everything is reproducible from the seeds.

use minsum_cover::generators::{
    agreement_probability, gen_facility_location_detailed, gen_pipelined_set_cover,
    uniform_costs, FacilityGenConfig, SetCoverGenConfig, StationSource,
};
use minsum_cover::instance_file::{read_instance, write_instance, GeneratorParams, InstanceFile};

fn main() -> minsum_cover::Result<()> {
    let config = SetCoverGenConfig {
        n: 12,
        m: 24,
        gamma: 4,
        p: 0.3,
        p_prime: 0.7,
        seed: 2024,
    };
    let coverage = gen_pipelined_set_cover(&config)?;
    let members: usize = coverage.subsets().iter().map(Vec::len).sum();
    println!(
        "coverage: {} subsets, {:.3} mean membership rate (target {}), \
         predicted same-group agreement {:.4}",
        config.n,
        members as f64 / (config.n * config.m) as f64,
        config.p,
        agreement_probability(config.p, config.p_prime),
    );

    let costs = uniform_costs(config.n, 2025);
    let file = InstanceFile::from_coverage(
        &coverage,
        &costs,
        config.seed,
        GeneratorParams {
            gamma: Some(config.gamma),
            p: Some(config.p),
            p_prime: Some(config.p_prime),
            stations: None,
        },
    );
    let dir = std::env::temp_dir().join("msc-example-instances");
    std::fs::create_dir_all(&dir).map_err(|e| minsum_cover::Error::io(&dir, e))?;
    let path = dir.join("coverage.json");
    write_instance(&path, &file)?;
    let round_trip = read_instance(&path)?;
    assert_eq!(file, round_trip);
    println!("wrote {}", path.display());

    // Stations may come from the unit square, inline pairs, or a "lat,lon"
    // text file; customers resample until clear of every station.
    let generated = gen_facility_location_detailed(&FacilityGenConfig {
        stations: StationSource::Inline(vec![(0.0, 0.0), (1.0, 0.0), (0.5, 1.0)]),
        customers: 5,
        seed: 99,
    })?;
    println!("facility: {} stations, customers at:", generated.stations.len());
    for (lat, lon) in &generated.customers {
        println!("  ({lat:.4}, {lon:.4})");
    }
    Ok(())
}
