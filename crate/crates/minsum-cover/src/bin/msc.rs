//! Command-line front end: generate instances, solve them, run the batch
//! greedy-versus-local comparison, and check instance properties.
//!
//! Exit codes: 0 on success, 1 on validation errors (including failed
//! property checks), 2 on I/O errors.

use std::path::PathBuf;

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};

use minsum_cover::error::{Error, Result};
use minsum_cover::generators::{
    gen_facility_location_detailed, gen_pipelined_set_cover, uniform_costs, FacilityGenConfig,
    SetCoverGenConfig, StationSource,
};
use minsum_cover::harness::{run_experiment, ExperimentConfig, Family};
use minsum_cover::instance_file::{
    read_instance, read_permutation, write_instance, GeneratorParams, InstanceFile,
};
use minsum_cover::perm::Permutation;
use minsum_cover::properties::{check_property, PropertyKind};
use minsum_cover::rng::derive_seed;
use minsum_cover::solvers::{
    brute_force, cost_order_init, greedy, local_search, random_init, LocalSearchConfig, SearchMode,
};
use minsum_cover::verification::{
    shared_utility_matrix, verify_identities, verify_local_constraint,
};

#[derive(Parser)]
#[command(name = "msc", version, about = "Min-sum ordering solvers and experiment harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(alias = "pipelined_set_cover")]
    PipelinedSetCover,
    #[value(alias = "facility_location")]
    FacilityLocation,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::PipelinedSetCover => Family::PipelinedSetCover,
            FamilyArg::FacilityLocation => Family::FacilityLocation,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Greedy,
    LocalMoves,
    LocalInsertions,
    Brute,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InitArg {
    Cost,
    Random,
    File,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PropertyArg {
    Monotone,
    Submodular,
    SecondOrderSupermodular,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Write seeded random instance files.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Elements (subsets or stations) per instance.
        #[arg(long, default_value_t = 30)]
        n: usize,
        /// Ground elements / customers; defaults to 2n.
        #[arg(long)]
        m: Option<usize>,
        /// Correlation group size (coverage family).
        #[arg(long, default_value_t = 4)]
        gamma: usize,
        /// Membership probability (coverage family).
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Advice-adoption probability (coverage family).
        #[arg(long, default_value_t = 0.7)]
        p_prime: f64,
        /// Station coordinate file (facility family); default synthesizes
        /// stations in the unit square.
        #[arg(long)]
        stations: Option<PathBuf>,
        /// Number of instance files to write.
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve one instance file and print the resulting permutation.
    Solve {
        /// Instance file (JSON).
        instance: PathBuf,
        #[arg(long, value_enum)]
        solver: SolverArg,
        /// Initial permutation for the local-search solvers.
        #[arg(long, value_enum, default_value_t = InitArg::Cost)]
        init: InitArg,
        /// Permutation file for --init file.
        #[arg(long)]
        init_file: Option<PathBuf>,
        /// Round-budget slack for local search.
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Explicit round cap for local search.
        #[arg(long)]
        rounds: Option<usize>,
        /// Seed for --init random.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the batch greedy-versus-local comparison and emit CSV results.
    Experiment {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Local-search runs per instance (last one starts from cost order).
        #[arg(long, default_value_t = 5)]
        runs: usize,
        /// Rounds per run; defaults to n.
        #[arg(long)]
        rounds: Option<usize>,
        #[arg(long, default_value_t = 0)]
        master_seed: u64,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check set-function properties of an instance and dump diagnostics.
    Verify {
        /// Instance file (JSON).
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = PropertyArg::All)]
        property: PropertyArg,
        /// Write the shared-utility matrix of (converged local, exact
        /// optimum) to this CSV path and check its identities; needs n <= 10.
        #[arg(long)]
        dump_b: Option<PathBuf>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Generate {
            family,
            n,
            m,
            gamma,
            p,
            p_prime,
            stations,
            count,
            seed,
            out,
        } => generate(family, n, m, gamma, p, p_prime, stations, count, seed, out),
        Command::Solve {
            instance,
            solver,
            init,
            init_file,
            epsilon,
            rounds,
            seed,
        } => solve(instance, solver, init, init_file, epsilon, rounds, seed),
        Command::Experiment {
            family,
            n,
            instances,
            runs,
            rounds,
            master_seed,
            out,
        } => {
            let mut config = ExperimentConfig::new(family.into(), master_seed, out);
            config.n = n;
            config.instances = instances;
            config.local_runs = runs;
            config.rounds_per_run = rounds;
            let result = run_experiment(&config)?;
            println!("instances: {}", result.records.len());
            println!("greedy_best_fraction: {}", result.greedy_best_fraction());
            println!("local_best_fraction: {}", result.local_best_fraction());
            println!("wrote: {}", config.output_dir.display());
            Ok(())
        }
        Command::Verify {
            instance,
            property,
            dump_b,
        } => verify(instance, property, dump_b),
    }
}

#[allow(clippy::too_many_arguments)]
fn generate(
    family: FamilyArg,
    n: usize,
    m: Option<usize>,
    gamma: usize,
    p: f64,
    p_prime: f64,
    stations: Option<PathBuf>,
    count: usize,
    seed: u64,
    out: PathBuf,
) -> Result<()> {
    let m = m.unwrap_or(2 * n);
    std::fs::create_dir_all(&out).map_err(|e| Error::io(&out, e))?;
    for index in 0..count {
        let instance_seed = derive_seed(seed, index as u64);
        let gen_seed = derive_seed(instance_seed, 0);
        let cost_seed = derive_seed(instance_seed, 1);
        let costs = uniform_costs(n, cost_seed);
        let file = match family {
            FamilyArg::PipelinedSetCover => {
                let cu = gen_pipelined_set_cover(&SetCoverGenConfig {
                    n,
                    m,
                    gamma,
                    p,
                    p_prime,
                    seed: gen_seed,
                })?;
                InstanceFile::from_coverage(
                    &cu,
                    &costs,
                    instance_seed,
                    GeneratorParams {
                        gamma: Some(gamma),
                        p: Some(p),
                        p_prime: Some(p_prime),
                        stations: None,
                    },
                )
            }
            FamilyArg::FacilityLocation => {
                let source = match &stations {
                    Some(path) => StationSource::File(path.clone()),
                    None => StationSource::UnitSquare { count: n },
                };
                let generated = gen_facility_location_detailed(&FacilityGenConfig {
                    stations: source,
                    customers: m,
                    seed: gen_seed,
                })?;
                InstanceFile::from_facility(
                    &generated.utility,
                    &costs,
                    instance_seed,
                    GeneratorParams {
                        stations: Some(generated.stations.clone()),
                        ..GeneratorParams::default()
                    },
                )
            }
        };
        let path = out.join(format!("instance_{index:03}.json"));
        write_instance(&path, &file)?;
        println!("{}", path.display());
    }
    Ok(())
}

fn solve(
    instance_path: PathBuf,
    solver: SolverArg,
    init: InitArg,
    init_file: Option<PathBuf>,
    epsilon: f64,
    rounds: Option<usize>,
    seed: u64,
) -> Result<()> {
    let instance = read_instance(&instance_path)?.to_instance()?;
    let initial: Permutation = match init {
        InitArg::Cost => cost_order_init(&instance),
        InitArg::Random => random_init(instance.n(), seed),
        InitArg::File => {
            let path = init_file.ok_or_else(|| Error::InvalidConfig {
                reason: "--init file requires --init-file <path>".to_string(),
            })?;
            read_permutation(&path)?
        }
    };
    match solver {
        SolverArg::Greedy => {
            let result = greedy(&instance);
            println!("permutation: {}", result.permutation);
            println!("objective: {}", result.objective);
            println!("converged: {}", result.converged);
        }
        SolverArg::Brute => {
            let (perm, objective) = brute_force(&instance)?;
            println!("permutation: {perm}");
            println!("objective: {objective}");
        }
        SolverArg::LocalMoves | SolverArg::LocalInsertions => {
            let mode = if solver == SolverArg::LocalMoves {
                SearchMode::Moves
            } else {
                SearchMode::Insertions
            };
            let config = LocalSearchConfig {
                epsilon,
                d_hint: None,
                max_rounds: rounds,
                mode,
                seed,
            };
            let result = local_search(&instance, &initial, &config)?;
            println!("permutation: {}", result.permutation);
            println!("objective: {}", result.objective);
            println!("rounds: {}", result.rounds_executed);
            println!("converged: {}", result.converged);
        }
    }
    Ok(())
}

fn verify(instance_path: PathBuf, property: PropertyArg, dump_b: Option<PathBuf>) -> Result<()> {
    let file = read_instance(&instance_path)?;
    let instance = file.to_instance()?;
    let kinds: Vec<PropertyKind> = match property {
        PropertyArg::Monotone => vec![PropertyKind::Monotone],
        PropertyArg::Submodular => vec![PropertyKind::Submodular],
        PropertyArg::SecondOrderSupermodular => vec![PropertyKind::SecondOrderSupermodular],
        PropertyArg::All => vec![
            PropertyKind::Monotone,
            PropertyKind::Submodular,
            PropertyKind::SecondOrderSupermodular,
        ],
    };
    let mut all_hold = true;
    for kind in kinds {
        let report = check_property(instance.utility().as_ref(), kind)?;
        if report.holds {
            println!("{kind}: ok");
        } else {
            all_hold = false;
            let w = report.witness.expect("failed checks carry a witness");
            println!(
                "{kind}: VIOLATED at S={:?} i={} j={:?} k={:?} (lhs {} < rhs {})",
                w.subset, w.i, w.j, w.k, w.lhs, w.rhs
            );
        }
    }

    if let Some(csv_path) = dump_b {
        let init = cost_order_init(&instance);
        let local = local_search(&instance, &init, &LocalSearchConfig::default())?;
        let (opt, _) = brute_force(&instance)?;
        let matrix = shared_utility_matrix(instance.utility().as_ref(), &local.permutation, &opt)?;
        std::fs::write(&csv_path, matrix.to_csv()).map_err(|e| Error::io(&csv_path, e))?;
        println!("b_matrix: {}", csv_path.display());
        let identities = verify_identities(&matrix, instance.utility().as_ref());
        println!("identities: {}", if identities { "ok" } else { "VIOLATED" });
        let constraint = verify_local_constraint(&instance, &local.permutation, &opt)?;
        println!(
            "local_constraint: {}",
            if constraint { "ok" } else { "VIOLATED" }
        );
        if !identities || !constraint {
            all_hold = false;
        }
    }

    if all_hold {
        Ok(())
    } else {
        Err(Error::InvalidConfig {
            reason: "one or more checks failed (see output above)".to_string(),
        })
    }
}

// Keep the derived command definition honest: clap panics on debug builds if
// the definition is inconsistent.
#[test]
fn cli_definition_is_consistent() {
    use clap::CommandFactory;
    Cli::command().debug_assert();
}
