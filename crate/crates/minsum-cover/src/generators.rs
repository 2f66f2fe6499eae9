//! Seeded instance generators.
//!
//! The coverage generator produces groups of correlated subsets: a group
//! shares one advice bit per ground element, and each subset follows its
//! group's advice with probability p′ (otherwise it flips its own coin).
//! Marginally every membership is Bernoulli(p); within a group two subsets
//! agree on an element with probability p′² + (1−p′²)(p² + (1−p)²), across
//! groups with probability p² + (1−p)².
//!
//! The facility generator places customers uniformly in the bounding box of
//! the station coordinates and rates every (station, customer) pair by
//! inverse Euclidean distance.
//!
//! Draw order is part of the contract (bit-reproducibility from a seed):
//!
//! * set cover: all advice bits first, group-major then element-ascending;
//!   then per (subset i, element j) one adoption coin, followed by one
//!   membership coin only when the advice was not adopted;
//! * facility: synthesized stations first (one latitude then one longitude
//!   draw each), then customers in index order, each attempt drawing
//!   latitude then longitude;
//! * costs: one `next_f64` per element, redrawing on an exact zero.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::instance::CostVector;
use crate::rng::SplitMix64;
use crate::utility::{CoverageUtility, FacilityLocationUtility};

#[derive(Debug, Clone, PartialEq)]
pub struct SetCoverGenConfig {
    /// Number of subsets.
    pub n: usize,
    /// Ground-set size.
    pub m: usize,
    /// Correlation group size Γ; groups are ⌈n/Γ⌉ contiguous index blocks.
    pub gamma: usize,
    /// Marginal membership probability.
    pub p: f64,
    /// Probability of adopting the group's advice bit.
    pub p_prime: f64,
    pub seed: u64,
}

impl SetCoverGenConfig {
    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig {
                reason: "set-cover generator needs n >= 1".to_string(),
            });
        }
        if self.gamma == 0 {
            return Err(Error::InvalidConfig {
                reason: "group size gamma must be >= 1".to_string(),
            });
        }
        for (name, v) in [("p", self.p), ("p_prime", self.p_prime)] {
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidConfig {
                    reason: format!("{name} must lie in [0, 1], got {v}"),
                });
            }
        }
        Ok(())
    }
}

/// Generate correlated coverage subsets; duplicates across subsets are kept.
pub fn gen_pipelined_set_cover(config: &SetCoverGenConfig) -> Result<CoverageUtility> {
    config.validate()?;
    let &SetCoverGenConfig {
        n,
        m,
        gamma,
        p,
        p_prime,
        seed,
    } = config;
    let mut rng = SplitMix64::new(seed);
    let groups = n.div_ceil(gamma);
    let mut advice = vec![vec![false; m]; groups];
    for g in advice.iter_mut() {
        for a in g.iter_mut() {
            *a = rng.bernoulli(p);
        }
    }
    let mut subsets = Vec::with_capacity(n);
    for i in 0..n {
        let g = i / gamma;
        let mut d = Vec::new();
        for (j, &advice_bit) in advice[g].iter().enumerate() {
            let member = if rng.bernoulli(p_prime) {
                advice_bit
            } else {
                rng.bernoulli(p)
            };
            if member {
                d.push(j);
            }
        }
        subsets.push(d);
    }
    CoverageUtility::new(m, subsets)
}

/// Probability that two same-group subsets agree on one element's
/// membership: both adopt the advice, or at least one flips its own coin and
/// the outcomes coincide anyway.
pub fn agreement_probability(p: f64, p_prime: f64) -> f64 {
    assert!(
        (0.0..=1.0).contains(&p) && (0.0..=1.0).contains(&p_prime),
        "probabilities must lie in [0, 1]"
    );
    let independent = p * p + (1.0 - p) * (1.0 - p);
    p_prime * p_prime + (1.0 - p_prime * p_prime) * independent
}

/// Where station coordinates come from.
#[derive(Debug, Clone, PartialEq)]
pub enum StationSource {
    /// Synthesize `count` stations uniformly in the unit square.
    UnitSquare { count: usize },
    /// Explicit (latitude, longitude) list.
    Inline(Vec<(f64, f64)>),
    /// A coordinate file: one "latitude,longitude" line per station, `#`
    /// starts a comment.
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FacilityGenConfig {
    pub stations: StationSource,
    /// Number of customers to sample in the stations' bounding box.
    pub customers: usize,
    pub seed: u64,
}

/// Maximum resampling attempts per customer before generation fails.
pub const RESAMPLE_ATTEMPTS: usize = 100;

/// A generated facility instance with the geometry that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedFacility {
    pub utility: FacilityLocationUtility,
    pub stations: Vec<(f64, f64)>,
    pub customers: Vec<(f64, f64)>,
}

/// Generate a facility-location utility; see [`gen_facility_location_detailed`]
/// for access to the sampled coordinates.
pub fn gen_facility_location(config: &FacilityGenConfig) -> Result<FacilityLocationUtility> {
    Ok(gen_facility_location_detailed(config)?.utility)
}

pub fn gen_facility_location_detailed(config: &FacilityGenConfig) -> Result<GeneratedFacility> {
    let mut rng = SplitMix64::new(config.seed);
    let stations = match &config.stations {
        StationSource::UnitSquare { count } => {
            if *count == 0 {
                return Err(Error::InvalidConfig {
                    reason: "facility generator needs at least one station".to_string(),
                });
            }
            (0..*count)
                .map(|_| {
                    let lat = rng.next_f64();
                    let lon = rng.next_f64();
                    (lat, lon)
                })
                .collect()
        }
        StationSource::Inline(list) => list.clone(),
        StationSource::File(path) => read_stations(path)?,
    };
    if stations.is_empty() {
        return Err(Error::InvalidConfig {
            reason: "facility generator needs at least one station".to_string(),
        });
    }
    let (mut lat_lo, mut lat_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lon_lo, mut lon_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(lat, lon) in &stations {
        lat_lo = lat_lo.min(lat);
        lat_hi = lat_hi.max(lat);
        lon_lo = lon_lo.min(lon);
        lon_hi = lon_hi.max(lon);
    }
    let mut customers = Vec::with_capacity(config.customers);
    for _ in 0..config.customers {
        let mut placed = false;
        let mut last_station = 0;
        for _ in 0..RESAMPLE_ATTEMPTS {
            let lat = lat_lo + rng.next_f64() * (lat_hi - lat_lo);
            let lon = lon_lo + rng.next_f64() * (lon_hi - lon_lo);
            let too_close = stations.iter().position(|&(sx, sy)| {
                ((sx - lat).powi(2) + (sy - lon).powi(2)).sqrt() <= 1e-9
            });
            match too_close {
                Some(s) => last_station = s,
                None => {
                    customers.push((lat, lon));
                    placed = true;
                    break;
                }
            }
        }
        if !placed {
            return Err(Error::ResampleExhausted {
                station: last_station,
                attempts: RESAMPLE_ATTEMPTS,
            });
        }
    }
    let utility = FacilityLocationUtility::from_points(&stations, &customers)?;
    Ok(GeneratedFacility {
        utility,
        stations,
        customers,
    })
}

/// n costs drawn uniformly from (0, 1); an exact zero draw is rejected and
/// redrawn so every cost is strictly positive.
pub fn uniform_costs(n: usize, seed: u64) -> CostVector {
    let mut rng = SplitMix64::new(seed);
    let mut costs = Vec::with_capacity(n);
    for _ in 0..n {
        let mut c = rng.next_f64();
        while c == 0.0 {
            c = rng.next_f64();
        }
        costs.push(c);
    }
    CostVector::new(costs).expect("draws are positive and finite")
}

/// Parse a station coordinate file: one "latitude,longitude" pair per line,
/// `#` starts a comment, blank lines ignored.
pub fn read_stations(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut stations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse = |s: &str| -> Result<f64> {
            s.trim().parse::<f64>().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line: Some(idx + 1),
                reason: format!("expected a decimal coordinate, got {s:?}"),
            })
        };
        let mut parts = line.split(',');
        let lat = parse(parts.next().unwrap_or(""))?;
        let lon = match parts.next() {
            Some(s) => parse(s)?,
            None => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: Some(idx + 1),
                    reason: "expected \"latitude,longitude\"".to_string(),
                })
            }
        };
        if parts.next().is_some() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: Some(idx + 1),
                reason: "expected exactly two comma-separated coordinates".to_string(),
            });
        }
        stations.push((lat, lon));
    }
    Ok(stations)
}
