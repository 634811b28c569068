//! Paving matroids from hyperplane seeds, sparse-paving matroids from circuit
//! seeds, the d-partition test, and the randomized greedy seed search.
//!
//! A *seed* is a family `H′` of "large" hyperplanes: sets of size in
//! `[r, n−1]` pairwise meeting in at most `r − 2` elements. Every such family
//! determines exactly one paving matroid of rank `r`: its `r`-circuits are the
//! `r`-sets covered by a member of `H′`, its bases are the remaining `r`-sets,
//! and its hyperplanes are `H′` together with every `(r−1)`-set all of whose
//! `r`-supersets are bases.

use std::fmt;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::matroid::{Matroid, MatroidError};
use crate::setcore::{binomial, ElementSet, GroundSet, SetError, SetFamily};

/// Largest ground set for which the greedy completion pass scans every
/// candidate subset.
pub const COMPLETION_MAX_N: usize = 24;

/// First broken seed condition found by [`PavingSeed::validate`] or
/// [`CircuitSeed::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedViolation {
    RankOutOfRange {
        r: usize,
        n: usize,
    },
    ForeignGround {
        set: ElementSet,
        n: usize,
    },
    SizeOutsideWindow {
        set: ElementSet,
        min: usize,
        max: usize,
    },
    PairTooClose {
        first: ElementSet,
        second: ElementSet,
        shared: usize,
        limit: usize,
    },
}

impl fmt::Display for SeedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedViolation::RankOutOfRange { r, n } => {
                write!(f, "rank r={r} must satisfy 2 <= r <= n={n}")
            }
            SeedViolation::ForeignGround { set, n } => {
                write!(f, "set {{{set}}} is not over the ground set {{1..{n}}}")
            }
            SeedViolation::SizeOutsideWindow { set, min, max } => {
                write!(f, "set {{{set}}} has size {}, outside [{min}, {max}]", set.len())
            }
            SeedViolation::PairTooClose {
                first,
                second,
                shared,
                limit,
            } => write!(
                f,
                "sets {{{first}}} and {{{second}}} share {shared} elements, more than r-2 = {limit}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("invalid seed: {0}")]
    InvalidSeed(SeedViolation),
    #[error("seed admits no rank-r matroid")]
    SeedAdmitsNoMatroid,
    #[error("circuit seed excludes all bases")]
    CircuitSeedExcludesAllBases,
    #[error("construction postcondition failed: {0}")]
    Postcondition(String),
    #[error("invalid greedy configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Set(#[from] SetError),
}

fn check_family(
    family: &SetFamily,
    ground: GroundSet,
    window: (usize, usize),
    limit: usize,
) -> Result<(), SeedViolation> {
    let n = ground.size();
    for &set in family {
        if set.ground() != ground {
            return Err(SeedViolation::ForeignGround { set, n });
        }
        if set.len() < window.0 || set.len() > window.1 {
            return Err(SeedViolation::SizeOutsideWindow {
                set,
                min: window.0,
                max: window.1,
            });
        }
    }
    match family.first_pair_exceeding(limit) {
        Some((first, second)) => Err(SeedViolation::PairTooClose {
            first,
            second,
            shared: first.meet(second),
            limit,
        }),
        None => Ok(()),
    }
}

/// The large-hyperplane family `H′` of a paving matroid of rank `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PavingSeed {
    pub rank: usize,
    pub large_hyperplanes: SetFamily,
}

impl PavingSeed {
    pub fn new(rank: usize, large_hyperplanes: SetFamily) -> Self {
        Self {
            rank,
            large_hyperplanes,
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.large_hyperplanes.ground()
    }

    /// Checks `2 ≤ r ≤ n`, member sizes in `[r, n−1]` and pairwise
    /// intersections of at most `r − 2`.
    pub fn validate(&self) -> Result<(), SeedViolation> {
        let n = self.ground().size();
        let r = self.rank;
        if r < 2 || r > n {
            return Err(SeedViolation::RankOutOfRange { r, n });
        }
        check_family(&self.large_hyperplanes, self.ground(), (r, n - 1), r - 2)
    }
}

/// A family of `r`-circuits pairwise meeting in at most `r − 2` elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircuitSeed {
    pub rank: usize,
    pub circuits: SetFamily,
}

impl CircuitSeed {
    pub fn new(rank: usize, circuits: SetFamily) -> Self {
        Self { rank, circuits }
    }

    pub fn ground(&self) -> GroundSet {
        self.circuits.ground()
    }

    pub fn validate(&self) -> Result<(), SeedViolation> {
        let n = self.ground().size();
        let r = self.rank;
        if r < 2 || r > n {
            return Err(SeedViolation::RankOutOfRange { r, n });
        }
        check_family(&self.circuits, self.ground(), (r, r), r - 2)
    }
}

/// Result of [`construct_paving`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PavingConstruction {
    pub matroid: Matroid,
    /// `H′` plus the `(r−1)`-sets whose `r`-supersets are all bases.
    pub hyperplanes: SetFamily,
    /// `r`-sets covered by some member of `H′`.
    pub circuits_r: SetFamily,
}

/// Builds the paving matroid of `seed` without re-checking the outcome.
///
/// The seed must already be valid. The enumeration layer uses this directly
/// and compares the output against brute force.
pub fn construct_paving_unchecked(seed: &PavingSeed) -> Result<PavingConstruction, BuildError> {
    let ground = seed.ground();
    let r = seed.rank;
    let covered = |a: ElementSet| seed.large_hyperplanes.iter().any(|x| a.is_subset(*x));

    let (circuits, bases): (Vec<ElementSet>, Vec<ElementSet>) = ground.k_subsets(r)?.partition(|&a| covered(a));
    if bases.is_empty() {
        return Err(BuildError::SeedAdmitsNoMatroid);
    }
    let circuits_r = SetFamily::collect_dedup(ground, circuits);
    let bases = SetFamily::collect_dedup(ground, bases);

    let n = ground.size();
    let small = ground.k_subsets(r - 1)?.filter(|&a| {
        (1..=n)
            .filter(|&e| !a.contains(e))
            .all(|e| !circuits_r.contains(&a.with(e)))
    });
    let hyperplanes = SetFamily::collect_dedup(ground, seed.large_hyperplanes.iter().copied().chain(small));

    Ok(PavingConstruction {
        matroid: Matroid::from_bases_trusted(bases),
        hyperplanes,
        circuits_r,
    })
}

/// Validates `seed`, builds its paving matroid through the exchange oracle and
/// checks the result: rank `r`, paving, hyperplanes equal to the constructed
/// family, `r`-circuits equal to the covered `r`-sets.
pub fn construct_paving(seed: &PavingSeed) -> Result<PavingConstruction, BuildError> {
    seed.validate().map_err(BuildError::InvalidSeed)?;
    let built = construct_paving_unchecked(seed)?;
    let matroid = Matroid::from_bases(built.matroid.bases().clone())?;

    if matroid.rank() != seed.rank {
        return Err(BuildError::Postcondition(format!(
            "rank {} instead of {}",
            matroid.rank(),
            seed.rank
        )));
    }
    if !matroid.is_paving() {
        return Err(BuildError::Postcondition("result is not paving".into()));
    }
    if matroid.hyperplanes()? != built.hyperplanes {
        return Err(BuildError::Postcondition(
            "computed hyperplanes differ from the constructed family".into(),
        ));
    }
    if matroid.circuits_of_size(seed.rank) != built.circuits_r {
        return Err(BuildError::Postcondition(
            "r-circuits differ from the covered r-sets".into(),
        ));
    }
    Ok(PavingConstruction { matroid, ..built })
}

/// Matroid whose bases are the `r`-sets outside `seed.circuits`, checked to be
/// sparse-paving of rank `r` with exactly those `r`-circuits.
pub fn construct_sparse(seed: &CircuitSeed) -> Result<Matroid, BuildError> {
    seed.validate().map_err(BuildError::InvalidSeed)?;
    let ground = seed.ground();
    let bases: Vec<ElementSet> = ground
        .k_subsets(seed.rank)?
        .filter(|c| !seed.circuits.contains(c))
        .collect();
    if bases.is_empty() {
        return Err(BuildError::CircuitSeedExcludesAllBases);
    }
    let matroid = Matroid::from_bases(SetFamily::collect_dedup(ground, bases))?;
    if matroid.rank() != seed.rank || !matroid.is_sparse_paving() {
        return Err(BuildError::Postcondition(
            "result is not sparse-paving of the requested rank".into(),
        ));
    }
    if matroid.circuits_of_size(seed.rank) != seed.circuits {
        return Err(BuildError::Postcondition(
            "r-circuits differ from the circuit seed".into(),
        ));
    }
    Ok(matroid)
}

/// `family` has at least two members, each of size at least `d`, and every
/// `d`-subset of their union lies in exactly one member.
pub fn is_d_partition(family: &SetFamily, d: usize) -> bool {
    if family.len() < 2 || family.iter().any(|x| x.len() < d) {
        return false;
    }
    let union = family.union();
    let Ok(subsets) = family.ground().k_subsets(d) else {
        return false;
    };
    subsets
        .filter(|a| a.is_subset(union))
        .all(|a| family.iter().filter(|x| a.is_subset(**x)).count() == 1)
}

/// Recovers `H′` from a paving matroid: its hyperplanes of size at least `r`.
pub fn seed_of(m: &Matroid) -> Result<PavingSeed, BuildError> {
    if m.rank() < 2 {
        return Err(MatroidError::RankTooSmall {
            what: "seed extraction",
            rank: m.rank(),
            required: 2,
        }
        .into());
    }
    if !m.is_paving() {
        return Err(MatroidError::NotPaving("seed extraction").into());
    }
    let hyperplanes = m.hyperplanes()?;
    let large = hyperplanes.iter().copied().filter(|h| h.len() >= m.rank());
    Ok(PavingSeed::new(m.rank(), SetFamily::collect_dedup(m.ground(), large)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyConfig {
    pub n: usize,
    pub r: usize,
    /// Number of random draws.
    pub bound: u64,
    pub rng_seed: u64,
    /// Run the canonical-order completion pass after the random draws.
    pub complete: bool,
}

impl GreedyConfig {
    /// Defaults: `bound = 50·C(n, r)`, `rng_seed = 0`, completion on.
    pub fn new(n: usize, r: usize) -> Self {
        Self {
            n,
            r,
            bound: 50 * binomial(n, r),
            rng_seed: 0,
            complete: true,
        }
    }

    pub fn validate(&self) -> Result<GroundSet, BuildError> {
        let ground = GroundSet::new(self.n)?;
        if self.r < 2 || self.r + 1 > self.n {
            return Err(BuildError::InvalidConfig(format!(
                "need 2 <= r <= n-1, got n={} r={}",
                self.n, self.r
            )));
        }
        if self.complete && self.n > COMPLETION_MAX_N {
            return Err(BuildError::InvalidConfig(format!(
                "completion pass scans 2^n subsets and is capped at n <= {COMPLETION_MAX_N}"
            )));
        }
        Ok(ground)
    }
}

/// Randomized greedy search for a seed.
///
/// Each of `bound` rounds draws a size `m ∈ [r, n−1]` and then an `m`-subset,
/// both uniformly, and keeps the subset if it meets every kept set in at most
/// `r − 2` elements. A subset already kept is skipped. With `complete` set,
/// every subset of admissible size is then offered once in canonical order,
/// which makes the family maximal.
pub fn greedy_seed(cfg: &GreedyConfig) -> Result<PavingSeed, BuildError> {
    let ground = cfg.validate()?;
    let (n, r) = (cfg.n, cfg.r);
    let limit = r - 2;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut chosen: Vec<ElementSet> = Vec::new();

    let offer = |candidate: ElementSet, chosen: &mut Vec<ElementSet>| {
        if chosen.contains(&candidate) {
            return;
        }
        if chosen.iter().all(|x| x.meet(candidate) <= limit) {
            chosen.push(candidate);
        }
    };

    for _ in 0..cfg.bound {
        let m = rng.random_range(r..n);
        let bits = index::sample(&mut rng, n, m).iter().fold(0u64, |acc, i| acc | 1 << i);
        offer(ground.set_unchecked(bits), &mut chosen);
    }
    if cfg.complete {
        for candidate in ground.subsets_sized(r..=n - 1) {
            offer(candidate, &mut chosen);
        }
    }
    Ok(PavingSeed::new(r, SetFamily::collect_dedup(ground, chosen)))
}
