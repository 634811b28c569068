//! Exhaustive generation and counting.
//!
//! Two independent routes produce paving matroids: the seed search (every
//! valid `H′`, each pushed through the construction) and brute force (every
//! nonempty family of `r`-sets, kept when it passes the exchange oracle). The
//! acceptance suite compares them.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use itertools::Itertools;
use thiserror::Error;

use crate::builder::{construct_paving_unchecked, BuildError, CircuitSeed, PavingSeed};
use crate::matroid::{find_exchange_failure, Matroid, MatroidError, SimpleConvention};
use crate::parallel::Execution;
use crate::setcore::{binomial, GroundSet, SetError, SetFamily};

/// Seed enumeration cap on `n`.
pub const SEED_MAX_N: usize = 8;
/// Seed enumeration cap on `C(n, r)`; `(8, 4)` alone has far more seeds than
/// fit in memory.
pub const SEED_MAX_R_SETS: u64 = 56;
/// Brute-force cap on `C(n, r)`; the search space is `2^C(n,r)`.
pub const BRUTE_FORCE_MAX_FAMILY: u64 = 22;
/// Isomorphism reduction cap on `n` (`n!` relabelings).
pub const CANONICAL_MAX_N: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("refusing {what}: {detail}")]
    CapExceeded { what: &'static str, detail: String },
    #[error("rank r={r} outside 0..={n}")]
    RankOutOfRange { r: usize, n: usize },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Set(#[from] SetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatroidClass {
    Paving,
    SparsePaving,
    AllMatroids,
}

impl fmt::Display for MatroidClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatroidClass::Paving => "paving",
            MatroidClass::SparsePaving => "sparse_paving",
            MatroidClass::AllMatroids => "all",
        })
    }
}

impl FromStr for MatroidClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paving" => Ok(MatroidClass::Paving),
            "sparse_paving" | "sparse-paving" => Ok(MatroidClass::SparsePaving),
            "all" | "all_matroids" => Ok(MatroidClass::AllMatroids),
            other => Err(format!("unknown class `{other}` (paving, sparse_paving, all)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMode {
    Labeled,
    IsomorphismClasses,
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMode::Labeled => "labeled",
            CountMode::IsomorphismClasses => "iso",
        })
    }
}

/// Simplicity filter applied to an enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Simplicity {
    None,
    Loopless,
    Standard,
}

impl Simplicity {
    pub fn admits(self, m: &Matroid) -> bool {
        match self {
            Simplicity::None => true,
            Simplicity::Loopless => m.is_simple(SimpleConvention::Loopless),
            Simplicity::Standard => m.is_simple(SimpleConvention::Standard),
        }
    }
}

impl fmt::Display for Simplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Simplicity::None => "none",
            Simplicity::Loopless => "loopless",
            Simplicity::Standard => "standard",
        })
    }
}

impl FromStr for Simplicity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Simplicity::None),
            "loopless" => Ok(Simplicity::Loopless),
            "standard" => Ok(Simplicity::Standard),
            other => Err(format!("unknown simplicity `{other}` (none, loopless, standard)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnumerationQuery {
    pub n: usize,
    pub r: usize,
    pub class: MatroidClass,
    pub mode: CountMode,
    pub simplicity: Simplicity,
}

impl EnumerationQuery {
    pub fn labeled(n: usize, r: usize, class: MatroidClass) -> Self {
        Self {
            n,
            r,
            class,
            mode: CountMode::Labeled,
            simplicity: Simplicity::None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRecord {
    pub query: EnumerationQuery,
    pub count: u64,
    pub elapsed: Duration,
}

fn seed_ground(n: usize, r: usize) -> Result<GroundSet, EnumError> {
    if n > SEED_MAX_N {
        return Err(EnumError::CapExceeded {
            what: "seed enumeration",
            detail: format!("n={n} exceeds the cap n <= {SEED_MAX_N}"),
        });
    }
    let ground = GroundSet::new(n)?;
    if r < 2 || r > n {
        return Err(EnumError::RankOutOfRange { r, n });
    }
    if binomial(n, r) > SEED_MAX_R_SETS {
        return Err(EnumError::CapExceeded {
            what: "seed enumeration",
            detail: format!(
                "C({n},{r}) = {} exceeds the cap C(n,r) <= {SEED_MAX_R_SETS}",
                binomial(n, r)
            ),
        });
    }
    Ok(ground)
}

/// Backtracking search over families of candidate sets that pairwise meet in
/// at most `max_meet` elements.
#[derive(Debug)]
struct FamilySearch {
    ground: GroundSet,
    candidates: Vec<u64>,
    max_meet: u32,
}

impl FamilySearch {
    fn new(ground: GroundSet, sizes: std::ops::RangeInclusive<usize>, max_meet: usize) -> Self {
        let candidates = ground.subsets_sized(sizes).map(|s| s.bits()).collect();
        Self {
            ground,
            candidates,
            max_meet: max_meet as u32,
        }
    }
}

/// Pre-order walk of the family search tree. Families are emitted as index
/// lists into the candidate list; indices increase along every path, so each
/// family appears exactly once and its members come out in canonical order.
#[derive(Debug)]
struct FamilyWalk {
    search: Arc<FamilySearch>,
    chosen: Vec<usize>,
    next: usize,
    floor: usize,
    pending_root: bool,
}

impl FamilyWalk {
    /// The whole tree, starting with the empty family.
    fn full(search: Arc<FamilySearch>) -> Self {
        Self {
            search,
            chosen: Vec::new(),
            next: 0,
            floor: 0,
            pending_root: true,
        }
    }

    /// The subtree of families whose first member is candidate `root`.
    fn subtree(search: Arc<FamilySearch>, root: usize) -> Self {
        Self {
            search,
            chosen: vec![root],
            next: root + 1,
            floor: 1,
            pending_root: true,
        }
    }

    fn compatible(&self, j: usize) -> bool {
        let c = self.search.candidates[j];
        self.chosen
            .iter()
            .all(|&i| (self.search.candidates[i] & c).count_ones() <= self.search.max_meet)
    }

    fn family(&self) -> SetFamily {
        let ground = self.search.ground;
        SetFamily::collect_dedup(
            ground,
            self.chosen
                .iter()
                .map(|&i| ground.set_unchecked(self.search.candidates[i])),
        )
    }
}

impl Iterator for FamilyWalk {
    type Item = SetFamily;

    fn next(&mut self) -> Option<SetFamily> {
        if self.pending_root {
            self.pending_root = false;
            return Some(self.family());
        }
        loop {
            while self.next < self.search.candidates.len() {
                let j = self.next;
                self.next += 1;
                if self.compatible(j) {
                    self.chosen.push(j);
                    return Some(self.family());
                }
            }
            if self.chosen.len() <= self.floor {
                return None;
            }
            let last = self.chosen.pop().expect("above floor");
            self.next = last + 1;
        }
    }
}

/// Runs `f` over every family, one worker per first member, and returns the
/// per-family outputs in stream order.
fn collect_families<T, F>(search: FamilySearch, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(SetFamily) -> Option<T> + Sync + Send,
{
    let search = Arc::new(search);
    let empty = SetFamily::empty(search.ground);
    let mut out: Vec<T> = f(empty).into_iter().collect();
    let roots = search.candidates.len();
    let chunks = exec.map_indexed(roots, |root| {
        FamilyWalk::subtree(Arc::clone(&search), root)
            .filter_map(&f)
            .collect::<Vec<T>>()
    });
    out.extend(chunks.into_iter().flatten());
    out
}

/// Sequential stream of every valid seed for `(n, r)`, the empty family first.
pub struct SeedStream {
    rank: usize,
    walk: FamilyWalk,
}

impl Iterator for SeedStream {
    type Item = PavingSeed;

    fn next(&mut self) -> Option<PavingSeed> {
        self.walk.next().map(|f| PavingSeed::new(self.rank, f))
    }
}

fn seed_search(n: usize, r: usize) -> Result<FamilySearch, EnumError> {
    let ground = seed_ground(n, r)?;
    Ok(FamilySearch::new(ground, r..=n - 1, r - 2))
}

/// Every family of subsets with sizes in `[r, n−1]` pairwise meeting in at
/// most `r − 2` elements, including the empty family.
pub fn enumerate_seeds(n: usize, r: usize) -> Result<SeedStream, EnumError> {
    let search = Arc::new(seed_search(n, r)?);
    Ok(SeedStream {
        rank: r,
        walk: FamilyWalk::full(search),
    })
}

/// Same stream as [`enumerate_seeds`], materialized with `exec`.
pub fn collect_seeds(n: usize, r: usize, exec: Execution) -> Result<Vec<PavingSeed>, EnumError> {
    let search = seed_search(n, r)?;
    Ok(collect_families(search, exec, |f| Some(PavingSeed::new(r, f))))
}

/// Every valid circuit seed: families of `r`-sets pairwise meeting in at most
/// `r − 2` elements.
pub fn collect_circuit_seeds(n: usize, r: usize, exec: Execution) -> Result<Vec<CircuitSeed>, EnumError> {
    let ground = seed_ground(n, r)?;
    let search = FamilySearch::new(ground, r..=r, r - 2);
    Ok(collect_families(search, exec, |f| Some(CircuitSeed::new(r, f))))
}

/// Every labeled paving matroid of rank `r` on `{1..n}`, one per seed, in seed
/// stream order.
pub fn enumerate_paving(n: usize, r: usize, exec: Execution) -> Result<Vec<Matroid>, EnumError> {
    let search = seed_search(n, r)?;
    let built = collect_families(search, exec, |f| {
        Some(construct_paving_unchecked(&PavingSeed::new(r, f)).map(|c| c.matroid))
    });
    built.into_iter().map(|m| m.map_err(EnumError::from)).collect()
}

/// Every basis family on `{1..n}` of rank `r` that passes the exchange
/// oracle and `simplicity`, in increasing order of the internal family mask.
pub fn enumerate_all_matroids(
    n: usize,
    r: usize,
    simplicity: Simplicity,
    exec: Execution,
) -> Result<Vec<Matroid>, EnumError> {
    let ground = GroundSet::new(n)?;
    if r > n {
        return Err(EnumError::RankOutOfRange { r, n });
    }
    let width = binomial(n, r);
    if width > BRUTE_FORCE_MAX_FAMILY {
        return Err(EnumError::CapExceeded {
            what: "brute-force enumeration",
            detail: format!("C({n},{r}) = {width} exceeds the cap C(n,r) <= {BRUTE_FORCE_MAX_FAMILY}"),
        });
    }

    // r-sets are indexed by colex rank: sum of C(e_i, i + 1) over the sorted
    // 0-based elements e_0 < e_1 < ...
    let binom: Vec<Vec<u64>> = (0..=n).map(|a| (0..=r + 1).map(|b| binomial(a, b)).collect()).collect();
    let colex_rank = |mut s: u64| -> u32 {
        let mut rank = 0u64;
        let mut i = 0;
        while s != 0 {
            let e = s.trailing_zeros() as usize;
            s &= s - 1;
            i += 1;
            rank += binom[e][i];
        }
        rank as u32
    };
    let mut r_sets: Vec<u64> = ground.k_subsets(r)?.map(|s| s.bits()).collect();
    r_sets.sort_by_key(|&s| colex_rank(s));

    let masks = exec.filter_map_range(1..1u64 << width, |mask| {
        let mut bases = [0u64; BRUTE_FORCE_MAX_FAMILY as usize];
        let mut len = 0;
        let mut rest = mask;
        while rest != 0 {
            bases[len] = r_sets[rest.trailing_zeros() as usize];
            rest &= rest - 1;
            len += 1;
        }
        let in_family = |s: u64| mask >> colex_rank(s) & 1 == 1;
        find_exchange_failure(&bases[..len], in_family)
            .is_none()
            .then_some(mask)
    });

    Ok(masks
        .into_iter()
        .map(|mask| {
            let bases = (0..width as usize)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| ground.set_unchecked(r_sets[i]));
            Matroid::from_bases_trusted(SetFamily::collect_dedup(ground, bases))
        })
        .filter(|m| simplicity.admits(m))
        .collect())
}

/// Lexicographically least basis family over all `n!` relabelings.
pub fn canonical_form(m: &Matroid) -> Result<SetFamily, EnumError> {
    let n = m.ground().size();
    if n > CANONICAL_MAX_N {
        return Err(EnumError::CapExceeded {
            what: "canonical form",
            detail: format!("n={n} exceeds the cap n <= {CANONICAL_MAX_N}"),
        });
    }
    let best = (0..n)
        .permutations(n)
        .map(|perm| m.relabeled(&perm).bases().clone())
        .min()
        .expect("at least the identity permutation");
    Ok(best)
}

/// Matroids matching `query`.
///
/// Paving and sparse-paving classes of rank at least 2 come from the seed
/// construction; lower ranks fall back to filtered brute force. In
/// isomorphism mode one canonical representative per class is returned, in
/// order of first appearance.
pub fn enumerate(query: &EnumerationQuery, exec: Execution) -> Result<Vec<Matroid>, EnumError> {
    let EnumerationQuery {
        n,
        r,
        class,
        mode,
        simplicity,
    } = *query;
    if mode == CountMode::IsomorphismClasses && n > CANONICAL_MAX_N {
        return Err(EnumError::CapExceeded {
            what: "isomorphism classes",
            detail: format!("n={n} exceeds the cap n <= {CANONICAL_MAX_N}"),
        });
    }
    let keep = |m: &Matroid| {
        simplicity.admits(m)
            && match class {
                MatroidClass::SparsePaving => m.is_sparse_paving(),
                MatroidClass::Paving => m.is_paving(),
                MatroidClass::AllMatroids => true,
            }
    };
    let found: Vec<Matroid> = match class {
        MatroidClass::Paving | MatroidClass::SparsePaving if r >= 2 => {
            let all = enumerate_paving(n, r, exec)?;
            let kept = exec.map_slice(&all, |m| keep(m));
            all.into_iter().zip(kept).filter_map(|(m, k)| k.then_some(m)).collect()
        }
        _ => {
            let all = enumerate_all_matroids(n, r, simplicity, exec)?;
            let kept = exec.map_slice(&all, |m| keep(m));
            all.into_iter().zip(kept).filter_map(|(m, k)| k.then_some(m)).collect()
        }
    };
    match mode {
        CountMode::Labeled => Ok(found),
        CountMode::IsomorphismClasses => {
            let forms = exec.map_slice(&found, canonical_form);
            let mut seen = HashSet::new();
            let mut classes = Vec::new();
            for form in forms {
                let form = form?;
                if seen.insert(form.clone()) {
                    classes.push(Matroid::from_bases_trusted(form));
                }
            }
            Ok(classes)
        }
    }
}

pub fn count(query: &EnumerationQuery, exec: Execution) -> Result<CountRecord, EnumError> {
    let start = Instant::now();
    let found = enumerate(query, exec)?;
    Ok(CountRecord {
        query: *query,
        count: found.len() as u64,
        elapsed: start.elapsed(),
    })
}

/// Both sides of `|M_{n,r}| ≤ ∏_{t=r}^{n−1} |Sp_{n,t}|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub r: usize,
    /// `|M_{n,r}|` under each simplicity convention, loopless first.
    pub matroids: Vec<(Simplicity, u64)>,
    /// `(t, |Sp_{n,t}|)` for `t = r..n−1`, loopless sparse-paving matroids.
    pub sparse_paving: Vec<(usize, u64)>,
    pub product: u128,
}

impl BoundReport {
    pub fn matroid_count(&self, simplicity: Simplicity) -> u64 {
        self.matroids
            .iter()
            .find(|(s, _)| *s == simplicity)
            .map(|&(_, c)| c)
            .expect("all conventions are counted")
    }

    pub fn holds_for(&self, simplicity: Simplicity) -> bool {
        u128::from(self.matroid_count(simplicity)) <= self.product
    }

    /// Verdict for loopless matroids.
    pub fn holds(&self) -> bool {
        self.holds_for(Simplicity::Loopless)
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, r) = (self.n, self.r);
        writeln!(
            f,
            "|M_{{{n},{r}}}| (simple: no loops) = {}",
            self.matroid_count(Simplicity::Loopless)
        )?;
        let factors = self
            .sparse_paving
            .iter()
            .map(|(t, c)| format!("|Sp_{{{n},{t}}}|={c}"))
            .join(" * ");
        let factors = if factors.is_empty() {
            "empty product".to_string()
        } else {
            factors
        };
        writeln!(
            f,
            "prod_{{t={r}}}^{{{}}} |Sp_{{{n},t}}| = {} ({factors})",
            n as isize - 1,
            self.product
        )?;
        for simplicity in [Simplicity::None, Simplicity::Standard] {
            writeln!(
                f,
                "info: |M_{{{n},{r}}}| (simplicity={simplicity}) = {} ({})",
                self.matroid_count(simplicity),
                if self.holds_for(simplicity) {
                    "within bound"
                } else {
                    "exceeds bound"
                }
            )?;
        }
        write!(f, "{}", if self.holds() { "PASS" } else { "FAIL" })
    }
}

/// Counts `M_{n,r}` by brute force and each `Sp_{n,t}` by construction
/// (brute force for `t < 2`), loopless matroids only on both sides.
pub fn verify_counting_inequality(n: usize, r: usize, exec: Execution) -> Result<BoundReport, EnumError> {
    if r > n {
        return Err(EnumError::RankOutOfRange { r, n });
    }
    let matroids = [Simplicity::Loopless, Simplicity::None, Simplicity::Standard]
        .into_iter()
        .map(|s| {
            let count = enumerate_all_matroids(n, r, s, exec)?.len() as u64;
            Ok((s, count))
        })
        .collect::<Result<Vec<_>, EnumError>>()?;
    let sparse_paving = (r..n)
        .map(|t| {
            let query = EnumerationQuery {
                simplicity: Simplicity::Loopless,
                ..EnumerationQuery::labeled(n, t, MatroidClass::SparsePaving)
            };
            Ok((t, enumerate(&query, exec)?.len() as u64))
        })
        .collect::<Result<Vec<_>, EnumError>>()?;
    let product = sparse_paving
        .iter()
        .fold(1u128, |acc, &(_, c)| acc.saturating_mul(u128::from(c)));
    Ok(BoundReport {
        n,
        r,
        matroids,
        sparse_paving,
        product,
    })
}
