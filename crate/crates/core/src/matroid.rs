//! Matroids represented by their basis family.
//!
//! Everything else (independence, rank, closure, circuits, hyperplanes, the
//! dual) is derived from the bases on demand. [`Matroid::from_bases`] runs the
//! basis-exchange oracle before handing out a value.

use std::fmt;

use thiserror::Error;

use crate::setcore::{binomial, ElementSet, GroundSet, SetError, SetFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("no bases")]
    NoBases,
    #[error("rank mismatch: expected bases of size {expected}, found `{found}`")]
    RankMismatch { expected: usize, found: ElementSet },
    #[error("not a matroid: {0}")]
    NotAMatroid(ExchangeWitness),
    #[error("no hyperplanes in a rank-0 matroid")]
    NoHyperplanes,
    #[error("{0} defined for paving matroids only")]
    NotPaving(&'static str),
    #[error("{what} requires rank at least {required}, got {rank}")]
    RankTooSmall {
        what: &'static str,
        rank: usize,
        required: usize,
    },
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error(transparent)]
    Set(#[from] SetError),
}

/// Bases `b1`, `b2` and an element `x ∈ b1 \ b2` for which no `y ∈ b2 \ b1`
/// makes `(b1 \ {x}) ∪ {y}` a basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExchangeWitness {
    pub b1: ElementSet,
    pub b2: ElementSet,
    pub x: usize,
}

impl fmt::Display for ExchangeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "exchange fails for B1={{{}}}, B2={{{}}}, x={}",
            self.b1, self.b2, self.x
        )
    }
}

/// Searches for a failure of the exchange axiom over raw bit sets.
///
/// Returns `(b1, b2, x_bit)` for the first ordered pair and element with no
/// valid exchange partner.
pub(crate) fn find_exchange_failure<F>(bases: &[u64], is_basis: F) -> Option<(u64, u64, u64)>
where
    F: Fn(u64) -> bool,
{
    for &b1 in bases {
        for &b2 in bases {
            if b1 == b2 {
                continue;
            }
            let mut xs = b1 & !b2;
            while xs != 0 {
                let x = xs & xs.wrapping_neg();
                xs ^= x;
                let rest = b1 ^ x;
                let mut ys = b2 & !b1;
                let mut found = false;
                while ys != 0 {
                    let y = ys & ys.wrapping_neg();
                    ys ^= y;
                    if is_basis(rest | y) {
                        found = true;
                        break;
                    }
                }
                if !found {
                    return Some((b1, b2, x));
                }
            }
        }
    }
    None
}

/// Which circuits disqualify a matroid from being simple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimpleConvention {
    /// No loops (circuits of size 1).
    Loopless,
    /// No loops and no parallel pairs (circuits of size 1 or 2).
    Standard,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matroid {
    ground: GroundSet,
    rank: usize,
    bases: SetFamily,
}

/// Classification of the `(r+1)`-subsets of a paving matroid of rank `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NPartition {
    /// `(r+1)`-subsets that are circuits.
    pub circuits_r1: SetFamily,
    /// `(r+1)`-subsets containing exactly one `r`-circuit.
    pub n1: SetFamily,
    /// `(r+1)`-subsets all of whose `r`-subsets are circuits.
    pub n2: SetFamily,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub rank: usize,
    pub is_simple_loopless: bool,
    pub is_simple_standard: bool,
    pub is_paving: bool,
    pub is_sparse_paving: bool,
    pub is_uniform: bool,
    /// Indexed by circuit size; entry `k` holds the circuits of size `k`.
    pub circuits_by_size: Vec<SetFamily>,
    pub hyperplanes: SetFamily,
    /// Present only for paving matroids.
    pub n_partition: Option<NPartition>,
}

impl Matroid {
    /// Validates `bases` against the exchange axiom.
    pub fn from_bases(bases: SetFamily) -> Result<Self, MatroidError> {
        let first = *bases.members().first().ok_or(MatroidError::NoBases)?;
        let rank = first.len();
        if let Some(&found) = bases.iter().find(|b| b.len() != rank) {
            return Err(MatroidError::RankMismatch { expected: rank, found });
        }
        let ground = bases.ground();
        let bits: Vec<u64> = bases.iter().map(|b| b.bits()).collect();
        let is_basis = |s: u64| bases.contains(&ground.set_unchecked(s));
        if let Some((b1, b2, x)) = find_exchange_failure(&bits, is_basis) {
            return Err(MatroidError::NotAMatroid(ExchangeWitness {
                b1: ground.set_unchecked(b1),
                b2: ground.set_unchecked(b2),
                x: x.trailing_zeros() as usize + 1,
            }));
        }
        Ok(Self { ground, rank, bases })
    }

    /// Skips the exchange check; for basis families that are matroids by
    /// construction. Equal cardinality and non-emptiness are still asserted.
    pub fn from_bases_trusted(bases: SetFamily) -> Self {
        let rank = bases.members().first().expect("nonempty basis family").len();
        debug_assert!(bases.iter().all(|b| b.len() == rank));
        Self {
            ground: bases.ground(),
            rank,
            bases,
        }
    }

    /// The uniform matroid `U_{n,r}`.
    pub fn uniform(ground: GroundSet, rank: usize) -> Result<Self, MatroidError> {
        let bases = SetFamily::new(ground, ground.k_subsets(rank)?)?;
        Ok(Self::from_bases_trusted(bases))
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &SetFamily {
        &self.bases
    }

    pub fn is_basis(&self, x: ElementSet) -> bool {
        x.len() == self.rank && self.bases.contains(&x)
    }

    pub fn is_independent(&self, x: ElementSet) -> bool {
        self.bases.iter().any(|b| x.is_subset(*b))
    }

    /// Grows an independent subset of `x` greedily; in a matroid every
    /// maximal independent subset has the same size.
    pub fn rank_of(&self, x: ElementSet) -> usize {
        let mut independent = self.ground.empty_set();
        for e in x.elements() {
            let grown = independent.with(e);
            if self.is_independent(grown) {
                independent = grown;
            }
        }
        independent.len()
    }

    pub fn closure(&self, x: ElementSet) -> ElementSet {
        let base_rank = self.rank_of(x);
        let bits = (1..=self.ground.size())
            .filter(|&e| x.contains(e) || self.rank_of(x.with(e)) == base_rank)
            .fold(0u64, |acc, e| acc | 1 << (e - 1));
        self.ground.set_unchecked(bits)
    }

    /// Circuits of exactly `size` elements.
    pub fn circuits_of_size(&self, size: usize) -> SetFamily {
        if size == 0 || size > self.ground.size() {
            return SetFamily::empty(self.ground);
        }
        let found = self
            .ground
            .k_subsets(size)
            .expect("size bounded by n")
            .filter(|&c| !self.is_independent(c) && c.elements().all(|e| self.is_independent(c.without(e))));
        SetFamily::collect_dedup(self.ground, found)
    }

    /// All circuits; none is larger than `r + 1`.
    pub fn circuits(&self) -> SetFamily {
        let top = (self.rank + 1).min(self.ground.size());
        let all = (1..=top).flat_map(|k| self.circuits_of_size(k).members().to_vec());
        SetFamily::collect_dedup(self.ground, all)
    }

    /// Closures of the independent `(r−1)`-sets.
    pub fn hyperplanes(&self) -> Result<SetFamily, MatroidError> {
        if self.rank == 0 {
            return Err(MatroidError::NoHyperplanes);
        }
        let flats = self
            .ground
            .k_subsets(self.rank - 1)?
            .filter(|&a| self.is_independent(a))
            .map(|a| self.closure(a));
        Ok(SetFamily::collect_dedup(self.ground, flats))
    }

    /// Matroid whose bases are the complements of the bases of `self`.
    pub fn dual(&self) -> Matroid {
        let bases = SetFamily::collect_dedup(self.ground, self.bases.iter().map(|b| b.complement()));
        Matroid {
            ground: self.ground,
            rank: self.ground.size() - self.rank,
            bases,
        }
    }

    /// Relabels element `i` as `perm[i - 1] + 1` (a 0-based permutation).
    pub fn relabeled(&self, perm: &[usize]) -> Matroid {
        assert_eq!(perm.len(), self.ground.size(), "permutation length");
        let bases = self.bases.iter().map(|b| {
            let bits = b.elements().fold(0u64, |acc, e| acc | 1 << perm[e - 1]);
            self.ground.set_unchecked(bits)
        });
        Matroid {
            ground: self.ground,
            rank: self.rank,
            bases: SetFamily::collect_dedup(self.ground, bases),
        }
    }

    /// No circuit smaller than the rank.
    pub fn is_paving(&self) -> bool {
        (1..self.rank.min(self.ground.size() + 1)).all(|k| self.circuits_of_size(k).is_empty())
    }

    /// Paving test through hyperplanes: distinct hyperplanes of size at least
    /// `r` meet in at most `r − 2` elements.
    pub fn is_paving_by_hyperplanes(&self) -> Result<bool, MatroidError> {
        if self.rank < 2 {
            return Err(MatroidError::RankTooSmall {
                what: "hyperplane paving criterion",
                rank: self.rank,
                required: 2,
            });
        }
        let large: Vec<ElementSet> = self
            .hyperplanes()?
            .iter()
            .copied()
            .filter(|h| h.len() >= self.rank)
            .collect();
        let limit = self.rank - 2;
        Ok(large
            .iter()
            .enumerate()
            .all(|(i, x)| large[i + 1..].iter().all(|y| x.meet(*y) <= limit)))
    }

    /// Splits `binom(S, r+1)` into `(r+1)`-circuits, `N₁` and `N₂`.
    ///
    /// Each member of `N₁` is checked to hold exactly one `r`-circuit. When
    /// `r = n` all three families are empty.
    pub fn n_partition(&self) -> Result<NPartition, MatroidError> {
        if !self.is_paving() {
            return Err(MatroidError::NotPaving("N-partition"));
        }
        let empty = SetFamily::empty(self.ground);
        if self.rank + 1 > self.ground.size() {
            return Ok(NPartition {
                circuits_r1: empty.clone(),
                n1: empty.clone(),
                n2: empty,
            });
        }
        let (mut c_r1, mut n1, mut n2) = (Vec::new(), Vec::new(), Vec::new());
        for x in self.ground.k_subsets(self.rank + 1)? {
            // in a paving matroid an r-set is either a basis or an r-circuit
            let circuits_inside = x.elements().filter(|&e| !self.is_basis(x.without(e))).count();
            if circuits_inside == x.len() {
                n2.push(x);
            } else if circuits_inside == 0 {
                c_r1.push(x);
            } else if circuits_inside == 1 {
                n1.push(x);
            } else {
                return Err(MatroidError::InvariantViolated(format!(
                    "({}+1)-set `{x}` holds {circuits_inside} r-circuits but is not in N2",
                    self.rank
                )));
            }
        }
        Ok(NPartition {
            circuits_r1: SetFamily::collect_dedup(self.ground, c_r1),
            n1: SetFamily::collect_dedup(self.ground, n1),
            n2: SetFamily::collect_dedup(self.ground, n2),
        })
    }

    /// Paving with a paving dual.
    pub fn is_sparse_paving(&self) -> bool {
        self.is_paving() && self.dual().is_paving()
    }

    /// Paving with `N₂ = ∅`.
    pub fn is_sparse_paving_by_n2(&self) -> bool {
        self.n_partition().map(|p| p.n2.is_empty()).unwrap_or(false)
    }

    /// Paving with every hyperplane of size at most `r`.
    pub fn is_sparse_paving_by_hyperplane_sizes(&self) -> Result<bool, MatroidError> {
        if !self.is_paving() {
            return Ok(false);
        }
        Ok(self.hyperplanes()?.iter().all(|h| h.len() <= self.rank))
    }

    pub fn is_simple(&self, convention: SimpleConvention) -> bool {
        let loopless = self.bases.union() == self.ground.full_set();
        match convention {
            SimpleConvention::Loopless => loopless,
            SimpleConvention::Standard => loopless && self.circuits_of_size(2).is_empty(),
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.bases.len() as u64 == binomial(self.ground.size(), self.rank)
    }

    pub fn structure(&self) -> StructureReport {
        let top = (self.rank + 1).min(self.ground.size());
        let circuits_by_size = (0..=top).map(|k| self.circuits_of_size(k)).collect();
        let is_paving = self.is_paving();
        StructureReport {
            rank: self.rank,
            is_simple_loopless: self.is_simple(SimpleConvention::Loopless),
            is_simple_standard: self.is_simple(SimpleConvention::Standard),
            is_paving,
            is_sparse_paving: is_paving && self.dual().is_paving(),
            is_uniform: self.is_uniform(),
            circuits_by_size,
            hyperplanes: self.hyperplanes().unwrap_or_else(|_| SetFamily::empty(self.ground)),
            n_partition: if is_paving { self.n_partition().ok() } else { None },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(n: usize, sets: &[&[usize]]) -> SetFamily {
        let g = GroundSet::new(n).unwrap();
        SetFamily::new(g, sets.iter().map(|s| g.set_of(s.iter().copied()).unwrap())).unwrap()
    }

    fn set(n: usize, elems: &[usize]) -> ElementSet {
        GroundSet::new(n).unwrap().set_of(elems.iter().copied()).unwrap()
    }

    fn m(n: usize, sets: &[&[usize]]) -> Matroid {
        Matroid::from_bases(family(n, sets)).unwrap()
    }

    fn uniform(n: usize, r: usize) -> Matroid {
        Matroid::uniform(GroundSet::new(n).unwrap(), r).unwrap()
    }

    /// bases {14,24,34} on n=4: one 3-point line {1,2,3}.
    fn line_plus_point() -> Matroid {
        m(4, &[&[1, 4], &[2, 4], &[3, 4]])
    }

    /// bases {13,14,23,24} on n=4: two parallel classes.
    fn two_parallel_pairs() -> Matroid {
        m(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]])
    }

    /// Rank 4 on n=6, bases = two from {1,2,3} and two from {4,5,6}.
    fn non_paving_rank4() -> Matroid {
        let g = GroundSet::new(6).unwrap();
        let a = g.set_of([1, 2, 3]).unwrap();
        let b = g.set_of([4, 5, 6]).unwrap();
        let bases = g
            .k_subsets(4)
            .unwrap()
            .filter(|s| s.intersection(a).len() == 2 && s.intersection(b).len() == 2);
        Matroid::from_bases(SetFamily::new(g, bases).unwrap()).unwrap()
    }

    #[test]
    fn from_bases_examples() {
        assert_eq!(two_parallel_pairs().rank(), 2);
        let u32_ = m(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(u32_, uniform(3, 2));
        let err = Matroid::from_bases(family(4, &[&[1, 2], &[3, 4]])).unwrap_err();
        assert_eq!(
            err,
            MatroidError::NotAMatroid(ExchangeWitness {
                b1: set(4, &[1, 2]),
                b2: set(4, &[3, 4]),
                x: 1
            })
        );
    }

    #[test]
    fn from_bases_errors() {
        let g = GroundSet::new(3).unwrap();
        assert_eq!(Matroid::from_bases(SetFamily::empty(g)), Err(MatroidError::NoBases));
        assert!(matches!(
            Matroid::from_bases(family(3, &[&[1], &[2, 3]])),
            Err(MatroidError::RankMismatch { expected: 1, .. })
        ));
    }

    #[test]
    fn rank_and_independence() {
        let u = uniform(3, 2);
        assert_eq!(u.rank_of(set(3, &[1, 2, 3])), 2);
        let one_circuit = m(3, &[&[1, 3], &[2, 3]]);
        assert_eq!(one_circuit.rank_of(set(3, &[1, 2])), 1);
        assert_eq!(one_circuit.rank_of(set(3, &[])), 0);
        assert!(u.is_independent(set(3, &[1, 3])));
        assert!(!one_circuit.is_independent(set(3, &[1, 2])));
        assert!(one_circuit.is_independent(set(3, &[])));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(two_parallel_pairs().closure(set(4, &[1])), set(4, &[1, 2]));
        assert_eq!(uniform(4, 2).closure(set(4, &[1])), set(4, &[1]));
        let full = set(4, &[1, 2, 3, 4]);
        assert_eq!(line_plus_point().closure(full), full);
    }

    #[test]
    fn circuit_examples() {
        assert_eq!(
            uniform(4, 2).circuits(),
            SetFamily::new(
                GroundSet::new(4).unwrap(),
                GroundSet::new(4).unwrap().k_subsets(3).unwrap()
            )
            .unwrap()
        );
        assert_eq!(m(3, &[&[1, 3], &[2, 3]]).circuits(), family(3, &[&[1, 2]]));
        assert_eq!(line_plus_point().circuits(), family(4, &[&[1, 2], &[1, 3], &[2, 3]]));
    }

    #[test]
    fn hyperplane_examples() {
        assert_eq!(
            uniform(4, 2).hyperplanes().unwrap(),
            family(4, &[&[1], &[2], &[3], &[4]])
        );
        assert_eq!(line_plus_point().hyperplanes().unwrap(), family(4, &[&[1, 2, 3], &[4]]));
        assert_eq!(
            two_parallel_pairs().hyperplanes().unwrap(),
            family(4, &[&[1, 2], &[3, 4]])
        );
        let rank0 = Matroid::uniform(GroundSet::new(2).unwrap(), 0).unwrap();
        assert_eq!(rank0.hyperplanes(), Err(MatroidError::NoHyperplanes));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(uniform(4, 2).dual(), uniform(4, 2));
        let d = line_plus_point().dual();
        assert_eq!(d.bases(), &family(4, &[&[2, 3], &[1, 3], &[1, 2]]));
        assert_eq!(d.rank(), 2);
        assert_eq!(d.dual(), line_plus_point());
    }

    #[test]
    fn paving_examples() {
        assert!(uniform(5, 3).is_paving());
        assert!(line_plus_point().is_paving());
        assert!(!non_paving_rank4().is_paving());
        assert_eq!(line_plus_point().is_paving_by_hyperplanes(), Ok(true));
        assert_eq!(uniform(5, 3).is_paving_by_hyperplanes(), Ok(true));
        assert_eq!(non_paving_rank4().is_paving_by_hyperplanes(), Ok(false));
        assert!(matches!(
            uniform(3, 1).is_paving_by_hyperplanes(),
            Err(MatroidError::RankTooSmall { .. })
        ));
    }

    #[test]
    fn n_partition_examples() {
        let u = uniform(5, 2).n_partition().unwrap();
        assert_eq!(u.circuits_r1.len(), 10);
        assert!(u.n1.is_empty() && u.n2.is_empty());

        let p = line_plus_point().n_partition().unwrap();
        assert_eq!(p.n2, family(4, &[&[1, 2, 3]]));
        assert_eq!(p.n1, family(4, &[&[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]));
        assert!(p.circuits_r1.is_empty());

        let q = two_parallel_pairs().n_partition().unwrap();
        assert!(q.n2.is_empty());
        assert_eq!(q.n1.len(), 4);

        assert_eq!(
            non_paving_rank4().n_partition(),
            Err(MatroidError::NotPaving("N-partition"))
        );
    }

    #[test]
    fn sparse_paving_examples() {
        for (n, r) in [(4, 2), (5, 3), (3, 3)] {
            assert!(uniform(n, r).is_sparse_paving());
        }
        let lp = line_plus_point();
        assert!(!lp.is_sparse_paving());
        assert!(!lp.is_sparse_paving_by_n2());
        assert_eq!(lp.is_sparse_paving_by_hyperplane_sizes(), Ok(false));
        let pp = two_parallel_pairs();
        assert!(pp.is_sparse_paving());
        assert!(pp.is_sparse_paving_by_n2());
        assert_eq!(pp.is_sparse_paving_by_hyperplane_sizes(), Ok(true));
    }

    #[test]
    fn simplicity_conventions() {
        assert!(uniform(3, 2).is_simple(SimpleConvention::Loopless));
        let one_circuit = m(3, &[&[1, 3], &[2, 3]]);
        assert!(one_circuit.is_simple(SimpleConvention::Loopless));
        assert!(!one_circuit.is_simple(SimpleConvention::Standard));
        let with_loop = m(3, &[&[1, 2]]);
        assert!(!with_loop.is_simple(SimpleConvention::Loopless));
    }

    #[test]
    fn degenerate_ranks() {
        let g = GroundSet::new(3).unwrap();
        let free = Matroid::uniform(g, 3).unwrap();
        assert!(free.circuits().is_empty());
        assert!(free.is_paving() && free.is_sparse_paving());
        let rank0 = Matroid::uniform(g, 0).unwrap();
        assert_eq!(rank0.circuits().len(), 3);
        assert!(rank0.is_paving());
        assert_eq!(rank0.dual(), free);
    }

    #[test]
    fn structure_report() {
        let s = line_plus_point().structure();
        assert_eq!(s.rank, 2);
        assert!(s.is_paving && !s.is_sparse_paving && !s.is_uniform);
        assert!(s.is_simple_loopless && !s.is_simple_standard);
        assert_eq!(s.circuits_by_size[2].len(), 3);
        assert_eq!(s.n_partition.unwrap().n2.len(), 1);
        assert!(non_paving_rank4().structure().n_partition.is_none());
    }

    #[test]
    fn relabel_swaps_labels() {
        let a = m(3, &[&[1, 3], &[2, 3]]);
        let b = m(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(a.relabeled(&[0, 2, 1]), b);
    }
}
