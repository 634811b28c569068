//! Brute-force oracles over raw bit masks.
//!
//! Nothing here calls the library's derived-structure code: independence is
//! the down-closure of the bases, rank is a table over all `2^n` subsets, and
//! circuits and hyperplanes come from their definitions.

#![allow(dead_code)]

use paving_core::{ElementSet, GroundSet, Matroid, SetFamily};

pub struct Oracle {
    pub n: usize,
    pub r: usize,
    /// `indep[x]` for every subset mask `x`.
    pub indep: Vec<bool>,
    pub rank: Vec<usize>,
}

impl Oracle {
    pub fn from_bases(n: usize, bases: &[u64]) -> Self {
        let size = 1usize << n;
        let mut indep = vec![false; size];
        for &b in bases {
            // every subset of b
            let mut s = b;
            loop {
                indep[s as usize] = true;
                if s == 0 {
                    break;
                }
                s = (s - 1) & b;
            }
        }
        let mut rank = vec![0usize; size];
        for x in 0..size {
            rank[x] = if indep[x] {
                (x as u64).count_ones() as usize
            } else {
                (0..n)
                    .filter(|e| x >> e & 1 == 1)
                    .map(|e| rank[x & !(1 << e)])
                    .max()
                    .unwrap_or(0)
            };
        }
        let r = bases.first().map_or(0, |b| b.count_ones() as usize);
        Self { n, r, indep, rank }
    }

    pub fn of(m: &Matroid) -> Self {
        let bases: Vec<u64> = m.bases().iter().map(|b| b.bits()).collect();
        Self::from_bases(m.ground().size(), &bases)
    }

    fn full(&self) -> usize {
        (1 << self.n) - 1
    }

    /// (I1), (I2) and (I3) checked over every pair of subsets.
    pub fn satisfies_independence_axioms(&self) -> bool {
        let size = 1usize << self.n;
        if !self.indep[0] {
            return false;
        }
        for x in 0..size {
            if !self.indep[x] {
                continue;
            }
            // (I2): one-element deletions suffice by induction
            if (0..self.n).any(|e| x >> e & 1 == 1 && !self.indep[x & !(1 << e)]) {
                return false;
            }
            for y in 0..size {
                if !self.indep[y] || (x as u64).count_ones() != (y as u64).count_ones() + 1 {
                    continue;
                }
                let extendable = (0..self.n)
                    .filter(|e| x >> e & 1 == 1 && y >> e & 1 == 0)
                    .any(|e| self.indep[y | 1 << e]);
                if !extendable {
                    return false;
                }
            }
        }
        true
    }

    pub fn circuits(&self) -> Vec<u64> {
        (0..1usize << self.n)
            .filter(|&x| {
                !self.indep[x]
                    && (0..self.n)
                        .filter(|e| x >> e & 1 == 1)
                        .all(|e| self.indep[x & !(1 << e)])
            })
            .map(|x| x as u64)
            .collect()
    }

    pub fn hyperplanes(&self) -> Vec<u64> {
        let full = self.full();
        (0..=full)
            .filter(|&x| {
                self.rank[x] + 1 == self.r
                    && (0..self.n)
                        .filter(|e| x >> e & 1 == 0)
                        .all(|e| self.rank[x | 1 << e] == self.r)
            })
            .map(|x| x as u64)
            .collect()
    }

    pub fn closure(&self, x: u64) -> u64 {
        let x = x as usize;
        (0..self.n)
            .filter(|&e| self.rank[x | 1 << e] == self.rank[x])
            .fold(x as u64, |acc, e| acc | 1 << e)
    }

    /// No circuit smaller than the rank.
    pub fn is_paving(&self) -> bool {
        self.circuits().iter().all(|c| c.count_ones() as usize >= self.r)
    }

    pub fn dual(&self) -> Oracle {
        let full = self.full() as u64;
        let bases: Vec<u64> = (0..=full)
            .filter(|&x| self.indep[x as usize] && x.count_ones() as usize == self.r)
            .map(|b| !b & full)
            .collect();
        Oracle::from_bases(self.n, &bases)
    }
}

pub fn family_from_bits(ground: GroundSet, bits: &[u64]) -> SetFamily {
    SetFamily::new(ground, bits.iter().map(|&b| ground.set_from_bits(b).unwrap())).unwrap()
}

pub fn bits_of(family: &SetFamily) -> Vec<u64> {
    family.iter().map(|s: &ElementSet| s.bits()).collect()
}

/// Subsets of `{0..n-1}` with sizes in `[lo, hi]`, as masks.
pub fn masks_sized(n: usize, lo: usize, hi: usize) -> Vec<u64> {
    (0..1u64 << n)
        .filter(|x| (lo..=hi).contains(&(x.count_ones() as usize)))
        .collect()
}

/// Every family of candidates pairwise meeting in at most `max_meet`
/// elements, by scanning the full power set of the candidate list.
pub fn power_set_families(candidates: &[u64], max_meet: u32) -> Vec<Vec<u64>> {
    assert!(candidates.len() <= 24, "power set too large");
    (0..1u64 << candidates.len())
        .filter_map(|pick| {
            let members: Vec<u64> = (0..candidates.len())
                .filter(|i| pick >> i & 1 == 1)
                .map(|i| candidates[i])
                .collect();
            let ok = members
                .iter()
                .enumerate()
                .all(|(i, a)| members[i + 1..].iter().all(|b| (a & b).count_ones() <= max_meet));
            ok.then_some(members)
        })
        .collect()
}

/// Every nonempty family of `r`-sets whose down-closure satisfies the
/// independence axioms.
pub fn matroid_families_by_axioms(n: usize, r: usize) -> Vec<Vec<u64>> {
    let r_sets = masks_sized(n, r, r);
    (1..1u64 << r_sets.len())
        .filter_map(|pick| {
            let bases: Vec<u64> = (0..r_sets.len())
                .filter(|i| pick >> i & 1 == 1)
                .map(|i| r_sets[i])
                .collect();
            Oracle::from_bases(n, &bases)
                .satisfies_independence_axioms()
                .then_some(bases)
        })
        .collect()
}

pub fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}
