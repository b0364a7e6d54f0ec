//! Matroids given by their bases, minors, quotients and flag matroids.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ground::{bit, check_n, full_mask, k_subsets, mask_elements, mask_from_elements, Subset};

/// A matroid on a ground set `E ⊆ [n]`, stored as a sorted list of basis masks.
///
/// Minors keep the original labels, so the ground set of `M \ S` is `E \ S`
/// inside the same ambient `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matroid {
    n: usize,
    ground: u64,
    rank: usize,
    bases: Vec<u64>,
}

/// Exchange axiom on sorted, deduplicated, equicardinal masks.
fn exchange_holds(bases: &[u64]) -> bool {
    let set: HashSet<u64> = bases.iter().copied().collect();
    for &a in bases {
        for &b in bases {
            let mut out = a & !b;
            while out != 0 {
                let x = out & out.wrapping_neg();
                out ^= x;
                let base = a & !x;
                let mut inn = b & !a;
                let mut found = false;
                while inn != 0 {
                    let y = inn & inn.wrapping_neg();
                    inn ^= y;
                    if set.contains(&(base | y)) {
                        found = true;
                        break;
                    }
                }
                if !found {
                    return false;
                }
            }
        }
    }
    true
}

fn normalize(mut bases: Vec<u64>) -> Result<(usize, Vec<u64>)> {
    bases.sort_unstable();
    bases.dedup();
    let first = *bases.first().ok_or(Error::Empty)?;
    let r = first.count_ones() as usize;
    if let Some(b) = bases.iter().find(|b| b.count_ones() as usize != r) {
        return Err(Error::CardinalityMismatch(r, b.count_ones() as usize));
    }
    Ok((r, bases))
}

/// True iff the equicardinal, nonempty collection satisfies basis exchange.
pub fn is_matroid_bases(n: usize, bases: &[Subset]) -> Result<bool> {
    if let Some(s) = bases.iter().find(|s| s.n() != n) {
        return Err(Error::SizeMismatch(n, s.n()));
    }
    let (_, masks) = normalize(bases.iter().map(|s| s.bits()).collect())?;
    Ok(exchange_holds(&masks))
}

impl Matroid {
    /// Matroid on `[n]` from 1-based basis lists; checks the exchange axiom.
    pub fn new(n: usize, bases: &[Vec<usize>]) -> Result<Self> {
        let masks = bases
            .iter()
            .map(|b| mask_from_elements(n, b))
            .collect::<Result<Vec<_>>>()?;
        Matroid::from_masks(n, full_mask(n), masks)
    }

    pub fn from_masks(n: usize, ground: u64, bases: Vec<u64>) -> Result<Self> {
        let m = Matroid::from_masks_unchecked(n, ground, bases)?;
        if !exchange_holds(&m.bases) {
            return Err(Error::NotMatroid);
        }
        Ok(m)
    }

    /// Skips the exchange check; shapes are still validated.
    pub fn from_masks_unchecked(n: usize, ground: u64, bases: Vec<u64>) -> Result<Self> {
        check_n(n)?;
        if ground & !full_mask(n) != 0 {
            return Err(Error::InvalidMinor("ground set exceeds [n]".into()));
        }
        let (rank, bases) = normalize(bases)?;
        if bases.iter().any(|b| b & !ground != 0) {
            return Err(Error::InvalidMinor("basis outside the ground set".into()));
        }
        Ok(Matroid {
            n,
            ground,
            rank,
            bases,
        })
    }

    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        check_n(n)?;
        if r > n {
            return Err(Error::InvalidRank { rank: r, n });
        }
        let mut bases: Vec<u64> = k_subsets(n, r).collect();
        bases.sort_unstable();
        Ok(Matroid {
            n,
            ground: full_mask(n),
            rank: r,
            bases,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> u64 {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[u64] {
        &self.bases
    }

    pub fn basis_lists(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| mask_elements(b)).collect()
    }

    pub fn is_basis(&self, b: u64) -> bool {
        self.bases.binary_search(&b).is_ok()
    }

    pub fn loops(&self) -> u64 {
        let union = self.bases.iter().fold(0, |u, &b| u | b);
        self.ground & !union
    }

    pub fn coloops(&self) -> u64 {
        self.bases.iter().fold(self.ground, |i, &b| i & b)
    }

    /// `max |B ∩ S|` over bases `B`.
    pub fn rank_of(&self, s: u64) -> usize {
        self.bases
            .iter()
            .map(|&b| (b & s).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Ranks of every subset of `[n]`, indexed by mask.
    pub fn rank_table(&self) -> Vec<u8> {
        let size = 1usize << self.n;
        let mut table = vec![0u8; size];
        for &b in &self.bases {
            // Every subset of a basis is independent; rank is the largest
            // independent subset, so propagate |B ∩ S| upward.
            for (s, slot) in table.iter_mut().enumerate() {
                let r = (b & s as u64).count_ones() as u8;
                if r > *slot {
                    *slot = r;
                }
            }
        }
        table
    }

    pub fn delete(&self, s: u64) -> Result<Matroid> {
        if s & !self.ground != 0 {
            return Err(Error::InvalidMinor("deleted set outside the ground set".into()));
        }
        let ground = self.ground & !s;
        if ground == 0 {
            return Err(Error::InvalidMinor("cannot delete every element".into()));
        }
        let keep = self
            .bases
            .iter()
            .map(|&b| (b & s).count_ones())
            .min()
            .unwrap_or(0);
        let bases = self
            .bases
            .iter()
            .filter(|&&b| (b & s).count_ones() == keep)
            .map(|&b| b & !s)
            .collect();
        Matroid::from_masks_unchecked(self.n, ground, bases)
    }

    pub fn contract(&self, s: u64) -> Result<Matroid> {
        if s & !self.ground != 0 {
            return Err(Error::InvalidMinor("contracted set outside the ground set".into()));
        }
        let rs = self.rank_of(s) as u32;
        let bases = self
            .bases
            .iter()
            .filter(|&&b| (b & s).count_ones() == rs)
            .map(|&b| b & !s)
            .collect();
        Matroid::from_masks_unchecked(self.n, self.ground & !s, bases)
    }

    pub fn restrict(&self, s: u64) -> Result<Matroid> {
        if s & !self.ground != 0 {
            return Err(Error::InvalidMinor("restriction outside the ground set".into()));
        }
        self.delete(self.ground & !s)
    }

    pub fn dual(&self) -> Matroid {
        let mut bases: Vec<u64> = self.bases.iter().map(|&b| self.ground & !b).collect();
        bases.sort_unstable();
        Matroid {
            n: self.n,
            ground: self.ground,
            rank: self.ground.count_ones() as usize - self.rank,
            bases,
        }
    }

    /// Direct sum of two matroids on disjoint ground sets inside the same `[n]`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        if self.ground & other.ground != 0 {
            return Err(Error::InvalidMinor("direct sum of overlapping ground sets".into()));
        }
        let bases = self
            .bases
            .iter()
            .flat_map(|&a| other.bases.iter().map(move |&b| a | b))
            .collect();
        Matroid::from_masks_unchecked(self.n, self.ground | other.ground, bases)
    }

    /// Relabels the ground set order-preservingly onto `[k]`.
    pub fn relabeled(&self) -> Matroid {
        let elems = mask_elements(self.ground);
        let map = |b: u64| {
            elems
                .iter()
                .enumerate()
                .filter(|(_, &x)| b & bit(x) != 0)
                .fold(0u64, |m, (i, _)| m | bit(i + 1))
        };
        let k = elems.len();
        let mut bases: Vec<u64> = self.bases.iter().map(|&b| map(b)).collect();
        bases.sort_unstable();
        Matroid {
            n: k,
            ground: full_mask(k),
            rank: self.rank,
            bases,
        }
    }

    /// `M|S₁ ⊕ M|S₂/S₁ ⊕ ... ⊕ M/S_ℓ` for a strictly increasing chain of
    /// nonempty proper subsets of the ground set.
    pub fn chain_face_minor(&self, chain: &[u64]) -> Result<Matroid> {
        let mut prev = 0u64;
        for &s in chain {
            if s == 0 || s & !self.ground != 0 || s == self.ground || s & prev != prev || s == prev {
                return Err(Error::InvalidMinor("malformed chain".into()));
            }
            prev = s;
        }
        let mut steps: Vec<u64> = chain.to_vec();
        steps.push(self.ground);
        let mut lower = 0u64;
        let mut acc: Option<Matroid> = None;
        for s in steps {
            let piece = self.restrict(s)?.contract(lower)?;
            acc = Some(match acc {
                None => piece,
                Some(m) => m.direct_sum(&piece)?,
            });
            lower = s;
        }
        Ok(acc.expect("chain has at least one step"))
    }
}

/// True iff `low` is a quotient of `high`: for every `A` and `e ∉ A`,
/// `r_high(A+e) - r_high(A) >= r_low(A+e) - r_low(A)`. The single-step form
/// telescopes to the condition over all nested pairs `B ⊆ A`.
pub fn is_quotient(low: &Matroid, high: &Matroid) -> Result<bool> {
    if low.n != high.n {
        return Err(Error::SizeMismatch(low.n, high.n));
    }
    if low.ground != high.ground || low.rank > high.rank {
        return Ok(false);
    }
    let rl = low.rank_table();
    let rh = high.rank_table();
    let ground = low.ground as usize;
    for a in 0..rl.len() {
        if a & !ground != 0 {
            continue;
        }
        let mut rest = ground & !a;
        while rest != 0 {
            let e = rest & rest.wrapping_neg();
            rest ^= e;
            let ae = a | e;
            if rh[ae] as i32 - (rh[a] as i32) < rl[ae] as i32 - (rl[a] as i32) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_increasing(seq: &[Matroid]) -> Result<()> {
    let ranks: Vec<usize> = seq.iter().map(|m| m.rank).collect();
    if ranks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::RanksNotIncreasing(ranks));
    }
    if let Some(w) = seq.windows(2).find(|w| w[0].n != w[1].n) {
        return Err(Error::SizeMismatch(w[0].n, w[1].n));
    }
    Ok(())
}

/// Flag matroid test: consecutive constituents must be quotients. Quotients
/// compose, so this covers every pair regardless of rank gaps.
pub fn is_flag_matroid(seq: &[Matroid]) -> Result<bool> {
    if seq.is_empty() {
        return Err(Error::Empty);
    }
    check_increasing(seq)?;
    for w in seq.windows(2) {
        if !is_quotient(&w[0], &w[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All chains `B₁ ⊂ ... ⊂ B_k` with `B_i` a basis of `M_i`, sorted.
pub fn flags_of(seq: &[Matroid]) -> Result<Vec<Vec<u64>>> {
    if !is_flag_matroid(seq)? {
        return Err(Error::NotFlagMatroid);
    }
    Ok(chains(seq))
}

fn chains(seq: &[Matroid]) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = seq[0].bases.iter().map(|&b| vec![b]).collect();
    for m in &seq[1..] {
        out = out
            .into_iter()
            .flat_map(|f| {
                let last = *f.last().expect("nonempty flag");
                m.bases
                    .iter()
                    .filter(move |&&b| b & last == last)
                    .map(move |&b| {
                        let mut g = f.clone();
                        g.push(b);
                        g
                    })
            })
            .collect();
    }
    out.sort();
    out
}

/// A validated flag matroid `(M₁, ..., M_k)` with strictly increasing ranks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlagMatroid {
    constituents: Vec<Matroid>,
}

impl FlagMatroid {
    pub fn new(constituents: Vec<Matroid>) -> Result<Self> {
        if !is_flag_matroid(&constituents)? {
            return Err(Error::NotFlagMatroid);
        }
        Ok(FlagMatroid { constituents })
    }

    pub fn constituents(&self) -> &[Matroid] {
        &self.constituents
    }

    pub fn into_constituents(self) -> Vec<Matroid> {
        self.constituents
    }

    pub fn n(&self) -> usize {
        self.constituents[0].n
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.constituents.iter().map(|m| m.rank).collect()
    }

    pub fn flags(&self) -> Vec<Vec<u64>> {
        chains(&self.constituents)
    }

    /// Ranks `1, ..., n` on the full ground set.
    pub fn is_complete(&self) -> bool {
        self.ranks() == (1..=self.n()).collect::<Vec<_>>()
    }
}
