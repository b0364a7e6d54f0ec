//! Grassmann necklaces, positroids, and the necklace test for positively
//! oriented quotients of positroids of adjacent ranks.

use crate::error::{Error, Result};
use crate::ground::{
    bit, check_n, full_mask, gale_leq_bits, gale_min_bits, k_subsets, mask_elements, mask_from_elements,
    rotate_mask, shifted_max, shifted_min,
};
use crate::matroid::Matroid;

/// A cyclic sequence `(I_1, ..., I_n)` of `d`-subsets of `[n]` satisfying the
/// necklace axiom: if `i ∈ I_i` then `I_{i+1} = (I_i \ i) ∪ j`, otherwise
/// `I_{i+1} = I_i`, with `I_{n+1} = I_1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GrassmannNecklace {
    n: usize,
    d: usize,
    sets: Vec<u64>,
}

/// Checks the necklace axiom on raw masks.
pub fn is_grassmann_necklace(n: usize, sets: &[u64]) -> bool {
    if sets.len() != n || n == 0 || n > 63 {
        return false;
    }
    let d = sets[0].count_ones();
    if sets.iter().any(|&s| s.count_ones() != d || s & !full_mask(n) != 0) {
        return false;
    }
    (1..=n).all(|i| step_ok(sets[i - 1], sets[i % n], i))
}

#[inline]
fn step_ok(cur: u64, next: u64, i: usize) -> bool {
    if cur & bit(i) != 0 {
        let rest = cur & !bit(i);
        next & rest == rest
    } else {
        next == cur
    }
}

impl GrassmannNecklace {
    pub fn new(n: usize, d: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let masks = sets
            .iter()
            .map(|s| mask_from_elements(n, s))
            .collect::<Result<Vec<_>>>()?;
        GrassmannNecklace::from_masks(n, d, masks)
    }

    pub fn from_masks(n: usize, d: usize, sets: Vec<u64>) -> Result<Self> {
        check_n(n)?;
        if sets.len() != n {
            return Err(Error::InvalidNecklace(format!("expected {n} sets, got {}", sets.len())));
        }
        if let Some(s) = sets.iter().find(|s| s.count_ones() as usize != d) {
            return Err(Error::InvalidNecklace(format!(
                "set {:?} does not have {d} elements",
                mask_elements(*s)
            )));
        }
        if !is_grassmann_necklace(n, &sets) {
            return Err(Error::InvalidNecklace("necklace axiom fails".into()));
        }
        Ok(GrassmannNecklace { n, d, sets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn sets(&self) -> &[u64] {
        &self.sets
    }

    /// `I_i` for 1-based `i`.
    pub fn at(&self, i: usize) -> u64 {
        self.sets[i - 1]
    }

    pub fn set_lists(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|&s| mask_elements(s)).collect()
    }

    /// Lazy positroid membership: `B >=_i I_i` for all `i`.
    pub fn admits(&self, b: u64) -> bool {
        b.count_ones() as usize == self.d
            && self
                .sets
                .iter()
                .enumerate()
                .all(|(k, &s)| gale_leq_bits(s, b, k + 1, self.n))
    }
}

/// `I_i = gale_min(bases(M), i)` for each `i`.
pub fn necklace_of(m: &Matroid) -> Result<GrassmannNecklace> {
    let n = m.n();
    if m.ground() != full_mask(n) {
        return Err(Error::Invalid("necklaces need a matroid on the full ground set".into()));
    }
    let sets = (1..=n)
        .map(|i| gale_min_bits(m.bases(), i, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(GrassmannNecklace { n, d: m.rank(), sets })
}

/// The positroid whose bases are the `d`-subsets `B` with `B >=_i I_i` for all `i`.
pub fn positroid_of(neck: &GrassmannNecklace) -> Matroid {
    let bases: Vec<u64> = k_subsets(neck.n, neck.d).filter(|&b| neck.admits(b)).collect();
    Matroid::from_masks_unchecked(neck.n, full_mask(neck.n), bases)
        .expect("a necklace admits its own first set")
}

pub fn is_positroid(m: &Matroid) -> Result<bool> {
    let neck = match necklace_of(m) {
        Ok(neck) => neck,
        Err(Error::NoUniqueMinimum { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    let p = positroid_of(&neck);
    Ok(p.bases() == m.bases())
}

/// Lexicographic minimum in the shifted order, which refines the Gale order.
fn shifted_lex_min(a: u64, b: u64, i: usize, n: usize) -> u64 {
    let (ra, rb) = (rotate_mask(a, i, n), rotate_mask(b, i, n));
    let d = ra ^ rb;
    if d == 0 || ra & (d & d.wrapping_neg()) != 0 {
        a
    } else {
        b
    }
}

fn check_adjacent(low: &GrassmannNecklace, high: &GrassmannNecklace) -> Result<()> {
    if low.n != high.n {
        return Err(Error::SizeMismatch(low.n, high.n));
    }
    if high.d != low.d + 1 {
        return Err(Error::RanksNotConsecutive(vec![low.d, high.d]));
    }
    check_n(low.n + 1)
}

/// The necklace on `[n+1]` of the positroid with bases
/// `B(M₂) ∪ {B ∪ {n+1} : B ∈ B(M₁)}`.
pub fn pair_to_necklace(low: &GrassmannNecklace, high: &GrassmannNecklace) -> Result<GrassmannNecklace> {
    check_adjacent(low, high)?;
    let n = low.n;
    let top = bit(n + 1);
    let mut sets = Vec::with_capacity(n + 1);
    sets.push(high.at(1));
    for i in 2..=n {
        sets.push(shifted_lex_min(low.at(i) | top, high.at(i), i, n + 1));
    }
    sets.push(low.at(1) | top);
    Ok(GrassmannNecklace {
        n: n + 1,
        d: high.d,
        sets,
    })
}

/// Necklaces of `M/(n+1)` and `M \ (n+1)` for a positroid `M` on `[n+1]`
/// in which `n+1` is neither a loop nor a coloop.
///
/// For `n+1 ∈ J_i` the deletion adds `min_i(J_1 \ J_i)`: the first basis
/// after `J_i` in the cyclic order that avoids `n+1` is governed by
/// `J_{n+2} = J_1`, not by `J_{n+1}` (which always contains `n+1`).
pub fn delete_contract_necklaces(j: &GrassmannNecklace) -> Result<(GrassmannNecklace, GrassmannNecklace)> {
    let big = j.n;
    if big < 2 {
        return Err(Error::InvalidNecklace("need at least two elements".into()));
    }
    let n = big - 1;
    let top = bit(big);
    let jn1 = j.at(big);
    if jn1 & top == 0 || j.at(1) & top != 0 {
        return Err(Error::LoopOrColoop(big));
    }
    let j1 = j.at(1);
    let mut k1 = Vec::with_capacity(n);
    let mut k2 = Vec::with_capacity(n);
    for i in 1..=n {
        let ji = j.at(i);
        if ji & top != 0 {
            let rest = ji & !top;
            k1.push(rest);
            let b = shifted_min(j1 & !ji, i, big)
                .ok_or_else(|| Error::InvalidNecklace(format!("J_1 \\ J_{i} is empty")))?;
            k2.push(rest | bit(b));
        } else {
            let a = shifted_max(ji & !jn1, i, big)
                .ok_or_else(|| Error::InvalidNecklace(format!("J_{i} \\ J_{big} is empty")))?;
            k1.push(ji & !bit(a));
            k2.push(ji);
        }
    }
    Ok((
        GrassmannNecklace::from_masks(n, j.d - 1, k1)?,
        GrassmannNecklace::from_masks(n, j.d, k2)?,
    ))
}

/// Outcome of the four-condition quotient test; `failed_condition` is the
/// first condition (1-4) that fails.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QuotientVerdict {
    pub quotient: bool,
    pub failed_condition: Option<u8>,
}

impl QuotientVerdict {
    fn pass() -> Self {
        QuotientVerdict {
            quotient: true,
            failed_condition: None,
        }
    }

    fn fail(c: u8) -> Self {
        QuotientVerdict {
            quotient: false,
            failed_condition: Some(c),
        }
    }
}

/// Which set `b_i` is drawn from in condition (4).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum QuotientRule {
    /// `b_i = min_i(J_1 \ I_i)`, agreeing with the deletion formula above.
    #[default]
    Corrected,
    /// `b_i = min_i(I_1 \ I_i)`, as usually stated. It wrongly rejects some
    /// pairs in which the deletion adds an element outside `I_1`, such as
    /// (bases {1}, bases {12}) on `[3]`.
    Printed,
}

/// Necklace test for `I` (rank `r`) and `J` (rank `r+1`) forming a
/// positively oriented quotient.
pub fn quotient_test_necklaces(i_neck: &GrassmannNecklace, j_neck: &GrassmannNecklace) -> Result<QuotientVerdict> {
    quotient_test_with(i_neck, j_neck, QuotientRule::Corrected)
}

pub fn quotient_test_with(
    i_neck: &GrassmannNecklace,
    j_neck: &GrassmannNecklace,
    rule: QuotientRule,
) -> Result<QuotientVerdict> {
    check_adjacent(i_neck, j_neck)?;
    let n = i_neck.n;
    let top = bit(n + 1);
    let ii = |i: usize| i_neck.at(i);
    let jj = |i: usize| j_neck.at(i);

    // (1) I_i ⊆ J_i
    if (1..=n).any(|i| ii(i) & !jj(i) != 0) {
        return Ok(QuotientVerdict::fail(1));
    }
    // (2) S = {i : I_i ∪ {n+1} <=_i J_i} is empty or [d, n]
    let s: Vec<bool> = (1..=n)
        .map(|i| gale_leq_bits(ii(i) | top, jj(i), i, n + 1))
        .collect();
    if let Some(first) = s.iter().position(|&x| x) {
        if !s[first..].iter().all(|&x| x) {
            return Ok(QuotientVerdict::fail(2));
        }
    }
    let i1 = ii(1);
    // (3) for i ∉ S: I_i = J_i \ {a_i}, a_i = max_i(J_i \ I_1)
    for i in (1..=n).filter(|&i| !s[i - 1]) {
        match shifted_max(jj(i) & !i1, i, n) {
            Some(a) if ii(i) == jj(i) & !bit(a) => {}
            _ => return Ok(QuotientVerdict::fail(3)),
        }
    }
    // (4) for i ∈ S: J_i = I_i ∪ {b_i}
    let source = match rule {
        QuotientRule::Corrected => jj(1),
        QuotientRule::Printed => i1,
    };
    for i in (1..=n).filter(|&i| s[i - 1]) {
        match shifted_min(source & !ii(i), i, n) {
            Some(b) if jj(i) == ii(i) | bit(b) => {}
            _ => return Ok(QuotientVerdict::fail(4)),
        }
    }
    Ok(QuotientVerdict::pass())
}

/// Quotient test on positroids given by their bases.
pub fn quotient_test(m1: &Matroid, m2: &Matroid) -> Result<QuotientVerdict> {
    if m1.n() != m2.n() {
        return Err(Error::SizeMismatch(m1.n(), m2.n()));
    }
    if m2.rank() != m1.rank() + 1 {
        return Err(Error::RanksNotConsecutive(vec![m1.rank(), m2.rank()]));
    }
    if !is_positroid(m1)? || !is_positroid(m2)? {
        return Err(Error::NotPositroid);
    }
    quotient_test_necklaces(&necklace_of(m1)?, &necklace_of(m2)?)
}

/// A sequence of positroids of consecutive ranks is a flag positroid iff
/// every adjacent pair passes the quotient test. Non-positroid constituents
/// make the answer false.
pub fn is_flag_positroid_consecutive(seq: &[Matroid]) -> Result<bool> {
    if seq.is_empty() {
        return Err(Error::Empty);
    }
    let ranks: Vec<usize> = seq.iter().map(|m| m.rank()).collect();
    if ranks.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(Error::RanksNotConsecutive(ranks));
    }
    let mut necks = Vec::with_capacity(seq.len());
    for m in seq {
        if !is_positroid(m)? {
            return Ok(false);
        }
        necks.push(necklace_of(m)?);
    }
    for w in necks.windows(2) {
        if !quotient_test_necklaces(&w[0], &w[1])?.quotient {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every Grassmann necklace of type `(d, n)`.
pub fn all_necklaces(n: usize, d: usize) -> Vec<GrassmannNecklace> {
    let mut out = Vec::new();
    if n == 0 || n > 63 || d > n {
        return out;
    }
    let mut seq = Vec::with_capacity(n);
    for first in k_subsets(n, d) {
        seq.clear();
        seq.push(first);
        extend(n, d, &mut seq, &mut out);
    }
    out.sort_by(|a, b| a.sets.cmp(&b.sets));
    out
}

fn extend(n: usize, d: usize, seq: &mut Vec<u64>, out: &mut Vec<GrassmannNecklace>) {
    let i = seq.len();
    let cur = seq[i - 1];
    if i == n {
        if step_ok(cur, seq[0], n) {
            out.push(GrassmannNecklace {
                n,
                d,
                sets: seq.clone(),
            });
        }
        return;
    }
    if cur & bit(i) == 0 {
        seq.push(cur);
        extend(n, d, seq, out);
        seq.pop();
    } else {
        let rest = cur & !bit(i);
        let mut free = full_mask(n) & !rest;
        while free != 0 {
            let j = free & free.wrapping_neg();
            free ^= j;
            seq.push(rest | j);
            extend(n, d, seq, out);
            seq.pop();
        }
    }
}

/// Every positroid of rank `d` on `[n]`, one per necklace.
pub fn all_positroids(n: usize, d: usize) -> Vec<Matroid> {
    all_necklaces(n, d).iter().map(positroid_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn neck(n: usize, d: usize, sets: &[&str]) -> GrassmannNecklace {
        let lists: Vec<Vec<usize>> = sets
            .iter()
            .map(|s| s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect())
            .collect();
        GrassmannNecklace::new(n, d, &lists).unwrap()
    }

    fn labels(g: &GrassmannNecklace) -> Vec<String> {
        g.sets.iter().map(|&s| crate::ground::mask_label(s)).collect()
    }

    fn m(n: usize, bases: &[&[usize]]) -> Matroid {
        Matroid::new(n, &bases.iter().map(|b| b.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn axiom_examples() {
        let one = |s: &[&[usize]], n| {
            s.iter()
                .map(|e| mask_from_elements(n, e).unwrap())
                .collect::<Vec<_>>()
        };
        assert!(is_grassmann_necklace(4, &one(&[&[1], &[2], &[4], &[4]], 4)));
        assert!(is_grassmann_necklace(
            5,
            &one(&[&[1, 2], &[2, 4], &[4, 5], &[4, 5], &[1, 5]], 5)
        ));
        assert!(!is_grassmann_necklace(4, &one(&[&[1, 2], &[3, 4], &[1, 2], &[1, 2]], 4)));
        assert!(GrassmannNecklace::new(4, 2, &[vec![1, 2], vec![3, 4], vec![1, 2], vec![1, 2]]).is_err());
    }

    #[test]
    fn necklace_of_examples() {
        assert_eq!(labels(&necklace_of(&m(4, &[&[1, 2], &[1, 4], &[2, 4]])).unwrap()), ["12", "24", "14", "14"]);
        assert_eq!(labels(&necklace_of(&m(4, &[&[1], &[2], &[4]])).unwrap()), ["1", "2", "4", "4"]);
        assert_eq!(labels(&necklace_of(&Matroid::uniform(2, 4).unwrap()).unwrap()), ["12", "23", "34", "14"]);
    }

    #[test]
    fn positroid_of_examples() {
        let p = positroid_of(&neck(4, 2, &["12", "24", "14", "14"]));
        assert_eq!(p.basis_lists(), vec![vec![1, 2], vec![1, 4], vec![2, 4]]);
        assert_eq!(positroid_of(&neck(4, 2, &["12", "23", "34", "14"])), Matroid::uniform(2, 4).unwrap());
        assert_eq!(positroid_of(&neck(4, 1, &["1", "2", "4", "4"])).basis_lists(), vec![vec![1], vec![2], vec![4]]);
    }

    #[test]
    fn is_positroid_examples() {
        assert!(is_positroid(&Matroid::uniform(2, 3).unwrap()).unwrap());
        assert!(is_positroid(&Matroid::uniform(3, 6).unwrap()).unwrap());
        // 1 ∥ 2 and 3 ∥ 4 is realized by columns e1, e1, e2, e2.
        let par = m(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]]);
        assert_eq!(labels(&necklace_of(&par).unwrap()), ["13", "23", "13", "14"]);
        assert!(is_positroid(&par).unwrap());
        // 1 ∥ 3 and 2 ∥ 4 is not: its necklace is that of U_{2,4}.
        let cross = m(4, &[&[1, 2], &[1, 4], &[2, 3], &[3, 4]]);
        assert_eq!(labels(&necklace_of(&cross).unwrap()), ["12", "23", "34", "14"]);
        assert_eq!(positroid_of(&necklace_of(&cross).unwrap()).bases().len(), 6);
        assert!(!is_positroid(&cross).unwrap());
    }

    #[test]
    fn constructions_roundtrip_example() {
        let low = neck(4, 1, &["1", "2", "4", "4"]);
        let high = neck(4, 2, &["12", "24", "14", "14"]);
        let j = pair_to_necklace(&low, &high).unwrap();
        assert_eq!(labels(&j), ["12", "24", "45", "45", "15"]);
        let (k1, k2) = delete_contract_necklaces(&j).unwrap();
        assert_eq!(k1, low);
        assert_eq!(k2, high);
        // Bases law of the combined positroid.
        let p = positroid_of(&j);
        let mut want: Vec<u64> = positroid_of(&high).bases().to_vec();
        want.extend(positroid_of(&low).bases().iter().map(|b| b | bit(5)));
        want.sort();
        assert_eq!(p.bases(), &want[..]);
    }

    #[test]
    fn trivial_degenerate_pair() {
        let low = GrassmannNecklace::from_masks(1, 0, vec![0]).unwrap();
        let high = GrassmannNecklace::from_masks(1, 1, vec![1]).unwrap();
        let j = pair_to_necklace(&low, &high).unwrap();
        assert_eq!(labels(&j), ["1", "2"]);
        assert!(is_grassmann_necklace(2, j.sets()));
    }

    #[test]
    fn uniform_delete_contract() {
        let j = necklace_of(&Matroid::uniform(2, 5).unwrap()).unwrap();
        let (k1, k2) = delete_contract_necklaces(&j).unwrap();
        assert_eq!(k1, necklace_of(&Matroid::uniform(1, 4).unwrap()).unwrap());
        assert_eq!(k2, necklace_of(&Matroid::uniform(2, 4).unwrap()).unwrap());
    }

    #[test]
    fn deletion_uses_first_set() {
        // M = {12, 14} on [4]: 4 is neither loop nor coloop and J_3 = J_4 = 14,
        // so J_4 \ J_3 is empty while J_1 \ J_3 = {2} gives the right deletion.
        let j = necklace_of(&m(4, &[&[1, 2], &[1, 4]])).unwrap();
        assert_eq!(labels(&j), ["12", "12", "14", "14"]);
        let (k1, k2) = delete_contract_necklaces(&j).unwrap();
        assert_eq!(labels(&k1), ["1", "1", "1"]);
        assert_eq!(labels(&k2), ["12", "12", "12"]);
        let v = quotient_test_necklaces(&k1, &k2).unwrap();
        assert!(v.quotient);
        let printed = quotient_test_with(&k1, &k2, QuotientRule::Printed).unwrap();
        assert_eq!(printed.failed_condition, Some(4));
    }

    #[test]
    fn worked_quotient_examples() {
        let j = neck(6, 4, &["1235", "2356", "3456", "4562", "5612", "6123"]);
        let bad = neck(6, 3, &["123", "235", "356", "456", "561", "613"]);
        let good = neck(6, 3, &["123", "235", "345", "456", "561", "613"]);
        assert_eq!(
            quotient_test_necklaces(&bad, &j).unwrap(),
            QuotientVerdict {
                quotient: false,
                failed_condition: Some(3)
            }
        );
        // With J_4 = 2456 the second pair is not a quotient either: J_4 must
        // equal I_4 ∪ {1}. Replacing J_4 by 1456 makes it pass.
        assert_eq!(quotient_test_necklaces(&good, &j).unwrap().failed_condition, Some(4));
        let j_fixed = neck(6, 4, &["1235", "2356", "3456", "4561", "5612", "6123"]);
        assert!(quotient_test_necklaces(&good, &j_fixed).unwrap().quotient);
        assert!(quotient_test_with(&good, &j_fixed, QuotientRule::Printed).unwrap().quotient);
        assert_eq!(quotient_test_necklaces(&bad, &j_fixed).unwrap().failed_condition, Some(3));

        let v = quotient_test(&m(3, &[&[1], &[3]]), &Matroid::uniform(2, 3).unwrap()).unwrap();
        assert!(!v.quotient);
        assert!(quotient_test(&Matroid::uniform(1, 3).unwrap(), &Matroid::uniform(3, 3).unwrap()).is_err());
    }

    #[test]
    fn flag_positroid_examples() {
        let seq = vec![m(3, &[&[1], &[3]]), m(3, &[&[1, 3]]), m(3, &[&[1, 2, 3]])];
        assert!(is_flag_positroid_consecutive(&seq).unwrap());
        let ex = vec![
            m(4, &[&[1], &[2], &[4]]),
            m(4, &[&[1, 2], &[1, 4], &[2, 4]]),
            m(4, &[&[1, 2, 4]]),
            m(4, &[&[1, 2, 3, 4]]),
        ];
        assert!(is_flag_positroid_consecutive(&ex).unwrap());
        assert!(!is_flag_positroid_consecutive(&[m(3, &[&[1], &[3]]), Matroid::uniform(2, 3).unwrap()]).unwrap());
        assert!(is_flag_positroid_consecutive(&[ex[0].clone(), ex[2].clone()]).is_err());
    }

    #[test]
    fn necklace_counts() {
        // Positroids on [n] are counted by decorated permutations: sum n!/k!.
        for (n, total) in [(1, 2), (2, 5), (3, 16), (4, 65), (5, 326)] {
            let got: usize = (0..=n).map(|d| all_necklaces(n, d).len()).sum();
            assert_eq!(got, total, "n = {n}");
        }
    }
}
