//! Subsets of `[n]` with shifted and Gale orders, and permutations with Bruhat order.
//!
//! Subsets are stored as bit masks (element `x` is bit `x - 1`); public
//! constructors and accessors speak in sorted 1-based element lists.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest supported ground-set size. One spare bit is kept so that the
/// extension `[n+1]` used by the necklace constructions still fits.
pub const MAX_N: usize = 63;

pub fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        Err(Error::GroundTooLarge(n))
    } else {
        Ok(())
    }
}

/// Mask with the bits of all elements of `[n]` set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn bit(x: usize) -> u64 {
    1u64 << (x - 1)
}

/// Sorted 1-based elements of a mask.
pub fn mask_elements(mut bits: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(bits.count_ones() as usize);
    while bits != 0 {
        out.push(bits.trailing_zeros() as usize + 1);
        bits &= bits - 1;
    }
    out
}

pub fn mask_from_elements(n: usize, elems: &[usize]) -> Result<u64> {
    check_n(n)?;
    let mut bits = 0u64;
    for &x in elems {
        if x == 0 || x > n {
            return Err(Error::ElementOutOfRange { elem: x, n });
        }
        bits |= bit(x);
    }
    Ok(bits)
}

/// Compact string form used in messages and JSON keys: `{1,3}` becomes `"13"`
/// when all elements are single digits, `"1,3"` style otherwise.
pub fn mask_label(bits: u64) -> String {
    let e = mask_elements(bits);
    if e.iter().all(|&x| x < 10) {
        e.iter().map(|x| x.to_string()).collect()
    } else {
        e.iter().join(",")
    }
}

/// Iterator over all `k`-subsets of `[n]` in colexicographic order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = full_mask(n);
    let mut cur = if k > n {
        None
    } else if k == 0 {
        Some(0u64)
    } else {
        Some(full_mask(k))
    };
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == 0 {
            None
        } else {
            let c = out & out.wrapping_neg();
            let r = out.wrapping_add(c);
            if r == 0 || r > limit {
                None
            } else {
                let next = (((r ^ out) >> 2) / c) | r;
                if next > limit {
                    None
                } else {
                    Some(next)
                }
            }
        };
        Some(out)
    })
}

/// A subset of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    n: usize,
    bits: u64,
}

impl Subset {
    pub fn new(n: usize, elems: &[usize]) -> Result<Self> {
        Ok(Subset {
            n,
            bits: mask_from_elements(n, elems)?,
        })
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_n(n)?;
        if bits & !full_mask(n) != 0 {
            let elem = 64 - bits.leading_zeros() as usize;
            return Err(Error::ElementOutOfRange { elem, n });
        }
        Ok(Subset { n, bits })
    }

    pub fn empty(n: usize) -> Self {
        Subset { n, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        Subset {
            n,
            bits: full_mask(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        x >= 1 && x <= self.n && self.bits & bit(x) != 0
    }

    pub fn elements(&self) -> Vec<usize> {
        mask_elements(self.bits)
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn complement(&self) -> Subset {
        Subset {
            n: self.n,
            bits: full_mask(self.n) & !self.bits,
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements().iter().join(","))
    }
}

/// A total order `i <_i i+1 <_i ... <_i n <_i 1 <_i ... <_i i-1` on `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftedOrder {
    pub n: usize,
    pub pivot: usize,
}

impl ShiftedOrder {
    pub fn new(n: usize, pivot: usize) -> Result<Self> {
        check_n(n)?;
        if pivot == 0 || pivot > n {
            return Err(Error::ElementOutOfRange { elem: pivot, n });
        }
        Ok(ShiftedOrder { n, pivot })
    }

    /// Position of `x` in the order, starting from 0.
    #[inline]
    pub fn key(&self, x: usize) -> usize {
        shifted_key(x, self.pivot, self.n)
    }
}

#[inline]
pub fn shifted_key(x: usize, i: usize, n: usize) -> usize {
    (x + n - i) % n
}

#[inline]
fn shifted_element(key: usize, i: usize, n: usize) -> usize {
    (key + i - 1) % n + 1
}

pub fn shifted_cmp(a: usize, b: usize, order: ShiftedOrder) -> Result<Ordering> {
    for x in [a, b] {
        if x == 0 || x > order.n {
            return Err(Error::ElementOutOfRange { elem: x, n: order.n });
        }
    }
    Ok(order.key(a).cmp(&order.key(b)))
}

/// Re-index a mask so that bit `k` holds the element at position `k` of `<_i`.
#[inline]
pub fn rotate_mask(bits: u64, i: usize, n: usize) -> u64 {
    let s = i - 1;
    if s == 0 {
        bits
    } else {
        ((bits >> s) | (bits << (n - s))) & full_mask(n)
    }
}

/// `<_i`-minimal element of a nonempty mask.
pub fn shifted_min(bits: u64, i: usize, n: usize) -> Option<usize> {
    let r = rotate_mask(bits, i, n);
    (r != 0).then(|| shifted_element(r.trailing_zeros() as usize, i, n))
}

/// `<_i`-maximal element of a nonempty mask.
pub fn shifted_max(bits: u64, i: usize, n: usize) -> Option<usize> {
    let r = rotate_mask(bits, i, n);
    (r != 0).then(|| shifted_element(63 - r.leading_zeros() as usize, i, n))
}

/// Gale comparison on raw masks of equal cardinality: `a <=_i b` iff every
/// initial segment of `<_i` contains at least as many elements of `a` as of `b`.
#[inline]
pub fn gale_leq_bits(a: u64, b: u64, i: usize, n: usize) -> bool {
    let ra = rotate_mask(a, i, n);
    let rb = rotate_mask(b, i, n);
    let mut diff: i32 = 0;
    let mut rest = ra | rb;
    while rest != 0 {
        let t = rest & rest.wrapping_neg();
        if ra & t != 0 {
            diff += 1;
        }
        if rb & t != 0 {
            diff -= 1;
            if diff < 0 {
                return false;
            }
        }
        rest ^= t;
    }
    true
}

/// Lexicographic comparison of the `<_i`-sorted element lists.
#[inline]
fn shifted_lex_less(a: u64, b: u64, i: usize, n: usize) -> bool {
    let ra = rotate_mask(a, i, n);
    let rb = rotate_mask(b, i, n);
    let d = ra ^ rb;
    d != 0 && ra & (d & d.wrapping_neg()) != 0
}

pub fn gale_leq(a: &Subset, b: &Subset, i: usize) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::SizeMismatch(a.n, b.n));
    }
    if a.len() != b.len() {
        return Err(Error::CardinalityMismatch(a.len(), b.len()));
    }
    ShiftedOrder::new(a.n, i)?;
    Ok(gale_leq_bits(a.bits, b.bits, i, a.n))
}

/// The `<=_i`-minimum of an equicardinal collection of masks.
pub fn gale_min_bits(coll: &[u64], i: usize, n: usize) -> Result<u64> {
    let (&first, rest) = coll.split_first().ok_or(Error::Empty)?;
    let k = first.count_ones();
    let mut cand = first;
    for &b in rest {
        if b.count_ones() != k {
            return Err(Error::CardinalityMismatch(k as usize, b.count_ones() as usize));
        }
        if shifted_lex_less(b, cand, i, n) {
            cand = b;
        }
    }
    // The lexicographic minimum is the only possible Gale minimum.
    if coll.iter().all(|&b| gale_leq_bits(cand, b, i, n)) {
        Ok(cand)
    } else {
        Err(Error::NoUniqueMinimum { pivot: i })
    }
}

/// The `<=_i`-maximum of an equicardinal collection of masks.
pub fn gale_max_bits(coll: &[u64], i: usize, n: usize) -> Result<u64> {
    let (&first, _) = coll.split_first().ok_or(Error::Empty)?;
    let mut cand = first;
    for &b in coll {
        if shifted_lex_less(cand, b, i, n) {
            cand = b;
        }
    }
    if coll.iter().all(|&b| gale_leq_bits(b, cand, i, n)) {
        Ok(cand)
    } else {
        Err(Error::NoUniqueMinimum { pivot: i })
    }
}

pub fn gale_min(coll: &[Subset], i: usize) -> Result<Subset> {
    let first = coll.first().ok_or(Error::Empty)?;
    let n = first.n;
    ShiftedOrder::new(n, i)?;
    if let Some(s) = coll.iter().find(|s| s.n != n) {
        return Err(Error::SizeMismatch(n, s.n));
    }
    let bits: Vec<u64> = coll.iter().map(|s| s.bits).collect();
    Ok(Subset {
        n,
        bits: gale_min_bits(&bits, i, n)?,
    })
}

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::NotPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Parse compact one-line notation such as `"1243"` (single digits only).
    pub fn parse(s: &str) -> Result<Self> {
        let images = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Invalid(format!("bad permutation {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The longest element `w0 = n ... 2 1`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        (1..=n)
            .permutations(n)
            .map(|images| Permutation { images })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `z(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x - 1]).collect(),
        })
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let z = &self.images;
        (0..z.len())
            .map(|i| (i + 1..z.len()).filter(|&j| z[i] > z[j]).count())
            .sum()
    }

    /// Mask of `z([d]) = {z(1), ..., z(d)}`.
    pub fn prefix_mask(&self, d: usize) -> u64 {
        self.images[..d].iter().fold(0, |m, &x| m | bit(x))
    }

    /// The complete flag `z([1]) ⊂ z([2]) ⊂ ... ⊂ z([n])` as masks.
    pub fn flag_masks(&self) -> Vec<u64> {
        (1..=self.n()).map(|d| self.prefix_mask(d)).collect()
    }

    /// Inverse of [`Permutation::flag_masks`]: reads `z(d) = B_d \ B_{d-1}`.
    pub fn from_flag_masks(flag: &[u64]) -> Result<Permutation> {
        let mut images = Vec::with_capacity(flag.len());
        let mut prev = 0u64;
        for &b in flag {
            let new = b & !prev;
            if prev & !b != 0 || new.count_ones() != 1 {
                return Err(Error::NotComplete);
            }
            images.push(new.trailing_zeros() as usize + 1);
            prev = b;
        }
        Permutation::new(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.images.iter().all(|&x| x < 10) {
            write!(f, "{}", self.images.iter().join(""))
        } else {
            write!(f, "{}", self.images.iter().join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Bruhat order by the tableau criterion: for every `d`, the sorted prefix
/// `u([d])` is componentwise at most the sorted prefix `v([d])`.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> Result<bool> {
    if u.n() != v.n() {
        return Err(Error::SizeMismatch(u.n(), v.n()));
    }
    let n = u.n();
    Ok((1..n).all(|d| gale_leq_bits(u.prefix_mask(d), v.prefix_mask(d), 1, n)))
}

/// All `z` with `u <= z <= v`, sorted lexicographically.
pub fn bruhat_interval(u: &Permutation, v: &Permutation) -> Result<Vec<Permutation>> {
    if !bruhat_leq(u, v)? {
        return Err(Error::NotBruhatLeq {
            u: u.images.clone(),
            v: v.images.clone(),
        });
    }
    let n = u.n();
    let (lo, hi): (Vec<u64>, Vec<u64>) = (1..n).map(|d| (u.prefix_mask(d), v.prefix_mask(d))).unzip();
    Ok(Permutation::all(n)
        .into_iter()
        .filter(|z| {
            (1..n).all(|d| {
                let m = z.prefix_mask(d);
                gale_leq_bits(lo[d - 1], m, 1, n) && gale_leq_bits(m, hi[d - 1], 1, n)
            })
        })
        .collect())
}
