//! Bruhat intervals, their polytopes and flag matroids, and envelopes.

use std::fmt;

use crate::error::{Error, Result};
use crate::ground::{bruhat_interval, bruhat_leq, gale_max_bits, gale_min_bits, Permutation};
use crate::matroid::{FlagMatroid, Matroid};
use crate::necklace::{is_flag_positroid_consecutive, GrassmannNecklace};
use crate::polytope::{int_point, Point};

/// An interval `[u, v]` with `u ≤ v` in Bruhat order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BruhatInterval {
    u: Permutation,
    v: Permutation,
}

impl BruhatInterval {
    pub fn new(u: Permutation, v: Permutation) -> Result<Self> {
        if !bruhat_leq(&u, &v)? {
            return Err(Error::NotBruhatLeq {
                u: u.images().to_vec(),
                v: v.images().to_vec(),
            });
        }
        Ok(BruhatInterval { u, v })
    }

    pub fn parse(u: &str, v: &str) -> Result<Self> {
        BruhatInterval::new(Permutation::parse(u)?, Permutation::parse(v)?)
    }

    pub fn u(&self) -> &Permutation {
        &self.u
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    pub fn n(&self) -> usize {
        self.u.n()
    }

    /// All `z` with `u ≤ z ≤ v`, sorted.
    pub fn elements(&self) -> Vec<Permutation> {
        bruhat_interval(&self.u, &self.v).expect("validated interval")
    }

    /// `ℓ(v) − ℓ(u)`, the dimension of the interval polytope.
    pub fn length_difference(&self) -> usize {
        self.v.length() - self.u.length()
    }
}

impl fmt::Display for BruhatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.u, self.v)
    }
}

/// `{(z(1), ..., z(n)) : u ≤ z ≤ v}`.
pub fn bip_vertices(u: &Permutation, v: &Permutation) -> Result<Vec<Point>> {
    let iv = BruhatInterval::new(u.clone(), v.clone())?;
    Ok(iv
        .elements()
        .iter()
        .map(|z| int_point(&z.images().iter().map(|&x| x as i64).collect::<Vec<_>>()))
        .collect())
}

/// `(n+1−z⁻¹(1), ..., n+1−z⁻¹(n))`, the point `e_{z([1])} + ... + e_{z([n])}`.
pub fn twisted_point(z: &Permutation) -> Point {
    let n = z.n() as i64;
    let inv = z.inverse();
    int_point(&inv.images().iter().map(|&x| n + 1 - x as i64).collect::<Vec<_>>())
}

/// Twisted vectors of all `z` in `[u, v]`.
pub fn twisted_bip_vertices(u: &Permutation, v: &Permutation) -> Result<Vec<Point>> {
    let iv = BruhatInterval::new(u.clone(), v.clone())?;
    Ok(iv.elements().iter().map(twisted_point).collect())
}

/// The complete flag matroid with flags `z([1]) ⊂ ... ⊂ z([n])`, `u ≤ z ≤ v`.
pub fn interval_flag_matroid(u: &Permutation, v: &Permutation) -> Result<FlagMatroid> {
    let iv = BruhatInterval::new(u.clone(), v.clone())?;
    let elems = iv.elements();
    let n = iv.n();
    let seq = (1..=n)
        .map(|d| {
            let mut bases: Vec<u64> = elems.iter().map(|z| z.prefix_mask(d)).collect();
            bases.sort_unstable();
            bases.dedup();
            Matroid::from_masks_unchecked(n, crate::ground::full_mask(n), bases)
        })
        .collect::<Result<Vec<_>>>()?;
    FlagMatroid::new(seq)
}

/// The permutation of the interval whose flag is `≤_j`-Gale-minimal in
/// every rank, assembled rank by rank and checked to lie in the interval.
pub fn gale_minimal_permutation(iv: &BruhatInterval, j: usize) -> Result<Permutation> {
    let elems = iv.elements();
    let n = iv.n();
    let flag = (1..=n)
        .map(|d| {
            let sets: Vec<u64> = elems.iter().map(|z| z.prefix_mask(d)).collect();
            gale_min_bits(&sets, j, n)
        })
        .collect::<Result<Vec<_>>>()?;
    let z = Permutation::from_flag_masks(&flag)?;
    if !elems.contains(&z) {
        return Err(Error::Invalid(format!(
            "reassembled {j}-Gale-minimal flag {z} is not in {iv}"
        )));
    }
    Ok(z)
}

/// For each rank `d = 1..n`, the necklace `(z⁽¹⁾([d]), ..., z⁽ⁿ⁾([d]))`.
pub fn constituent_necklaces(u: &Permutation, v: &Permutation) -> Result<Vec<GrassmannNecklace>> {
    let iv = BruhatInterval::new(u.clone(), v.clone())?;
    let n = iv.n();
    let zs = (1..=n)
        .map(|j| gale_minimal_permutation(&iv, j))
        .collect::<Result<Vec<_>>>()?;
    (1..=n)
        .map(|d| GrassmannNecklace::from_masks(n, d, zs.iter().map(|z| z.prefix_mask(d)).collect()))
        .collect()
}

/// The permutations of a complete flag matroid's flags, sorted.
pub fn flag_permutations(fm: &FlagMatroid) -> Result<Vec<Permutation>> {
    if !fm.is_complete() {
        return Err(Error::NotComplete);
    }
    let mut perms = fm
        .flags()
        .iter()
        .map(|f| Permutation::from_flag_masks(f))
        .collect::<Result<Vec<_>>>()?;
    perms.sort();
    Ok(perms)
}

fn bruhat_extremes(perms: &[Permutation]) -> Result<BruhatInterval> {
    let min = perms
        .iter()
        .find(|p| perms.iter().all(|q| bruhat_leq(p, q).unwrap_or(false)))
        .ok_or_else(|| Error::Invalid("no Bruhat-minimal element".into()))?;
    let max = perms
        .iter()
        .find(|p| perms.iter().all(|q| bruhat_leq(q, p).unwrap_or(false)))
        .ok_or_else(|| Error::Invalid("no Bruhat-maximal element".into()))?;
    BruhatInterval::new(min.clone(), max.clone())
}

/// The Bruhat interval envelope: Bruhat-min and Bruhat-max flag permutations.
pub fn envelope(fm: &FlagMatroid) -> Result<BruhatInterval> {
    bruhat_extremes(&flag_permutations(fm)?)
}

/// The flag matroid equals the interval flag matroid of its envelope.
pub fn is_interval(fm: &FlagMatroid) -> Result<bool> {
    let env = envelope(fm)?;
    Ok(interval_flag_matroid(env.u(), env.v())? == *fm)
}

/// `u(i) = B_i^min ∖ B_{i−1}^min`, `v(i) = B_i^max ∖ B_{i−1}^max` from the
/// Gale-extreme bases of a complete flag positroid.
pub fn uv_from_flag_positroid(seq: &[Matroid]) -> Result<BruhatInterval> {
    let n = seq.first().ok_or(Error::Empty)?.n();
    let ranks: Vec<usize> = seq.iter().map(|m| m.rank()).collect();
    if ranks != (1..=n).collect::<Vec<_>>() {
        return Err(Error::NotComplete);
    }
    if !is_flag_positroid_consecutive(seq)? {
        return Err(Error::NotPositroid);
    }
    let mins = seq.iter().map(|m| gale_min_bits(m.bases(), 1, n)).collect::<Result<Vec<_>>>()?;
    let maxs = seq.iter().map(|m| gale_max_bits(m.bases(), 1, n)).collect::<Result<Vec<_>>>()?;
    BruhatInterval::new(Permutation::from_flag_masks(&mins)?, Permutation::from_flag_masks(&maxs)?)
}

/// How a cell of a permutohedron subdivision is named as an interval.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LabelConvention {
    /// The cell is `P̃_{u,v}`: `[u, v]` is the envelope of its flag permutations `z`.
    Twisted,
    /// The cell is `P_{u,v}` on the nose: `[u, v]` spans the permutations
    /// `x` with `x(i) = n+1−z⁻¹(i)` read off its vertices.
    Untwisted,
    /// The cell is `P_{u,v}` after the reflection `x ↦ n+1−x`: `[u, v]`
    /// spans the inverses `z⁻¹`.
    Reflected,
}

impl LabelConvention {
    pub const ALL: [LabelConvention; 3] =
        [LabelConvention::Twisted, LabelConvention::Untwisted, LabelConvention::Reflected];

    pub fn name(self) -> &'static str {
        match self {
            LabelConvention::Twisted => "twisted",
            LabelConvention::Untwisted => "untwisted",
            LabelConvention::Reflected => "reflected",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        LabelConvention::ALL.into_iter().find(|c| c.name() == s)
    }

    fn apply(self, z: &Permutation) -> Permutation {
        match self {
            LabelConvention::Twisted => z.clone(),
            LabelConvention::Untwisted => Permutation::longest(z.n())
                .compose(&z.inverse())
                .expect("same size"),
            LabelConvention::Reflected => z.inverse(),
        }
    }
}

/// The interval naming a set of flag permutations under a convention, or
/// `None` if the transformed set is not a Bruhat interval.
pub fn interval_label(perms: &[Permutation], conv: LabelConvention) -> Option<BruhatInterval> {
    let mut xs: Vec<Permutation> = perms.iter().map(|z| conv.apply(z)).collect();
    xs.sort();
    let iv = bruhat_extremes(&xs).ok()?;
    (iv.elements() == xs).then_some(iv)
}
