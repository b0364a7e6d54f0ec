//! Valuated Plücker vectors over the tropical semifield `(ℚ ∪ {∞}, min, +)`,
//! three-term relations, and membership in the nonnegative flag Dressian.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::ground::{bit, check_n, full_mask, k_subsets, mask_elements};
use crate::matroid::{is_flag_matroid, Matroid};

/// An element of `ℚ ∪ {∞}`; `Fin` values are ordered below `Inf`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TropVal {
    Fin(BigRational),
    Inf,
}

impl TropVal {
    pub fn zero() -> Self {
        TropVal::Fin(BigRational::zero())
    }

    pub fn int(x: i64) -> Self {
        TropVal::Fin(BigRational::from_integer(BigInt::from(x)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        TropVal::Fin(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropVal::Fin(_))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            TropVal::Fin(x) => Some(x),
            TropVal::Inf => None,
        }
    }
}

impl PartialOrd for TropVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropVal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropVal::Fin(a), TropVal::Fin(b)) => a.cmp(b),
            (TropVal::Fin(_), TropVal::Inf) => Ordering::Less,
            (TropVal::Inf, TropVal::Fin(_)) => Ordering::Greater,
            (TropVal::Inf, TropVal::Inf) => Ordering::Equal,
        }
    }
}

/// Tropical multiplication (ordinary addition, absorbing `∞`).
impl Add for &TropVal {
    type Output = TropVal;
    fn add(self, rhs: &TropVal) -> TropVal {
        match (self, rhs) {
            (TropVal::Fin(a), TropVal::Fin(b)) => TropVal::Fin(a + b),
            _ => TropVal::Inf,
        }
    }
}

impl fmt::Display for TropVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropVal::Inf => write!(f, "inf"),
            TropVal::Fin(x) if x.is_integer() => write!(f, "{}", x.numer()),
            TropVal::Fin(x) => write!(f, "{}/{}", x.numer(), x.denom()),
        }
    }
}

impl FromStr for TropVal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(TropVal::Inf);
        }
        let bad = || Error::ParseValue(s.to_string());
        let parse_int = |x: &str| x.trim().parse::<BigInt>().map_err(|_| bad());
        match t.split_once('/') {
            Some((p, q)) => {
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(TropVal::Fin(BigRational::new(parse_int(p)?, q)))
            }
            None => Ok(TropVal::Fin(BigRational::from_integer(parse_int(t)?))),
        }
    }
}

/// All `r`-subsets of `[n]` in lexicographic order of their sorted element lists
/// (`12, 13, 14, 23, 24, 34` for `r = 2, n = 4`).
pub fn lex_subsets(n: usize, r: usize) -> Vec<u64> {
    let mut v: Vec<u64> = k_subsets(n, r).collect();
    v.sort_by_key(|&b| mask_elements(b));
    v
}

/// A point of `𝕋^{C([n], r)}`, stored by its finite coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TropPluckerVector {
    n: usize,
    r: usize,
    coords: BTreeMap<u64, BigRational>,
}

impl TropPluckerVector {
    pub fn new(n: usize, r: usize, coords: BTreeMap<u64, TropVal>) -> Result<Self> {
        check_n(n)?;
        if r > n {
            return Err(Error::InvalidRank { rank: r, n });
        }
        let mut finite = BTreeMap::new();
        for (k, v) in coords {
            if k & !full_mask(n) != 0 || k.count_ones() as usize != r {
                return Err(Error::CardinalityMismatch(r, k.count_ones() as usize));
            }
            if let TropVal::Fin(x) = v {
                finite.insert(k, x);
            }
        }
        if finite.is_empty() {
            return Err(Error::AllInfinite);
        }
        Ok(TropPluckerVector { n, r, coords: finite })
    }

    /// Values listed in [`lex_subsets`] order.
    pub fn from_values(n: usize, r: usize, values: &[TropVal]) -> Result<Self> {
        let keys = lex_subsets(n, r);
        if keys.len() != values.len() {
            return Err(Error::SizeMismatch(keys.len(), values.len()));
        }
        TropPluckerVector::new(n, r, keys.into_iter().zip(values.iter().cloned()).collect())
    }

    /// The `0/∞` indicator vector of a matroid on `[n]`.
    pub fn indicator(m: &Matroid) -> Self {
        TropPluckerVector {
            n: m.n(),
            r: m.rank(),
            coords: m.bases().iter().map(|&b| (b, BigRational::zero())).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, s: u64) -> TropVal {
        self.coords
            .get(&s)
            .map_or(TropVal::Inf, |x| TropVal::Fin(x.clone()))
    }

    pub fn get_ref(&self, s: u64) -> Option<&BigRational> {
        self.coords.get(&s)
    }

    pub fn finite_coords(&self) -> &BTreeMap<u64, BigRational> {
        &self.coords
    }

    /// Values in [`lex_subsets`] order.
    pub fn values(&self) -> Vec<TropVal> {
        lex_subsets(self.n, self.r).into_iter().map(|s| self.get(s)).collect()
    }

    /// `{S : μ(S) ≠ ∞}`, sorted.
    pub fn support(&self) -> Vec<u64> {
        self.coords.keys().copied().collect()
    }

    pub fn support_matroid(&self) -> Result<Matroid> {
        Matroid::from_masks(self.n, full_mask(self.n), self.support())
    }

    pub fn min_value(&self) -> &BigRational {
        self.coords.values().min().expect("vector has a finite coordinate")
    }

    /// Shifted so that the minimum finite coordinate is 0.
    pub fn normalized(&self) -> TropPluckerVector {
        let m = self.min_value().clone();
        TropPluckerVector {
            n: self.n,
            r: self.r,
            coords: self.coords.iter().map(|(&k, v)| (k, v - &m)).collect(),
        }
    }

    /// Equality in tropical projective space.
    pub fn projectively_eq(&self, other: &TropPluckerVector) -> bool {
        self.n == other.n && self.r == other.r && self.normalized() == other.normalized()
    }

    /// `w^⊥(I) = w([n] \ I)`.
    pub fn dual(&self) -> TropPluckerVector {
        let full = full_mask(self.n);
        TropPluckerVector {
            n: self.n,
            r: self.n - self.r,
            coords: self.coords.iter().map(|(&k, v)| (full & !k, v.clone())).collect(),
        }
    }

    /// `0` on coordinates achieving the minimum, `∞` elsewhere.
    pub fn initial_part(&self) -> TropPluckerVector {
        let m = self.min_value();
        TropPluckerVector {
            n: self.n,
            r: self.r,
            coords: self
                .coords
                .iter()
                .filter(|(_, v)| *v == m)
                .map(|(&k, _)| (k, BigRational::zero()))
                .collect(),
        }
    }

    /// `(φw)(S) = φ(e_S) + w(S)` with `φ(x) = c₀ + Σ cᵢ xᵢ`.
    pub fn affine_shift(&self, c0: &BigRational, c: &[BigRational]) -> Result<TropPluckerVector> {
        if c.len() != self.n {
            return Err(Error::SizeMismatch(self.n, c.len()));
        }
        let coords = self
            .coords
            .iter()
            .map(|(&k, v)| {
                let phi = mask_elements(k).iter().fold(c0.clone(), |acc, &i| acc + &c[i - 1]);
                (k, phi + v)
            })
            .collect();
        Ok(TropPluckerVector {
            n: self.n,
            r: self.r,
            coords,
        })
    }

    /// The valuated minor on `keep \ contract`, relabeled onto `[k]`.
    ///
    /// `contract` must be independent in the support. Elements outside
    /// `keep` are removed by fixing the first basis `T` (in colex order) of
    /// `support / keep` and reading `S ↦ μ(S ∪ contract ∪ T)`; when the
    /// removed set is coindependent, `T = ∅`.
    pub fn valuated_minor(&self, keep: u64, contract: u64) -> Result<TropPluckerVector> {
        let full = full_mask(self.n);
        if keep & !full != 0 || contract & !keep != 0 {
            return Err(Error::InvalidMinor("need contract ⊆ keep ⊆ [n]".into()));
        }
        let m = self.support_matroid()?;
        if m.rank_of(contract) != contract.count_ones() as usize {
            return Err(Error::InvalidMinor("contracted set is dependent".into()));
        }
        let removed = full & !keep;
        let t = if removed == 0 {
            0
        } else {
            let outer = m.contract(keep)?;
            outer.bases()[0]
        };
        let rest = keep & !contract;
        let elems = mask_elements(rest);
        let k = elems.len();
        let r = m.rank_of(keep) - contract.count_ones() as usize;
        let relabel = |s: u64| -> u64 {
            elems
                .iter()
                .enumerate()
                .filter(|(_, &x)| s & bit(x) != 0)
                .fold(0, |acc, (i, _)| acc | bit(i + 1))
        };
        let coords: BTreeMap<u64, BigRational> = self
            .coords
            .iter()
            .filter(|(&b, _)| b & contract == contract && b & removed == t)
            .map(|(&b, v)| (relabel(b & rest), v.clone()))
            .collect();
        if coords.is_empty() {
            return Err(Error::AllInfinite);
        }
        Ok(TropPluckerVector { n: k, r, coords })
    }
}

/// The vector on `[n+1]` of rank `r+1` with `μ̃(S) = μ₁(S \ {n+1})` when
/// `n+1 ∈ S` and `μ̃(S) = μ₂(S)` otherwise.
pub fn mu_tilde(mu1: &TropPluckerVector, mu2: &TropPluckerVector) -> Result<TropPluckerVector> {
    if mu1.n != mu2.n {
        return Err(Error::SizeMismatch(mu1.n, mu2.n));
    }
    if mu2.r != mu1.r + 1 {
        return Err(Error::RanksNotConsecutive(vec![mu1.r, mu2.r]));
    }
    check_n(mu1.n + 1)?;
    let top = bit(mu1.n + 1);
    let mut coords = mu2.coords.clone();
    coords.extend(mu1.coords.iter().map(|(&k, v)| (k | top, v.clone())));
    Ok(TropPluckerVector {
        n: mu1.n + 1,
        r: mu2.r,
        coords,
    })
}

/// A sequence `(μ_{r₁}, ..., μ_{r_k})` with strictly increasing ranks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlagTropVector {
    constituents: Vec<TropPluckerVector>,
}

impl FlagTropVector {
    pub fn new(constituents: Vec<TropPluckerVector>) -> Result<Self> {
        if constituents.is_empty() {
            return Err(Error::Empty);
        }
        let ranks: Vec<usize> = constituents.iter().map(|m| m.r).collect();
        if ranks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::RanksNotIncreasing(ranks));
        }
        if let Some(w) = constituents.windows(2).find(|w| w[0].n != w[1].n) {
            return Err(Error::SizeMismatch(w[0].n, w[1].n));
        }
        Ok(FlagTropVector { constituents })
    }

    pub fn indicator(seq: &[Matroid]) -> Result<Self> {
        FlagTropVector::new(seq.iter().map(TropPluckerVector::indicator).collect())
    }

    pub fn constituents(&self) -> &[TropPluckerVector] {
        &self.constituents
    }

    pub fn n(&self) -> usize {
        self.constituents[0].n
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.constituents.iter().map(|m| m.r).collect()
    }

    pub fn is_consecutive(&self) -> bool {
        self.ranks().windows(2).all(|w| w[1] == w[0] + 1)
    }

    /// Supports as matroids; `None` if some support violates basis exchange.
    pub fn support(&self) -> Option<Vec<Matroid>> {
        self.constituents.iter().map(|m| m.support_matroid().ok()).collect()
    }

    pub fn initial_part(&self) -> FlagTropVector {
        FlagTropVector {
            constituents: self.constituents.iter().map(|m| m.initial_part()).collect(),
        }
    }

    pub fn affine_shift(&self, c0: &BigRational, c: &[BigRational]) -> Result<FlagTropVector> {
        Ok(FlagTropVector {
            constituents: self
                .constituents
                .iter()
                .map(|m| m.affine_shift(c0, c))
                .collect::<Result<_>>()?,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RelationKind {
    /// `x_{Sij}x_{Skl} − x_{Sik}x_{Sjl} + x_{Sil}x_{Sjk}` on one rank.
    GrassmannPlucker,
    /// `x_{Si}x_{Sjk} − x_{Sj}x_{Sik} + x_{Sk}x_{Sij}` across ranks `r, r+1`.
    Incidence,
}

/// Three monomials with signs `(+, −, +)`; each monomial is a pair of
/// subsets, the first read from the lower-rank vector for incidence relations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ThreeTermRelation {
    pub kind: RelationKind,
    /// Rank of the first factor of each monomial.
    pub rank: usize,
    pub s: u64,
    pub tail: Vec<usize>,
    pub terms: [(u64, u64); 3],
}

impl ThreeTermRelation {
    /// Tropical values of the three monomials.
    pub fn evaluate(&self, low: &TropPluckerVector, high: &TropPluckerVector) -> [TropVal; 3] {
        let term = |(a, b): (u64, u64)| match (low.get_ref(a), high.get_ref(b)) {
            (Some(x), Some(y)) => TropVal::Fin(x + y),
            _ => TropVal::Inf,
        };
        [term(self.terms[0]), term(self.terms[1]), term(self.terms[2])]
    }
}

/// Every three-term relation of the given kind. For incidence relations `r`
/// is the lower rank. Shapes that cannot occur (e.g. GP relations for
/// `r < 2`) give an empty list.
pub fn gen_three_term(n: usize, r: usize, kind: RelationKind) -> Result<Vec<ThreeTermRelation>> {
    check_n(n)?;
    let mut out = Vec::new();
    match kind {
        RelationKind::GrassmannPlucker => {
            if r > n {
                return Err(Error::InvalidRank { rank: r, n });
            }
            if r < 2 {
                return Ok(out);
            }
            for s in k_subsets(n, r - 2) {
                let rest = full_mask(n) & !s;
                for tail in k_subsets(n, 4).filter(|t| t & !rest == 0) {
                    let e = mask_elements(tail);
                    let (i, j, k, l) = (bit(e[0]), bit(e[1]), bit(e[2]), bit(e[3]));
                    out.push(ThreeTermRelation {
                        kind,
                        rank: r,
                        s,
                        tail: e,
                        terms: [(s | i | j, s | k | l), (s | i | k, s | j | l), (s | i | l, s | j | k)],
                    });
                }
            }
        }
        RelationKind::Incidence => {
            if r + 1 > n {
                return Err(Error::InvalidRank { rank: r + 1, n });
            }
            if r < 1 {
                return Ok(out);
            }
            for s in k_subsets(n, r - 1) {
                let rest = full_mask(n) & !s;
                for tail in k_subsets(n, 3).filter(|t| t & !rest == 0) {
                    let e = mask_elements(tail);
                    let (i, j, k) = (bit(e[0]), bit(e[1]), bit(e[2]));
                    out.push(ThreeTermRelation {
                        kind,
                        rank: r,
                        s,
                        tail: e,
                        terms: [(s | i, s | j | k), (s | j, s | i | k), (s | k, s | i | j)],
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The minimum of the three values, if finite, is attained at least twice.
pub fn tropical_holds(v: &[TropVal; 3]) -> bool {
    let m = v.iter().min().expect("three values");
    !m.is_finite() || v.iter().filter(|x| *x == m).count() >= 2
}

/// The negatively signed middle monomial equals the minimum of the two
/// outer ones (vacuous when all three are `∞`).
pub fn positive_tropical_holds(v: &[TropVal; 3]) -> bool {
    v[1] == *std::cmp::min(&v[0], &v[2])
}

pub fn satisfies_tropical(vec: &TropPluckerVector, rel: &ThreeTermRelation) -> bool {
    tropical_holds(&rel.evaluate(vec, vec))
}

pub fn satisfies_positive_tropical(vec: &TropPluckerVector, rel: &ThreeTermRelation) -> bool {
    positive_tropical_holds(&rel.evaluate(vec, vec))
}

/// Values of a relation on a flag vector; `None` if the needed ranks are absent.
pub fn evaluate_on_flag(flag: &FlagTropVector, rel: &ThreeTermRelation) -> Option<[TropVal; 3]> {
    let find = |r: usize| flag.constituents.iter().find(|m| m.r == r);
    match rel.kind {
        RelationKind::GrassmannPlucker => find(rel.rank).map(|m| rel.evaluate(m, m)),
        RelationKind::Incidence => Some(rel.evaluate(find(rel.rank)?, find(rel.rank + 1)?)),
    }
}

/// All three-term GP relations of every constituent and all three-term
/// incidence relations of adjacent constituents with consecutive ranks.
pub fn flag_relations(flag: &FlagTropVector) -> Vec<ThreeTermRelation> {
    let n = flag.n();
    let mut out = Vec::new();
    for m in &flag.constituents {
        out.extend(gen_three_term(n, m.r, RelationKind::GrassmannPlucker).expect("valid rank"));
    }
    for w in flag.constituents.windows(2) {
        if w[1].r == w[0].r + 1 {
            out.extend(gen_three_term(n, w[0].r, RelationKind::Incidence).expect("valid rank"));
        }
    }
    out
}

/// First relation violating the predicate, if any.
pub fn first_violation(
    flag: &FlagTropVector,
    holds: impl Fn(&[TropVal; 3]) -> bool,
) -> Option<ThreeTermRelation> {
    flag_relations(flag).into_iter().find(|rel| {
        let v = evaluate_on_flag(flag, rel).expect("relation ranks present");
        !holds(&v)
    })
}

fn support_is_flag_matroid(flag: &FlagTropVector) -> bool {
    match flag.support() {
        Some(seq) => is_flag_matroid(&seq).unwrap_or(false),
        None => false,
    }
}

/// Membership in `FlDr^{≥0}` for consecutive ranks: the support is a flag
/// matroid and every three-term GP and incidence relation holds positively.
pub fn in_fldr_nonneg(flag: &FlagTropVector) -> Result<bool> {
    if !flag.is_consecutive() {
        return Err(Error::RanksNotConsecutive(flag.ranks()));
    }
    Ok(support_is_flag_matroid(flag) && first_violation(flag, positive_tropical_holds).is_none())
}

/// Membership in the flag Dressian (three-term tropical relations only).
pub fn in_fldr(flag: &FlagTropVector) -> Result<bool> {
    if !flag.is_consecutive() {
        return Err(Error::RanksNotConsecutive(flag.ranks()));
    }
    Ok(support_is_flag_matroid(flag) && first_violation(flag, tropical_holds).is_none())
}

/// Experimental check for arbitrary rank sequences: flag-matroid support,
/// positive GP three-terms per constituent, and positive incidence
/// three-terms between constituents whose ranks happen to be adjacent.
/// Says nothing about realizability.
pub fn relations_nonneg_any_ranks(flag: &FlagTropVector) -> bool {
    support_is_flag_matroid(flag) && first_violation(flag, positive_tropical_holds).is_none()
}

/// Positively oriented flag matroid test via the `0/∞` embedding.
pub fn pom_check(seq: &[Matroid]) -> Result<bool> {
    let flag = FlagTropVector::indicator(seq)?;
    in_fldr_nonneg(&flag)
}

/// A rational `p/q`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_one() -> BigRational {
    BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(v: &[i64]) -> Vec<TropVal> {
        v.iter().map(|&x| TropVal::int(x)).collect()
    }

    fn gp24() -> ThreeTermRelation {
        gen_three_term(4, 2, RelationKind::GrassmannPlucker).unwrap().remove(0)
    }

    fn m(n: usize, bases: &[&[usize]]) -> Matroid {
        Matroid::new(n, &bases.iter().map(|b| b.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/6".parse::<TropVal>().unwrap(), TropVal::ratio(1, 2));
        assert_eq!("inf".parse::<TropVal>().unwrap(), TropVal::Inf);
        assert_eq!("-4".parse::<TropVal>().unwrap().to_string(), "-4");
        assert_eq!(TropVal::ratio(-2, 6).to_string(), "-1/3");
        assert!("1/0".parse::<TropVal>().is_err());
        assert!("x".parse::<TropVal>().is_err());
        assert!(TropVal::int(5) < TropVal::Inf);
    }

    #[test]
    fn support_examples() {
        let v = TropPluckerVector::from_values(4, 2, &tv(&[1, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(v.support().len(), 6);
        let mut vals = tv(&[0, 0, 0, 0, 0, 0]);
        vals[0] = TropVal::Inf;
        vals[5] = TropVal::Inf;
        let w = TropPluckerVector::from_values(4, 2, &vals).unwrap();
        let labels: Vec<String> = w.support().iter().map(|&b| crate::ground::mask_label(b)).collect();
        assert_eq!(labels, ["13", "23", "14", "24"]);
        assert_eq!(
            TropPluckerVector::from_values(4, 2, &vec![TropVal::Inf; 6]),
            Err(Error::AllInfinite)
        );
    }

    #[test]
    fn relation_counts() {
        assert_eq!(gen_three_term(4, 2, RelationKind::GrassmannPlucker).unwrap().len(), 1);
        assert_eq!(gen_three_term(3, 1, RelationKind::Incidence).unwrap().len(), 1);
        assert_eq!(gen_three_term(5, 2, RelationKind::GrassmannPlucker).unwrap().len(), 5);
        assert!(gen_three_term(3, 3, RelationKind::Incidence).is_err());
        let rel = gp24();
        let names: Vec<(String, String)> = rel
            .terms
            .iter()
            .map(|&(a, b)| (crate::ground::mask_label(a), crate::ground::mask_label(b)))
            .collect();
        assert_eq!(
            names,
            [("12".into(), "34".into()), ("13".into(), "24".into()), ("14".into(), "23".into())]
        );
    }

    #[test]
    fn three_term_examples() {
        let rel = gp24();
        let fig = TropPluckerVector::from_values(4, 2, &tv(&[1, 0, 0, 0, 0, 1])).unwrap();
        assert!(satisfies_tropical(&fig, &rel));
        assert!(satisfies_positive_tropical(&fig, &rel));
        let zero = TropPluckerVector::from_values(4, 2, &tv(&[0; 6])).unwrap();
        assert!(satisfies_tropical(&zero, &rel));
        let tie = TropPluckerVector::from_values(4, 2, &tv(&[0, 1, 0, 0, 0, 0])).unwrap();
        assert!(satisfies_tropical(&tie, &rel));
        let bad = TropPluckerVector::from_values(4, 2, &tv(&[0, 1, 1, 0, 0, 0])).unwrap();
        assert!(!satisfies_tropical(&bad, &rel));
        let neg = TropPluckerVector::from_values(4, 2, &tv(&[0, 1, 0, 0, 1, 0])).unwrap();
        assert!(satisfies_tropical(&neg, &rel));
        assert!(!satisfies_positive_tropical(&neg, &rel));
        assert!(positive_tropical_holds(&[TropVal::Inf, TropVal::Inf, TropVal::Inf]));
        assert!(!positive_tropical_holds(&[TropVal::Inf, TropVal::zero(), TropVal::Inf]));
        assert!(!positive_tropical_holds(&[TropVal::zero(), TropVal::Inf, TropVal::Inf]));
    }

    #[test]
    fn fldr_examples() {
        let fig = TropPluckerVector::from_values(4, 2, &tv(&[1, 0, 0, 0, 0, 1])).unwrap();
        assert!(in_fldr_nonneg(&FlagTropVector::new(vec![fig]).unwrap()).unwrap());
        let notreal = [m(3, &[&[1], &[3]]), Matroid::uniform(2, 3).unwrap()];
        assert!(!in_fldr_nonneg(&FlagTropVector::indicator(&notreal).unwrap()).unwrap());
        assert!(!pom_check(&notreal).unwrap());
        let lift = [m(3, &[&[1], &[3]]), m(3, &[&[1, 3]]), m(3, &[&[1, 2, 3]])];
        assert!(pom_check(&lift).unwrap());
        let uni: Vec<Matroid> = (1..=4).map(|r| Matroid::uniform(r, 4).unwrap()).collect();
        assert!(pom_check(&uni).unwrap());
        assert!(pom_check(&[uni[0].clone(), uni[2].clone()]).is_err());
    }

    #[test]
    fn dual_examples() {
        let fig = TropPluckerVector::from_values(4, 2, &tv(&[1, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(fig.dual(), fig);
        assert_eq!(fig.dual().dual(), fig);
        let u = TropPluckerVector::indicator(&Matroid::uniform(2, 5).unwrap());
        assert_eq!(u.dual(), TropPluckerVector::indicator(&Matroid::uniform(3, 5).unwrap()));
    }

    #[test]
    fn initial_and_shift_examples() {
        let fig = TropPluckerVector::from_values(4, 2, &tv(&[1, 0, 0, 0, 0, 1])).unwrap();
        let mut want = tv(&[0; 6]);
        want[0] = TropVal::Inf;
        want[5] = TropVal::Inf;
        assert_eq!(fig.initial_part().values(), want);
        let zeros = vec![BigRational::zero(); 4];
        assert_eq!(fig.affine_shift(&BigRational::zero(), &zeros).unwrap(), fig);
        let shifted = fig.affine_shift(&rat(1, 1), &[rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(shifted.get(bit(1) | bit(2)), TropVal::int(3));
        assert_eq!(shifted.get(bit(3) | bit(4)), TropVal::int(2));
    }

    #[test]
    fn minor_examples() {
        let u = TropPluckerVector::indicator(&Matroid::uniform(2, 5).unwrap());
        let c = u.valuated_minor(full_mask(5), bit(5)).unwrap();
        assert_eq!(c, TropPluckerVector::indicator(&Matroid::uniform(1, 4).unwrap()));
        let fig = TropPluckerVector::from_values(4, 2, &tv(&[1, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(fig.valuated_minor(full_mask(4), 0).unwrap(), fig);
        assert!(u.valuated_minor(full_mask(4), bit(5)).is_err());
    }

    #[test]
    fn mu_tilde_roundtrip() {
        let mu1 = TropPluckerVector::from_values(4, 1, &tv(&[3, 1, 0, 2])).unwrap();
        let mu2 = TropPluckerVector::from_values(4, 2, &tv(&[1, 0, 0, 0, 0, 1])).unwrap();
        let t = mu_tilde(&mu1, &mu2).unwrap();
        assert_eq!(t.n(), 5);
        assert_eq!(t.valuated_minor(full_mask(5), bit(5)).unwrap(), mu1);
        assert_eq!(t.valuated_minor(full_mask(4), 0).unwrap(), mu2);
    }
}
