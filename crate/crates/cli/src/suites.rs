//! Seeded property suites: oracle equivalence between the quotient test,
//! the positively-oriented check and the subdivision certificates, and the
//! three-term lemmas, closure and duality properties.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use flagpos_core::ground::{bit, full_mask, k_subsets};
use flagpos_core::matroid::{is_flag_matroid, Matroid};
use flagpos_core::necklace::{all_positroids, is_flag_positroid_consecutive, quotient_test};
use flagpos_core::polytope::{all_cells_flag_positroid, subdivision_from_mu, twod_faces_flag_positroid};
use flagpos_core::sample::{perturb, random_rational, random_tnn_flag, random_vector, seeded_rng};
use flagpos_core::tropical::{
    gen_three_term, in_fldr_nonneg, pom_check, positive_tropical_holds, satisfies_positive_tropical,
    FlagTropVector, RelationKind, TropPluckerVector, TropVal,
};

use crate::io::{CliError, CliResult};

pub const SUITES: [&str; 8] = [
    "oracle-pairs",
    "oracle-subdivisions",
    "eb",
    "cor-eb",
    "almost3term",
    "afflin",
    "duality",
    "speyer",
];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    /// Instances generated.
    pub trials: usize,
    /// Instances meeting the hypotheses and actually checked.
    pub checked: usize,
    pub violations: usize,
    /// For the oracle suites: checked instances on which the oracles all
    /// said yes.
    pub positives: usize,
    /// A few offending instances, rendered as text.
    pub examples: Vec<String>,
    pub pass: bool,
    pub elapsed_ms: u128,
}

struct Tally {
    trials: usize,
    checked: usize,
    violations: usize,
    positives: usize,
    examples: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            trials: 0,
            checked: 0,
            violations: 0,
            positives: 0,
            examples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < 5 {
                self.examples.push(what());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.trials += other.trials;
        self.checked += other.checked;
        self.violations += other.violations;
        self.positives += other.positives;
        self.examples.extend(other.examples);
        self.examples.truncate(5);
        self
    }

    fn report(self, suite: &str, seed: u64, min_checked: usize, start: Instant) -> SuiteReport {
        SuiteReport {
            suite: suite.into(),
            seed,
            pass: self.violations == 0 && self.checked >= min_checked,
            trials: self.trials,
            checked: self.checked,
            violations: self.violations,
            positives: self.positives,
            examples: self.examples,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }
}

/// Default instance counts; `scale` multiplies them (use < 1 for smoke runs).
fn count(base: usize, scale: f64) -> usize {
    ((base as f64 * scale).ceil() as usize).max(1)
}

pub fn run_suite(name: &str, seed: u64, scale: f64) -> CliResult<SuiteReport> {
    let start = Instant::now();
    let (tally, min) = match name {
        "oracle-pairs" => oracle_pairs(seed, count(1000, scale))?,
        "oracle-subdivisions" => oracle_subdivisions(seed, count(200, scale))?,
        "eb" => eb(seed, count(10_000, scale), false)?,
        "cor-eb" => eb(seed, count(10_000, scale), true)?,
        "almost3term" => almost3term(seed, count(1000, scale))?,
        "afflin" => afflin(seed, count(1000, scale))?,
        "duality" => duality(seed, count(1000, scale))?,
        "speyer" => speyer(seed, count(300, scale))?,
        other => {
            return Err(CliError::input(
                "",
                format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")),
            ))
        }
    };
    Ok(tally.report(name, seed, min, start))
}

fn describe_seq(seq: &[Matroid]) -> String {
    let parts: Vec<String> = seq.iter().map(|m| format!("{:?}", m.basis_lists())).collect();
    parts.join(" | ")
}

fn describe_flag(f: &FlagTropVector) -> String {
    f.constituents()
        .iter()
        .map(|v| {
            let coords: Vec<String> = v
                .finite_coords()
                .iter()
                .map(|(&k, x)| format!("{}:{}", crate::io::subset_key(k), x))
                .collect();
            format!("r{} {{{}}}", v.r(), coords.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

/// `(agree, quotient)`.
fn pair_agrees(m1: &Matroid, m2: &Matroid) -> CliResult<(bool, bool)> {
    let seq = [m1.clone(), m2.clone()];
    let q = quotient_test(m1, m2)?.quotient;
    Ok((q == pom_check(&seq)?, q))
}

/// Quotient test against the positively-oriented check: exhaustive over
/// adjacent-rank positroid pairs for `n ≤ 5`, then `random` pairs at `n = 6`
/// drawn half uniformly from all positroids and half from supports of
/// nonnegative flag vectors.
fn oracle_pairs(seed: u64, random: usize) -> CliResult<(Tally, usize)> {
    let mut tally = Tally::new();
    let mut exhaustive = 0;
    for n in 1..=5 {
        let per_rank: Vec<Vec<Matroid>> = (0..=n).map(|d| all_positroids(n, d)).collect();
        for d in 0..n {
            let results: Vec<(bool, bool, String)> = per_rank[d]
                .par_iter()
                .flat_map_iter(|m1| {
                    per_rank[d + 1].iter().map(move |m2| {
                        let (ok, q) = pair_agrees(m1, m2).unwrap_or((false, false));
                        (ok, q, describe_seq(&[m1.clone(), m2.clone()]))
                    })
                })
                .collect();
            for (ok, q, what) in results {
                tally.trials += 1;
                tally.positives += usize::from(q);
                tally.record(ok, || what);
                exhaustive += 1;
            }
        }
    }
    let n = 6;
    let per_rank: Vec<Vec<Matroid>> = (0..=n).map(|d| all_positroids(n, d)).collect();
    let mut rng = seeded_rng(seed);
    for t in 0..random {
        let d = rng.gen_range(1..n);
        let (m1, m2) = if t % 2 == 0 {
            let a = &per_rank[d][rng.gen_range(0..per_rank[d].len())];
            let b = &per_rank[d + 1][rng.gen_range(0..per_rank[d + 1].len())];
            (a.clone(), b.clone())
        } else {
            let f = random_tnn_flag(&mut rng, n, &[d, d + 1], 40);
            let f = if t % 4 == 1 { perturb(&mut rng, &f) } else { f };
            let seq = f.support().expect("supports are matroids");
            (seq[0].clone(), seq[1].clone())
        };
        tally.trials += 1;
        let (ok, q) = pair_agrees(&m1, &m2)?;
        tally.positives += usize::from(q);
        tally.record(ok, || describe_seq(&[m1, m2]));
    }
    Ok((tally, exhaustive + random))
}

fn random_flag_vector<R: Rng>(rng: &mut R, n: usize, ranks: &[usize], t: usize) -> FlagTropVector {
    let tnn = random_tnn_flag(rng, n, ranks, 30);
    match t % 4 {
        0 | 1 => tnn,
        2 => perturb(rng, &tnn),
        _ => {
            let consts = ranks
                .iter()
                .map(|&r| {
                    let coords = k_subsets(n, r).map(|s| (s, TropVal::Fin(random_rational(rng, 4)))).collect();
                    TropPluckerVector::new(n, r, coords).expect("finite")
                })
                .collect();
            FlagTropVector::new(consts).expect("increasing ranks")
        }
    }
}

/// `in_fldr_nonneg`, positivity of all maximal cells, and positivity of all
/// faces of dimension ≤ 2 agree on `per_shape` vectors for each shape.
fn oracle_subdivisions(seed: u64, per_shape: usize) -> CliResult<(Tally, usize)> {
    let shapes: [(usize, &[usize]); 3] = [(4, &[2]), (4, &[1, 2, 3]), (5, &[2, 3])];
    let mut rng = seeded_rng(seed);
    let mut jobs = Vec::new();
    for (n, ranks) in shapes {
        for t in 0..per_shape {
            jobs.push(random_flag_vector(&mut rng, n, ranks, t));
        }
    }
    let tally = jobs
        .par_iter()
        .map(|f| -> CliResult<Tally> {
            let mut tally = Tally::new();
            tally.trials = 1;
            let sub = subdivision_from_mu(f)?;
            let a = in_fldr_nonneg(f)?;
            let b = all_cells_flag_positroid(&sub)?;
            let c = twod_faces_flag_positroid(&sub)?;
            tally.positives = usize::from(a && b && c);
            tally.record(a == b && b == c, || {
                format!("fldr_nonneg={a} cells={b} faces={c}: {}", describe_flag(f))
            });
            Ok(tally)
        })
        .try_reduce(Tally::new, |a, b| Ok(a.merge(b)))?;
    let min = shapes.len() * per_shape;
    Ok((tally, min))
}

/// The statement and its dual on `([5] choose 2)` / `([5] choose 3)`:
/// positive three-terms touching the distinguished element force the
/// remaining one. Generates until `target` vectors meet the hypotheses.
fn eb(seed: u64, target: usize, dual: bool) -> CliResult<(Tally, usize)> {
    let n = 5;
    let r = if dual { 3 } else { 2 };
    let five = bit(5);
    let rels = gen_three_term(n, r, RelationKind::GrassmannPlucker)?;
    // For r = 2, relations "involving 5" have 5 among i<j<k<l; for r = 3 the
    // hypotheses are the relations with some variable avoiding 5.
    let (hyp, concl): (Vec<_>, Vec<_>) = rels.into_iter().partition(|rel| {
        if dual {
            rel.terms.iter().any(|&(a, b)| a & five == 0 || b & five == 0)
        } else {
            rel.terms.iter().any(|&(a, b)| (a | b) & five != 0)
        }
    });
    assert_eq!(concl.len(), 1);
    let mut rng = seeded_rng(seed);
    let mut tally = Tally::new();
    let cap = target * 200;
    while tally.checked < target && tally.trials < cap {
        tally.trials += 1;
        let w = if tally.trials.is_multiple_of(3) {
            let f = random_tnn_flag(&mut rng, n, &[r], 25);
            perturb(&mut rng, &f).constituents()[0].clone()
        } else {
            let p = [0.1, 0.3, 0.5][tally.trials % 3];
            match random_vector(&mut rng, n, r, 3, p) {
                Some(w) => w,
                None => continue,
            }
        };
        let applicable = if dual {
            match w.support_matroid() {
                Ok(m) => m.coloops() & five == 0,
                Err(_) => false,
            }
        } else {
            (1..=4).any(|i| w.get(bit(i) | five).is_finite())
        };
        if !applicable || !hyp.iter().all(|rel| satisfies_positive_tropical(&w, rel)) {
            continue;
        }
        let ok = satisfies_positive_tropical(&w, &concl[0]);
        tally.record(ok, || describe_flag(&FlagTropVector::new(vec![w.clone()]).expect("one")));
    }
    Ok((tally, target))
}

fn all_positive(f: &FlagTropVector, kind: RelationKind) -> bool {
    let n = f.n();
    let c = f.constituents();
    match kind {
        RelationKind::GrassmannPlucker => c.iter().all(|v| {
            gen_three_term(n, v.r(), kind)
                .expect("rank in range")
                .iter()
                .all(|rel| satisfies_positive_tropical(v, rel))
        }),
        RelationKind::Incidence => gen_three_term(n, c[0].r(), kind)
            .expect("rank in range")
            .iter()
            .all(|rel| positive_tropical_holds(&rel.evaluate(&c[0], &c[1]))),
    }
}

/// Adjacent-rank pairs with flag-matroid support satisfying every positive
/// incidence three-term also satisfy every positive GP three-term.
fn almost3term(seed: u64, target: usize) -> CliResult<(Tally, usize)> {
    let mut rng = seeded_rng(seed);
    let mut tally = Tally::new();
    let cap = target * 500;
    while tally.checked < target && tally.trials < cap {
        tally.trials += 1;
        let n = rng.gen_range(4..=6);
        let r = rng.gen_range(1..n - 1);
        let f = match tally.trials % 3 {
            0 => random_tnn_flag(&mut rng, n, &[r, r + 1], 30),
            1 => {
                let f = random_tnn_flag(&mut rng, n, &[r, r + 1], 30);
                perturb(&mut rng, &f)
            }
            _ => {
                let a = random_vector(&mut rng, n, r, 2, 0.4);
                let b = random_vector(&mut rng, n, r + 1, 2, 0.4);
                match (a, b) {
                    (Some(a), Some(b)) => FlagTropVector::new(vec![a, b]).expect("adjacent ranks"),
                    _ => continue,
                }
            }
        };
        let support_ok = match f.support() {
            Some(seq) => is_flag_matroid(&seq)?,
            None => false,
        };
        if !support_ok || !all_positive(&f, RelationKind::Incidence) {
            continue;
        }
        let ok = all_positive(&f, RelationKind::GrassmannPlucker);
        tally.record(ok, || describe_flag(&f));
    }
    Ok((tally, target))
}

/// Members of `FlDr^{≥0}` have flag-positroid support and stay members
/// under initial parts and affine-linear shifts.
fn afflin(seed: u64, target: usize) -> CliResult<(Tally, usize)> {
    let mut rng = seeded_rng(seed);
    let mut tally = Tally::new();
    let cap = target * 50;
    while tally.checked < target && tally.trials < cap {
        tally.trials += 1;
        let n = rng.gen_range(3..=6);
        let lo = rng.gen_range(1..n);
        let hi = rng.gen_range(lo..n);
        let ranks: Vec<usize> = (lo..=hi).collect();
        let f = random_tnn_flag(&mut rng, n, &ranks, 30);
        let f = if tally.trials.is_multiple_of(2) { perturb(&mut rng, &f) } else { f };
        if !in_fldr_nonneg(&f)? {
            continue;
        }
        let support = f.support().expect("member has matroid support");
        let c0 = random_rational(&mut rng, 5);
        let c: Vec<_> = (0..n).map(|_| random_rational(&mut rng, 5)).collect();
        let shifted = f.affine_shift(&c0, &c)?;
        let ok = is_flag_positroid_consecutive(&support)?
            && in_fldr_nonneg(&f.initial_part())?
            && in_fldr_nonneg(&shifted)?
            && in_fldr_nonneg(&shifted.initial_part())?;
        tally.record(ok, || describe_flag(&f));
    }
    Ok((tally, target))
}

fn single(v: TropPluckerVector) -> FlagTropVector {
    FlagTropVector::new(vec![v]).expect("one constituent")
}

/// `w ∈ Dr^{≥0}` iff `w^⊥ ∈ Dr^{≥0}`, and `(w^⊥)^⊥ = w`: exhaustive over
/// `0/∞` vectors for `n ≤ 5`, then `random` rational vectors at `n = 6`.
fn duality(seed: u64, random: usize) -> CliResult<(Tally, usize)> {
    let mut jobs = Vec::new();
    for n in 1..=5 {
        for r in 0..=n {
            let subsets: Vec<u64> = k_subsets(n, r).collect();
            for pick in 1u64..(1 << subsets.len()) {
                let coords: BTreeMap<u64, TropVal> = subsets
                    .iter()
                    .enumerate()
                    .map(|(i, &s)| (s, if pick >> i & 1 == 1 { TropVal::zero() } else { TropVal::Inf }))
                    .collect();
                jobs.push(TropPluckerVector::new(n, r, coords)?);
            }
        }
    }
    let exhaustive = jobs.len();
    let mut rng = seeded_rng(seed);
    for t in 0..random {
        let r = rng.gen_range(1..6);
        let v = if t % 2 == 0 {
            random_tnn_flag(&mut rng, 6, &[r], 30).constituents()[0].clone()
        } else {
            match random_vector(&mut rng, 6, r, 3, 0.2) {
                Some(v) => v,
                None => continue,
            }
        };
        jobs.push(v);
    }
    let tally = jobs
        .par_iter()
        .map(|w| -> CliResult<Tally> {
            let mut tally = Tally::new();
            tally.trials = 1;
            let d = w.dual();
            let ok = d.dual() == *w
                && in_fldr_nonneg(&single(w.clone()))? == in_fldr_nonneg(&single(d))?;
            tally.record(ok, || describe_flag(&single(w.clone())));
            Ok(tally)
        })
        .try_reduce(Tally::new, |a, b| Ok(a.merge(b)))?;
    Ok((tally, exhaustive))
}

type CellSet = BTreeSet<BTreeSet<u64>>;

fn refines(fine: &CellSet, coarse: &CellSet) -> bool {
    fine.iter().all(|c| coarse.iter().any(|d| c.is_subset(d)))
}

/// Finest positroidal subdivisions of `Δ_{2,4}` (all weights in
/// `{0,1,2}^6`) and `Δ_{2,5}` (`random` sampled members of `Dr^{≥0}`) have
/// `C(n-2, d-1)` maximal cells.
fn speyer(seed: u64, random: usize) -> CliResult<(Tally, usize)> {
    let mut tally = Tally::new();
    let mut rng = seeded_rng(seed);
    for (n, d) in [(4usize, 2usize), (5, 2)] {
        let subsets: Vec<u64> = k_subsets(n, d).collect();
        let mut vectors = Vec::new();
        if n == 4 {
            for code in 0..3usize.pow(subsets.len() as u32) {
                let mut c = code;
                let coords = subsets
                    .iter()
                    .map(|&s| {
                        let v = (c % 3) as i64;
                        c /= 3;
                        (s, TropVal::int(v))
                    })
                    .collect();
                vectors.push(single(TropPluckerVector::new(n, d, coords)?));
            }
        } else {
            for t in 0..random {
                let f = random_tnn_flag(&mut rng, n, &[d], 40);
                vectors.push(if t % 2 == 0 { f } else { perturb(&mut rng, &f) });
            }
        }
        let full = full_mask(n);
        let subs: Vec<Option<CellSet>> = vectors
            .par_iter()
            .map(|f| -> CliResult<Option<CellSet>> {
                let v = &f.constituents()[0];
                if v.support().len() != subsets.len() || !in_fldr_nonneg(f)? {
                    return Ok(None);
                }
                let sub = subdivision_from_mu(f)?;
                Ok(Some(
                    sub.subdivision
                        .cells()
                        .iter()
                        .map(|c| sub.labels(c).iter().map(|fl| fl[0] & full).collect())
                        .collect(),
                ))
            })
            .collect::<CliResult<_>>()?;
        tally.trials += vectors.len();
        let distinct: BTreeSet<CellSet> = subs.into_iter().flatten().collect();
        let expected = binomial(n - 2, d - 1);
        for s in &distinct {
            let finest = !distinct.iter().any(|t| t != s && refines(t, s));
            if finest {
                tally.record(s.len() == expected, || {
                    format!("Δ_{{{d},{n}}}: finest subdivision with {} cells, expected {expected}", s.len())
                });
            }
        }
    }
    Ok((tally, 2))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
