#![allow(dead_code)]

use flagpos_core::ground::{bit, k_subsets};
use flagpos_core::matroid::Matroid;

/// Basis exchange, checked directly.
pub fn exchange(bases: &[u64]) -> bool {
    bases.iter().all(|&a| {
        bases.iter().all(|&b| {
            let mut ok = true;
            let mut rest = a & !b;
            while rest != 0 {
                let x = rest & rest.wrapping_neg();
                rest &= rest - 1;
                let mut found = false;
                let mut cand = b & !a;
                while cand != 0 {
                    let y = cand & cand.wrapping_neg();
                    cand &= cand - 1;
                    if bases.contains(&((a & !x) | y)) {
                        found = true;
                        break;
                    }
                }
                ok &= found;
            }
            ok
        })
    })
}

/// Every matroid on `[n]` (ground set all of `[n]`), by brute force.
pub fn all_matroids(n: usize) -> Vec<Matroid> {
    let mut out = Vec::new();
    for r in 0..=n {
        let subsets: Vec<u64> = k_subsets(n, r).collect();
        for pick in 1u64..(1 << subsets.len()) {
            let bases: Vec<u64> = (0..subsets.len())
                .filter(|i| pick >> i & 1 == 1)
                .map(|i| subsets[i])
                .collect();
            if exchange(&bases) {
                out.push(Matroid::from_masks(n, (1 << n) - 1, bases).unwrap());
            }
        }
    }
    out
}

/// Rank as the largest intersection with a basis.
pub fn rank(bases: &[u64], s: u64) -> u32 {
    bases.iter().map(|b| (b & s).count_ones()).max().unwrap_or(0)
}

pub fn elems(n: usize) -> impl Iterator<Item = u64> {
    (1..=n).map(bit)
}
