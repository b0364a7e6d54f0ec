use flagpos_core::matroid::{FlagMatroid, Matroid};
use flagpos_core::polytope::{
    flag_point, hull_faces, hypersimplex, int_point, permutohedron, regular_subdivision, subdivision_from_weights,
    Point,
};
use flagpos_core::tropical::rat;
use num::BigRational;
use proptest::prelude::*;

fn euler(f: &[usize]) -> i64 {
    f.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

fn points(dim: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), dim + 1..=10)
        .prop_map(|ps| ps.iter().map(|p| int_point(p)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_satisfies_euler(ps in points(3)) {
        let p = hull_faces(&ps).unwrap();
        let f = p.fvector();
        let d = p.dim();
        // Proper faces of a d-polytope: sum (-1)^i f_i = 1 - (-1)^d.
        prop_assert_eq!(euler(&f), 1 - if d.is_multiple_of(2) { 1 } else { -1 });
        prop_assert_eq!(f[0], p.vertices().len());
        // Every input point is a convex combination of vertices; vertices
        // are a subset of the input.
        for v in p.vertices() {
            prop_assert!(ps.contains(v));
        }
    }

    #[test]
    fn random_subdivisions_are_complexes(ws in prop::collection::vec(-4i64..=4, 6)) {
        let hs = hypersimplex(2, 4).unwrap();
        let weights: Vec<BigRational> = ws.iter().map(|&w| rat(w, 1)).collect();
        let sub = regular_subdivision(hs.polytope().vertices(), &weights).unwrap();
        prop_assert!(sub.is_polyhedral_complex());
        // A subdivided ball: the alternating sum including cells is 1.
        prop_assert_eq!(euler(&sub.fvector()), 1);
        let mut used: Vec<usize> = sub.cells().iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        prop_assert_eq!(used.len(), 6);
    }

    #[test]
    fn perm4_subdivisions_are_complexes(ws in prop::collection::vec(-3i64..=3, 14)) {
        let p = permutohedron(4).unwrap();
        let closure = |flag: &[u64]| -> BigRational {
            // Weights on the 14 proper nonempty subsets, summed along the flag.
            flag.iter().filter(|&&s| s != 0b1111).map(|&s| rat(ws[(s as usize) - 1], 1)).sum()
        };
        let sub = subdivision_from_weights(p.flag_matroid(), closure).unwrap();
        prop_assert!(sub.subdivision.is_polyhedral_complex());
        prop_assert_eq!(euler(&sub.subdivision.fvector()), 1);
    }
}

#[test]
fn known_fvectors() {
    assert_eq!(hypersimplex(2, 4).unwrap().polytope().fvector(), vec![6, 12, 8]);
    assert_eq!(hypersimplex(2, 5).unwrap().polytope().fvector(), vec![10, 30, 30, 10]);
    assert_eq!(permutohedron(3).unwrap().polytope().fvector(), vec![6, 6]);
    assert_eq!(permutohedron(4).unwrap().polytope().fvector(), vec![24, 36, 14]);
}

#[test]
fn flag_points_sum_indicators() {
    assert_eq!(flag_point(4, &[0b0010, 0b0011]), int_point(&[1, 2, 0, 0]));
    let m1 = Matroid::new(3, &[vec![1], vec![2]]).unwrap();
    let m2 = Matroid::new(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
    let fm = FlagMatroid::new(vec![m1, m2]).unwrap();
    let fp = flagpos_core::polytope::flag_polytope(&fm).unwrap();
    assert_eq!(fp.flags().len(), 4);
    assert_eq!(fp.polytope().dim(), 2);
}
