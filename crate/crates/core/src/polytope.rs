//! Exact convex hulls, face lattices, regular subdivisions and flag matroid
//! polytopes.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ground::{bit, full_mask};
use crate::matroid::{flags_of, FlagMatroid, Matroid};
use crate::necklace::is_flag_positroid_consecutive;
use crate::tropical::{pom_check, FlagTropVector};

/// Largest affine dimension accepted by [`hull_faces`] and [`regular_subdivision`].
pub const MAX_DIM: usize = 6;

pub type Point = Vec<BigRational>;

pub fn int_point(v: &[i64]) -> Point {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// `e_{B₁} + ... + e_{B_k}`; coordinate `i` counts the sets containing `i`.
pub fn flag_point(n: usize, flag: &[u64]) -> Point {
    (1..=n)
        .map(|i| {
            let c = flag.iter().filter(|&&b| b & bit(i) != 0).count();
            BigRational::from_integer(BigInt::from(c))
        })
        .collect()
}

/// Row-reduces in place and returns the pivot columns.
fn row_reduce(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Affine dimension and a set of coordinates onto which projection is
/// injective on the affine hull.
fn affine_frame(points: &[&Point]) -> (usize, Vec<usize>) {
    if points.len() <= 1 {
        return (0, Vec::new());
    }
    let p0 = points[0];
    let mut rows: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let pivots = row_reduce(&mut rows);
    (pivots.len(), pivots)
}

pub fn affine_dim(points: &[&Point]) -> usize {
    affine_frame(points).0
}

fn lcm_denominators<'a>(vals: impl Iterator<Item = &'a BigRational>) -> BigInt {
    vals.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn gcd_normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Facet {
    normal: Vec<BigInt>,
    tight: FixedBitSet,
}

/// Facets of the cone `{a : a·row ≥ 0}` for rows spanning `ℚ^{d1}`, via the
/// double description method with the combinatorial adjacency test.
fn double_description(rows: &[Vec<BigInt>], d1: usize) -> Vec<Facet> {
    let m = rows.len();
    // greedy basis of rows
    let mut basis = Vec::new();
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(row.iter().map(|x| BigRational::from_integer(x.clone())).collect());
        if row_reduce(&mut trial.clone()).len() == trial.len() {
            echelon = trial;
            basis.push(i);
            if basis.len() == d1 {
                break;
            }
        }
    }
    assert_eq!(basis.len(), d1, "rows must span the ambient space");

    // columns of the inverse of the basis matrix are the initial rays
    let mut aug: Vec<Vec<BigRational>> = basis
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let mut r: Vec<BigRational> = rows[i].iter().map(|x| BigRational::from_integer(x.clone())).collect();
            r.extend((0..d1).map(|j| if j == k { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    row_reduce(&mut aug);
    let mut rays: Vec<Vec<BigInt>> = (0..d1)
        .map(|k| {
            let col: Vec<BigRational> = (0..d1).map(|i| aug[i][d1 + k].clone()).collect();
            let l = lcm_denominators(col.iter());
            let mut v: Vec<BigInt> = col.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
            gcd_normalize(&mut v);
            v
        })
        .collect();
    let mut zeros: Vec<FixedBitSet> = (0..d1)
        .map(|k| {
            let mut z = FixedBitSet::with_capacity(m);
            for (j, &i) in basis.iter().enumerate() {
                if j != k {
                    z.insert(i);
                }
            }
            z
        })
        .collect();

    let in_basis: HashSet<usize> = basis.iter().copied().collect();
    for i in (0..m).filter(|i| !in_basis.contains(i)) {
        let s: Vec<BigInt> = rays.iter().map(|r| dot(r, &rows[i])).collect();
        if s.iter().all(|x| !x.is_negative()) {
            for (k, x) in s.iter().enumerate() {
                if x.is_zero() {
                    zeros[k].insert(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| s[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| s[k].is_negative()).collect();
        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = zeros[p].clone();
                common.intersect_with(&zeros[q]);
                if common.count_ones(..) + 2 < d1 {
                    continue;
                }
                let blocked = (0..rays.len()).any(|k| k != p && k != q && common.is_subset(&zeros[k]));
                if blocked {
                    continue;
                }
                let mut v: Vec<BigInt> = rays[q]
                    .iter()
                    .zip(&rays[p])
                    .map(|(rq, rp)| &s[p] * rq - &s[q] * rp)
                    .collect();
                gcd_normalize(&mut v);
                common.insert(i);
                new_rays.push(v);
                new_zeros.push(common);
            }
        }
        let mut kept_rays = Vec::new();
        let mut kept_zeros = Vec::new();
        for k in 0..rays.len() {
            if s[k].is_negative() {
                continue;
            }
            let mut z = zeros[k].clone();
            if s[k].is_zero() {
                z.insert(i);
            }
            kept_rays.push(rays[k].clone());
            kept_zeros.push(z);
        }
        kept_rays.extend(new_rays);
        kept_zeros.extend(new_zeros);
        rays = kept_rays;
        zeros = kept_zeros;
    }
    rays.into_iter()
        .zip(zeros)
        .map(|(normal, tight)| Facet { normal, tight })
        .collect()
}

struct HullData {
    facets: Vec<Facet>,
    extreme: FixedBitSet,
}

/// Hull of distinct points already expressed in `dim` full-dimensional
/// coordinates.
fn hull_full(points: &[Vec<BigRational>], dim: usize) -> HullData {
    let m = points.len();
    if dim == 0 {
        let mut extreme = FixedBitSet::with_capacity(m);
        extreme.insert_range(..);
        return HullData {
            facets: Vec::new(),
            extreme,
        };
    }
    let l = lcm_denominators(points.iter().flatten());
    let lr = BigRational::from_integer(l.clone());
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            std::iter::once(l.clone())
                .chain(p.iter().map(|x| (x * &lr).to_integer()))
                .collect()
        })
        .collect();
    let facets = double_description(&rows, dim + 1);
    let mut extreme = FixedBitSet::with_capacity(m);
    for j in 0..m {
        let mut meet = FixedBitSet::with_capacity(m);
        meet.insert_range(..);
        for f in facets.iter().filter(|f| f.tight.contains(j)) {
            meet.intersect_with(&f.tight);
        }
        if meet.count_ones(..) == 1 {
            extreme.insert(j);
        }
    }
    HullData { facets, extreme }
}

fn project(points: &[&Point], cols: &[usize]) -> Vec<Vec<BigRational>> {
    points.iter().map(|p| cols.iter().map(|&c| p[c].clone()).collect()).collect()
}

/// All nonempty sets reachable from `start` by intersecting with `facets`.
fn close_under_facets(start: Vec<FixedBitSet>, facets: &[FixedBitSet]) -> BTreeSet<Vec<usize>> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut queue: VecDeque<FixedBitSet> = VecDeque::new();
    for s in start {
        if s.count_ones(..) > 0 && seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(f) = queue.pop_front() {
        for g in facets {
            let mut h = f.clone();
            h.intersect_with(g);
            if h.count_ones(..) > 0 && h != f && seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.into_iter().map(|s| s.ones().collect()).collect()
}

/// A nonempty face, given by indices into a vertex list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

fn faces_with_dims(sets: BTreeSet<Vec<usize>>, vertices: &[Point]) -> Vec<Face> {
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|vs| {
            let pts: Vec<&Point> = vs.iter().map(|&i| &vertices[i]).collect();
            Face {
                dim: affine_dim(&pts),
                vertices: vs,
            }
        })
        .collect();
    faces.sort();
    faces
}

/// A convex polytope: its vertices (in input order) and all nonempty faces,
/// including the polytope itself.
#[derive(Clone, Debug)]
pub struct Polytope {
    vertices: Vec<Point>,
    dim: usize,
    faces: Vec<Face>,
}

impl Polytope {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    /// Numbers of proper faces of dimension `0, ..., dim − 1`.
    pub fn fvector(&self) -> Vec<usize> {
        (0..self.dim).map(|k| self.faces_of_dim(k).count()).collect()
    }

    /// Edge vectors `v − u` for each edge `{u, v}`.
    pub fn edge_vectors(&self) -> Vec<Point> {
        self.faces_of_dim(1)
            .map(|f| {
                let (a, b) = (&self.vertices[f.vertices[0]], &self.vertices[f.vertices[1]]);
                b.iter().zip(a).map(|(x, y)| x - y).collect()
            })
            .collect()
    }
}

fn dedup_points(points: &[Point]) -> Vec<Point> {
    let mut seen = HashSet::new();
    points.iter().filter(|p| seen.insert((*p).clone())).cloned().collect()
}

/// Exact convex hull and face lattice. Duplicate and non-extreme input
/// points are dropped; remaining vertices keep their input order.
pub fn hull_faces(points: &[Point]) -> Result<Polytope> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    let len = points[0].len();
    if let Some(p) = points.iter().find(|p| p.len() != len) {
        return Err(Error::SizeMismatch(len, p.len()));
    }
    let pts = dedup_points(points);
    let refs: Vec<&Point> = pts.iter().collect();
    let (dim, cols) = affine_frame(&refs);
    if dim > MAX_DIM {
        return Err(Error::DimensionCap(dim, MAX_DIM));
    }
    let hull = hull_full(&project(&refs, &cols), dim);
    let keep: Vec<usize> = hull.extreme.ones().collect();
    let index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let vertices: Vec<Point> = keep.iter().map(|&j| pts[j].clone()).collect();
    let remap = |s: &FixedBitSet| -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(vertices.len());
        for j in s.ones() {
            if let Some(&k) = index.get(&j) {
                out.insert(k);
            }
        }
        out
    };
    let facets: Vec<FixedBitSet> = hull.facets.iter().map(|f| remap(&f.tight)).collect();
    let mut whole = FixedBitSet::with_capacity(vertices.len());
    whole.insert_range(..);
    let mut start = facets.clone();
    start.push(whole);
    let faces = faces_with_dims(close_under_facets(start, &facets), &vertices);
    Ok(Polytope { vertices, dim, faces })
}

/// A regular subdivision of a point configuration in convex position,
/// stored as its maximal cells and the deduplicated complex of all their
/// faces (cells included).
#[derive(Clone, Debug)]
pub struct Subdivision {
    points: Vec<Point>,
    weights: Vec<BigRational>,
    dim: usize,
    cells: Vec<Vec<usize>>,
    complex: Vec<Face>,
}

impl Subdivision {
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Maximal cells as sorted index lists into [`Subdivision::points`].
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn complex(&self) -> &[Face] {
        &self.complex
    }

    pub fn is_trivial(&self) -> bool {
        self.cells.len() == 1
    }

    /// Face counts of the complex in dimensions `0, ..., dim`, the cells
    /// included and the empty face excluded.
    pub fn fvector(&self) -> Vec<usize> {
        (0..=self.dim)
            .map(|k| self.complex.iter().filter(|f| f.dim == k).count())
            .collect()
    }

    /// Each pair of cells meets in a common face (or not at all).
    pub fn is_polyhedral_complex(&self) -> bool {
        let faces: HashSet<&Vec<usize>> = self.complex.iter().map(|f| &f.vertices).collect();
        self.cells.iter().enumerate().all(|(a, ca)| {
            self.cells[a + 1..].iter().all(|cb| {
                let meet: Vec<usize> = ca.iter().copied().filter(|x| cb.contains(x)).collect();
                meet.is_empty() || faces.contains(&meet)
            })
        })
    }
}

/// Regular subdivision induced by the lower hull of `{(p, w(p))}`. Only
/// extreme points of the configuration are lifted; the returned
/// [`Subdivision::points`] are those vertices in input order.
pub fn regular_subdivision(points: &[Point], weights: &[BigRational]) -> Result<Subdivision> {
    if points.len() != weights.len() {
        return Err(Error::SizeMismatch(points.len(), weights.len()));
    }
    if points.is_empty() {
        return Err(Error::Empty);
    }
    let mut seen = HashSet::new();
    if !points.iter().all(|p| seen.insert(p)) {
        return Err(Error::Invalid("repeated point in configuration".into()));
    }
    let base = hull_faces(points)?;
    let position: BTreeMap<&Point, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let verts = base.vertices.clone();
    let w: Vec<BigRational> = verts.iter().map(|p| weights[position[p]].clone()).collect();
    let dim = base.dim;

    let refs: Vec<&Point> = verts.iter().collect();
    let (_, cols) = affine_frame(&refs);
    let lifted: Vec<Point> = project(&refs, &cols)
        .into_iter()
        .zip(&w)
        .map(|(mut p, h)| {
            p.push(h.clone());
            p
        })
        .collect();
    let lrefs: Vec<&Point> = lifted.iter().collect();
    let (ldim, _) = affine_frame(&lrefs);

    let (cells, complex_sets) = if ldim == dim {
        let all: Vec<usize> = (0..verts.len()).collect();
        let sets: BTreeSet<Vec<usize>> = base.faces.iter().map(|f| f.vertices.clone()).collect();
        (vec![all], sets)
    } else {
        let hull = hull_full(&lifted, dim + 1);
        let facets: Vec<FixedBitSet> = hull.facets.iter().map(|f| f.tight.clone()).collect();
        let lower: Vec<FixedBitSet> = hull
            .facets
            .iter()
            .filter(|f| f.normal[dim + 1].is_positive())
            .map(|f| f.tight.clone())
            .collect();
        let mut cells: Vec<Vec<usize>> = lower.iter().map(|s| s.ones().collect()).collect();
        cells.sort();
        (cells, close_under_facets(lower, &facets))
    };
    let complex = faces_with_dims(complex_sets, &verts);
    Ok(Subdivision {
        points: verts,
        weights: w,
        dim,
        cells,
        complex,
    })
}

/// The polytope of a flag matroid, each vertex labeled with its flag.
#[derive(Clone, Debug)]
pub struct FlagPolytope {
    flag_matroid: FlagMatroid,
    flags: Vec<Vec<u64>>,
    polytope: Polytope,
}

impl FlagPolytope {
    pub fn flag_matroid(&self) -> &FlagMatroid {
        &self.flag_matroid
    }

    /// Flag labels, aligned with `polytope().vertices()`.
    pub fn flags(&self) -> &[Vec<u64>] {
        &self.flags
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn vertex_of_flag(&self, flag: &[u64]) -> Option<usize> {
        self.flags.iter().position(|f| f == flag)
    }
}

/// `Conv{e_F}` over the flags of a flag matroid. Fails loudly if two flags
/// share a point or a flag point is not a vertex.
pub fn flag_polytope(fm: &FlagMatroid) -> Result<FlagPolytope> {
    let n = fm.n();
    let flags = fm.flags();
    let points: Vec<Point> = flags.iter().map(|f| flag_point(n, f)).collect();
    let polytope = hull_faces(&points)?;
    if polytope.vertices != points {
        return Err(Error::InconsistentLabels(
            "flag points are not distinct vertices".into(),
        ));
    }
    Ok(FlagPolytope {
        flag_matroid: fm.clone(),
        flags,
        polytope,
    })
}

pub fn hypersimplex(d: usize, n: usize) -> Result<FlagPolytope> {
    if d == 0 || d >= n {
        return Err(Error::InvalidRank { rank: d, n });
    }
    flag_polytope(&FlagMatroid::new(vec![Matroid::uniform(d, n)?])?)
}

/// Flag polytope of the uniform complete flag matroid (ranks `1..=n`).
pub fn permutohedron(n: usize) -> Result<FlagPolytope> {
    let seq = (1..=n).map(|r| Matroid::uniform(r, n)).collect::<Result<Vec<_>>>()?;
    flag_polytope(&FlagMatroid::new(seq)?)
}

/// Vertices of `P(M₁) + ... + P(M_k)` for an arbitrary sequence of matroids.
pub fn minkowski_vertices(seq: &[Matroid]) -> Result<Vec<Point>> {
    let first = seq.first().ok_or(Error::Empty)?;
    let n = first.n();
    let mut sums: HashSet<Vec<i64>> = std::iter::once(vec![0i64; n]).collect();
    for m in seq {
        if m.n() != n {
            return Err(Error::SizeMismatch(n, m.n()));
        }
        sums = sums
            .iter()
            .flat_map(|s| {
                m.bases().iter().map(move |&b| {
                    let mut t = s.clone();
                    for (i, x) in t.iter_mut().enumerate() {
                        if b & bit(i + 1) != 0 {
                            *x += 1;
                        }
                    }
                    t
                })
            })
            .collect();
    }
    let mut pts: Vec<Vec<i64>> = sums.into_iter().collect();
    pts.sort();
    let points: Vec<Point> = pts.iter().map(|p| int_point(p)).collect();
    Ok(hull_faces(&points)?.vertices)
}

fn is_root_direction(v: &Point) -> bool {
    let nz: Vec<&BigRational> = v.iter().filter(|x| !x.is_zero()).collect();
    nz.len() == 2 && (nz[0] + nz[1]).is_zero()
}

/// Polytope-edge oracle: every edge of `Conv{e_B}` is parallel to some `e_i − e_j`.
pub fn matroid_polytope_oracle(n: usize, bases: &[u64]) -> Result<bool> {
    if bases.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(b) = bases.iter().find(|&&b| b & !full_mask(n) != 0) {
        return Err(Error::ElementOutOfRange { elem: 64 - b.leading_zeros() as usize, n });
    }
    let points: Vec<Point> = bases.iter().map(|&b| flag_point(n, &[b])).collect();
    let poly = hull_faces(&points)?;
    Ok(poly.edge_vectors().iter().all(is_root_direction))
}

/// Polytope oracle for flag matroids: every constituent polytope has only
/// root-direction edges and every Minkowski-sum vertex has the squared norm
/// of a nested chain of sets with the given ranks (the largest possible).
pub fn flag_polytope_oracle(seq: &[Matroid]) -> Result<bool> {
    for m in seq {
        if !matroid_polytope_oracle(m.n(), m.bases())? {
            return Ok(false);
        }
    }
    let verts = minkowski_vertices(seq)?;
    let norm = |p: &Point| p.iter().map(|x| x * x).sum::<BigRational>();
    let nested: Vec<u64> = seq.iter().map(|m| full_mask(m.rank())).collect();
    let target = norm(&flag_point(seq[0].n(), &nested));
    Ok(verts.iter().all(|p| norm(p) == target))
}

/// A regular subdivision of a flag matroid polytope; subdivision points are
/// aligned with the flag polytope's vertices.
#[derive(Clone, Debug)]
pub struct FlagSubdivision {
    pub polytope: FlagPolytope,
    pub subdivision: Subdivision,
}

impl FlagSubdivision {
    pub fn flags(&self) -> &[Vec<u64>] {
        self.polytope.flags()
    }

    /// Flag labels of the given vertex indices.
    pub fn labels(&self, vertices: &[usize]) -> Vec<Vec<u64>> {
        vertices.iter().map(|&i| self.polytope.flags[i].clone()).collect()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.polytope.flag_matroid.ranks()
    }

    /// Flag matroid of each maximal cell.
    pub fn cell_flag_matroids(&self) -> Result<Vec<Vec<Matroid>>> {
        self.subdivision
            .cells()
            .iter()
            .map(|c| cell_to_flag_matroid(self.polytope.flag_matroid.n(), &self.labels(c)))
            .collect()
    }
}

/// Regular subdivision of a flag matroid polytope with weights `x_F`
/// given as `μ(B₁) + ... + μ(B_k)` on the support's flags.
pub fn subdivision_from_weights(
    fm: &FlagMatroid,
    weight: impl Fn(&[u64]) -> BigRational,
) -> Result<FlagSubdivision> {
    let polytope = flag_polytope(fm)?;
    let weights: Vec<BigRational> = polytope.flags.iter().map(|f| weight(f)).collect();
    let subdivision = regular_subdivision(polytope.polytope.vertices(), &weights)?;
    debug_assert_eq!(subdivision.points(), polytope.polytope.vertices());
    Ok(FlagSubdivision { polytope, subdivision })
}

/// The coherent subdivision `𝒟_μ` of the support's flag matroid polytope.
pub fn subdivision_from_mu(mu: &FlagTropVector) -> Result<FlagSubdivision> {
    let seq = mu.support().ok_or(Error::NotFlagMatroid)?;
    let fm = FlagMatroid::new(seq)?;
    let consts = mu.constituents();
    subdivision_from_weights(&fm, |flag| {
        flag.iter()
            .zip(consts)
            .map(|(&b, m)| m.get_ref(b).expect("flag bases lie in the support").clone())
            .sum()
    })
}

/// Recovers the flag matroid of a cell from its vertex flag labels:
/// constituent `i` has bases `{B_i}`. Fails unless the recovered sequence
/// is a flag matroid whose flags are exactly the labels.
pub fn cell_to_flag_matroid(n: usize, labels: &[Vec<u64>]) -> Result<Vec<Matroid>> {
    let k = labels.first().ok_or(Error::Empty)?.len();
    if labels.iter().any(|f| f.len() != k) {
        return Err(Error::InconsistentLabels("flags of different lengths".into()));
    }
    let mut seq = Vec::with_capacity(k);
    for i in 0..k {
        let bases: BTreeSet<u64> = labels.iter().map(|f| f[i]).collect();
        let m = Matroid::from_masks(n, full_mask(n), bases.into_iter().collect())
            .map_err(|_| Error::InconsistentLabels(format!("constituent {} is not a matroid", i + 1)))?;
        seq.push(m);
    }
    let flags = flags_of(&seq).map_err(|_| Error::InconsistentLabels("not a flag matroid".into()))?;
    let mut given: Vec<Vec<u64>> = labels.to_vec();
    given.sort();
    given.dedup();
    if flags != given {
        return Err(Error::InconsistentLabels(
            "cell is not the polytope of its recovered flag matroid".into(),
        ));
    }
    Ok(seq)
}

/// Flag-positroid test by both certifiers (necklaces and the `0/∞`
/// positive-tropical embedding); disagreement is an error.
pub fn certify_flag_positroid(seq: &[Matroid]) -> Result<bool> {
    let by_necklace = is_flag_positroid_consecutive(seq)?;
    let by_tropical = pom_check(seq)?;
    if by_necklace != by_tropical {
        let bases: Vec<Vec<Vec<usize>>> = seq.iter().map(|m| m.basis_lists()).collect();
        return Err(Error::CertifierDisagreement(format!(
            "necklace test says {by_necklace}, pom_check says {by_tropical} on {bases:?}"
        )));
    }
    Ok(by_necklace)
}

fn face_is_flag_positroid(sub: &FlagSubdivision, vertices: &[usize]) -> Result<bool> {
    match cell_to_flag_matroid(sub.polytope.flag_matroid.n(), &sub.labels(vertices)) {
        Ok(seq) => certify_flag_positroid(&seq),
        Err(Error::InconsistentLabels(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn check_consecutive(ranks: &[usize]) -> Result<()> {
    if ranks.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(Error::RanksNotConsecutive(ranks.to_vec()));
    }
    Ok(())
}

/// First face of dimension at most `max_dim` (maximal cells when `None`)
/// that is not a flag positroid polytope.
pub fn first_non_positroid_face(sub: &FlagSubdivision, max_dim: Option<usize>) -> Result<Option<Face>> {
    check_consecutive(&sub.ranks())?;
    let candidates: Vec<Face> = match max_dim {
        None => sub
            .subdivision
            .cells()
            .iter()
            .map(|c| Face {
                dim: sub.subdivision.dim(),
                vertices: c.clone(),
            })
            .collect(),
        Some(k) => sub.subdivision.complex().iter().filter(|f| f.dim <= k).cloned().collect(),
    };
    for f in candidates {
        if !face_is_flag_positroid(sub, &f.vertices)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Every maximal cell is a flag positroid polytope.
pub fn all_cells_flag_positroid(sub: &FlagSubdivision) -> Result<bool> {
    Ok(first_non_positroid_face(sub, None)?.is_none())
}

/// Every face of dimension at most 2 is a flag positroid polytope.
pub fn twod_faces_flag_positroid(sub: &FlagSubdivision) -> Result<bool> {
    Ok(first_non_positroid_face(sub, Some(2))?.is_none())
}
