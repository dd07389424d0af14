//! Canonical momentum polytopes in H-representation.
//!
//! A polytope is stored as a list of inequalities `<u_i, x> + c_i >= 0` with
//! exact rational data. Vertices are enumerated exactly at construction time
//! (every `dim`-subset of facet hyperplanes is intersected and the feasible
//! points kept) and sorted lexicographically, so every downstream choice that
//! depends on vertex order is deterministic. The face lattice and the
//! centroid-fan triangulation are built lazily on first use.
//!
//! The canonical normalization of a Fano polytope is `c_i = 1` for every
//! facet, which puts the origin in the interior and makes `<xi, x> + 1` the
//! natural affine function attached to a dual vector `xi`.

pub mod linalg;
pub mod rational;
mod triangulate;

use std::sync::OnceLock;

use itertools::Itertools;
use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use rational::{JsonRational, Rational};
pub use triangulate::Face;

/// One inequality `<normal, x> + offset >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Facet {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        Self { normal, offset }
    }

    pub fn from_ints(normal: &[i64], offset: i64) -> Self {
        Self {
            normal: normal.iter().map(|&a| rational::int(a)).collect(),
            offset: rational::int(offset),
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut s = self.offset.clone();
        for (a, b) in self.normal.iter().zip(x) {
            s += a * b;
        }
        s
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        let mut s = rational::to_f64(&self.offset);
        for (a, b) in self.normal.iter().zip(x) {
            s += rational::to_f64(a) * b;
        }
        s
    }

    /// The opposite closed halfspace, `<-normal, x> - offset >= 0`.
    pub fn flipped(&self) -> Self {
        Self {
            normal: self.normal.iter().map(|a| -a.clone()).collect(),
            offset: -self.offset.clone(),
        }
    }
}

/// Affine function `<slope, x> + constant`; `ell_xi` is `AffineFn::dual(xi)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineFn {
    pub slope: Vec<f64>,
    pub constant: f64,
}

impl AffineFn {
    pub fn new(slope: Vec<f64>, constant: f64) -> Self {
        Self { slope, constant }
    }

    /// `x -> <xi, x> + 1`.
    pub fn dual(xi: &[f64]) -> Self {
        Self {
            slope: xi.to_vec(),
            constant: 1.0,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.constant + dot(&self.slope, x)
    }
}

/// A nondegenerate simplex with floating-point vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Simplex {
    vertices: Vec<Vec<f64>>,
    volume: f64,
}

impl Simplex {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let n = vertices.len().saturating_sub(1);
        if n == 0 || vertices.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidInput(format!(
                "a simplex in dimension {n} needs {} vertices of length {n}",
                n + 1
            )));
        }
        let volume = simplex_volume_f64(&vertices);
        if !(volume > 0.0) {
            return Err(Error::DegeneratePolytope {
                expected: n,
                found: n - 1,
            });
        }
        Ok(Self { vertices, volume })
    }

    pub(crate) fn with_volume(vertices: Vec<Vec<f64>>, volume: f64) -> Self {
        Self { vertices, volume }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Splits the longest edge at its midpoint. Ties go to the first edge in
    /// `(i, j)` order so the refinement pattern is reproducible.
    pub fn bisect(&self) -> (Simplex, Simplex) {
        let mut best = (0, 1, -1.0);
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                let d: f64 = self.vertices[i]
                    .iter()
                    .zip(&self.vertices[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                if d > best.2 {
                    best = (i, j, d);
                }
            }
        }
        let (i, j, _) = best;
        let mid: Vec<f64> = self.vertices[i]
            .iter()
            .zip(&self.vertices[j])
            .map(|(a, b)| 0.5 * (a + b))
            .collect();
        let mut left = self.vertices.clone();
        left[j] = mid.clone();
        let mut right = self.vertices.clone();
        right[i] = mid;
        let half = 0.5 * self.volume;
        (Simplex::with_volume(left, half), Simplex::with_volume(right, half))
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

pub(crate) fn simplex_volume_f64(vertices: &[Vec<f64>]) -> f64 {
    let n = vertices.len() - 1;
    let m = DMatrix::from_fn(n, n, |r, c| vertices[r + 1][c] - vertices[0][c]);
    m.determinant().abs() / factorial(n)
}

/// A convex polytope `{x : <u_i, x> + c_i >= 0}` with exact vertex data.
#[derive(Debug)]
pub struct Polytope {
    dim: usize,
    facets: Vec<Facet>,
    canonical: bool,
    vertices: Vec<Vec<Rational>>,
    vertices_f64: Vec<Vec<f64>>,
    affine_dim: usize,
    lattice: OnceLock<triangulate::FaceLattice>,
    triangulation: OnceLock<triangulate::Triangulation>,
}

impl Clone for Polytope {
    fn clone(&self) -> Self {
        Self {
            dim: self.dim,
            facets: self.facets.clone(),
            canonical: self.canonical,
            vertices: self.vertices.clone(),
            vertices_f64: self.vertices_f64.clone(),
            affine_dim: self.affine_dim,
            lattice: self.lattice.clone(),
            triangulation: self.triangulation.clone(),
        }
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.canonical == other.canonical && self.facets == other.facets
    }
}

impl Polytope {
    /// Validated construction from an H-representation.
    pub fn from_facets(dim: usize, facets: Vec<Facet>, canonical: bool) -> Result<Self> {
        let p = Self::build(dim, facets, canonical)?;
        if p.vertices.is_empty() {
            return Err(Error::EmptyOrUnbounded);
        }
        if p.affine_dim < dim {
            return Err(Error::DegeneratePolytope {
                expected: dim,
                found: p.affine_dim,
            });
        }
        Ok(p)
    }

    /// Shared constructor; allows empty and lower-dimensional results.
    fn build(dim: usize, facets: Vec<Facet>, canonical: bool) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        if facets.is_empty() {
            return Err(Error::InvalidInput("at least one facet is required".into()));
        }
        if let Some(f) = facets.iter().find(|f| f.normal.len() != dim) {
            return Err(Error::InvalidInput(format!(
                "facet normal has length {}, expected {dim}",
                f.normal.len()
            )));
        }
        if canonical {
            if let Some(f) = facets.iter().find(|f| !f.offset.is_one()) {
                return Err(Error::NotCanonical(format!(
                    "facet offset {} is not 1",
                    f.offset
                )));
            }
        }
        if normal_rank(&facets) < dim || has_recession_ray(dim, &facets) {
            return Err(Error::EmptyOrUnbounded);
        }
        let vertices = enumerate_vertices(dim, &facets);
        let affine_dim = if vertices.is_empty() {
            0
        } else {
            linalg::affine_dim(&vertices.iter().collect::<Vec<_>>())
        };
        let vertices_f64 = vertices
            .iter()
            .map(|v| v.iter().map(rational::to_f64).collect())
            .collect();
        Ok(Self {
            dim,
            facets,
            canonical,
            vertices,
            vertices_f64,
            affine_dim,
            lattice: OnceLock::new(),
            triangulation: OnceLock::new(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PolytopeJson = serde_json::from_str(text)?;
        raw.into_polytope()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolytopeJson::from(self)).expect("polytope JSON is infallible")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn vertices_f64(&self) -> &[Vec<f64>] {
        &self.vertices_f64
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        !self.vertices.is_empty() && self.affine_dim == self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    /// Exact Lebesgue volume (zero unless full-dimensional).
    pub fn volume(&self) -> Rational {
        match self.exact_triangulation() {
            Some(t) => t.volume.clone(),
            None => Rational::zero(),
        }
    }

    pub fn volume_f64(&self) -> f64 {
        rational::to_f64(&self.volume())
    }

    /// Anticanonical degree `n! vol(P)` for a canonical polytope.
    pub fn degree(&self) -> f64 {
        factorial(self.dim) * self.volume_f64()
    }

    pub(crate) fn lattice(&self) -> Option<&triangulate::FaceLattice> {
        if !self.is_full_dimensional() {
            return None;
        }
        Some(
            self.lattice
                .get_or_init(|| triangulate::FaceLattice::new(self.dim, &self.facets, &self.vertices)),
        )
    }

    fn exact_triangulation(&self) -> Option<&triangulate::Triangulation> {
        let lattice = self.lattice()?;
        Some(
            self.triangulation
                .get_or_init(|| triangulate::Triangulation::centroid_fan(lattice, &self.vertices)),
        )
    }

    /// Every face of the polytope (vertices through the polytope itself).
    pub fn faces(&self) -> Result<&[Face]> {
        self.lattice().map(|l| l.faces()).ok_or(Error::DegeneratePolytope {
            expected: self.dim,
            found: self.affine_dim,
        })
    }

    /// Centroid-fan triangulation; simplices have disjoint interiors and cover P.
    pub fn triangulate(&self) -> Result<&[Simplex]> {
        self.exact_triangulation()
            .map(|t| t.simplices.as_slice())
            .ok_or(Error::DegeneratePolytope {
                expected: self.dim,
                found: self.affine_dim,
            })
    }

    /// Exact volumes of the triangulation cells, aligned with `triangulate()`.
    pub fn simplex_volumes(&self) -> Result<&[Rational]> {
        self.exact_triangulation()
            .map(|t| t.volumes.as_slice())
            .ok_or(Error::DegeneratePolytope {
                expected: self.dim,
                found: self.affine_dim,
            })
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.facets.iter().all(|f| f.eval_f64(x) >= -tol)
    }

    /// Axis-aligned bounding box of the vertices.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for v in &self.vertices_f64 {
            for k in 0..self.dim {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    /// Largest absolute vertex coordinate, at least 1.
    pub fn radius(&self) -> f64 {
        self.vertices_f64
            .iter()
            .flatten()
            .fold(1.0_f64, |m, x| m.max(x.abs()))
    }

    /// True iff `<xi, V> + 1 > 0` at every vertex.
    pub fn dual_contains(&self, xi: &[f64]) -> bool {
        self.dual_margin(xi) > 0.0
    }

    /// `min_V <xi, V> + 1`.
    pub fn dual_margin(&self, xi: &[f64]) -> f64 {
        self.min_affine(&AffineFn::dual(xi)).0
    }

    /// Exact-at-vertices minimum of an affine function. Ties resolve to the
    /// lexicographically smallest vertex.
    pub fn min_affine(&self, f: &AffineFn) -> (f64, Vec<f64>) {
        let mut best: Option<(f64, usize)> = None;
        for (i, v) in self.vertices_f64.iter().enumerate() {
            let val = f.eval(v);
            if best.is_none_or(|(b, _)| val < b) {
                best = Some((val, i));
            }
        }
        let (val, i) = best.expect("min_affine on an empty polytope");
        (val, self.vertices_f64[i].clone())
    }

    pub fn max_affine(&self, f: &AffineFn) -> (f64, Vec<f64>) {
        let neg = AffineFn::new(f.slope.iter().map(|a| -a).collect(), -f.constant);
        let (v, x) = self.min_affine(&neg);
        (-v, x)
    }

    /// Cartesian product; facets are padded with zeros.
    pub fn product(&self, other: &Polytope) -> Result<Polytope> {
        let dim = self.dim + other.dim;
        let zero = Rational::zero();
        let mut facets = Vec::with_capacity(self.facets.len() + other.facets.len());
        for f in &self.facets {
            let mut normal = f.normal.clone();
            normal.resize(dim, zero.clone());
            facets.push(Facet::new(normal, f.offset.clone()));
        }
        for f in &other.facets {
            let mut normal = vec![zero.clone(); self.dim];
            normal.extend(f.normal.iter().cloned());
            facets.push(Facet::new(normal, f.offset.clone()));
        }
        Polytope::from_facets(dim, facets, self.canonical && other.canonical)
    }

    /// Intersection with a halfspace. The result may be empty or
    /// lower-dimensional; such results carry volume zero.
    pub fn clip(&self, halfspace: &Facet) -> Result<Polytope> {
        let mut facets = self.facets.clone();
        facets.push(halfspace.clone());
        Polytope::build(self.dim, facets, false)
    }

    /// `P + t`.
    pub fn translate(&self, t: &[Rational]) -> Result<Polytope> {
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let shift: Rational = f.normal.iter().zip(t).map(|(a, b)| a * b).sum();
                Facet::new(f.normal.clone(), &f.offset - shift)
            })
            .collect();
        Polytope::from_facets(self.dim, facets, false)
    }

    /// Image under the invertible linear map `x -> M x`.
    pub fn linear_image(&self, m: &[Vec<Rational>]) -> Result<Polytope> {
        let n = self.dim;
        // normals transform by M^{-T}: solve M^T w = u for each facet normal u
        let mt: Vec<Vec<Rational>> = (0..n).map(|r| (0..n).map(|c| m[c][r].clone()).collect()).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| {
                linalg::solve(&mt, &f.normal)
                    .map(|w| Facet::new(w, f.offset.clone()))
                    .ok_or_else(|| Error::InvalidInput("linear map is singular".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Polytope::from_facets(n, facets, self.canonical)
    }

    /// Canonical + all vertices integral: the reflexivity audit of the catalog.
    pub fn is_reflexive(&self) -> bool {
        self.canonical
            && self.facets.iter().all(|f| f.offset.is_one() && f.normal.iter().all(rational::is_integer))
            && self.vertices.iter().flatten().all(rational::is_integer)
    }
}

fn normal_rank(facets: &[Facet]) -> usize {
    let rows: Vec<Vec<Rational>> = facets.iter().map(|f| f.normal.clone()).collect();
    linalg::rank(&rows)
}

/// Does `{d : <u_i, d> >= 0 for all i}` contain a nonzero vector? Assumes the
/// normals have full rank, so the cone is pointed and any nonzero element
/// lies on an extreme ray cut out by `dim - 1` independent tight rows.
fn has_recession_ray(dim: usize, facets: &[Facet]) -> bool {
    let normals: Vec<&Vec<Rational>> = facets.iter().map(|f| &f.normal).collect();
    for subset in (0..facets.len()).combinations(dim - 1) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let Some(d) = linalg::kernel_line(&rows, dim) else {
            continue;
        };
        let pairing = |sign: &Rational| {
            normals.iter().all(|u| {
                let s: Rational = u.iter().zip(&d).map(|(a, b)| a * b).sum::<Rational>() * sign;
                !s.is_negative()
            })
        };
        if pairing(&Rational::one()) || pairing(&-Rational::one()) {
            return true;
        }
    }
    false
}

fn enumerate_vertices(dim: usize, facets: &[Facet]) -> Vec<Vec<Rational>> {
    let mut found: Vec<Vec<Rational>> = Vec::new();
    for subset in (0..facets.len()).combinations(dim) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| facets[i].normal.clone()).collect();
        let b: Vec<Rational> = subset.iter().map(|&i| -facets[i].offset.clone()).collect();
        let Some(x) = linalg::solve(&a, &b) else {
            continue;
        };
        if facets.iter().all(|f| !f.eval(&x).is_negative()) {
            found.push(x);
        }
    }
    found.sort();
    found.dedup();
    found
}

#[derive(Serialize, Deserialize)]
struct FacetJson {
    normal: Vec<JsonRational>,
    offset: JsonRational,
}

/// `{"dim": n, "facets": [{"normal": [...], "offset": q}], "canonical": bool}`
#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    dim: usize,
    facets: Vec<FacetJson>,
    #[serde(default)]
    canonical: bool,
}

impl PolytopeJson {
    fn into_polytope(self) -> Result<Polytope> {
        let facets = self
            .facets
            .into_iter()
            .map(|f| Facet::new(f.normal.into_iter().map(|q| q.0).collect(), f.offset.0))
            .collect();
        Polytope::from_facets(self.dim, facets, self.canonical)
    }
}

impl From<&Polytope> for PolytopeJson {
    fn from(p: &Polytope) -> Self {
        Self {
            dim: p.dim,
            facets: p
                .facets
                .iter()
                .map(|f| FacetJson {
                    normal: f.normal.iter().cloned().map(JsonRational).collect(),
                    offset: JsonRational(f.offset.clone()),
                })
                .collect(),
            canonical: p.canonical,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::rational::{int, ratio};
    use super::*;

    fn interval() -> Polytope {
        Polytope::from_facets(1, vec![Facet::from_ints(&[1], 1), Facet::from_ints(&[-1], 1)], true).unwrap()
    }

    fn p2() -> Polytope {
        Polytope::from_facets(
            2,
            vec![
                Facet::from_ints(&[1, 0], 1),
                Facet::from_ints(&[0, 1], 1),
                Facet::from_ints(&[-1, -1], 1),
            ],
            true,
        )
        .unwrap()
    }

    #[test]
    fn interval_vertices() {
        let p = interval();
        assert_eq!(p.vertices(), &[vec![int(-1)], vec![int(1)]]);
        assert_eq!(p.volume(), int(2));
    }

    #[test]
    fn p2_vertices_from_pairwise_intersections() {
        // oracle: the three 2x2 systems x1=-1,x2=-1 / x1=-1,x1+x2=1 / x2=-1,x1+x2=1
        let p = p2();
        assert_eq!(
            p.vertices(),
            &[vec![int(-1), int(-1)], vec![int(-1), int(2)], vec![int(2), int(-1)]]
        );
        assert_eq!(p.volume(), ratio(9, 2));
    }

    #[test]
    fn half_line_is_rejected() {
        let err = Polytope::from_facets(1, vec![Facet::from_ints(&[1], 1)], false).unwrap_err();
        assert!(matches!(err, Error::EmptyOrUnbounded));
        let strip = Polytope::from_facets(
            2,
            vec![Facet::from_ints(&[1, 0], 1), Facet::from_ints(&[-1, 0], 1)],
            false,
        )
        .unwrap_err();
        assert!(matches!(strip, Error::EmptyOrUnbounded));
    }

    #[test]
    fn empty_and_degenerate_inputs() {
        let empty = Polytope::from_facets(1, vec![Facet::from_ints(&[1], -2), Facet::from_ints(&[-1], 1)], false);
        assert!(matches!(empty.unwrap_err(), Error::EmptyOrUnbounded));
        let point = Polytope::from_facets(1, vec![Facet::from_ints(&[1], 0), Facet::from_ints(&[-1], 0)], false);
        assert!(matches!(point.unwrap_err(), Error::DegeneratePolytope { .. }));
    }

    #[test]
    fn canonical_flag_is_enforced() {
        let err = Polytope::from_facets(1, vec![Facet::from_ints(&[1], 1), Facet::from_ints(&[-1], 2)], true).unwrap_err();
        assert!(matches!(err, Error::NotCanonical(_)));
    }

    #[test]
    fn dual_membership() {
        assert!(interval().dual_contains(&[0.0]));
        assert!(!interval().dual_contains(&[1.0]));
        assert!(p2().dual_contains(&[0.2, 0.2]));
    }

    #[test]
    fn products_multiply_volume() {
        let sq = interval().product(&interval()).unwrap();
        assert_eq!(sq.volume(), int(4));
        assert!(sq.is_canonical());
        let prism = p2().product(&interval()).unwrap();
        assert_eq!(prism.volume(), int(9));
    }

    #[test]
    fn clipping() {
        let half = interval().clip(&Facet::from_ints(&[1], 0)).unwrap();
        assert_eq!(half.volume(), int(1));
        let corner = p2().clip(&Facet::from_ints(&[1, 0], -2)).unwrap();
        assert!(!corner.is_full_dimensional());
        assert_eq!(corner.vertices(), &[vec![int(2), int(-1)]]);
        assert_eq!(corner.volume(), int(0));
        let slab = p2().clip(&Facet::from_ints(&[1, 0], 0)).unwrap();
        assert_eq!(slab.volume(), int(2));
        let gone = p2().clip(&Facet::from_ints(&[1, 0], -5)).unwrap();
        assert!(gone.is_empty());
    }

    #[test]
    fn affine_minimum_and_ties() {
        let (v, x) = interval().min_affine(&AffineFn::new(vec![1.0], 1.0));
        assert_eq!((v, x), (0.0, vec![-1.0]));
        let (v, x) = p2().min_affine(&AffineFn::new(vec![1.0, 0.0], 0.0));
        assert_eq!((v, x), (-1.0, vec![-1.0, -1.0]));
        let (v, x) = p2().min_affine(&AffineFn::new(vec![1.0, 1.0], 1.0));
        assert_eq!((v, x), (-1.0, vec![-1.0, -1.0]));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"dim":2,"facets":[{"normal":[1,0],"offset":1},{"normal":[0,"2/2"],"offset":"1"},{"normal":[-1,-1],"offset":1}],"canonical":true}"#;
        let p = Polytope::from_json(text).unwrap();
        assert_eq!(p, p2());
        let again = Polytope::from_json(&p.to_json()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn linear_image_permutes_vertices() {
        let swap = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        let q = p2().linear_image(&swap).unwrap();
        assert_eq!(q.vertices(), p2().vertices());
        assert!(q.is_canonical());
    }

    #[test]
    fn bisection_halves_volume() {
        let s = Simplex::new(vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let (a, b) = s.bisect();
        assert!((a.volume() + b.volume() - s.volume()).abs() < 1e-15);
        assert!((simplex_volume_f64(a.vertices()) - a.volume()).abs() < 1e-15);
    }
}
