//! Face lattice and centroid-fan triangulation.
//!
//! Faces are identified by their (sorted) vertex index sets. A face of
//! dimension `d` with exactly `d + 1` vertices is already a simplex; any other
//! face is coned from the centroid of its vertices over the triangulations of
//! its own facets. Children are visited in sorted order, so the resulting cell
//! list is identical on every run.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::linalg;
use super::rational::{self, Rational};
use super::{Facet, Simplex};

/// A face given by indices into `Polytope::vertices()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct FaceLattice {
    faces: Vec<Face>,
    children: Vec<Vec<usize>>,
}

impl FaceLattice {
    pub(crate) fn new(dim: usize, facets: &[Facet], vertices: &[Vec<Rational>]) -> Self {
        let incidence: Vec<Vec<usize>> = facets
            .iter()
            .map(|f| {
                (0..vertices.len())
                    .filter(|&i| f.eval(&vertices[i]).is_zero())
                    .collect()
            })
            .collect();

        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut faces = vec![Face {
            vertices: (0..vertices.len()).collect(),
            dim,
        }];
        let mut children: Vec<Vec<usize>> = vec![Vec::new()];
        index.insert(faces[0].vertices.clone(), 0);

        let mut cursor = 0;
        while cursor < faces.len() {
            let face = faces[cursor].clone();
            if face.dim > 0 {
                let mut kids: Vec<Vec<usize>> = Vec::new();
                for inc in &incidence {
                    let sub: Vec<usize> = face
                        .vertices
                        .iter()
                        .copied()
                        .filter(|v| inc.binary_search(v).is_ok())
                        .collect();
                    if sub.is_empty() || sub.len() == face.vertices.len() {
                        continue;
                    }
                    let pts: Vec<&Vec<Rational>> = sub.iter().map(|&i| &vertices[i]).collect();
                    if linalg::affine_dim(&pts) + 1 == face.dim {
                        kids.push(sub);
                    }
                }
                kids.sort();
                kids.dedup();
                let mut ids = Vec::with_capacity(kids.len());
                for k in kids {
                    let id = *index.entry(k.clone()).or_insert_with(|| {
                        faces.push(Face {
                            vertices: k,
                            dim: face.dim - 1,
                        });
                        children.push(Vec::new());
                        faces.len() - 1
                    });
                    ids.push(id);
                }
                children[cursor] = ids;
            }
            cursor += 1;
        }
        Self { faces, children }
    }

    pub(crate) fn faces(&self) -> &[Face] {
        &self.faces
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Triangulation {
    pub(crate) simplices: Vec<Simplex>,
    pub(crate) volumes: Vec<Rational>,
    pub(crate) volume: Rational,
}

type Cell = Vec<Vec<Rational>>;

impl Triangulation {
    pub(crate) fn centroid_fan(lattice: &FaceLattice, vertices: &[Vec<Rational>]) -> Self {
        let mut memo: Vec<Option<Vec<Cell>>> = vec![None; lattice.faces.len()];
        let cells = fan(0, lattice, vertices, &mut memo);
        let dim = lattice.faces[0].dim;
        let n_fact = Rational::from_integer((1..=dim as u64).product::<u64>().into());

        let mut simplices = Vec::with_capacity(cells.len());
        let mut volumes = Vec::with_capacity(cells.len());
        let mut volume = Rational::zero();
        for cell in cells {
            let rows: Vec<Vec<Rational>> = cell[1..]
                .iter()
                .map(|p| p.iter().zip(&cell[0]).map(|(a, b)| a - b).collect())
                .collect();
            let vol = linalg::determinant(&rows).abs() / &n_fact;
            volume += &vol;
            let pts: Vec<Vec<f64>> = cell
                .iter()
                .map(|p| p.iter().map(rational::to_f64).collect())
                .collect();
            simplices.push(Simplex::with_volume(pts, rational::to_f64(&vol)));
            volumes.push(vol);
        }
        Self {
            simplices,
            volumes,
            volume,
        }
    }
}

fn fan(
    id: usize,
    lattice: &FaceLattice,
    vertices: &[Vec<Rational>],
    memo: &mut Vec<Option<Vec<Cell>>>,
) -> Vec<Cell> {
    if let Some(cells) = &memo[id] {
        return cells.clone();
    }
    let face = &lattice.faces[id];
    let cells = if face.vertices.len() == face.dim + 1 {
        vec![face.vertices.iter().map(|&i| vertices[i].clone()).collect()]
    } else {
        let k = Rational::from_integer((face.vertices.len() as u64).into());
        let n = vertices[0].len();
        let centroid: Vec<Rational> = (0..n)
            .map(|c| face.vertices.iter().map(|&i| vertices[i][c].clone()).sum::<Rational>() / &k)
            .collect();
        let mut out = Vec::new();
        for &child in &lattice.children[id] {
            for mut cell in fan(child, lattice, vertices, memo) {
                cell.push(centroid.clone());
                out.push(cell);
            }
        }
        out
    };
    memo[id] = Some(cells.clone());
    cells
}
