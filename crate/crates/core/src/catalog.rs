//! Built-in canonical polytopes of small toric Fano manifolds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{Facet, Polytope};

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub notes: &'static str,
    pub dim: usize,
    /// Integer facet normals; every offset is 1.
    pub normals: &'static [&'static [i64]],
}

impl CatalogEntry {
    pub fn polytope(&self) -> Polytope {
        let facets = self.normals.iter().map(|u| Facet::from_ints(u, 1)).collect();
        Polytope::from_facets(self.dim, facets, true).expect("catalog entries are valid")
    }
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "p1",
        description: "projective line",
        notes: "KE",
        dim: 1,
        normals: &[&[1], &[-1]],
    },
    CatalogEntry {
        name: "p2",
        description: "projective plane",
        notes: "KE",
        dim: 2,
        normals: &[&[1, 0], &[0, 1], &[-1, -1]],
    },
    CatalogEntry {
        name: "p1xp1",
        description: "product of two projective lines",
        notes: "KE",
        dim: 2,
        normals: &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
    },
    CatalogEntry {
        name: "bl1p2",
        description: "projective plane blown up at one point",
        notes: "KRS nontrivial",
        dim: 2,
        normals: &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]],
    },
    CatalogEntry {
        name: "bl2p2",
        description: "projective plane blown up at two points",
        notes: "KRS nontrivial",
        dim: 2,
        normals: &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1], &[-1, 0]],
    },
    CatalogEntry {
        name: "bl3p2",
        description: "projective plane blown up at three points",
        notes: "KE",
        dim: 2,
        normals: &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1], &[-1, 0], &[0, -1]],
    },
    CatalogEntry {
        name: "p3",
        description: "projective 3-space",
        notes: "KE",
        dim: 3,
        normals: &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
    },
    CatalogEntry {
        name: "p1xp2",
        description: "product of a projective line and a projective plane",
        notes: "KE",
        dim: 3,
        normals: &[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, -1, -1]],
    },
];

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown catalog entry {name:?}; known: {}", names().join(", "))))
}

pub fn get(name: &str) -> Result<Polytope> {
    entry(name).map(CatalogEntry::polytope)
}

/// Canonical polytope of projective `k`-space (`k >= 1`).
pub fn projective_space(k: usize) -> Result<Polytope> {
    if k == 0 {
        return Err(Error::InvalidInput("projective space needs dimension >= 1".into()));
    }
    let mut facets: Vec<Facet> = (0..k)
        .map(|i| {
            let mut u = vec![0; k];
            u[i] = 1;
            Facet::from_ints(&u, 1)
        })
        .collect();
    facets.push(Facet::from_ints(&vec![-1; k], 1));
    Polytope::from_facets(k, facets, true)
}
